import json
import os
import pathlib
import subprocess

import pytest

import chiral

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"
HAAGERUP = ("bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1", "bwd1v1v1v1p1v1x0p1x0duals1v1v1x2")
E7 = "gbg1v1v1v1p1v1x0"


def test_normalize_round_trip():
    assert chiral.normalize(HAAGERUP[0]) == HAAGERUP[0]
    with pytest.raises(ValueError):
        chiral.normalize("xyz1")


def test_info():
    prof = chiral.info(*HAAGERUP)
    assert prof["plus"]["annular"] == "*10"
    assert abs(float(prof["index"]) - (5 + 13 ** 0.5) / 2) < 1e-12


def test_obstruct():
    assert chiral.obstruct(*HAAGERUP)["overall"] == "survives"
    rep = chiral.obstruct(E7)
    assert rep["overall"] == "eliminated"
    assert [o["name"] for o in rep["obstructions"]] == [
        "singly_valent", "ocneanu_triple", "ocneanu_quadruple", "star11"]


def test_chirality():
    c = chiral.chirality(E7)
    assert abs(float(c["s"]) - 1.2855752193730785) < 1e-12


def test_weed_round_trip():
    spec = json.loads((DATA / "weeds" / "Q1.json").read_text())
    cert = chiral.eliminate_weed(spec)
    assert cert["verdict"] == "eliminated"
    ok, msg = chiral.check_elimination(cert)
    assert ok, msg
    cert["region"]["q0"] = "1/2"
    assert not chiral.check_elimination(cert)[0]


def test_cli_matches_module():
    cli = os.environ.get("CHIRAL_CLI")
    if not cli:
        pytest.skip("CLI path not provided")
    out = subprocess.run([cli, "obstruct", *HAAGERUP], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["overall"] == chiral.obstruct(*HAAGERUP)["overall"]
