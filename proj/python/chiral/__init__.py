"""Chirality obstructions for subfactor principal graphs."""

import json

from . import _core
from ._core import ParseError, set_precision, normalize

__all__ = ["ParseError", "set_precision", "normalize", "info", "obstruct", "chirality",
           "eliminate_weed", "check_elimination"]


def info(plus, minus=None):
    """Spectral profile of a pair; a single graph is paired with itself."""
    return json.loads(_core.info(plus, minus or plus))


def obstruct(plus, minus=None):
    return json.loads(_core.obstruct(plus, minus or plus))


def chirality(plus, minus=None):
    return json.loads(_core.chirality(plus, minus or plus))


def eliminate_weed(spec):
    """spec: a dict or a JSON string in the weed file format."""
    text = spec if isinstance(spec, str) else json.dumps(spec)
    return json.loads(_core.eliminate_weed(text))


def check_elimination(certificate):
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return _core.check_elimination(text)
