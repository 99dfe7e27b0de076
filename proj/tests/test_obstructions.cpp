#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "chiral/obstructions.hpp"
#include "corpus.hpp"
#include "relabel.hpp"

using namespace chiral;
using testutil::relabel;

namespace {

struct Setup {
  Setup() { set_working_precision(64); }
};
const Setup setup;

Real R(const char* s) { return Real(s); }
Real abs_(const Real& x) { return boost::multiprecision::abs(x); }

BigraphPair pair_of(const corpus::Pair& p) { return parse_pair(p.first, p.second); }

const ObstructionEntry& entry(const ObstructionReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return e;
  throw std::logic_error("missing entry " + name);
}

std::vector<corpus::Pair> realized() {
  std::vector<corpus::Pair> v = corpus::index6();
  for (const auto& p : {corpus::haagerup, corpus::ghj3311, corpus::two_d2, corpus::su3_q1, corpus::su3_q2, corpus::z4})
    v.push_back(p);
  for (const auto& e : corpus::ade())
    if (!e.eliminated) v.push_back({e.graph, e.graph});
  return v;
}

std::vector<std::string> verdicts(const ObstructionReport& r) {
  std::vector<std::string> v{to_string(r.overall)};
  for (const auto& e : r.entries) v.push_back(e.name + "=" + to_string(e.verdict));
  return v;
}

}  // namespace

TEST_CASE("index at most 4 catalog") {
  for (const auto& e : corpus::ade()) {
    INFO(e.name);
    const auto rep = run_all(parse_pair(e.graph, e.graph));
    CHECK((rep.overall == Verdict::Eliminated) == e.eliminated);
    const auto& oc = entry(rep, "ocneanu_triple");
    CHECK(oc.applicable);
    CHECK(abs_(Real(oc.evidence["s"].get<std::string>()) - Real(e.s)) < R("1e-12"));
    if (e.eliminated) {
      CHECK(oc.verdict == Verdict::Eliminated);
      CHECK(oc.evidence.contains("rootCheck"));
    }
  }
  // The shipped catalog file holds the same graphs.
  std::ifstream in(std::string(CHIRAL_DATA_DIR) + "/catalogs/index_at_most_4.txt");
  REQUIRE(in.good());
  int lines = 0, eliminated = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string a, b;
    ss >> a >> b;
    ++lines;
    if (run_all(parse_pair(a, b)).overall == Verdict::Eliminated) ++eliminated;
  }
  CHECK(lines == 21);
  CHECK(eliminated == 5);
}

TEST_CASE("quadruple points") {
  const auto z4 = run_all(pair_of(corpus::z4));
  CHECK(z4.overall == Verdict::Survives);
  const auto& zq = entry(z4, "ocneanu_quadruple");
  CHECK(zq.verdict == Verdict::Survives);
  CHECK(zq.evidence["boundary"] == true);

  const auto q3 = run_all(pair_of(corpus::q3));
  CHECK(q3.overall == Verdict::Eliminated);
  CHECK(entry(q3, "ocneanu_quadruple").verdict == Verdict::Eliminated);
  // Every even translate of the Z/4 pair sits above index 4.
  for (int t = 2; t <= 8; t += 2) {
    const auto rep = run_all(translate(pair_of(corpus::z4), t));
    CHECK(entry(rep, "ocneanu_quadruple").verdict == Verdict::Eliminated);
  }
}

TEST_CASE("no false positives on realized pairs") {
  for (const auto& p : realized()) {
    INFO(p.first << " " << p.second);
    const auto rep = run_all(pair_of(p));
    CHECK(rep.overall != Verdict::Eliminated);
    for (const auto& e : rep.entries) CHECK(e.verdict != Verdict::Eliminated);
  }
  const auto h = run_all(pair_of(corpus::haagerup));
  CHECK(h.overall == Verdict::Survives);
}

TEST_CASE("star11 on the su(3) pairs") {
  for (const auto& p : {corpus::su3_q1, corpus::su3_q2}) {
    const auto rep = run_all(pair_of(p));
    const auto& e = entry(rep, "star11");
    CHECK(e.applicable);
    CHECK(e.verdict == Verdict::Survives);
    CHECK(abs_(Real(e.evidence["s"].get<std::string>()) + 2) < R("1e-12"));
    CHECK(abs_(Real(e.evidence["sFromEquation"].get<std::string>()) + 2) < R("1e-12"));
  }
  CHECK_FALSE(entry(run_all(pair_of(corpus::haagerup)), "star11").applicable);
}

TEST_CASE("singly valent vertex on graphs") {
  // Odd n with [2] > 2.
  for (const char* g : {"gbg1v1v1p1v0x1p0x1", "gbg1v1v1p1v0x1p0x1p0x1"}) {
    const auto e = singly_valent(parse_pair(g, g));
    CHECK(e.applicable);
    CHECK(e.verdict == Verdict::Eliminated);
    CHECK(e.evidence["n"] == 3);
  }
  // Below index 4 the obstruction does not apply.
  CHECK_FALSE(singly_valent(parse_pair("gbg1v1p1v0x1v1v1", "gbg1v1p1v0x1v1v1")).applicable);
  // On a graph the eigen-equation forces r = [n+2]/[n] exactly.
  const auto e = singly_valent(parse_pair("gbg1v1p1v0x1p0x1p0x1", "gbg1v1p1v0x1p0x1p0x1"));
  CHECK(e.evidence["r"] == e.evidence["[n+2]/[n]"]);
}

TEST_CASE("singly valent clauses on synthetic traces") {
  const Real q("1.6");
  const QParam qp = q_from_norm(q + 1 / q);
  CoeffResult zero;
  zero.value = 0;
  auto make = [&](int n, const Real& r, const Real& rc) {
    const Real top = qp.qint(n + 1);
    return branch_data_from_traces(n, qp, top / (1 + r), r * top / (1 + r), top / (1 + rc), rc * top / (1 + rc),
                                   DualAssignment::SelfDual);
  };
  // Perturbing r away from [n+2]/[n].
  const Real good = qp.qint(6) / qp.qint(4);
  CHECK(singly_valent_from_branch(make(4, good * Real("1.01"), Real(1)), zero).verdict == Verdict::Eliminated);
  CHECK(singly_valent_from_branch(make(4, good, Real(1)), zero).verdict == Verdict::Survives);  // s = 0, omega = -1, 4 | 4

  // omega a primitive k-th root of unity: eliminated exactly when 2k does not divide n.
  const Real pi = real_pi();
  int checked = 0;
  for (int n = 2; n <= 12; n += 2)
    for (int k = 2; k <= 7; ++k) {
      const Real nn = qp.qint(n), n2 = qp.qint(n + 2);
      const Real w = 2 * cos(2 * pi / k);  // omega + omega^-1
      const Real t = 2 + (w + 2) / (nn * n2);  // r-check + 1/r-check
      const Real rc = (t + sqrt(t * t - 4)) / 2;
      const auto res = singly_valent_from_branch(make(n, n2 / nn, rc), zero);
      INFO("n=" << n << " k=" << k);
      CHECK(res.verdict == ((n % (2 * k) == 0) ? Verdict::Survives : Verdict::Eliminated));
      CHECK(Real(res.evidence["relationResidual"].get<std::string>()) < R("1e-10"));
      ++checked;
    }
  CHECK(checked == 36);
}

TEST_CASE("hypothesis check is stable under extension") {
  // Truncating past depth n+1 never changes what the initial triple point test sees.
  std::vector<corpus::Pair> pairs;
  for (const auto& e : corpus::ade()) pairs.push_back({e.graph, e.graph});
  for (const auto& pr : pairs) {
    const auto full = pair_of(pr);
    const int n = supertransitivity(full.plus).branch_depth;
    if (full.plus.max_depth() <= n + 1) continue;
    BigraphPair cut = full;
    cut.plus = truncate(full.plus, n + 1);
    cut.minus = truncate(full.minus, n + 1);
    cut.plus_duals.resize(static_cast<size_t>((n + 1) / 2 + 1));
    cut.minus_duals.resize(static_cast<size_t>((n + 1) / 2 + 1));
    const auto a = ocneanu_triple(full), b = ocneanu_triple(cut);
    INFO(pr.first);
    // The norm, and so s, changes with the graph; only the hypothesis check must agree.
    CHECK(a.applicable == b.applicable);
    CHECK(a.evidence.value("n", -1) == b.evidence.value("n", -1));
  }
}

TEST_CASE("verdicts ignore the listing order within a depth") {
  std::mt19937 rng(99);
  std::vector<corpus::Pair> pairs = realized();
  pairs.push_back(corpus::q3);
  for (const auto& e : corpus::ade()) pairs.push_back({e.graph, e.graph});
  for (const auto& p : pairs) {
    const auto base = pair_of(p);
    const auto expect = verdicts(run_all(base));
    for (int trial = 0; trial < 3; ++trial) {
      const auto moved = relabel(base, rng);
      validate_duals(moved.plus, moved.plus_duals);
      validate_duals(moved.minus, moved.minus_duals);
      INFO(p.first << " trial " << trial);
      CHECK(verdicts(run_all(moved)) == expect);
    }
  }
}

TEST_CASE("reports are deterministic and serialise") {
  const auto p = pair_of(corpus::haagerup);
  const auto a = run_all(p), b = run_all(p);
  CHECK(a.to_json() == b.to_json());
  const std::string tsv = a.to_tsv();
  CHECK(tsv.find('\n') == std::string::npos);
  CHECK(tsv.find("\tsurvives\t") != std::string::npos);
  CHECK(tsv.find("star11=") != std::string::npos);
  const auto j = a.to_json();
  CHECK(j["obstructions"].size() == 4);
  CHECK(j["obstructions"][0]["name"] == "singly_valent");
  CHECK(j["obstructions"][3]["name"] == "star11");
  // Eliminated entries carry the numbers that decided them.
  const auto e7 = run_all(parse_pair("gbg1v1v1v1p1v1x0", "gbg1v1v1v1p1v1x0"));
  const auto& oc = entry(e7, "ocneanu_triple");
  CHECK(oc.evidence.contains("s"));
  CHECK(oc.evidence.contains("omega"));
  CHECK(oc.evidence.contains("n"));
}
