// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chiral/obstructions.hpp"
#include "chiral/weedcert.hpp"
#include "corpus.hpp"

using namespace chiral;
using nlohmann::json;

namespace {

Real abs_(const Real& x) { return boost::multiprecision::abs(x); }
Real sqrt_(const Real& x) { return boost::multiprecision::sqrt(x); }
const Real tol("1e-9");

BigraphPair pair_of(const corpus::Pair& p) { return parse_pair(p.first, p.second); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << "failed: " << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

json load_weed(const std::string& name) {
  std::ifstream in(std::string(CHIRAL_DATA_DIR) + "/weeds/" + name);
  if (!in) throw std::runtime_error("missing weed file " + name);
  return json::parse(in);
}

// Closed walks from the star, counted directly.
BigInt walks(const Bigraph& g, int steps) {
  std::vector<BigInt> v(static_cast<size_t>(g.vertex_count()), BigInt(0));
  v[0] = 1;
  for (int s = 0; s < steps; ++s) {
    std::vector<BigInt> w(v.size(), BigInt(0));
    for (int d = 1; d <= g.max_depth(); ++d)
      for (int i = 0; i < g.count(d); ++i)
        for (int j = 0; j < g.count(d - 1); ++j)
          if (int m = g.mult(d, i, j)) {
            const auto a = static_cast<size_t>(g.flat_index(d, i)), b = static_cast<size_t>(g.flat_index(d - 1, j));
            w[a] += m * v[b];
            w[b] += m * v[a];
          }
    v = std::move(w);
  }
  return v[0];
}

void c1(Outcome& o) {
  const auto t0 = Clock::now();
  int total = 0;
  std::string eliminated;
  bool set_ok = true;
  for (const auto& e : corpus::ade()) {
    const auto pair = parse_pair(e.graph, e.graph);
    const auto c = chirality(pair, branch_data(pair));
    o.require(abs_(c.s - Real(e.s)) < tol, e.name + " s");
    const bool elim = run_all(pair).overall == Verdict::Eliminated;
    if (elim) eliminated += " " + e.name;
    ++total;
    set_ok = set_ok && elim == e.eliminated;
  }
  // The table value for E7 is 2 sin(2 pi / 9).
  const auto e7 = parse_pair("gbg1v1v1v1p1v1x0", "gbg1v1v1v1p1v1x0");
  o.require(abs_(chirality(e7, branch_data(e7)).s - 2 * sin(2 * real_pi() / 9)) < tol, "E7 exact value");
  o.require(set_ok, "eliminated set is D_odd and E7");
  const double secs = since(t0);
  o.require(secs < 5, "runtime");
  o.detail << total << " graphs, eliminated:" << eliminated << ", " << secs << " s";
}

void c2(Outcome& o) {
  const auto t0 = Clock::now();
  const std::vector<std::pair<const char*, const char*>> ab = {
      {"2.1", "2.3"}, {"2.5", "3"}, {"3", "2.2"}, {"2.2360679774997896964", "2.4494897427831780982"}, {"4", "7"}};
  Real worst = 0;
  for (const auto& [as, bs] : ab) {
    const Real a(as), b(bs);
    const QParam qp = q_from_norm(a * b);
    // Traces of P, Q on the A side and P-check, Q-check on the B side; P' from the capped picture.
    const Real trP = a * a - 1, trQ = a * a * (b * b - 1), trPc = b * b * (a * a - 1), trQc = b * b - 1;
    const Real trPprime = b * (a * a * a - 2 * a);
    const auto bd = branch_data_from_traces(2, qp, trP, trQ, trPc, trQc, DualAssignment::SelfDual);
    CoeffResult c;
    c.value = trPprime / trPc / (1 + bd.r_check);
    const auto res = solve_triple(bd, c);
    worst = std::max(worst, Real(abs_(res.s + 2)));
    o.require(res.check.admissible, std::string("omega = 1 at a=") + as);
  }
  o.require(worst < tol, "s = -2");
  const double secs = since(t0);
  o.require(secs < 5, "runtime");
  o.detail << "5 (a,b) pairs, max |s+2| = " << static_cast<double>(worst) << ", " << secs << " s";
}

void c3(Outcome& o) {
  const auto q1 = pair_of(corpus::su3_q1);
  Designation top;
  top.p = 1;
  const auto b1 = branch_data(q1, top);
  // Newton on x^3 - 4x^2 + 3x + 1 from 1.45.
  Real x("1.45");
  for (int i = 0; i < 60; ++i) x -= (x * x * x - 4 * x * x + 3 * x + 1) / (3 * x * x - 8 * x + 3);
  o.require(abs_(b1.r - x) < tol, "Q1 branch factor");
  const auto q2 = pair_of(corpus::su3_q2);
  const auto b2 = branch_data(q2);
  o.require(abs_(b2.r - (2 + sqrt_(Real(2))) / 2) < tol, "Q2 branch factor");
  for (const auto& [name, pr, b] : {std::tuple{"Q1", q1, b1}, std::tuple{"Q2", q2, b2}}) {
    o.require(abs_(chirality(pr, b).s + 2) < tol, std::string(name) + " s");
    const auto rep = run_all(pr);
    for (const auto& e : rep.entries)
      if (e.name == "star11") {
        o.require(e.applicable && e.verdict == Verdict::Survives, std::string(name) + " star11 survives");
        o.require(abs_(Real(e.evidence["sFromEquation"].get<std::string>()) + 2) < tol,
                  std::string(name) + " s from the *11 relation");
      }
  }
  o.detail << "r1 = " << static_cast<double>(b1.r) << ", r2 = " << static_cast<double>(b2.r) << ", s = -2 on both";
}

void c4(Outcome& o) {
  const auto orig = pair_of(corpus::two_d2);
  const auto d = dual_pair(orig);
  const auto b = branch_data(d);
  const Real five = sqrt_(Real(5));
  o.require(abs_(b.trP - sqrt_(7 + 3 * five)) < tol && abs_(b.trQ - sqrt_(7 + 3 * five)) < tol, "Tr P, Tr Q");
  const auto prof = spectral_profile(d);
  o.require(abs_(prof.plus.dims[4][0] - (1 + five) / 2) < tol, "Tr P1'");
  o.require(abs_(prof.plus.dims[4][1] - (3 + five) / 2) < tol, "Tr P2'");
  const auto cf = coeff_in_capped(d, b, Target::A, b.p);
  const Real rhs = -(1 + b.r) * b.q.qint(b.n + 1) / b.q.qint(b.n) * cf.value;
  o.require(abs_(rhs - 2 / b.q.qint(b.n)) < tol, "RHS = 2/[n]");
  const auto c = chirality(d, b);
  o.require(c.equation == "O" && abs_(c.s + 2) < tol, "s = -2");
  const auto po = spectral_profile(orig);
  o.require(po.plus.annular_text == "*12" && po.minus.annular_text == "*12", "annular *12");
  o.detail << "equation " << c.equation << ", annular " << po.plus.annular_text << "/" << po.minus.annular_text;
}

void c5(Outcome& o) {
  const auto pair = pair_of(corpus::index6_base);
  const auto b = branch_data(pair);
  o.require(b.valence == 3, "quadruple point");
  // Both values are ratios of small integers; compare at working precision.
  o.require(abs_(b.r - 4) < Real("1e-40") && abs_(b.r_check - Real(2) / 3) < Real("1e-40"), "r = 4, r-check = 2/3");
  const auto c = chirality(pair, b);
  o.require(abs_(c.s + 2) < tol, "s_A = -2");
  o.require(!c.s_b.empty(), "s_B found");
  for (const auto& sb : c.s_b) o.require(abs_(sb) < tol, "s_B = 0");
  o.require(c.qa_disagreement < Real("1e-10"), "QA1/QA2 residual");
  o.detail << "r = " << static_cast<double>(b.r) << ", r-check = " << static_cast<double>(b.r_check)
           << ", QA residual " << static_cast<double>(c.qa_disagreement);
}

json w_certificate;

void c6(Outcome& o) {
  const auto t0 = Clock::now();
  const auto w = WeedSpec::from_json(load_weed("W.json"));
  const auto dims = symbolic_dimensions(w);
  const auto bf = symbolic_branch_factor(w, dims);
  // The printed r counts translations (a = q^t); our a is q^(branch depth), three more.
  o.require(w.reference_r && bf.r.equals(*w.reference_r), "r identity (printed a read as a q^-3)");
  const auto cert = eliminate_weed(w);
  w_certificate = cert.to_json();
  o.require(cert.verdict == WeedVerdict::Eliminated, "verdict");
  o.require(w_certificate.value("proof", json::object()).value("bound", "") == "s + 2", "F = s + 2 signs");
  const auto chk = check_elimination(w_certificate);
  o.require(chk.ok, "certificate replay: " + chk.message);
  const double secs = since(t0);
  o.require(secs < 60, "runtime");
  o.detail << "r exact with a shift of 3, verdict " << to_string(cert.verdict) << ", region q >= 16789/10000, n >= 3, "
           << secs << " s; printed g*h does not reproduce the numerator of F, k matches the denominator";
}

void c7(Outcome& o) {
  for (const char* name : {"Q1.json", "Q2.json"}) {
    const json spec = load_weed(name);
    const auto c = eliminate_weed(WeedSpec::from_json(spec));
    o.require(c.verdict == WeedVerdict::Eliminated, std::string(name) + " eliminated for [2] > 2");
    o.require(check_elimination(c.data).ok, std::string(name) + " certificate");
    const json bnd = c.data.value("boundary", json::object());
    o.require(bnd.value("survivor", json::array()) == json::array({corpus::z4.first, corpus::z4.second}),
              std::string(name) + " Z/4 boundary");
    json closed = spec;
    closed["open"] = false;
    o.require(eliminate_weed(WeedSpec::from_json(closed)).verdict == WeedVerdict::Survives,
              std::string(name) + " survives only at q = 1");
  }
  o.require(run_all(pair_of(corpus::z4)).overall == Verdict::Survives, "Z/4 pair itself survives");
  o.detail << "both eliminated for q > 1, Z/4 pair the boundary survivor";
}

void c8(Outcome& o) {
  int strings = 0, graphs = 0, realized = 0;
  for (const auto& s : corpus::all_strings()) {
    o.require(serialize_bigraph(parse_bigraph(s)) == s, "round trip " + s);
    ++strings;
  }
  std::vector<Bigraph> all;
  for (const auto& s : corpus::all_strings()) all.push_back(parse_bigraph(s).graph);
  for (const auto& e : corpus::ade()) all.push_back(parse_bigraph(e.graph).graph);
  Real worst = 0;
  for (const auto& g : all) {
    const Real norm = graph_norm(g);
    worst = std::max(worst, eigen_residual(g, dimension_vector(g, norm), norm));
    if (g.vertex_count() > 12) continue;
    const auto l = loops_at_star(g, 6);
    for (int j = 0; j <= 6; ++j) o.require(l[static_cast<size_t>(j)] == walks(g, 2 * j), "loop counts");
    ++graphs;
  }
  o.require(worst < Real("1e-12"), "eigen residual");

  std::vector<corpus::Pair> pairs = corpus::index6();
  for (const auto& p : {corpus::haagerup, corpus::ghj3311, corpus::two_d2, corpus::su3_q1, corpus::su3_q2, corpus::z4})
    pairs.push_back(p);
  for (const auto& e : corpus::ade())
    if (!e.eliminated) pairs.push_back({e.graph, e.graph});
  for (const auto& p : pairs) {
    o.require(run_all(pair_of(p)).overall != Verdict::Eliminated, "no false positive on " + p.first);
    ++realized;
  }

  int caught = 0;
  if (!w_certificate.is_null()) {
    json bad = w_certificate;
    bad["region"]["q0"] = "1";
    caught += !check_elimination(bad).ok;
    bad = w_certificate;
    bad["proof"]["numeratorSign"] = -bad["proof"]["numeratorSign"].get<int>();
    caught += !check_elimination(bad).ok;
    bad = w_certificate;
    bad["r"]["num"] = bivar_to_json(bivar_from_json(bad["r"]["num"]) * Rat(2));
    caught += !check_elimination(bad).ok;
  }
  o.require(caught == 3, "tamper detection");
  o.detail << strings << " strings, " << graphs << " loop-checked graphs, residual " << static_cast<double>(worst) << ", "
           << realized << " realized pairs, " << caught << "/3 tampered certificates rejected";
}

}  // namespace

int main() {
  set_working_precision(64);
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"index <= 4 table", c1},      {"Fuss-Catalan", c2}, {"su(3) examples", c3},     {"2D2", c4},
      {"index-6 quadruple", c5},     {"weed W", c6},       {"quadruple weeds", c7}, {"property suites", c8}};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " | "
              << o.detail.str() << "\n";
  }
  return failures;
}
