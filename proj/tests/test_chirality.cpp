#include <doctest.h>

#include <random>

#include "chiral/chirality.hpp"
#include "corpus.hpp"

using namespace chiral;

namespace {

struct Setup {
  Setup() { set_working_precision(64); }
};
const Setup setup;

Real R(const char* s) { return Real(s); }
Real sqrt_(const Real& x) { return boost::multiprecision::sqrt(x); }
Real abs_(const Real& x) { return boost::multiprecision::abs(x); }

// The three displayed triple-point equations, LHS - RHS.
Real displayed(const std::string& eq, const BranchData& b, const Real& c, const Real& s) {
  const Real n = b.q.qint(b.n), n1 = b.q.qint(b.n + 1);
  const Real &r = b.r, &rc = b.r_check;
  if (eq == "E") return (rc - 1) * r / rc - s / n * sqrt_(r) / sqrt_(rc) + (1 + r) * n1 / n * c;
  if (eq == "Ebar") return (rc - 1) / rc + s / (n * sqrt_(rc)) + 2 * n1 / n * c;
  return (r - 1) - s / n + (1 + r) * n1 / n * c;
}

CoeffResult coeff_value(const Real& v) {
  CoeffResult c;
  c.value = v;
  return c;
}

BranchData synthetic(int n, const Real& q, const Real& trP, const Real& trQ, const Real& trPc, const Real& trQc,
                     DualAssignment a) {
  return branch_data_from_traces(n, q_from_norm(q + 1 / q), trP, trQ, trPc, trQc, a);
}

BigraphPair pair_of(const corpus::Pair& p) { return parse_pair(p.first, p.second); }

}  // namespace

TEST_CASE("index at most 4 table") {
  for (const auto& e : corpus::ade()) {
    INFO(e.name);
    const auto pair = parse_pair(e.graph, e.graph);
    const auto b = branch_data(pair);
    const auto c = chirality(pair, b);
    CHECK(abs_(c.s - Real(e.s)) < R("1e-12"));
    CHECK(c.residual < R("1e-12"));
    // Ocneanu: s = [n+2] - [n].
    CHECK(abs_(c.s - (b.q.qint(b.n + 2) - b.q.qint(b.n))) < R("1e-30"));
    CHECK(c.check.admissible == !e.eliminated);
  }
  // E7 in detail: sigma = exp(5 pi i / 18), omega = exp(5 pi i / 9).
  const auto e7 = parse_pair("gbg1v1v1v1p1v1x0", "gbg1v1v1v1p1v1x0");
  const auto c7 = chirality(e7, branch_data(e7));
  const Real pi = real_pi();
  CHECK(abs_(c7.s - 2 * sin(2 * pi / 9)) < R("1e-30"));
  CHECK(abs_(c7.check.sigma.re - cos(5 * pi / 18)) < R("1e-30"));
  CHECK(abs_(c7.check.omega.re - cos(5 * pi / 9)) < R("1e-30"));
  CHECK_FALSE(c7.check.admissible);
  // E6: omega = exp(2 pi i / 3).
  const auto e6 = parse_pair("gbg1v1v1p1v1x0", "gbg1v1v1p1v1x0");
  const auto c6 = chirality(e6, branch_data(e6));
  CHECK(c6.check.admissible);
  CHECK(c6.check.matched_order == 3);
}

TEST_CASE("displayed forms agree with the solved closed forms") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uq(1.05, 2.5), ur(0.3, 3.0), uc(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + i % 7;
    const Real q(uq(rng));
    const QParam qp = q_from_norm(q + 1 / q);
    const Real top = qp.qint(n + 1);
    Real r(ur(rng)), rc(ur(rng));
    DualAssignment a = DualAssignment::SelfDual;
    if (n % 2 == 1) {
      a = DualAssignment::Positional;
      rc = r;
    } else if (i % 3 == 0) {
      a = DualAssignment::SwapsWithQ;
      r = 1;
    }
    const auto b = synthetic(n, q, top / (1 + r), r * top / (1 + r), top / (1 + rc), rc * top / (1 + rc), a);
    const Real c(uc(rng));
    const auto res = solve_triple(b, coeff_value(c));
    INFO(res.equation << " n=" << n);
    CHECK(abs_(displayed(res.equation, b, c, res.s)) < R("1e-12"));
    CHECK(abs_(triple_residual(res.equation, b, c, res.s)) < R("1e-12"));
    CHECK(res.equation == (n % 2 ? "O" : (a == DualAssignment::SwapsWithQ ? "Ebar" : "E")));
  }
  // Prerequisites: Ebar needs r = 1, O needs r = r-check.
  const Real q("1.7");
  const Real top = q_from_norm(q + 1 / q).qint(4);
  CHECK_THROWS_AS(solve_triple(synthetic(3, q, top / 3, 2 * top / 3, top / 2, top / 2, DualAssignment::Positional),
                               coeff_value(Real(0))),
                  std::invalid_argument);
  const Real top4 = q_from_norm(q + 1 / q).qint(5);
  CHECK_THROWS_AS(solve_triple(synthetic(4, q, top4 / 3, 2 * top4 / 3, top4 / 2, top4 / 2, DualAssignment::SwapsWithQ),
                               coeff_value(Real(0))),
                  std::invalid_argument);
}

TEST_CASE("Ocneanu hypotheses give s = [n+2] - [n]") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uq(1.01, 2.2), ur(0.2, 4.0);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const Real q(uq(rng));
    const QParam qp = q_from_norm(q + 1 / q);
    const Real two = qp.qint(2), top = qp.qint(n + 1);
    DualAssignment a = n % 2 ? DualAssignment::Positional : DualAssignment::SelfDual;
    Real r(ur(rng));
    if (n % 2 == 0 && i % 2 == 1) {
      a = DualAssignment::SwapsWithQ;
      r = 1;
    }
    const Real trP = top / (1 + r);
    const Real trPprime = two * trP - qp.qint(n);
    const auto b = synthetic(n, q, trP, r * trP, trP, r * trP, a);
    // cap of P-bar' is (Tr P' / Tr P) times P-check or Q-check.
    const Real coeff = a == DualAssignment::SwapsWithQ ? Real(-trPprime / trP / (1 + r)) : Real(trPprime / trP / (1 + r));
    const auto res = solve_triple(b, coeff_value(coeff));
    INFO("n=" << n << " eq=" << res.equation);
    CHECK(abs_(res.s - (qp.qint(n + 2) - qp.qint(n))) < R("1e-30"));
    CHECK(abs_(res.s - (boost::multiprecision::pow(q, n + 1) + boost::multiprecision::pow(q, -n - 1))) < R("1e-30"));
    CHECK_FALSE(res.check.admissible);  // |s| > 2 above index 4
  }
}

TEST_CASE("singly valent vertex") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> uq(1.05, 2.0), ur(0.2, 3.0);
  for (int i = 0; i < 10; ++i) {
    const int n = 2 * (1 + i % 4);
    const Real q(uq(rng));
    const QParam qp = q_from_norm(q + 1 / q);
    const Real nn = qp.qint(n), n2 = qp.qint(n + 2), top = qp.qint(n + 1);
    const Real r = n2 / nn, rc(ur(rng));
    const auto b = synthetic(n, q, top / (1 + r), r * top / (1 + r), top / (1 + rc), rc * top / (1 + rc),
                             DualAssignment::SelfDual);
    const auto res = solve_triple(b, coeff_value(Real(0)));
    CHECK(abs_(res.s - sqrt_(n2 * nn) * (sqrt_(rc) - 1 / sqrt_(rc))) < R("1e-30"));
    // r-check + 1/r-check = 2 + (omega + omega^-1 + 2)/([n][n+2]) with omega + omega^-1 = s^2 - 2.
    CHECK(abs_(rc + 1 / rc - 2 - res.s * res.s / (nn * n2)) < R("1e-10"));
  }
}

TEST_CASE("Fuss-Catalan traces give s = -2") {
  const std::vector<std::pair<const char*, const char*>> ab = {
      {"2.1", "2.3"}, {"2.5", "3"}, {"3", "2.2"}, {"2.2360679774997896964", "2.4494897427831780982"}, {"4", "7"}};
  for (const auto& [as, bs] : ab) {
    const Real a(as), b(bs);
    const QParam qp = q_from_norm(a * b);
    const Real q = qp.q;
    const Real trP = a * a - 1, trQ = a * a * (b * b - 1);
    const Real trPc = b * b * (a * a - 1), trQc = b * b - 1, trPprime = b * (a * a * a - 2 * a);
    const auto bd = synthetic(2, q, trP, trQ, trPc, trQc, DualAssignment::SelfDual);
    CHECK(abs_(bd.r / bd.r_check - a * a * b * b) < R("1e-30"));
    const Real rc = bd.r_check;
    const auto res = solve_triple(bd, coeff_value(trPprime / trPc / (1 + rc)));
    CHECK(res.equation == "E");
    CHECK(abs_(res.s + 2) < R("1e-30"));
    CHECK(res.check.admissible);
    CHECK(abs_(res.check.omega.re - 1) < R("1e-12"));
  }
}

TEST_CASE("su(3) examples and 2D2 give s = -2") {
  for (const auto& p : {corpus::su3_q1, corpus::su3_q2}) {
    const auto pair = pair_of(p);
    for (int d = 0; d < 2; ++d) {
      Designation des;
      des.p = d;
      const auto b = branch_data(pair, des);
      const auto c = chirality(pair, b);
      CHECK(c.equation == "O");
      CHECK(abs_(c.s + 2) < R("1e-30"));
      CHECK(c.residual < R("1e-12"));
    }
  }
  // 2D2 works on the dual pair; the original orientation violates the capping hypothesis.
  const auto orig = pair_of(corpus::two_d2);
  CHECK_THROWS_AS(coeff_in_capped(orig, branch_data(orig), Target::A, 0), FormulaInapplicable);
  const auto d = dual_pair(orig);
  const auto b = branch_data(d);
  const auto cf = coeff_in_capped(d, b, Target::A, b.p);
  CHECK(cf.terms.size() == 2);
  Real sum = 0;
  for (const auto& t : cf.terms) sum += t.contribution;
  CHECK(abs_(sum - cf.value) < R("1e-40"));
  // RHS of (O) is 2/[n].
  const Real rhs = -(1 + b.r) * b.q.qint(b.n + 1) / b.q.qint(b.n) * cf.value;
  CHECK(abs_(rhs - 2 / b.q.qint(b.n)) < R("1e-30"));
  const auto c = chirality(d, b);
  CHECK(abs_(c.s + 2) < R("1e-30"));
  CHECK(abs_(c.check.omega.re - 1) < R("1e-12"));
}

TEST_CASE("capped coefficient with P' = 0") {
  // Index-6 base: P has no depth-3 neighbour on the plus graph.
  const auto pair = pair_of(corpus::index6_base);
  const auto b = branch_data(pair);
  const auto cf = coeff_in_capped(pair, b, Target::A, b.p);
  CHECK(cf.value == 0);
  CHECK(cf.terms.empty());
}

TEST_CASE("index-6 quadruple point") {
  const auto pair = pair_of(corpus::index6_base);
  const auto b = branch_data(pair);
  const auto c = chirality(pair, b);
  CHECK(c.quadruple);
  CHECK(abs_(c.s + 2) < R("1e-30"));
  CHECK(abs_(c.s_a2 + 2) < R("1e-30"));
  CHECK(c.qa_disagreement < R("1e-10"));
  REQUIRE_FALSE(c.s_b.empty());
  // sigma_B comes from a tangency in (QB), so only about half the digits survive.
  for (const auto& sb : c.s_b) CHECK(abs_(sb) < R("1e-15"));
  for (const auto& sg : c.sigma_b) {
    CHECK(abs_(sg.re) < R("1e-15"));
    CHECK(abs_(abs_(sg.im) - 1) < R("1e-30"));
  }
  for (const auto& bc : c.b_checks) {
    CHECK(bc.admissible);
    CHECK(abs_(bc.omega.re + 1) < R("1e-12"));
  }

  // The three displayed equations with the printed numbers, at sigma_A = -1, sigma_B = i.
  const Real s6 = sqrt_(Real(6)), s2 = sqrt_(Real(2)), s3 = sqrt_(Real(3)), sA = c.s;
  CHECK(abs_((Real(2) / 3 - 1) * 12 / 2 - sA / s6 * 2 * s3 / s2) < R("1e-30"));
  const Real qa2_lhs = ((Real(2) / 3 - 4 - 2) + sA / s6 * 2 * s2 / s3) * 12 / 2;
  CHECK(abs_(qa2_lhs + 40) < R("1e-30"));
  CHECK(abs_(qa2_lhs - Real(-2 * 4 * 5) * 5 / s6 * (s6 / 3) / (1 + Real(2) / 3)) < R("1e-30"));
  // sigma_A sigma_B^-1 + sigma_A^-1 sigma_B = -(-i) - i = 0 and sigma_B + sigma_B^-1 = 0.

  // All six index-6 pairs agree in every orientation where the capping formula applies.
  for (const auto& p : corpus::index6()) {
    int solved = 0;
    for (const auto& pr : {pair_of(p), dual_pair(pair_of(p))}) {
      try {
        const auto cc = chirality(pr, branch_data(pr));
        CHECK(abs_(cc.s + 2) < R("1e-12"));
        CHECK(cc.qa_disagreement < R("1e-10"));
        ++solved;
      } catch (const FormulaInapplicable&) {
      }
    }
    CHECK(solved >= 1);
  }
}

TEST_CASE("projection coefficients") {
  const auto pair = pair_of(corpus::index6_base);
  const auto b = branch_data(pair);
  for (const bool minus : {false, true}) {
    const int p = minus ? b.pc : b.p, q = minus ? b.qc : b.q_idx, r = minus ? b.rc : b.r_idx;
    const Real rr = minus ? b.r_check : b.r;
    const Real trP = minus ? b.trPc : b.trP, trQ = minus ? b.trQc : b.trQ, trR = minus ? b.trRc : b.trR;
    const Real aP = projection_coefficient(b, Target::A, p, minus), aQ = projection_coefficient(b, Target::A, q, minus),
               aR = projection_coefficient(b, Target::A, r, minus);
    CHECK(abs_(aP - 1 / (1 + rr)) < R("1e-40"));
    CHECK(abs_(aQ + 1 / (2 * (1 + rr))) < R("1e-40"));
    CHECK(abs_(aR - aQ) < R("1e-40"));
    // P + Q + R is the Jones-Wenzl idempotent, which has no A or B part.
    CHECK(abs_(aP + aQ + aR) < R("1e-40"));
    const Real bP = projection_coefficient(b, Target::B, p, minus), bQ = projection_coefficient(b, Target::B, q, minus),
               bR = projection_coefficient(b, Target::B, r, minus);
    CHECK(bP == 0);
    CHECK(abs_(bQ + Real(1) / 2) < R("1e-40"));
    CHECK(abs_(bR - Real(1) / 2) < R("1e-40"));
    // A = rP - Q - R and B = R - Q are traceless.
    CHECK(abs_(rr * trP - trQ - trR) < R("1e-30"));
    CHECK(abs_(trR - trQ) < R("1e-30"));
  }
  // Triple point: +-1/(1+r).
  const auto h = pair_of(corpus::haagerup);
  const auto bh = branch_data(h);
  CHECK(abs_(projection_coefficient(bh, Target::A, bh.p, false) - 1 / (1 + bh.r)) < R("1e-40"));
  CHECK(abs_(projection_coefficient(bh, Target::A, bh.q_idx, false) + 1 / (1 + bh.r)) < R("1e-40"));
}

TEST_CASE("root of unity consistency") {
  auto c = root_of_unity_consistency(Real(2), 5);
  CHECK(c.admissible);
  CHECK(abs_(c.omega.re - 1) < R("1e-30"));
  // D_k, k odd: omega = -1 is not a (k-2)-th root of unity.
  for (int k = 5; k <= 11; k += 2) CHECK_FALSE(root_of_unity_consistency(Real(0), k - 2).admissible);
  for (int k = 4; k <= 12; k += 2) {
    c = root_of_unity_consistency(Real(0), k - 2);
    CHECK(c.admissible);
    CHECK(c.matched_order == 2);
  }
  CHECK_FALSE(root_of_unity_consistency(Real(3), 4).admissible);
  CHECK_FALSE(root_of_unity_consistency(Real(-2.5), 4).admissible);
  // Parity constraints for the quadruple case.
  CHECK(root_of_unity_consistency(Real(0), 2, Parity::Minus).admissible);
  CHECK_FALSE(root_of_unity_consistency(Real(0), 2, Parity::Plus).admissible);
  CHECK(root_of_unity_consistency(Real(-2), 2, Parity::Plus).admissible);
  // sigma reported with sigma + 1/sigma = s.
  const Real s("1.234");
  c = root_of_unity_consistency(s, 7);
  CHECK(abs_(2 * c.sigma.re - s) < R("1e-12"));
  CHECK(abs_(c.sigma.re * c.sigma.re + c.sigma.im * c.sigma.im - 1) < R("1e-30"));
}

TEST_CASE("json output") {
  const auto pair = pair_of(corpus::index6_base);
  const auto j = chirality(pair, branch_data(pair)).to_json();
  CHECK(j.contains("s"));
  CHECK(j.contains("consistent"));
  CHECK(j.contains("equationUsed"));
  CHECK(j.contains("sigmaCandidates"));
}
