#include "chiral/chirality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace chiral {

namespace {

using nlohmann::json;

Real clamp_unit(const Real& s) {
  if (s > 2) return Real(2);
  if (s < -2) return Real(-2);
  return s;
}

json unit_json(const UnitComplex& z, int digits) {
  return {{"re", format_real(z.re, digits)}, {"im", format_real(z.im, digits)}};
}

json check_json(const RootCheck& c, int digits) {
  json j = {{"admissible", c.admissible}, {"reason", c.reason}};
  if (c.matched_k >= 0) {
    j["omega"] = unit_json(c.omega, digits);
    j["sigmaCandidates"] = json::array({unit_json(c.sigma, digits), unit_json({c.sigma.re, -c.sigma.im}, digits)});
    j["matchedK"] = c.matched_k;
    j["matchedRootOrder"] = c.matched_order;
    j["distance"] = format_real(c.distance, 5);
  }
  return j;
}

}  // namespace

json CoeffResult::to_json(int digits) const {
  json terms_j = json::array();
  for (const auto& t : terms)
    terms_j.push_back({{"R", t.vertex + 1},
                       {"m", t.m},
                       {"TrR", format_real(t.trR, digits)},
                       {"Rbar", t.dual_vertex + 1},
                       {"RbarOn", t.dual_on_minus ? "minus" : "plus"},
                       {"E", t.e_vertex + 1},
                       {"TrE", format_real(t.trE, digits)},
                       {"coeffE", format_real(t.coeffE, digits)},
                       {"contribution", format_real(t.contribution, digits)}});
  return {{"value", format_real(value, digits)}, {"terms", terms_j}, {"truncated", truncated}};
}

Real projection_coefficient(const BranchData& b, Target target, int e, bool on_minus) {
  const int P = on_minus ? b.pc : b.p;
  const int Q = on_minus ? b.qc : b.q_idx;
  const int R = on_minus ? b.rc : b.r_idx;
  const Real& r = on_minus ? b.r_check : b.r;
  if (b.valence == 2) {
    if (target == Target::B) throw std::invalid_argument("B only exists at a quadruple point");
    if (e == P) return 1 / (1 + r);
    if (e == Q) return -1 / (1 + r);
    throw std::invalid_argument("vertex is not at the branch");
  }
  if (target == Target::A) {
    if (e == P) return 1 / (1 + r);
    if (e == Q || e == R) return -1 / (2 * (1 + r));
  } else {
    if (e == P) return Real(0);
    if (e == Q) return Real(-0.5);
    if (e == R) return Real(0.5);
  }
  throw std::invalid_argument("vertex is not at the branch");
}

CoeffResult coeff_in_capped(const BigraphPair& pair, const BranchData& b, Target target, int base) {
  if (b.synthetic) throw std::invalid_argument("coefficient needs a graph pair, not synthetic branch data");
  const int n = b.n;
  CoeffResult out;
  out.value = 0;
  if (pair.plus.max_depth() <= n) {
    out.truncated = true;
    return out;
  }
  const bool even = n % 2 == 0;
  const Dims dp = dimension_vector(pair.plus, graph_norm(pair.plus));
  // For even n the bar of an odd-depth vertex lives on the other graph.
  const Bigraph& dual_graph = even ? pair.minus : pair.plus;
  const Dims dd = even ? dimension_vector(pair.minus, graph_norm(pair.minus)) : dp;
  if (dual_graph.max_depth() <= n) throw FormulaInapplicable("dual graph stops before depth n+1");

  for (int R = 0; R < pair.plus.count(n + 1); ++R) {
    const int m = pair.plus.mult(n + 1, R, base);
    if (m == 0) continue;
    CoeffTerm t;
    t.vertex = R;
    t.m = m;
    t.trR = dp[static_cast<size_t>(n + 1)][static_cast<size_t>(R)];
    t.dual_on_minus = even;
    t.dual_vertex = even ? R : pair.plus_duals[static_cast<size_t>((n + 1) / 2)][static_cast<size_t>(R)];
    if (t.dual_vertex >= dual_graph.count(n + 1)) throw FormulaInapplicable("dual vertex missing on the other graph");
    std::vector<int> nbrs;
    for (int j = 0; j < dual_graph.count(n); ++j)
      if (dual_graph.mult(n + 1, t.dual_vertex, j) > 0) nbrs.push_back(j);
    if (nbrs.size() != 1) {
      std::ostringstream os;
      os << "formula inapplicable: dual of depth-" << n + 1 << " vertex " << R + 1 << " has " << nbrs.size()
         << " neighbours at depth " << n;
      throw FormulaInapplicable(os.str());
    }
    t.e_vertex = nbrs[0];
    t.trE = dd[static_cast<size_t>(n)][static_cast<size_t>(t.e_vertex)];
    t.coeffE = projection_coefficient(b, target, t.e_vertex, even);
    t.contribution = m * t.trR / t.trE * t.coeffE;
    out.value += t.contribution;
    out.terms.push_back(t);
  }
  return out;
}

RootCheck root_of_unity_consistency(const Real& s, int n, Parity parity, const Real& unit_tol, const Real& tol) {
  RootCheck c;
  c.s_clamped = s;
  if (n <= 0) {
    c.reason = "n must be positive";
    return c;
  }
  if (abs(s) > 2 + tol) {
    c.reason = "|s| > 2: no unit-modulus sigma";
    return c;
  }
  c.s_clamped = clamp_unit(s);
  const Real theta = acos(c.s_clamped / 2);
  c.sigma = {cos(theta), sin(theta)};
  c.omega = {cos(2 * theta), sin(2 * theta)};
  const Real two_pi = 2 * real_pi();
  const Real pos = 2 * theta * n / two_pi;
  long k = static_cast<long>(floor(pos + Real(0.5)).convert_to<long>()) % n;
  c.matched_k = static_cast<int>(k);
  c.matched_order = n / std::gcd(static_cast<int>(k), n);
  const Real diff = 2 * theta - two_pi * k / n;
  c.distance = abs(2 * sin(diff / 2));
  if (c.distance > unit_tol) {
    std::ostringstream os;
    os << "omega is not an " << n << "-th root of unity (distance " << format_real(c.distance, 5) << ")";
    c.reason = os.str();
    return c;
  }
  // omega^{n/2} = (-1)^k for the matched root.
  if (parity != Parity::None) {
    if (n % 2 != 0) {
      c.reason = "parity constraint needs even n";
      return c;
    }
    const bool plus = k % 2 == 0;
    if (plus != (parity == Parity::Plus)) {
      c.reason = std::string("omega^{n/2} = ") + (plus ? "+1" : "-1") + " violates the parity constraint";
      return c;
    }
  }
  c.admissible = true;
  c.reason = "ok";
  return c;
}

Real triple_residual(const std::string& eq, const BranchData& b, const Real& c, const Real& s) {
  const Real n = b.q.qint(b.n), n1 = b.q.qint(b.n + 1);
  const Real& r = b.r;
  const Real& rc = b.r_check;
  if (eq == "E" || eq == "QA1") {
    const Real lhs = (rc - 1) * r / rc - s / n * sqrt(r) / sqrt(rc);
    return abs(lhs + (1 + r) * n1 / n * c);
  }
  if (eq == "Ebar") {
    const Real lhs = (rc - 1) / rc + s / (n * sqrt(rc));
    return abs(lhs + 2 * n1 / n * c);
  }
  if (eq == "O") {
    const Real lhs = (r - 1) - s / n;
    return abs(lhs + (1 + r) * n1 / n * c);
  }
  if (eq == "QA2") {
    const Real lhs = ((rc - r - 2) + s / n * sqrt(r * rc)) * r / rc;
    return abs(lhs + 2 * r * (1 + r) * n1 / n * c);
  }
  throw std::invalid_argument("unknown equation " + eq);
}

ChiralityResult solve_triple(const BranchData& b, const CoeffResult& coeff, const Real& tol) {
  if (b.valence != 2) throw std::invalid_argument("solve_triple needs a triple point");
  const Real n = b.q.qint(b.n), n1 = b.q.qint(b.n + 1);
  const Real& r = b.r;
  const Real& rc = b.r_check;
  const Real& c = coeff.value;
  ChiralityResult res;
  if (b.n % 2 == 1) {
    if (abs(r - rc) > tol) throw std::invalid_argument("odd n requires r = r-check");
    res.equation = "O";
    res.s = (r - 1) * n + (1 + r) * n1 * c;
  } else if (b.assignment == DualAssignment::SwapsWithQ) {
    if (abs(r - 1) > tol) throw std::invalid_argument("P dual to Q requires r = 1");
    res.equation = "Ebar";
    res.s = -sqrt(rc) * ((rc - 1) * n / rc + 2 * n1 * c);
  } else {
    res.equation = "E";
    res.s = n * sqrt(rc / r) * ((rc - 1) * r / rc + (1 + r) * n1 / n * c);
  }
  res.residual = triple_residual(res.equation, b, c, res.s);
  res.check = root_of_unity_consistency(res.s, b.n);
  return res;
}

ChiralityResult solve_quadruple(const BranchData& b, const CoeffResult& coeffP, const CoeffResult& coeffQ_A,
                                const CoeffResult& coeffQ_B, const Real& tol) {
  if (b.valence != 3 || b.n % 2 != 0) throw std::invalid_argument("solve_quadruple needs an even quadruple point");
  const Real n = b.q.qint(b.n), n1 = b.q.qint(b.n + 1);
  const Real& r = b.r;
  const Real& rc = b.r_check;
  ChiralityResult res;
  res.quadruple = true;
  res.equation = "QA1";
  res.s = n * sqrt(rc / r) * ((rc - 1) * r / rc + (1 + r) * n1 / n * coeffP.value);
  res.s_a2 = n / sqrt(r * rc) * (-2 * rc * (1 + r) * n1 / n * coeffQ_A.value - (rc - r - 2));
  res.qa_disagreement = abs(res.s - res.s_a2);
  res.residual = std::max(triple_residual("QA1", b, coeffP.value, res.s),
                          triple_residual("QA2", b, coeffQ_A.value, res.s));
  res.check = root_of_unity_consistency(res.s, b.n, Parity::Plus);
  if (res.qa_disagreement > tol) {
    res.note = "QA1 and QA2 disagree";
    return res;
  }
  if (abs(res.s) > 2 + tol) {
    res.note = "no unit-modulus sigma_A, QB not solved";
    return res;
  }

  // QB: C cos(beta) + S sin(beta) = K with sigma_A = e^{i alpha}.
  const Real alpha = acos(clamp_unit(res.s) / 2);
  const Real w = sqrt(r * rc) / n;
  const Real C = 2 * cos(alpha) - 2 * w;
  const Real S = 2 * sin(alpha);
  const Real K = -2 * r * (1 + r) * n1 / n * coeffQ_B.value / ((r / rc) * sqrt(1 + rc) * sqrt(1 + r));
  const Real R0 = sqrt(C * C + S * S);
  if (R0 <= tol) {
    res.note = abs(K) <= tol ? "QB is satisfied by every sigma_B" : "QB has no solution";
    return res;
  }
  if (abs(K) > R0 + tol) {
    res.note = "QB has no unit-modulus solution";
    return res;
  }
  const Real phi = atan2(S, C);
  const Real delta = acos(std::clamp(K / R0, Real(-1), Real(1)));
  for (const Real& beta : {phi + delta, phi - delta}) {
    const Real sb = 2 * cos(beta);
    bool dup = false;
    for (const auto& x : res.s_b) dup = dup || abs(x - sb) <= tol;
    if (dup) continue;
    const RootCheck bc = root_of_unity_consistency(sb, b.n, Parity::Minus);
    res.s_b.push_back(sb);
    res.sigma_b.push_back({cos(beta), sin(beta)});
    res.b_checks.push_back(bc);
    const Real inner = 2 * cos(alpha - beta) - sb * w;
    res.residual = std::max(res.residual, abs(inner - K));
  }
  return res;
}

ChiralityResult chirality(const BigraphPair& pair, const BranchData& b, const Real& tol) {
  if (b.valence == 2) return solve_triple(b, coeff_in_capped(pair, b, Target::A, b.p), tol);
  return solve_quadruple(b, coeff_in_capped(pair, b, Target::A, b.p), coeff_in_capped(pair, b, Target::A, b.q_idx),
                         coeff_in_capped(pair, b, Target::B, b.q_idx), tol);
}

json ChiralityResult::to_json(int digits) const {
  json j = {{"equationUsed", equation},
            {"s", format_real(s, digits)},
            {"residual", format_real(residual, 5)},
            {"consistent", check.admissible},
            {"verdict", check.reason}};
  const json cj = check_json(check, digits);
  j["sigmaCandidates"] = cj.contains("sigmaCandidates") ? cj["sigmaCandidates"] : json::array();
  j["omega"] = cj.contains("omega") ? cj["omega"] : json(nullptr);
  j["matchedRootOrder"] = check.matched_order;
  if (quadruple) {
    j["sA2"] = format_real(s_a2, digits);
    j["qaDisagreement"] = format_real(qa_disagreement, 5);
    json bs = json::array();
    for (size_t i = 0; i < s_b.size(); ++i) {
      json e = check_json(b_checks[i], digits);
      e["sB"] = format_real(s_b[i], digits);
      e["sigmaB"] = unit_json(sigma_b[i], digits);
      bs.push_back(e);
    }
    j["B"] = bs;
  }
  if (!note.empty()) j["note"] = note;
  return j;
}

}  // namespace chiral
