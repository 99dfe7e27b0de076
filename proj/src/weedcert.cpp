#include "chiral/weedcert.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "chiral/spectra.hpp"

namespace chiral {

namespace {

using nlohmann::json;

json ratfunc_json(const RatFunc& f) { return {{"num", bivar_to_json(f.num())}, {"den", bivar_to_json(f.den())}}; }
RatFunc ratfunc_from(const json& j) { return RatFunc(bivar_from_json(j.at("num")), bivar_from_json(j.at("den"))); }

WeedEquation equation_from(const std::string& s) {
  if (s == "odd11") return WeedEquation::Odd11;
  if (s == "even11") return WeedEquation::Even11;
  if (s == "quadruple") return WeedEquation::Quadruple;
  throw std::invalid_argument("unknown weed equation '" + s + "'");
}

// Size of a polynomial, used to prefer simple pivots.
size_t weight(const RatFunc& f) { return f.num().terms().size() + f.den().terms().size(); }

struct Row {
  std::map<int, RatFunc> coeffs;
  RatFunc rhs;
};

// Exact Gauss-Jordan elimination over the field of rational functions.
std::vector<RatFunc> solve_exact(std::vector<Row> rows, int k) {
  std::vector<bool> used(rows.size(), false);
  std::vector<int> pivot_row(static_cast<size_t>(k), -1);
  for (int col = 0; col < k; ++col) {
    int best = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].coeffs.find(col);
      if (it == rows[i].coeffs.end()) continue;
      if (best < 0 || weight(it->second) < weight(rows[static_cast<size_t>(best)].coeffs.at(col))) best = static_cast<int>(i);
    }
    if (best < 0) throw std::domain_error("eigen-equations do not determine the dimensions");
    Row& pr = rows[static_cast<size_t>(best)];
    used[static_cast<size_t>(best)] = true;
    pivot_row[static_cast<size_t>(col)] = best;
    const RatFunc inv = RatFunc(1) / pr.coeffs.at(col);
    for (auto& [c, v] : pr.coeffs) v = v * inv;
    pr.rhs = pr.rhs * inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == best) continue;
      auto it = rows[i].coeffs.find(col);
      if (it == rows[i].coeffs.end()) continue;
      const RatFunc f = it->second;
      for (const auto& [c, v] : pr.coeffs) {
        RatFunc nv = (rows[i].coeffs.count(c) ? rows[i].coeffs.at(c) : RatFunc(0)) - f * v;
        if (nv.is_zero()) rows[i].coeffs.erase(c);
        else rows[i].coeffs[c] = nv;
      }
      rows[i].rhs = rows[i].rhs - f * pr.rhs;
    }
  }
  for (size_t i = 0; i < rows.size(); ++i)
    if (!used[i] && !rows[i].rhs.is_zero()) throw std::domain_error("eigen-equations are inconsistent");
  std::vector<RatFunc> x(static_cast<size_t>(k));
  for (int col = 0; col < k; ++col) x[static_cast<size_t>(col)] = rows[static_cast<size_t>(pivot_row[static_cast<size_t>(col)])].rhs;
  return x;
}

std::set<int> down_nbrs(const Bigraph& g, int n, int v) {
  std::set<int> out;
  for (int j = 0; j < g.count(n); ++j)
    if (g.mult(n + 1, v, j) > 0) out.insert(j);
  return out;
}

std::vector<int> kids(const Bigraph& g, int n, int p) {
  std::vector<int> out;
  if (g.max_depth() <= n) return out;
  for (int R = 0; R < g.count(n + 1); ++R)
    if (g.mult(n + 1, R, p) > 0) out.push_back(R);
  return out;
}

int self_dual_vertex(const DualData& d, int n) {
  const auto& perm = d[static_cast<size_t>(n / 2)];
  int found = -1;
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] == static_cast<int>(i)) {
      if (found >= 0) throw std::invalid_argument("several self-dual branch vertices");
      found = static_cast<int>(i);
    }
  if (found < 0) throw std::invalid_argument("no self-dual branch vertex");
  return found;
}

bool extendable(const std::vector<bool>& mask, int i) {
  return mask.empty() || mask[static_cast<size_t>(i)];
}

// Sign certificate for a bound N/D being negative on the region.
struct NegativeProof {
  int num_sign = 0, den_sign = 0;
  PositivityCertificate num_cert, den_cert;
};

std::optional<PositivityCertificate> certify_with_hints(const BivarPoly& p, const Region& r,
                                                        const std::vector<BivarPoly>& hints) {
  if (auto c = certify_positive(p, r)) return c;
  if (!hints.empty()) return certify_factored(p, r, hints);
  return std::nullopt;
}

std::optional<NegativeProof> prove_negative(const RatFunc& f, const Region& r, const std::vector<BivarPoly>& hints) {
  if (f.is_zero()) return std::nullopt;
  for (int ns : {1, -1}) {
    auto nc = certify_with_hints(f.num() * Rat(ns), r, hints);
    if (!nc) continue;
    auto dc = certify_positive(f.den() * Rat(-ns), r);
    if (!dc) continue;
    return NegativeProof{ns, -ns, std::move(*nc), std::move(*dc)};
  }
  return std::nullopt;
}

BivarPoly strip_monomial(const BivarPoly& p) {
  if (p.is_zero()) return p;
  return p.shifted(-p.min_a(), -p.min_q());
}

// x = c * a^i q^j * y for some rational c != 0.
bool equal_up_to_monomial(const BivarPoly& x, const BivarPoly& y) {
  if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
  const BivarPoly xs = strip_monomial(x), ys = strip_monomial(y);
  if (xs.terms().size() != ys.terms().size()) return false;
  const Rat c = xs.terms().begin()->second / ys.terms().begin()->second;
  return xs == ys * c;
}

// At q = 1 the only even translated extension is the trivial one.
json z4_boundary() {
  return {{"q", "1"}, {"index", "4"}, {"survivor", {"bwd1v1p1p1duals1v1x3x2", "bwd1v1p1p1duals1v1x3x2"}}};
}

// Recomputes the chirality bounds from the branch factors alone.
std::vector<std::pair<std::string, RatFunc>> bounds_from(WeedEquation eq, const RatFunc& r, const RatFunc& rc,
                                                         RatFunc* s_out, RatFunc* s2_out) {
  const RatFunc qn = quantum_integer_shifted(0), qn2 = quantum_integer_shifted(2);
  std::vector<std::pair<std::string, RatFunc>> out;
  if (eq == WeedEquation::Even11) {
    const RatFunc x = (rc - 1) * r / rc - (r * qn - qn2) / qn;
    const RatFunc s2 = qn * qn * (rc / r) * x * x;
    if (s2_out) *s2_out = s2;
    out.push_back({"4 - s^2", RatFunc(4) - s2});
    return out;
  }
  const RatFunc s = eq == WeedEquation::Odd11 ? r * qn - qn2 / r : qn2 - qn;
  if (s_out) *s_out = s;
  if (eq == WeedEquation::Odd11) {
    out.push_back({"s + 2", s + 2});
    out.push_back({"2 - s", RatFunc(2) - s});
  } else {
    out.push_back({"2 - s", RatFunc(2) - s});
    out.push_back({"s + 2", s + 2});
  }
  return out;
}

}  // namespace

const char* to_string(WeedEquation e) {
  switch (e) {
    case WeedEquation::Odd11: return "odd11";
    case WeedEquation::Even11: return "even11";
    default: return "quadruple";
  }
}

const char* to_string(WeedVerdict v) {
  switch (v) {
    case WeedVerdict::Eliminated: return "eliminated";
    case WeedVerdict::Survives: return "survives";
    default: return "inconclusive";
  }
}

WeedSpec WeedSpec::from_json(const json& j) {
  WeedSpec w;
  w.plus_string = j.at("plus").get<std::string>();
  w.minus_string = j.at("minus").get<std::string>();
  w.pair = parse_pair(w.plus_string, w.minus_string);
  if (j.contains("pVertex") && !j["pVertex"].is_null()) w.p_vertex = j["pVertex"].get<int>() - 1;
  w.equation = equation_from(j.at("equation").get<std::string>());
  if (j.contains("q0")) w.q0 = parse_rat(j["q0"].is_string() ? j["q0"].get<std::string>() : j["q0"].dump());
  if (j.contains("n0")) w.n0 = j["n0"].get<int>();
  if (j.contains("open")) w.open = j["open"].get<bool>();
  if (j.contains("parity")) w.even_translations = j["parity"].get<std::string>() == "even";
  if (j.contains("plusExtendable")) w.plus_extendable = j["plusExtendable"].get<std::vector<bool>>();
  if (j.contains("minusExtendable")) w.minus_extendable = j["minusExtendable"].get<std::vector<bool>>();
  if (j.contains("reference")) {
    const auto& r = j["reference"];
    w.reference_a_shift = r.value("aShift", 0);
    const int e = -w.reference_a_shift;
    auto conv = [e](const json& p) { return bivar_from_json(p).substitute_a_scaled(e); };
    if (r.contains("r")) w.reference_r = RatFunc(conv(r["r"].at("num")), conv(r["r"].at("den")));
    if (r.contains("numeratorFactors"))
      for (const auto& f : r["numeratorFactors"]) w.reference_num_factors.push_back(conv(f));
    if (r.contains("denominator")) w.reference_den = conv(r["denominator"]);
  }
  const int D = w.pair.plus.max_depth();
  if (!w.plus_extendable.empty() && static_cast<int>(w.plus_extendable.size()) != w.pair.plus.count(D))
    throw std::invalid_argument("plusExtendable must have one entry per vertex at the maximal depth");
  if (!w.minus_extendable.empty() &&
      static_cast<int>(w.minus_extendable.size()) != w.pair.minus.count(w.pair.minus.max_depth()))
    throw std::invalid_argument("minusExtendable must have one entry per vertex at the maximal depth");
  return w;
}

json WeedSpec::to_json() const {
  json j = {{"plus", plus_string},
            {"minus", minus_string},
            {"pVertex", p_vertex >= 0 ? json(p_vertex + 1) : json(nullptr)},
            {"equation", chiral::to_string(equation)},
            {"q0", rat_to_string(q0)},
            {"n0", n0},
            {"open", open},
            {"parity", even_translations ? "even" : "any"}};
  if (!plus_extendable.empty()) j["plusExtendable"] = plus_extendable;
  if (!minus_extendable.empty()) j["minusExtendable"] = minus_extendable;
  if (reference_r || !reference_num_factors.empty() || reference_den) {
    json r = json::object();
    if (reference_r) r["r"] = ratfunc_json(*reference_r);
    if (!reference_num_factors.empty()) {
      r["numeratorFactors"] = json::array();
      for (const auto& f : reference_num_factors) r["numeratorFactors"].push_back(bivar_to_json(f));
    }
    if (reference_den) r["denominator"] = bivar_to_json(*reference_den);
    j["reference"] = r;
  }
  return j;
}

Region WeedSpec::region() const {
  Region r;
  r.q0 = q0;
  r.open = open;
  r.amin = 1;
  r.aq_exp = n0;
  return r;
}

int WeedSpec::branch_depth() const {
  const auto st = supertransitivity(pair.plus);
  if (!st.branches) throw std::invalid_argument("weed has no branch point");
  return st.branch_depth;
}

SymbolicDims symbolic_dimensions(const WeedSpec& w) {
  const BigraphPair& p = w.pair;
  const int n = w.branch_depth();
  const int D = p.plus.max_depth();
  if (p.minus.max_depth() != D) throw std::invalid_argument("weed graphs must have the same depth");
  if (supertransitivity(p.minus).branch_depth != n) throw std::invalid_argument("weed graphs branch differently");

  // Odd depths are shared positionally; even depths are merged by duality.
  std::map<std::tuple<int, int, int>, int> ids;
  auto key = [&](int g, int d, int i) {
    if (d % 2 == 1) return std::make_tuple(0, d, i);
    const auto& duals = g == 0 ? p.plus_duals : p.minus_duals;
    const int j = duals[static_cast<size_t>(d / 2)][static_cast<size_t>(i)];
    return std::make_tuple(g, d, std::min(i, j));
  };
  auto id = [&](int g, int d, int i) {
    auto k = key(g, d, i);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    const int v = static_cast<int>(ids.size());
    ids[k] = v;
    return v;
  };

  const RatFunc two = quantum_two(), qn = quantum_integer_shifted(0), qn1 = quantum_integer_shifted(1);
  std::vector<Row> rows;
  for (int g = 0; g < 2; ++g) {
    const Bigraph& G = g == 0 ? p.plus : p.minus;
    const auto& mask = g == 0 ? w.plus_extendable : w.minus_extendable;
    for (int d = n; d <= D; ++d)
      for (int i = 0; i < G.count(d); ++i) id(g, d, i);
    Row chain;
    chain.rhs = qn1;
    for (int i = 0; i < G.count(n); ++i) {
      RatFunc& c = chain.coeffs[id(g, n, i)];
      c = c + G.mult(n, i, 0);
    }
    rows.push_back(chain);
    for (int d = n; d <= D; ++d)
      for (int i = 0; i < G.count(d); ++i) {
        if (d == D && extendable(mask, i)) continue;
        Row r;
        auto add = [&](int v, const RatFunc& c) {
          RatFunc& slot = r.coeffs[v];
          slot = slot + c;
        };
        add(id(g, d, i), two);
        if (d == n) r.rhs = qn * G.mult(n, i, 0);
        else
          for (int j = 0; j < G.count(d - 1); ++j)
            if (G.mult(d, i, j)) add(id(g, d - 1, j), RatFunc(-G.mult(d, i, j)));
        if (d < D)
          for (int k = 0; k < G.count(d + 1); ++k)
            if (G.mult(d + 1, k, i)) add(id(g, d + 1, k), RatFunc(-G.mult(d + 1, k, i)));
        for (auto it = r.coeffs.begin(); it != r.coeffs.end();) it = it->second.is_zero() ? r.coeffs.erase(it) : std::next(it);
        rows.push_back(r);
      }
  }
  SymbolicDims out;
  out.unknowns = static_cast<int>(ids.size());
  out.equations = static_cast<int>(rows.size());
  const auto x = solve_exact(rows, out.unknowns);
  for (int g = 0; g < 2; ++g) {
    const Bigraph& G = g == 0 ? p.plus : p.minus;
    auto& dst = g == 0 ? out.plus : out.minus;
    for (int d = n; d <= D; ++d) {
      dst.emplace_back();
      for (int i = 0; i < G.count(d); ++i) dst.back().push_back(x[static_cast<size_t>(id(g, d, i))]);
    }
  }
  return out;
}

BranchFactors symbolic_branch_factor(const WeedSpec& w, const SymbolicDims& d) {
  const BigraphPair& p = w.pair;
  const int n = w.branch_depth();
  const int k = p.plus.count(n);
  BranchFactors b;
  if (w.equation == WeedEquation::Quadruple) {
    if (k != 3 || n % 2 != 0) throw std::invalid_argument("quadruple weeds need three vertices at an even depth");
    b.p = w.p_vertex >= 0 ? w.p_vertex : self_dual_vertex(p.plus_duals, n);
    b.pc = self_dual_vertex(p.minus_duals, n);
    const int q = b.p == 0 ? 1 : 0, qc = b.pc == 0 ? 1 : 0;
    b.r = RatFunc(2) * d.plus[0][static_cast<size_t>(q)] / d.plus[0][static_cast<size_t>(b.p)];
    b.r_check = RatFunc(2) * d.minus[0][static_cast<size_t>(qc)] / d.minus[0][static_cast<size_t>(b.pc)];
  } else {
    if (k != 2) throw std::invalid_argument("*11 weeds need a triple point");
    if (w.p_vertex >= 0) {
      b.p = w.p_vertex;
    } else {
      int found = -1;
      for (int i = 0; i < 2; ++i)
        if (p.plus.valence(n, i) == 2) found = i;
      if (found < 0) throw std::invalid_argument("no 2-valent branch vertex");
      b.p = found;
    }
    if (n % 2 == 1) {
      b.pc = b.p;
    } else {
      const auto c = kids(p.plus, n, b.p);
      if (c.size() != 1) throw std::invalid_argument("P must have a single child");
      const auto e = down_nbrs(p.minus, n, c[0]);
      if (e.size() != 1) throw std::invalid_argument("P'-bar must have a single depth-n neighbour");
      b.pc = *e.begin();
    }
    b.r = d.plus[0][static_cast<size_t>(1 - b.p)] / d.plus[0][static_cast<size_t>(b.p)];
    b.r_check = d.minus[0][static_cast<size_t>(1 - b.pc)] / d.minus[0][static_cast<size_t>(b.pc)];
  }
  b.equal = b.r.equals(b.r_check);
  return b;
}

ChiralityExpression chirality_expression(const WeedSpec& w, const BranchFactors& b) {
  ChiralityExpression e;
  e.squared = w.equation == WeedEquation::Even11;
  e.bounds = bounds_from(w.equation, b.r, b.r_check, &e.s, &e.s2);
  e.description = e.bounds.front().first;
  return e;
}

namespace {

// Combinatorial hypotheses, checked on the weed itself.
std::string structural_problem(const WeedSpec& w, const BranchFactors& b) {
  const BigraphPair& p = w.pair;
  const int n = w.branch_depth();
  const int D = p.plus.max_depth();
  if (w.equation == WeedEquation::Quadruple) {
    if (!w.even_translations) return "quadruple weeds need even translations";
    const auto& pp = p.plus_duals[static_cast<size_t>(n / 2)];
    const auto& pm = p.minus_duals[static_cast<size_t>(n / 2)];
    const int q = b.p == 0 ? 1 : 0, rr = 3 - b.p - q, qc = b.pc == 0 ? 1 : 0, rc = 3 - b.pc - qc;
    if (pp[static_cast<size_t>(q)] != rr || pm[static_cast<size_t>(qc)] != rc) return "Q and R must be dual";
    if (!b.equal) return "r != r-check";
    if (D == n) {
      // Extensions of P can only meet extendable vertices of the minus graph.
      if (extendable(w.plus_extendable, b.p))
        for (int i = 0; i < 3; ++i)
          if (i != b.pc && extendable(w.minus_extendable, i)) return "R-bar may meet a vertex other than P-check";
    } else {
      for (int R : kids(p.plus, n, b.p))
        if (down_nbrs(p.minus, n, R) != std::set<int>{b.pc}) return "some R-bar meets another depth-n vertex";
    }
    return "";
  }
  if ((n % 2 == 1) != (w.equation == WeedEquation::Odd11)) return "equation does not match the parity of n";
  if (!w.even_translations) return "*11 weeds need parity-preserving translations";
  if (D <= n) return "weed must reach depth n+1";
  const auto ap = annular_multiplicities(p.plus, n + 1), am = annular_multiplicities(p.minus, n + 1);
  if (format_annular(ap, n) != "*11" || format_annular(am, n) != "*11") return "annular multiplicities are not *11";
  for (int i = 0; i < 2; ++i)
    if (p.plus.valence(n, i) == 1 || p.minus.valence(n, i) == 1) return "singly valent vertex at depth n";
  const auto c = kids(p.plus, n, b.p);
  if (c.size() != 1 || p.plus.mult(n + 1, c[0], b.p) != 1) return "P must have exactly one simple edge down";
  if (n % 2 == 1) {
    const int Rb = p.plus_duals[static_cast<size_t>((n + 1) / 2)][static_cast<size_t>(c[0])];
    if (down_nbrs(p.plus, n, Rb) != std::set<int>{1 - b.p}) return "E(P'-bar) is not Q";
    if (!b.equal) return "r != r-check";
  }
  return "";
}

json sign_proof_json(const std::string& name, const RatFunc& f, const NegativeProof& pr) {
  return {{"bound", name},
          {"expression", ratfunc_json(f)},
          {"numeratorSign", pr.num_sign},
          {"denominatorSign", pr.den_sign},
          {"numeratorCertificate", pr.num_cert.to_json()},
          {"denominatorCertificate", pr.den_cert.to_json()}};
}

}  // namespace

EliminationCertificate eliminate_weed(const WeedSpec& w) {
  EliminationCertificate out;
  json& j = out.data;
  j["kind"] = "weed-elimination";
  j["spec"] = w.to_json();
  j["region"] = region_to_json(w.region());

  SymbolicDims dims;
  try {
    dims = symbolic_dimensions(w);
  } catch (const std::domain_error& e) {
    // No positive dimension vector at all: nothing in the family exists.
    out.verdict = WeedVerdict::Eliminated;
    out.conclusion = std::string("trivially eliminated: ") + e.what();
    j["verdict"] = to_string(out.verdict);
    j["conclusion"] = out.conclusion;
    j["trivial"] = true;
    return out;
  }
  j["unknowns"] = dims.unknowns;
  j["equations"] = dims.equations;
  const BranchFactors b = symbolic_branch_factor(w, dims);
  j["P"] = b.p + 1;
  j["Pcheck"] = b.pc + 1;
  j["r"] = ratfunc_json(b.r);
  j["rcheck"] = ratfunc_json(b.r_check);
  j["rEqualsRcheck"] = b.equal;

  json ref = json::object();
  if (w.reference_r) ref["rMatches"] = b.r.equals(*w.reference_r);
  if (w.reference_a_shift != 0) ref["aShift"] = w.reference_a_shift;

  const std::string problem = structural_problem(w, b);
  if (!problem.empty()) {
    out.verdict = WeedVerdict::Inconclusive;
    out.conclusion = "hypotheses fail: " + problem;
    j["verdict"] = to_string(out.verdict);
    j["conclusion"] = out.conclusion;
    if (!ref.empty()) j["referenceComparison"] = ref;
    return out;
  }

  const ChiralityExpression ce = chirality_expression(w, b);
  j["equation"] = to_string(w.equation);
  j["expression"] = {{"description", ce.description}, {"value", ratfunc_json(ce.bounds.front().second)}};
  if (!ce.squared) j["s"] = ratfunc_json(ce.s);
  else j["s2"] = ratfunc_json(ce.s2);

  const RatFunc& F = ce.bounds.front().second;
  if (!w.reference_num_factors.empty()) {
    BivarPoly prod(1);
    for (const auto& f : w.reference_num_factors) prod *= f;
    ref["numeratorMatches"] = equal_up_to_monomial(F.num(), prod);
  }
  if (w.reference_den) ref["denominatorMatches"] = equal_up_to_monomial(F.den(), *w.reference_den);
  if (!ref.empty()) j["referenceComparison"] = ref;

  const Region region = w.region();
  for (const auto& [name, f] : ce.bounds) {
    if (auto pr = prove_negative(f, region, w.reference_num_factors)) {
      out.verdict = WeedVerdict::Eliminated;
      out.conclusion = name + " < 0 on the region, but it must be >= 0";
      j["proof"] = sign_proof_json(name, f, *pr);
      if (w.equation == WeedEquation::Quadruple && region.q0 == 1) {
        j["boundary"] = z4_boundary();
        out.conclusion += "; at [2] = 2 only the Z/4 group subfactor remains";
      }
      j["verdict"] = to_string(out.verdict);
      j["conclusion"] = out.conclusion;
      return out;
    }
  }

  // s = +-2 identically means omega = 1 for every member.
  bool identically_unit = false;
  for (const auto& [name, f] : ce.bounds) identically_unit = identically_unit || f.is_zero();
  if (identically_unit) {
    out.verdict = WeedVerdict::Survives;
    out.conclusion = "s = +-2 identically, omega = 1 is consistent at every depth";
    j["identity"] = true;
  } else if (!region.open) {
    // Retry without the boundary point q = q0.
    Region open = region;
    open.open = true;
    for (const auto& [name, f] : ce.bounds) {
      if (auto pr = prove_negative(f, open, w.reference_num_factors)) {
        out.verdict = WeedVerdict::Survives;
        out.conclusion = name + " < 0 for q > q0; only the boundary q = q0 survives";
        j["proof"] = sign_proof_json(name, f, *pr);
        j["boundary"] = {{"q", rat_to_string(region.q0)}};
        if (w.equation == WeedEquation::Quadruple && region.q0 == 1) {
          j["boundary"] = z4_boundary();
          out.conclusion += " ([2] = 2: the Z/4 group subfactor)";
        }
        break;
      }
    }
    if (out.verdict != WeedVerdict::Survives) out.conclusion = "could not certify a sign";
  } else {
    out.conclusion = "could not certify a sign";
  }
  j["verdict"] = to_string(out.verdict);
  j["conclusion"] = out.conclusion;
  return out;
}

namespace {

bool region_contains(const Region& claim, const Region& target, bool univariate) {
  if (claim.q0 > target.q0) return false;
  if (claim.q0 == target.q0 && claim.open && !target.open) return false;
  if (univariate) return true;
  return claim.amin == target.amin && claim.aq_exp == target.aq_exp;
}

bool is_univariate(const BivarPoly& p) { return p.is_zero() || (p.min_a() == 0 && p.max_a() == 0); }

}  // namespace

CheckResult check_elimination(const json& cert) {
  try {
    if (cert.value("kind", "") != "weed-elimination") return {false, "not a weed elimination certificate"};
    const std::string verdict = cert.at("verdict").get<std::string>();
    if (cert.value("trivial", false)) return {true, "trivial elimination (no dimension vector); nothing to replay"};
    if (cert.value("identity", false)) {
      const RatFunc r = ratfunc_from(cert.at("r")), rc = ratfunc_from(cert.at("rcheck"));
      const auto eq = equation_from(cert.at("equation").get<std::string>());
      bool zero = false;
      for (const auto& [n, f] : bounds_from(eq, r, rc, nullptr, nullptr)) zero = zero || f.is_zero();
      return zero ? CheckResult{true, "identity verified"} : CheckResult{false, "s is not identically +-2"};
    }
    if (!cert.contains("proof")) {
      return verdict == "inconclusive" ? CheckResult{true, "inconclusive; nothing to replay"}
                                       : CheckResult{false, "missing proof"};
    }
    const json& pr = cert.at("proof");
    const RatFunc r = ratfunc_from(cert.at("r")), rc = ratfunc_from(cert.at("rcheck"));
    const auto eq = equation_from(cert.at("equation").get<std::string>());
    const std::string bound = pr.at("bound").get<std::string>();
    const BivarPoly N = bivar_from_json(pr.at("expression").at("num"));
    const BivarPoly D = bivar_from_json(pr.at("expression").at("den"));

    // The bound must follow from the recorded branch factors.
    bool found = false;
    for (const auto& [name, f] : bounds_from(eq, r, rc, nullptr, nullptr))
      if (name == bound) found = f.equals(RatFunc(N, D));
    if (!found) return {false, "bound does not follow from the recorded branch factors"};
    if (eq != WeedEquation::Even11 && !r.equals(rc))
      return {false, "recorded r and r-check differ"};

    const int ns = pr.at("numeratorSign").get<int>(), ds = pr.at("denominatorSign").get<int>();
    if (ns * ds != -1) return {false, "numerator and denominator signs do not make the bound negative"};
    const auto nc = PositivityCertificate::from_json(pr.at("numeratorCertificate"));
    const auto dc = PositivityCertificate::from_json(pr.at("denominatorCertificate"));
    if (!(nc.claim.poly == N * Rat(ns))) return {false, "numerator certificate proves a different polynomial"};
    if (!(dc.claim.poly == D * Rat(ds))) return {false, "denominator certificate proves a different polynomial"};

    Region target = region_from_json(cert.at("region"));
    if (cert.contains("boundary")) target.open = true;
    if (!region_contains(nc.claim.region, target, is_univariate(nc.claim.poly)) ||
        !region_contains(dc.claim.region, target, is_univariate(dc.claim.poly)))
      return {false, "certificate region does not cover the claimed region"};
    if (auto c = check_certificate(nc); !c.ok) return {false, "numerator: " + c.message};
    if (auto c = check_certificate(dc); !c.ok) return {false, "denominator: " + c.message};
    return {true, bound + " < 0 re-validated"};
  } catch (const std::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace chiral
