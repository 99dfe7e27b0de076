#include "chiral/obstructions.hpp"

#include <functional>
#include <set>

namespace chiral {

namespace {

using nlohmann::json;
constexpr int kDigits = 20;

std::string fr(const Real& x) { return format_real(x, kDigits); }

ObstructionEntry not_applicable(const std::string& name, const std::string& why) {
  ObstructionEntry e;
  e.name = name;
  e.reason = why;
  return e;
}

int rank(Verdict v) {
  switch (v) {
    case Verdict::Eliminated: return 0;
    case Verdict::Inconclusive: return 1;
    case Verdict::Survives: return 2;
    default: return 3;
  }
}

// Depth-n neighbours (indices) of vertex v at depth n+1.
std::set<int> down_neighbours(const Bigraph& g, int n, int v) {
  std::set<int> out;
  for (int j = 0; j < g.count(n); ++j)
    if (g.mult(n + 1, v, j) > 0) out.insert(j);
  return out;
}

std::vector<int> children(const Bigraph& g, int n, int p) {
  std::vector<int> out;
  if (g.max_depth() <= n) return out;
  for (int R = 0; R < g.count(n + 1); ++R)
    if (g.mult(n + 1, R, p) > 0) out.push_back(R);
  return out;
}

// Runs `one` on the pair and on its dual and keeps the strongest verdict.
ObstructionEntry both_orientations(const std::string& name, const BigraphPair& pair,
                                   const std::function<ObstructionEntry(const BigraphPair&, bool)>& one) {
  auto guarded = [&](const BigraphPair& p, bool d) {
    try {
      return one(p, d);
    } catch (const std::exception& ex) {
      return not_applicable(name, ex.what());
    }
  };
  ObstructionEntry a = guarded(pair, false);
  ObstructionEntry b = guarded(dual_pair(pair), true);
  a.name = b.name = name;
  a.evidence["orientation"] = "pair";
  b.evidence["orientation"] = "dual";
  ObstructionEntry best = rank(b.verdict) < rank(a.verdict) ? b : a;
  if (!a.applicable && !b.applicable) best.reason = a.reason + "; dual: " + b.reason;
  return best;
}

std::vector<int> p_choices(int count, const std::optional<int>& forced, bool dual) {
  if (forced && !dual) return {*forced};
  std::vector<int> v(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

ObstructionEntry singly_valent_one(const BigraphPair& pair, bool dual, const ObstructionOptions& opt) {
  const std::string name = "singly_valent";
  const auto st = supertransitivity(pair.plus);
  if (!st.branches || st.branch_count != 2) return not_applicable(name, "no initial triple point");
  const int n = st.branch_depth;
  const QParam q = q_from_norm(graph_norm(pair.plus), opt.tol);
  const Real two = q.qint(2);
  if (two <= 2 + opt.tol) return not_applicable(name, "[2] <= 2");
  if (pair.plus.max_depth() <= n) return not_applicable(name, "graph stops at the branch depth");
  std::optional<int> P;
  for (int i : p_choices(2, opt.designate_p, dual))
    if (pair.plus.valence(n, i) == 1) P = i;
  if (!P) return not_applicable(name, "no singly valent vertex at depth n");

  if (n % 2 == 1) {
    ObstructionEntry e;
    e.name = name;
    e.applicable = true;
    e.evidence["n"] = n;
    e.evidence["P"] = *P + 1;
    e.evidence["[2]"] = fr(two);
    e.verdict = Verdict::Eliminated;
    e.reason = "singly valent P with [2] > 2 forces n even";
    return e;
  }
  const BranchData b = branch_data(pair, Designation{P, std::nullopt}, opt.tol);
  const CoeffResult c = coeff_in_capped(pair, b, Target::A, b.p);
  ObstructionEntry e = singly_valent_from_branch(b, c, opt);
  e.evidence["P"] = *P + 1;
  return e;
}

// Hypotheses of the initial triple point theorem for one designation.
bool ocneanu_hypotheses(const BigraphPair& pair, const BranchData& b, const Real& tol, std::string& why) {
  const int n = b.n;
  if (b.even() && abs(b.r - b.r_check) > tol) {
    why = "r != r-check";
    return false;
  }
  const auto kids = children(pair.plus, n, b.p);
  for (int R : kids) {
    if (b.even()) {
      if (pair.minus.max_depth() <= n || R >= pair.minus.count(n + 1)) {
        why = "minus graph lacks depth n+1";
        return false;
      }
      const int target = b.assignment == DualAssignment::SwapsWithQ ? b.qc : b.pc;
      if (down_neighbours(pair.minus, n, R) != std::set<int>{target}) {
        why = "some R-bar meets another depth-n vertex";
        return false;
      }
    } else {
      const int Rb = pair.plus_duals[static_cast<size_t>((n + 1) / 2)][static_cast<size_t>(R)];
      if (down_neighbours(pair.plus, n, Rb) != std::set<int>{b.p}) {
        why = "some R-bar meets another depth-n vertex";
        return false;
      }
    }
  }
  return true;
}

ObstructionEntry ocneanu_triple_one(const BigraphPair& pair, bool dual, const ObstructionOptions& opt) {
  const std::string name = "ocneanu_triple";
  const auto st = supertransitivity(pair.plus);
  if (!st.branches || st.branch_count != 2) return not_applicable(name, "no initial triple point");
  const int n = st.branch_depth;
  std::string why = "no designation satisfies the hypotheses";
  for (int p : p_choices(2, opt.designate_p, dual)) {
    const std::vector<int> pcs = n % 2 == 0 ? std::vector<int>{0, 1} : std::vector<int>{p};
    for (int pc : pcs) {
      BranchData b;
      try {
        b = branch_data(pair, Designation{p, pc}, opt.tol);
      } catch (const std::exception& ex) {
        return not_applicable(name, ex.what());
      }
      std::string w;
      if (!ocneanu_hypotheses(pair, b, opt.tol, w)) {
        why = w;
        continue;
      }
      ObstructionEntry e;
      e.name = name;
      e.applicable = true;
      const Real s = b.q.qint(n + 2) - b.q.qint(n);
      e.evidence["n"] = n;
      e.evidence["P"] = p + 1;
      e.evidence["Pcheck"] = pc + 1;
      e.evidence["[2]"] = fr(b.q.qint(2));
      e.evidence["s"] = fr(s);
      try {
        const ChiralityResult cr = chirality(pair, b, opt.tol);
        e.evidence["sFromEquation"] = fr(cr.s);
      } catch (const std::exception& ex) {
        e.evidence["sFromEquation"] = ex.what();
      }
      e.verdict = verdict_from_s(s, n, Parity::None, opt, e.evidence);
      e.reason = e.verdict == Verdict::Survives ? "s = [n+2]-[n] is a consistent chirality"
                                                : "s = [n+2]-[n] is not a consistent chirality";
      return e;
    }
  }
  return not_applicable(name, why);
}

ObstructionEntry ocneanu_quadruple_one(const BigraphPair& pair, bool, const ObstructionOptions& opt) {
  const std::string name = "ocneanu_quadruple";
  const auto st = supertransitivity(pair.plus);
  if (!st.branches || st.branch_count != 3) return not_applicable(name, "no initial quadruple point");
  BranchData b;
  try {
    b = branch_data(pair, {}, opt.tol);
  } catch (const std::exception& ex) {
    return not_applicable(name, ex.what());
  }
  const int n = b.n;
  if (abs(b.r - b.r_check) > opt.tol) return not_applicable(name, "r != r-check");
  for (int R : children(pair.plus, n, b.p)) {
    if (pair.minus.max_depth() <= n || R >= pair.minus.count(n + 1))
      return not_applicable(name, "minus graph lacks depth n+1");
    if (down_neighbours(pair.minus, n, R) != std::set<int>{b.pc})
      return not_applicable(name, "some R-bar meets another depth-n vertex");
  }
  ObstructionEntry e;
  e.name = name;
  e.applicable = true;
  const Real two = b.q.qint(2);
  const Real s = b.q.qint(n + 2) - b.q.qint(n);
  e.evidence["n"] = n;
  e.evidence["[2]"] = fr(two);
  e.evidence["s"] = fr(s);
  e.verdict = verdict_from_s(s, n, Parity::Plus, opt, e.evidence);
  if (e.verdict == Verdict::Survives && abs(two - 2) <= opt.tol) {
    const bool z4 = pair.plus == parse_bigraph("gbg1v1p1p1").graph && pair.minus == pair.plus;
    e.evidence["boundary"] = true;
    e.reason = z4 ? "[2] = 2: the Z/4 group subfactor" : "[2] = 2 boundary";
  } else {
    e.reason = e.verdict == Verdict::Survives ? "consistent chirality" : "s = [n+2]-[n] is not a consistent chirality";
  }
  return e;
}

ObstructionEntry star11_one(const BigraphPair& pair, bool dual, const ObstructionOptions& opt) {
  const std::string name = "star11";
  const auto st = supertransitivity(pair.plus);
  if (!st.branches || st.branch_count != 2) return not_applicable(name, "no initial triple point");
  const int n = st.branch_depth;
  if (pair.plus.max_depth() <= n || pair.minus.max_depth() <= n)
    return not_applicable(name, "graphs stop at the branch depth");
  const auto ap = annular_multiplicities(pair.plus, n + 1);
  const auto am = annular_multiplicities(pair.minus, n + 1);
  const std::string tp = format_annular(ap, n), tm = format_annular(am, n);
  if (tp != "*11" || tm != "*11") return not_applicable(name, "annular multiplicities " + tp + " / " + tm);
  for (int i = 0; i < 2; ++i)
    if (pair.plus.valence(n, i) == 1 || pair.minus.valence(n, i) == 1)
      return not_applicable(name, "singly valent vertex at depth n");

  // P is the vertex with a single simple edge to depth n+1.
  std::optional<int> P;
  for (int i : p_choices(2, opt.designate_p, dual)) {
    const auto k = children(pair.plus, n, i);
    if (k.size() == 1 && pair.plus.mult(n + 1, k[0], i) == 1 && pair.plus.valence(n, i) == 2) P = i;
  }
  if (!P) return not_applicable(name, "branch shape does not match the *11 starts");
  const int Pp = children(pair.plus, n, *P)[0];
  if (down_neighbours(pair.plus, n, Pp) != std::set<int>{*P})
    return not_applicable(name, "P' meets both branch vertices");

  int pc = *P;
  if (n % 2 == 0) {
    if (pair.plus_duals[static_cast<size_t>(n / 2)][static_cast<size_t>(*P)] != *P)
      return not_applicable(name, "P is not self-dual");
    if (Pp >= pair.minus.count(n + 1)) return not_applicable(name, "minus graph lacks P'-bar");
    const auto e = down_neighbours(pair.minus, n, Pp);
    if (e.size() != 1) return not_applicable(name, "P'-bar has several depth-n neighbours");
    pc = *e.begin();
  } else {
    const int Rb = pair.plus_duals[static_cast<size_t>((n + 1) / 2)][static_cast<size_t>(Pp)];
    if (down_neighbours(pair.plus, n, Rb) != std::set<int>{1 - *P})
      return not_applicable(name, "E(P'-bar) is not Q");
  }
  const BranchData b = branch_data(pair, Designation{P, pc}, opt.tol);
  const Real nn = b.q.qint(n), n2 = b.q.qint(n + 2);
  ObstructionEntry e;
  e.name = name;
  e.applicable = true;
  Real s, rhs;
  if (n % 2 == 0) {
    rhs = (b.r * nn - n2) / nn;
    s = nn * sqrt(b.r_check / b.r) * ((b.r_check - 1) * b.r / b.r_check - rhs);
    e.evidence["clause"] = "even";
  } else {
    rhs = (n2 - b.r * nn) / (b.r * nn);
    s = b.r * nn - n2 / b.r;
    e.evidence["clause"] = "odd";
  }
  e.evidence["n"] = n;
  e.evidence["P"] = *P + 1;
  e.evidence["Pcheck"] = pc + 1;
  e.evidence["r"] = fr(b.r);
  e.evidence["rcheck"] = fr(b.r_check);
  e.evidence["rhs"] = fr(rhs);
  e.evidence["s"] = fr(s);
  try {
    e.evidence["sFromEquation"] = fr(chirality(pair, b, opt.tol).s);
  } catch (const std::exception& ex) {
    e.evidence["sFromEquation"] = ex.what();
  }
  e.verdict = verdict_from_s(s, n, Parity::None, opt, e.evidence);
  e.reason = e.verdict == Verdict::Survives ? "consistent chirality" : "inconsistent chirality";
  return e;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Eliminated: return "eliminated";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Survives: return "survives";
    default: return "not-applicable";
  }
}

Verdict verdict_from_s(const Real& s, int n, Parity parity, const ObstructionOptions& opt, json& ev) {
  const Real excess = abs(s) - 2;
  if (excess > opt.tol) {
    ev["violation"] = "|s| > 2";
    ev["margin"] = format_real(excess, 5);
    return excess > 1000 * opt.tol ? Verdict::Eliminated : Verdict::Inconclusive;
  }
  const RootCheck c = root_of_unity_consistency(s, n, parity, opt.unit_tol, opt.tol);
  ev["omega"] = {{"re", format_real(c.omega.re, kDigits)}, {"im", format_real(c.omega.im, kDigits)}};
  ev["matchedRootOrder"] = c.matched_order;
  ev["rootCheck"] = c.reason;
  if (c.admissible) return Verdict::Survives;
  if (c.distance <= opt.unit_tol) return Verdict::Eliminated;  // matched root, wrong parity
  return c.distance > 1000 * opt.unit_tol ? Verdict::Eliminated : Verdict::Inconclusive;
}

ObstructionEntry singly_valent_from_branch(const BranchData& b, const CoeffResult& c, const ObstructionOptions& opt) {
  ObstructionEntry e;
  e.name = "singly_valent";
  e.applicable = true;
  const int n = b.n;
  const Real two = b.q.qint(2);
  e.evidence["n"] = n;
  e.evidence["[2]"] = fr(two);
  if (n % 2 == 1) {
    e.verdict = Verdict::Eliminated;
    e.reason = "singly valent P with [2] > 2 forces n even";
    return e;
  }
  const Real nn = b.q.qint(n), n2 = b.q.qint(n + 2);
  const Real target = n2 / nn;
  const Real gap = abs(b.r - target);
  e.evidence["r"] = fr(b.r);
  e.evidence["[n+2]/[n]"] = fr(target);
  if (gap > opt.tol) {
    e.verdict = gap > 1000 * opt.tol ? Verdict::Eliminated : Verdict::Inconclusive;
    e.reason = "r differs from [n+2]/[n]";
    return e;
  }
  if (b.assignment != DualAssignment::SelfDual) {
    e.verdict = Verdict::Eliminated;
    e.reason = "P dual to Q would force Tr(P) = Tr(Q)";
    return e;
  }
  const ChiralityResult res = solve_triple(b, c, opt.tol);
  const Real w = res.s * res.s - 2;  // omega + omega^-1
  e.evidence["s"] = fr(res.s);
  e.evidence["rcheck"] = fr(b.r_check);
  e.evidence["relationResidual"] =
      format_real(abs(b.r_check + 1 / b.r_check - 2 - (w + 2) / (nn * n2)), 5);
  e.verdict = verdict_from_s(res.s, n, Parity::Plus, opt, e.evidence);
  e.reason = e.verdict == Verdict::Survives ? "omega^{n/2} = 1 holds (2k | n)" : "chirality violates 2k | n";
  return e;
}

ObstructionEntry singly_valent(const BigraphPair& pair, const ObstructionOptions& opt) {
  return both_orientations("singly_valent", pair,
                           [&](const BigraphPair& p, bool d) { return singly_valent_one(p, d, opt); });
}

ObstructionEntry ocneanu_triple(const BigraphPair& pair, const ObstructionOptions& opt) {
  return both_orientations("ocneanu_triple", pair,
                           [&](const BigraphPair& p, bool d) { return ocneanu_triple_one(p, d, opt); });
}

ObstructionEntry ocneanu_quadruple(const BigraphPair& pair, const ObstructionOptions& opt) {
  return both_orientations("ocneanu_quadruple", pair,
                           [&](const BigraphPair& p, bool d) { return ocneanu_quadruple_one(p, d, opt); });
}

ObstructionEntry star11(const BigraphPair& pair, const ObstructionOptions& opt) {
  return both_orientations("star11", pair, [&](const BigraphPair& p, bool d) { return star11_one(p, d, opt); });
}

ObstructionReport run_all(const BigraphPair& pair, const ObstructionOptions& opt) {
  ObstructionReport rep;
  rep.plus = serialize_bigraph(pair.plus, &pair.plus_duals);
  rep.minus = serialize_bigraph(pair.minus, &pair.minus_duals);
  using Fn = ObstructionEntry (*)(const BigraphPair&, const ObstructionOptions&);
  for (Fn f : {Fn(singly_valent), Fn(ocneanu_triple), Fn(ocneanu_quadruple), Fn(star11)}) {
    ObstructionEntry e;
    try {
      e = f(pair, opt);
    } catch (const std::exception& ex) {
      // Numeric failures never eliminate.
      e.verdict = Verdict::Inconclusive;
      e.applicable = true;
      e.reason = ex.what();
    }
    rep.entries.push_back(e);
  }
  int best = rank(Verdict::Survives);
  for (const auto& e : rep.entries)
    if (e.applicable) best = std::min(best, rank(e.verdict));
  rep.overall = best == 0 ? Verdict::Eliminated : best == 1 ? Verdict::Inconclusive : Verdict::Survives;
  return rep;
}

json ObstructionEntry::to_json() const {
  return {{"name", name},
          {"applicable", applicable},
          {"reason", reason},
          {"verdict", to_string(verdict)},
          {"evidence", evidence}};
}

json ObstructionReport::to_json() const {
  json es = json::array();
  for (const auto& e : entries) es.push_back(e.to_json());
  return {{"plus", plus}, {"minus", minus}, {"overall", to_string(overall)}, {"obstructions", es}};
}

std::string ObstructionReport::to_tsv() const {
  std::string out = plus + "\t" + minus + "\t" + to_string(overall);
  for (const auto& e : entries) out += "\t" + e.name + "=" + to_string(e.verdict);
  return out;
}

}  // namespace chiral
