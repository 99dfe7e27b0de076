#include "chiral/positivity.hpp"

#include <map>
#include <stdexcept>

namespace chiral {

using nlohmann::json;

namespace {

bool is_univariate(const BivarPoly& p) { return p.is_zero() || (p.min_a() == 0 && p.max_a() == 0); }

// p * q^k as a dense polynomial, k chosen to clear negative q-exponents.
Poly cleared_q(const LaurentPoly& p, int* shift) { return p.cleared(shift); }

bool q_range_positive(const Region& r) { return sgn(r.q0) > 0 || (r.open && sgn(r.q0) >= 0); }

json rat_list(const std::vector<Rat>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

Rat rat_from(const json& j) {
  Rat r(j.get<std::string>());
  r.canonicalize();
  return r;
}

std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int sturm_count(const std::vector<Poly>& chain, const Rat& lo) {
  std::vector<int> at_lo, at_inf;
  for (const auto& p : chain) {
    at_lo.push_back(sgn(p.eval(lo)));
    at_inf.push_back(p.is_zero() ? 0 : sgn(p.lead()));
  }
  return variations(at_lo) - variations(at_inf);
}

json poly_json(const Poly& p) { return rat_list(p.coeffs()); }

Poly poly_from(const json& j) {
  std::vector<Rat> v;
  for (const auto& x : j) v.push_back(rat_from(x));
  return Poly(std::move(v));
}

std::vector<Rat> binomial_row(const Rat& x0, int n) {
  // coefficients of (x0 + s)^n in s
  std::vector<Rat> row(static_cast<size_t>(n) + 1);
  BigInt c = 1;
  for (int k = 0; k <= n; ++k) {
    Rat pw = 1;
    for (int i = 0; i < n - k; ++i) pw *= x0;
    row[static_cast<size_t>(k)] = Rat(c) * pw;
    c = c * (n - k) / (k + 1);
  }
  return row;
}

using Grid = std::map<std::pair<int, int>, Rat>;

// P * a^-min_a q^-min_q at a = amin + t, q = q0 + s.
Grid bivariate_shift(const BivarPoly& P, const Rat& amin, const Rat& q0) {
  const int sa = -P.min_a(), sq = -P.min_q();
  Grid g;
  for (const auto& [k, c] : P.terms()) {
    auto ra = binomial_row(amin, k.first + sa);
    auto rq = binomial_row(q0, k.second + sq);
    for (size_t i = 0; i < ra.size(); ++i) {
      if (sgn(ra[i]) == 0) continue;
      for (size_t j = 0; j < rq.size(); ++j) {
        Rat v = c * ra[i] * rq[j];
        if (sgn(v) == 0) continue;
        auto& slot = g[{static_cast<int>(i), static_cast<int>(j)}];
        slot += v;
      }
    }
  }
  for (auto it = g.begin(); it != g.end();) it = sgn(it->second) == 0 ? g.erase(it) : std::next(it);
  return g;
}

bool grid_positive(const Grid& g, bool open) {
  if (g.empty()) return false;
  bool anchor = false;
  for (const auto& [k, c] : g) {
    if (sgn(c) < 0) return false;
    if (open ? k.first == 0 : (k.first == 0 && k.second == 0)) anchor = true;
  }
  return anchor;
}

// Sub-claims only need to cover the parent's q-range; a-range matters only
// when the sub-claim depends on a.
bool covers_q(const Region& sub, const Region& parent) {
  if (sub.q0 > parent.q0) return false;
  if (sub.q0 == parent.q0 && sub.open && !parent.open) return false;
  return true;
}

std::vector<LaurentPoly> a_parts_from(const BivarPoly& P, int* ashift) {
  int lo = P.is_zero() ? 0 : P.min_a();
  if (ashift) *ashift = -lo;
  std::vector<LaurentPoly> parts;
  for (int j = lo; j <= P.max_a() && !P.is_zero(); ++j) parts.push_back(P.a_part(j));
  return parts;
}

PositivityClaim ray_claim(const LaurentPoly& p, const Rat& q0, bool open) {
  Region r;
  r.q0 = q0;
  r.open = open;
  return {BivarPoly(p), r};
}

}  // namespace

// ------------------------------------------------------------------ json

json bivar_to_json(const BivarPoly& p) {
  json out = json::array();
  for (const auto& [k, c] : p.terms()) out.push_back({k.first, k.second, c.get_str()});
  return out;
}

BivarPoly bivar_from_json(const json& j) {
  if (j.is_string()) return parse_bivar(j.get<std::string>());
  BivarPoly p;
  for (const auto& t : j) p += BivarPoly::monomial(rat_from(t.at(2)), t.at(0).get<int>(), t.at(1).get<int>());
  return p;
}

json region_to_json(const Region& r) {
  return {{"q0", r.q0.get_str()}, {"open", r.open}, {"amin", r.amin.get_str()}, {"aqExp", r.aq_exp}};
}

Region region_from_json(const json& j) {
  Region r;
  r.q0 = rat_from(j.at("q0"));
  r.open = j.at("open").get<bool>();
  r.amin = rat_from(j.at("amin"));
  r.aq_exp = j.at("aqExp").get<int>();
  return r;
}

json PositivityCertificate::to_json() const {
  json subs = json::array();
  for (const auto& s : subcertificates) subs.push_back(s.to_json());
  return {{"claim", {{"poly", bivar_to_json(claim.poly)}, {"region", region_to_json(claim.region)}}},
          {"method", method},
          {"witness", witness},
          {"subcertificates", subs}};
}

PositivityCertificate PositivityCertificate::from_json(const json& j) {
  PositivityCertificate c;
  c.claim.poly = bivar_from_json(j.at("claim").at("poly"));
  c.claim.region = region_from_json(j.at("claim").at("region"));
  c.method = j.at("method").get<std::string>();
  c.witness = j.at("witness");
  for (const auto& s : j.at("subcertificates")) c.subcertificates.push_back(from_json(s));
  return c;
}

// ------------------------------------------------------------------ provers

int sturm_roots_above(const Poly& p, const Rat& lo) {
  if (p.is_zero()) throw std::invalid_argument("sturm count of zero polynomial");
  return sturm_count(sturm_chain(p), lo);
}

std::optional<PositivityCertificate> positivity_on_ray(const LaurentPoly& p, const Rat& q0, bool open) {
  PositivityClaim claim = ray_claim(p, q0, open);
  if (p.is_zero() || !q_range_positive(claim.region)) return std::nullopt;
  int k = 0;
  Poly f = cleared_q(p, &k);

  Poly shifted = f.taylor_shift(q0);
  bool nonneg = true;
  for (const auto& c : shifted.coeffs()) nonneg = nonneg && sgn(c) >= 0;
  bool anchored = open ? !shifted.is_zero() : sgn(shifted.coeff(0)) > 0;
  if (nonneg && anchored) {
    PositivityCertificate cert{claim, "shift", {{"qShift", k}, {"shifted", poly_json(shifted)}}, {}};
    return cert;
  }

  if (sgn(f.eval(q0)) > 0) {
    auto chain = sturm_chain(f);
    if (sturm_count(chain, q0) == 0) {
      json jc = json::array();
      for (const auto& c : chain) jc.push_back(poly_json(c));
      PositivityCertificate cert{
          claim, "sturm", {{"qShift", k}, {"chain", jc}, {"valueAtQ0", f.eval(q0).get_str()}}, {}};
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<PositivityCertificate> partial_sum_positivity(const BivarPoly& P, const Rat& q0,
                                                            const Rat& amin, bool open) {
  if (amin < 1 || P.is_zero()) return std::nullopt;
  int ashift = 0;
  auto parts = a_parts_from(P, &ashift);
  Rat scale = 1;
  for (auto& part : parts) {
    part = part * LaurentPoly(scale);
    scale *= amin;
  }
  const int d = static_cast<int>(parts.size()) - 1;
  std::vector<LaurentPoly> S(parts.size());
  LaurentPoly acc;
  for (int t = d; t >= 0; --t) {
    acc += parts[static_cast<size_t>(t)];
    S[static_cast<size_t>(t)] = acc;
  }

  Region region;
  region.q0 = q0;
  region.open = open;
  region.amin = amin;
  PositivityCertificate cert{{P, region}, "partial-sum", {}, {}};

  json ts = json::array();
  std::vector<PositivityCertificate> tails;
  for (int t = 1; t <= d; ++t) {
    if (S[static_cast<size_t>(t)].is_zero()) continue;
    auto c = positivity_on_ray(S[static_cast<size_t>(t)], q0, open);
    if (!c) return std::nullopt;
    ts.push_back(t);
    tails.push_back(std::move(*c));
  }
  std::string base;
  std::optional<PositivityCertificate> bc;
  if (!parts[0].is_zero() && (bc = positivity_on_ray(parts[0], q0, open))) base = "p0";
  else if ((bc = positivity_on_ray(S[0], q0, open))) base = "S0";
  else return std::nullopt;

  cert.witness = {{"aShift", ashift}, {"base", base}, {"tails", ts}};
  cert.subcertificates.push_back(std::move(*bc));
  for (auto& c : tails) cert.subcertificates.push_back(std::move(c));
  return cert;
}

std::optional<PositivityCertificate> bivariate_shift_positivity(const BivarPoly& P,
                                                                const Region& region) {
  if (region.aq_exp != 0 || sgn(region.amin) <= 0 || !q_range_positive(region) || P.is_zero())
    return std::nullopt;
  Grid g = bivariate_shift(P, region.amin, region.q0);
  if (!grid_positive(g, region.open)) return std::nullopt;
  json coeffs = json::array();
  for (const auto& [k, c] : g) coeffs.push_back({k.first, k.second, c.get_str()});
  PositivityCertificate cert{{P, region}, "bivariate-shift", {{"coefficients", coeffs}}, {}};
  return cert;
}

std::optional<PositivityCertificate> certify_positive(const BivarPoly& P, const Region& region) {
  if (P.is_zero()) return std::nullopt;
  if (is_univariate(P)) {
    auto c = positivity_on_ray(P.a_part(0), region.q0, region.open);
    if (c) c->claim.region = region;
    return c;
  }
  if (region.aq_exp > 0) {
    if (sgn(region.q0) < 0 || sgn(region.amin) < 0) return std::nullopt;
    for (int e = region.aq_exp; e >= 0; --e) {
      Region sub = region;
      sub.aq_exp = 0;
      for (int i = 0; i < region.aq_exp - e; ++i) sub.amin *= region.q0;
      auto c = certify_positive(P.substitute_a_scaled(e), sub);
      if (c) {
        PositivityCertificate cert{{P, region}, "substitute", {{"e", e}}, {}};
        cert.subcertificates.push_back(std::move(*c));
        return cert;
      }
    }
    return std::nullopt;
  }
  if (region.amin >= 1) {
    if (auto c = partial_sum_positivity(P, region.q0, region.amin, region.open)) return c;
  }
  return bivariate_shift_positivity(P, region);
}

std::optional<PositivityCertificate> certify_factored(const BivarPoly& P, const Region& region,
                                                      const std::vector<BivarPoly>& factors) {
  if (P.is_zero() || factors.empty()) return std::nullopt;
  BivarPoly prod(1);
  std::vector<BivarPoly> signed_factors;
  std::vector<PositivityCertificate> subs;
  for (const auto& f : factors) {
    auto c = certify_positive(f, region);
    BivarPoly g = f;
    if (!c) {
      g = -f;
      c = certify_positive(g, region);
    }
    if (!c) return std::nullopt;
    signed_factors.push_back(g);
    subs.push_back(std::move(*c));
    prod *= g;
  }
  const auto& [kp, cp] = *P.terms().rbegin();
  const auto& [kg, cg] = *prod.terms().rbegin();
  const int ia = kp.first - kg.first, iq = kp.second - kg.second;
  const Rat c = cp / cg;
  if (sgn(c) <= 0) return std::nullopt;
  if (!(prod.shifted(ia, iq) * c == P)) return std::nullopt;
  json jf = json::array();
  for (const auto& f : signed_factors) jf.push_back(bivar_to_json(f));
  PositivityCertificate cert{
      {P, region}, "factored", {{"constant", c.get_str()}, {"aExp", ia}, {"qExp", iq}, {"factors", jf}}, subs};
  return cert;
}

// ------------------------------------------------------------------ checker

namespace {

CheckResult fail(const std::string& m) { return {false, m}; }

CheckResult check_shift(const PositivityCertificate& c) {
  if (!is_univariate(c.claim.poly)) return fail("shift: claim depends on a");
  if (!q_range_positive(c.claim.region)) return fail("shift: q-range touches nonpositive q");
  int k = 0;
  Poly f = c.claim.poly.a_part(0).cleared(&k);
  if (k != c.witness.at("qShift").get<int>()) return fail("shift: q-shift mismatch");
  Poly w = poly_from(c.witness.at("shifted"));
  for (const auto& x : w.coeffs())
    if (sgn(x) < 0) return fail("shift: negative shifted coefficient");
  if (c.claim.region.open ? w.is_zero() : sgn(w.coeff(0)) <= 0)
    return fail("shift: no positive anchor coefficient");
  if (!(f.taylor_shift(c.claim.region.q0) == w)) return fail("shift: witness does not expand to claim");
  return {};
}

CheckResult check_sturm(const PositivityCertificate& c) {
  if (!is_univariate(c.claim.poly)) return fail("sturm: claim depends on a");
  if (!q_range_positive(c.claim.region)) return fail("sturm: q-range touches nonpositive q");
  int k = 0;
  Poly f = c.claim.poly.a_part(0).cleared(&k);
  if (k != c.witness.at("qShift").get<int>()) return fail("sturm: q-shift mismatch");
  std::vector<Poly> chain;
  for (const auto& p : c.witness.at("chain")) chain.push_back(poly_from(p));
  if (chain.size() < 1 || !(chain[0] == f)) return fail("sturm: chain does not start at claim");
  if (chain.size() >= 2 && !(chain[1] == f.derivative())) return fail("sturm: second entry is not f'");
  for (size_t i = 2; i < chain.size(); ++i)
    if (!(chain[i] == -divmod(chain[i - 2], chain[i - 1]).second)) return fail("sturm: bad remainder");
  if (chain.size() >= 2 && !divmod(chain[chain.size() - 2], chain.back()).second.is_zero())
    return fail("sturm: chain not terminated");
  const Rat& q0 = c.claim.region.q0;
  if (sgn(f.eval(q0)) <= 0) return fail("sturm: value at q0 not positive");
  if (sturm_count(chain, q0) != 0) return fail("sturm: roots above q0");
  return {};
}

CheckResult check_partial_sum(const PositivityCertificate& c) {
  const Region& r = c.claim.region;
  if (r.aq_exp != 0 || r.amin < 1) return fail("partial-sum: region needs a >= amin >= 1");
  int ashift = 0;
  auto parts = a_parts_from(c.claim.poly, &ashift);
  if (ashift != c.witness.at("aShift").get<int>()) return fail("partial-sum: a-shift mismatch");
  Rat scale = 1;
  for (auto& part : parts) {
    part = part * LaurentPoly(scale);
    scale *= r.amin;
  }
  const int d = static_cast<int>(parts.size()) - 1;
  std::vector<LaurentPoly> S(parts.size());
  LaurentPoly acc;
  for (int t = d; t >= 0; --t) {
    acc += parts[static_cast<size_t>(t)];
    S[static_cast<size_t>(t)] = acc;
  }
  const auto& tails = c.witness.at("tails");
  if (c.subcertificates.size() != tails.size() + 1) return fail("partial-sum: sub-certificate count");
  std::vector<bool> covered(static_cast<size_t>(d) + 1, false);
  for (size_t i = 0; i < tails.size(); ++i) {
    int t = tails[i].get<int>();
    if (t < 1 || t > d) return fail("partial-sum: tail index out of range");
    const auto& sub = c.subcertificates[i + 1];
    if (!(sub.claim.poly == BivarPoly(S[static_cast<size_t>(t)]))) return fail("partial-sum: tail claim mismatch");
    if (!covers_q(sub.claim.region, r)) return fail("partial-sum: tail region too small");
    auto cr = check_certificate(sub);
    if (!cr.ok) return cr;
    covered[static_cast<size_t>(t)] = true;
  }
  for (int t = 1; t <= d; ++t)
    if (!covered[static_cast<size_t>(t)] && !S[static_cast<size_t>(t)].is_zero())
      return fail("partial-sum: uncovered tail");
  const std::string base = c.witness.at("base").get<std::string>();
  const LaurentPoly& expect = base == "p0" ? parts[0] : S[0];
  if (base != "p0" && base != "S0") return fail("partial-sum: unknown base");
  const auto& bsub = c.subcertificates[0];
  if (!(bsub.claim.poly == BivarPoly(expect))) return fail("partial-sum: base claim mismatch");
  if (!covers_q(bsub.claim.region, r)) return fail("partial-sum: base region too small");
  return check_certificate(bsub);
}

CheckResult check_substitute(const PositivityCertificate& c) {
  const Region& r = c.claim.region;
  const int e = c.witness.at("e").get<int>();
  if (e < 0 || e > r.aq_exp) return fail("substitute: exponent outside [0, aqExp]");
  if (sgn(r.q0) < 0 || sgn(r.amin) < 0) return fail("substitute: negative bounds");
  if (c.subcertificates.size() != 1) return fail("substitute: expects one sub-certificate");
  const auto& sub = c.subcertificates[0];
  if (!(sub.claim.poly == c.claim.poly.substitute_a_scaled(e))) return fail("substitute: claim mismatch");
  Rat bound = r.amin;
  for (int i = 0; i < r.aq_exp - e; ++i) bound *= r.q0;
  // b = a q^-e >= amin q^(aqExp-e) >= amin q0^(aqExp-e) once q >= q0 >= 1 or aqExp = e.
  if (r.aq_exp != e && r.q0 < 1) return fail("substitute: q0 < 1 breaks the lower bound");
  const Region& sr = sub.claim.region;
  if (sr.aq_exp != 0 || sr.amin > bound) return fail("substitute: sub-region does not cover");
  if (!covers_q(sr, r)) return fail("substitute: sub q-range too small");
  return check_certificate(sub);
}

CheckResult check_bivariate_shift(const PositivityCertificate& c) {
  const Region& r = c.claim.region;
  if (r.aq_exp != 0 || sgn(r.amin) <= 0 || !q_range_positive(r)) return fail("bivariate-shift: bad region");
  Grid w;
  for (const auto& t : c.witness.at("coefficients")) w[{t.at(0).get<int>(), t.at(1).get<int>()}] = rat_from(t.at(2));
  if (!grid_positive(w, r.open)) return fail("bivariate-shift: witness not positive");
  if (w != bivariate_shift(c.claim.poly, r.amin, r.q0)) return fail("bivariate-shift: witness does not expand to claim");
  return {};
}

CheckResult check_factored(const PositivityCertificate& c) {
  const Rat k = rat_from(c.witness.at("constant"));
  if (sgn(k) <= 0) return fail("factored: constant not positive");
  const auto& jf = c.witness.at("factors");
  if (jf.size() != c.subcertificates.size()) return fail("factored: sub-certificate count");
  BivarPoly prod(1);
  for (size_t i = 0; i < jf.size(); ++i) {
    BivarPoly f = bivar_from_json(jf[i]);
    const auto& sub = c.subcertificates[i];
    if (!(sub.claim.poly == f)) return fail("factored: factor claim mismatch");
    const Region& sr = sub.claim.region;
    if (!covers_q(sr, c.claim.region)) return fail("factored: factor q-range too small");
    if (!is_univariate(f) && (sr.amin > c.claim.region.amin || sr.aq_exp != c.claim.region.aq_exp))
      return fail("factored: factor a-range differs");
    auto cr = check_certificate(sub);
    if (!cr.ok) return cr;
    prod *= f;
  }
  if (!(prod.shifted(c.witness.at("aExp").get<int>(), c.witness.at("qExp").get<int>()) * k == c.claim.poly))
    return fail("factored: product does not equal claim");
  return {};
}

}  // namespace

CheckResult check_certificate(const PositivityCertificate& cert) {
  try {
    if (cert.method == "shift") return check_shift(cert);
    if (cert.method == "sturm") return check_sturm(cert);
    if (cert.method == "partial-sum") return check_partial_sum(cert);
    if (cert.method == "substitute") return check_substitute(cert);
    if (cert.method == "bivariate-shift") return check_bivariate_shift(cert);
    if (cert.method == "factored") return check_factored(cert);
    return fail("unknown method " + cert.method);
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace chiral
