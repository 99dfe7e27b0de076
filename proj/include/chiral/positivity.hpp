#pragma once

// Sign certificates for polynomials on rays q >= q0 and on regions
// {q >= q0, a >= amin * q^m}. Every certificate carries enough witness data
// for check_certificate() to re-validate it without running the prover.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/qlaurent.hpp"

namespace chiral {

struct Region {
  Rat q0 = 1;
  bool open = false;  // q > q0 instead of q >= q0
  Rat amin = 1;       // a >= amin * q^aq_exp
  int aq_exp = 0;
};

/// Claim: poly > 0 on the region. Univariate claims have no a-dependence.
struct PositivityClaim {
  BivarPoly poly;
  Region region;
};

struct PositivityCertificate {
  PositivityClaim claim;
  std::string method;  // shift | sturm | partial-sum | substitute | bivariate-shift | factored
  nlohmann::json witness;
  std::vector<PositivityCertificate> subcertificates;

  nlohmann::json to_json() const;
  static PositivityCertificate from_json(const nlohmann::json& j);
};

struct CheckResult {
  bool ok = true;
  std::string message;
};

/// p(q) > 0 for q >= q0 (or q > q0 when open). Shift expansion first, then
/// Sturm root isolation. Returns nullopt rather than a bogus certificate.
std::optional<PositivityCertificate> positivity_on_ray(const LaurentPoly& p, const Rat& q0,
                                                       bool open = false);

/// P(a, q) > 0 for q >= q0 and a >= amin (amin >= 1) via the top-down
/// partial sums S_t = sum_{j >= t} p_j.
std::optional<PositivityCertificate> partial_sum_positivity(const BivarPoly& P, const Rat& q0,
                                                            const Rat& amin, bool open = false);

/// P(a, q) > 0 for a = amin + t, q = q0 + s with s, t >= 0 (s > 0 when open).
std::optional<PositivityCertificate> bivariate_shift_positivity(const BivarPoly& P,
                                                                const Region& region);

/// Tries every method applicable to the region; substitutes a = b q^e for
/// e = aq_exp .. 0 when the a-range is q-dependent.
std::optional<PositivityCertificate> certify_positive(const BivarPoly& P, const Region& region);

/// P = c * a^i q^j * prod(factors) with c > 0, each factor certified.
std::optional<PositivityCertificate> certify_factored(const BivarPoly& P, const Region& region,
                                                      const std::vector<BivarPoly>& factors);

/// Independent re-validation of a certificate and all of its sub-certificates.
CheckResult check_certificate(const PositivityCertificate& cert);

nlohmann::json bivar_to_json(const BivarPoly& p);
BivarPoly bivar_from_json(const nlohmann::json& j);
nlohmann::json region_to_json(const Region& r);
Region region_from_json(const nlohmann::json& j);

/// Number of distinct real roots of p in (lo, +inf), lo not a root.
int sturm_roots_above(const Poly& p, const Rat& lo);

}  // namespace chiral
