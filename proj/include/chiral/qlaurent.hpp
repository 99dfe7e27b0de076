#pragma once

// Exact polynomial tower in the quantum parameter q and the translation
// shorthand a = q^n: Laurent polynomials in q, bivariate Laurent polynomials
// in (a, q), and rational functions over them.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chiral/real.hpp"

namespace chiral {

/// Dense univariate polynomial over Q, coefficients low to high. Never holds
/// trailing zeros; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly monomial(const Rat& c, int degree);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& lead() const { return c_.back(); }
  Rat coeff(int k) const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Rat eval(const Rat& x) const;
  Real eval(const Real& x) const;
  Poly derivative() const;
  /// Coefficients of p(x0 + s) as a polynomial in s.
  Poly taylor_shift(const Rat& x0) const;
  Poly monic() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);

class LaurentPoly {
 public:
  using Terms = std::map<int, Rat>;

  LaurentPoly() = default;
  LaurentPoly(const Rat& c);  // NOLINT: constants convert implicitly
  LaurentPoly(int c) : LaurentPoly(Rat(c)) {}
  static LaurentPoly monomial(const Rat& c, int exponent);
  /// Builds from (exponent, coefficient) pairs; repeated exponents add up.
  static LaurentPoly from_terms(const std::vector<std::pair<int, Rat>>& terms);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rat coeff(int exponent) const;
  int min_exponent() const;
  int max_exponent() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  Rat eval(const Rat& q) const;
  /// Real evaluation; throws std::domain_error for q <= 0.
  Real eval(const Real& q) const;

  /// Multiplies by q^{-min_exponent} and returns the resulting polynomial.
  Poly cleared(int* shift = nullptr) const;
  std::string to_string() const;

 private:
  void add_term(int e, const Rat& c);
  Terms terms_;
};

/// Quantum integer [k] = (q^k - q^-k)/(q - q^-1); [-k] = -[k].
LaurentPoly quantum_integer(int k);

class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (exponent of a, exponent of q)
  using Terms = std::map<Key, Rat>;

  BivarPoly() = default;
  BivarPoly(const Rat& c);  // NOLINT
  BivarPoly(int c) : BivarPoly(Rat(c)) {}
  BivarPoly(const LaurentPoly& p);  // NOLINT: q-only polynomial
  static BivarPoly monomial(const Rat& c, int a_exp, int q_exp);
  static BivarPoly var_a() { return monomial(1, 1, 0); }
  static BivarPoly var_q() { return monomial(1, 0, 1); }
  /// Sum over j of a^j * parts[j].
  static BivarPoly from_a_parts(const std::vector<LaurentPoly>& parts);

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  int min_a() const;
  int max_a() const;
  int min_q() const;
  int max_q() const;
  /// q-polynomial multiplying a^j.
  LaurentPoly a_part(int j) const;

  BivarPoly operator-() const;
  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(const BivarPoly& o);
  BivarPoly& operator*=(const Rat& c);
  friend BivarPoly operator+(BivarPoly x, const BivarPoly& y) { return x += y; }
  friend BivarPoly operator-(BivarPoly x, const BivarPoly& y) { return x -= y; }
  friend BivarPoly operator*(BivarPoly x, const BivarPoly& y) { return x *= y; }
  friend BivarPoly operator*(BivarPoly x, const Rat& c) { return x *= c; }
  bool operator==(const BivarPoly& o) const { return terms_ == o.terms_; }
  BivarPoly shifted(int da, int dq) const;  // multiply by a^da q^dq

  /// a := q^m.
  LaurentPoly substitute_a_power(int m) const;
  /// a := b * q^e, returned as a polynomial in (b, q).
  BivarPoly substitute_a_scaled(int e) const;
  Rat eval(const Rat& a, const Rat& q) const;
  Real eval(const Real& a, const Real& q) const;
  std::string to_string() const;

 private:
  void add_term(const Key& k, const Rat& c);
  Terms terms_;
};

/// Quotient of bivariate Laurent polynomials, kept reduced: the exact
/// polynomial gcd is divided out, monomial content is cleared, and the
/// denominator's leading coefficient is 1.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(const BivarPoly& num);  // NOLINT
  RatFunc(const Rat& c) : RatFunc(BivarPoly(c)) {}  // NOLINT
  RatFunc(int c) : RatFunc(BivarPoly(c)) {}  // NOLINT
  /// Throws std::domain_error for a zero denominator.
  RatFunc(BivarPoly num, BivarPoly den);

  const BivarPoly& num() const { return num_; }
  const BivarPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& x, const RatFunc& y);
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y);
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y);
  /// Throws std::domain_error when y is zero.
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  /// Equality as rational functions (cross-multiplication).
  bool equals(const RatFunc& o) const;
  bool operator==(const RatFunc& o) const { return equals(o); }

  /// a := q^m; returns num/den as Laurent polynomials in q.
  std::pair<LaurentPoly, LaurentPoly> substitute_a_power(int m) const;
  Real eval(const Real& a, const Real& q) const;
  std::string to_string() const;

 private:
  void normalize();
  BivarPoly num_;
  BivarPoly den_;
};

/// Parses a polynomial in a and q written with + - * ^ and parentheses,
/// e.g. "(q^2+1)*(a^2*q^8 - 1)". Throws std::invalid_argument.
BivarPoly parse_bivar(const std::string& s);

/// [n + j] as a rational function of (a, q) with a = q^n.
RatFunc quantum_integer_shifted(int j);
/// [2] = q + q^-1 as a rational function.
RatFunc quantum_two();

/// Exact gcd of two bivariate polynomials with nonnegative exponents,
/// normalized to leading coefficient 1 (in lex order a, then q).
BivarPoly poly_gcd(const BivarPoly& x, const BivarPoly& y);
/// Exact division; throws std::domain_error when y does not divide x.
BivarPoly poly_exact_div(const BivarPoly& x, const BivarPoly& y);

}  // namespace chiral
