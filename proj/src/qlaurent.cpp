#include "chiral/qlaurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace chiral {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly({c}); }

Poly Poly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<size_t>(degree) + 1, Rat(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rat Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(k)];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  for (auto& x : c_) x *= c;
  trim();
  return *this;
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real Poly::eval(const Real& x) const {
  Real acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_real(*it);
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(r));
}

Poly Poly::taylor_shift(const Rat& x0) const {
  // Horner in the shifted variable: p(x0 + s) = (...(c_d)(x0 + s) + c_{d-1})...
  Poly acc;
  const Poly lin({x0, Rat(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= lin;
    acc += Poly::constant(*it);
  }
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Rat inv = 1 / lead();
  return *this * inv;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rat t = r.lead() / b.lead();
    Poly m = Poly::monomial(t, r.degree() - b.degree());
    q += m;
    r -= m * b;
  }
  return {q, r};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const Rat& c) {
  if (sgn(c) != 0) terms_[0] = c;
}

LaurentPoly LaurentPoly::monomial(const Rat& c, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::pair<int, Rat>>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(int e, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rat LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rat(0) : it->second;
}

int LaurentPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
  *this = std::move(r);
  return *this;
}

Rat LaurentPoly::eval(const Rat& q) const {
  if (sgn(q) == 0 && !terms_.empty() && min_exponent() < 0)
    throw std::domain_error("Laurent polynomial evaluated at q = 0");
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat p = 1;
    Rat base = e >= 0 ? q : 1 / q;
    for (int i = 0; i < std::abs(e); ++i) p *= base;
    acc += c * p;
  }
  return acc;
}

Real LaurentPoly::eval(const Real& q) const {
  if (q <= 0) throw std::domain_error("Laurent polynomial evaluated at nonpositive q");
  Real acc = 0;
  for (const auto& [e, c] : terms_) acc += to_real(c) * boost::multiprecision::pow(q, e);
  return acc;
}

Poly LaurentPoly::cleared(int* shift) const {
  int lo = min_exponent();
  if (shift) *shift = -lo;
  if (terms_.empty()) return {};
  std::vector<Rat> v(static_cast<size_t>(max_exponent() - lo) + 1, Rat(0));
  for (const auto& [e, c] : terms_) v[static_cast<size_t>(e - lo)] = c;
  return Poly(std::move(v));
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rat m = abs(c);
    if (e == 0) os << m.get_str();
    else {
      if (m != 1) os << m.get_str() << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

LaurentPoly quantum_integer(int k) {
  if (k < 0) return -quantum_integer(-k);
  LaurentPoly p;
  for (int e = k - 1; e >= 1 - k; e -= 2) p += LaurentPoly::monomial(1, e);
  return p;
}

// ---------------------------------------------------------------- BivarPoly

BivarPoly::BivarPoly(const Rat& c) {
  if (sgn(c) != 0) terms_[{0, 0}] = c;
}

BivarPoly::BivarPoly(const LaurentPoly& p) {
  for (const auto& [e, c] : p.terms()) terms_[{0, e}] = c;
}

BivarPoly BivarPoly::monomial(const Rat& c, int a_exp, int q_exp) {
  BivarPoly p;
  p.add_term({a_exp, q_exp}, c);
  return p;
}

BivarPoly BivarPoly::from_a_parts(const std::vector<LaurentPoly>& parts) {
  BivarPoly p;
  for (size_t j = 0; j < parts.size(); ++j)
    for (const auto& [e, c] : parts[j].terms()) p.add_term({static_cast<int>(j), e}, c);
  return p;
}

void BivarPoly::add_term(const Key& k, const Rat& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int BivarPoly::min_a() const { return terms_.empty() ? 0 : terms_.begin()->first.first; }
int BivarPoly::max_a() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }

int BivarPoly::min_q() const {
  int m = 0;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (first || k.second < m) m = k.second;
    first = false;
  }
  return m;
}

int BivarPoly::max_q() const {
  int m = 0;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (first || k.second > m) m = k.second;
    first = false;
  }
  return m;
}

LaurentPoly BivarPoly::a_part(int j) const {
  std::vector<std::pair<int, Rat>> t;
  for (auto it = terms_.lower_bound({j, std::numeric_limits<int>::min()});
       it != terms_.end() && it->first.first == j; ++it)
    t.emplace_back(it->first.second, it->second);
  return LaurentPoly::from_terms(t);
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& o) {
  BivarPoly r;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) r.add_term({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
  *this = std::move(r);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x *= c;
  return *this;
}

BivarPoly BivarPoly::shifted(int da, int dq) const {
  BivarPoly r;
  for (const auto& [k, c] : terms_) r.terms_[{k.first + da, k.second + dq}] = c;
  return r;
}

LaurentPoly BivarPoly::substitute_a_power(int m) const {
  LaurentPoly r;
  for (const auto& [k, c] : terms_) r += LaurentPoly::monomial(c, k.first * m + k.second);
  return r;
}

BivarPoly BivarPoly::substitute_a_scaled(int e) const {
  BivarPoly r;
  for (const auto& [k, c] : terms_) r.add_term({k.first, k.second + e * k.first}, c);
  return r;
}

Rat BivarPoly::eval(const Rat& a, const Rat& q) const {
  Rat acc = 0;
  for (int j = min_a(); j <= max_a() && !terms_.empty(); ++j) {
    Rat aj = 1;
    Rat base = j >= 0 ? a : 1 / a;
    for (int i = 0; i < std::abs(j); ++i) aj *= base;
    acc += aj * a_part(j).eval(q);
  }
  return acc;
}

Real BivarPoly::eval(const Real& a, const Real& q) const {
  Real acc = 0;
  for (const auto& [k, c] : terms_)
    acc += to_real(c) * boost::multiprecision::pow(a, k.first) * boost::multiprecision::pow(q, k.second);
  return acc;
}

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Rat m = abs(c);
    bool unit = (m == 1) && (k.first != 0 || k.second != 0);
    if (!unit) os << m.get_str();
    if (k.first != 0) {
      os << (unit ? "" : "*") << "a";
      if (k.first != 1) os << "^" << k.first;
      unit = false;
    }
    if (k.second != 0) {
      os << (unit ? "" : "*") << "q";
      if (k.second != 1) os << "^" << k.second;
    }
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------------ bivariate gcd

namespace {

// Polynomial in a with Poly(q) coefficients; index = a-degree.
using APoly = std::vector<Poly>;

void trim(APoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

APoly to_apoly(const BivarPoly& x) {
  APoly r;
  if (x.is_zero()) return r;
  if (x.min_a() < 0 || x.min_q() < 0) throw std::logic_error("to_apoly needs nonnegative exponents");
  r.resize(static_cast<size_t>(x.max_a()) + 1);
  for (int j = 0; j <= x.max_a(); ++j) {
    auto part = x.a_part(j);
    if (part.is_zero()) continue;
    r[static_cast<size_t>(j)] = Poly::monomial(1, part.min_exponent()) * part.cleared();
  }
  trim(r);
  return r;
}

BivarPoly from_apoly(const APoly& p) {
  BivarPoly r;
  for (size_t j = 0; j < p.size(); ++j) {
    const auto& c = p[j].coeffs();
    for (size_t e = 0; e < c.size(); ++e)
      if (sgn(c[e]) != 0) r += BivarPoly::monomial(c[e], static_cast<int>(j), static_cast<int>(e));
  }
  return r;
}

Poly content(const APoly& p) {
  Poly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

APoly div_by_poly(const APoly& p, const Poly& d) {
  APoly r;
  r.reserve(p.size());
  for (const auto& c : p) {
    auto [qt, rem] = divmod(c, d);
    if (!rem.is_zero()) throw std::domain_error("inexact content division");
    r.push_back(std::move(qt));
  }
  return r;
}

APoly primitive_part(const APoly& p) {
  if (p.empty()) return p;
  return div_by_poly(p, content(p));
}

APoly pseudo_rem(APoly a, const APoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Poly& lb = b.back();
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= db) {
    const int da = static_cast<int>(a.size()) - 1;
    Poly la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<size_t>(i + da - db)] -= la * b[static_cast<size_t>(i)];
    trim(a);
  }
  return a;
}

}  // namespace

BivarPoly poly_gcd(const BivarPoly& x, const BivarPoly& y) {
  APoly a = to_apoly(x), b = to_apoly(y);
  if (a.empty() && b.empty()) return BivarPoly();
  if (a.empty()) a = b;
  if (b.empty()) b = a;
  Poly cg = gcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    APoly r = pseudo_rem(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  a = primitive_part(a);
  for (auto& c : a) c *= cg;
  // Normalize: leading coefficient (top a-degree, top q-degree) equals 1.
  Rat inv = 1 / a.back().lead();
  for (auto& c : a) c *= inv;
  return from_apoly(a);
}

BivarPoly poly_exact_div(const BivarPoly& x, const BivarPoly& y) {
  APoly a = to_apoly(x), b = to_apoly(y);
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  APoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && a.size() >= b.size()) {
    size_t shift = a.size() - b.size();
    auto [t, rem] = divmod(a.back(), b.back());
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    quot[shift] = t;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= t * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::domain_error("inexact polynomial division");
  trim(quot);
  return from_apoly(quot);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const BivarPoly& num) : num_(num), den_(1) { normalize(); }

RatFunc::RatFunc(BivarPoly num, BivarPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = BivarPoly(1);
    return;
  }
  const int na = num_.min_a(), nq = num_.min_q();
  const int da = den_.min_a(), dq = den_.min_q();
  BivarPoly n = num_.shifted(-na, -nq);
  BivarPoly d = den_.shifted(-da, -dq);
  BivarPoly g = poly_gcd(n, d);
  if (!(g == BivarPoly(1))) {
    n = poly_exact_div(n, g);
    d = poly_exact_div(d, g);
  }
  // Re-clear monomial content exposed by the division.
  const int na2 = n.min_a(), nq2 = n.min_q(), da2 = d.min_a(), dq2 = d.min_q();
  n = n.shifted(-na2, -nq2);
  d = d.shifted(-da2, -dq2);
  Rat lead = d.terms().rbegin()->second;
  Rat inv = 1 / lead;
  num_ = n.shifted(na + na2 - da - da2, nq + nq2 - dq - dq2) * inv;
  den_ = d * inv;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& x, const RatFunc& y) {
  if (x.den_ == y.den_) return RatFunc(x.num_ + y.num_, x.den_);
  return RatFunc(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }

RatFunc operator*(const RatFunc& x, const RatFunc& y) {
  return RatFunc(x.num_ * y.num_, x.den_ * y.den_);
}

RatFunc operator/(const RatFunc& x, const RatFunc& y) {
  if (y.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(x.num_ * y.den_, x.den_ * y.num_);
}

bool RatFunc::equals(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

std::pair<LaurentPoly, LaurentPoly> RatFunc::substitute_a_power(int m) const {
  return {num_.substitute_a_power(m), den_.substitute_a_power(m)};
}

Real RatFunc::eval(const Real& a, const Real& q) const {
  Real d = den_.eval(a, q);
  if (d == 0) throw std::domain_error("rational function pole");
  return num_.eval(a, q) / d;
}

std::string RatFunc::to_string() const {
  if (den_ == BivarPoly(1)) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RatFunc quantum_integer_shifted(int j) {
  // (a q^j - a^-1 q^-j) / (q - q^-1), multiplied through by a*q.
  BivarPoly num = BivarPoly::monomial(1, 2, j + 1) - BivarPoly::monomial(1, 0, 1 - j);
  BivarPoly den = BivarPoly::monomial(1, 1, 2) - BivarPoly::monomial(1, 1, 0);
  return RatFunc(num, den);
}

RatFunc quantum_two() { return RatFunc(BivarPoly(quantum_integer(2))); }

namespace {

struct BivarParser {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + s + "': " + what + " at offset " + std::to_string(i));
  }
  long integer() {
    skip();
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected a number");
    const long v = std::stol(s.substr(i, j - i));
    i = j;
    return v;
  }
  BivarPoly expr() {
    BivarPoly acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }
  BivarPoly term() {
    BivarPoly acc = power();
    while (eat('*')) acc *= power();
    return acc;
  }
  BivarPoly power() {
    BivarPoly base = atom();
    if (!eat('^')) return base;
    const bool neg = eat('-');
    const long e = integer();
    if (neg) {
      if (base.terms().size() != 1) fail("negative power of a non-monomial");
      const auto& [k, c] = *base.terms().begin();
      if (c != 1) fail("negative power of a scaled monomial");
      return BivarPoly::monomial(1, -k.first * static_cast<int>(e), -k.second * static_cast<int>(e));
    }
    BivarPoly out(1);
    for (long j = 0; j < e; ++j) out *= base;
    return out;
  }
  BivarPoly atom() {
    skip();
    if (eat('(')) {
      BivarPoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat('a')) return BivarPoly::var_a();
    if (eat('q')) return BivarPoly::var_q();
    if (eat('-')) return -power();
    return BivarPoly(Rat(integer()));
  }
};

}  // namespace

BivarPoly parse_bivar(const std::string& s) {
  BivarParser p{s};
  BivarPoly v = p.expr();
  p.skip();
  if (p.i != s.size()) p.fail("unexpected input");
  return v;
}

}  // namespace chiral
