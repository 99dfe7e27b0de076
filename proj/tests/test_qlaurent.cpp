#include <doctest.h>

#include "chiral/qlaurent.hpp"

using namespace chiral;

namespace {

// Direct evaluation of (q^k - q^-k)/(q - q^-1) over the rationals.
Rat qint_direct(int k, const Rat& q) {
  Rat qk = 1, qinv = 1 / q;
  for (int i = 0; i < std::abs(k); ++i) qk *= q;
  Rat qmk = 1;
  for (int i = 0; i < std::abs(k); ++i) qmk *= qinv;
  Rat v = (qk - qmk) / (q - qinv);
  return k < 0 ? Rat(-v) : v;
}

}  // namespace

TEST_CASE("small quantum integers") {
  CHECK(quantum_integer(1) == LaurentPoly(1));
  CHECK(quantum_integer(2) == LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1));
  CHECK(quantum_integer(3).eval(Rat(2)) == Rat(21, 4));
  CHECK(quantum_integer(2).eval(Rat(1)) == 2);
  CHECK(quantum_integer(0).is_zero());
  CHECK(quantum_integer(-3) == -quantum_integer(3));
  CHECK((quantum_integer(4) - quantum_integer(2) * quantum_integer(3) + quantum_integer(2)).is_zero());
}

TEST_CASE("recurrence and classical limit up to 50") {
  const LaurentPoly two = quantum_integer(2);
  for (int k = 1; k <= 50; ++k) CHECK(quantum_integer(k + 1) == two * quantum_integer(k) - quantum_integer(k - 1));
  for (int k = 0; k <= 50; ++k) CHECK(quantum_integer(k).eval(Rat(1)) == k);
  for (int k = -6; k <= 6; ++k) CHECK(quantum_integer(k).eval(Rat(5, 3)) == qint_direct(k, Rat(5, 3)));
}

TEST_CASE("real evaluation rejects non-positive q") {
  CHECK_THROWS_AS(quantum_integer(6).eval(Real(-1)), std::domain_error);
  CHECK_THROWS_AS(quantum_integer(6).eval(Real(0)), std::domain_error);
}

TEST_CASE("shifted quantum integers under a = q^m") {
  for (int m = 0; m <= 10; ++m)
    for (int j = -10; j <= 10; ++j) {
      const auto [num, den] = quantum_integer_shifted(j).substitute_a_power(m);
      CHECK(num == quantum_integer(m + j) * den);
    }
  const auto [n3, d3] = quantum_integer_shifted(0).substitute_a_power(3);
  CHECK(n3 == quantum_integer(3) * d3);
  // Formal Chebyshev identity.
  CHECK((quantum_integer_shifted(2) + quantum_integer_shifted(0) - quantum_two() * quantum_integer_shifted(1)).is_zero());
  // a = 1 collapses [n+1] to [1].
  CHECK(quantum_integer_shifted(1).eval(Real(1), Real(3)) == Real(1));
}

TEST_CASE("rational function normalisation") {
  const RatFunc x(BivarPoly::var_a() * BivarPoly::var_q() + 1, BivarPoly::var_q() - 1);
  CHECK((x / x).equals(RatFunc(1)));
  CHECK((RatFunc(BivarPoly::var_a() * BivarPoly::var_q()) - RatFunc(BivarPoly::var_a() * BivarPoly::var_q())).is_zero());
  // (q^2 - 1)/(q - 1) reduces to q + 1.
  const RatFunc y(BivarPoly::var_q() * BivarPoly::var_q() - 1, BivarPoly::var_q() - 1);
  CHECK(y.den() == BivarPoly(1));
  CHECK(y.equals(RatFunc(BivarPoly::var_q() + 1)));
  CHECK_THROWS_AS(RatFunc(BivarPoly(1), BivarPoly(0)), std::domain_error);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), std::domain_error);
}

TEST_CASE("branch factor expression times its denominator") {
  const BivarPoly num = parse_bivar(
      "(q^2+1)*(a^2*q^8 + 3*a^2*q^10 + 2*a^2*q^12 + 2*a^2*q^14 - q^6 - 3*q^4 - 2*q^2 - 2)");
  const BivarPoly den = parse_bivar(
      "2*a^2*q^8 + 4*a^2*q^10 + 4*a^2*q^12 + 4*a^2*q^14 + a^2*q^16 - 2*q^8 - 4*q^6 - 4*q^4 - 4*q^2 - 1");
  const RatFunc r(num, den);
  CHECK((r * RatFunc(den)).equals(RatFunc(num)));
}

TEST_CASE("gcd and exact division") {
  const BivarPoly f = parse_bivar("a*q - 1"), g = parse_bivar("a + q^2"), h = parse_bivar("q^3 + 2");
  const BivarPoly d = poly_gcd(f * g, f * h);
  CHECK(d.terms().size() == f.terms().size());
  CHECK(poly_exact_div(f * g, f) == g);
  CHECK_THROWS_AS(poly_exact_div(g, f), std::domain_error);
}

TEST_CASE("polynomial parser") {
  CHECK(parse_bivar("a^2*q - 3") == BivarPoly::monomial(1, 2, 1) - BivarPoly(3));
  CHECK(parse_bivar("-(q+1)^2") == -(parse_bivar("q^2 + 2*q + 1")));
  CHECK(parse_bivar("q^-2") == BivarPoly::monomial(1, 0, -2));
  CHECK(parse_bivar(" 2 * a * ( q - q ) ").is_zero());
  CHECK_THROWS_AS(parse_bivar("a +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bivar("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bivar("(q+1)^-1"), std::invalid_argument);
}

TEST_CASE("a-scaled substitution") {
  const BivarPoly p = parse_bivar("a^2*q + a - 1");
  // a = b q^3
  CHECK(p.substitute_a_scaled(3) == parse_bivar("a^2*q^7 + a*q^3 - 1"));
  CHECK(p.eval(Rat(2), Rat(3)) == Rat(4 * 3 + 2 - 1));
}
