#include "chiral/real.hpp"

#include <sstream>
#include <stdexcept>

namespace chiral {

namespace {
struct PrecisionInit {
  PrecisionInit() { Real::default_precision(kDefaultPrecisionDigits); }
};
const PrecisionInit precision_init;
}  // namespace

void set_working_precision(unsigned digits) {
  if (digits < 16) throw std::invalid_argument("precision must be at least 16 digits");
  Real::default_precision(digits);
}

unsigned working_precision() { return Real::default_precision(); }

Real to_real(const BigInt& x) { return Real(x.get_str()); }

Real to_real(const Rat& x) {
  Real num(x.get_num().get_str());
  Real den(x.get_den().get_str());
  return num / den;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rat r(text);
    r.canonicalize();
    return r;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  auto frac_len = text.size() - dot - 1;
  for (char c : digits.substr(digits[0] == '-' ? 1 : 0))
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal: " + text);
  BigInt num(digits);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

}  // namespace chiral
