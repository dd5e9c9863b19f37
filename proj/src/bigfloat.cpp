#include "bigfloat.hpp"

#include <mpfr.h>

#include <cmath>

namespace pwl::mp {

namespace {

mpfr_rnd_t mode(Round r) {
  switch (r) {
    case Round::down: return MPFR_RNDD;
    case Round::up: return MPFR_RNDU;
    default: return MPFR_RNDN;
  }
}

class Float {
 public:
  explicit Float(long bits) { mpfr_init2(v_, bits); }
  ~Float() { mpfr_clear(v_); }
  Float(const Float&) = delete;
  Float& operator=(const Float&) = delete;
  mpfr_ptr get() { return v_; }

  void set(const Rational& q, Round r) { mpfr_set_q(v_, q.backend().data(), mode(r)); }

  Rational exact() {
    Integer z;
    const mpfr_exp_t e = mpfr_get_z_2exp(z.backend().data(), v_);
    Rational out(z);
    if (e >= 0) return out * Rational(Integer(1) << static_cast<unsigned>(e));
    return out / Rational(Integer(1) << static_cast<unsigned>(-e));
  }

 private:
  mpfr_t v_;
};

}  // namespace

long bits_for_digits(int digits) { return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 8; }

Rational sqrt_of(const Rational& q, Round r, int digits) {
  if (q < 0) throw Error("sqrt_of: negative argument");
  Float x(bits_for_digits(digits));
  x.set(q, r);
  mpfr_sqrt(x.get(), x.get(), mode(r));
  return x.exact();
}

Rational exp2_of(const Rational& e, Round r, int digits) {
  Float x(bits_for_digits(digits));
  x.set(e, r);
  mpfr_exp2(x.get(), x.get(), mode(r));
  return x.exact();
}

Rational exp_of(const Rational& e, Round r, int digits) {
  Float x(bits_for_digits(digits));
  x.set(e, r);
  mpfr_exp(x.get(), x.get(), mode(r));
  return x.exact();
}

std::string decimal(const Rational& q, Round r, int digits) {
  if (q == 0) return "0";
  Float x(bits_for_digits(digits) + 16);
  x.set(q, r);
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x.get(), mode(r));
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mant is 0.d1d2... times 10^exp10
  std::string out;
  if (exp10 > 0 && exp10 <= static_cast<mpfr_exp_t>(mant.size())) {
    out = mant.substr(0, exp10) + "." + mant.substr(exp10);
  } else if (exp10 <= 0 && exp10 > -6) {
    out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
  } else {
    out = mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(exp10 - 1);
  }
  if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

}  // namespace pwl::mp
