/**
 * @file real.hpp
 * @brief Arbitrary-precision real numbers carrying their own precision.
 *
 * Thin value-semantics wrapper over an MPFR variable. Each value owns its
 * precision; binary operations round to the larger operand precision, so no
 * process-wide default is ever consulted.
 */
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace qcg3 {

/// Number of mantissa bits needed for @p digits significant decimal digits.
inline mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(long value, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(const mpq_class& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, o.precision()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.precision());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific decimal string with @p digits significant digits.
  std::string to_string(unsigned digits) const {
    if (mpfr_zero_p(v_)) return "0";
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Re", static_cast<int>(digits > 0 ? digits - 1 : 0), v_);
    std::string s(raw);
    mpfr_free_str(raw);
    return s;
  }

  Real& operator+=(const Real& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long k) { return a *= k; }
  friend Real operator*(long k, Real a) { return a *= k; }
  friend Real operator-(Real a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  /// 10^e at the given precision.
  static Real power_of_ten(long e, mpfr_prec_t bits) {
    Real r(10, bits);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

 private:
  void widen(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  }

  mpfr_t v_;
};

inline Real abs(Real a) { mpfr_abs(a.get(), a.get(), MPFR_RNDN); return a; }
inline Real sqrt(Real a) { mpfr_sqrt(a.get(), a.get(), MPFR_RNDN); return a; }
inline Real pow(Real a, long k) { mpfr_pow_si(a.get(), a.get(), k, MPFR_RNDN); return a; }
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace qcg3
