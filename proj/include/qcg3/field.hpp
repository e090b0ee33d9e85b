/**
 * @file field.hpp
 * @brief Scalar backends: exact symbolic and numeric arbitrary precision.
 *
 * Every algorithm is templated on a field. The two value types are distinct,
 * so mixing backends inside one computation does not compile.
 */
#pragma once

#include "qcg3/exact.hpp"
#include "qcg3/qintegers.hpp"
#include "qcg3/real.hpp"

#include <concepts>
#include <stdexcept>
#include <string>

namespace qcg3 {

/// Numeric backend: real arithmetic at a fixed rational q > 0.
class NumericField {
 public:
  using value_type = Real;
  static constexpr const char* name = "numeric";

  explicit NumericField(const mpq_class& q = mpq_class(9, 10), unsigned digits = 60)
      : q_(q), digits_(digits), bits_(bits_for_digits(digits)) {
    if (q <= 0) throw std::invalid_argument("NumericField: q must be positive");
    if (digits < 10) throw std::invalid_argument("NumericField: precision must be at least 10 digits");
    s_ = sqrt(sqrt(Real(q, bits_)));
    inv_s_ = Real(1L, bits_) / s_;
    tolerance_ = Real::power_of_ten(-static_cast<long>(digits - 10), bits_);
  }

  const mpq_class& q() const { return q_; }
  unsigned digits() const { return digits_; }
  mpfr_prec_t bits() const { return bits_; }
  /// q^{1/4}.
  const Real& s() const { return s_; }
  const Real& tolerance() const { return tolerance_; }

  Real zero() const { return Real(0L, bits_); }
  Real one() const { return Real(1L, bits_); }
  Real integer(long k) const { return Real(k, bits_); }
  Real rational(const mpq_class& c) const { return Real(c, bits_); }
  Real q_power(int quarters) const { return quarters >= 0 ? pow(s_, quarters) : pow(inv_s_, -quarters); }

  /// [n] as the positive sum q^{(n-1)/2} + q^{(n-3)/2} + ... + q^{-(n-1)/2}.
  Real q_number(int n) const {
    const int a = n < 0 ? -n : n;
    Real total = zero();
    for (int k = 0; k < a; ++k) total += q_power(2 * (a - 1 - 2 * k));
    return n < 0 ? -total : total;
  }

  Real ratio(const QIntRatio& r) const {
    Real num = one(), den = one();
    for (const auto& [n, x] : r) {
      const Real v = q_number(n);
      for (int i = 0; i < (x > 0 ? x : -x); ++i) (x > 0 ? num : den) *= v;
    }
    return num / den;
  }
  Real sqrt_ratio(const QIntRatio& r) const { return qcg3::sqrt(ratio(r)); }

  /// Square root of a value that is nonnegative up to rounding.
  Real sqrt(const Real& x) const {
    if (x.sign() < 0) {
      if (abs(x) > tolerance_) throw std::domain_error("sqrt of a negative value");
      return zero();
    }
    return qcg3::sqrt(x);
  }
  Real inverse(const Real& x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero");
    return one() / x;
  }
  Real inv_sqrt(const Real& x) const {
    if (x.sign() <= 0 || is_zero(x)) throw std::domain_error("inv_sqrt of a non-positive value");
    return one() / qcg3::sqrt(x);
  }

  bool is_zero(const Real& x) const { return abs(x) <= tolerance_; }
  Real evaluate(const Real& x) const { return x; }
  const NumericField& numeric() const { return *this; }
  std::string to_string(const Real& x) const { return x.to_string(digits_); }

 private:
  mpq_class q_;
  unsigned digits_;
  mpfr_prec_t bits_;
  Real s_, inv_s_, tolerance_;
};

/// Generic evaluation point used by the exact backend for numeric fallbacks.
struct ZeroTestPoint {
  mpq_class q{9, 10};
  unsigned digits = 60;
};

/// Exact backend over Q(q^{1/4}) extended by square roots of q-integers.
class ExactField {
 public:
  using value_type = ExactScalar;
  static constexpr const char* name = "exact";

  explicit ExactField(const ZeroTestPoint& point = {}) : eval_(point.q, point.digits) {}

  ExactScalar zero() const { return {}; }
  ExactScalar one() const { return ExactScalar::rational(1); }
  ExactScalar integer(long k) const { return ExactScalar::rational(k); }
  ExactScalar rational(const mpq_class& c) const { return ExactScalar::rational(c); }
  ExactScalar q_power(int quarters) const { return ExactScalar::q_power(quarters); }
  ExactScalar q_number(int n) const {
    if (n == 0) return {};
    ExactScalar v = ExactScalar::from_poly(qint::expand_qint(n < 0 ? -n : n));
    return n < 0 ? -v : v;
  }
  ExactScalar ratio(const QIntRatio& r) const { return ExactScalar::qint_ratio(r); }
  ExactScalar sqrt_ratio(const QIntRatio& r) const { return ExactScalar::sqrt_qint_ratio(r); }

  ExactScalar sqrt(const ExactScalar& x) const {
    if (x.is_structurally_zero()) return x;
    if (auto r = x.try_sqrt()) return *r;
    require_positive(x, "sqrt");
    // Keep primitive factors and even q-powers outside the opaque radicand.
    if (x.is_single_term()) {
      const auto& [key, c] = *x.terms().begin();
      if (key.roots.empty() && key.atoms.empty()) {
        auto [exps, rest] = qint::split_primitive(c.num);
        const int even = rest.low() >= 0 ? rest.low() / 2 * 2 : -((-rest.low() + 1) / 2 * 2);
        for (const auto& [m, d] : c.den) qint::add_power(exps, m, -d);
        PrimitiveExponents half;
        for (const auto& [m, e] : exps) half[m] = e;
        ExactScalar outer = ExactScalar::sqrt_primitive(half) * ExactScalar::q_power(even / 2);
        ExactScalar core = ExactScalar::from_poly(rest.shifted(-even));
        if (auto r = core.try_sqrt()) return outer * *r;
        return outer * ExactScalar::atom_sqrt(core);
      }
    }
    return ExactScalar::atom_sqrt(x);
  }
  ExactScalar inverse(const ExactScalar& x) const {
    if (auto r = x.try_inverse()) return *r;
    throw std::domain_error("inverse: value has no single-term factorization");
  }
  ExactScalar inv_sqrt(const ExactScalar& x) const {
    require_positive(x, "inv_sqrt");
    return inverse(sqrt(x));
  }

  /// Exact unless the value carries opaque atoms; then numeric at the generic point.
  bool is_zero(const ExactScalar& x) const {
    if (x.is_structurally_zero()) return true;
    if (!x.has_atoms()) return false;
    return eval_.is_zero(evaluate(x));
  }
  Real evaluate(const ExactScalar& x) const { return x.evaluate(eval_.s()); }
  const NumericField& numeric() const { return eval_; }
  std::string to_string(const ExactScalar& x) const { return x.to_string(); }

 private:
  void require_positive(const ExactScalar& x, const char* what) const {
    const Real v = evaluate(x);
    if (v.sign() <= 0 || eval_.is_zero(v)) throw std::domain_error(std::string(what) + " of a non-positive value");
  }

  NumericField eval_;
};

template <class F>
concept ScalarField = requires(const F& f, const typename F::value_type& x, const QIntRatio& r, long k) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.integer(k) } -> std::same_as<typename F::value_type>;
  { f.q_power(1) } -> std::same_as<typename F::value_type>;
  { f.q_number(1) } -> std::same_as<typename F::value_type>;
  { f.ratio(r) } -> std::same_as<typename F::value_type>;
  { f.sqrt_ratio(r) } -> std::same_as<typename F::value_type>;
  { f.sqrt(x) } -> std::same_as<typename F::value_type>;
  { f.inv_sqrt(x) } -> std::same_as<typename F::value_type>;
  { f.is_zero(x) } -> std::same_as<bool>;
  { f.evaluate(x) } -> std::same_as<Real>;
  { f.to_string(x) } -> std::same_as<std::string>;
  { x + x } -> std::same_as<typename F::value_type>;
  { x - x } -> std::same_as<typename F::value_type>;
  { x * x } -> std::same_as<typename F::value_type>;
  { x * k } -> std::same_as<typename F::value_type>;
  { -x } -> std::same_as<typename F::value_type>;
};

static_assert(ScalarField<NumericField>);
static_assert(ScalarField<ExactField>);

}  // namespace qcg3
