/**
 * @file laurent.hpp
 * @brief Laurent polynomials in s = q^{1/4} with rational coefficients.
 */
#pragma once

#include "qcg3/real.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcg3 {

/// Dense Laurent polynomial sum_i c_i s^(low + i), trimmed at both ends.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(const mpq_class& c, int exponent) {
    LaurentPoly p;
    if (c != 0) {
      p.low_ = exponent;
      p.c_.push_back(c);
    }
    return p;
  }
  static LaurentPoly constant(const mpq_class& c) { return monomial(c, 0); }

  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  std::size_t span() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<mpq_class>& coefficients() const { return c_; }

  mpq_class coefficient(int e) const {
    if (c_.empty() || e < low_ || e > high()) return 0;
    return c_[static_cast<std::size_t>(e - low_)];
  }

  /// Calls @p fn(exponent, coefficient) for every nonzero term, ascending.
  template <class Fn>
  void for_each_term(Fn&& fn) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) fn(low_ + static_cast<int>(i), c_[i]);
  }

  LaurentPoly shifted(int k) const {
    LaurentPoly p = *this;
    if (!p.c_.empty()) p.low_ += k;
    return p;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, 1); }
  LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, -1); }
  LaurentPoly& operator*=(const mpq_class& k) {
    if (k == 0) {
      c_.clear();
      low_ = 0;
    } else {
      for (auto& c : c_) c *= k;
    }
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= mpq_class(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const mpq_class& k) { return a *= k; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.low_ = a.low_ + b.low_;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) p.c_[i + j] += a.c_[i] * b.c_[j];
    }
    p.trim();
    return p;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly power(unsigned k) const {
    LaurentPoly r = constant(1), base = *this;
    while (k) {
      if (k & 1U) r *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return r;
  }

  /// Quotient if @p d divides this exactly in Q[s, 1/s], otherwise nullopt.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return LaurentPoly{};
    const std::size_t nd = d.c_.size() - 1, nn = c_.size() - 1;
    if (nn < nd) return std::nullopt;
    std::vector<mpq_class> rem = c_;
    std::vector<mpq_class> quo(nn - nd + 1);
    const mpq_class& lead = d.c_[nd];
    for (std::size_t k = nn - nd + 1; k-- > 0;) {
      if (rem[k + nd] == 0) continue;
      mpq_class t = rem[k + nd] / lead;
      for (std::size_t i = 0; i <= nd; ++i) rem[k + i] -= t * d.c_[i];
      quo[k] = std::move(t);
    }
    for (std::size_t i = 0; i < nd; ++i)
      if (rem[i] != 0) return std::nullopt;
    LaurentPoly q;
    q.low_ = low_ - d.low_;
    q.c_ = std::move(quo);
    q.trim();
    return q;
  }

  /// Value at s (Horner on the dense part).
  Real evaluate(const Real& s) const {
    Real acc(0L, s.precision());
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= s;
      acc += Real(c_[i], s.precision());
    }
    if (low_ != 0) acc *= pow(Real(s), low_);
    return acc;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.low_ != b.low_) return a.low_ < b.low_;
    return a.c_ < b.c_;
  }

 private:
  LaurentPoly& accumulate(const LaurentPoly& o, int sign) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      if (sign < 0) *this *= mpq_class(-1);
      return *this;
    }
    const int lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
    std::vector<mpq_class> out(static_cast<std::size_t>(hi - lo + 1), mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[static_cast<std::size_t>(low_ - lo) + i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      auto& slot = out[static_cast<std::size_t>(o.low_ - lo) + i];
      if (sign > 0) slot += o.c_[i];
      else slot -= o.c_[i];
    }
    low_ = lo;
    c_ = std::move(out);
    trim();
    return *this;
  }

  void trim() {
    std::size_t first = 0;
    while (first < c_.size() && c_[first] == 0) ++first;
    if (first == c_.size()) {
      c_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (c_[last - 1] == 0) --last;
    if (first > 0 || last < c_.size()) {
      c_ = std::vector<mpq_class>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                  c_.begin() + static_cast<std::ptrdiff_t>(last));
      low_ += static_cast<int>(first);
    }
  }

  int low_ = 0;
  std::vector<mpq_class> c_;
};

}  // namespace qcg3
