/**
 * @file qscalar.hpp
 * @brief q-numbers, q-factorials, q-Pochhammer symbols and radical ratios over any field.
 */
#pragma once

#include "qcg3/field.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qcg3 {

/// [n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2}); [-n] = -[n].
template <ScalarField F>
typename F::value_type q_number(const F& f, int n) {
  return f.q_number(n);
}

/// [n]! = [1][2]...[n].
template <ScalarField F>
typename F::value_type q_factorial(const F& f, int n) {
  if (n < 0) throw std::domain_error("q_factorial: negative argument");
  QIntRatio r;
  qint::add_factorial(r, n, 1);
  return f.ratio(r);
}

/// (x; q)_n = prod_{k=0}^{n-1} (1 - x q^k).
template <ScalarField F>
typename F::value_type q_pochhammer(const F& f, const typename F::value_type& x, int n) {
  if (n < 0) throw std::domain_error("q_pochhammer: negative length");
  auto acc = f.one();
  for (int k = 0; k < n; ++k) acc = acc * (f.one() - x * f.q_power(4 * k));
  return acc;
}

/// sqrt(prod [num] / prod [den]) over positive q-integer labels.
template <ScalarField F>
typename F::value_type scalar_sqrt_ratio(const F& f, const std::vector<int>& num, const std::vector<int>& den) {
  QIntRatio r;
  for (int n : num) {
    if (n <= 0) throw std::invalid_argument("scalar_sqrt_ratio: labels must be positive");
    qint::add_qint(r, n, 1);
  }
  for (int n : den) {
    if (n <= 0) throw std::logic_error("scalar_sqrt_ratio: zero or negative denominator label");
    qint::add_qint(r, n, -1);
  }
  return f.sqrt_ratio(r);
}

template <ScalarField F>
bool scalar_equal_zero(const F& f, const typename F::value_type& a) {
  return f.is_zero(a);
}

}  // namespace qcg3
