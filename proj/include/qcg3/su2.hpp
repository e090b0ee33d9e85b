/**
 * @file su2.hpp
 * @brief U_q(sl2) ladder action and quantum Clebsch-Gordan coefficients.
 *
 * Two independent evaluations of the coefficient are provided: the closed
 * k-sum and the terminating 3phi2 series, the latter summed by term-ratio
 * recursion over q-Pochhammer factors.
 */
#pragma once

#include "qcg3/half_integer.hpp"
#include "qcg3/qscalar.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace qcg3 {

enum class Ladder { raise, lower };

struct Su2CgKey {
  HalfInt j1, j2, m1, m2, j, m;
};

namespace detail {

inline bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && abs(m) <= j && (j - m).is_integer();
}

}  // namespace detail

/// True when the key satisfies every selection rule, i.e. the coefficient may be nonzero.
inline bool su2_selection_rules(const Su2CgKey& k) {
  using detail::valid_projection;
  if (!valid_projection(k.j1, k.m1) || !valid_projection(k.j2, k.m2) || !valid_projection(k.j, k.m)) return false;
  if (k.m != k.m1 + k.m2) return false;
  if (k.j < abs(k.j1 - k.j2) || k.j > k.j1 + k.j2) return false;
  return (k.j1 + k.j2 - k.j).is_integer();
}

/// E^{+-}|j,m> = sqrt([j -+ m][j +- m + 1]) |j,m+-1>; zero when stepping outside the multiplet.
template <ScalarField F>
typename F::value_type su2_ladder_factor(const F& f, HalfInt j, HalfInt m, Ladder dir) {
  if (!detail::valid_projection(j, m)) throw std::invalid_argument("su2_ladder_factor: invalid (j, m)");
  QIntRatio r;
  if (dir == Ladder::raise) {
    if (m + 1 > j) return f.zero();
    qint::add_qint(r, (j - m).to_int(), 1);
    qint::add_qint(r, (j + m + 1).to_int(), 1);
  } else {
    if (m - 1 < -j) return f.zero();
    qint::add_qint(r, (j + m).to_int(), 1);
    qint::add_qint(r, (j - m + 1).to_int(), 1);
  }
  return f.sqrt_ratio(r);
}

namespace detail {

/// Quarter-exponent of q^{(j2(j2+1) - j1(j1+1) - j(j+1))/4 + (m+1) m1 / 2}.
inline int su2_phase_quarters(const Su2CgKey& k) {
  const int J1 = k.j1.twice(), J2 = k.j2.twice(), J = k.j.twice(), M = k.m.twice(), M1 = k.m1.twice();
  const int numerator = J2 * (J2 + 2) - J1 * (J1 + 2) - J * (J + 2) + 2 * (M + 2) * M1;
  if (numerator % 4) throw std::logic_error("su2 phase exponent is not a multiple of q^{1/4}");
  return numerator / 4;
}

inline int sign_of_power(int k) { return k % 2 ? -1 : 1; }

}  // namespace detail

/// Closed-form q-CG coefficient [j1 j2 j; m1 m2 m]; zero when selection rules fail.
template <ScalarField F>
typename F::value_type su2_qcg(const F& f, const Su2CgKey& key) {
  if (!su2_selection_rules(key)) return f.zero();
  if (key.j1.twice() == 0 || key.j2.twice() == 0) return f.one();  // coupling to a singlet is the identity
  const HalfInt j1 = key.j1, j2 = key.j2, m1 = key.m1, m2 = key.m2, j = key.j, m = key.m;
  QIntRatio pre;
  qint::add_qint(pre, j.twice() + 1, 1);
  for (HalfInt a : {j1 + j2 - j, j1 - m1, j2 - m2, j + m, j - m}) qint::add_factorial(pre, a.to_int(), 1);
  for (HalfInt a : {j + j1 + j2 + 1, j + j1 - j2, j + j2 - j1, j1 + m1, j2 + m2})
    qint::add_factorial(pre, a.to_int(), -1);

  const int k_lo = std::max(0, (j - j2 - m1).to_int());
  const int k_hi = std::min({(j - m).to_int(), (j1 - m1).to_int(), (j2 + j - m1).to_int()});
  auto sum = f.zero();
  for (int k = k_lo; k <= k_hi; ++k) {
    QIntRatio r;
    qint::add_factorial(r, (j2 + j - m1).to_int() - k, 1);
    qint::add_factorial(r, (j1 + m1).to_int() + k, 1);
    qint::add_factorial(r, k, -1);
    qint::add_factorial(r, (j - m).to_int() - k, -1);
    qint::add_factorial(r, (j2 - j + m1).to_int() + k, -1);
    qint::add_factorial(r, (j1 - m1).to_int() - k, -1);
    sum += f.ratio(r) * f.q_power(k * (j.twice() + m.twice() + 2)) * static_cast<long>(detail::sign_of_power(k));
  }
  return f.sqrt_ratio(pre) * f.q_power(detail::su2_phase_quarters(key)) * sum *
         static_cast<long>(detail::sign_of_power((j1 - m1).to_int()));
}

/// The same coefficient from its terminating 3phi2 representation.
template <ScalarField F>
typename F::value_type su2_qcg_hypergeometric(const F& f, const Su2CgKey& key) {
  if (!su2_selection_rules(key)) return f.zero();
  const HalfInt j1 = key.j1, j2 = key.j2, m1 = key.m1, m2 = key.m2, j = key.j, m = key.m;
  QIntRatio pre;
  qint::add_qint(pre, j.twice() + 1, 1);
  for (HalfInt a : {j1 + j2 - j, j + m, j1 + m1, j2 - m2}) qint::add_factorial(pre, a.to_int(), 1);
  for (HalfInt a : {j + j1 + j2 + 1, j + j1 - j2, j - j1 + j2, j - m, j1 - m1, j2 + m2})
    qint::add_factorial(pre, a.to_int(), -1);

  // Upper parameters q^{m-j}, q^{m1-j1}, q^{j1+m1+1}; lower q^{m1-j2-j}, q^{j2-j+m1+1}.
  const int a1 = (m - j).to_int(), a2 = (m1 - j1).to_int(), a3 = (j1 + m1 + 1).to_int();
  const int b1 = (m1 - j2 - j).to_int(), b2 = (j2 - j + m1 + 1).to_int();
  const int n_hi = std::min(-a1, -a2);
  // When j2 - j + m1 < 0 the prefactor 1/[j2-j+m1]! and the vanishing factors of
  // (q^{b2}; q)_n cancel; the regularized series starts at n0 = j - j2 - m1.
  const int n0 = std::max(0, 1 - b2);
  if (n0 > n_hi) return f.zero();

  QIntRatio start;
  if (n0 == 0) {
    qint::add_factorial(start, (j2 + j - m1).to_int(), 1);
    qint::add_factorial(start, b2 - 1, -1);
  } else {
    for (HalfInt a : {j - m, j1 - m1}) qint::add_factorial(start, a.to_int(), 1);
    qint::add_factorial(start, (j1 + m1).to_int(), -1);
    qint::add_factorial(start, (j1 + m1).to_int() + n0, 1);
    qint::add_factorial(start, (j2 + j - m1).to_int() - n0, 1);
    qint::add_factorial(start, n0, -1);
    qint::add_factorial(start, (j - m).to_int() - n0, -1);
    qint::add_factorial(start, (j1 - m1).to_int() - n0, -1);
    qint::add_factorial(start, b2 - 1 + n0, -1);
  }
  const int step_quarters = j.twice() + m.twice() + 2;  // q^{(j+m+1)/2}
  auto term = f.ratio(start) * f.q_power(n0 * step_quarters) * static_cast<long>(detail::sign_of_power(n0));
  auto sum = term;
  for (int n = n0; n < n_hi; ++n) {
    // (1 - q^x) = -q^{x/2} (q^{1/2} - q^{-1/2}) [x]; the q^{x/2} and sign factors
    // of the six Pochhammer ratios combine with the argument q into q^{(j+m+1)/2}.
    QIntRatio r;
    int sign = 1;
    auto put = [&](int x, int e) {
      if (x < 0) sign = -sign;
      qint::add_qint(r, x < 0 ? -x : x, e);
    };
    put(a1 + n, 1);
    put(a2 + n, 1);
    put(a3 + n, 1);
    put(b1 + n, -1);
    put(b2 + n, -1);
    put(n + 1, -1);
    term = term * f.ratio(r) * f.q_power(step_quarters) * static_cast<long>(sign);
    sum += term;
  }
  return f.sqrt_ratio(pre) * f.q_power(detail::su2_phase_quarters(key)) * sum *
         static_cast<long>(detail::sign_of_power((j1 - m1).to_int()));
}

/// All projections -j..j of a spin.
inline std::vector<HalfInt> su2_projections(HalfInt j) {
  std::vector<HalfInt> out;
  for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

/// Max deviation over both orthogonality relations of the (j1, j2) coefficient table.
template <ScalarField F>
Real su2_orthogonality_residual(const F& f, HalfInt j1, HalfInt j2) {
  const auto& nf = f.numeric();
  std::map<std::tuple<int, int, int, int>, Real> c;  // (2m1, 2m2, 2j, 2m)
  std::vector<HalfInt> spins;
  for (HalfInt j = abs(j1 - j2); j <= j1 + j2; j = j + 1) spins.push_back(j);
  for (HalfInt m1 : su2_projections(j1))
    for (HalfInt m2 : su2_projections(j2))
      for (HalfInt j : spins) {
        HalfInt m = m1 + m2;
        if (abs(m) > j) continue;
        c.emplace(std::make_tuple(m1.twice(), m2.twice(), j.twice(), m.twice()),
                  f.evaluate(su2_qcg(f, Su2CgKey{j1, j2, m1, m2, j, m})));
      }
  auto get = [&](HalfInt m1, HalfInt m2, HalfInt j, HalfInt m) {
    auto it = c.find(std::make_tuple(m1.twice(), m2.twice(), j.twice(), m.twice()));
    return it == c.end() ? nf.zero() : it->second;
  };
  Real worst = nf.zero();
  for (HalfInt j : spins)
    for (HalfInt jp : spins)
      for (HalfInt m : su2_projections(j)) {
        const HalfInt mp = m;  // sums with m != m' vanish term by term
        if (abs(mp) > jp) continue;
        Real s = nf.zero();
        for (HalfInt m1 : su2_projections(j1)) s += get(m1, m - m1, j, m) * get(m1, m - m1, jp, mp);
        if (j == jp) s -= nf.one();
        worst = max(worst, abs(s));
      }
  for (HalfInt m1 : su2_projections(j1))
    for (HalfInt m2 : su2_projections(j2))
      for (HalfInt m1p : su2_projections(j1)) {
        const HalfInt m2p = m1 + m2 - m1p;
        if (abs(m2p) > j2) continue;
        Real s = nf.zero();
        for (HalfInt j : spins) s += get(m1, m2, j, m1 + m2) * get(m1p, m2p, j, m1 + m2);
        if (m1 == m1p) s -= nf.one();
        worst = max(worst, abs(s));
      }
  return worst;
}

}  // namespace qcg3
