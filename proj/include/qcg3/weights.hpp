/**
 * @file weights.hpp
 * @brief sl3 root and weight geometry in lattice coordinates.
 *
 * A weight of the irrep (n,m) is stored as omega = n mu1 + m mu2 - A alpha1 - B alpha2.
 * Normalization: alpha_i.alpha_i = 1, alpha1.alpha2 = -1/2, mu_i.alpha_j = delta_ij / 2.
 */
#pragma once

#include "qcg3/half_integer.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcg3 {

struct Rep {
  int n = 0, m = 0;
  long dimension() const { return static_cast<long>(n + 1) * (m + 1) * (n + m + 2) / 2; }
  friend constexpr auto operator<=>(const Rep&, const Rep&) = default;
};

/// Lattice coordinates (A, B) below the highest weight.
struct Weight {
  int A = 0, B = 0;
  friend constexpr auto operator<=>(const Weight&, const Weight&) = default;
  friend constexpr Weight operator+(Weight a, Weight b) { return {a.A + b.A, a.B + b.B}; }
  friend constexpr Weight operator-(Weight a, Weight b) { return {a.A - b.A, a.B - b.B}; }
};

struct WeightVector {
  Rep rep;
  Weight w;
  friend constexpr auto operator<=>(const WeightVector&, const WeightVector&) = default;
};

enum class Root { alpha1 = 1, alpha2 = 2, alpha3 = 3 };

/// Lattice step of a positive root in (A, B) coordinates.
constexpr Weight root_step(Root r) {
  switch (r) {
    case Root::alpha1: return {1, 0};
    case Root::alpha2: return {0, 1};
    case Root::alpha3: return {1, 1};
  }
  return {};
}

/// alpha1 <-> alpha2; alpha3 is fixed.
constexpr Root mirror(Root r) {
  return r == Root::alpha1 ? Root::alpha2 : r == Root::alpha2 ? Root::alpha1 : Root::alpha3;
}

/// Integer combination mu1*c[0] + mu2*c[1] + alpha1*c[2] + alpha2*c[3].
struct WeightSpaceVector {
  long mu1 = 0, mu2 = 0, alpha1 = 0, alpha2 = 0;
  friend WeightSpaceVector operator+(WeightSpaceVector a, WeightSpaceVector b) {
    return {a.mu1 + b.mu1, a.mu2 + b.mu2, a.alpha1 + b.alpha1, a.alpha2 + b.alpha2};
  }
  friend WeightSpaceVector operator*(long k, WeightSpaceVector a) {
    return {k * a.mu1, k * a.mu2, k * a.alpha1, k * a.alpha2};
  }
};

inline WeightSpaceVector to_vector(const WeightVector& w) { return {w.rep.n, w.rep.m, -w.w.A, -w.w.B}; }
inline WeightSpaceVector to_vector(Root r) {
  switch (r) {
    case Root::alpha1: return {0, 0, 1, 0};
    case Root::alpha2: return {0, 0, 0, 1};
    case Root::alpha3: return {0, 0, 1, 1};
  }
  return {};
}

/// Bilinear form in the basis {mu1, mu2, alpha1, alpha2}.
inline mpq_class inner_product(const WeightSpaceVector& u, const WeightSpaceVector& v) {
  static const mpq_class g[4][4] = {
      {mpq_class(1, 3), mpq_class(1, 6), mpq_class(1, 2), 0},
      {mpq_class(1, 6), mpq_class(1, 3), 0, mpq_class(1, 2)},
      {mpq_class(1, 2), 0, 1, mpq_class(-1, 2)},
      {0, mpq_class(1, 2), mpq_class(-1, 2), 1},
  };
  const long a[4] = {u.mu1, u.mu2, u.alpha1, u.alpha2};
  const long b[4] = {v.mu1, v.mu2, v.alpha1, v.alpha2};
  mpq_class s = 0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) s += g[i][k] * a[i] * b[k];
  return s;
}

inline HalfInt to_half_int(const mpq_class& x) {
  mpq_class twice = 2 * x;
  if (twice.get_den() != 1) throw std::logic_error("inner product is not a half-integer");
  return HalfInt::from_twice(static_cast<int>(twice.get_num().get_si()));
}

struct SubalgebraProfile {
  std::array<HalfInt, 3> j, m;
  HalfInt j_of(Root r) const { return j[static_cast<int>(r) - 1]; }
  HalfInt m_of(Root r) const { return m[static_cast<int>(r) - 1]; }
};

/// Spins j(omega) and projections m(omega) along the three sl2 subalgebras.
inline SubalgebraProfile subalgebra_profile(const WeightVector& w) {
  const int n = w.rep.n, m = w.rep.m, A = w.w.A, B = w.w.B;
  auto at = [&](long a, long b) { return to_vector(WeightVector{w.rep, {static_cast<int>(a), static_cast<int>(b)}}); };
  SubalgebraProfile p;
  p.j[0] = to_half_int(inner_product(at(std::max(B - m, 0), B), to_vector(Root::alpha1)));
  p.j[1] = to_half_int(inner_product(at(A, std::max(A - n, 0)), to_vector(Root::alpha2)));
  p.j[2] = to_half_int(inner_product(A >= B ? at(A - B, 0) : at(0, B - A), to_vector(Root::alpha3)));
  for (Root r : {Root::alpha1, Root::alpha2, Root::alpha3})
    p.m[static_cast<int>(r) - 1] = to_half_int(inner_product(to_vector(w), to_vector(r)));
  return p;
}

/// Hexagon membership test for the weight diagram of (n,m).
inline bool in_diagram(Rep rep, Weight w) {
  const int t = rep.n + rep.m;
  return w.A >= 0 && w.B >= 0 && w.A <= t && w.B <= t && w.A - w.B <= rep.n && w.B - w.A <= rep.m;
}

/// Multiplicity by the shell rule: 1 + shell depth, capped at 1 + min(n, m). Zero outside.
inline int shell_multiplicity(Rep rep, Weight w) {
  if (!in_diagram(rep, w)) return 0;
  const int t = rep.n + rep.m;
  const int depth = std::min({w.A, w.B, t - w.A, t - w.B, rep.n - (w.A - w.B), rep.m - (w.B - w.A)});
  return 1 + std::min(depth, std::min(rep.n, rep.m));
}

/// All weights of (n,m) in (A, B) lexicographic order with their multiplicities.
inline std::vector<std::pair<WeightVector, int>> enumerate_weights(Rep rep) {
  if (rep.n < 0 || rep.m < 0) throw std::invalid_argument("enumerate_weights: negative label");
  std::vector<std::pair<WeightVector, int>> out;
  const int t = rep.n + rep.m;
  for (int A = 0; A <= t; ++A)
    for (int B = 0; B <= t; ++B)
      if (int mu = shell_multiplicity(rep, {A, B})) out.push_back({WeightVector{rep, {A, B}}, mu});
  return out;
}

/// n mu1 + m mu2 - A alpha1 - B alpha2  ->  n mu2 + m mu1 - A alpha2 - B alpha1 in (m,n).
inline WeightVector conjugate_weight(const WeightVector& w) {
  return WeightVector{Rep{w.rep.m, w.rep.n}, Weight{w.w.B, w.w.A}};
}

}  // namespace qcg3
