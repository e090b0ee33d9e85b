/**
 * @file qintegers.hpp
 * @brief Symmetric q-integers and their primitive factors.
 *
 * With s = q^{1/4}, the q-integer [n] = (q^{n/2} - q^{-n/2})/(q^{1/2} - q^{-1/2})
 * is a Laurent polynomial in s. It splits as [n] = prod_{m | n, m >= 2} P_m,
 * where each primitive factor P_m is a product of distinct cyclotomic
 * polynomials in s. The P_m are pairwise coprime, square free and positive
 * for q > 0, so products of q-integers have a unique P-exponent vector.
 */
#pragma once

#include "qcg3/laurent.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qcg3 {

/// Exponent map n -> x for products prod [n]^x. Entries with n < 2 are never stored.
using QIntRatio = std::map<int, int>;

/// Exponent map m -> e over the primitive factors P_m (m >= 2).
using PrimitiveExponents = std::map<int, int>;

namespace qint {

inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

inline void add_power(std::map<int, int>& m, int key, int e) {
  if (e == 0) return;
  auto it = m.find(key);
  if (it == m.end()) {
    m.emplace(key, e);
  } else if ((it->second += e) == 0) {
    m.erase(it);
  }
}

/// Multiplies @p r by [n]^e; [1] is dropped, [0] throws.
inline void add_qint(QIntRatio& r, int n, int e) {
  if (n < 0) throw std::invalid_argument("add_qint: negative q-integer argument");
  if (n == 0) throw std::domain_error("add_qint: [0] is zero");
  if (n >= 2) add_power(r, n, e);
}

/// Multiplies @p r by ([n]!)^e for n >= 0.
inline void add_factorial(QIntRatio& r, int n, int e) {
  if (n < 0) throw std::invalid_argument("add_factorial: negative argument");
  for (int k = 2; k <= n; ++k) add_power(r, k, e);
}

/// Laurent expansion of [n] for n >= 1 (exponents in quarters of q).
inline LaurentPoly expand_qint(int n) {
  LaurentPoly p;
  for (int k = 0; k < n; ++k) p += LaurentPoly::monomial(1, 2 * (n - 1 - 2 * k));
  return p;
}

namespace detail {
struct FactorCache {
  std::mutex mutex;
  std::deque<LaurentPoly> primitive{LaurentPoly::constant(1), LaurentPoly::constant(1)};
};
inline FactorCache& factor_cache() {
  static FactorCache cache;
  return cache;
}
}  // namespace detail

/// P_m for m >= 2 (P_0 and P_1 are reported as 1). Memoized; thread safe.
inline const LaurentPoly& primitive_factor(int m) {
  if (m < 0) throw std::invalid_argument("primitive_factor: negative index");
  // Entries of the shared deque never move, so each thread keeps lock-free pointers.
  thread_local std::vector<const LaurentPoly*> local;
  if (m < static_cast<int>(local.size())) return *local[static_cast<std::size_t>(m)];
  auto& cache = detail::factor_cache();
  std::lock_guard<std::mutex> lock(cache.mutex);
  struct Refresh {
    detail::FactorCache& c;
    ~Refresh() {
      local.clear();
      for (const auto& p : c.primitive) local.push_back(&p);
    }
  } refresh{cache};
  while (static_cast<int>(cache.primitive.size()) <= m) {
    const int k = static_cast<int>(cache.primitive.size());
    LaurentPoly p = expand_qint(k);
    for (int d = 2; d < k; ++d) {
      if (k % d) continue;
      auto q = p.divide_exact(cache.primitive[static_cast<std::size_t>(d)]);
      if (!q) throw std::logic_error("primitive_factor: factor basis is inconsistent");
      p = std::move(*q);
    }
    cache.primitive.push_back(std::move(p));
  }
  return cache.primitive[static_cast<std::size_t>(m)];
}

/// P-exponents of prod [n]^x.
inline PrimitiveExponents to_primitive(const QIntRatio& r) {
  PrimitiveExponents f;
  for (const auto& [n, x] : r)
    for (int m = 2; m <= n; ++m)
      if (n % m == 0) add_power(f, m, x);
  return f;
}

/// Inverse of to_primitive via Moebius inversion over multiples.
inline QIntRatio from_primitive(const PrimitiveExponents& f) {
  QIntRatio r;
  if (f.empty()) return r;
  const int top = f.rbegin()->first;
  for (int n = 2; n <= top; ++n) {
    int x = 0;
    for (int k = 1; n * k <= top; ++k) {
      auto it = f.find(n * k);
      if (it != f.end()) x += mobius(k) * it->second;
    }
    if (x) r.emplace(n, x);
  }
  return r;
}

/// Expanded product prod_m P_m^{e_m} over nonnegative exponents.
inline LaurentPoly expand_primitive(const PrimitiveExponents& f) {
  LaurentPoly p = LaurentPoly::constant(1);
  for (const auto& [m, e] : f) {
    if (e < 0) throw std::invalid_argument("expand_primitive: negative exponent");
    p *= primitive_factor(m).power(static_cast<unsigned>(e));
  }
  return p;
}

/// p = c * s^shift * prod P_m^{e_m}, when such a factorization exists.
struct Factorization {
  mpq_class c;
  int shift = 0;
  PrimitiveExponents exponents;
};

/// Divides out every primitive factor it can find: p = prod P_m^{e_m} * rest.
inline std::pair<PrimitiveExponents, LaurentPoly> split_primitive(const LaurentPoly& p) {
  PrimitiveExponents exps;
  LaurentPoly rest = p;
  // deg P_m = 4 phi(m) >= m - 1 holds for all m < 210, so this bound finds every
  // factor of moderate index. A missed factor only costs the structural form.
  const int bound = static_cast<int>(rest.span()) + 2;
  for (int m = 2; m <= bound && !rest.is_zero() && !rest.is_monomial(); ++m) {
    const LaurentPoly& pm = primitive_factor(m);
    if (pm.span() > rest.span()) continue;
    while (auto q = rest.divide_exact(pm)) {
      add_power(exps, m, 1);
      rest = std::move(*q);
    }
  }
  return {std::move(exps), std::move(rest)};
}

inline std::optional<Factorization> factor(const LaurentPoly& p) {
  if (p.is_zero()) return std::nullopt;
  auto [exps, rest] = split_primitive(p);
  if (!rest.is_monomial()) return std::nullopt;
  return Factorization{rest.coefficients().front(), rest.low(), std::move(exps)};
}

}  // namespace qint
}  // namespace qcg3
