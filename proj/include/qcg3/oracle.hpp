/**
 * @file oracle.hpp
 * @brief Brute-force checks of finished q-CG tables with explicit generator matrices.
 *
 * The coproduct generators are realized as dense matrices on the product
 * basis, built directly from the single-representation ladder action. Tables
 * are checked against them: weights, highest-weight annihilation,
 * orthonormality and completeness. Multiplicities are recomputed by
 * Freudenthal's recursion, and classical limits are compared with the
 * Racah formula and with a Lie-algebra construction by linear algebra.
 */
#pragma once

#include "qcg3/tensor.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcg3 {

/// Kets |omega1> (x) |omega2> in lexicographic (A1, B1, A2, B2) order.
class ProductBasis {
 public:
  ProductBasis(Rep r1, Rep r2) : r1_(r1), r2_(r2) {
    for (const auto& [w1, m1] : enumerate_weights(r1))
      for (const auto& [w2, m2] : enumerate_weights(r2)) {
        if (m1 != 1 || m2 != 1) throw std::invalid_argument("ProductBasis: factors must be multiplicity free");
        index_.emplace(make_key(w1.w, w2.w), kets_.size());
        kets_.push_back(make_key(w1.w, w2.w));
      }
  }
  Rep first() const { return r1_; }
  Rep second() const { return r2_; }
  std::size_t size() const { return kets_.size(); }
  const ProductKey& operator[](std::size_t i) const { return kets_[i]; }
  std::optional<std::size_t> index(const ProductKey& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  Rep r1_, r2_;
  std::vector<ProductKey> kets_;
  std::map<ProductKey, std::size_t> index_;
};

template <class S>
struct Matrix {
  std::size_t n = 0;
  std::vector<S> a;
  Matrix(std::size_t size, const S& zero) : n(size), a(size * size, zero) {}
  S& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

/// Delta E^{+-}_{alpha_i} and Delta H_{alpha_i} for i = 1, 2.
template <class S>
struct Generators {
  ProductBasis basis;
  std::vector<Matrix<S>> raise, lower, cartan;  ///< index 0: alpha1, 1: alpha2
};

namespace detail {

/// Single-representation matrix element of E^{+-}_i between |w> and |w -+ alpha_i>.
template <ScalarField F>
std::optional<std::pair<Weight, typename F::value_type>> single_ladder(const F& f, Rep rep, Weight w, Root i,
                                                                     Ladder dir) {
  const auto p = subalgebra_profile(WeightVector{rep, w});
  const Weight d = root_step(i);
  const Weight to = dir == Ladder::lower ? w + d : w - d;
  if (!in_diagram(rep, to)) return std::nullopt;
  auto v = su2_ladder_factor(f, p.j_of(i), p.m_of(i), dir);
  if (f.is_zero(v)) return std::nullopt;
  return std::make_pair(to, v);
}

}  // namespace detail

template <ScalarField F>
Generators<typename F::value_type> build_generators(const F& f, Rep r1, Rep r2) {
  using S = typename F::value_type;
  ProductBasis basis(r1, r2);
  const std::size_t n = basis.size();
  Generators<S> g{basis, {}, {}, {}};
  for (Root i : {Root::alpha1, Root::alpha2}) {
    Matrix<S> up(n, f.zero()), down(n, f.zero()), h(n, f.zero());
    for (std::size_t c = 0; c < n; ++c) {
      const Weight w1 = first_weight(basis[c]), w2 = second_weight(basis[c]);
      const HalfInt h1 = subalgebra_profile(WeightVector{r1, w1}).m_of(i);
      const HalfInt h2 = subalgebra_profile(WeightVector{r2, w2}).m_of(i);
      h(c, c) = f.rational(mpq_class(h1.twice() + h2.twice(), 2));
      for (Ladder dir : {Ladder::raise, Ladder::lower}) {
        Matrix<S>& m = dir == Ladder::raise ? up : down;
        // E (x) q^{H/2} + q^{-H/2} (x) E
        if (auto e = detail::single_ladder(f, r1, w1, i, dir))
          if (auto r = basis.index(make_key(e->first, w2))) m(*r, c) += e->second * f.q_power(h2.twice());
        if (auto e = detail::single_ladder(f, r2, w2, i, dir))
          if (auto r = basis.index(make_key(w1, e->first))) m(*r, c) += e->second * f.q_power(-h1.twice());
      }
    }
    g.raise.push_back(std::move(up));
    g.lower.push_back(std::move(down));
    g.cartan.push_back(std::move(h));
  }
  return g;
}

template <ScalarField F>
Generators<typename F::value_type> build_generators(const F& f, int n1, int n2) {
  return build_generators(f, Rep{n1, 0}, Rep{n2, 0});
}

namespace detail {

template <class S>
Matrix<S> multiply(const Matrix<S>& x, const Matrix<S>& y, const S& zero) {
  Matrix<S> z(x.n, zero);
  for (std::size_t r = 0; r < x.n; ++r)
    for (std::size_t k = 0; k < x.n; ++k) {
      const S& a = x(r, k);
      if (a == zero) continue;
      for (std::size_t c = 0; c < x.n; ++c)
        if (!(y(k, c) == zero)) z(r, c) += a * y(k, c);
    }
  return z;
}

template <ScalarField F>
Real max_abs_difference(const F& f, const Matrix<typename F::value_type>& x, const Matrix<typename F::value_type>& y) {
  Real worst = f.numeric().zero();
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    auto d = x.a[i] - y.a[i];
    if (f.is_zero(d)) continue;
    worst = max(worst, abs(f.evaluate(d)));
  }
  return worst;
}

}  // namespace detail

/// Max entry of [H_i, E^{+-}_i] -+ E^{+-}_i, [E^+_i, E^-_i] - [2 H_i] and [E^+_i, E^-_j] (i != j).
template <ScalarField F>
Real algebra_relation_residual(const F& f, const Generators<typename F::value_type>& g) {
  using S = typename F::value_type;
  const S zero = f.zero();
  Real worst = f.numeric().zero();
  const std::size_t n = g.basis.size();
  for (std::size_t i = 0; i < 2; ++i) {
    for (int sign : {1, -1}) {
      const auto& e = sign > 0 ? g.raise[i] : g.lower[i];
      Matrix<S> lhs = detail::multiply(g.cartan[i], e, zero), rhs = detail::multiply(e, g.cartan[i], zero);
      for (std::size_t k = 0; k < lhs.a.size(); ++k) lhs.a[k] = lhs.a[k] - rhs.a[k] - e.a[k] * static_cast<long>(sign);
      worst = max(worst, detail::max_abs_difference(f, lhs, Matrix<S>(n, zero)));
    }
    Matrix<S> comm = detail::multiply(g.raise[i], g.lower[i], zero);
    const Matrix<S> back = detail::multiply(g.lower[i], g.raise[i], zero);
    for (std::size_t k = 0; k < comm.a.size(); ++k) comm.a[k] = comm.a[k] - back.a[k];
    Matrix<S> q2h(n, zero);
    for (std::size_t c = 0; c < n; ++c) {
      const Real h = f.evaluate(g.cartan[i](c, c)) * 2L;
      q2h(c, c) = f.q_number(static_cast<int>(mpfr_get_si(h.get(), MPFR_RNDN)));
    }
    worst = max(worst, detail::max_abs_difference(f, comm, q2h));
    const std::size_t j = 1 - i;
    Matrix<S> cross = detail::multiply(g.raise[i], g.lower[j], zero);
    const Matrix<S> cross_back = detail::multiply(g.lower[j], g.raise[i], zero);
    for (std::size_t k = 0; k < cross.a.size(); ++k) cross.a[k] = cross.a[k] - cross_back.a[k];
    worst = max(worst, detail::max_abs_difference(f, cross, Matrix<S>(n, zero)));
  }
  return worst;
}

/// Numeric generator matrices at the evaluation point of a field.
inline Generators<Real> numeric_generators(const NumericField& nf, Rep r1, Rep r2) {
  return build_generators(nf, r1, r2);
}

struct StateReport {
  Real weight_residual;
  std::optional<Real> raising_residual;  ///< highest-weight states only
  Real norm_deviation;
};

namespace detail {

inline std::vector<Real> apply(const Matrix<Real>& m, const std::vector<Real>& v) {
  std::vector<Real> out(v.size(), Real(0L, v.empty() ? 64 : v[0].precision()));
  for (std::size_t c = 0; c < m.n; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < m.n; ++r)
      if (!m(r, c).is_zero()) out[r] += m(r, c) * v[c];
  }
  return out;
}

inline Real norm2(const std::vector<Real>& v, mpfr_prec_t bits) {
  Real s(0L, bits);
  for (const auto& x : v) s += x * x;
  return sqrt(s);
}

}  // namespace detail

/// Dense numeric coefficient vector of a state over the basis.
template <ScalarField F>
std::vector<Real> state_vector(const F& f, const CoupledState<typename F::value_type>& st, const ProductBasis& basis) {
  const auto& nf = f.numeric();
  std::vector<Real> v(basis.size(), nf.zero());
  for (const auto& [k, c] : st.terms) {
    auto i = basis.index(k);
    if (!i) throw std::invalid_argument("state_vector: ket outside the product basis");
    v[*i] = f.evaluate(c);
  }
  return v;
}

/// Weight, raising and norm residuals of one coupled state (never throws on bad data).
template <ScalarField F>
StateReport verify_state(const F& f, const CoupledState<typename F::value_type>& st, const Generators<Real>& g) {
  const auto& nf = f.numeric();
  const mpfr_prec_t bits = nf.bits();
  StateReport rep{nf.zero(), std::nullopt, nf.zero()};
  std::vector<Real> v;
  try {
    v = state_vector(f, st, g.basis);
  } catch (const std::invalid_argument&) {
    return StateReport{Real(1L, bits), Real(1L, bits), Real(1L, bits)};
  }
  const auto prof = subalgebra_profile(WeightVector{st.rep, st.omega});
  for (std::size_t i = 0; i < 2; ++i) {
    auto hv = detail::apply(g.cartan[i], v);
    const Real m = nf.rational(mpq_class(prof.m[i].twice(), 2));
    for (std::size_t k = 0; k < v.size(); ++k) hv[k] -= m * v[k];
    rep.weight_residual = max(rep.weight_residual, detail::norm2(hv, bits));
  }
  if (st.omega == Weight{}) {
    Real r = nf.zero();
    for (std::size_t i = 0; i < 2; ++i) r = max(r, detail::norm2(detail::apply(g.raise[i], v), bits));
    rep.raising_residual = r;
  }
  rep.norm_deviation = abs(detail::norm2(v, bits) - nf.one());
  return rep;
}

struct ChannelTally {
  int s;
  Rep rep;
  std::size_t states;
  long expected;
};

struct TableReport {
  Real orthogonality, completeness, weight, raising, norm;
  /// Component of E^{+-}_i v outside the same channel's states at the adjacent weight.
  Real ladder;
  std::vector<ChannelTally> tallies;
  std::size_t product_dimension = 0;
  bool dimensions_ok = false;
  /// Residuals by name as decimal strings.
  std::vector<std::pair<std::string, Real>> residuals() const {
    return {{"orthogonality", orthogonality}, {"completeness", completeness}, {"weight", weight},
            {"raising", raising}, {"norm", norm}, {"ladder_closure", ladder}};
  }
};

/// Orthogonality, completeness, per-state residuals and dimension tallies of a table.
template <ScalarField F>
TableReport verify_table(const F& f, const QcgTable<typename F::value_type>& table, const Generators<Real>& g) {
  const auto& nf = f.numeric();
  TableReport rep{nf.zero(), nf.zero(), nf.zero(), nf.zero(), nf.zero(), nf.zero(), {}, g.basis.size(), true};
  std::vector<std::vector<Real>> rows;
  std::map<std::pair<std::size_t, Weight>, std::vector<std::size_t>> cells;  // (channel, Omega) -> rows
  for (const auto& ch : table.channels) {
    rep.tallies.push_back({ch.s, ch.rep, ch.states.size(), ch.rep.dimension()});
    std::map<Weight, int> per_weight;
    for (const auto& st : ch.states) {
      ++per_weight[st.omega];
      auto sr = verify_state(f, st, g);
      rep.weight = max(rep.weight, sr.weight_residual);
      if (sr.raising_residual) rep.raising = max(rep.raising, *sr.raising_residual);
      rep.norm = max(rep.norm, sr.norm_deviation);
      try {
        rows.push_back(state_vector(f, st, g.basis));
        cells[{rep.tallies.size() - 1, st.omega}].push_back(rows.size() - 1);
      } catch (const std::invalid_argument&) {
        rep.dimensions_ok = false;
      }
    }
    if (static_cast<long>(ch.states.size()) != ch.rep.dimension()) rep.dimensions_ok = false;
    for (const auto& [w, count] : per_weight)
      if (count != shell_multiplicity(ch.rep, w)) rep.dimensions_ok = false;
  }
  std::size_t total = 0;
  for (const auto& t : rep.tallies) total += t.states;
  const mpfr_prec_t bits = nf.bits();
  for (const auto& [cell, members] : cells)
    for (std::size_t v : members)
      for (std::size_t i = 0; i < 2; ++i)
        for (int dir : {1, -1}) {
          const Weight step = root_step(i == 0 ? Root::alpha1 : Root::alpha2);
          const Weight next = dir > 0 ? cell.second - step : cell.second + step;
          auto image = detail::apply(dir > 0 ? g.raise[i] : g.lower[i], rows[v]);
          auto it = cells.find({cell.first, next});
          if (it != cells.end())
            for (std::size_t u : it->second) {
              Real ov = nf.zero();
              for (std::size_t k = 0; k < image.size(); ++k)
                if (!rows[u][k].is_zero()) ov += rows[u][k] * image[k];
              for (std::size_t k = 0; k < image.size(); ++k)
                if (!rows[u][k].is_zero()) image[k] -= ov * rows[u][k];
            }
          rep.ladder = max(rep.ladder, detail::norm2(image, bits));
        }
  if (total != g.basis.size()) rep.dimensions_ok = false;
  const std::size_t n = rows.size(), d = g.basis.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Real s = nf.zero();
      for (std::size_t k = 0; k < d; ++k)
        if (!rows[a][k].is_zero() && !rows[b][k].is_zero()) s += rows[a][k] * rows[b][k];
      if (a == b) s -= nf.one();
      rep.orthogonality = max(rep.orthogonality, abs(s));
    }
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = x; y < d; ++y) {
      Real s = nf.zero();
      for (std::size_t a = 0; a < n; ++a)
        if (!rows[a][x].is_zero() && !rows[a][y].is_zero()) s += rows[a][x] * rows[a][y];
      if (x == y) s -= nf.one();
      rep.completeness = max(rep.completeness, abs(s));
    }
  return rep;
}

/// Multiplicity of Lambda - A alpha1 - B alpha2 in (n,m) by Freudenthal's recursion; 0 outside.
inline int freudenthal_multiplicity(Rep rep, Weight target) {
  const int top = rep.n + rep.m;
  if (target.A < 0 || target.B < 0 || target.A > top || target.B > top) return 0;
  const WeightSpaceVector rho{1, 1, 0, 0};
  const WeightSpaceVector lr = WeightSpaceVector{rep.n, rep.m, 0, 0} + rho;
  const mpq_class top_norm = inner_product(lr, lr);
  std::map<Weight, mpq_class> mult;
  auto get = [&](Weight w) -> mpq_class {
    auto it = mult.find(w);
    return it == mult.end() ? mpq_class(0) : it->second;
  };
  for (int level = 0; level <= target.A + target.B; ++level)
    for (int A = std::max(0, level - top); A <= std::min(level, top); ++A) {
      const Weight w{A, level - A};
      if (w.B > top) continue;
      if (level == 0) {
        mult[w] = 1;
        continue;
      }
      const WeightSpaceVector mu = to_vector(WeightVector{rep, w});
      const WeightSpaceVector mr = mu + rho;
      const mpq_class denom = top_norm - inner_product(mr, mr);
      if (denom == 0) continue;  // only the highest weight itself lies on that sphere
      mpq_class sum = 0;
      for (Root r : {Root::alpha1, Root::alpha2, Root::alpha3}) {
        const Weight d = root_step(r);
        for (int k = 1;; ++k) {
          const Weight up{w.A - k * d.A, w.B - k * d.B};
          if (up.A < 0 || up.B < 0) break;
          const mpq_class m = get(up);
          if (m == 0) continue;
          sum += m * inner_product(mu + k * to_vector(r), to_vector(r));
        }
      }
      const mpq_class value = 2 * sum / denom;
      if (value != 0) mult[w] = value;
    }
  const mpq_class m = get(target);
  if (m.get_den() != 1) throw std::logic_error("freudenthal_multiplicity: non-integral result");
  return static_cast<int>(m.get_num().get_si());
}

/// Classical Clebsch-Gordan coefficient by the Racah formula.
inline Real classical_cg(const Su2CgKey& k, mpfr_prec_t bits) {
  if (!su2_selection_rules(k)) return Real(0L, bits);
  auto fact = [&](HalfInt x) {
    Real r(1L, bits);
    for (int i = 2; i <= x.to_int(); ++i) r *= Real(static_cast<long>(i), bits);
    return r;
  };
  const HalfInt j1 = k.j1, j2 = k.j2, j = k.j, m1 = k.m1, m2 = k.m2, m = k.m;
  Real pre = Real(static_cast<long>(j.twice() + 1), bits) * fact(j1 + j2 - j) * fact(j1 - j2 + j) *
             fact(-j1 + j2 + j) / fact(j1 + j2 + j + 1);
  pre *= fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j + m) * fact(j - m);
  Real sum(0L, bits);
  for (int z = 0; z <= (j1 + j2 - j).to_int(); ++z) {
    const HalfInt a[5] = {j1 + j2 - j - z, j1 - m1 - z, j2 + m2 - z, j - j2 + m1 + z, j - j1 - m2 + z};
    bool ok = true;
    for (HalfInt x : a) ok = ok && x.twice() >= 0;
    if (!ok) continue;
    Real den = fact(HalfInt(z));
    for (HalfInt x : a) den *= fact(x);
    Real term = Real(1L, bits) / den;
    sum += z % 2 ? -term : term;
  }
  return sqrt(pre) * sum;
}

/// Rebuilds the highest-weight channel states at q = 1 + 10^-8 and compares with classical CG.
inline Real classical_limit_check(int n1, int n2, unsigned digits = 60) {
  const mpq_class q = mpq_class(1) + mpq_class(1, 100000000);
  NumericField nf(q, digits);
  TableOptions opt;
  opt.highest_weights_only = true;
  const auto table = qcg_table(nf, n1, n2, opt);
  Real worst = nf.zero();
  const HalfInt j1 = HalfInt::from_twice(n1), j2 = HalfInt::from_twice(n2);
  for (const auto& ch : table.channels) {
    const HalfInt j = HalfInt::from_twice(n1 + n2) - ch.s;
    for (const auto& st : ch.states)
      for (int k1 = 0; k1 <= n1; ++k1) {
        const int k2 = ch.s - k1;
        if (k2 < 0 || k2 > n2) continue;
        Real expect = classical_cg(Su2CgKey{j1, j2, j1 - k1, j2 - k2, j, j}, nf.bits());
        if (ch.s % 2) expect = -expect;  // table channel phase (-1)^s
        auto it = st.terms.find(make_key(Weight{k1, 0}, Weight{k2, 0}));
        const Real got = it == st.terms.end() ? nf.zero() : it->second;
        worst = max(worst, abs(got - expect));
      }
  }
  return worst;
}

namespace detail {

/// Orthonormal basis of the null space of the rows of @p rows restricted to columns @p cols.
inline std::vector<std::vector<Real>> null_space(std::vector<std::vector<Real>> rows, std::size_t n, mpfr_prec_t bits,
                                                 const Real& tol) {
  std::vector<int> pivot_of(n, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t best = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (abs(rows[r][c]) > abs(rows[best][c])) best = r;
    if (abs(rows[best][c]) <= tol) continue;
    std::swap(rows[rank], rows[best]);
    const Real p = rows[rank][c];
    for (auto& x : rows[rank]) x /= p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Real k = rows[r][c];
      for (std::size_t x = 0; x < n; ++x) rows[r][x] -= k * rows[rank][x];
    }
    pivot_of[c] = static_cast<int>(rank++);
  }
  std::vector<std::vector<Real>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_of[free] >= 0) continue;
    std::vector<Real> v(n, Real(0L, bits));
    v[free] = Real(1L, bits);
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of[c] >= 0) v[c] = -rows[static_cast<std::size_t>(pivot_of[c])][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Real dot(const std::vector<Real>& a, const std::vector<Real>& b, mpfr_prec_t bits) {
  Real s(0L, bits);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Classical (q = 1) table obtained by linear algebra on the Lie-algebra generators.
///
/// Highest-weight vectors are the null space of both raising matrices inside the
/// weight space of Lambda^(s), with a positive coefficient on |lambda1> (x) |lambda1 - s alpha1>.
/// Other states follow the documented path family with E3 = [E1, E2], then plain
/// Gram-Schmidt; the channel phase (-1)^s is applied to every state.
struct ClassicalState {
  int s, t;
  Weight omega;
  std::vector<Real> v;
};

inline std::vector<ClassicalState> classical_brute_force_table(int n1, int n2, unsigned digits = 40) {
  NumericField nf(mpq_class(1), digits);
  const mpfr_prec_t bits = nf.bits();
  const auto g = build_generators(nf, n1, n2);
  const std::size_t d = g.basis.size();
  const Real tol = Real::power_of_ten(-static_cast<long>(digits) + 10, bits);
  auto total = [&](std::size_t i) {
    const ProductKey& k = g.basis[i];
    return Weight{k[0] + k[2], k[1] + k[3]};
  };
  auto lower = [&](int root, const std::vector<Real>& v) { return detail::apply(g.lower[static_cast<std::size_t>(root)], v); };
  auto normalize = [&](std::vector<Real> v) {
    const Real n = sqrt(detail::dot(v, v, bits));
    if (n <= tol) throw std::logic_error("classical oracle: lowering annihilated a state");
    for (auto& x : v) x /= n;
    return v;
  };
  std::vector<ClassicalState> out;
  for (int s = 0; s <= std::min(n1, n2); ++s) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < d; ++i)
      if (total(i) == Weight{s, 0}) cols.push_back(i);
    std::vector<std::vector<Real>> rows;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t x = 0; x < d; ++x) {
        std::vector<Real> row;
        bool any = false;
        for (std::size_t c : cols) {
          row.push_back(g.raise[r](x, c));
          any = any || !row.back().is_zero();
        }
        if (any) rows.push_back(std::move(row));
      }
    auto ns = detail::null_space(rows, cols.size(), bits, tol);
    if (ns.size() != 1) throw std::logic_error("classical oracle: highest-weight space is not one dimensional");
    std::vector<Real> hw(d, nf.zero());
    for (std::size_t c = 0; c < cols.size(); ++c) hw[cols[c]] = ns[0][c];
    hw = normalize(hw);
    const auto anchor = g.basis.index(make_key(Weight{0, 0}, Weight{s, 0}));
    if (!anchor || hw[*anchor].sign() == 0) throw std::logic_error("classical oracle: anchor component vanishes");
    if (hw[*anchor].sign() < 0)
      for (auto& x : hw) x = -x;
    const Rep rep{n1 + n2 - 2 * s, s};
    for (const auto& [wv, mu] : enumerate_weights(rep)) {
      const int a = wv.w.A, b = wv.w.B, c = std::min(a, b);
      std::vector<std::vector<Real>> cands;
      for (int t = 0; t < mu; ++t) {
        std::vector<Real> v = hw;
        for (int k = 0; k < t; ++k) v = lower(0, v);
        for (int k = 0; k < t; ++k) v = lower(1, v);
        for (int k = 0; k < std::abs(a - b); ++k) v = lower(a >= b ? 0 : 1, v);
        for (int k = 0; k < c - t; ++k) {
          auto e12 = lower(0, lower(1, v)), e21 = lower(1, lower(0, v));
          for (std::size_t x = 0; x < d; ++x) e12[x] -= e21[x];
          v = std::move(e12);
        }
        for (const auto& e : cands) {
          const Real ov = detail::dot(e, v, bits);
          for (std::size_t x = 0; x < d; ++x) v[x] -= ov * e[x];
        }
        cands.push_back(normalize(std::move(v)));
      }
      for (int t = 0; t < mu; ++t) {
        auto v = cands[static_cast<std::size_t>(t)];
        if (s % 2)
          for (auto& x : v) x = -x;
        out.push_back({s, t, wv.w, std::move(v)});
      }
    }
  }
  return out;
}

/// Max |C_table - C_classical| over all entries, the table taken near q = 1.
template <ScalarField F>
Real classical_table_deviation(const F& f, const QcgTable<typename F::value_type>& table) {
  const auto& nf = f.numeric();
  const auto classical = classical_brute_force_table(table.setup.n1, table.setup.n2);
  const ProductBasis basis(Rep{table.setup.n1, 0}, Rep{table.setup.n2, 0});
  Real worst = nf.zero();
  for (const auto& cs : classical) {
    const auto* st = table.find_state(cs.s, cs.omega, cs.t);
    if (!st) return nf.one();
    const auto v = state_vector(f, *st, basis);
    for (std::size_t x = 0; x < v.size(); ++x) worst = max(worst, abs(v[x] - Real(cs.v[x]) * 1L));
  }
  return worst;
}

}  // namespace qcg3
