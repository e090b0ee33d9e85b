/**
 * @file tensor.hpp
 * @brief q-CG tables of U_q(sl3) for (n1,0) x (n2,0) by highest-weight lowering.
 *
 * Each channel Lambda^(s) = (n1+n2-2s, s) starts from a highest-weight state
 * expanded with U_q(sl2) coefficients along alpha1. Every other weight is
 * reached along lowering paths; multiplicity spaces are spanned by several
 * paths and orthonormalized by Gram-Schmidt. The same builder produces the
 * conjugate decomposition (0,n1) x (0,n2) with the roles of alpha1 and alpha2
 * exchanged.
 */
#pragma once

#include "qcg3/su2.hpp"
#include "qcg3/weights.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace qcg3 {

/// Product-basis label (A1, B1, A2, B2) of |omega1> (x) |omega2>.
using ProductKey = std::array<int, 4>;

inline Weight first_weight(const ProductKey& k) { return {k[0], k[1]}; }
inline Weight second_weight(const ProductKey& k) { return {k[2], k[3]}; }
inline ProductKey make_key(Weight w1, Weight w2) { return {w1.A, w1.B, w2.A, w2.B}; }

template <class S>
struct CoupledState {
  int s = 0;
  Rep rep;
  Weight omega;
  int t = 0;
  std::map<ProductKey, S> terms;
};

struct LoweringStep {
  Root root;
  int power;
  friend bool operator==(const LoweringStep&, const LoweringStep&) = default;
};
using LoweringSequence = std::vector<LoweringStep>;

/// How an alpha3 lowering step acts on product states.
enum class Alpha3Mode {
  /// E3^- = E1^- E2^- - q^{-1/2} E2^- E1^- from the simple-root coproducts, then normalized.
  q_commutator,
  /// Lowering-factor formulas applied formally at i = 3 (not a module map of the tensor product).
  formal,
};

/// Which decomposition is built: (n1,0)(x)(n2,0) or its conjugate (0,n1)(x)(0,n2).
struct TensorSetup {
  int n1 = 0, n2 = 0;
  bool conjugate = false;

  Rep factor1() const { return conjugate ? Rep{0, n1} : Rep{n1, 0}; }
  Rep factor2() const { return conjugate ? Rep{0, n2} : Rep{n2, 0}; }
  int channel_count() const { return std::min(n1, n2) + 1; }
  Rep channel(int s) const {
    const int a = n1 + n2 - 2 * s;
    return conjugate ? Rep{s, a} : Rep{a, s};
  }
  /// omega1 + omega2 - Omega for every term of a channel-s state.
  Weight offset(int s) const { return conjugate ? Weight{0, s} : Weight{s, 0}; }
  Root actual(Root r) const { return conjugate ? mirror(r) : r; }
  Weight actual(Weight w) const { return conjugate ? Weight{w.B, w.A} : w; }
};

template <class S>
S state_inner(const std::map<ProductKey, S>& a, const std::map<ProductKey, S>& b, const S& zero) {
  S sum = zero;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

template <class S>
void add_to(std::map<ProductKey, S>& m, const ProductKey& k, const S& v) {
  auto it = m.find(k);
  if (it == m.end()) m.emplace(k, v);
  else it->second += v;
}

/// Highest-weight state of channel s: U_q(sl2) coefficients over (k1, k2) with k1 + k2 = s.
template <ScalarField F>
CoupledState<typename F::value_type> highest_weight_expansion(const F& f, const TensorSetup& setup, int s) {
  if (s < 0 || s >= setup.channel_count()) throw std::domain_error("highest_weight_expansion: s out of range");
  CoupledState<typename F::value_type> st;
  st.s = s;
  st.rep = setup.channel(s);
  const HalfInt j1 = HalfInt::from_twice(setup.n1), j2 = HalfInt::from_twice(setup.n2);
  const HalfInt j = HalfInt::from_twice(setup.n1 + setup.n2) - s;
  for (int k1 = std::max(0, s - setup.n2); k1 <= std::min(s, setup.n1); ++k1) {
    const int k2 = s - k1;
    auto c = su2_qcg(f, Su2CgKey{j1, j2, j1 - k1, j2 - k2, j, j});
    if (f.is_zero(c)) continue;
    st.terms.emplace(make_key(setup.actual(Weight{k1, 0}), setup.actual(Weight{k2, 0})), std::move(c));
  }
  return st;
}

/// sqrt([j+m]! [j-m+l]! / ([j+m-l]! [j-m]!)) ; zero when the string runs out.
template <ScalarField F>
typename F::value_type h_factor(const F& f, HalfInt j, HalfInt m, int l) {
  if (l < 0) throw std::invalid_argument("h_factor: negative power");
  const int up = (j + m).to_int(), down = (j - m).to_int();
  if (l > up) return f.zero();
  QIntRatio r;
  qint::add_factorial(r, up, 1);
  qint::add_factorial(r, down + l, 1);
  qint::add_factorial(r, up - l, -1);
  qint::add_factorial(r, down, -1);
  return f.sqrt_ratio(r);
}

/// H factor of root @p i at the coupled weight @p omega.
template <ScalarField F>
typename F::value_type h_factor(const F& f, Root i, int l, const WeightVector& omega) {
  const auto p = subalgebra_profile(omega);
  return h_factor(f, p.j_of(i), p.m_of(i), l);
}

/// Coefficient of x lowerings on the first factor and y on the second in (Delta E_i^-)^{x+y}.
template <ScalarField F>
typename F::value_type f_factor(const F& f, Root i, int l, int x, int y, const WeightVector& w1,
                                const WeightVector& w2) {
  if (x < 0 || y < 0 || x + y != l) throw std::invalid_argument("f_factor: requires x + y = l");
  const auto p1 = subalgebra_profile(w1), p2 = subalgebra_profile(w2);
  const HalfInt j1 = p1.j_of(i), m1 = p1.m_of(i), j2 = p2.j_of(i), m2 = p2.m_of(i);
  const int up1 = (j1 + m1).to_int(), down1 = (j1 - m1).to_int();
  const int up2 = (j2 + m2).to_int(), down2 = (j2 - m2).to_int();
  if (x > up1 || y > up2) return f.zero();
  QIntRatio binom, r;
  qint::add_factorial(binom, l, 1);
  qint::add_factorial(binom, x, -1);
  qint::add_factorial(binom, y, -1);
  qint::add_factorial(r, up1, 1);
  qint::add_factorial(r, down1 + x, 1);
  qint::add_factorial(r, up1 - x, -1);
  qint::add_factorial(r, down1, -1);
  qint::add_factorial(r, up2, 1);
  qint::add_factorial(r, down2 + y, 1);
  qint::add_factorial(r, up2 - y, -1);
  qint::add_factorial(r, down2, -1);
  return f.q_power(x * m2.twice() - y * m1.twice()) * f.ratio(binom) * f.sqrt_ratio(r);
}

namespace detail {

/// (Delta E_i^-)^l on a product-state expansion, without normalization.
template <ScalarField F>
std::map<ProductKey, typename F::value_type> apply_lowering(const F& f, const TensorSetup& setup, Root i, int l,
                                                            const std::map<ProductKey, typename F::value_type>& in) {
  std::map<ProductKey, typename F::value_type> out;
  const Weight d = root_step(i);
  for (const auto& [key, c] : in) {
    const WeightVector w1{setup.factor1(), first_weight(key)}, w2{setup.factor2(), second_weight(key)};
    for (int x = 0; x <= l; ++x) {
      const int y = l - x;
      auto fx = f_factor(f, i, l, x, y, w1, w2);
      if (f.is_zero(fx)) continue;
      const Weight a = w1.w + Weight{x * d.A, x * d.B};
      const Weight b = w2.w + Weight{y * d.A, y * d.B};
      add_to(out, make_key(a, b), c * fx);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = f.is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

template <class S>
void scale(std::map<ProductKey, S>& m, const S& k) {
  for (auto& [key, v] : m) v = v * k;
}

}  // namespace detail

/// Applies a lowering sequence to a coupled state. Simple-root steps divide by the H factor;
/// alpha3 steps are normalized by the exact norm unless @p normalize_alpha3 is false.
/// The channel sign (-1)^s is applied by qcg_table, not here.
template <ScalarField F>
CoupledState<typename F::value_type> lower_coupled(const F& f, const TensorSetup& setup,
                                                   CoupledState<typename F::value_type> st,
                                                   const LoweringSequence& seq,
                                                   Alpha3Mode mode = Alpha3Mode::q_commutator,
                                                   bool normalize_alpha3 = true) {
  using S = typename F::value_type;
  for (const auto& step : seq) {
    if (step.power < 0) throw std::invalid_argument("lower_coupled: negative power");
    if (step.power == 0) continue;
    const Root r = setup.actual(step.root);
    const Weight d = root_step(r);
    const Weight target = st.omega + Weight{step.power * d.A, step.power * d.B};
    if (!in_diagram(st.rep, target))
      throw std::domain_error("lower_coupled: path leaves the weight diagram");
    if (r != Root::alpha3 || mode == Alpha3Mode::formal) {
      const S h = h_factor(f, r, step.power, WeightVector{st.rep, st.omega});
      if (f.is_zero(h)) throw std::domain_error("lower_coupled: invalid path, lowering past the end of a string");
      st.terms = detail::apply_lowering(f, setup, r, step.power, st.terms);
      detail::scale(st.terms, f.inverse(h));
    } else {
      const Root a = setup.actual(Root::alpha1), b = setup.actual(Root::alpha2);
      for (int k = 0; k < step.power; ++k) {
        auto ab = detail::apply_lowering(f, setup, a, 1, detail::apply_lowering(f, setup, b, 1, st.terms));
        auto ba = detail::apply_lowering(f, setup, b, 1, detail::apply_lowering(f, setup, a, 1, st.terms));
        const S c = -f.q_power(-2);
        for (const auto& [key, v] : ba) add_to(ab, key, v * c);
        for (auto it = ab.begin(); it != ab.end();) it = f.is_zero(it->second) ? ab.erase(it) : std::next(it);
        st.terms = std::move(ab);
      }
      if (st.terms.empty()) throw std::domain_error("lower_coupled: alpha3 lowering annihilated the state");
      if (normalize_alpha3) detail::scale(st.terms, f.inv_sqrt(state_inner(st.terms, st.terms, f.zero())));
    }
    st.omega = target;
  }
  return st;
}

/// Lowering sequences spanning the multiplicity space at Lambda - a alpha1 - b alpha2.
inline std::vector<LoweringSequence> multiplicity_paths(Rep rep, Weight target) {
  const int mu = shell_multiplicity(rep, target);
  if (mu == 0) throw std::domain_error("multiplicity_paths: target outside the weight diagram");
  const int a = target.A, b = target.B, c = std::min(a, b);
  std::vector<LoweringSequence> out;
  for (int t = 0; t < mu; ++t) {
    LoweringSequence seq;
    auto push = [&](Root r, int p) {
      if (p > 0) seq.push_back({r, p});
    };
    push(Root::alpha1, t);
    push(Root::alpha2, t);
    if (a >= b) push(Root::alpha1, a - b);
    else push(Root::alpha2, b - a);
    push(Root::alpha3, c - t);
    out.push_back(std::move(seq));
  }
  return out;
}

namespace detail {

/// Determinant by cofactor expansion (matrices here are at most 4 x 4).
template <ScalarField F>
typename F::value_type determinant(const F& f, const std::vector<std::vector<typename F::value_type>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return f.one();
  if (n == 1) return m[0][0];
  auto det = f.zero();
  for (std::size_t c = 0; c < n; ++c) {
    if (f.is_zero(m[0][c])) continue;
    std::vector<std::vector<typename F::value_type>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<typename F::value_type> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    auto term = m[0][c] * determinant(f, minor);
    det += c % 2 ? -term : term;
  }
  return det;
}

}  // namespace detail

/// Orthonormalizes candidates in order (Gram-Schmidt).
///
/// Evaluated in closed form from the Gram matrix G of the candidates:
/// e_k = det[G_{i<k, j<=k} ; v_j] / sqrt(D_{k-1} D_k) with D_k the leading
/// principal minors. Candidates need not be normalized, and each output carries
/// a single square root of Gram data. Throws on (numerical) linear dependence.
template <ScalarField F>
std::vector<CoupledState<typename F::value_type>> gram_schmidt(const F& f,
                                                               std::vector<CoupledState<typename F::value_type>> cands) {
  using S = typename F::value_type;
  const std::size_t n = cands.size();
  const auto& nf = f.numeric();
  const Real threshold = Real::power_of_ten(-static_cast<long>(nf.digits()) + 15, nf.bits());
  std::vector<std::vector<S>> gram(n, std::vector<S>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) gram[a][b] = gram[b][a] = state_inner(cands[a].terms, cands[b].terms, f.zero());
  std::vector<S> minors{f.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<S>> lead(k, std::vector<S>(k));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) lead[a][b] = gram[a][b];
    minors.push_back(detail::determinant(f, lead));
  }
  std::vector<S> inv_roots;
  for (const auto& d : minors) inv_roots.push_back(f.is_zero(d) ? f.zero() : f.inv_sqrt(d));
  std::vector<CoupledState<S>> out;
  for (std::size_t k = 1; k <= n; ++k) {
    // Squared residual of candidate k against the span of the previous ones, relative to its norm.
    const Real rel = f.evaluate(minors[k]) / (f.evaluate(minors[k - 1]) * f.evaluate(gram[k - 1][k - 1]));
    if (f.is_zero(minors[k]) || rel.sign() <= 0 || sqrt(rel) <= threshold)
      throw std::domain_error("gram_schmidt: candidates are linearly dependent");
    CoupledState<S> e = cands[k - 1];
    e.terms.clear();
    for (std::size_t j = 0; j < k; ++j) {
      // Cofactor of v_j in the last row of [G_{i<k, 1..k} ; v_1..v_k].
      std::vector<std::vector<S>> minor;
      for (std::size_t r = 0; r + 1 < k; ++r) {
        std::vector<S> row;
        for (std::size_t c = 0; c < k; ++c)
          if (c != j) row.push_back(gram[r][c]);
        minor.push_back(std::move(row));
      }
      S cof = detail::determinant(f, minor);
      if ((k - 1 + j) % 2) cof = -cof;
      if (f.is_zero(cof)) continue;
      for (const auto& [key, c] : cands[j].terms) add_to(e.terms, key, c * cof);
    }
    const S scale = inv_roots[k - 1] * inv_roots[k];
    for (auto it = e.terms.begin(); it != e.terms.end();) {
      it->second = it->second * scale;
      it = f.is_zero(it->second) ? e.terms.erase(it) : std::next(it);
    }
    out.push_back(std::move(e));
  }
  return out;
}

template <class S>
struct QcgChannel {
  int s = 0;
  Rep rep;
  std::vector<CoupledState<S>> states;  ///< ordered by (Omega, t)
};

template <class S>
struct QcgTable {
  TensorSetup setup;
  std::vector<QcgChannel<S>> channels;

  std::size_t state_count() const {
    std::size_t n = 0;
    for (const auto& c : channels) n += c.states.size();
    return n;
  }
  const CoupledState<S>* find_state(int s, Weight omega, int t) const {
    for (const auto& c : channels) {
      if (c.s != s) continue;
      for (const auto& st : c.states)
        if (st.omega == omega && st.t == t) return &st;
    }
    return nullptr;
  }
  /// Coefficient C for the label (s, t, Omega, omega1, omega2), if present.
  const S* coefficient(int s, int t, Weight omega, Weight w1, Weight w2) const {
    const auto* st = find_state(s, omega, t);
    if (!st) return nullptr;
    auto it = st->terms.find(make_key(w1, w2));
    return it == st->terms.end() ? nullptr : &it->second;
  }
};

struct TableOptions {
  Alpha3Mode alpha3 = Alpha3Mode::q_commutator;
  std::optional<int> only_s;          ///< build a single channel
  bool highest_weights_only = false;  ///< skip lowering; one state per channel
  unsigned threads = 0;               ///< 0: hardware concurrency
};

/// Builds the complete table of the decomposition described by @p setup.
template <ScalarField F>
QcgTable<typename F::value_type> qcg_table(const F& f, const TensorSetup& setup, const TableOptions& opt = {}) {
  using S = typename F::value_type;
  if (setup.n1 < 0 || setup.n2 < 0) throw std::invalid_argument("qcg_table: negative label");
  if (opt.only_s && (*opt.only_s < 0 || *opt.only_s >= setup.channel_count()))
    throw std::domain_error("qcg_table: s out of range");
  QcgTable<S> table;
  table.setup = setup;

  struct Cell {
    std::size_t channel;
    Weight omega;
    std::vector<CoupledState<S>> states;
  };
  std::vector<CoupledState<S>> hw;
  std::vector<Cell> cells;
  for (int s = 0; s < setup.channel_count(); ++s) {
    if (opt.only_s && *opt.only_s != s) continue;
    table.channels.push_back({s, setup.channel(s), {}});
    hw.push_back(highest_weight_expansion(f, setup, s));
    for (const auto& [wv, mu] : enumerate_weights(setup.channel(s))) {
      if (opt.highest_weights_only && wv.w != Weight{}) continue;
      cells.push_back({table.channels.size() - 1, wv.w, {}});
    }
  }

  auto build = [&](Cell& cell) {
    const auto& ch = table.channels[cell.channel];
    const Rep frame = setup.conjugate ? Rep{ch.rep.m, ch.rep.n} : ch.rep;
    const Weight target = setup.actual(cell.omega);
    std::vector<CoupledState<S>> cands;
    const auto paths = multiplicity_paths(frame, target);
    for (const auto& seq : paths)
      cands.push_back(lower_coupled(f, setup, hw[cell.channel], seq, opt.alpha3, paths.size() == 1));
    if (cands.size() == 1) {
      const S n2 = state_inner(cands[0].terms, cands[0].terms, f.zero());
      if (!f.is_zero(n2 - f.one()))
        throw std::logic_error("qcg_table: multiplicity-free state is not normalized");
    } else {
      cands = gram_schmidt(f, std::move(cands));
    }
    const bool flip = ch.s % 2 != 0;
    for (std::size_t t = 0; t < cands.size(); ++t) {
      cands[t].t = static_cast<int>(t);
      if (flip)
        for (auto& [k, v] : cands[t].terms) v = -v;
    }
    cell.states = std::move(cands);
  };

  unsigned workers = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));
  if (workers <= 1) {
    for (auto& c : cells) build(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
          try {
            build(cells[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next = cells.size();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  for (auto& c : cells)
    for (auto& st : c.states) table.channels[c.channel].states.push_back(std::move(st));
  return table;
}

template <ScalarField F>
QcgTable<typename F::value_type> qcg_table(const F& f, int n1, int n2, const TableOptions& opt = {}) {
  return qcg_table(f, TensorSetup{n1, n2, false}, opt);
}

/// Max |C(conjugate labels) - C(labels)| between a table and its conjugate decomposition.
template <ScalarField F>
Real conjugation_residual(const F& f, const QcgTable<typename F::value_type>& table,
                          const QcgTable<typename F::value_type>& conj) {
  const auto& nf = f.numeric();
  Real worst = nf.zero();
  std::size_t matched = 0;
  for (const auto& ch : table.channels)
    for (const auto& st : ch.states) {
      const auto* cst = conj.find_state(ch.s, Weight{st.omega.B, st.omega.A}, st.t);
      if (!cst) return Real(1L, nf.bits());
      ++matched;
      std::map<ProductKey, Real> diff;
      for (const auto& [k, v] : st.terms) diff[k] = f.evaluate(v);
      for (const auto& [k, v] : cst->terms) {
        const ProductKey back{k[1], k[0], k[3], k[2]};
        auto it = diff.find(back);
        if (it == diff.end()) diff.emplace(back, -f.evaluate(v));
        else it->second -= f.evaluate(v);
      }
      for (const auto& [k, v] : diff) worst = max(worst, abs(v));
    }
  if (matched != conj.state_count()) return Real(1L, nf.bits());
  return worst;
}

/// Builds the conjugate decomposition with the same options and compares entrywise.
template <ScalarField F>
Real conjugation_check(const F& f, const QcgTable<typename F::value_type>& table, TableOptions opt = {}) {
  TensorSetup conj = table.setup;
  conj.conjugate = !conj.conjugate;
  return conjugation_residual(f, table, qcg_table(f, conj, opt));
}

}  // namespace qcg3
