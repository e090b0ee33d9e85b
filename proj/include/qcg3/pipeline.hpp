/**
 * @file pipeline.hpp
 * @brief Full verification run of one decomposition: build, then check with the oracle.
 */
#pragma once

#include "qcg3/serialize.hpp"

#include <functional>

namespace qcg3 {

/// Tolerances scale with the working precision; 60 digits gives 1e-40 and 1e-45.
struct Tolerances {
  Real table, algebra;
  explicit Tolerances(const NumericField& nf)
      : table(Real::power_of_ten(-static_cast<long>(2 * nf.digits() / 3), nf.bits())),
        algebra(Real::power_of_ten(-static_cast<long>(3 * nf.digits() / 4), nf.bits())) {}
};

/// Max deviation of highest-weight channel coefficients from (-1)^s times the sl2 closed form.
/// Exact backends compare as field elements; the residual is numeric only for reporting.
template <ScalarField F>
Real highest_weight_identity_residual(const F& f, const QcgTable<typename F::value_type>& table) {
  const auto& nf = f.numeric();
  Real worst = nf.zero();
  const int n1 = table.setup.n1, n2 = table.setup.n2;
  const HalfInt j1 = HalfInt::from_twice(n1), j2 = HalfInt::from_twice(n2);
  for (const auto& ch : table.channels) {
    const auto* st = table.find_state(ch.s, Weight{}, 0);
    if (!st) return nf.one();
    const HalfInt j = HalfInt::from_twice(n1 + n2 - 2 * ch.s);
    for (int k1 = 0; k1 <= n1; ++k1) {
      const int k2 = ch.s - k1;
      if (k2 < 0 || k2 > n2) continue;
      auto expect = su2_qcg(f, Su2CgKey{j1, j2, j1 - k1, j2 - k2, j, j});
      if (ch.s % 2) expect = -expect;
      const Weight w1 = table.setup.actual(Weight{k1, 0}), w2 = table.setup.actual(Weight{k2, 0});
      auto it = st->terms.find(make_key(w1, w2));
      const auto got = it == st->terms.end() ? f.zero() : it->second;
      const auto diff = got - expect;
      if (!f.is_zero(diff)) worst = max(worst, abs(f.evaluate(diff)));
    }
  }
  return worst;
}

struct VerifyOptions {
  TableOptions table;
  /// Algebra relations need dense products; skipped above this product dimension.
  std::size_t algebra_max_dimension = 100;
  /// Test hook applied to the built table before checking.
  std::function<void(QcgTable<Real>&)> tamper_numeric;
  std::function<void(QcgTable<ExactScalar>&)> tamper_exact;
};

/// Builds the (n1,0) x (n2,0) table and returns every oracle residual with its tolerance.
template <ScalarField F>
std::vector<ResidualLine> verify_pipeline(const F& f, int n1, int n2, const VerifyOptions& opt = {}) {
  const auto& nf = f.numeric();
  const Tolerances tol(nf);
  auto table = qcg_table(f, n1, n2, opt.table);
  if constexpr (std::is_same_v<F, NumericField>) {
    if (opt.tamper_numeric) opt.tamper_numeric(table);
  } else {
    if (opt.tamper_exact) opt.tamper_exact(table);
  }
  const auto gens = build_generators(nf, n1, n2);
  const auto rep = verify_table(f, table, gens);
  std::vector<ResidualLine> out;
  out.push_back({"dimensions", rep.dimensions_ok ? nf.zero() : nf.one(), nf.zero()});
  for (const auto& [name, value] : rep.residuals()) out.push_back({name, value, tol.table});
  out.push_back({"highest_weight_identity", highest_weight_identity_residual(f, table), tol.table});
  out.push_back({"conjugation", conjugation_check(f, table, opt.table), tol.table});
  if (gens.basis.size() <= opt.algebra_max_dimension)
    out.push_back({"algebra_relations", algebra_relation_residual(nf, gens), tol.algebra});
  return out;
}

inline const ResidualLine* first_failure(const std::vector<ResidualLine>& lines) {
  for (const auto& l : lines)
    if (!l.pass()) return &l;
  return nullptr;
}

}  // namespace qcg3
