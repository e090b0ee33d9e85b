/**
 * @file acceptance.cpp
 * @brief Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
 */
#include "qcg3/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace qcg3;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(const Real& x) { return x.to_string(3); }

const NumericField& nf() {
  static const NumericField f(mpq_class(9, 10), 60);
  return f;
}

Real ten(long e) { return Real::power_of_ten(e, nf().bits()); }

// 1: the two coefficients q^{-1/4}/sqrt[2] and -q^{1/4}/sqrt[2] in the 1 x 1 table.
Outcome golden_values() {
  const auto t0 = Clock::now();
  const ExactField ef;
  const auto table = qcg_table(ef, 1, 1);
  const auto doc = make_document(ef, table);
  bool plus = false, minus = false;
  std::string where;
  for (const auto& ch : doc.channels) {
    if (ch.s != 1) continue;
    for (const auto& st : ch.states) {
      if (st.omega != Weight{1, 1}) continue;
      for (const auto& t : st.terms) {
        const std::string label = "(" + std::to_string(t.omega1.A) + "," + std::to_string(t.omega1.B) + ")x(" +
                                  std::to_string(t.omega2.A) + "," + std::to_string(t.omega2.B) + ")";
        if (t.exact == "q^(-1/4)*sqrt(1/[2])") plus = true, where += " " + label + "=" + *t.exact;
        if (t.exact == "-q^(1/4)*sqrt(1/[2])") minus = true, where += " " + label + "=" + *t.exact;
      }
    }
  }
  const double dt = seconds_since(t0);
  return {plus && minus && doc.state_count() == 9 && dt < 1.0,
          "s=1 Omega=mu2-a1-a2:" + where + "; 9 states; " + std::to_string(dt) + " s (limit 1 s)"};
}

// 2: highest-weight channel entries equal the sl2 closed form, as exact field elements.
Outcome highest_weight_identity() {
  const auto t0 = Clock::now();
  const ExactField ef;
  bool ok = true;
  int pairs = 0;
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n2 <= 6; ++n2) {
      const TensorSetup setup{n1, n2, false};
      const HalfInt j1 = HalfInt::from_twice(n1), j2 = HalfInt::from_twice(n2);
      for (int s = 0; s <= std::min(n1, n2); ++s) {
        const auto st = highest_weight_expansion(ef, setup, s);
        const HalfInt j = HalfInt::from_twice(n1 + n2 - 2 * s);
        for (const auto& [k, c] : st.terms)
          ok = ok && c == su2_qcg(ef, Su2CgKey{j1, j2, j1 - k[0], j2 - k[2], j, j});
      }
      TableOptions opt;
      opt.highest_weights_only = true;
      ok = ok && highest_weight_identity_residual(ef, qcg_table(ef, n1, n2, opt)).is_zero();
      ++pairs;
    }
  const double dt = seconds_since(t0);
  return {ok && dt < 30.0, std::to_string(pairs) + " pairs, exact equality; " + std::to_string(dt) + " s (limit 30 s)"};
}

// 3: orthogonality and completeness for n1, n2 <= 4.
Outcome orthonormality() {
  const auto t0 = Clock::now();
  Real ortho = nf().zero(), comp = nf().zero();
  bool dims = true;
  for (int n1 = 0; n1 <= 4; ++n1)
    for (int n2 = 0; n2 <= 4; ++n2) {
      const auto r = verify_table(nf(), qcg_table(nf(), n1, n2), build_generators(nf(), n1, n2));
      ortho = max(ortho, r.orthogonality);
      comp = max(comp, r.completeness);
      dims = dims && r.dimensions_ok;
    }
  const double dt = seconds_since(t0);
  return {dims && ortho <= ten(-40) && comp <= ten(-40) && dt < 120.0,
          "max orthogonality " + sci(ortho) + ", completeness " + sci(comp) + " (tol 1e-40); " + std::to_string(dt) +
              " s (limit 120 s)"};
}

// 4: per-state weight and raising residuals, algebra relations, for n1, n2 <= 3.
Outcome oracle_suite() {
  Real weight = nf().zero(), raising = nf().zero(), algebra = nf().zero(), ladder = nf().zero();
  std::size_t states = 0;
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = 0; n2 <= 3; ++n2) {
      const auto g = build_generators(nf(), n1, n2);
      const auto table = qcg_table(nf(), n1, n2);
      for (const auto& ch : table.channels)
        for (const auto& st : ch.states) {
          const auto r = verify_state(nf(), st, g);
          weight = max(weight, r.weight_residual);
          if (r.raising_residual) raising = max(raising, *r.raising_residual);
          ++states;
        }
      ladder = max(ladder, verify_table(nf(), table, g).ladder);
      algebra = max(algebra, algebra_relation_residual(nf(), g));
    }
  return {weight <= ten(-40) && raising <= ten(-40) && algebra <= ten(-45) && ladder <= ten(-40),
          std::to_string(states) + " states: weight " + sci(weight) + ", raising " + sci(raising) +
              " (tol 1e-40); algebra " + sci(algebra) + " (tol 1e-45); ladder closure " + sci(ladder)};
}

// 5: the multiplicity-3 centre of channel (2,2) in 3 x 3.
Outcome multiplicity_three() {
  const ExactField ef;
  TableOptions opt;
  opt.only_s = 2;
  const auto table = qcg_table(ef, 3, 3, opt);
  std::vector<const CoupledState<ExactScalar>*> centre;
  for (const auto& st : table.channels.at(0).states)
    if (st.omega == Weight{2, 2}) centre.push_back(&st);
  Real dev = nf().zero();
  for (const auto* a : centre)
    for (const auto* b : centre) {
      const Real g = ef.evaluate(state_inner(a->terms, b->terms, ef.zero()));
      dev = max(dev, abs(g - (a == b ? nf().one() : nf().zero())));
    }
  return {centre.size() == 3 && table.channels[0].rep == Rep{2, 2} && dev <= ten(-40),
          std::to_string(centre.size()) + " states at the centre; |G - I| " + sci(dev) + " (tol 1e-40)"};
}

// 6: the 3phi2 form against the closed form for j1, j2 <= 4.
Outcome hypergeometric() {
  Real worst = nf().zero();
  std::size_t keys = 0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      const HalfInt j1 = HalfInt::from_twice(a), j2 = HalfInt::from_twice(b);
      for (HalfInt j = abs(j1 - j2); j <= j1 + j2; j = j + 1)
        for (HalfInt m1 : su2_projections(j1))
          for (HalfInt m2 : su2_projections(j2)) {
            if (abs(m1 + m2) > j) continue;
            const Su2CgKey k{j1, j2, m1, m2, j, m1 + m2};
            worst = max(worst, abs(su2_qcg(nf(), k) - su2_qcg_hypergeometric(nf(), k)));
            ++keys;
          }
    }
  return {worst <= ten(-50), std::to_string(keys) + " keys; max difference " + sci(worst) + " (tol 1e-50)"};
}

// 7: classical limit of sl2 coefficients and of the 1 x 1 table.
Outcome classical_limit() {
  const NumericField near(mpq_class(1) + mpq_class(1, 100000000), 60);
  Real su2 = near.zero();
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const HalfInt j1 = HalfInt::from_twice(a), j2 = HalfInt::from_twice(b);
      for (HalfInt j = abs(j1 - j2); j <= j1 + j2; j = j + 1)
        for (HalfInt m1 : su2_projections(j1))
          for (HalfInt m2 : su2_projections(j2)) {
            if (abs(m1 + m2) > j) continue;
            const Su2CgKey k{j1, j2, m1, m2, j, m1 + m2};
            su2 = max(su2, abs(su2_qcg(near, k) - classical_cg(k, near.bits())));
          }
    }
  const Real sl3 = classical_table_deviation(near, qcg_table(near, 1, 1));
  const Real tol = Real::power_of_ten(-6, near.bits());
  return {su2 <= tol && sl3 <= tol,
          "sl2 " + sci(su2) + ", sl3 1x1 vs brute-force classical " + sci(sl3) + " (tol 1e-6)"};
}

// 8: dimension accounting and the shell rule against Freudenthal.
Outcome dimensions() {
  bool ok = true;
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n2 <= 6; ++n2) {
      long total = 0;
      for (int s = 0; s <= std::min(n1, n2); ++s) {
        long counted = 0;
        for (const auto& [wv, mu] : enumerate_weights({n1 + n2 - 2 * s, s})) counted += mu;
        ok = ok && counted == Rep({n1 + n2 - 2 * s, s}).dimension();
        total += counted;
      }
      ok = ok && total == Rep({n1, 0}).dimension() * Rep({n2, 0}).dimension();
    }
  int mismatches = 0;
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= 8; ++m)
      for (int A = 0; A <= n + m; ++A)
        for (int B = 0; B <= n + m; ++B)
          mismatches += shell_multiplicity({n, m}, {A, B}) != freudenthal_multiplicity({n, m}, {A, B});
  const auto w52 = make_weights_document({5, 2});
  ok = ok && mismatches == 0 && w52.dimension == 81 && w52.max_multiplicity == 3;
  return {ok, "channel sums for n <= 6; " + std::to_string(mismatches) +
                  " shell/Freudenthal mismatches for n, m <= 8; (5,2): dim " + std::to_string(w52.dimension) +
                  ", max multiplicity " + std::to_string(w52.max_multiplicity)};
}

// 9: conjugate decomposition for n1, n2 <= 3.
Outcome conjugation() {
  const ExactField ef;
  Real worst = nf().zero();
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = 0; n2 <= 3; ++n2) worst = max(worst, conjugation_check(ef, qcg_table(ef, n1, n2)));
  return {worst <= ten(-40), "max residual " + sci(worst) + " (tol 1e-40)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"golden values", golden_values},
      {"highest-weight identity", highest_weight_identity},
      {"orthogonality and completeness", orthonormality},
      {"oracle suite", oracle_suite},
      {"multiplicity-3 centre", multiplicity_three},
      {"hypergeometric equivalence", hypergeometric},
      {"classical limit", classical_limit},
      {"dimension accounting", dimensions},
      {"conjugation", conjugation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s -- %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
