/**
 * @file test_oracle.cpp
 * @brief Generator matrices, state and table verification, Freudenthal and classical checks.
 */
#include "qcg3/pipeline.hpp"

#include <gtest/gtest.h>

using namespace qcg3;

namespace {

const NumericField nf;
const ExactField ef;

Real ten(long e) { return Real::power_of_ten(e, nf.bits()); }

}  // namespace

TEST(ProductBasis, SizeAndOrder) {
  for (int n1 = 0; n1 <= 4; ++n1)
    for (int n2 = 0; n2 <= 4; ++n2) {
      const ProductBasis b(Rep{n1, 0}, Rep{n2, 0});
      EXPECT_EQ(static_cast<long>(b.size()), Rep({n1, 0}).dimension() * Rep({n2, 0}).dimension());
      for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LT(b[i - 1], b[i]);
    }
  EXPECT_THROW(ProductBasis(Rep{1, 1}, Rep{1, 0}), std::invalid_argument);
}

TEST(Generators, LoweringOnStretchedState) {
  const auto g = build_generators(ef, 1, 1);
  const auto top = *g.basis.index(make_key({0, 0}, {0, 0}));
  const auto a = *g.basis.index(make_key({1, 0}, {0, 0})), b = *g.basis.index(make_key({0, 0}, {1, 0}));
  EXPECT_EQ(ef.to_string(g.lower[0](a, top)), "q^(1/4)");
  EXPECT_EQ(ef.to_string(g.lower[0](b, top)), "q^(-1/4)");
  std::size_t nonzero = 0;
  for (std::size_t r = 0; r < g.basis.size(); ++r) nonzero += !(g.lower[0](r, top) == ef.zero());
  EXPECT_EQ(nonzero, 2u);
}

TEST(Generators, CartanIsDiagonalSum) {
  const auto g = build_generators(ef, 2, 1);
  for (std::size_t r = 0; r < g.basis.size(); ++r)
    for (std::size_t c = 0; c < g.basis.size(); ++c) {
      if (r != c) {
        EXPECT_EQ(g.cartan[0](r, c), ef.zero());
        continue;
      }
      const auto p1 = subalgebra_profile(WeightVector{{2, 0}, first_weight(g.basis[c])});
      const auto p2 = subalgebra_profile(WeightVector{{1, 0}, second_weight(g.basis[c])});
      EXPECT_EQ(g.cartan[0](c, c), ef.rational(mpq_class(p1.m[0].twice() + p2.m[0].twice(), 2)));
    }
}

TEST(Generators, ShiftWeightsByOneRoot) {
  const auto g = build_generators(nf, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t r = 0; r < g.basis.size(); ++r)
      for (std::size_t c = 0; c < g.basis.size(); ++c) {
        if (g.lower[i](r, c).is_zero()) continue;
        const Weight from = first_weight(g.basis[c]) + second_weight(g.basis[c]);
        const Weight to = first_weight(g.basis[r]) + second_weight(g.basis[r]);
        EXPECT_EQ(to - from, root_step(i == 0 ? Root::alpha1 : Root::alpha2));
      }
}

TEST(Generators, AlgebraRelationsExact) {
  EXPECT_TRUE(algebra_relation_residual(ef, build_generators(ef, 1, 1)).is_zero());
  EXPECT_TRUE(algebra_relation_residual(ef, build_generators(ef, 2, 1)).is_zero());
}

TEST(Generators, AlgebraRelationsNumeric) {
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = 0; n2 <= 3; ++n2) EXPECT_LE(algebra_relation_residual(nf, build_generators(nf, n1, n2)), ten(-45));
}

TEST(VerifyState, HighestWeightExpansion) {
  const auto g = build_generators(nf, 1, 1);
  const auto st = highest_weight_expansion(nf, TensorSetup{1, 1, false}, 1);
  const auto r = verify_state(nf, st, g);
  EXPECT_LE(r.weight_residual, ten(-50));
  ASSERT_TRUE(r.raising_residual.has_value());
  EXPECT_LE(*r.raising_residual, ten(-50));
  EXPECT_LE(r.norm_deviation, ten(-50));
}

TEST(VerifyState, LoweredStates) {
  const auto g = build_generators(nf, 2, 1);
  for (const auto& ch : qcg_table(nf, 2, 1).channels)
    for (const auto& st : ch.states) {
      const auto r = verify_state(nf, st, g);
      EXPECT_LE(r.weight_residual, ten(-45));
      EXPECT_LE(r.norm_deviation, ten(-45));
      EXPECT_EQ(r.raising_residual.has_value(), st.omega == Weight{});
    }
}

TEST(VerifyState, CorruptionIsReported) {
  const auto g = build_generators(nf, 1, 1);
  auto st = highest_weight_expansion(nf, TensorSetup{1, 1, false}, 1);
  st.terms.begin()->second *= 2L;
  const auto r = verify_state(nf, st, g);
  EXPECT_GT(*r.raising_residual, ten(-5));
  EXPECT_GT(r.norm_deviation, ten(-5));
  // An off-weight ket breaks the weight check.
  st.terms[make_key({1, 0}, {1, 0})] = nf.one();
  EXPECT_GT(verify_state(nf, st, g).weight_residual, ten(-5));
  // An unknown ket never throws.
  st.terms[make_key({5, 0}, {0, 0})] = nf.one();
  EXPECT_NO_THROW(verify_state(nf, st, g));
}

TEST(VerifyTable, Tallies) {
  const auto r11 = verify_table(nf, qcg_table(nf, 1, 1), build_generators(nf, 1, 1));
  EXPECT_TRUE(r11.dimensions_ok);
  EXPECT_LE(r11.orthogonality, ten(-45));
  EXPECT_LE(r11.completeness, ten(-45));
  ASSERT_EQ(r11.tallies.size(), 2u);
  EXPECT_EQ(r11.tallies[0].states, 6u);
  EXPECT_EQ(r11.tallies[1].states, 3u);
  const auto r22 = verify_table(nf, qcg_table(nf, 2, 2), build_generators(nf, 2, 2));
  std::vector<std::size_t> got;
  for (const auto& t : r22.tallies) got.push_back(t.states);
  EXPECT_EQ(got, (std::vector<std::size_t>{15, 15, 6}));
  const auto r33 = verify_table(nf, qcg_table(nf, 3, 3), build_generators(nf, 3, 3));
  got.clear();
  for (const auto& t : r33.tallies) {
    got.push_back(t.states);
    EXPECT_EQ(static_cast<long>(t.states), t.expected);
  }
  EXPECT_EQ(got, (std::vector<std::size_t>{28, 35, 27, 10}));
}

TEST(VerifyTable, AllStatesPass) {
  for (int n1 = 0; n1 <= 3; ++n1)
    for (int n2 = 0; n2 <= 3; ++n2) {
      const auto r = verify_table(nf, qcg_table(nf, n1, n2), build_generators(nf, n1, n2));
      EXPECT_TRUE(r.dimensions_ok);
      for (const auto& [name, v] : r.residuals()) EXPECT_LE(v, ten(-40)) << name << " " << n1 << n2;
    }
}

TEST(VerifyTable, ExactTablesPass) {
  for (auto [n1, n2] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const auto r = verify_table(ef, qcg_table(ef, n1, n2), build_generators(nf, n1, n2));
    EXPECT_TRUE(r.dimensions_ok);
    for (const auto& [name, v] : r.residuals()) EXPECT_LE(v, ten(-40)) << name;
  }
}

TEST(VerifyTable, DimensionTalliesUpToFive) {
  for (int n1 = 0; n1 <= 5; ++n1)
    for (int n2 = 0; n2 <= 5; ++n2) {
      long total = 0;
      for (int s = 0; s <= std::min(n1, n2); ++s) total += Rep({n1 + n2 - 2 * s, s}).dimension();
      EXPECT_EQ(total, Rep({n1, 0}).dimension() * Rep({n2, 0}).dimension());
    }
  const auto r = verify_table(nf, qcg_table(nf, 5, 4), build_generators(nf, 5, 4));
  EXPECT_TRUE(r.dimensions_ok);
}

TEST(VerifyTable, MissingStateIsDetected) {
  auto t = qcg_table(nf, 2, 1);
  t.channels[1].states.pop_back();
  const auto r = verify_table(nf, t, build_generators(nf, 2, 1));
  EXPECT_FALSE(r.dimensions_ok);
  EXPECT_GT(r.completeness, ten(-5));
}

TEST(Freudenthal, Examples) {
  EXPECT_EQ(freudenthal_multiplicity({5, 2}, {0, 0}), 1);
  EXPECT_EQ(freudenthal_multiplicity({5, 2}, {7, 7}), 1);
  EXPECT_EQ(freudenthal_multiplicity({5, 2}, {2, 2}), 3);
  EXPECT_EQ(freudenthal_multiplicity({5, 2}, {4, 3}), 3);
  for (int n = 0; n <= 6; ++n)
    for (const auto& [wv, mu] : enumerate_weights({n, 0})) EXPECT_EQ(freudenthal_multiplicity({n, 0}, wv.w), 1);
  EXPECT_EQ(freudenthal_multiplicity({1, 0}, {2, 0}), 0);
}

TEST(ClassicalLimit, HighestWeightChannels) {
  EXPECT_LE(classical_limit_check(1, 1), ten(-6));
  EXPECT_LE(classical_limit_check(2, 1), ten(-6));
  EXPECT_LE(classical_limit_check(3, 2), ten(-6));
  const NumericField near(mpq_class(1) + mpq_class(1, 100000000), 60);
  TableOptions opt;
  opt.highest_weights_only = true;
  const auto t = qcg_table(near, 1, 1, opt);
  const auto* st = t.find_state(1, {0, 0}, 0);
  ASSERT_NE(st, nullptr);
  const Real half = nf.sqrt(nf.rational(mpq_class(1, 2)));
  EXPECT_LE(abs(st->terms.at(make_key({1, 0}, {0, 0})) - half), ten(-6));
  EXPECT_LE(abs(st->terms.at(make_key({0, 0}, {1, 0})) + half), ten(-6));
  EXPECT_LE(abs(t.find_state(0, {0, 0}, 0)->terms.begin()->second - near.one()), ten(-50));
}

TEST(ClassicalLimit, BruteForceTables) {
  const NumericField near(mpq_class(1) + mpq_class(1, 100000000), 60);
  for (auto [n1, n2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}})
    EXPECT_LE(classical_table_deviation(near, qcg_table(near, n1, n2)), ten(-6)) << n1 << n2;
}

TEST(ClassicalLimit, BruteForceIsOrthonormal) {
  const auto states = classical_brute_force_table(2, 2);
  EXPECT_EQ(states.size(), 36u);
  const mpfr_prec_t bits = bits_for_digits(40);
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a; b < states.size(); ++b) {
      Real s(0L, bits);
      for (std::size_t k = 0; k < states[a].v.size(); ++k) s += states[a].v[k] * states[b].v[k];
      EXPECT_LE(abs(s - Real(a == b ? 1L : 0L, bits)), Real::power_of_ten(-30, bits));
    }
}

TEST(Reports, JsonResiduals) {
  const auto lines = verify_pipeline(nf, 1, 1);
  const auto j = Json::parse(emit_json(lines));
  for (const auto& l : lines) {
    ASSERT_TRUE(j.contains(l.name));
    EXPECT_TRUE(j[l.name]["value"].is_string());
    EXPECT_TRUE(j[l.name]["pass"].get<bool>());
  }
  EXPECT_EQ(first_failure(lines), nullptr);
}
