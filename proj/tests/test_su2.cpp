/**
 * @file test_su2.cpp
 * @brief U_q(sl2) ladder factors and Clebsch-Gordan coefficients.
 */
#include "qcg3/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcg3;

namespace {

const NumericField nf;
const ExactField ef;

HalfInt h(const char* s) { return HalfInt::parse(s); }

std::vector<Su2CgKey> all_keys(int max_twice) {
  std::vector<Su2CgKey> keys;
  for (int a = 0; a <= max_twice; ++a)
    for (int b = 0; b <= max_twice; ++b) {
      const HalfInt j1 = HalfInt::from_twice(a), j2 = HalfInt::from_twice(b);
      for (HalfInt j = abs(j1 - j2); j <= j1 + j2; j = j + 1)
        for (HalfInt m1 : su2_projections(j1))
          for (HalfInt m2 : su2_projections(j2))
            if (abs(m1 + m2) <= j) keys.push_back({j1, j2, m1, m2, j, m1 + m2});
    }
  return keys;
}

}  // namespace

TEST(HalfInt, Parsing) {
  EXPECT_EQ(h("3/2").twice(), 3);
  EXPECT_EQ(h("-1/2").twice(), -1);
  EXPECT_EQ(h("2").twice(), 4);
  EXPECT_EQ(h("3/2").to_string(), "3/2");
  for (const char* bad : {"", "1/3", "x", "1.5", "3/", "/2"}) EXPECT_THROW(h(bad), std::invalid_argument) << bad;
}

TEST(Ladder, Factors) {
  EXPECT_EQ(su2_ladder_factor(ef, h("1/2"), h("1/2"), Ladder::lower), ef.one());
  EXPECT_EQ(su2_ladder_factor(ef, h("1/2"), h("1/2"), Ladder::raise), ef.zero());
  EXPECT_EQ(ef.to_string(su2_ladder_factor(ef, h("1"), h("0"), Ladder::lower)), "sqrt([2])");
  EXPECT_EQ(su2_ladder_factor(ef, h("1"), h("-1"), Ladder::lower), ef.zero());
}

TEST(Su2Qcg, SingletValues) {
  EXPECT_EQ(ef.to_string(su2_qcg(ef, {h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("0"), h("0")})),
            "q^(1/4)*sqrt(1/[2])");
  EXPECT_EQ(ef.to_string(su2_qcg(ef, {h("1/2"), h("1/2"), h("-1/2"), h("1/2"), h("0"), h("0")})),
            "-q^(-1/4)*sqrt(1/[2])");
}

TEST(Su2Qcg, StretchedIsOne) {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      const HalfInt j1 = HalfInt::from_twice(a), j2 = HalfInt::from_twice(b);
      EXPECT_EQ(su2_qcg(ef, {j1, j2, j1, j2, j1 + j2, j1 + j2}), ef.one());
    }
}

TEST(Su2Qcg, SelectionRulesGiveZero) {
  EXPECT_EQ(su2_qcg(ef, {h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("0")}), ef.zero());
  EXPECT_EQ(su2_qcg(ef, {h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("2"), h("0")}), ef.zero());
  EXPECT_EQ(su2_qcg(ef, {h("1"), h("1/2"), h("2"), h("-1/2"), h("3/2"), h("3/2")}), ef.zero());
  EXPECT_EQ(su2_qcg_hypergeometric(ef, {h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("0")}), ef.zero());
}

TEST(Su2Qcg, HypergeometricEqualsClosedFormExactly) {
  for (const auto& k : all_keys(4)) {
    const auto d = su2_qcg(ef, k) - su2_qcg_hypergeometric(ef, k);
    EXPECT_TRUE(ef.is_zero(d)) << k.j1.to_string() << " " << k.j2.to_string() << " " << k.j.to_string();
  }
}

TEST(Su2Qcg, HypergeometricEqualsClosedFormNumerically) {
  const Real tol = Real::power_of_ten(-50, nf.bits());
  for (const auto& k : all_keys(8)) EXPECT_LE(abs(su2_qcg(nf, k) - su2_qcg_hypergeometric(nf, k)), tol);
}

TEST(Su2Qcg, RandomKeysLargeSpin) {
  std::mt19937 rng(11);
  auto keys = all_keys(8);
  std::shuffle(keys.begin(), keys.end(), rng);
  const Real tol = Real::power_of_ten(-50, nf.bits());
  for (std::size_t i = 0; i < 200; ++i)
    EXPECT_LE(abs(ef.evaluate(su2_qcg_hypergeometric(ef, keys[i])) - su2_qcg(nf, keys[i])), tol);
}

TEST(Su2Qcg, Orthogonality) {
  const Real tight = Real::power_of_ten(-50, nf.bits()), loose = Real::power_of_ten(-45, nf.bits());
  EXPECT_LE(su2_orthogonality_residual(nf, h("1/2"), h("1/2")), tight);
  EXPECT_LE(su2_orthogonality_residual(nf, h("2"), h("3/2")), loose);
  EXPECT_TRUE(su2_orthogonality_residual(nf, h("5/2"), h("0")).is_zero());
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      EXPECT_LE(su2_orthogonality_residual(nf, HalfInt::from_twice(a), HalfInt::from_twice(b)), loose);
}

// Build |j,m> by repeated lowering of the coupled stretched state and expand.
TEST(Su2Qcg, LadderConsistency) {
  const Real tol = Real::power_of_ten(-45, nf.bits());
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const HalfInt j1 = HalfInt::from_twice(a), j2 = HalfInt::from_twice(b);
      for (HalfInt j = abs(j1 - j2); j <= j1 + j2; j = j + 1) {
        // Highest state |j,j> from the closed form, then the coproduct lowering.
        std::map<std::pair<int, int>, Real> v;
        for (HalfInt m1 : su2_projections(j1)) {
          const HalfInt m2 = j - m1;
          if (abs(m2) > j2) continue;
          v.emplace(std::make_pair(m1.twice(), m2.twice()), su2_qcg(nf, {j1, j2, m1, m2, j, j}));
        }
        for (HalfInt m = j; m > -j; m = m - 1) {
          std::map<std::pair<int, int>, Real> w;
          for (const auto& [k, c] : v) {
            const HalfInt m1 = HalfInt::from_twice(k.first), m2 = HalfInt::from_twice(k.second);
            // E- (x) q^{H/2} + q^{-H/2} (x) E-
            if (m1 > -j1) {
              auto& t = w.try_emplace({k.first - 2, k.second}, nf.zero()).first->second;
              t += c * su2_ladder_factor(nf, j1, m1, Ladder::lower) * nf.q_power(m2.twice());
            }
            if (m2 > -j2) {
              auto& t = w.try_emplace({k.first, k.second - 2}, nf.zero()).first->second;
              t += c * su2_ladder_factor(nf, j2, m2, Ladder::lower) * nf.q_power(-m1.twice());
            }
          }
          const Real norm = su2_ladder_factor(nf, j, m, Ladder::lower);
          for (auto& [k, c] : w) c /= norm;
          v = std::move(w);
          for (const auto& [k, c] : v) {
            const Su2CgKey key{j1, j2, HalfInt::from_twice(k.first), HalfInt::from_twice(k.second), j, m - 1};
            EXPECT_LE(abs(c - su2_qcg(nf, key)), tol);
          }
        }
      }
    }
}

TEST(Su2Qcg, ClassicalLimit) {
  const NumericField near(mpq_class(1) + mpq_class(1, 100000000), 40);
  const Real tol = Real::power_of_ten(-6, near.bits());
  std::size_t keys = 0;
  for (const auto& k : all_keys(4)) {
    EXPECT_LE(abs(su2_qcg(near, k) - classical_cg(k, near.bits())), tol);
    ++keys;
  }
  EXPECT_GT(keys, 100u);
}

TEST(ClassicalCg, KnownValues) {
  const mpfr_prec_t bits = 128;
  const Real r = classical_cg({h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("0"), h("0")}, bits);
  EXPECT_LE(abs(r - sqrt(Real(mpq_class(1, 2), bits))), Real::power_of_ten(-30, bits));
  const Real s = classical_cg({h("1"), h("1/2"), h("0"), h("1/2"), h("3/2"), h("1/2")}, bits);
  EXPECT_LE(abs(s - sqrt(Real(mpq_class(2, 3), bits))), Real::power_of_ten(-30, bits));
}
