#include <gtest/gtest.h>

#include "incalg/oracle_suite.hpp"
#include "support/fixtures.hpp"

using namespace incalg;

namespace {

bool same(const oracle::Verdict& a, const oracle::Verdict& b) {
  return a.comm_preserver == b.comm_preserver && a.strong == b.strong && a.bijective == b.bijective;
}

}  // namespace

TEST(Oracle, IdentityAndZero) {
  for (std::uint32_t p : {2u, 3u}) {
    auto alg = Algebra<PrimeField>::create(fx::v_poset(), PrimeField(p));
    auto id = oracle::brute_verdict(*alg, Matrix<PrimeField>::identity(alg->dim(), alg->field()));
    EXPECT_TRUE(id.comm_preserver && id.strong && id.bijective);
    auto z = oracle::brute_verdict(*alg, LinearMap<PrimeField>::zero(alg).matrix());
    EXPECT_TRUE(z.comm_preserver);
    EXPECT_FALSE(z.strong);
    EXPECT_FALSE(z.bijective);
  }
}

TEST(Oracle, RejectsLargeInputs) {
  auto alg = Algebra<PrimeField>::create(fx::chain2(), PrimeField(11));
  try {
    oracle::brute_verdict(*alg, Matrix<PrimeField>::identity(alg->dim(), alg->field()));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::BruteForceInfeasible);
  }
  EXPECT_FALSE(oracle::per_f_feasible(2, 19));
  EXPECT_FALSE(oracle::pairwise_feasible(3, 10));
}

TEST(Oracle, PerElementTableAgreesWithPairEnumeration) {
  gen::Rng rng(71);
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& P : {fx::chain2(), fx::v_poset(), gen::chain(3)}) {
      auto alg = Algebra<PrimeField>::create(P, PrimeField(p));
      if (!oracle::pairwise_feasible(p, alg->dim())) continue;
      oracle::PerF table(*alg);
      for (int t = 0; t < 150; ++t) {
        auto L = gen::random_test_map(rng, alg);
        auto a = oracle::brute_pairwise(*alg, L.matrix()), b = table.verdict(L.matrix());
        ASSERT_TRUE(same(a, b)) << io::map_to_json(L).dump();
      }
    }
  }
}

TEST(Oracle, EveryMapOnTheTwoChainOverF2) {
  auto alg = Algebra<PrimeField>::create(fx::chain2(), PrimeField(2));
  const auto& K = alg->field();
  std::size_t comm = 0, strong = 0;
  for (unsigned bits = 0; bits < 512; ++bits) {
    Matrix<PrimeField> m(3, 3, K);
    for (unsigned k = 0; k < 9; ++k) m(k / 3, k % 3) = K.from_int((bits >> k) & 1);
    LinearMap<PrimeField> L(alg, m);
    auto b = oracle::brute_pairwise(*alg, m);
    ASSERT_EQ(oracle::detail::map_mismatch(L, b), "") << bits;
    comm += b.comm_preserver;
    strong += b.strong;
  }
  EXPECT_GT(comm, strong);
  EXPECT_GT(strong, 0u);
}

TEST(Oracle, ShiftConditionsOnV) {
  gen::Rng rng(72);
  auto alg = Algebra<PrimeField>::create(fx::v_poset(), PrimeField(3));
  oracle::PerF table(*alg);
  for (int t = 0; t < 500; ++t) {
    auto a = t % 2 ? gen::random_any_alpha(rng, alg) : gen::random_comm_alpha(rng, alg);
    ASSERT_EQ(oracle::detail::alpha_mismatch(a, table.verdict(shift_map(a).matrix())), "");
  }
}

TEST(Oracle, SmallSuiteHasNoDisagreements) {
  EXPECT_EQ(oracle::poset_classes(4).size(), 14u);
  for (std::uint32_t p : {2u, 3u}) {
    auto rep = oracle::run_oracle_suite(p, 3, 40, 73);
    EXPECT_EQ(rep.posets, 4u);
    EXPECT_TRUE(rep.disagreements.empty()) << rep.to_json().dump();
    EXPECT_GT(rep.strong, 0u);
  }
}
