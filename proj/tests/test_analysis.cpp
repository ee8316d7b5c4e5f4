#include <algorithm>
#include <functional>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace incalg;
using fx::e;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

/// A random bijective strong diagonality preserver S_alpha o tau.
template <ExactField F>
std::optional<LinearMap<F>> random_preserver(gen::Rng& rng, const AlgebraPtr<F>& alg) {
  auto data = gen::random_tau_data(rng, alg->field(), alg->poset());
  if (!data) return std::nullopt;
  auto tau = build_tau(alg, data->theta, data->sigma, data->c, data->kappa);
  return shift_map(gen::random_shift_alpha(rng, alg)).compose(tau);
}

}  // namespace

TEST(LinearMapBasics, ApplyAndCompose) {
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  auto phi = fx::phi_v(v);
  EXPECT_EQ(phi.apply(e(v, 1, 2)), e(v, 1, 2) + e(v, 1) + e(v, 3));
  auto id = LinearMap<fx::Q>::identity(v);
  EXPECT_EQ(id.compose(phi), phi);
  EXPECT_EQ(phi.compose(id), phi);
  auto inv = inverse(phi);
  ASSERT_TRUE(inv);
  EXPECT_EQ(inv->compose(phi), id);
  EXPECT_FALSE(inverse(LinearMap<fx::Q>::zero(v)));
  EXPECT_THROW(LinearMap<fx::Q>(v, Matrix<fx::Q>(2, 2, {})), Error);

  auto five = Algebra<fx::Q>::create(fx::five_poset(), {});
  EXPECT_EQ(fx::phi_five(five).apply(e(five, 1, 5)), -e(five, 1, 5));
}

TEST(PaperMaps, VerdictsOfTheWorkedExamples) {
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  auto five = Algebra<fx::Q>::create(fx::five_poset(), {});
  auto c2 = Algebra<fx::Q>::create(fx::chain2(), {});
  for (const auto& L : {fx::phi_v(v), fx::phi_five(five), fx::phi_chain2_lie(c2), fx::phi_chain2_nondiag(c2),
                        LinearMap<fx::Q>::identity(five)}) {
    EXPECT_TRUE(check_commutativity_preserver(L).holds);
    auto sv = is_strong_preserver(L);
    EXPECT_TRUE(sv.strong);
    EXPECT_EQ(sv.method, StrongMethod::LinearIndependence);
    EXPECT_TRUE(is_bijective(L));
    EXPECT_TRUE(remark_injective(L));
  }
  EXPECT_TRUE(is_diagonality_preserver(fx::phi_v(v)));
  EXPECT_TRUE(is_diagonality_preserver(fx::phi_five(five)));
  EXPECT_TRUE(is_diagonality_preserver(fx::phi_chain2_lie(c2)));
  EXPECT_FALSE(is_diagonality_preserver(fx::phi_chain2_nondiag(c2)));
}

TEST(PaperMaps, FiveElementCommutatorTable) {
  auto a = Algebra<fx::Q>::create(fx::five_poset(), {});
  auto phi = fx::phi_five(a);
  auto P = [&](int x, int y) { return phi.apply(e(a, x, y)); };
  EXPECT_EQ(bracket(P(1, 1), P(1, 3)), e(a, 1, 3));
  EXPECT_EQ(bracket(P(1, 2), P(2, 3)), e(a, 1, 3));
  // c(1,5) = -1 and sigma(1,5) = -1
  EXPECT_EQ(bracket(P(1, 1), P(1, 5)), e(a, 1, 5));
}

TEST(CommutativityCriterion, ViolationsAreNamed) {
  auto c2 = Algebra<fx::Q>::create(fx::chain2(), {});
  // e_1 <-> e_2, e_12 fixed: [phi e_1, phi e_12] = -e_12 = [phi e_12, phi e_2], a preserver
  auto swap = fx::map_with(c2, {{{1, 1}, e(c2, 2)}, {{2, 2}, e(c2, 1)}});
  EXPECT_TRUE(check_commutativity_preserver(swap).holds);
  // e_2 -> e_12 breaks (b): [phi e_1, phi e_12] = e_12, [phi e_12, phi e_2] = 0
  auto bad = fx::map_with(c2, {{{2, 2}, e(c2, 1, 2)}});
  auto rep = check_commutativity_preserver(bad);
  EXPECT_FALSE(rep.holds);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_NE(rep.violations.front().str().find("e_"), std::string::npos);
  EXPECT_THROW(is_strong_preserver(bad), Error);

  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  // [e_12, e_13] = 0 must be preserved: send e_13 -> e_1
  auto broken = fx::map_with(v, {{{1, 3}, e(v, 1)}});
  rep = check_commutativity_preserver(broken);
  EXPECT_FALSE(rep.holds);
  bool commuting_pair = false;
  for (const auto& x : rep.violations) commuting_pair |= x.kind == CommViolation::Kind::CommutingPair;
  EXPECT_TRUE(commuting_pair);
}

TEST(StrongCriterion, DependentFamilyOverQIsNotStrong) {
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  auto zero = LinearMap<fx::Q>::zero(v);
  EXPECT_TRUE(check_commutativity_preserver(zero).holds);
  EXPECT_FALSE(is_strong_preserver(zero).strong);
  EXPECT_FALSE(is_bijective(zero));
  // a central-valued map: commutes with everything, never strong
  std::vector<fx::EQ> im(v->dim(), fx::EQ::identity(v));
  auto central = LinearMap<fx::Q>::from_images(v, im);
  EXPECT_TRUE(check_commutativity_preserver(central).holds);
  EXPECT_FALSE(is_strong_preserver(central).strong);
}

TEST(StrongCriterion, SmallFieldFallsBackToEnumeration) {
  // |F_2| < |X| = 3: a dependent family does not decide strongness
  auto v = Algebra<PrimeField>::create(fx::v_poset(), PrimeField(2));
  std::vector<Element<PrimeField>> im(v->dim(), Element<PrimeField>::identity(v));
  auto central = LinearMap<PrimeField>::from_images(v, im);
  auto sv = is_strong_preserver(central);
  EXPECT_EQ(sv.method, StrongMethod::BruteForce);
  EXPECT_FALSE(sv.strong);
}

TEST(Extraction, VPoset) {
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  auto inv = extract_invariants(fx::phi_v(v));
  EXPECT_TRUE(inv.theta.is_identity());
  for (const auto& s : v->poset().strict_pairs()) {
    EXPECT_EQ(inv.sigma.at(s), Rational(1));
    EXPECT_EQ(inv.c.at(s), Rational(1));
  }
  EXPECT_EQ(inv.nu.at({0, 1}), e(v, 1) + e(v, 3));
  EXPECT_EQ(inv.nu.at({0, 2}), e(v, 1) + e(v, 2));
}

TEST(Extraction, FiveElementPoset) {
  auto a = Algebra<fx::Q>::create(fx::five_poset(), {});
  auto inv = extract_invariants(fx::phi_five(a));
  EXPECT_TRUE(inv.theta.is_identity());
  for (const auto& s : a->poset().strict_pairs()) {
    bool upper_arm = s.hi == 1 || s.hi == 2;  // elements 2, 3
    EXPECT_EQ(inv.c.at(s), Rational(upper_arm ? 1 : -1)) << a->pair_key(s);
    EXPECT_EQ(inv.sigma.at(s), Rational(s == Pair{0, 4} ? -1 : 1)) << a->pair_key(s);
    EXPECT_TRUE(inv.nu.at(s).is_zero());
  }
  EXPECT_TRUE(check_c_constant_on_chains<fx::Q>(a->poset(), inv.c).constant);
}

TEST(Extraction, DiagnosticErrors) {
  auto c2 = Algebra<fx::Q>::create(fx::chain2(), {});
  EXPECT_EQ(kind_of([&] { extract_invariants(fx::phi_chain2_nondiag(c2)); }), ErrorKind::NotPureDecomposable);
  auto v = Algebra<fx::Q>::create(fx::v_poset(), {});
  EXPECT_EQ(kind_of([&] { extract_invariants(fx::map_with(v, {{{1, 3}, e(v, 1, 2)}})); }),
            ErrorKind::ThetaNotBijective);
  EXPECT_EQ(kind_of([&] { extract_invariants(fx::map_with(v, {{{1, 3}, e(v, 1, 2) + e(v, 1, 3)}})); }),
            ErrorKind::NotPureDecomposable);
  auto delta = fx::EQ::identity(c2);
  EXPECT_EQ(kind_of([&] { extract_invariants(fx::map_with(c2, {{{1, 1}, delta}})); }), ErrorKind::ZeroC);
}

template <class F>
class PreserverProperties : public ::testing::Test {
 protected:
  static F field() {
    if constexpr (std::is_same_v<F, PrimeField>) return PrimeField(5);
    else return F{};
  }
};

using Fields = ::testing::Types<RationalField, PrimeField>;
TYPED_TEST_SUITE(PreserverProperties, Fields);

TYPED_TEST(PreserverProperties, ExtractedInvariantsObeyStructure) {
  gen::Rng rng(31);
  auto K = TestFixture::field();
  int tested = 0;
  for (int t = 0; t < 40; ++t) {
    auto alg = Algebra<TypeParam>::create(gen::random_connected_poset(rng, gen::uniform(rng, 2, 5)), K);
    auto L = random_preserver(rng, alg);
    if (!L) continue;
    ++tested;
    const auto& P = alg->poset();
    auto inv = extract_invariants(*L);
    auto E = [&](const Pair& p) { return Element<TypeParam>::e(alg, p.lo, p.hi); };
    // theta strongly preserves commutativity on B
    for (const auto& a : P.strict_pairs())
      for (const auto& b : P.strict_pairs())
        EXPECT_EQ(bracket(E(a), E(b)).is_zero(), bracket(E(inv.theta(a)), E(inv.theta(b))).is_zero());
    // theta(Z(B)) = Z(B)
    auto z = radical_center_basis(P);
    std::vector<Pair> image;
    for (const auto& p : z) image.push_back(inv.theta(p));
    std::sort(image.begin(), image.end());
    EXPECT_EQ(image, z);
    // adjacency transport
    for (const auto& s : P.strict_pairs())
      for (Vertex y = 0; y < P.size(); ++y)
        if (P.less(s.lo, y) && P.less(y, s.hi)) {
          auto a = inv.theta({s.lo, y}), b = inv.theta({y, s.hi});
          auto prod = pair_product(a, b) ? pair_product(a, b) : pair_product(b, a);
          ASSERT_TRUE(prod);
          EXPECT_EQ(*prod, inv.theta(s));
        }
    EXPECT_TRUE(check_c_constant_on_chains<TypeParam>(P, inv.c).constant);
    // nu central off maximal two-element chains
    for (const auto& s : P.strict_pairs())
      if (!P.is_maximal_chain({s.lo, s.hi})) {
        EXPECT_TRUE(is_central(inv.nu.at(s))) << alg->pair_key(s);
      }
  }
  EXPECT_GT(tested, 20);
}

TYPED_TEST(PreserverProperties, BracketExpansionIdentity) {
  // [phi f, phi g] = sum_{x<y} [f,g](x,y) [phi e_x, phi e_xy]
  gen::Rng rng(32);
  auto K = TestFixture::field();
  for (int t = 0; t < 30; ++t) {
    auto alg = Algebra<TypeParam>::create(gen::random_connected_poset(rng, gen::uniform(rng, 2, 5)), K);
    auto L = gen::random_test_map(rng, alg);
    if (!check_commutativity_preserver(L).holds) continue;
    auto f = gen::random_element(rng, alg), g = gen::random_element(rng, alg);
    auto fg = bracket(f, g);
    Element<TypeParam> rhs(alg);
    for (const auto& s : alg->poset().strict_pairs())
      rhs = rhs + fg[alg->index(s)] * bracket(L.image(s.lo), L.image(alg->index(s)));
    EXPECT_EQ(bracket(L.apply(f), L.apply(g)), rhs);
  }
}
