#include "locglob/cohomology.hpp"
#include "locglob/oracle.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace locglob;

namespace {

GModule mu8_module() {
  std::vector<int> residues;
  const GroupTable g = GroupTable::units_mod(8, &residues);
  Vec mult(residues.begin(), residues.end());
  return GModule::scalar(g, 8, mult);
}

H1Options no_check() {
  H1Options o;
  o.cross_check = false;
  return o;
}

}  // namespace

TEST(CyclicSubgroups, CountsAndOrdering) {
  EXPECT_EQ(cyclic_subgroups(GroupTable()).size(), 1U);
  EXPECT_EQ(cyclic_subgroups(GroupTable::cyclic(4)).size(), 3U);
  const auto klein = cyclic_subgroups(GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)));
  ASSERT_EQ(klein.size(), 4U);
  EXPECT_EQ(klein[0].elements, (std::vector<int>{0}));
  EXPECT_EQ(klein[1].elements, (std::vector<int>{0, 1}));
  EXPECT_EQ(klein[1].generator, 1);
  EXPECT_EQ(cyclic_subgroups(GroupTable::symmetric3()).size(), 5U);
}

TEST(H1, SmallExamples) {
  EXPECT_TRUE(h1(GModule::trivial(GroupTable(), FinAb({6}))).structure().trivial());
  EXPECT_EQ(h1(GModule::trivial(GroupTable::cyclic(2), FinAb({2}))).structure(), FinAb({2}));
  EXPECT_EQ(h1(GModule::scalar(GroupTable::cyclic(2), 4, {1, -1})).structure(), FinAb({2}));
  EXPECT_EQ(h1(GModule::trivial(GroupTable::cyclic(4), FinAb({6}))).structure(), FinAb({2}));
  // Hom(Z/2 x Z/2, Z/2) = (Z/2)^2.
  EXPECT_EQ(h1(GModule::trivial(GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)), FinAb({2})))
                .structure(),
            FinAb({2, 2}));
  EXPECT_TRUE(h1(GModule::trivial(GroupTable::cyclic(3), FinAb())).structure().trivial());
}

TEST(H1, MatchesEnumerationOnRandomModules) {
  testgen::ModuleSampler sampler(21, 16);
  for (int trial = 0; trial < 150; ++trial) {
    const GModule m = sampler.next();
    const H1Group fast = h1(m, no_check());
    const oracle::BruteH1 brute = oracle::brute_force_h1(m);
    ASSERT_EQ(fast.structure(), brute.structure) << "trial " << trial;
    EXPECT_EQ(fast.cocycles().order(), brute.cocycle_count);
    EXPECT_EQ(fast.coboundaries().order(), brute.coboundary_count);
  }
}

TEST(H1, CyclicGroupsMatchNormQuotient) {
  testgen::ModuleSampler sampler(22, 16);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = static_cast<int>(sampler.uniform(1, 6));
    const GModule m = sampler.random_action(GroupTable::cyclic(n), sampler.pick(sampler.spaces().size()));
    EXPECT_EQ(h1(m, no_check()).order(), oracle::cyclic_h1_order(m, n > 1 ? 1 : 0));
  }
}

TEST(H1, CoordinatesAndCanonicalRepresentatives) {
  testgen::ModuleSampler sampler(23, 16);
  for (int trial = 0; trial < 60; ++trial) {
    const H1Group h = h1(sampler.next());
    const std::vector<CocycleClass> all = h.elements();
    std::set<Vec> reps;
    for (std::int64_t i = 0; i < h.order(); ++i) {
      const CocycleClass& c = all[static_cast<std::size_t>(i)];
      EXPECT_EQ(h.coordinates(c), h.structure().element_at(i));
      EXPECT_EQ(h.is_coboundary(c), i == 0);
      reps.insert(c.flat());
    }
    EXPECT_EQ(static_cast<std::int64_t>(reps.size()), h.order());
    // The zero class is represented by the zero cocycle.
    for (std::int64_t x : all[0].flat()) EXPECT_EQ(x, 0);
  }
}

TEST(H1, InvalidCocycleRejected) {
  auto m = std::make_shared<const GModule>(GModule::trivial(GroupTable::cyclic(2), FinAb({2})));
  EXPECT_THROW(CocycleClass(m, {Vec{1}, Vec{1}}), InvalidInput);
  EXPECT_NO_THROW(CocycleClass(m, {Vec{0}, Vec{1}}));
}

TEST(Restriction, KernelAgreesWithRestrictedModule) {
  testgen::ModuleSampler sampler(24, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const H1Group h = h1(sampler.next());
    for (const GroupSubset& c : cyclic_subgroups(h.module().group())) {
      for (const CocycleClass& x : h.elements()) {
        const CocycleClass r = restrict_class(x, c);
        const H1Group local = h1(r.module(), no_check());
        EXPECT_EQ(restricts_trivially(x, c), local.is_coboundary(r));
      }
    }
  }
}

TEST(H1Star, MuEightModelHasOrderTwo) {
  const GModule m = mu8_module();
  const H1Subgroup s = h1_star(m);
  EXPECT_EQ(s.order(), 2);
  EXPECT_EQ(s.order(), oracle::brute_force_h1_star_order(m));
  EXPECT_EQ(s.structure(), FinAb({2}));
}

TEST(H1Star, CyclicGroupsHaveTrivialStar) {
  testgen::ModuleSampler sampler(25, 16);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(sampler.uniform(1, 6));
    const GModule m = sampler.random_action(GroupTable::cyclic(n), sampler.pick(sampler.spaces().size()));
    EXPECT_EQ(h1_star(m).order(), 1);
  }
}

TEST(H1Star, MatchesEnumerationOnRandomModules) {
  testgen::ModuleSampler sampler(26, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const GModule m = sampler.next();
    EXPECT_EQ(h1_star(m, no_check()).order(), oracle::brute_force_h1_star_order(m)) << "trial " << trial;
  }
}

TEST(Homothety, FindsScalarOnFiveTorsion) {
  std::vector<int> residues;
  const GroupTable units = GroupTable::units_mod(5, &residues);
  std::vector<Matrix> action;
  for (int r : residues) action.push_back(Matrix{{r, 0}, {0, r}});
  const GModule m(units, FinAb({5, 5}), action);
  const HomothetyResult res = homothety_criterion(m);
  EXPECT_TRUE(res.applies);
  EXPECT_EQ(residues[static_cast<std::size_t>(res.sigma)], 2);
  EXPECT_EQ(res.multiplier, 2);
  EXPECT_TRUE(res.h1_vanishes);
}

TEST(Homothety, NoneForMuEight) {
  EXPECT_FALSE(homothety_criterion(mu8_module()).applies);
  EXPECT_TRUE(homothety_criterion(GModule::trivial(GroupTable::cyclic(3), FinAb())).applies);
}

TEST(Dual, MuEightDualIsTrivial) {
  const GModule m = mu8_module();
  std::vector<int> residues;
  GroupTable::units_mod(8, &residues);
  const CyclotomicData chi(m.group(), 8, Vec(residues.begin(), residues.end()));
  const GModule d = dual_module(m, chi);
  for (int g = 0; g < m.group().order(); ++g) EXPECT_TRUE(d.acts_as_scalar(g, 1));
  EXPECT_NO_THROW(double_dual_isomorphism(m, chi));
}

TEST(Dual, DoubleDualOnRandomModules) {
  testgen::ModuleSampler sampler(27, 16);
  for (int trial = 0; trial < 60; ++trial) {
    const GModule m = sampler.next();
    const std::int64_t n = m.space().exponent();
    const GModule d = dual_module(m, CyclotomicData::trivial(m.group(), n));
    const GModule dd = dual_module(d, CyclotomicData::trivial(m.group(), n));
    EXPECT_EQ(dd.action(), m.action());
    // (g.f)(g.m) = f(m) for the trivial character.
    for (int g = 0; g < m.group().order(); ++g) {
      for (std::int64_t x = 0; x < m.space().order(); x += 3) {
        for (std::int64_t y = 0; y < m.space().order(); y += 2) {
          const Vec mv = m.space().element_at(x), fv = m.space().element_at(y);
          EXPECT_EQ(evaluate_dual(m.space(), n, m.act(g, mv), d.act(g, fv)), evaluate_dual(m.space(), n, mv, fv));
        }
      }
    }
  }
}
