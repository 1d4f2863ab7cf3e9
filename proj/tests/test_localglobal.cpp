#include "locglob/localglobal.hpp"
#include "locglob/models.hpp"
#include "locglob/oracle.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace locglob;

namespace {

std::vector<LabelSet> all_subsets(const LabelSet& labels) {
  const std::vector<std::string> v(labels.begin(), labels.end());
  std::vector<LabelSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << v.size()); ++mask) {
    LabelSet t;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask >> i & 1U) t.insert(v[i]);
    }
    out.push_back(t);
  }
  return out;
}

bool contained(const ShaGroup& a, const ShaGroup& b) { return a.members.cocycles().subset_of(b.members.cocycles()); }

// Classes of H^1 trivial on the cyclic subgroups and the given subgroups, by
// enumerating cocycles and testing restrictions for coboundaries directly.
std::int64_t brute_sha_order(const PlaceModel& model, const LabelSet& t) {
  const GModule& m = model.module();
  std::vector<GroupSubset> subs = cyclic_subgroups(m.group());
  for (const auto& [label, sub] : model.designated()) {
    if (!t.count(label)) subs.push_back(sub);
  }
  const oracle::ModuleTables tables(m);
  std::int64_t kept = 0;
  for (const auto& z : oracle::all_cocycles(m, tables)) {
    bool ok = true;
    for (const auto& s : subs) ok = ok && oracle::restriction_is_coboundary(tables, z, s);
    if (ok) ++kept;
  }
  return kept / static_cast<std::int64_t>(oracle::all_coboundaries(m, tables).size());
}

}  // namespace

TEST(PlaceModel, Validation) {
  const GModule m = models::mu8_module();
  EXPECT_THROW(PlaceModel(m, {{"2", {0, 1, 2}}}), InvalidInput);
  EXPECT_THROW(PlaceModel(m, {{"inf", {0, 1, 2, 3}}}, {"inf"}), InvalidInput);
  EXPECT_THROW(PlaceModel(m, {}, {"inf"}), InvalidInput);
  EXPECT_THROW(sha_of_model(models::mu8_model(), {"3"}), InvalidInput);
}

TEST(Sha, Mu8Model) {
  const PlaceModel model = models::mu8_model();
  EXPECT_EQ(sha_of_model(model, {"2"}).order(), 2);
  EXPECT_EQ(sha_of_model(model, {}).order(), 1);
  EXPECT_EQ(sha_of_model(model, {"inf"}).order(), 1);
  EXPECT_EQ(sha_of_model(model, {"2", "inf"}).order(), h1_star(model.module()).order());
  EXPECT_EQ(sha_of_model(model, {"2"}).support_set, LabelSet{"2"});
  for (const LabelSet& t : all_subsets(model.labels())) EXPECT_EQ(sha_of_model(model, t).order(), brute_sha_order(model, t));
}

TEST(Sha, SubgroupV) {
  const PlaceModel model = models::mu8_model();
  const auto star = sha_of_model(model, {"2"});
  const CocycleClass c = star.members.generators().front();
  EXPECT_EQ(sha_of_model(model, {"2"}, std::vector<CocycleClass>{c}).order(), 2);
  EXPECT_EQ(sha_of_model(model, {"2"}, std::vector<CocycleClass>{}).order(), 1);
}

TEST(Verdict, Mu8Model) {
  const PlaceModel model = models::mu8_model();
  const Verdict v = verdict(model, all_subsets(model.labels()));
  EXPECT_TRUE(v.hasse);
  EXPECT_FALSE(v.strong_hasse);
  ASSERT_TRUE(v.strong_hasse_witness.has_value());
  const auto star = h1_star(model.module()).members();
  EXPECT_EQ(v.strong_hasse_witness->flat(), star.at(1).flat());
  for (const auto& q : v.queries) {
    EXPECT_EQ(q.singular, q.t.count("2") == 1) << q.t.size();
    if (q.singular) {
      EXPECT_EQ(*q.witness_place, "2");
      EXPECT_FALSE(restricts_trivially(*q.witness, model.decomposition("2")));
    }
  }
}

TEST(Verdict, TrivialModules) {
  const GroupTable v4 = GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2));
  const PlaceModel klein(GModule::trivial(v4, FinAb({2})), {{"2", {0, 1, 2, 3}}});
  const Verdict v = verdict(klein, {{"2"}});
  EXPECT_TRUE(v.hasse);
  EXPECT_TRUE(v.strong_hasse);
  EXPECT_FALSE(v.queries.front().singular);
  const PlaceModel zero(GModule::trivial(v4, FinAb()), {{"2", {0, 1, 2, 3}}});
  const Verdict z = verdict(zero, {{"2"}});
  EXPECT_TRUE(z.hasse && z.strong_hasse && !z.queries.front().singular);
}

TEST(Verdict, StrongHasseMatchesH1StarOnRandomModels) {
  testgen::ModuleSampler sampler(11, 16);
  const auto groups = testgen::small_groups();
  for (int trial = 0; trial < 120; ++trial) {
    const PlaceModel model = sampler.random_place_model(groups);
    const Verdict v = verdict(model);
    ASSERT_EQ(v.strong_hasse, h1_star(model.module()).order() == 1);
    ASSERT_TRUE(!v.strong_hasse || v.hasse);
  }
}

TEST(SupportBound, Mu8AndCyclic) {
  EXPECT_EQ(finite_support_bound(models::mu8_model()), LabelSet{"2"});
  const PlaceModel cyclic(models::mu8_module(), {{"3", {0, models::unit_index(3)}}});
  EXPECT_TRUE(finite_support_bound(cyclic).empty());
  // No place sees the class of order 2 in H^1_*, so it is locally trivial
  // everywhere: Sha(T) = Sha(empty) = H^1_* != 0 and nothing is T-singular.
  for (const LabelSet& t : all_subsets(cyclic.labels())) {
    EXPECT_EQ(sha_of_model(cyclic, t).order(), 2);
    EXPECT_FALSE(t_singularity(cyclic, t).singular);
  }
  const PlaceModel klein(GModule::trivial(models::mu8_module().group(), FinAb({2})), {{"3", {0, 1}}});
  for (const LabelSet& t : all_subsets(klein.labels())) EXPECT_TRUE(sha_of_model(klein, t).trivial());
}

TEST(SupportBound, ContainmentAndMonotonicityOnRandomModels) {
  testgen::ModuleSampler sampler(12, 16);
  const auto groups = testgen::groups_up_to_8();
  for (int trial = 0; trial < 80; ++trial) {
    const PlaceModel model = sampler.random_place_model(groups);
    const LabelSet s = finite_support_bound(model);
    const ShaGroup sha_s = sha_of_model(model, s);
    for (const LabelSet& t : all_subsets(model.labels())) {
      const ShaGroup sha_t = sha_of_model(model, t);
      ASSERT_TRUE(contained(sha_t, sha_s));
      bool meets = false;
      for (const auto& l : t) meets = meets || s.count(l);
      if (!meets) ASSERT_TRUE(contained(sha_t, sha_of_model(model, {})));
      for (const LabelSet& u : all_subsets(t)) ASSERT_TRUE(contained(sha_of_model(model, u), sha_t));
    }
  }
}

TEST(GrunwaldWang, Examples) {
  const GwDecision eight = gw_decision(8, {2});
  EXPECT_EQ(eight.kernel_order, 2);
  ASSERT_TRUE(eight.witness.has_value());
  EXPECT_EQ(*eight.witness, 16);
  EXPECT_TRUE(eight.check->ok());
  EXPECT_EQ(gw_decision(8, {3, 5}).kernel_order, 1);
  for (const auto& t : std::vector<std::set<std::uint64_t>>{{}, {2}, {3}, {2, 3}}) EXPECT_EQ(gw_decision(6, t).kernel_order, 1);
  EXPECT_THROW(gw_decision(1, {}), InvalidInput);
  EXPECT_THROW(gw_decision(8, {4}), InvalidInput);
  const GwDecision abstract = gw_decision(16, {3, 7}, std::set<std::uint64_t>{3, 7});
  EXPECT_EQ(abstract.kernel_order, 2);
  EXPECT_FALSE(abstract.witness.has_value());
}

TEST(GrunwaldWang, WitnessesAcrossN) {
  for (std::int64_t n = 2; n <= 32; ++n) {
    const GwDecision d = gw_decision(n, {2}, std::nullopt, 200);
    EXPECT_EQ(d.kernel_order, n % 8 == 0 ? 2 : 1) << n;
    if (d.witness) EXPECT_EQ(*d.witness, num::pow(Rational(2), n / 2));
  }
}

TEST(WeakApproximation, Verdicts) {
  const PlaceModel mu8 = models::mu8_model();
  const auto chi = models::mu8_character();
  const WeakApproxVerdict empty = weak_approx_verdict(mu8, chi, {});
  EXPECT_TRUE(empty.surjective);
  const WeakApproxVerdict at2 = weak_approx_verdict(mu8, chi, {"2"});
  EXPECT_FALSE(at2.surjective);
  EXPECT_TRUE(at2.obstruction.has_value());
  EXPECT_TRUE(weak_approx_verdict(mu8, chi, {"inf"}).surjective);
  for (int g = 0; g < 4; ++g) EXPECT_TRUE(at2.dual.acts_as_scalar(g, 1));
}

TEST(WeakApproximation, Mu2Witnesses) {
  const GroupTable g = models::mu2_model().module().group();
  const PlaceModel mu2(GModule::trivial(g, FinAb({2})),
                       {{"3", {0, models::unit_index(3)}}, {"5", {0, models::unit_index(5)}},
                        {"7", {0, models::unit_index(7)}}, {"2", {0, 1, 2, 3}}});
  const auto chi = CyclotomicData::trivial(g, 2);
  for (const LabelSet& t : std::vector<LabelSet>{{"3"}, {"5"}, {"3", "7"}, {"3", "5", "7"}}) {
    const WeakApproxVerdict w = weak_approx_verdict(mu2, chi, t);
    ASSERT_TRUE(w.surjective);
    ASSERT_TRUE(w.witness.has_value());
    for (const auto& [place, target] : w.targets) EXPECT_TRUE(is_nth_power(*w.witness * target, 2, place));
  }
}
