#include <gtest/gtest.h>

#include "revlab/classify.hpp"
#include "revlab/fixtures.hpp"

using namespace revlab;

namespace {

const Signature& sig2() {
  static const Signature sig = Signature::with_atoms(2);
  return sig;
}

const StateUniverse& faithful2() {
  static const StateUniverse u = enumerate_states(sig2(), {Assignment::Faithful, false, false});
  return u;
}

}  // namespace

TEST(FormulaClassSet, Basics) {
  FormulaClassSet x(sig2());
  EXPECT_EQ(x.universe_size(), 16u);
  x.insert(WorldSet(3));
  x.insert(WorldSet(5));
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.classes(), (std::vector<WorldSet>{WorldSet(3), WorldSet(5)}));
  FormulaClassSet y = x;
  y.erase(WorldSet(5));
  EXPECT_TRUE(y.subset_of(x));
  EXPECT_FALSE(x.subset_of(y));
}

TEST(Scope, SyntacticEqualsModelSetForm) {
  const RevisionOperator op = RevisionOperator::dl(sig2());
  for (const auto& st : faithful2().states()) {
    const FormulaClassSet syn = syntactic_scope(op, st);
    for (std::uint64_t c = 0; c < 16; ++c) {
      const bool want = st.bel().subset_of(WorldSet(c)) || WorldSet(c).intersects(st.scope());
      ASSERT_EQ(syn.contains(WorldSet(c)), want);
    }
    ASSERT_EQ(syn, semantic_scope(st, sig2()));
  }
}

TEST(Latent, MatchesScopeInclusion) {
  const RevisionOperator op = RevisionOperator::dl(sig2());
  for (const auto& st : faithful2().states()) {
    const Classifier cls(revision_table(op, st));
    for (std::uint64_t c = 0; c < 16; ++c) {
      const WorldSet a(c);
      const bool want = !a.empty() && a.subset_of(st.scope());
      ASSERT_EQ(cls.latent(a), want);
      ASSERT_EQ(cls.reasonable(a), want);
    }
  }
}

TEST(Latent, SingletonSplitByBelief) {
  const RevisionOperator op = RevisionOperator::dl(sig2());
  for (const auto& st : faithful2().states()) {
    const RevisionTable t = revision_table(op, st);
    for (World w = 0; w < 4; ++w) {
      const WorldSet single = WorldSet::single(w);
      if (st.bel().contains(w)) {
        ASSERT_EQ(satisfies_S1(t, single), st.scope().contains(w));
      } else {
        ASSERT_EQ(satisfies_S2(t, single), st.scope().contains(w));
      }
    }
  }
}

TEST(Latent, KarlExamples) {
  const RevisionTable t = revision_table(karl_operator(), karl_state());
  EXPECT_TRUE(is_latent(t, WorldSet::single(0b100)));
  EXPECT_FALSE(is_latent(t, WorldSet::single(0b011)));
  EXPECT_TRUE(satisfies_S2(t, WorldSet::single(0b100)));
  EXPECT_FALSE(satisfies_S2(t, WorldSet::single(0b111)));
  EXPECT_TRUE(is_reasonable(t, WorldSet(0b10110)));
  EXPECT_FALSE(is_reasonable(t, WorldSet()));
  EXPECT_FALSE(is_latent(t, WorldSet()));
}

TEST(Latent, EmptyBeliefOutsideScopeFailsS2) {
  const RevisionOperator op = RevisionOperator::dl(sig2());
  const EpistemicState st(WorldSet(), RankedOrder(std::vector<WorldSet>{WorldSet(0b0001)}));
  const RevisionTable t = revision_table(op, st);
  EXPECT_FALSE(satisfies_S2(t, WorldSet::single(2)));
  EXPECT_TRUE(satisfies_S2(t, WorldSet::single(0)));
}

TEST(Inherence, AgmSingletonsOnUnbiasedUniverse) {
  const StateUniverse fa = enumerate_states(sig2(), {Assignment::Fa, true, false});
  const InherenceInfo info(RevisionOperator::agm(sig2()), fa);
  std::size_t inherent = 0, immanent = 0;
  for (std::uint64_t c = 1; c < 16; ++c) {
    inherent += info.inherent(WorldSet(c)) ? 1 : 0;
    immanent += info.immanent(WorldSet(c)) ? 1 : 0;
    EXPECT_EQ(info.inherent(WorldSet(c)), WorldSet(c).size() == 1);
  }
  EXPECT_EQ(inherent, 4u);
  EXPECT_EQ(immanent, 15u);
  EXPECT_FALSE(info.inherent(WorldSet()));
}

TEST(Inherence, CredibilityOnlyBeliefsHasNone) {
  const StateUniverse clf = enumerate_states(sig2(), {Assignment::Clf, false, true});
  const StateUniverse tight =
      filter_universe(clf, clf.flags(), [](const EpistemicState& st) { return st.scope() == st.bel(); });
  const InherenceInfo info(RevisionOperator::cl(sig2()), tight);
  for (std::uint64_t c = 0; c < 16; ++c) {
    EXPECT_FALSE(info.inherent(WorldSet(c)));
    EXPECT_FALSE(info.immanent(WorldSet(c)));
  }
}

TEST(Closure, WitnessForMeetingSets) {
  FormulaClassSet x(sig2());
  const WorldSet m(0b0110);
  for (std::uint64_t c = 0; c < 16; ++c) {
    if (WorldSet(c).intersects(m)) x.insert(WorldSet(c));
  }
  EXPECT_TRUE(check_ssc(x));
  EXPECT_TRUE(check_dc(x));
  ASSERT_TRUE(find_witness_M(x, sig2()).has_value());
  EXPECT_EQ(*find_witness_M(x, sig2()), m);
}

TEST(Closure, Violations) {
  FormulaClassSet up(sig2());
  up.insert(WorldSet(0b0011));
  EXPECT_FALSE(check_ssc(up));
  FormulaClassSet no_dc(sig2());
  for (std::uint64_t c = 0; c < 16; ++c) {
    if (WorldSet(0b0011).subset_of(WorldSet(c))) no_dc.insert(WorldSet(c));
  }
  EXPECT_TRUE(check_ssc(no_dc));
  EXPECT_FALSE(check_dc(no_dc));
  EXPECT_FALSE(find_witness_M(no_dc, sig2()).has_value());
}
