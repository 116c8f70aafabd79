#include <gtest/gtest.h>

#include <random>

#include "revlab/states.hpp"

using namespace revlab;

namespace {

std::uint64_t binom(std::size_t n, std::size_t k) {
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

std::uint64_t fubini(std::size_t n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t k = 1; k <= m; ++k) a[m] += binom(m, k) * a[m - k];
  }
  return a[n];
}

// Closed forms over W worlds. Faithful: for each scope of size k and order on
// it, bel ∩ scope is either ∅ or level 0, and bel outside the scope is free.
std::uint64_t faithful_count(std::size_t worlds) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= worlds; ++k) total += binom(worlds, k) * fubini(k) * 2 * (1ULL << (worlds - k));
  return total;
}

std::uint64_t clf_count(std::size_t worlds) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= worlds; ++k) total += binom(worlds, k) * fubini(k);
  return total;
}

}  // namespace

TEST(States, ConstructionChecksScope) {
  const RankedOrder ord(std::vector<WorldSet>{WorldSet(0b10)});
  EXPECT_NO_THROW(EpistemicState(WorldSet(0b10), WorldSet(0b10), ord));
  EXPECT_THROW(EpistemicState(WorldSet(0b10), WorldSet(0b11), ord), StateError);
}

TEST(States, AssignmentPredicates) {
  const Signature sig = Signature::parse("a b");
  const RankedOrder ord(std::vector<WorldSet>{WorldSet(0b0010), WorldSet(0b0100)});
  EXPECT_TRUE(check_faithful_limited(EpistemicState(WorldSet(0b1010), ord)));
  EXPECT_TRUE(check_faithful_limited(EpistemicState(WorldSet(0b1001), ord)));
  EXPECT_FALSE(check_faithful_limited(EpistemicState(WorldSet(0b0100), ord)));
  EXPECT_TRUE(check_clf(EpistemicState(WorldSet(0b0010), ord)));
  EXPECT_FALSE(check_clf(EpistemicState(WorldSet(0b1010), ord)));
  EXPECT_FALSE(check_fa(EpistemicState(WorldSet(0b0010), ord), sig));
  const RankedOrder full(std::vector<WorldSet>{WorldSet(0b0001), WorldSet(0b1110)});
  EXPECT_TRUE(check_fa(EpistemicState(WorldSet(0b0001), full), sig));
  EXPECT_FALSE(check_fa(EpistemicState(WorldSet(0b0011), full), sig));
}

TEST(States, UniverseSizesMatchClosedForms) {
  for (std::size_t n = 1; n <= 2; ++n) {
    const Signature sig = Signature::with_atoms(n);
    const std::size_t w = sig.world_count();
    EXPECT_EQ(enumerate_states(sig, {Assignment::Faithful, false, false}).size(), faithful_count(w));
    EXPECT_EQ(enumerate_states(sig, {Assignment::Clf, false, false}).size(), clf_count(w));
    EXPECT_EQ(enumerate_states(sig, {Assignment::Fa, false, false}).size(), fubini(w));
    EXPECT_EQ(enumerate_states(sig, {Assignment::Any, false, false}).size(), (1ULL << w) * clf_count(w));
  }
  EXPECT_EQ(faithful_count(4), 566u);
}

TEST(States, GlobalConsistencyDropsEmptyBeliefs) {
  const Signature sig = Signature::with_atoms(2);
  const StateUniverse all = enumerate_states(sig, {Assignment::Faithful, false, false});
  const StateUniverse gc = enumerate_states(sig, {Assignment::Faithful, false, true});
  std::size_t empty = 0;
  for (const auto& st : all.states()) empty += st.bel().empty() ? 1 : 0;
  EXPECT_EQ(gc.size(), all.size() - empty);
  for (const auto& st : gc.states()) EXPECT_FALSE(st.bel().empty());
}

TEST(States, StreamingAgreesWithMaterialized) {
  const Signature sig = Signature::with_atoms(2);
  const UniverseFlags flags{Assignment::Faithful, false, false};
  const StateUniverse u = enumerate_states(sig, flags);
  std::size_t i = 0;
  for_each_state(sig, flags, [&](const EpistemicState& st) { EXPECT_EQ(st, u[i++]); });
  EXPECT_EQ(i, u.size());
  for (std::size_t id = 0; id < u.size(); ++id) EXPECT_EQ(u.find(u[id]), id);
  EXPECT_THROW(enumerate_states(Signature::with_atoms(3), flags), SignatureError);
}

TEST(States, Unbiased) {
  const Signature sig = Signature::with_atoms(2);
  EXPECT_TRUE(enumerate_states(sig, {Assignment::Faithful, true, false}).is_unbiased());
  EXPECT_TRUE(enumerate_states(sig, {Assignment::Fa, true, false}).is_unbiased());
  const StateUniverse u = enumerate_states(sig, {Assignment::Faithful, false, false});
  const StateUniverse one = filter_universe(u, u.flags(), [](const EpistemicState& st) { return st.bel() == WorldSet(1); });
  EXPECT_FALSE(one.is_unbiased());
}

TEST(States, RandomStatesRespectFlags) {
  std::mt19937_64 rng(9);
  const Signature sig = Signature::with_atoms(3);
  for (int i = 0; i < 300; ++i) {
    EXPECT_TRUE(check_faithful_limited(random_state(sig, {Assignment::Faithful, false, false}, rng)));
    EXPECT_TRUE(check_clf(random_state(sig, {Assignment::Clf, false, false}, rng)));
    EXPECT_TRUE(check_fa(random_state(sig, {Assignment::Fa, false, false}, rng), sig));
    EXPECT_FALSE(random_state(sig, {Assignment::Faithful, false, true}, rng).bel().empty());
  }
}

TEST(StateFiles, RoundTrip) {
  const Signature sig = Signature::with_atoms(2);
  const StateUniverse universe = enumerate_states(sig, {Assignment::Any, false, false});
  for (const auto& st : universe.states()) {
    const ParsedState back = parse_state(dump_state(st, sig));
    ASSERT_EQ(back.sig, sig);
    ASSERT_EQ(back.state, st);
  }
}

TEST(StateFiles, ErrorsCarryLineNumbers) {
  const std::string bad_order = "sig: a b\nbel: 01\nscope: 01 10\norder: [01 | 11]\n";
  try {
    parse_state(bad_order);
    FAIL();
  } catch (const StateParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    parse_state("sig: a b\nbel: 012\nscope: 01\norder: [01]\n");
    FAIL();
  } catch (const StateParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_state("sig: a b\nbel: 01\n"), StateParseError);
}

TEST(StateFiles, CommentsAndEmptyBeliefs) {
  const ParsedState ps = parse_state("# comment\nsig: a b\n\nbel:\nscope: 00\norder: [00]\n");
  EXPECT_TRUE(ps.state.bel().empty());
  EXPECT_EQ(ps.state.scope(), WorldSet(1));
}

TEST(Assignment, Names) {
  for (Assignment a : {Assignment::Any, Assignment::Faithful, Assignment::Clf, Assignment::Fa}) {
    EXPECT_EQ(parse_assignment(to_string(a)), a);
  }
  EXPECT_THROW(parse_assignment("bogus"), std::invalid_argument);
}
