#include <gtest/gtest.h>

#include "revlab/fixtures.hpp"
#include "revlab/operators.hpp"

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

WorldSet oracle_min(WorldSet cand, const RankedOrder& ord) {
  int best = -1;
  for (World w : cand) {
    const int l = ord.level_of(w);
    if (l >= 0 && (best < 0 || l < best)) best = l;
  }
  WorldSet out;
  for (World w : cand) {
    if (best >= 0 && ord.level_of(w) == best) out |= WorldSet::single(w);
  }
  return out;
}

WorldSet oracle_dl(const EpistemicState& st, WorldSet alpha) {
  return alpha.intersects(st.scope()) ? oracle_min(alpha, st.order()) : st.bel();
}

// Expected posterior preorder: worlds in `front` come first, ties broken by the prior order.
bool front_leq(const RankedOrder& prior, WorldSet front, World a, World b) {
  const bool fa = front.contains(a), fb = front.contains(b);
  if (fa != fb) return fa;
  return prior.leq(a, b);
}

}  // namespace

TEST(Equations, DlMatchesOracle) {
  for (const auto& st : faithful2().states()) {
    for (std::uint64_t a = 0; a < 16; ++a) ASSERT_EQ(dl_revise_beliefs(st, WorldSet(a)), oracle_dl(st, WorldSet(a)));
  }
}

TEST(Equations, Preconditions) {
  const Signature& sig = sig2();
  const RankedOrder ord(std::vector<WorldSet>{WorldSet(0b0010), WorldSet(0b0100)});
  const EpistemicState not_clf(WorldSet(0b1010), ord);
  EXPECT_THROW(cl_revise_beliefs(not_clf, WorldSet(1)), PreconditionError);
  EXPECT_THROW(agm_revise_beliefs(not_clf, WorldSet(1), sig), PreconditionError);
  EXPECT_THROW(il_revise_beliefs(WorldSet(0b0011), EpistemicState(WorldSet(0b0010), ord), WorldSet(1)),
               PreconditionError);
  EXPECT_EQ(il_revise_beliefs(WorldSet(0b0110), not_clf, WorldSet(0b0101)), WorldSet(0b0100));
}

TEST(Equations, AgmOnFullOrders) {
  const Signature& sig = sig2();
  const StateUniverse universe = enumerate_states(sig, {Assignment::Fa, false, false});
  for (const auto& st : universe.states()) {
    for (std::uint64_t a = 0; a < 16; ++a) {
      EXPECT_EQ(agm_revise_beliefs(st, WorldSet(a), sig), oracle_min(WorldSet(a), st.order()));
    }
    EXPECT_TRUE(agm_revise_beliefs(st, WorldSet(), sig).empty());
  }
}

TEST(Policies, FailureLeavesStateAlone) {
  for (const UpdatePolicy& p : UpdatePolicy::all()) {
    const RevisionOperator op = RevisionOperator::dl(sig2(), p);
    for (const auto& st : faithful2().states()) {
      const WorldSet outside = sig2().all_worlds() - st.scope();
      for (std::uint64_t a = 0; a < 16; ++a) {
        if (!WorldSet(a).subset_of(outside)) continue;
        EXPECT_EQ(op.apply(st, WorldSet(a)), st);
      }
    }
  }
}

TEST(Policies, OrderAndScopeRules) {
  for (const UpdatePolicy& p : UpdatePolicy::all()) {
    const RevisionOperator op = RevisionOperator::dl(sig2(), p);
    for (const auto& st : faithful2().states()) {
      for (std::uint64_t a = 1; a < 16; ++a) {
        const WorldSet alpha(a);
        if (!alpha.intersects(st.scope())) continue;
        const WorldSet bel = oracle_min(alpha, st.order());
        const EpistemicState post = op.apply(st, alpha);
        ASSERT_EQ(post.bel(), bel);
        WorldSet scope = st.scope();
        if (p.scope == ScopeRule::Doc) scope = scope & alpha;
        if (p.scope == ScopeRule::ResultOnly) scope = bel;
        ASSERT_EQ(post.scope(), scope) << p.name();
        WorldSet front;
        if (p.order == OrderRule::Lex) front = alpha;
        if (p.order == OrderRule::Natural) front = bel;
        // Keep may need the belief pushed to the bottom; the other rules already put it there.
        if (p.order == OrderRule::Keep) front = bel;
        const bool keep_untouched = p.order == OrderRule::Keep && oracle_min(scope, st.order()) == bel;
        for (World x : scope) {
          for (World y : scope) {
            const bool want = keep_untouched ? st.order().leq(x, y) : front_leq(st.order(), front, x, y);
            ASSERT_EQ(post.order().leq(x, y), want) << p.name();
          }
        }
      }
    }
  }
}

TEST(Policies, PosteriorsStayFaithful) {
  for (const UpdatePolicy& p : UpdatePolicy::all()) {
    const RevisionOperator op = RevisionOperator::dl(sig2(), p);
    for (const auto& st : faithful2().states()) {
      for (std::uint64_t a = 0; a < 16; ++a) EXPECT_TRUE(check_faithful_limited(op.apply(st, WorldSet(a))));
    }
  }
}

TEST(Policies, RestrictedFamilies) {
  EXPECT_THROW(RevisionOperator::agm(sig2(), {OrderRule::Lex, ScopeRule::Doc}), std::invalid_argument);
  EXPECT_THROW(RevisionOperator::il(sig2(), WorldSet(1), {OrderRule::Lex, ScopeRule::ResultOnly}),
               std::invalid_argument);
  EXPECT_THROW(RevisionOperator::il(sig2(), WorldSet(), {}), std::invalid_argument);
  EXPECT_EQ(RevisionOperator::il(sig2(), WorldSet(0b0110), {OrderRule::Lex, ScopeRule::Keep}).name(),
            "il{01 10}[lex,keep]");
  EXPECT_EQ(RevisionOperator::dl(sig2(), {OrderRule::Natural, ScopeRule::ResultOnly}).name(),
            "dl[natural,result_only]");
}

TEST(Fixtures, KarlTrace) {
  const Signature sig = karl_signature();
  const RevisionOperator op = karl_operator();
  const EpistemicState s1 = op.apply(karl_state(), models_of("t", sig));
  EXPECT_EQ(s1.bel(), WorldSet::single(0b001));
  EXPECT_EQ(s1.scope(), WorldSet::single(0b001));
  const EpistemicState s2 = op.apply(s1, models_of("o", sig));
  EXPECT_EQ(s2.bel(), WorldSet::single(0b001));
  EXPECT_EQ(s2, s1);
}

TEST(Fixtures, Fig1Cells) {
  const RevisionOperator op = fig1_operator();
  const Signature sig = fig1_signature();
  EXPECT_EQ(op.apply(fig1_state1(), models_of("a", sig)).bel(), WorldSet::single(0b10));
  EXPECT_EQ(op.apply(fig1_state1(), models_of("a & b", sig)).bel(), WorldSet(0b1010));
  EXPECT_EQ(op.apply(fig1_state2(), models_of("a & b", sig)).bel(), WorldSet::single(0b00));
  EXPECT_TRUE(repro_karl().ok);
  EXPECT_EQ(repro_karl().checked, 2u);
  EXPECT_TRUE(repro_fig1().ok);
  EXPECT_EQ(repro_fig1().checked, 5u);
  EXPECT_THROW(repro("nope"), std::invalid_argument);
}

TEST(Extensional, TabulatedOperatorAgrees) {
  auto u = std::make_shared<const StateUniverse>(faithful2());
  const RevisionOperator op = RevisionOperator::dl(sig2(), {OrderRule::Lex, ScopeRule::Doc});
  const RevisionOperator ext = RevisionOperator::extensional(tabulate(op, u));
  EXPECT_EQ(ext.name(), "extensional");
  for (const auto& st : u->states()) {
    for (std::uint64_t a = 0; a < 16; ++a) {
      ASSERT_EQ(ext.apply(st, WorldSet(a)), op.apply(st, WorldSet(a)));
      ASSERT_EQ(ext.revise(st, WorldSet(a)), op.revise(st, WorldSet(a)));
    }
  }
  const RankedOrder ord(std::vector<WorldSet>{WorldSet(0b0001), WorldSet(0b1000)});
  EXPECT_THROW(ext.revise(EpistemicState(WorldSet(0b1000), ord), WorldSet(1)), StateError);
}

TEST(Reconstruction, RecoversTheAssignment) {
  const RevisionOperator op = RevisionOperator::dl(sig2());
  for (const auto& st : faithful2().states()) {
    const LimitedAssignment la = canonical_assignment(op, st, faithful2());
    ASSERT_EQ(la.scope, st.scope());
    ASSERT_EQ(la.order, st.order());
  }
}

TEST(Reconstruction, RejectsCyclicChoices) {
  // A table whose pair choices cycle on 00 < 01 < 10 < 00 cannot come from a weak order.
  auto u = std::make_shared<const StateUniverse>(faithful2());
  const RevisionOperator op = RevisionOperator::dl(sig2());
  ExtensionalTable t = tabulate(op, u);
  const RankedOrder flat(std::vector<WorldSet>{WorldSet(0b0111)});
  const EpistemicState st(WorldSet(), flat);
  const std::size_t id = *u->find(st);
  auto target_with_bel = [&](WorldSet bel) {
    for (std::size_t i = 0; i < u->size(); ++i) {
      if ((*u)[i].bel() == bel) return static_cast<std::uint32_t>(i);
    }
    return std::uint32_t{0};
  };
  t.set_target(id, WorldSet(0b0011), target_with_bel(WorldSet(0b0001)));
  t.set_target(id, WorldSet(0b0110), target_with_bel(WorldSet(0b0010)));
  t.set_target(id, WorldSet(0b0101), target_with_bel(WorldSet(0b0100)));
  const RevisionOperator ext = RevisionOperator::extensional(std::move(t));
  EXPECT_THROW(canonical_assignment(ext, st, *u), ReconstructionError);
}

TEST(OperatorFiles, RoundTrip) {
  const Signature sig = Signature::parse("a b");
  std::vector<RevisionOperator> ops = {
      RevisionOperator::dl(sig, {OrderRule::Lex, ScopeRule::Doc}),
      RevisionOperator::cl(sig),
      RevisionOperator::agm(sig, {OrderRule::Natural, ScopeRule::Keep}),
      RevisionOperator::il(sig, WorldSet(0b0110), {OrderRule::Lex, ScopeRule::Keep}),
  };
  for (const auto& op : ops) {
    const RevisionOperator back = parse_operator(dump_operator(op), Signature());
    EXPECT_EQ(back.name(), op.name());
    EXPECT_EQ(back.signature(), sig);
  }
  const Signature one = Signature::with_atoms(1);
  auto u = std::make_shared<const StateUniverse>(enumerate_states(one, {Assignment::Faithful, false, false}));
  const RevisionOperator ext = RevisionOperator::extensional(tabulate(RevisionOperator::dl(one), u));
  const RevisionOperator back = parse_operator(dump_operator(ext), Signature());
  ASSERT_EQ(back.family(), Family::Extensional);
  EXPECT_EQ(back.table()->targets(), ext.table()->targets());
  EXPECT_EQ(back.table()->universe().states(), u->states());
}

TEST(OperatorFiles, Errors) {
  const Signature sig = Signature::parse("a b");
  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      parse_operator(text, sig);
    } catch (const OperatorParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("order_rule: lex\n"), 1u);
  EXPECT_EQ(line_of("family: dl\norder_rule: sideways\n"), 2u);
  EXPECT_EQ(line_of("family: dl\ncolour: red\n"), 2u);
  EXPECT_EQ(line_of("family: il\norder_rule: lex\n"), 1u);
  EXPECT_EQ(line_of("family: quantum\n"), 1u);
  EXPECT_EQ(parse_operator("family: dl\n", sig).signature(), sig);
  const std::string partial = "family: extensional\nsig: p\nstate 0:\n  bel: 1\n  scope: 1\n  order: [1]\ntable:\n"
                              "(0, 0) -> 0\n";
  EXPECT_GT(line_of(partial), 0u);
}
