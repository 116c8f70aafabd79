#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "json.hpp"
#include "revlab/fixtures.hpp"
#include "revlab/verify.hpp"

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

bool suite_holds(const RevisionOperator& op, const StateUniverse& u, const std::vector<PostulateId>& ids,
                 const CheckOptions& opts = {}) {
  for (PostulateId p : ids) {
    if (!check_postulate(op, u, p, opts).holds()) return false;
  }
  return true;
}

}  // namespace

TEST(Ids, NamesRoundTrip) {
  for (PostulateId p : all_postulate_ids()) EXPECT_EQ(parse_postulate_id(to_string(p)), p);
  for (ConditionId c : all_condition_ids()) EXPECT_EQ(parse_condition_id(to_string(c)), c);
  for (TheoremId t : all_theorem_ids()) EXPECT_EQ(parse_theorem_id(to_string(t)), t);
  EXPECT_EQ(all_postulate_ids().size(), 38u);
  EXPECT_EQ(all_theorem_ids().size(), 18u);
  EXPECT_FALSE(parse_postulate_id("DL9"));
  EXPECT_FALSE(parse_theorem_id("P99"));
  EXPECT_EQ(dl_postulates().size(), 7u);
  EXPECT_EQ(cl_postulates().size(), 6u);
  EXPECT_EQ(il_postulates().size(), 7u);
  EXPECT_TRUE(is_binary(PostulateId::DL7));
  EXPECT_FALSE(is_binary(PostulateId::DL1));
  EXPECT_TRUE(is_two_step(PostulateId::DP1));
}

TEST(Verdicts, KeepFirstCounterexamples) {
  const EpistemicState st(WorldSet(), RankedOrder(std::vector<WorldSet>{WorldSet(1)}));
  Verdict v;
  v.max_kept = 2;
  for (int i = 0; i < 5; ++i) v.record({std::nullopt, st, {}, "x", "", ""});
  EXPECT_EQ(v.violations, 5u);
  EXPECT_EQ(v.counterexamples.size(), 2u);
  Verdict w;
  w.max_kept = 3;
  w.instances = 1;
  w.merge(v);
  EXPECT_EQ(w.violations, 5u);
  EXPECT_EQ(w.counterexamples.size(), 2u);
  EXPECT_FALSE(w.holds());
}

TEST(Postulates, DlOperatorPassesDlSuite) {
  EXPECT_TRUE(suite_holds(RevisionOperator::dl(sig2(), {OrderRule::Lex, ScopeRule::Doc}), faithful2(),
                          dl_postulates()));
}

TEST(Postulates, DlSuiteImpliesCl5) {
  const Verdict v = check_postulate(RevisionOperator::dl(sig2()), faithful2(), PostulateId::CL5);
  EXPECT_TRUE(v.holds());
}

TEST(Postulates, ClfOperatorPassesDlSuite) {
  const StateUniverse clf = enumerate_states(sig2(), {Assignment::Clf, false, false});
  EXPECT_TRUE(suite_holds(RevisionOperator::cl(sig2()), clf, dl_postulates()));
  EXPECT_TRUE(suite_holds(RevisionOperator::cl(sig2()), clf, cl_postulates()));
}

TEST(Postulates, BeliefOutsideScopeBreaksClSuite) {
  const StateUniverse u = filter_universe(faithful2(), faithful2().flags(),
                                          [](const EpistemicState& st) { return !st.bel().subset_of(st.scope()); });
  ASSERT_GT(u.size(), 0u);
  EXPECT_FALSE(suite_holds(RevisionOperator::dl(sig2()), u, cl_postulates()));
}

TEST(Postulates, PreconditionFailuresAreCounterexamples) {
  const Verdict v = check_postulate(RevisionOperator::cl(sig2()), faithful2(), PostulateId::CL1);
  EXPECT_FALSE(v.holds());
  EXPECT_EQ(v.counterexamples.front().clause, "precondition");
}

TEST(Postulates, SampledPairsAreSeeded) {
  const Signature sig3 = Signature::with_atoms(3);
  std::mt19937_64 rng(4);
  std::vector<EpistemicState> states;
  for (int i = 0; i < 5; ++i) states.push_back(random_state(sig3, {}, rng));
  const StateUniverse u(sig3, {}, states);
  CheckOptions opts;
  opts.pair_samples = 50;
  const Verdict a = check_postulate(RevisionOperator::dl(sig3), u, PostulateId::DL7, opts);
  const Verdict b = check_postulate(RevisionOperator::dl(sig3), u, PostulateId::DL7, opts);
  EXPECT_TRUE(a.holds());
  EXPECT_EQ(a.instances, 5u * 50u);
  EXPECT_EQ(a.instances, b.instances);
}

TEST(Conditions, AcceptedWorlds) {
  for (const auto& st : faithful2().states()) {
    WorldSet want = st.scope();
    for (World w = 0; w < 4; ++w) {
      if (st.bel().subset_of(WorldSet::single(w))) want |= WorldSet::single(w);
    }
    ASSERT_EQ(accepted_worlds(st, sig2()), want);
  }
}

TEST(Conditions, FaithfulnessConditions) {
  const RevisionOperator op = RevisionOperator::agm(sig2());
  const StateUniverse universe = enumerate_states(sig2(), {Assignment::Fa, false, false});
  for (const auto& st : universe.states()) {
    const EpistemicState post = op.apply(st, WorldSet(0b0011));
    EXPECT_TRUE(check_condition(st, post, WorldSet(0b0011), ConditionId::FA1, sig2()));
    EXPECT_TRUE(check_condition(st, post, WorldSet(0b0011), ConditionId::FA2, sig2()));
  }
}

TEST(Equivalence, ExactTheoremsOnOnePolicy) {
  CheckOptions opts;
  opts.consistent_only = true;
  const RevisionOperator op = RevisionOperator::dl(sig2(), {OrderRule::Lex, ScopeRule::Keep});
  for (TheoremId t : {TheoremId::P11, TheoremId::P12, TheoremId::P13a, TheoremId::P16, TheoremId::P_DOC}) {
    const Verdict v = verify_equivalence(op, faithful2(), t, opts);
    EXPECT_TRUE(v.holds()) << to_string(t);
    EXPECT_EQ(v.instances, faithful2().size() * 15);
  }
}

TEST(Roundtrip, DlPolicies) {
  for (const UpdatePolicy& p : {UpdatePolicy{}, UpdatePolicy{OrderRule::Natural, ScopeRule::ResultOnly}}) {
    const Verdict v = representation_roundtrip(RevisionOperator::dl(sig2(), p), faithful2(), RoundtripFamily::Dl);
    EXPECT_TRUE(v.holds()) << p.name();
  }
}

TEST(Roundtrip, ExtensionalAndFamilies) {
  auto u = std::make_shared<const StateUniverse>(faithful2());
  const RevisionOperator ext = RevisionOperator::extensional(tabulate(RevisionOperator::dl(sig2()), u));
  EXPECT_TRUE(representation_roundtrip(ext, *u, RoundtripFamily::Dl).holds());
  const StateUniverse fa = enumerate_states(sig2(), {Assignment::Fa, false, true});
  CheckOptions consistent;
  consistent.consistent_only = true;
  EXPECT_FALSE(representation_roundtrip(RevisionOperator::agm(sig2()), fa, RoundtripFamily::Agm).holds());
  EXPECT_TRUE(representation_roundtrip(RevisionOperator::agm(sig2()), fa, RoundtripFamily::Agm, consistent).holds());
  const StateUniverse clf = enumerate_states(sig2(), {Assignment::Clf, false, true});
  EXPECT_TRUE(representation_roundtrip(RevisionOperator::cl(sig2()), clf, RoundtripFamily::Cl).holds());
  const WorldSet omega(0b0110);
  const StateUniverse il = filter_universe(faithful2(), faithful2().flags(),
                                           [&](const EpistemicState& st) { return st.scope() == omega; });
  const RevisionOperator il_op = RevisionOperator::il(sig2(), omega, {OrderRule::Lex, ScopeRule::Keep});
  EXPECT_TRUE(representation_roundtrip(il_op, il, RoundtripFamily::Il).holds());
}

TEST(Roundtrip, MutationsAreDetected) {
  auto u = std::make_shared<const StateUniverse>(faithful2());
  const MutationReport r = mutation_test(RevisionOperator::dl(sig2()), u, 40, 3);
  EXPECT_EQ(r.mutations, 40u);
  EXPECT_GE(r.rate(), 0.9);
  EXPECT_EQ(MutationReport{}.rate(), 0.0);
}

TEST(Separation, IlOperatorFailsCl2) {
  const WorldSet omega(0b0110);
  const StateUniverse gc = enumerate_states(sig2(), {Assignment::Faithful, false, true});
  const StateUniverse il = filter_universe(gc, gc.flags(), [&](const EpistemicState& st) { return st.scope() == omega; });
  const Verdict v =
      check_postulate(RevisionOperator::il(sig2(), omega, {OrderRule::Lex, ScopeRule::Keep}), il, PostulateId::CL2);
  EXPECT_FALSE(v.holds());
  EXPECT_TRUE(suite_holds(RevisionOperator::il(sig2(), omega, {OrderRule::Lex, ScopeRule::Keep}), il,
                          il_postulates()));
}

TEST(Reports, TextFormat) {
  const Verdict pass = check_postulate(RevisionOperator::dl(sig2()), faithful2(), PostulateId::DL1);
  const Verdict fail = check_postulate(RevisionOperator::dl(sig2()), faithful2(), PostulateId::CL2);
  CheckOptions opts;
  opts.seed = 42;
  const std::string text = format_report({pass, fail}, sig2(), ReportFormat::Text, opts, {"reading"});
  EXPECT_EQ(text, format_report({pass, fail}, sig2(), ReportFormat::Text, opts, {"reading"}));
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# seed=42 classes=all");
  std::getline(in, line);
  EXPECT_EQ(line, "# reading");
  const std::regex check(R"(CHECK (\S+) op=(\S+) n=2 instances=(\d+) result=(PASS|FAIL))");
  std::vector<std::string> results;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, check)) results.push_back(m[1].str() + ":" + m[4].str());
  }
  EXPECT_EQ(results, (std::vector<std::string>{"DL1:PASS", "CL2:FAIL"}));
  EXPECT_NE(text.find("  counterexample 1 of "), std::string::npos);
  EXPECT_NE(text.find("      order: ["), std::string::npos);
}

TEST(Reports, JsonFormat) {
  const Verdict fail = check_postulate(RevisionOperator::dl(sig2()), faithful2(), PostulateId::CL2);
  CheckOptions opts;
  opts.seed = 7;
  const auto doc = nlohmann::json::parse(format_report({fail}, sig2(), ReportFormat::Json, opts));
  EXPECT_EQ(doc["seed"], 7);
  EXPECT_EQ(doc["classes"], "all");
  ASSERT_EQ(doc["checks"].size(), 1u);
  EXPECT_EQ(doc["checks"][0]["id"], "CL2");
  EXPECT_EQ(doc["checks"][0]["result"], "FAIL");
  EXPECT_EQ(doc["checks"][0]["violations"], fail.violations);
  EXPECT_FALSE(doc["checks"][0]["counterexamples"].empty());
}

TEST(Reports, ReadingsAreListed) {
  const auto notes = condition_readings();
  EXPECT_GE(notes.size(), 4u);
}
