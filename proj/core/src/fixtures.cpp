#include "revlab/fixtures.hpp"

#include "revlab/classify.hpp"

namespace revlab {

Signature karl_signature() { return Signature::parse("z o t"); }

std::string karl_state_text() {
  return "sig: z o t\n"
         "bel: 010 001 011\n"
         "scope: 100 010 001\n"
         "order: [010 001 | 100]\n";
}

EpistemicState karl_state() { return parse_state(karl_state_text()).state; }

RevisionOperator karl_operator() { return RevisionOperator::dl(karl_signature(), {OrderRule::Keep, ScopeRule::Doc}); }

Signature fig1_signature() { return Signature::parse("a b"); }

WorldSet fig1_scope() { return WorldSet::single(1) | WorldSet::single(2); }

EpistemicState fig1_state1() {
  const Signature sig = fig1_signature();
  return EpistemicState(WorldSet::single(3) | WorldSet::single(1), RankedOrder::parse("[01 | 10]", sig));
}

EpistemicState fig1_state2() {
  return EpistemicState(WorldSet::single(0), RankedOrder::parse("[01 | 10]", fig1_signature()));
}

RevisionOperator fig1_operator() {
  return RevisionOperator::il(fig1_signature(), fig1_scope(), {OrderRule::Lex, ScopeRule::Keep});
}

void ReproResult::expect(bool cond, const std::string& what) {
  ++checked;
  lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  if (!cond && ok) {
    ok = false;
    first_mismatch = what;
  }
}

namespace {

std::string show(const Signature& sig, WorldSet ws) { return "{" + sig.format(ws) + "}"; }

void expect_bel(ReproResult& r, const Signature& sig, const std::string& label, WorldSet got, WorldSet want) {
  r.expect(got == want, label + ": bel " + show(sig, got) + (got == want ? "" : " expected " + show(sig, want)));
}

}  // namespace

ReproResult repro_karl() {
  ReproResult r;
  const Signature sig = karl_signature();
  const RevisionOperator op = karl_operator();
  const EpistemicState st = karl_state();
  const WorldSet t = models_of("t", sig);
  const WorldSet o = models_of("o", sig);
  const EpistemicState s1 = op.apply(st, t);
  expect_bel(r, sig, "karl * t", s1.bel(), models_of("!z & !o & t", sig));
  const EpistemicState s2 = op.apply(s1, o);
  expect_bel(r, sig, "karl * t * o", s2.bel(), models_of("!z & !o & t", sig));
  return r;
}

ReproResult repro_fig1() {
  ReproResult r;
  const Signature sig = fig1_signature();
  const RevisionOperator op = fig1_operator();
  const WorldSet a = models_of("a", sig);
  const WorldSet ab = models_of("a & b", sig);
  const EpistemicState p1 = fig1_state1();
  const EpistemicState p2 = fig1_state2();
  expect_bel(r, sig, "psi1", p1.bel(), models_of("b", sig));
  expect_bel(r, sig, "psi1 / a", op.apply(p1, a).bel(), models_of("a & !b", sig));
  expect_bel(r, sig, "psi1 / (a & b)", op.apply(p1, ab).bel(), models_of("b", sig));
  expect_bel(r, sig, "psi2", p2.bel(), models_of("!a & !b", sig));
  expect_bel(r, sig, "psi2 / (a & b)", op.apply(p2, ab).bel(), models_of("!a & !b", sig));
  return r;
}

LemmaCount lemma_ssc_dc(const Signature& sig) {
  LemmaCount out;
  const std::size_t consistent = class_count(sig) - 1;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << consistent); ++pick) {
    FormulaClassSet x(sig);
    for (std::size_t c = 0; c < consistent; ++c) {
      if ((pick >> c) & 1U) x.insert(WorldSet(c + 1));
    }
    ++out.cases;
    if ((check_ssc(x) && check_dc(x)) != find_witness_M(x, sig).has_value()) ++out.failures;
  }
  return out;
}

LemmaCount lemma_trichotomy(const Signature& sig) {
  LemmaCount out;
  const WorldSet all = sig.all_worlds();
  for (std::uint64_t d = 1; d <= all.mask(); ++d) {
    for (const RankedOrder& ord : enumerate_orders(WorldSet(d))) {
      for (std::uint64_t a = 0; a <= all.mask(); ++a) {
        for (std::uint64_t b = 0; b <= all.mask(); ++b) {
          ++out.cases;
          if (!trichotomy_check(ord, WorldSet(a), WorldSet(b))) ++out.failures;
        }
      }
    }
  }
  return out;
}

ReproResult repro_lemmas() {
  ReproResult r;
  const Signature sig = Signature::with_atoms(2);
  const LemmaCount tri = lemma_trichotomy(sig);
  r.expect(tri.failures == 0, "trichotomy: " + std::to_string(tri.cases) + " cases, " +
                                  std::to_string(tri.failures) + " failures");
  const LemmaCount ssc = lemma_ssc_dc(sig);
  r.expect(ssc.failures == 0, "ssc+dc witness: " + std::to_string(ssc.cases) + " sets, " +
                                  std::to_string(ssc.failures) + " mismatches");
  return r;
}

ReproResult repro(std::string_view name) {
  if (name == "karl") return repro_karl();
  if (name == "fig1") return repro_fig1();
  if (name == "lemmas") return repro_lemmas();
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "' (expected karl, fig1 or lemmas)");
}

}  // namespace revlab
