#include <benchmark/benchmark.h>

#include <random>

#include "revlab/classify.hpp"
#include "revlab/logic.hpp"
#include "revlab/verify.hpp"

namespace {

using namespace revlab;

void BM_ParseAndEvaluate(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(static_cast<std::size_t>(state.range(0)));
  const std::string text = "(p0 -> p1) & !(p1 <-> p0) | p0";
  for (auto _ : state) benchmark::DoNotOptimize(models_of(text, sig));
}
BENCHMARK(BM_ParseAndEvaluate)->Arg(2)->Arg(4)->Arg(6);

void BM_EnumerateOrders(benchmark::State& state) {
  const WorldSet dom = WorldSet::full(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t n = 0;
    for_each_order(dom, [&](const RankedOrder&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateOrders)->DenseRange(2, 6);

void BM_FaithfulUniverse(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_states(sig, {}).size());
}
BENCHMARK(BM_FaithfulUniverse);

void BM_Revise(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(3);
  std::mt19937_64 rng(1);
  const EpistemicState st = random_state(sig, {}, rng);
  const RevisionOperator op = RevisionOperator::dl(sig, {OrderRule::Lex, ScopeRule::Doc});
  std::uint64_t c = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(op.apply(st, WorldSet(c)));
    c = (c + 1) & 0xff;
  }
}
BENCHMARK(BM_Revise);

void BM_RevisionTableClassify(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  const EpistemicState st = random_state(sig, {}, rng);
  const RevisionOperator op = RevisionOperator::dl(sig);
  for (auto _ : state) {
    const Classifier cls(revision_table(op, st));
    benchmark::DoNotOptimize(cls.reasonable(st.scope()));
  }
}
BENCHMARK(BM_RevisionTableClassify)->Arg(2)->Arg(3);

void BM_CheckPostulate(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(2);
  const StateUniverse u = enumerate_states(sig, {});
  const RevisionOperator op = RevisionOperator::dl(sig);
  const auto id = static_cast<PostulateId>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_postulate(op, u, id).instances);
  state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_CheckPostulate)
    ->Arg(static_cast<int>(PostulateId::DL1))
    ->Arg(static_cast<int>(PostulateId::DL7))
    ->Unit(benchmark::kMillisecond);

void BM_Equivalence(benchmark::State& state) {
  const Signature sig = Signature::with_atoms(2);
  const StateUniverse u = enumerate_states(sig, {});
  const RevisionOperator op = RevisionOperator::dl(sig, {OrderRule::Lex, ScopeRule::Keep});
  CheckOptions opts;
  opts.consistent_only = true;
  for (auto _ : state) benchmark::DoNotOptimize(verify_equivalence(op, u, TheoremId::P11, opts).instances);
}
BENCHMARK(BM_Equivalence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
