#pragma once

// Built-in worked examples and the exhaustive lemma suites behind `revlab repro`.

#include <string>
#include <string_view>
#include <vector>

#include "revlab/logic.hpp"
#include "revlab/operators.hpp"
#include "revlab/states.hpp"

namespace revlab {

// The camel example: worlds over z o t.
Signature karl_signature();
EpistemicState karl_state();
/// State file text of karl_state().
std::string karl_state_text();
/// (keep, doc): the scope shrinks to the accepted input.
RevisionOperator karl_operator();

// The inherence-limited example over a b with fixed scope {01, 10}.
Signature fig1_signature();
WorldSet fig1_scope();
EpistemicState fig1_state1();
EpistemicState fig1_state2();
RevisionOperator fig1_operator();

struct ReproResult {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> lines;
  /// First failed cell, empty when ok.
  std::string first_mismatch;

  void expect(bool cond, const std::string& what);
};

ReproResult repro_karl();
ReproResult repro_fig1();
ReproResult repro_lemmas();
/// karl | fig1 | lemmas; throws std::invalid_argument otherwise.
ReproResult repro(std::string_view name);

struct LemmaCount {
  std::size_t cases = 0;
  std::size_t failures = 0;
};

/// For every X among the consistent classes: SSC ∧ DC ⟺ a witness M exists.
LemmaCount lemma_ssc_dc(const Signature& sig);
/// trichotomy_check over every order on every nonempty domain ⊆ Ω and all A, B ⊆ Ω.
LemmaCount lemma_trichotomy(const Signature& sig);

}  // namespace revlab
