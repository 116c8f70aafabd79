#pragma once

// Postulate checks, semantic conditions on transitions, per-instance
// equivalence suites, representation round trips and report formatting.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revlab/classify.hpp"
#include "revlab/logic.hpp"
#include "revlab/operators.hpp"
#include "revlab/states.hpp"

namespace revlab {

enum class PostulateId {
  DL1, DL2, DL3, DL4, DL5, DL6, DL7,
  CL1, CL2, CL3, CL4, CL5, CL6,
  IL1, IL2, IL3, IL4, IL5, IL6, IL7,
  DP1, DP2, DP3, DP4,
  CLDP1, CLDP2, CLP, CLCD, CM1, CM2, FC, FR, SC, SR, DOC, COM, DLDP1, DLDP2,
};

enum class ConditionId {
  FA1, FA2, CLF, LimFaithful,
  CR8, CR9, CR10, CR11,
  P9_i, P9_ii, P9_iii,
  P10_i, P10_ii, P10_iii,
  P11_i, P11_ii, P11_iii, P11_iv,
  P12_i, P12_ii, P12_iii, P12_iv,
  SI1, SI2, SD1, SD2,
  P14_a, P14_b, P15_a, P15_b,
  P16_i, P16_ii, P16_iii, P16_iv,
  C_CLCD, C_CM1, C_CM2, C_FC, C_FR, C_SC, C_SR, C_DOC, C_COM,
};

enum class TheoremId {
  P9, P10, P11, P12, P13a, P13b, P14a, P14b, P15a, P15b, P16,
  P_CLCD, P_CM1, P_CM2, P_FCFR, P_SCSR, P_DOC, P_COM,
};

enum class RoundtripFamily { Dl, Il, Cl, Agm, Dp };

std::string_view to_string(PostulateId id);
std::string_view to_string(ConditionId id);
std::string_view to_string(TheoremId id);
std::string_view to_string(RoundtripFamily f);
std::optional<PostulateId> parse_postulate_id(std::string_view text);
std::optional<ConditionId> parse_condition_id(std::string_view text);
std::optional<TheoremId> parse_theorem_id(std::string_view text);

const std::vector<PostulateId>& all_postulate_ids();
const std::vector<ConditionId>& all_condition_ids();
const std::vector<TheoremId>& all_theorem_ids();
std::vector<PostulateId> dl_postulates();
std::vector<PostulateId> cl_postulates();
std::vector<PostulateId> il_postulates();

/// Postulates quantifying over a second formula β.
bool is_binary(PostulateId id);
/// Postulates that revise the posterior state again.
bool is_two_step(PostulateId id);

struct Counterexample {
  std::optional<std::size_t> state_id;
  EpistemicState state;
  std::vector<WorldSet> formulas;
  std::string clause;
  std::string observed;
  std::string required;
};

struct Verdict {
  std::string id;
  std::string op_name;
  std::size_t atoms = 0;
  std::size_t instances = 0;
  /// Total failing instances; only the first `max_kept` are stored.
  std::size_t violations = 0;
  std::size_t max_kept = 8;
  std::vector<Counterexample> counterexamples;

  bool holds() const { return counterexamples.empty(); }
  void record(Counterexample c);
  void merge(const Verdict& other);
};

struct CheckOptions {
  /// Drop the ⊥ class from every formula quantifier.
  bool consistent_only = false;
  std::uint64_t seed = 1;
  /// (α, β) pairs per state for binary postulates when there are more than 16 classes.
  std::size_t pair_samples = 1000;
  std::size_t max_counterexamples = 8;
};

/// Formula classes a quantifier ranges over.
std::vector<WorldSet> formula_domain(const Signature& sig, bool consistent_only);

Verdict check_postulate(const RevisionOperator& op, const StateUniverse& universe, PostulateId id,
                        const CheckOptions& opts = {});

/// Literal evaluation of one condition on the transition st -> post by alpha.
/// Conditions mentioning Mod(Ψ⋆β) for β ≠ α evaluate dl_revise_beliefs on st;
/// those quantifying over β use formula_domain(sig, consistent_only).
bool check_condition(const EpistemicState& st, const EpistemicState& post, WorldSet alpha, ConditionId id,
                     const Signature& sig, bool consistent_only = false);

/// Worlds ω with Mod(st ⋆ {ω}) ⊆ {ω} under dl revision.
WorldSet accepted_worlds(const EpistemicState& st, const Signature& sig);

/// Per (state, α): postulate side over all β ⟺ condition side.
Verdict verify_equivalence(const RevisionOperator& op, const StateUniverse& universe, TheoremId theorem,
                           const CheckOptions& opts = {});

/// verify_equivalence on `count` seeded (policy, faithful state, α) triples.
Verdict verify_equivalence_sampled(const Signature& sig, TheoremId theorem, std::size_t count,
                                   const CheckOptions& opts = {});

/// Postulate suite of the family, then reconstruction of every state's
/// assignment from the operator alone. DP instead pairs DP1..DP4 with
/// CR8..CR11 per (state, α).
Verdict representation_roundtrip(const RevisionOperator& op, const StateUniverse& universe, RoundtripFamily family,
                                 const CheckOptions& opts = {});

struct MutationReport {
  std::size_t mutations = 0;
  std::size_t detected = 0;
  double rate() const { return mutations == 0 ? 0.0 : static_cast<double>(detected) / static_cast<double>(mutations); }
};

/// Tabulates `op` over `universe`, then `count` times retargets one random
/// entry to a state with a different belief set and asks whether
/// canonical_assignment either throws or fails to reproduce that state's
/// revision table.
MutationReport mutation_test(const RevisionOperator& op, std::shared_ptr<const StateUniverse> universe,
                             std::size_t count, std::uint64_t seed);

struct SeparationRow {
  std::string name;
  bool passes_il = false;
  bool passes_cl = false;
  /// Every state of the family's universe is FA-valid with scope Ω.
  bool agm_shaped = false;
  Verdict il;
  Verdict cl;
};

struct SeparationReport {
  std::vector<SeparationRow> rows;
  /// For each IL(Ω′) with Ω′ ⊊ Ω: the CL2 failure at bel = Ω, α = {ω}, ω ∉ Ω′.
  std::vector<Counterexample> cl2_witnesses;
  bool consistent() const;
};

/// IL(Ω′) for every nonempty Ω′, CL with C = bel ∪ K for every K, and AGM,
/// each over its own universe of consistent states.
SeparationReport separation_families(const Signature& sig, const CheckOptions& opts = {});

enum class ReportFormat { Text, Json };

std::string format_report(const std::vector<Verdict>& verdicts, const Signature& sig, ReportFormat format,
                          const CheckOptions& opts, const std::vector<std::string>& notes = {});

/// Header notes describing how ambiguous conditions are read.
std::vector<std::string> condition_readings();

}  // namespace revlab
