#pragma once

// Epistemic states as (belief models, scope, order over the scope), plus the
// finite universes that quantified properties range over.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revlab/logic.hpp"
#include "revlab/orders.hpp"

namespace revlab {

class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EpistemicState {
 public:
  /// The scope is the order's domain.
  EpistemicState(WorldSet bel, RankedOrder order) : bel_(bel), order_(std::move(order)) {}
  /// Throws StateError unless scope equals the order's domain.
  EpistemicState(WorldSet bel, WorldSet scope, RankedOrder order);

  WorldSet bel() const { return bel_; }
  WorldSet scope() const { return order_.domain(); }
  const RankedOrder& order() const { return order_; }

  bool operator==(const EpistemicState&) const = default;
  auto operator<=>(const EpistemicState&) const = default;

 private:
  WorldSet bel_;
  RankedOrder order_;
};

/// bel ∩ scope is empty or is exactly the minimum of the scope.
bool check_faithful_limited(const EpistemicState& st);
/// bel ⊆ scope and the minimum of the scope is bel.
bool check_clf(const EpistemicState& st);
/// Scope is Ω and level 0 is exactly bel; needs a consistent bel.
bool check_fa(const EpistemicState& st, const Signature& sig);

enum class Assignment { Any, Faithful, Clf, Fa };

std::string_view to_string(Assignment a);
/// Accepts any|faithful|clf|fa.
Assignment parse_assignment(std::string_view text);

struct UniverseFlags {
  Assignment assignment = Assignment::Faithful;
  /// Reject universes lacking a state for some consistent belief set.
  bool unbiased = false;
  /// Exclude states with bel = ∅.
  bool global_consistency = false;
};

/// Does `st` pass the assignment and consistency filters of `flags`?
bool admits(const UniverseFlags& flags, const EpistemicState& st, const Signature& sig);

/// A finite, ordered set of states. Position in `states()` is the state id.
class StateUniverse {
 public:
  StateUniverse(Signature sig, UniverseFlags flags, std::vector<EpistemicState> states);

  const Signature& signature() const { return sig_; }
  const UniverseFlags& flags() const { return flags_; }
  const std::vector<EpistemicState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const EpistemicState& operator[](std::size_t id) const { return states_[id]; }
  /// Id of a state equal to `st`, if present.
  std::optional<std::size_t> find(const EpistemicState& st) const;

  /// Every consistent belief set is held by some state.
  bool is_unbiased() const;

 private:
  Signature sig_;
  UniverseFlags flags_;
  std::vector<EpistemicState> states_;
  std::vector<std::size_t> sorted_;  // ids ordered by state value
};

/// Largest signature for which enumerate_states materializes a universe.
inline constexpr std::size_t kMaxMaterializedAtoms = 2;
/// Largest signature for which for_each_state will stream.
inline constexpr std::size_t kMaxStreamedAtoms = 3;

/// Visits every state admitted by `flags`, ordered by scope mask, then order,
/// then bel mask. Throws SignatureError above kMaxStreamedAtoms.
void for_each_state(const Signature& sig, const UniverseFlags& flags,
                    const std::function<void(const EpistemicState&)>& visit);

/// Materializes for_each_state. Throws SignatureError above
/// kMaxMaterializedAtoms, and StateError if `unbiased` is requested but fails.
StateUniverse enumerate_states(const Signature& sig, const UniverseFlags& flags);

/// Keeps the states of `u` satisfying `pred`, under new flags.
StateUniverse filter_universe(const StateUniverse& u, const UniverseFlags& flags,
                              const std::function<bool(const EpistemicState&)>& pred);

/// A uniformly seeded random state admitted by `flags`.
EpistemicState random_state(const Signature& sig, const UniverseFlags& flags, std::mt19937_64& rng);

/// Random weak order over a nonempty domain.
RankedOrder random_order(WorldSet domain, std::mt19937_64& rng);

class StateParseError : public std::runtime_error {
 public:
  StateParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParsedState {
  Signature sig;
  EpistemicState state;
};

/// Reads the line-oriented state format (sig:, bel:, scope:, order:).
ParsedState parse_state(std::string_view text);
/// Parses only the bel/scope/order lines against a known signature.
EpistemicState parse_state_body(std::string_view text, const Signature& sig, std::size_t first_line = 1);
/// Inverse of parse_state.
std::string dump_state(const EpistemicState& st, const Signature& sig);
/// bel/scope/order lines only, each prefixed by `indent`.
std::string dump_state_body(const EpistemicState& st, const Signature& sig, std::string_view indent = "");

}  // namespace revlab
