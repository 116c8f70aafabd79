#pragma once

// Revision operators: the four belief equations, update policies that build
// the posterior state, extensional lookup tables, and reconstruction of an
// assignment from an operator's behaviour.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revlab/logic.hpp"
#include "revlab/orders.hpp"
#include "revlab/states.hpp"

namespace revlab {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// scope ∩ alpha ≠ ∅ ? min(alpha) : bel.
WorldSet dl_revise_beliefs(const EpistemicState& st, WorldSet alpha);
/// dl_revise_beliefs restricted to CLF states.
WorldSet cl_revise_beliefs(const EpistemicState& st, WorldSet alpha);
/// min(alpha) over an FA state; ∅ for alpha = ∅.
WorldSet agm_revise_beliefs(const EpistemicState& st, WorldSet alpha, const Signature& sig);
/// dl_revise_beliefs for states whose scope is omega_prime.
WorldSet il_revise_beliefs(WorldSet omega_prime, const EpistemicState& st, WorldSet alpha);

enum class Family { Dl, Cl, Agm, Il, Extensional };
enum class OrderRule { Keep, Lex, Natural };
enum class ScopeRule { Keep, Doc, ResultOnly };

std::string_view to_string(Family f);
std::string_view to_string(OrderRule r);
std::string_view to_string(ScopeRule r);
OrderRule parse_order_rule(std::string_view text);
ScopeRule parse_scope_rule(std::string_view text);

/// How the posterior order and scope are formed after a revision.
///
/// On a successful revision (alpha meets the scope):
///   Keep     leaves the order alone.
///   Lex      puts alpha ∩ scope below the rest, each part keeping its order.
///   Natural  moves min(alpha) to a new bottom level.
/// and
///   Keep        leaves the scope alone.
///   Doc         shrinks it to scope ∩ alpha.
///   ResultOnly  shrinks it to the new belief models.
/// A failed revision changes nothing. Afterwards, if bel' meets scope' but is
/// not its minimum, bel' ∩ scope' becomes a new level 0.
struct UpdatePolicy {
  OrderRule order = OrderRule::Keep;
  ScopeRule scope = ScopeRule::Keep;

  std::string name() const;
  bool operator==(const UpdatePolicy&) const = default;

  /// All nine combinations, order rule major.
  static std::vector<UpdatePolicy> all();
};

/// The posterior state for belief result `bel_after`.
EpistemicState apply_policy(const EpistemicState& st, WorldSet alpha, WorldSet bel_after,
                            const UpdatePolicy& policy);

/// State-to-state table over a fixed universe: entry (id, class mask) -> id.
class ExtensionalTable {
 public:
  ExtensionalTable(std::shared_ptr<const StateUniverse> universe, std::vector<std::uint32_t> targets);

  const StateUniverse& universe() const { return *universe_; }
  std::shared_ptr<const StateUniverse> universe_ptr() const { return universe_; }
  std::size_t class_count() const { return classes_; }
  std::uint32_t target(std::size_t id, WorldSet alpha) const { return targets_.at(id * classes_ + alpha.mask()); }
  void set_target(std::size_t id, WorldSet alpha, std::uint32_t to) { targets_.at(id * classes_ + alpha.mask()) = to; }
  const std::vector<std::uint32_t>& targets() const { return targets_; }

 private:
  std::shared_ptr<const StateUniverse> universe_;
  std::size_t classes_;
  std::vector<std::uint32_t> targets_;
};

class RevisionOperator {
 public:
  static RevisionOperator dl(Signature sig, UpdatePolicy policy = {});
  static RevisionOperator cl(Signature sig, UpdatePolicy policy = {});
  /// The scope rule must be Keep.
  static RevisionOperator agm(Signature sig, UpdatePolicy policy = {});
  /// The scope rule must be Keep; omega_prime must be nonempty.
  static RevisionOperator il(Signature sig, WorldSet omega_prime, UpdatePolicy policy = {});
  static RevisionOperator extensional(ExtensionalTable table);

  Family family() const { return family_; }
  const Signature& signature() const { return sig_; }
  const UpdatePolicy& policy() const { return policy_; }
  WorldSet omega_prime() const { return omega_prime_; }
  const ExtensionalTable* table() const { return table_.get(); }

  /// Mod(st ∘ alpha).
  WorldSet revise(const EpistemicState& st, WorldSet alpha) const;
  /// The full posterior state.
  EpistemicState apply(const EpistemicState& st, WorldSet alpha) const;

  /// e.g. "dl[lex,doc]", "il{01 10}[lex,keep]", "extensional".
  std::string name() const;

 private:
  RevisionOperator(Family f, Signature sig, UpdatePolicy p) : family_(f), sig_(std::move(sig)), policy_(p) {}

  Family family_;
  Signature sig_;
  UpdatePolicy policy_;
  WorldSet omega_prime_;
  std::shared_ptr<const ExtensionalTable> table_;
};

/// Tabulates `op` over every state of `universe` and every formula class.
/// Throws StateError if a posterior state is missing from the universe.
ExtensionalTable tabulate(const RevisionOperator& op, std::shared_ptr<const StateUniverse> universe);

/// Mod(st ∘ c) for every formula class c, indexed by mask.
class RevisionTable {
 public:
  RevisionTable(WorldSet bel, std::vector<WorldSet> results) : bel_(bel), results_(std::move(results)) {}
  WorldSet bel() const { return bel_; }
  WorldSet operator[](WorldSet c) const { return results_[c.mask()]; }
  std::size_t size() const { return results_.size(); }
  const std::vector<WorldSet>& results() const { return results_; }

 private:
  WorldSet bel_;
  std::vector<WorldSet> results_;
};

RevisionTable revision_table(const RevisionOperator& op, const EpistemicState& st);

class ReconstructionError : public std::runtime_error {
 public:
  enum class Kind { NotWeakOrder, EmptyScope, NotFaithful };
  ReconstructionError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LimitedAssignment {
  RankedOrder order;
  WorldSet scope;
};

/// Rebuilds (order, scope) for `st` from `op` alone. Scope: worlds whose
/// singleton class is latent in st, or inherent over `universe` for the IL
/// family. Order: w1 ⪯ w2 iff w1 ∈ Mod(st ∘ {w1, w2}).
/// Throws ReconstructionError when the pairwise relation is not a weak order,
/// the scope is empty, or the result is not faithful for st.
LimitedAssignment canonical_assignment(const RevisionOperator& op, const EpistemicState& st,
                                       const StateUniverse& universe, Family target = Family::Dl);

// ---------------------------------------------------------------------------
// Operator files

class OperatorParseError : public std::runtime_error {
 public:
  OperatorParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `family: dl|cl|agm|il|extensional`, `il_scope:`, `order_rule:`,
/// `scope_rule:`, optional `sig:`. Extensional files list `state <id>:`
/// blocks followed by `table:` and lines `(<id>, <mask>) -> <id>`.
RevisionOperator parse_operator(std::string_view text, const Signature& fallback_sig);
std::string dump_operator(const RevisionOperator& op);

}  // namespace revlab
