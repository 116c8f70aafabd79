#pragma once

// Scopes, the S1/S2 acceptance conditions, latent/reasonable/inherent/
// immanent classification, and closure checks on sets of formula classes.
// Everything works on formula classes, i.e. world sets.

#include <optional>
#include <vector>

#include "revlab/logic.hpp"
#include "revlab/operators.hpp"
#include "revlab/states.hpp"

namespace revlab {

/// A set of formula classes over a signature, stored as a membership bitmap.
class FormulaClassSet {
 public:
  explicit FormulaClassSet(const Signature& sig) : member_(class_count(sig), false) {}
  explicit FormulaClassSet(std::size_t universe_size) : member_(universe_size, false) {}

  std::size_t universe_size() const { return member_.size(); }
  bool contains(WorldSet c) const { return member_[c.mask()]; }
  void insert(WorldSet c) { member_[c.mask()] = true; }
  void erase(WorldSet c) { member_[c.mask()] = false; }
  std::size_t size() const;
  /// Members in ascending mask order.
  std::vector<WorldSet> classes() const;
  bool subset_of(const FormulaClassSet& o) const;

  bool operator==(const FormulaClassSet&) const = default;

 private:
  std::vector<bool> member_;
};

/// { c | Mod(st ∘ c) ⊆ c }.
FormulaClassSet syntactic_scope(const RevisionTable& table);
FormulaClassSet syntactic_scope(const RevisionOperator& op, const EpistemicState& st);
/// { c | bel ⊆ c } ∪ { c | c ∩ scope ≠ ∅ }.
FormulaClassSet semantic_scope(const EpistemicState& st, const Signature& sig);

/// S1: if bel meets alpha, every b ⊇ alpha has Mod(st∘alpha) ⊆ Mod(st∘b).
bool satisfies_S1(const RevisionTable& t, WorldSet alpha);
/// S2: every b with Mod(st∘alpha) ⊆ Mod(st∘b) has Mod(st∘b) ∩ alpha ≠ ∅.
bool satisfies_S2(const RevisionTable& t, WorldSet alpha);

/// Per-class S1, S2, latent and reasonable flags for one state.
class Classifier {
 public:
  explicit Classifier(const RevisionTable& t);

  bool s1(WorldSet c) const { return s1_[c.mask()]; }
  bool s2(WorldSet c) const { return s2_[c.mask()]; }
  /// Nonempty, and c with all its nonempty subclasses satisfy S1 and S2.
  bool latent(WorldSet c) const { return latent_[c.mask()]; }
  /// Nonempty, and the union of its latent subclasses.
  bool reasonable(WorldSet c) const { return reasonable_[c.mask()]; }

 private:
  std::vector<bool> s1_, s2_, latent_, reasonable_;
};

bool is_latent(const RevisionTable& t, WorldSet alpha);
bool is_reasonable(const RevisionTable& t, WorldSet alpha);

/// Inherent and immanent flags of every class for an operator over a universe.
class InherenceInfo {
 public:
  InherenceInfo(const RevisionOperator& op, const StateUniverse& universe);

  /// Nonempty, and Mod(st ∘ c) = c for every state of the universe.
  bool inherent(WorldSet c) const { return inherent_[c.mask()]; }
  /// Nonempty, and the union of its inherent subclasses.
  bool immanent(WorldSet c) const { return immanent_[c.mask()]; }

 private:
  std::vector<bool> inherent_, immanent_;
};

bool is_inherent(const RevisionOperator& op, const StateUniverse& universe, WorldSet alpha);
bool is_immanent(const RevisionOperator& op, const StateUniverse& universe, WorldSet alpha);

/// Single-sentence closure: c ∈ X and c ⊆ d imply d ∈ X.
bool check_ssc(const FormulaClassSet& x);
/// Disjunction completeness: c ∪ d ∈ X implies c ∈ X or d ∈ X.
bool check_dc(const FormulaClassSet& x);
/// M with X = { c | c ∩ M ≠ ∅ }, if one exists.
std::optional<WorldSet> find_witness_M(const FormulaClassSet& x, const Signature& sig);

}  // namespace revlab
