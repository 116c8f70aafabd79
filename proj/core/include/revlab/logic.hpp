#pragma once

// Finite propositional logic over an ordered signature. Every formula is
// reduced to its model set as soon as it is parsed; the syntax tree only
// exists for input and output.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revlab {

/// Largest signature whose model sets fit in a WorldSet.
inline constexpr std::size_t kMaxAtoms = 6;
/// Largest signature for which all formula classes may be enumerated.
inline constexpr std::size_t kMaxExhaustiveAtoms = 4;

using World = std::uint32_t;

/// A set of worlds stored as a bit-mask; world w is bit w.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr WorldSet single(World w) { return WorldSet(std::uint64_t{1} << w); }
  /// All 2^n worlds of an n-atom signature.
  static constexpr WorldSet full(std::size_t worlds) {
    return WorldSet(worlds >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << worlds) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(World w) const { return (mask_ >> w) & 1U; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool subset_of(WorldSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(WorldSet other) const { return (mask_ & other.mask_) != 0; }

  constexpr WorldSet operator|(WorldSet o) const { return WorldSet(mask_ | o.mask_); }
  constexpr WorldSet operator&(WorldSet o) const { return WorldSet(mask_ & o.mask_); }
  /// Set difference.
  constexpr WorldSet operator-(WorldSet o) const { return WorldSet(mask_ & ~o.mask_); }
  constexpr WorldSet& operator|=(WorldSet o) { mask_ |= o.mask_; return *this; }
  constexpr WorldSet& operator&=(WorldSet o) { mask_ &= o.mask_; return *this; }

  constexpr auto operator<=>(const WorldSet&) const = default;

  /// Worlds in ascending order.
  std::vector<World> worlds() const;

  class iterator {
   public:
    using value_type = World;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    World operator*() const { return static_cast<World>(std::countr_zero(rest_)); }
    iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    iterator operator++(int) { auto t = *this; ++*this; return t; }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };
  iterator begin() const { return iterator(mask_); }
  iterator end() const { return iterator(0); }

 private:
  std::uint64_t mask_ = 0;
};

/// True iff every model of `a` is a model of `b`.
constexpr bool entails(WorldSet a, WorldSet b) { return a.subset_of(b); }

/// Model set of Cn(X ∪ {alpha}) for a belief set X with models `belief`.
constexpr WorldSet expansion(WorldSet belief, WorldSet alpha) { return belief & alpha; }

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of distinct atom names. The atom at position i (leftmost
/// is 0) occupies bit (n-1-i) of a world, so "10" over {a,b} is world 2.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::string> atoms);
  /// Whitespace or comma separated atom names.
  static Signature parse(std::string_view text);
  /// The atoms p0..p(n-1), used when no names are supplied.
  static Signature with_atoms(std::size_t n);

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t world_count() const { return std::size_t{1} << atoms_.size(); }
  WorldSet all_worlds() const { return WorldSet::full(world_count()); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  /// Index of `name`, or -1.
  int index_of(std::string_view name) const;
  /// Worlds in which atom `index` is true.
  WorldSet atom_models(std::size_t index) const;

  /// Bit string for a world, e.g. "010".
  std::string world_name(World w) const;
  /// Inverse of world_name; throws std::invalid_argument on malformed text.
  World parse_world(std::string_view text) const;
  /// Space separated world names in ascending order.
  std::string format(WorldSet ws) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> atoms_;
};

/// Syntax tree of a propositional formula.
class Formula {
 public:
  enum class Kind { Top, Bottom, Atom, Not, And, Or, Implies, Iff };

  static Formula top();
  static Formula bottom();
  static Formula atom(std::size_t index);
  static Formula negation(Formula f);
  static Formula conjunction(Formula l, Formula r);
  static Formula disjunction(Formula l, Formula r);
  static Formula implication(Formula l, Formula r);
  static Formula equivalence(Formula l, Formula r);

  Kind kind() const { return node_->kind; }
  std::size_t atom_index() const { return node_->atom; }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }

  /// Renders in the input grammar, parenthesising only where needed.
  std::string to_string(const Signature& sig) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::size_t atom = 0;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

/// Syntax error with the byte offset at which parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownAtomError : public std::runtime_error {
 public:
  UnknownAtomError(std::string atom, std::size_t offset);
  const std::string& atom() const { return atom_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string atom_;
  std::size_t offset_;
};

/// Grammar: atoms, `!`, `&`, `|`, `->`, `<->`, `true`, `false`, parentheses.
/// Precedence ! > & > | > -> > <->; the arrows associate to the right.
Formula parse(std::string_view text, const Signature& sig);

/// Exactly the worlds satisfying `f`.
WorldSet models(const Formula& f, const Signature& sig);

/// Parses and evaluates in one step.
inline WorldSet models_of(std::string_view text, const Signature& sig) {
  return models(parse(text, sig), sig);
}

/// Canonical disjunction of minterms, worlds ascending; bottom for ∅.
Formula formula_of_worlds(WorldSet ws, const Signature& sig);

/// Every world set over `sig` once, ascending by mask (∅ first).
/// Throws SignatureError above kMaxExhaustiveAtoms.
std::vector<WorldSet> enumerate_formula_classes(const Signature& sig);

/// Number of formula classes, 2^(2^n).
std::size_t class_count(const Signature& sig);

}  // namespace revlab
