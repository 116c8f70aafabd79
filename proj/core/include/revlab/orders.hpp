#pragma once

// Total preorders over a subset of worlds, kept as an ordered partition.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revlab/logic.hpp"

namespace revlab {

/// Default bound on the domain size accepted by enumerate_orders.
inline constexpr std::size_t kMaxEnumeratedDomain = 4;
/// Hard bound for for_each_order; 8 worlds already give 545835 orders.
inline constexpr std::size_t kMaxOrderDomain = 8;

class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weak order stored as levels, level 0 holding the most plausible worlds.
class RankedOrder {
 public:
  /// Levels must be nonempty and pairwise disjoint, and at least one is required.
  explicit RankedOrder(std::vector<WorldSet> levels);

  const std::vector<WorldSet>& levels() const { return levels_; }
  std::size_t level_count() const { return levels_.size(); }
  WorldSet domain() const { return domain_; }
  bool in_domain(World w) const { return domain_.contains(w); }
  /// Level index of w, or -1 outside the domain.
  int level_of(World w) const { return w < rank_.size() ? rank_[w] : -1; }

  /// w1 ⪯ w2. Throws OrderError if either world lies outside the domain.
  bool leq(World w1, World w2) const;
  /// w1 ≺ w2.
  bool strict(World w1, World w2) const;

  /// Text form: "[010 001 | 100]", minimal level first.
  std::string to_string(const Signature& sig) const;
  static RankedOrder parse(std::string_view text, const Signature& sig);

  bool operator==(const RankedOrder& o) const { return levels_ == o.levels_; }
  auto operator<=>(const RankedOrder& o) const { return levels_ <=> o.levels_; }

 private:
  std::vector<WorldSet> levels_;
  WorldSet domain_;
  std::array<std::int8_t, 64> rank_{};
};

/// Minimal worlds of candidates ∩ domain; ∅ if they do not meet.
WorldSet min_set(WorldSet candidates, const RankedOrder& ord);

/// Drops worlds outside `keep`. Throws OrderError if nothing is left.
RankedOrder restrict(const RankedOrder& ord, WorldSet keep);

/// Every ordered partition of `domain`. Throws OrderError when the domain is
/// empty or larger than `max_size`.
std::vector<RankedOrder> enumerate_orders(WorldSet domain, std::size_t max_size = kMaxEnumeratedDomain);

/// Streams the orders of enumerate_orders without materializing them.
void for_each_order(WorldSet domain, const std::function<void(const RankedOrder&)>& visit);

/// min(A∪B) is one of min(A), min(B), min(A)∪min(B).
bool trichotomy_check(const RankedOrder& ord, WorldSet a, WorldSet b);

}  // namespace revlab
