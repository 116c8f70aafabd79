#include "revlab/orders.hpp"

#include <algorithm>
#include <cctype>

namespace revlab {

RankedOrder::RankedOrder(std::vector<WorldSet> levels) : levels_(std::move(levels)) {
  rank_.fill(-1);
  if (levels_.empty()) throw OrderError("an order needs a nonempty domain");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const WorldSet level = levels_[i];
    if (level.empty()) throw OrderError("level " + std::to_string(i) + " is empty");
    if (level.intersects(domain_)) throw OrderError("level " + std::to_string(i) + " overlaps an earlier level");
    domain_ |= level;
    for (World w : level) rank_[w] = static_cast<std::int8_t>(i);
  }
}

bool RankedOrder::leq(World w1, World w2) const {
  const int r1 = level_of(w1);
  const int r2 = level_of(w2);
  if (r1 < 0) throw OrderError("world " + std::to_string(w1) + " is outside the order's domain");
  if (r2 < 0) throw OrderError("world " + std::to_string(w2) + " is outside the order's domain");
  return r1 <= r2;
}

bool RankedOrder::strict(World w1, World w2) const { return leq(w1, w2) && !leq(w2, w1); }

std::string RankedOrder::to_string(const Signature& sig) const {
  std::string out = "[";
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i > 0) out += " | ";
    out += sig.format(levels_[i]);
  }
  return out + "]";
}

RankedOrder RankedOrder::parse(std::string_view text, const Signature& sig) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw OrderError("order must be written as [w ... | w ...]");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<WorldSet> levels;
  while (true) {
    const std::size_t bar = text.find('|');
    std::string_view part = trim(text.substr(0, bar));
    WorldSet level;
    std::size_t pos = 0;
    while (pos < part.size()) {
      while (pos < part.size() && std::isspace(static_cast<unsigned char>(part[pos]))) ++pos;
      std::size_t end = pos;
      while (end < part.size() && !std::isspace(static_cast<unsigned char>(part[end]))) ++end;
      if (end > pos) {
        const World w = sig.parse_world(part.substr(pos, end - pos));
        if (level.contains(w)) throw OrderError("world " + sig.world_name(w) + " listed twice");
        level |= WorldSet::single(w);
      }
      pos = end;
    }
    levels.push_back(level);
    if (bar == std::string_view::npos) break;
    text = text.substr(bar + 1);
  }
  return RankedOrder(std::move(levels));
}

WorldSet min_set(WorldSet candidates, const RankedOrder& ord) {
  for (WorldSet level : ord.levels()) {
    const WorldSet hit = level & candidates;
    if (!hit.empty()) return hit;
  }
  return WorldSet();
}

RankedOrder restrict(const RankedOrder& ord, WorldSet keep) {
  std::vector<WorldSet> levels;
  for (WorldSet level : ord.levels()) {
    const WorldSet kept = level & keep;
    if (!kept.empty()) levels.push_back(kept);
  }
  if (levels.empty()) throw OrderError("restriction leaves an empty domain");
  return RankedOrder(std::move(levels));
}

namespace {

void partitions(std::uint64_t rest, std::vector<WorldSet>& prefix,
                const std::function<void(const RankedOrder&)>& visit) {
  if (rest == 0) {
    visit(RankedOrder(prefix));
    return;
  }
  // Submasks in ascending order, so enumeration order is stable.
  std::vector<std::uint64_t> subs;
  for (std::uint64_t s = rest; s != 0; s = (s - 1) & rest) subs.push_back(s);
  std::reverse(subs.begin(), subs.end());
  for (std::uint64_t s : subs) {
    prefix.emplace_back(s);
    partitions(rest & ~s, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void for_each_order(WorldSet domain, const std::function<void(const RankedOrder&)>& visit) {
  if (domain.empty()) throw OrderError("cannot enumerate orders over an empty domain");
  if (static_cast<std::size_t>(domain.size()) > kMaxOrderDomain) {
    throw OrderError("domain of " + std::to_string(domain.size()) + " worlds is too large to enumerate (limit " +
                     std::to_string(kMaxOrderDomain) + ")");
  }
  std::vector<WorldSet> prefix;
  partitions(domain.mask(), prefix, visit);
}

std::vector<RankedOrder> enumerate_orders(WorldSet domain, std::size_t max_size) {
  if (static_cast<std::size_t>(domain.size()) > max_size) {
    throw OrderError("domain of " + std::to_string(domain.size()) + " worlds exceeds the exhaustive limit of " +
                     std::to_string(max_size));
  }
  std::vector<RankedOrder> out;
  for_each_order(domain, [&](const RankedOrder& o) { out.push_back(o); });
  return out;
}

bool trichotomy_check(const RankedOrder& ord, WorldSet a, WorldSet b) {
  const WorldSet joint = min_set(a | b, ord);
  const WorldSet ma = min_set(a, ord);
  const WorldSet mb = min_set(b, ord);
  return joint == ma || joint == mb || joint == (ma | mb);
}

}  // namespace revlab
