#include "revlab/states.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace revlab {

EpistemicState::EpistemicState(WorldSet bel, WorldSet scope, RankedOrder order)
    : bel_(bel), order_(std::move(order)) {
  if (scope != order_.domain()) throw StateError("scope differs from the domain of the order");
}

bool check_faithful_limited(const EpistemicState& st) {
  const WorldSet inside = st.bel() & st.scope();
  return inside.empty() || min_set(st.scope(), st.order()) == inside;
}

bool check_clf(const EpistemicState& st) {
  return st.bel().subset_of(st.scope()) && min_set(st.scope(), st.order()) == st.bel();
}

bool check_fa(const EpistemicState& st, const Signature& sig) {
  return st.scope() == sig.all_worlds() && st.order().levels().front() == st.bel();
}

std::string_view to_string(Assignment a) {
  switch (a) {
    case Assignment::Any: return "any";
    case Assignment::Faithful: return "faithful";
    case Assignment::Clf: return "clf";
    case Assignment::Fa: return "fa";
  }
  return "?";
}

Assignment parse_assignment(std::string_view text) {
  if (text == "any") return Assignment::Any;
  if (text == "faithful") return Assignment::Faithful;
  if (text == "clf") return Assignment::Clf;
  if (text == "fa") return Assignment::Fa;
  throw std::invalid_argument("unknown universe '" + std::string(text) + "' (expected any, faithful, clf or fa)");
}

bool admits(const UniverseFlags& flags, const EpistemicState& st, const Signature& sig) {
  if (flags.global_consistency && st.bel().empty()) return false;
  switch (flags.assignment) {
    case Assignment::Any: return true;
    case Assignment::Faithful: return check_faithful_limited(st);
    case Assignment::Clf: return check_clf(st);
    case Assignment::Fa: return check_fa(st, sig);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Universes

StateUniverse::StateUniverse(Signature sig, UniverseFlags flags, std::vector<EpistemicState> states)
    : sig_(std::move(sig)), flags_(flags), states_(std::move(states)) {
  sorted_.resize(states_.size());
  for (std::size_t i = 0; i < sorted_.size(); ++i) sorted_[i] = i;
  std::sort(sorted_.begin(), sorted_.end(), [&](std::size_t a, std::size_t b) { return states_[a] < states_[b]; });
}

std::optional<std::size_t> StateUniverse::find(const EpistemicState& st) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), st,
                             [&](std::size_t id, const EpistemicState& key) { return states_[id] < key; });
  if (it != sorted_.end() && states_[*it] == st) return *it;
  return std::nullopt;
}

bool StateUniverse::is_unbiased() const {
  std::vector<bool> seen(std::size_t{1} << sig_.world_count(), false);
  for (const auto& st : states_) seen[st.bel().mask()] = true;
  for (std::size_t m = 1; m < seen.size(); ++m) {
    if (!seen[m]) return false;
  }
  return true;
}

namespace {

template <typename F>
void for_each_submask(std::uint64_t of, F&& f) {
  std::uint64_t s = 0;
  do {
    f(s);
    s = (s - of) & of;
  } while (s != 0);
}

}  // namespace

void for_each_state(const Signature& sig, const UniverseFlags& flags,
                    const std::function<void(const EpistemicState&)>& visit) {
  if (sig.atom_count() > kMaxStreamedAtoms) {
    throw SignatureError("state enumeration is limited to " + std::to_string(kMaxStreamedAtoms) + " atoms");
  }
  const WorldSet all = sig.all_worlds();
  auto emit = [&](WorldSet bel, const RankedOrder& ord) {
    if (flags.global_consistency && bel.empty()) return;
    visit(EpistemicState(bel, ord));
  };
  for (std::uint64_t scope_mask = 1; scope_mask <= all.mask(); ++scope_mask) {
    const WorldSet scope(scope_mask);
    if (flags.assignment == Assignment::Fa && scope != all) continue;
    const WorldSet outside = all - scope;
    for_each_order(scope, [&](const RankedOrder& ord) {
      const WorldSet bottom = ord.levels().front();
      switch (flags.assignment) {
        case Assignment::Any:
          for_each_submask(all.mask(), [&](std::uint64_t b) { emit(WorldSet(b), ord); });
          break;
        case Assignment::Faithful:
          for_each_submask(outside.mask(), [&](std::uint64_t rest) {
            emit(WorldSet(rest), ord);
            emit(WorldSet(rest) | bottom, ord);
          });
          break;
        case Assignment::Clf:
        case Assignment::Fa:
          emit(bottom, ord);
          break;
      }
    });
  }
}

StateUniverse enumerate_states(const Signature& sig, const UniverseFlags& flags) {
  if (sig.atom_count() > kMaxMaterializedAtoms) {
    throw SignatureError("state universes are materialized for at most " + std::to_string(kMaxMaterializedAtoms) +
                         " atoms; use sampling beyond that");
  }
  std::vector<EpistemicState> states;
  for_each_state(sig, flags, [&](const EpistemicState& st) { states.push_back(st); });
  StateUniverse u(sig, flags, std::move(states));
  if (flags.unbiased && !u.is_unbiased()) throw StateError("universe is not unbiased");
  return u;
}

StateUniverse filter_universe(const StateUniverse& u, const UniverseFlags& flags,
                              const std::function<bool(const EpistemicState&)>& pred) {
  std::vector<EpistemicState> kept;
  for (const auto& st : u.states()) {
    if (pred(st)) kept.push_back(st);
  }
  StateUniverse out(u.signature(), flags, std::move(kept));
  if (flags.unbiased && !out.is_unbiased()) throw StateError("filtered universe is not unbiased");
  return out;
}

RankedOrder random_order(WorldSet domain, std::mt19937_64& rng) {
  const int n = domain.size();
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<WorldSet> slots(static_cast<std::size_t>(n));
  for (World w : domain) slots[static_cast<std::size_t>(pick(rng))] |= WorldSet::single(w);
  std::vector<WorldSet> levels;
  for (WorldSet s : slots) {
    if (!s.empty()) levels.push_back(s);
  }
  return RankedOrder(std::move(levels));
}

EpistemicState random_state(const Signature& sig, const UniverseFlags& flags, std::mt19937_64& rng) {
  const WorldSet all = sig.all_worlds();
  std::uniform_int_distribution<std::uint64_t> any_mask(0, all.mask());
  std::bernoulli_distribution coin(0.5);
  while (true) {
    WorldSet scope = flags.assignment == Assignment::Fa ? all : WorldSet(any_mask(rng));
    if (scope.empty()) continue;
    RankedOrder ord = random_order(scope, rng);
    const WorldSet bottom = ord.levels().front();
    WorldSet bel;
    switch (flags.assignment) {
      case Assignment::Any: bel = WorldSet(any_mask(rng)); break;
      case Assignment::Faithful:
        bel = (WorldSet(any_mask(rng)) - scope) | (coin(rng) ? bottom : WorldSet());
        break;
      case Assignment::Clf:
      case Assignment::Fa: bel = bottom; break;
    }
    if (flags.global_consistency && bel.empty()) continue;
    return EpistemicState(bel, std::move(ord));
  }
}

// ---------------------------------------------------------------------------
// Text form

StateParseError::StateParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

WorldSet parse_worlds(std::string_view text, const Signature& sig, std::size_t line) {
  WorldSet out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    try {
      out |= WorldSet::single(sig.parse_world(tok));
    } catch (const std::invalid_argument& e) {
      throw StateParseError(line, e.what());
    }
  }
  return out;
}

struct KeyValue {
  std::size_t line;
  std::string key;
  std::string value;
};

std::vector<KeyValue> split_lines(std::string_view text, std::size_t first_line) {
  std::vector<KeyValue> out;
  std::size_t line_no = first_line;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) throw StateParseError(line_no, "expected 'key: value'");
      out.push_back({line_no, std::string(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1)))});
    }
    ++line_no;
  }
  return out;
}

EpistemicState build_state(const std::vector<KeyValue>& kvs, const Signature& sig) {
  std::optional<WorldSet> bel, scope;
  std::optional<RankedOrder> order;
  std::size_t last_line = 1, scope_line = 1, order_line = 1;
  for (const auto& kv : kvs) {
    last_line = kv.line;
    if (kv.key == "bel") {
      bel = parse_worlds(kv.value, sig, kv.line);
    } else if (kv.key == "scope") {
      scope = parse_worlds(kv.value, sig, kv.line);
      scope_line = kv.line;
    } else if (kv.key == "order") {
      order_line = kv.line;
      try {
        order = RankedOrder::parse(kv.value, sig);
      } catch (const std::invalid_argument& e) {
        throw StateParseError(kv.line, std::string("invalid order: ") + e.what());
      }
    } else if (kv.key != "sig") {
      throw StateParseError(kv.line, "unknown key '" + kv.key + "'");
    }
  }
  if (!bel) throw StateParseError(last_line, "missing 'bel:' line");
  if (scope && scope->empty()) throw StateParseError(scope_line, "invariant violated: scope must be nonempty");
  if (!order) throw StateParseError(last_line, "missing 'order:' line");
  if (scope && *scope != order->domain()) {
    throw StateParseError(order_line, "invariant violated: order domain differs from scope");
  }
  return EpistemicState(*bel, *order);
}

}  // namespace

EpistemicState parse_state_body(std::string_view text, const Signature& sig, std::size_t first_line) {
  return build_state(split_lines(text, first_line), sig);
}

ParsedState parse_state(std::string_view text) {
  const auto kvs = split_lines(text, 1);
  auto it = std::find_if(kvs.begin(), kvs.end(), [](const KeyValue& kv) { return kv.key == "sig"; });
  if (it == kvs.end()) throw StateParseError(1, "missing 'sig:' line");
  Signature sig;
  try {
    sig = Signature::parse(it->value);
  } catch (const SignatureError& e) {
    throw StateParseError(it->line, e.what());
  }
  EpistemicState st = build_state(kvs, sig);
  return {sig, st};
}

std::string dump_state_body(const EpistemicState& st, const Signature& sig, std::string_view indent) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += indent;
    out += key;
    out += ':';
    if (!value.empty()) out += ' ' + value;
    out += '\n';
  };
  line("bel", sig.format(st.bel()));
  line("scope", sig.format(st.scope()));
  line("order", st.order().to_string(sig));
  return out;
}

std::string dump_state(const EpistemicState& st, const Signature& sig) {
  std::string out = "sig:";
  for (const auto& a : sig.atoms()) out += ' ' + a;
  out += '\n';
  return out + dump_state_body(st, sig);
}

}  // namespace revlab
