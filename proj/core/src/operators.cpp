#include "revlab/operators.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "revlab/classify.hpp"

namespace revlab {

WorldSet dl_revise_beliefs(const EpistemicState& st, WorldSet alpha) {
  if (st.scope().intersects(alpha)) return min_set(alpha, st.order());
  return st.bel();
}

WorldSet cl_revise_beliefs(const EpistemicState& st, WorldSet alpha) {
  if (!check_clf(st)) throw PreconditionError("credibility-limited revision needs a CLF state");
  return dl_revise_beliefs(st, alpha);
}

WorldSet agm_revise_beliefs(const EpistemicState& st, WorldSet alpha, const Signature& sig) {
  if (!check_fa(st, sig)) throw PreconditionError("AGM revision needs a state satisfying FA1 and FA2");
  return min_set(alpha, st.order());
}

WorldSet il_revise_beliefs(WorldSet omega_prime, const EpistemicState& st, WorldSet alpha) {
  if (st.scope() != omega_prime) throw PreconditionError("state scope differs from the operator's fixed scope");
  return dl_revise_beliefs(st, alpha);
}

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Dl: return "dl";
    case Family::Cl: return "cl";
    case Family::Agm: return "agm";
    case Family::Il: return "il";
    case Family::Extensional: return "extensional";
  }
  return "?";
}

std::string_view to_string(OrderRule r) {
  switch (r) {
    case OrderRule::Keep: return "keep";
    case OrderRule::Lex: return "lex";
    case OrderRule::Natural: return "natural";
  }
  return "?";
}

std::string_view to_string(ScopeRule r) {
  switch (r) {
    case ScopeRule::Keep: return "keep";
    case ScopeRule::Doc: return "doc";
    case ScopeRule::ResultOnly: return "result_only";
  }
  return "?";
}

OrderRule parse_order_rule(std::string_view text) {
  if (text == "keep") return OrderRule::Keep;
  if (text == "lex") return OrderRule::Lex;
  if (text == "natural") return OrderRule::Natural;
  throw std::invalid_argument("unknown order rule '" + std::string(text) + "' (expected keep, lex or natural)");
}

ScopeRule parse_scope_rule(std::string_view text) {
  if (text == "keep") return ScopeRule::Keep;
  if (text == "doc") return ScopeRule::Doc;
  if (text == "result_only") return ScopeRule::ResultOnly;
  throw std::invalid_argument("unknown scope rule '" + std::string(text) + "' (expected keep, doc or result_only)");
}

std::string UpdatePolicy::name() const {
  return std::string(to_string(order)) + "," + std::string(to_string(scope));
}

std::vector<UpdatePolicy> UpdatePolicy::all() {
  std::vector<UpdatePolicy> out;
  for (OrderRule o : {OrderRule::Keep, OrderRule::Lex, OrderRule::Natural}) {
    for (ScopeRule s : {ScopeRule::Keep, ScopeRule::Doc, ScopeRule::ResultOnly}) out.push_back({o, s});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Posterior states

namespace {

std::vector<WorldSet> split_levels(const std::vector<WorldSet>& levels, WorldSet first) {
  std::vector<WorldSet> low, high;
  for (WorldSet l : levels) {
    if (!(l & first).empty()) low.push_back(l & first);
    if (!(l - first).empty()) high.push_back(l - first);
  }
  low.insert(low.end(), high.begin(), high.end());
  return low;
}

}  // namespace

EpistemicState apply_policy(const EpistemicState& st, WorldSet alpha, WorldSet bel_after,
                            const UpdatePolicy& policy) {
  if (!st.scope().intersects(alpha)) {
    if (bel_after == st.bel()) return st;
    return EpistemicState(bel_after, st.order());
  }
  const std::vector<WorldSet>& prior = st.order().levels();
  std::vector<WorldSet> levels;
  switch (policy.order) {
    case OrderRule::Keep: levels = prior; break;
    case OrderRule::Lex: levels = split_levels(prior, alpha); break;
    case OrderRule::Natural: {
      const WorldSet best = min_set(alpha, st.order());
      levels = split_levels(prior, best);
      break;
    }
  }
  WorldSet scope = st.scope();
  switch (policy.scope) {
    case ScopeRule::Keep: break;
    case ScopeRule::Doc: scope = scope & alpha; break;
    case ScopeRule::ResultOnly:
      if (!(scope & bel_after).empty()) scope = scope & bel_after;
      break;
  }
  RankedOrder ord = restrict(RankedOrder(std::move(levels)), scope);
  const WorldSet inside = bel_after & scope;
  if (!inside.empty() && min_set(scope, ord) != inside) ord = RankedOrder(split_levels(ord.levels(), inside));
  return EpistemicState(bel_after, std::move(ord));
}

// ---------------------------------------------------------------------------
// Operators

ExtensionalTable::ExtensionalTable(std::shared_ptr<const StateUniverse> universe, std::vector<std::uint32_t> targets)
    : universe_(std::move(universe)), classes_(revlab::class_count(universe_->signature())), targets_(std::move(targets)) {
  if (targets_.size() != universe_->size() * classes_) {
    throw std::invalid_argument("extensional table must have one entry per (state, class) pair");
  }
  for (std::uint32_t t : targets_) {
    if (t >= universe_->size()) throw std::invalid_argument("extensional table refers to unknown state " + std::to_string(t));
  }
}

RevisionOperator RevisionOperator::dl(Signature sig, UpdatePolicy policy) {
  return RevisionOperator(Family::Dl, std::move(sig), policy);
}

RevisionOperator RevisionOperator::cl(Signature sig, UpdatePolicy policy) {
  return RevisionOperator(Family::Cl, std::move(sig), policy);
}

RevisionOperator RevisionOperator::agm(Signature sig, UpdatePolicy policy) {
  if (policy.scope != ScopeRule::Keep) throw std::invalid_argument("AGM operators keep the full scope");
  return RevisionOperator(Family::Agm, std::move(sig), policy);
}

RevisionOperator RevisionOperator::il(Signature sig, WorldSet omega_prime, UpdatePolicy policy) {
  if (policy.scope != ScopeRule::Keep) throw std::invalid_argument("inherence-limited operators keep a fixed scope");
  if (omega_prime.empty() || !omega_prime.subset_of(sig.all_worlds())) {
    throw std::invalid_argument("il_scope must be a nonempty set of worlds");
  }
  RevisionOperator op(Family::Il, std::move(sig), policy);
  op.omega_prime_ = omega_prime;
  return op;
}

RevisionOperator RevisionOperator::extensional(ExtensionalTable table) {
  RevisionOperator op(Family::Extensional, table.universe().signature(), {});
  op.table_ = std::make_shared<const ExtensionalTable>(std::move(table));
  return op;
}

namespace {

std::size_t table_id(const ExtensionalTable& t, const EpistemicState& st) {
  auto id = t.universe().find(st);
  if (!id) throw StateError("state is not part of the extensional operator's universe");
  return *id;
}

}  // namespace

WorldSet RevisionOperator::revise(const EpistemicState& st, WorldSet alpha) const {
  switch (family_) {
    case Family::Dl: return dl_revise_beliefs(st, alpha);
    case Family::Cl: return cl_revise_beliefs(st, alpha);
    case Family::Agm: return agm_revise_beliefs(st, alpha, sig_);
    case Family::Il: return il_revise_beliefs(omega_prime_, st, alpha);
    case Family::Extensional: return table_->universe()[table_->target(table_id(*table_, st), alpha)].bel();
  }
  return WorldSet();
}

EpistemicState RevisionOperator::apply(const EpistemicState& st, WorldSet alpha) const {
  if (family_ == Family::Extensional) return table_->universe()[table_->target(table_id(*table_, st), alpha)];
  return apply_policy(st, alpha, revise(st, alpha), policy_);
}

std::string RevisionOperator::name() const {
  std::string out(to_string(family_));
  if (family_ == Family::Extensional) return out;
  if (family_ == Family::Il) out += "{" + sig_.format(omega_prime_) + "}";
  return out + "[" + policy_.name() + "]";
}

ExtensionalTable tabulate(const RevisionOperator& op, std::shared_ptr<const StateUniverse> universe) {
  const std::size_t classes = class_count(universe->signature());
  std::vector<std::uint32_t> targets;
  targets.reserve(universe->size() * classes);
  for (const auto& st : universe->states()) {
    for (std::uint64_t c = 0; c < classes; ++c) {
      const EpistemicState post = op.apply(st, WorldSet(c));
      auto id = universe->find(post);
      if (!id) throw StateError("posterior state lies outside the universe");
      targets.push_back(static_cast<std::uint32_t>(*id));
    }
  }
  return ExtensionalTable(std::move(universe), std::move(targets));
}

RevisionTable revision_table(const RevisionOperator& op, const EpistemicState& st) {
  const std::size_t classes = class_count(op.signature());
  std::vector<WorldSet> results(classes);
  for (std::uint64_t c = 0; c < classes; ++c) results[c] = op.revise(st, WorldSet(c));
  return RevisionTable(st.bel(), std::move(results));
}

// ---------------------------------------------------------------------------
// Reconstruction

LimitedAssignment canonical_assignment(const RevisionOperator& op, const EpistemicState& st,
                                       const StateUniverse& universe, Family target) {
  const Signature& sig = op.signature();
  const RevisionTable t = revision_table(op, st);
  WorldSet scope;
  if (target == Family::Il) {
    const InherenceInfo info(op, universe);
    for (World w = 0; w < sig.world_count(); ++w) {
      if (info.inherent(WorldSet::single(w))) scope |= WorldSet::single(w);
    }
  } else {
    const Classifier cls(t);
    for (World w = 0; w < sig.world_count(); ++w) {
      if (cls.latent(WorldSet::single(w))) scope |= WorldSet::single(w);
    }
  }
  if (scope.empty()) throw ReconstructionError(ReconstructionError::Kind::EmptyScope, "no world qualifies for the scope");

  auto le = [&](World a, World b) { return t[WorldSet::single(a) | WorldSet::single(b)].contains(a); };

  std::vector<WorldSet> levels;
  WorldSet rest = scope;
  while (!rest.empty()) {
    WorldSet level;
    for (World a : rest) {
      bool minimal = true;
      for (World b : rest) minimal = minimal && le(a, b);
      if (minimal) level |= WorldSet::single(a);
    }
    if (level.empty()) {
      throw ReconstructionError(ReconstructionError::Kind::NotWeakOrder,
                                "pairwise relation has no minimum among " + sig.format(rest));
    }
    levels.push_back(level);
    rest = rest - level;
  }
  RankedOrder ord(std::move(levels));
  for (World a : scope) {
    for (World b : scope) {
      if (ord.leq(a, b) != le(a, b)) {
        throw ReconstructionError(ReconstructionError::Kind::NotWeakOrder,
                                  "pairwise relation is not a weak order at " + sig.world_name(a) + ", " +
                                      sig.world_name(b));
      }
    }
  }
  if (!check_faithful_limited(EpistemicState(st.bel(), ord))) {
    throw ReconstructionError(ReconstructionError::Kind::NotFaithful, "reconstructed assignment is not faithful");
  }
  return {std::move(ord), scope};
}

// ---------------------------------------------------------------------------
// Operator files

OperatorParseError::OperatorParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t no;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 1;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back({no, std::string(line)});
    ++no;
  }
  return out;
}

std::pair<std::string, std::string> key_value(const Line& l) {
  const std::size_t colon = l.text.find(':');
  if (colon == std::string::npos) throw OperatorParseError(l.no, "expected 'key: value'");
  return {std::string(trim(std::string_view(l.text).substr(0, colon))),
          std::string(trim(std::string_view(l.text).substr(colon + 1)))};
}

RevisionOperator parse_extensional(const std::vector<Line>& lines, std::size_t start, const Signature& sig) {
  std::vector<EpistemicState> states;
  std::size_t i = start;
  while (i < lines.size() && lines[i].text.rfind("state", 0) == 0) {
    const Line& head = lines[i];
    std::size_t id = 0;
    if (std::sscanf(head.text.c_str(), "state %zu:", &id) != 1 || id != states.size()) {
      throw OperatorParseError(head.no, "expected 'state " + std::to_string(states.size()) + ":'");
    }
    std::string body;
    std::size_t first = ++i < lines.size() ? lines[i].no : head.no;
    while (i < lines.size() && lines[i].text.rfind("state", 0) != 0 && lines[i].text != "table:") {
      body += lines[i].text + "\n";
      ++i;
    }
    try {
      states.push_back(parse_state_body(body, sig, first));
    } catch (const StateParseError& e) {
      throw OperatorParseError(head.no, std::string("in state block: ") + e.what());
    }
  }
  if (i >= lines.size() || lines[i].text != "table:") {
    throw OperatorParseError(i < lines.size() ? lines[i].no : 0, "expected 'table:'");
  }
  ++i;
  auto universe = std::make_shared<const StateUniverse>(sig, UniverseFlags{Assignment::Any, false, false}, states);
  const std::size_t classes = class_count(sig);
  std::vector<std::optional<std::uint32_t>> entries(states.size() * classes);
  for (; i < lines.size(); ++i) {
    std::size_t from = 0, to = 0;
    unsigned long long mask = 0;
    if (std::sscanf(lines[i].text.c_str(), "(%zu , %llu ) -> %zu", &from, &mask, &to) != 3) {
      throw OperatorParseError(lines[i].no, "expected '(<state>, <class mask>) -> <state>'");
    }
    if (from >= states.size() || to >= states.size() || mask >= classes) {
      throw OperatorParseError(lines[i].no, "table entry out of range");
    }
    entries[from * classes + mask] = static_cast<std::uint32_t>(to);
  }
  std::vector<std::uint32_t> targets;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!entries[k]) {
      throw OperatorParseError(lines.back().no, "table has no entry for (" + std::to_string(k / classes) + ", " +
                                                    std::to_string(k % classes) + ")");
    }
    targets.push_back(*entries[k]);
  }
  return RevisionOperator::extensional(ExtensionalTable(universe, std::move(targets)));
}

}  // namespace

RevisionOperator parse_operator(std::string_view text, const Signature& fallback_sig) {
  const auto lines = content_lines(text);
  std::optional<std::string> family;
  std::optional<Signature> sig;
  std::string il_scope;
  bool has_il_scope = false;
  UpdatePolicy policy;
  std::size_t family_line = 1, il_line = 1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (family == "extensional" && lines[i].text.rfind("state", 0) == 0) {
      return parse_extensional(lines, i, sig.value_or(fallback_sig));
    }
    auto [key, value] = key_value(lines[i]);
    try {
      if (key == "family") {
        family = value;
        family_line = lines[i].no;
      } else if (key == "sig") {
        sig = Signature::parse(value);
      } else if (key == "il_scope") {
        il_scope = value;
        has_il_scope = true;
        il_line = lines[i].no;
      } else if (key == "order_rule") {
        policy.order = parse_order_rule(value);
      } else if (key == "scope_rule") {
        policy.scope = parse_scope_rule(value);
      } else {
        throw OperatorParseError(lines[i].no, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw OperatorParseError(lines[i].no, e.what());
    }
  }
  if (!family) throw OperatorParseError(1, "missing 'family:' line");
  const Signature s = sig.value_or(fallback_sig);
  try {
    if (*family == "dl") return RevisionOperator::dl(s, policy);
    if (*family == "cl") return RevisionOperator::cl(s, policy);
    if (*family == "agm") return RevisionOperator::agm(s, policy);
    if (*family == "il") {
      if (!has_il_scope) throw OperatorParseError(family_line, "il operators need an 'il_scope:' line");
      WorldSet omega;
      std::istringstream in(il_scope);
      std::string tok;
      while (in >> tok) omega |= WorldSet::single(s.parse_world(tok));
      return RevisionOperator::il(s, omega, policy);
    }
  } catch (const OperatorParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw OperatorParseError(*family == "il" ? il_line : family_line, e.what());
  }
  if (*family == "extensional") throw OperatorParseError(family_line, "extensional operator has no state blocks");
  throw OperatorParseError(family_line, "unknown family '" + *family + "' (expected dl, cl, agm, il or extensional)");
}

std::string dump_operator(const RevisionOperator& op) {
  const Signature& sig = op.signature();
  std::string out = "family: " + std::string(to_string(op.family())) + "\nsig:";
  for (const auto& a : sig.atoms()) out += " " + a;
  out += "\n";
  if (op.family() != Family::Extensional) {
    if (op.family() == Family::Il) out += "il_scope: " + sig.format(op.omega_prime()) + "\n";
    out += "order_rule: " + std::string(to_string(op.policy().order)) + "\n";
    out += "scope_rule: " + std::string(to_string(op.policy().scope)) + "\n";
    return out;
  }
  const ExtensionalTable& t = *op.table();
  for (std::size_t id = 0; id < t.universe().size(); ++id) {
    out += "state " + std::to_string(id) + ":\n";
    out += dump_state_body(t.universe()[id], sig, "  ");
  }
  out += "table:\n";
  for (std::size_t id = 0; id < t.universe().size(); ++id) {
    for (std::uint64_t c = 0; c < t.class_count(); ++c) {
      out += "(" + std::to_string(id) + ", " + std::to_string(c) + ") -> " +
             std::to_string(t.target(id, WorldSet(c))) + "\n";
    }
  }
  return out;
}

}  // namespace revlab
