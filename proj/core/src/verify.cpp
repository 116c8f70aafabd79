#include "revlab/verify.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

#include <json.hpp>

namespace revlab {

// ---------------------------------------------------------------------------
// Ids

namespace {

constexpr std::array<std::string_view, 38> kPostulateNames = {
    "DL1", "DL2", "DL3", "DL4", "DL5", "DL6", "DL7",
    "CL1", "CL2", "CL3", "CL4", "CL5", "CL6",
    "IL1", "IL2", "IL3", "IL4", "IL5", "IL6", "IL7",
    "DP1", "DP2", "DP3", "DP4",
    "CLDP1", "CLDP2", "CLP", "CLCD", "CM1", "CM2", "FC", "FR", "SC", "SR", "DOC", "COM", "DLDP1", "DLDP2",
};

constexpr std::array<std::string_view, 43> kConditionNames = {
    "FA1", "FA2", "CLF", "LIM-FAITHFUL",
    "CR8", "CR9", "CR10", "CR11",
    "P9.i", "P9.ii", "P9.iii",
    "P10.i", "P10.ii", "P10.iii",
    "P11.i", "P11.ii", "P11.iii", "P11.iv",
    "P12.i", "P12.ii", "P12.iii", "P12.iv",
    "SI1", "SI2", "SD1", "SD2",
    "P14.a", "P14.b", "P15.a", "P15.b",
    "P16.i", "P16.ii", "P16.iii", "P16.iv",
    "C-CLCD", "C-CM1", "C-CM2", "C-FC", "C-FR", "C-SC", "C-SR", "C-DOC", "C-COM",
};

constexpr std::array<std::string_view, 18> kTheoremNames = {
    "P9", "P10", "P11", "P12", "P13a", "P13b", "P14a", "P14b", "P15a", "P15b", "P16",
    "P-CLCD", "P-CM1", "P-CM2", "P-FCFR", "P-SCSR", "P-DOC", "P-COM",
};

constexpr std::array<std::string_view, 38> kPostulateText = {
    "Mod(st*a) = bel or Mod(st*a) ⊆ a",
    "Mod(st*a) = bel or Mod(st*a) is reasonable",
    "bel ∩ a ≠ ∅ and a reasonable imply Mod(st*a) = bel ∩ a",
    "a ⊆ b and a reasonable imply Mod(st*b) reasonable",
    "bel ≠ ∅ implies Mod(st*a) ≠ ∅",
    "equivalent inputs give equal results",
    "Mod(st*(a∪b)) is Mod(st*a), Mod(st*b) or their union",
    "Mod(st*a) ⊆ a or Mod(st*a) = bel",
    "bel ∩ a ≠ ∅ implies Mod(st*a) = bel ∩ a",
    "Mod(st*a) ≠ ∅",
    "equivalent inputs give equal results",
    "Mod(st*a) ⊆ a and a ⊆ b imply Mod(st*b) ⊆ b",
    "Mod(st*(a∪b)) is Mod(st*a), Mod(st*b) or their union",
    "Mod(st*a) = bel or Mod(st*a) ⊆ a",
    "Mod(st*a) = bel or Mod(st*a) is immanent",
    "bel ∩ a ≠ ∅ and a immanent imply Mod(st*a) ∩ a = bel ∩ a",
    "a ⊆ b and a immanent imply Mod(st*b) immanent",
    "Mod(st*a) = ∅ only if bel = ∅",
    "equivalent inputs give equal results",
    "Mod(st*(a∪b)) is Mod(st*a), Mod(st*b) or their union",
    "b ⊆ a implies Mod(st*a*b) = Mod(st*b)",
    "b ⊆ ¬a implies Mod(st*a*b) = Mod(st*b)",
    "Mod(st*b) ⊆ a implies Mod(st*a*b) ⊆ a",
    "Mod(st*b) ∩ a ≠ ∅ implies Mod(st*a*b) ∩ a ≠ ∅",
    "b ⊆ a and b in scope imply Mod(st*a*b) = Mod(st*b)",
    "b ⊆ ¬a and a, b in scope imply Mod(st*a*b) = Mod(st*b)",
    "Mod(st*b) ∩ a ≠ ∅ and a, b in scope imply Mod(st*a*b) ⊆ a",
    "b ⊆ ¬a, b not in scope and a in scope imply b not in scope of st*a",
    "b in scope and b ⊆ a imply b in scope of st*a",
    "a, b in scope and b ⊆ ¬a imply b in scope of st*a",
    "a not in scope implies scope ⊆ scope of st*a",
    "a not in scope implies scope of st*a ⊆ scope",
    "a in scope implies scope ⊆ scope of st*a",
    "a in scope implies scope of st*a ⊆ scope",
    "a in scope and b ⊆ ¬a imply b not in scope of st*a",
    "a not in scope implies a in scope of st*a",
    "b ⊆ a and a, b reasonable imply Mod(st*a*b) = Mod(st*b)",
    "b ⊆ ¬a and a, b reasonable imply Mod(st*a*b) = Mod(st*b)",
};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view text) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::vector<E> all_of_enum() {
  std::vector<E> out;
  for (std::size_t i = 0; i < N; ++i) out.push_back(static_cast<E>(i));
  return out;
}

std::vector<PostulateId> range(PostulateId first, PostulateId last) {
  std::vector<PostulateId> out;
  for (auto i = static_cast<int>(first); i <= static_cast<int>(last); ++i) out.push_back(static_cast<PostulateId>(i));
  return out;
}

std::string braces(const Signature& sig, WorldSet ws) { return "{" + sig.format(ws) + "}"; }

}  // namespace

std::string_view to_string(PostulateId id) { return kPostulateNames[static_cast<std::size_t>(id)]; }
std::string_view to_string(ConditionId id) { return kConditionNames[static_cast<std::size_t>(id)]; }
std::string_view to_string(TheoremId id) { return kTheoremNames[static_cast<std::size_t>(id)]; }

std::string_view to_string(RoundtripFamily f) {
  switch (f) {
    case RoundtripFamily::Dl: return "DL";
    case RoundtripFamily::Il: return "IL";
    case RoundtripFamily::Cl: return "CL";
    case RoundtripFamily::Agm: return "AGM";
    case RoundtripFamily::Dp: return "DP";
  }
  return "?";
}

std::optional<PostulateId> parse_postulate_id(std::string_view text) { return lookup<PostulateId>(kPostulateNames, text); }
std::optional<ConditionId> parse_condition_id(std::string_view text) { return lookup<ConditionId>(kConditionNames, text); }
std::optional<TheoremId> parse_theorem_id(std::string_view text) { return lookup<TheoremId>(kTheoremNames, text); }

const std::vector<PostulateId>& all_postulate_ids() {
  static const auto ids = all_of_enum<PostulateId, kPostulateNames.size()>();
  return ids;
}
const std::vector<ConditionId>& all_condition_ids() {
  static const auto ids = all_of_enum<ConditionId, kConditionNames.size()>();
  return ids;
}
const std::vector<TheoremId>& all_theorem_ids() {
  static const auto ids = all_of_enum<TheoremId, kTheoremNames.size()>();
  return ids;
}

std::vector<PostulateId> dl_postulates() { return range(PostulateId::DL1, PostulateId::DL7); }
std::vector<PostulateId> cl_postulates() { return range(PostulateId::CL1, PostulateId::CL6); }
std::vector<PostulateId> il_postulates() { return range(PostulateId::IL1, PostulateId::IL7); }

bool is_two_step(PostulateId id) { return id >= PostulateId::DP1; }

bool is_binary(PostulateId id) {
  switch (id) {
    case PostulateId::DL4:
    case PostulateId::DL7:
    case PostulateId::CL5:
    case PostulateId::CL6:
    case PostulateId::IL4:
    case PostulateId::IL7: return true;
    case PostulateId::COM: return false;
    default: return is_two_step(id);
  }
}

// ---------------------------------------------------------------------------
// Verdicts

void Verdict::record(Counterexample c) {
  ++violations;
  if (counterexamples.size() < std::max<std::size_t>(max_kept, 1)) counterexamples.push_back(std::move(c));
}

void Verdict::merge(const Verdict& other) {
  instances += other.instances;
  violations += other.violations;
  for (const auto& c : other.counterexamples) {
    if (counterexamples.size() >= std::max<std::size_t>(max_kept, 1)) break;
    counterexamples.push_back(c);
  }
}

std::vector<WorldSet> formula_domain(const Signature& sig, bool consistent_only) {
  std::vector<WorldSet> out = enumerate_formula_classes(sig);
  if (consistent_only) out.erase(out.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Postulates

namespace {

struct StateData {
  RevisionTable t;
  FormulaClassSet scope;
  mutable std::optional<Classifier> cls;

  explicit StateData(RevisionTable table) : t(std::move(table)), scope(syntactic_scope(t)) {}
  const Classifier& classifier() const {
    if (!cls) cls.emplace(t);
    return *cls;
  }
};

struct StepData {
  EpistemicState post;
  RevisionTable t;
  FormulaClassSet scope;
};

StepData make_step(const RevisionOperator& op, const EpistemicState& st, WorldSet a) {
  EpistemicState post = op.apply(st, a);
  RevisionTable t = revision_table(op, post);
  FormulaClassSet sc = syntactic_scope(t);
  return {std::move(post), std::move(t), std::move(sc)};
}

struct PostulateInput {
  const StateData& s;
  const StepData* step;
  const InherenceInfo* inh;
  WorldSet all;
};

bool trichotomy(const RevisionTable& t, WorldSet a, WorldSet b) {
  const WorldSet r = t[a | b];
  return r == t[a] || r == t[b] || r == (t[a] | t[b]);
}

bool postulate_holds(PostulateId id, const PostulateInput& in, WorldSet a, WorldSet b) {
  const RevisionTable& t = in.s.t;
  const WorldSet bel = t.bel();
  const WorldSet na = in.all - a;
  auto reasonable = [&](WorldSet c) { return in.s.classifier().reasonable(c); };
  auto immanent = [&](WorldSet c) { return in.inh->immanent(c); };
  auto in_scope = [&](WorldSet c) { return in.s.scope.contains(c); };
  auto in_scope2 = [&](WorldSet c) { return in.step->scope.contains(c); };
  auto same_second = [&](WorldSet c) { return in.step->t[c] == t[c]; };
  switch (id) {
    case PostulateId::DL1:
    case PostulateId::CL1:
    case PostulateId::IL1: return t[a] == bel || t[a].subset_of(a);
    case PostulateId::DL2: return t[a] == bel || reasonable(t[a]);
    case PostulateId::DL3: return !(bel.intersects(a) && reasonable(a)) || t[a] == (bel & a);
    case PostulateId::DL4: return !(a.subset_of(b) && reasonable(a)) || reasonable(t[b]);
    case PostulateId::DL5: return bel.empty() || !t[a].empty();
    case PostulateId::DL6:
    case PostulateId::CL4:
    case PostulateId::IL6: return t[a] == t[WorldSet(a.mask())];
    case PostulateId::DL7:
    case PostulateId::CL6:
    case PostulateId::IL7: return trichotomy(t, a, b);
    case PostulateId::CL2: return !bel.intersects(a) || t[a] == (bel & a);
    case PostulateId::CL3: return !t[a].empty();
    case PostulateId::CL5: return !(t[a].subset_of(a) && a.subset_of(b)) || t[b].subset_of(b);
    case PostulateId::IL2: return t[a] == bel || immanent(t[a]);
    case PostulateId::IL3: return !(bel.intersects(a) && immanent(a)) || (t[a] & a) == (bel & a);
    case PostulateId::IL4: return !(a.subset_of(b) && immanent(a)) || immanent(t[b]);
    case PostulateId::IL5: return !t[a].empty() || bel.empty();
    case PostulateId::DP1: return !b.subset_of(a) || same_second(b);
    case PostulateId::DP2: return !b.subset_of(na) || same_second(b);
    case PostulateId::DP3: return !t[b].subset_of(a) || in.step->t[b].subset_of(a);
    case PostulateId::DP4: return !t[b].intersects(a) || in.step->t[b].intersects(a);
    case PostulateId::CLDP1: return !(b.subset_of(a) && in_scope(b)) || same_second(b);
    case PostulateId::CLDP2: return !(b.subset_of(na) && in_scope(a) && in_scope(b)) || same_second(b);
    case PostulateId::CLP: return !(t[b].intersects(a) && in_scope(a) && in_scope(b)) || in.step->t[b].subset_of(a);
    case PostulateId::CLCD: return !(b.subset_of(na) && !in_scope(b) && in_scope(a)) || !in_scope2(b);
    case PostulateId::CM1: return !(in_scope(b) && b.subset_of(a)) || in_scope2(b);
    case PostulateId::CM2: return !(in_scope(a) && in_scope(b) && b.subset_of(na)) || in_scope2(b);
    case PostulateId::FC: return in_scope(a) || !in_scope(b) || in_scope2(b);
    case PostulateId::FR: return in_scope(a) || !in_scope2(b) || in_scope(b);
    case PostulateId::SC: return !in_scope(a) || !in_scope(b) || in_scope2(b);
    case PostulateId::SR: return !in_scope(a) || !in_scope2(b) || in_scope(b);
    case PostulateId::DOC: return !(in_scope(a) && b.subset_of(na)) || !in_scope2(b);
    case PostulateId::COM: return in_scope(a) || in_scope2(a);
    case PostulateId::DLDP1: return !(b.subset_of(a) && reasonable(a) && reasonable(b)) || same_second(b);
    case PostulateId::DLDP2: return !(b.subset_of(na) && reasonable(a) && reasonable(b)) || same_second(b);
  }
  return false;
}

bool needs_inherence(PostulateId id) {
  return id == PostulateId::IL2 || id == PostulateId::IL3 || id == PostulateId::IL4;
}

Counterexample postulate_counterexample(PostulateId id, std::size_t state_id, const EpistemicState& st,
                                        const PostulateInput& in, const Signature& sig, WorldSet a, WorldSet b) {
  Counterexample c{state_id, st, {a}, std::string(to_string(id)), "", std::string(kPostulateText[static_cast<std::size_t>(id)])};
  c.observed = "bel=" + braces(sig, in.s.t.bel()) + " Mod(st*a)=" + braces(sig, in.s.t[a]);
  if (is_binary(id)) {
    c.formulas.push_back(b);
    c.observed += " Mod(st*b)=" + braces(sig, in.s.t[b]);
    if (id == PostulateId::DL7 || id == PostulateId::CL6 || id == PostulateId::IL7) {
      c.observed += " Mod(st*(a|b))=" + braces(sig, in.s.t[a | b]);
    }
  }
  if (in.step) {
    c.observed += " bel'=" + braces(sig, in.step->post.bel());
    if (is_binary(id)) c.observed += " Mod(st*a*b)=" + braces(sig, in.step->t[b]);
  }
  return c;
}

Counterexample error_counterexample(std::size_t state_id, const EpistemicState& st, std::vector<WorldSet> formulas,
                                    const std::exception& e) {
  return {state_id, st, std::move(formulas), "precondition", e.what(), "operator defined on this state"};
}

}  // namespace

Verdict check_postulate(const RevisionOperator& op, const StateUniverse& universe, PostulateId id,
                        const CheckOptions& opts) {
  const Signature& sig = op.signature();
  Verdict v;
  v.id = std::string(to_string(id));
  v.op_name = op.name();
  v.atoms = sig.atom_count();
  v.max_kept = opts.max_counterexamples;
  const std::vector<WorldSet> dom = formula_domain(sig, opts.consistent_only);
  const WorldSet all = sig.all_worlds();

  std::vector<std::optional<StateData>> data(universe.size());
  bool all_defined = true;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    try {
      data[i].emplace(revision_table(op, universe[i]));
    } catch (const std::exception& e) {
      v.record(error_counterexample(i, universe[i], {}, e));
      all_defined = false;
    }
  }
  std::optional<InherenceInfo> inh;
  if (needs_inherence(id)) {
    if (!all_defined) return v;
    inh.emplace(op, universe);
  }

  std::mt19937_64 rng(opts.seed);
  const bool sample = is_binary(id) && dom.size() > 16;
  std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);

  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (!data[i]) continue;
    const EpistemicState& st = universe[i];
    std::optional<StepData> step;
    WorldSet step_for;
    bool step_failed = false;
    auto eval = [&](WorldSet a, WorldSet b) {
      if (is_two_step(id) && (!step || step_for != a)) {
        step.reset();
        step_failed = false;
        try {
          step = make_step(op, st, a);
          step_for = a;
        } catch (const std::exception& e) {
          v.record(error_counterexample(i, st, {a}, e));
          step_failed = true;
          return;
        }
      }
      if (step_failed) return;
      const PostulateInput in{*data[i], step ? &*step : nullptr, inh ? &*inh : nullptr, all};
      ++v.instances;
      if (!postulate_holds(id, in, a, b)) v.record(postulate_counterexample(id, i, st, in, sig, a, b));
    };
    if (!is_binary(id)) {
      for (WorldSet a : dom) eval(a, WorldSet());
    } else if (!sample) {
      for (WorldSet a : dom) {
        for (WorldSet b : dom) eval(a, b);
      }
    } else {
      std::vector<std::pair<WorldSet, WorldSet>> pairs;
      for (std::size_t k = 0; k < opts.pair_samples; ++k) pairs.emplace_back(dom[pick(rng)], dom[pick(rng)]);
      std::sort(pairs.begin(), pairs.end());
      for (auto [a, b] : pairs) eval(a, b);
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Conditions

WorldSet accepted_worlds(const EpistemicState& st, const Signature& sig) {
  WorldSet out;
  for (World w = 0; w < sig.world_count(); ++w) {
    const WorldSet s = WorldSet::single(w);
    if (dl_revise_beliefs(st, s).subset_of(s)) out |= s;
  }
  return out;
}

namespace {

struct Transition {
  const EpistemicState& st;
  const EpistemicState& post;
  WorldSet a, na, all;
  WorldSet S, S2, B, B2;
  const RankedOrder& o1;
  const RankedOrder& o2;
  const Signature& sig;
  bool consistent_only;

  Transition(const EpistemicState& s, const EpistemicState& p, WorldSet alpha, const Signature& g, bool co)
      : st(s), post(p), a(alpha), na(g.all_worlds() - alpha), all(g.all_worlds()), S(s.scope()), S2(p.scope()),
        B(s.bel()), B2(p.bel()), o1(s.order()), o2(p.order()), sig(g), consistent_only(co) {}

  template <typename F>
  bool all_pairs(WorldSet x, WorldSet y, F&& f) const {
    for (World w1 : x) {
      for (World w2 : y) {
        if (!f(w1, w2)) return false;
      }
    }
    return true;
  }
  template <typename F>
  bool all_betas(F&& f) const {
    for (WorldSet b : formula_domain(sig, consistent_only)) {
      if (!f(b)) return false;
    }
    return true;
  }
};

bool implies(bool p, bool q) { return !p || q; }

// Clauses (i)-(iii) for the side x of alpha, worlds limited to f.
bool order_kept(const Transition& t, WorldSet x, WorldSet f) {
  const WorldSet ws = x & t.S & t.S2 & f;
  return t.all_pairs(ws, ws, [&](World w1, World w2) { return t.o1.leq(w1, w2) == t.o2.leq(w1, w2); });
}

bool prior_side_kept(const Transition& t, WorldSet x, WorldSet f) {
  const WorldSet side = t.S & x & f;
  if ((t.S & x).size() >= 2) return side.subset_of(t.S2);
  return (side - t.B2).subset_of(t.S2);
}

bool posterior_side_known(const Transition& t, WorldSet x, WorldSet f) {
  const WorldSet side = t.S2 & x & f;
  if (t.B.size() >= 2) return side.subset_of(t.S);
  return (side - t.B).subset_of(t.S);
}

bool in(WorldSet s, World w) { return s.contains(w); }

bool dp3_i(const Transition& t, WorldSet f) {
  const WorldSet both = t.S & t.S2 & f;
  return t.all_pairs(t.a & both, t.na & both,
                     [&](World w1, World w2) { return implies(t.o1.strict(w1, w2), t.o2.strict(w1, w2)); });
}

bool dp3_ii(const Transition& t) {
  return t.all_pairs(t.a & t.S, t.na & t.S, [&](World w1, World w2) {
    return implies(t.o1.strict(w1, w2), implies(in(t.S2, w2), in(t.S2, w1)));
  });
}

bool dp3_iii(const Transition& t) {
  if (!t.B.subset_of(t.a)) return true;
  return (t.na & t.S2).subset_of(t.S);
}

bool dp3_iv(const Transition& t) {
  return t.all_pairs(t.a & t.S, t.na & t.S2, [&](World w1, World w2) {
    return implies(!in(t.S2, w1) || t.o2.leq(w2, w1), in(t.S, w2));
  });
}

bool dp4_i(const Transition& t) {
  const WorldSet both = t.S & t.S2;
  return t.all_pairs(t.a & both, t.na & both,
                     [&](World w1, World w2) { return implies(t.o2.strict(w2, w1), t.o1.strict(w2, w1)); });
}

bool dp4_ii(const Transition& t) {
  return t.all_pairs(t.a & t.S2, t.na & t.S2, [&](World w1, World w2) {
    return implies(t.o2.strict(w2, w1), implies(in(t.S, w1), in(t.S, w2)));
  });
}

bool dp4_iii(const Transition& t, WorldSet f) {
  if (!t.B.intersects(t.a)) return true;
  return (t.na & t.S2 & f).subset_of(t.S);
}

bool dp4_iv(const Transition& t, WorldSet f) {
  return t.all_pairs(t.a & t.S & f, t.na & t.S2 & f, [&](World w1, World w2) {
    return implies(!in(t.S, w2) || t.o1.leq(w1, w2), in(t.S2, w1));
  });
}

bool clp_i(const Transition& t, WorldSet f) {
  const WorldSet both = t.S & t.S2 & f;
  return t.all_pairs(t.a & both, t.na & both,
                     [&](World w1, World w2) { return implies(t.o1.leq(w1, w2), t.o2.strict(w1, w2)); });
}

bool clp_ii(const Transition& t, WorldSet f) {
  return t.all_pairs(t.a & t.S & f, t.na & t.S & f, [&](World w1, World w2) {
    return implies(t.o1.leq(w1, w2), implies(in(t.S2, w2), in(t.S2, w1)));
  });
}

bool scope_grows(const Transition& t, bool first) {
  return t.all_betas([&](WorldSet b) {
    if (first) return implies(b.intersects(t.S), b.intersects(t.S2) || t.B2.subset_of(b));
    return implies(t.B.subset_of(b) && !t.B2.subset_of(b), b.intersects(t.S2));
  });
}

bool scope_shrinks(const Transition& t, bool first) {
  return t.all_betas([&](WorldSet b) {
    if (first) return implies(b.intersects(t.S2), b.intersects(t.S) || t.B.subset_of(b));
    return implies(t.B2.subset_of(b) && !t.B.subset_of(b), b.intersects(t.S));
  });
}

bool comparable_all(const Transition& t, WorldSet x, WorldSet dom1, WorldSet dom2) {
  const WorldSet ws = x & dom1 & dom2;
  return t.all_pairs(ws, ws, [&](World w1, World w2) { return t.o1.leq(w1, w2) == t.o2.leq(w1, w2); });
}

}  // namespace

bool check_condition(const EpistemicState& st, const EpistemicState& post, WorldSet alpha, ConditionId id,
                     const Signature& sig, bool consistent_only) {
  const Transition t(st, post, alpha, sig, consistent_only);
  const WorldSet everything = t.all;
  auto A = [&] { return accepted_worlds(st, sig); };
  auto dl = [&](WorldSet b) { return dl_revise_beliefs(st, b); };
  switch (id) {
    case ConditionId::FA1:
      return t.all_pairs(t.B, t.B, [&](World w1, World w2) {
        return in(t.S, w1) && in(t.S, w2) && t.o1.leq(w1, w2) && t.o1.leq(w2, w1);
      });
    case ConditionId::FA2:
      return t.all_pairs(t.B, everything - t.B,
                         [&](World w1, World w2) { return in(t.S, w1) && in(t.S, w2) && t.o1.strict(w1, w2); });
    case ConditionId::CLF: return check_clf(st);
    case ConditionId::LimFaithful: return check_faithful_limited(st);
    case ConditionId::CR8: return comparable_all(t, t.a, t.S, t.S2);
    case ConditionId::CR9: return comparable_all(t, t.na, t.S, t.S2);
    case ConditionId::CR10:
      return t.all_pairs(t.a & t.S & t.S2, t.na & t.S & t.S2,
                         [&](World w1, World w2) { return implies(t.o1.strict(w1, w2), t.o2.strict(w1, w2)); });
    case ConditionId::CR11:
      return t.all_pairs(t.a & t.S & t.S2, t.na & t.S & t.S2,
                         [&](World w1, World w2) { return implies(t.o1.leq(w1, w2), t.o2.leq(w1, w2)); });
    case ConditionId::P9_i: return order_kept(t, t.a, everything);
    case ConditionId::P9_ii: return prior_side_kept(t, t.a, everything);
    case ConditionId::P9_iii: return posterior_side_known(t, t.a, everything);
    case ConditionId::P10_i: return order_kept(t, t.na, everything);
    case ConditionId::P10_ii: return prior_side_kept(t, t.na, everything);
    case ConditionId::P10_iii: return posterior_side_known(t, t.na, everything);
    case ConditionId::P11_i: return dp3_i(t, everything);
    case ConditionId::P11_ii: return dp3_ii(t);
    case ConditionId::P11_iii: return dp3_iii(t);
    case ConditionId::P11_iv: return dp3_iv(t);
    case ConditionId::P12_i: return dp4_i(t);
    case ConditionId::P12_ii: return dp4_ii(t);
    case ConditionId::P12_iii: return dp4_iii(t, everything);
    case ConditionId::P12_iv: return dp4_iv(t, everything);
    case ConditionId::SI1: return scope_grows(t, true);
    case ConditionId::SI2: return scope_grows(t, false);
    case ConditionId::SD1: return scope_shrinks(t, true);
    case ConditionId::SD2: return scope_shrinks(t, false);
    case ConditionId::P14_a: {
      const WorldSet f = A();
      return order_kept(t, t.a, f) && prior_side_kept(t, t.a, f) && posterior_side_known(t, t.a, f);
    }
    case ConditionId::P14_b: {
      const WorldSet f = A();
      return order_kept(t, t.na, f) && prior_side_kept(t, t.na, f) && posterior_side_known(t, t.na, f);
    }
    case ConditionId::P15_a: return order_kept(t, t.a, everything);
    case ConditionId::P15_b: return order_kept(t, t.na, everything);
    case ConditionId::P16_i: return clp_i(t, A());
    case ConditionId::P16_ii: return clp_ii(t, A());
    case ConditionId::P16_iii: return dp4_iii(t, A());
    case ConditionId::P16_iv: return dp4_iv(t, A());
    case ConditionId::C_CLCD:
      return t.all_betas([&](WorldSet b) {
        return implies(b.subset_of(t.na) && t.B2.subset_of(t.a) && !dl(b).subset_of(b), !b.intersects(t.S2));
      });
    case ConditionId::C_CM1:
      return t.all_betas([&](WorldSet b) {
        return implies(b.subset_of(t.a) && (dl(b).subset_of(b) || b.intersects(t.S)),
                       t.B2.subset_of(b) || b.intersects(t.S2));
      });
    case ConditionId::C_CM2:
      return t.all_betas([&](WorldSet b) {
        return implies(b.subset_of(t.na) && t.B2.subset_of(t.a) && dl(b).subset_of(b),
                       t.B2.subset_of(b) || b.intersects(t.S2));
      });
    case ConditionId::C_FC: return implies(!t.B2.subset_of(t.a), scope_grows(t, true) && scope_grows(t, false));
    case ConditionId::C_FR: return implies(!t.B2.subset_of(t.a), scope_shrinks(t, true) && scope_shrinks(t, false));
    case ConditionId::C_SC: return implies(t.B2.subset_of(t.a), scope_grows(t, true) && scope_grows(t, false));
    case ConditionId::C_SR: return implies(t.B2.subset_of(t.a), scope_shrinks(t, true) && scope_shrinks(t, false));
    case ConditionId::C_DOC:
      return t.all_betas([&](WorldSet b) {
        return implies(t.a.intersects(t.S) && b.subset_of(t.na), !b.intersects(t.S2)) &&
               implies(t.B.subset_of(t.a) && b.subset_of(t.na), !b.intersects(t.S2));
      });
    case ConditionId::C_COM: return implies(!t.a.intersects(t.S) && !t.B.subset_of(t.a), t.a.intersects(t.S2));
  }
  return false;
}

// ---------------------------------------------------------------------------
// Equivalences

namespace {

struct Side {
  std::vector<PostulateId> postulates;
  int scope_relation = 0;  // 1: scope ⊆ scope', -1: scope' ⊆ scope
  std::vector<ConditionId> conditions;
};

std::vector<Side> theorem_sides(TheoremId id) {
  using P = PostulateId;
  using C = ConditionId;
  switch (id) {
    case TheoremId::P9: return {{{P::DP1}, 0, {C::P9_i, C::P9_ii, C::P9_iii}}};
    case TheoremId::P10: return {{{P::DP2}, 0, {C::P10_i, C::P10_ii, C::P10_iii}}};
    case TheoremId::P11: return {{{P::DP3}, 0, {C::P11_i, C::P11_ii, C::P11_iii, C::P11_iv}}};
    case TheoremId::P12: return {{{P::DP4}, 0, {C::P12_i, C::P12_ii, C::P12_iii, C::P12_iv}}};
    case TheoremId::P13a: return {{{}, 1, {C::SI1, C::SI2}}};
    case TheoremId::P13b: return {{{}, -1, {C::SD1, C::SD2}}};
    case TheoremId::P14a: return {{{P::CLDP1}, 0, {C::P14_a}}};
    case TheoremId::P14b: return {{{P::CLDP2}, 0, {C::P14_b}}};
    case TheoremId::P15a: return {{{P::DLDP1}, 0, {C::P15_a}}};
    case TheoremId::P15b: return {{{P::DLDP2}, 0, {C::P15_b}}};
    case TheoremId::P16: return {{{P::CLP}, 0, {C::P16_i, C::P16_ii, C::P16_iii, C::P16_iv}}};
    case TheoremId::P_CLCD: return {{{P::CLCD}, 0, {C::C_CLCD}}};
    case TheoremId::P_CM1: return {{{P::CM1}, 0, {C::C_CM1}}};
    case TheoremId::P_CM2: return {{{P::CM2}, 0, {C::C_CM2}}};
    case TheoremId::P_FCFR: return {{{P::FC}, 0, {C::C_FC}}, {{P::FR}, 0, {C::C_FR}}};
    case TheoremId::P_SCSR: return {{{P::SC}, 0, {C::C_SC}}, {{P::SR}, 0, {C::C_SR}}};
    case TheoremId::P_DOC: return {{{P::DOC}, 0, {C::C_DOC}}};
    case TheoremId::P_COM: return {{{P::COM}, 0, {C::C_COM}}};
  }
  return {};
}

std::string names_of(const std::vector<ConditionId>& ids) {
  std::string out;
  for (ConditionId c : ids) out += (out.empty() ? "" : "+") + std::string(to_string(c));
  return out;
}

void equivalence_instance(const RevisionOperator& op, const EpistemicState& st, std::optional<std::size_t> state_id,
                          WorldSet a, TheoremId theorem, const std::vector<WorldSet>& dom, bool consistent_only,
                          Verdict& v) {
  const Signature& sig = op.signature();
  ++v.instances;
  try {
    const StateData s(revision_table(op, st));
    const StepData step = make_step(op, st, a);
    const PostulateInput in{s, &step, nullptr, sig.all_worlds()};
    for (const Side& side : theorem_sides(theorem)) {
      bool post_side = true;
      for (PostulateId p : side.postulates) {
        for (WorldSet b : dom) post_side = post_side && postulate_holds(p, in, a, b);
      }
      for (WorldSet b : dom) {
        if (side.scope_relation == 1) post_side = post_side && (!s.scope.contains(b) || step.scope.contains(b));
        if (side.scope_relation == -1) post_side = post_side && (!step.scope.contains(b) || s.scope.contains(b));
      }
      bool cond_side = true;
      std::string failed;
      for (ConditionId c : side.conditions) {
        if (!check_condition(st, step.post, a, c, sig, consistent_only)) {
          cond_side = false;
          failed += (failed.empty() ? "" : ",") + std::string(to_string(c));
        }
      }
      if (post_side != cond_side) {
        std::string lhs;
        for (PostulateId p : side.postulates) lhs += std::string(to_string(p));
        if (side.scope_relation == 1) lhs = "scope grows";
        if (side.scope_relation == -1) lhs = "scope shrinks";
        Counterexample c{state_id, st, {a}, lhs + " <=> " + names_of(side.conditions), "", ""};
        c.observed = lhs + (post_side ? " holds" : " fails") + "; conditions " +
                     (cond_side ? "hold" : "fail at " + failed) + "; posterior bel=" + braces(sig, step.post.bel()) +
                     " scope=" + braces(sig, step.post.scope()) + " order=" + step.post.order().to_string(sig);
        c.required = "both sides agree";
        v.record(std::move(c));
        return;
      }
    }
  } catch (const std::exception& e) {
    v.record(error_counterexample(state_id.value_or(0), st, {a}, e));
  }
}

}  // namespace

Verdict verify_equivalence(const RevisionOperator& op, const StateUniverse& universe, TheoremId theorem,
                           const CheckOptions& opts) {
  const Signature& sig = op.signature();
  Verdict v;
  v.id = std::string(to_string(theorem));
  v.op_name = op.name();
  v.atoms = sig.atom_count();
  v.max_kept = opts.max_counterexamples;
  const auto dom = formula_domain(sig, opts.consistent_only);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (WorldSet a : dom) equivalence_instance(op, universe[i], i, a, theorem, dom, opts.consistent_only, v);
  }
  return v;
}

Verdict verify_equivalence_sampled(const Signature& sig, TheoremId theorem, std::size_t count,
                                   const CheckOptions& opts) {
  Verdict v;
  v.id = std::string(to_string(theorem));
  v.op_name = "dl[sampled policies]";
  v.atoms = sig.atom_count();
  v.max_kept = opts.max_counterexamples;
  const auto dom = formula_domain(sig, opts.consistent_only);
  const auto policies = UpdatePolicy::all();
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick_policy(0, policies.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_class(0, dom.size() - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const UpdatePolicy policy = policies[pick_policy(rng)];
    const EpistemicState st = random_state(sig, UniverseFlags{}, rng);
    const WorldSet a = dom[pick_class(rng)];
    equivalence_instance(RevisionOperator::dl(sig, policy), st, std::nullopt, a, theorem, dom, opts.consistent_only, v);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Representation

Verdict representation_roundtrip(const RevisionOperator& op, const StateUniverse& universe, RoundtripFamily family,
                                 const CheckOptions& opts) {
  const Signature& sig = op.signature();
  Verdict v;
  v.id = "RT-" + std::string(to_string(family));
  v.op_name = op.name();
  v.atoms = sig.atom_count();
  v.max_kept = opts.max_counterexamples;
  const auto dom = formula_domain(sig, opts.consistent_only);

  if (family == RoundtripFamily::Dp) {
    const std::array<std::pair<PostulateId, ConditionId>, 4> pairs = {{{PostulateId::DP1, ConditionId::CR8},
                                                                       {PostulateId::DP2, ConditionId::CR9},
                                                                       {PostulateId::DP3, ConditionId::CR10},
                                                                       {PostulateId::DP4, ConditionId::CR11}}};
    for (std::size_t i = 0; i < universe.size(); ++i) {
      const EpistemicState& st = universe[i];
      try {
        const StateData s(revision_table(op, st));
        for (WorldSet a : dom) {
          const StepData step = make_step(op, st, a);
          const PostulateInput in{s, &step, nullptr, sig.all_worlds()};
          for (auto [p, c] : pairs) {
            ++v.instances;
            bool post_side = true;
            for (WorldSet b : dom) post_side = post_side && postulate_holds(p, in, a, b);
            const bool cond_side = check_condition(st, step.post, a, c, sig, opts.consistent_only);
            if (post_side != cond_side) {
              v.record({i, st, {a}, std::string(to_string(p)) + " <=> " + std::string(to_string(c)),
                        std::string(to_string(p)) + (post_side ? " holds, " : " fails, ") + std::string(to_string(c)) +
                            (cond_side ? " holds" : " fails"),
                        "both sides agree"});
            }
          }
        }
      } catch (const std::exception& e) {
        v.record(error_counterexample(i, st, {}, e));
      }
    }
    return v;
  }

  std::vector<PostulateId> suite;
  switch (family) {
    case RoundtripFamily::Dl: suite = dl_postulates(); break;
    case RoundtripFamily::Il: suite = il_postulates(); break;
    case RoundtripFamily::Cl:
    case RoundtripFamily::Agm: suite = cl_postulates(); break;
    case RoundtripFamily::Dp: break;
  }
  for (PostulateId p : suite) v.merge(check_postulate(op, universe, p, opts));

  const Family target = family == RoundtripFamily::Il ? Family::Il : Family::Dl;
  const bool compare_source = op.family() != Family::Extensional;
  std::optional<WorldSet> shared_scope;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const EpistemicState& st = universe[i];
    ++v.instances;
    try {
      const LimitedAssignment la = canonical_assignment(op, st, universe, target);
      const EpistemicState rebuilt(st.bel(), la.order);
      for (std::uint64_t c = opts.consistent_only ? 1 : 0; c < class_count(sig); ++c) {
        const WorldSet got = dl_revise_beliefs(rebuilt, WorldSet(c));
        const WorldSet want = op.revise(st, WorldSet(c));
        if (got != want) {
          v.record({i, st, {WorldSet(c)}, "reconstruction",
                    "rebuilt order " + la.order.to_string(sig) + " gives " + braces(sig, got),
                    "Mod(st*a)=" + braces(sig, want)});
          break;
        }
      }
      if (compare_source && la.order != st.order()) {
        v.record({i, st, {}, "reconstruction", "rebuilt order " + la.order.to_string(sig),
                  "source order " + st.order().to_string(sig)});
      }
      if (family == RoundtripFamily::Il) {
        if (!shared_scope) shared_scope = la.scope;
        if (*shared_scope != la.scope) {
          v.record({i, st, {}, "constant scope", "scope " + braces(sig, la.scope),
                    "scope " + braces(sig, *shared_scope) + " as for the first state"});
        }
      }
      if (family == RoundtripFamily::Cl && !check_clf(rebuilt)) {
        v.record({i, st, {}, "CLF", "rebuilt state is not CLF", "bel ⊆ scope and min(scope) = bel"});
      }
      if (family == RoundtripFamily::Agm && !check_fa(rebuilt, sig)) {
        v.record({i, st, {}, "FA", "rebuilt scope " + braces(sig, la.scope), "scope Ω with level 0 = bel"});
      }
    } catch (const ReconstructionError& e) {
      v.record({i, st, {}, "reconstruction", e.what(), "a faithful weak order"});
    } catch (const std::exception& e) {
      v.record(error_counterexample(i, st, {}, e));
    }
  }
  return v;
}

MutationReport mutation_test(const RevisionOperator& op, std::shared_ptr<const StateUniverse> universe,
                             std::size_t count, std::uint64_t seed) {
  const ExtensionalTable base = tabulate(op, universe);
  const Signature& sig = universe->signature();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_state(0, universe->size() - 1);
  std::uniform_int_distribution<std::uint64_t> pick_class(0, base.class_count() - 1);
  MutationReport report;
  for (std::size_t k = 0; k < count; ++k) {
    ExtensionalTable table = base;
    const std::size_t id = pick_state(rng);
    const WorldSet c(pick_class(rng));
    const WorldSet old_bel = (*universe)[table.target(id, c)].bel();
    std::size_t to = pick_state(rng);
    while ((*universe)[to].bel() == old_bel) to = pick_state(rng);
    table.set_target(id, c, static_cast<std::uint32_t>(to));
    const RevisionOperator mutated = RevisionOperator::extensional(std::move(table));
    ++report.mutations;
    const EpistemicState& st = (*universe)[id];
    try {
      const LimitedAssignment la = canonical_assignment(mutated, st, *universe);
      const EpistemicState rebuilt(st.bel(), la.order);
      for (std::uint64_t m = 0; m < class_count(sig); ++m) {
        if (dl_revise_beliefs(rebuilt, WorldSet(m)) != mutated.revise(st, WorldSet(m))) {
          ++report.detected;
          break;
        }
      }
    } catch (const ReconstructionError&) {
      ++report.detected;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Separation

bool SeparationReport::consistent() const {
  for (const auto& r : rows) {
    if ((r.passes_il && r.passes_cl) != r.agm_shaped) return false;
  }
  return true;
}

SeparationReport separation_families(const Signature& sig, const CheckOptions& opts) {
  SeparationReport report;
  const WorldSet all = sig.all_worlds();
  const StateUniverse faithful = enumerate_states(sig, UniverseFlags{Assignment::Faithful, false, true});
  const StateUniverse clf = enumerate_states(sig, UniverseFlags{Assignment::Clf, false, true});

  auto run = [&](std::string name, const RevisionOperator& op, const StateUniverse& u) {
    SeparationRow row;
    row.name = std::move(name);
    row.il.id = "IL1-IL7";
    row.cl.id = "CL1-CL6";
    row.il.op_name = row.cl.op_name = op.name();
    row.il.atoms = row.cl.atoms = sig.atom_count();
    for (PostulateId p : il_postulates()) row.il.merge(check_postulate(op, u, p, opts));
    for (PostulateId p : cl_postulates()) row.cl.merge(check_postulate(op, u, p, opts));
    row.passes_il = row.il.holds();
    row.passes_cl = row.cl.holds();
    row.agm_shaped = std::all_of(u.states().begin(), u.states().end(),
                                 [&](const EpistemicState& st) { return check_fa(st, sig); });
    report.rows.push_back(std::move(row));
  };

  for (std::uint64_t m = 1; m <= all.mask(); ++m) {
    const WorldSet omega(m);
    const StateUniverse u = filter_universe(faithful, faithful.flags(),
                                            [&](const EpistemicState& st) { return st.scope() == omega; });
    const RevisionOperator op = RevisionOperator::il(sig, omega, {OrderRule::Lex, ScopeRule::Keep});
    run(op.name(), op, u);
    if (omega == all) continue;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].bel() != all) continue;
      const World w = *(all - omega).begin();
      const WorldSet alpha = WorldSet::single(w);
      const WorldSet got = op.revise(u[i], alpha);
      if (got != (u[i].bel() & alpha)) {
        report.cl2_witnesses.push_back({i, u[i], {alpha}, "CL2", "Mod(st*a)=" + braces(sig, got) + " for " + op.name(),
                                        "Mod(st*a)=" + braces(sig, u[i].bel() & alpha)});
      }
      break;
    }
  }
  for (std::uint64_t k = 0; k <= all.mask(); ++k) {
    const WorldSet extra(k);
    const StateUniverse u =
        filter_universe(clf, clf.flags(), [&](const EpistemicState& st) { return st.scope() == (st.bel() | extra); });
    run("cl{K=" + sig.format(extra) + "}", RevisionOperator::cl(sig), u);
  }
  const StateUniverse fa = enumerate_states(sig, UniverseFlags{Assignment::Fa, false, true});
  run("agm", RevisionOperator::agm(sig), fa);
  return report;
}

// ---------------------------------------------------------------------------
// Reports

std::vector<std::string> condition_readings() {
  return {
      "P14.a/P14.b: world clauses range over worlds w whose singleton is accepted (Mod(st*{w}) ⊆ {w}), "
      "on both sides of alpha; cardinality guards use the unrestricted sets",
      "P12.i: for w1 in alpha and w2 outside it, w2 <' w1 implies w2 < w1",
      "P15.a/P15.b: the doubled scope is read as prior scope ∩ posterior scope",
      "C-DOC: both clauses are read against the posterior scope",
      "C-COM: the conclusion is read against the posterior scope",
  };
}

namespace {

nlohmann::json worlds_json(const Signature& sig, WorldSet ws) {
  nlohmann::json out = nlohmann::json::array();
  for (World w : ws) out.push_back(sig.world_name(w));
  return out;
}

}  // namespace

std::string format_report(const std::vector<Verdict>& verdicts, const Signature& sig, ReportFormat format,
                          const CheckOptions& opts, const std::vector<std::string>& notes) {
  const char* quant = opts.consistent_only ? "consistent" : "all";
  if (format == ReportFormat::Json) {
    nlohmann::json doc;
    doc["seed"] = opts.seed;
    doc["classes"] = quant;
    doc["sig"] = sig.atoms();
    doc["notes"] = notes;
    doc["checks"] = nlohmann::json::array();
    for (const auto& v : verdicts) {
      nlohmann::json c;
      c["id"] = v.id;
      c["op"] = v.op_name;
      c["n"] = v.atoms;
      c["instances"] = v.instances;
      c["violations"] = v.violations;
      c["result"] = v.holds() ? "PASS" : "FAIL";
      c["counterexamples"] = nlohmann::json::array();
      for (const auto& ce : v.counterexamples) {
        nlohmann::json j;
        if (ce.state_id) j["state_id"] = *ce.state_id;
        j["state"] = {{"bel", worlds_json(sig, ce.state.bel())},
                      {"scope", worlds_json(sig, ce.state.scope())},
                      {"order", ce.state.order().to_string(sig)}};
        j["formulas"] = nlohmann::json::array();
        for (WorldSet f : ce.formulas) j["formulas"].push_back(worlds_json(sig, f));
        j["clause"] = ce.clause;
        j["observed"] = ce.observed;
        j["required"] = ce.required;
        c["counterexamples"].push_back(std::move(j));
      }
      doc["checks"].push_back(std::move(c));
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "# seed=" + std::to_string(opts.seed) + " classes=" + quant + "\n";
  for (const auto& n : notes) out += "# " + n + "\n";
  for (const auto& v : verdicts) {
    out += "CHECK " + v.id + " op=" + v.op_name + " n=" + std::to_string(v.atoms) +
           " instances=" + std::to_string(v.instances) + " result=" + (v.holds() ? "PASS" : "FAIL") + "\n";
    std::size_t k = 0;
    for (const auto& ce : v.counterexamples) {
      out += "  counterexample " + std::to_string(++k) + " of " + std::to_string(v.violations) + ": " + ce.clause + "\n";
      std::string fs;
      for (WorldSet f : ce.formulas) fs += (fs.empty() ? "" : " ; ") + braces(sig, f);
      if (!fs.empty()) out += "    formulas: " + fs + "\n";
      out += "    observed: " + ce.observed + "\n";
      out += "    required: " + ce.required + "\n";
      out += "    state" + (ce.state_id ? " " + std::to_string(*ce.state_id) : std::string()) + ":\n";
      out += dump_state_body(ce.state, sig, "      ");
    }
  }
  return out;
}

}  // namespace revlab
