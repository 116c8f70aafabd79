#include "revlab/classify.hpp"

#include <algorithm>

namespace revlab {

std::size_t FormulaClassSet::size() const { return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), true)); }

std::vector<WorldSet> FormulaClassSet::classes() const {
  std::vector<WorldSet> out;
  for (std::size_t m = 0; m < member_.size(); ++m) {
    if (member_[m]) out.push_back(WorldSet(m));
  }
  return out;
}

bool FormulaClassSet::subset_of(const FormulaClassSet& o) const {
  for (std::size_t m = 0; m < member_.size(); ++m) {
    if (member_[m] && !o.member_[m]) return false;
  }
  return true;
}

FormulaClassSet syntactic_scope(const RevisionTable& table) {
  FormulaClassSet out(table.size());
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (table[WorldSet(m)].subset_of(WorldSet(m))) out.insert(WorldSet(m));
  }
  return out;
}

FormulaClassSet syntactic_scope(const RevisionOperator& op, const EpistemicState& st) {
  return syntactic_scope(revision_table(op, st));
}

FormulaClassSet semantic_scope(const EpistemicState& st, const Signature& sig) {
  FormulaClassSet out(sig);
  for (std::size_t m = 0; m < out.universe_size(); ++m) {
    const WorldSet c(m);
    if (st.bel().subset_of(c) || c.intersects(st.scope())) out.insert(c);
  }
  return out;
}

bool satisfies_S1(const RevisionTable& t, WorldSet alpha) {
  if (!t.bel().intersects(alpha)) return true;
  const WorldSet r = t[alpha];
  for (std::size_t m = 0; m < t.size(); ++m) {
    const WorldSet b(m);
    if (alpha.subset_of(b) && !r.subset_of(t[b])) return false;
  }
  return true;
}

bool satisfies_S2(const RevisionTable& t, WorldSet alpha) {
  const WorldSet r = t[alpha];
  for (std::size_t m = 0; m < t.size(); ++m) {
    const WorldSet rb = t[WorldSet(m)];
    if (r.subset_of(rb) && !rb.intersects(alpha)) return false;
  }
  return true;
}

Classifier::Classifier(const RevisionTable& t)
    : s1_(t.size()), s2_(t.size()), latent_(t.size()), reasonable_(t.size()) {
  std::vector<bool> down_ok(t.size());
  for (std::size_t m = 0; m < t.size(); ++m) {
    const WorldSet c(m);
    s1_[m] = satisfies_S1(t, c);
    s2_[m] = satisfies_S2(t, c);
    bool ok = m == 0 || (s1_[m] && s2_[m]);
    for (World w : c) ok = ok && down_ok[(c - WorldSet::single(w)).mask()];
    down_ok[m] = ok;
    latent_[m] = m != 0 && ok;
  }
  for (std::size_t m = 1; m < t.size(); ++m) {
    bool all = true;
    for (World w : WorldSet(m)) all = all && latent_[WorldSet::single(w).mask()];
    reasonable_[m] = all;
  }
}

bool is_latent(const RevisionTable& t, WorldSet alpha) { return Classifier(t).latent(alpha); }
bool is_reasonable(const RevisionTable& t, WorldSet alpha) { return Classifier(t).reasonable(alpha); }

InherenceInfo::InherenceInfo(const RevisionOperator& op, const StateUniverse& universe) {
  const std::size_t classes = class_count(op.signature());
  inherent_.assign(classes, false);
  immanent_.assign(classes, false);
  for (std::size_t m = 1; m < classes; ++m) {
    const WorldSet c(m);
    inherent_[m] = std::all_of(universe.states().begin(), universe.states().end(),
                               [&](const EpistemicState& st) { return op.revise(st, c) == c; });
  }
  for (std::size_t m = 1; m < classes; ++m) {
    WorldSet cover;
    std::uint64_t s = m;
    while (s != 0) {
      if (inherent_[s]) cover |= WorldSet(s);
      s = (s - 1) & m;
    }
    immanent_[m] = cover == WorldSet(m);
  }
}

bool is_inherent(const RevisionOperator& op, const StateUniverse& universe, WorldSet alpha) {
  return InherenceInfo(op, universe).inherent(alpha);
}

bool is_immanent(const RevisionOperator& op, const StateUniverse& universe, WorldSet alpha) {
  return InherenceInfo(op, universe).immanent(alpha);
}

bool check_ssc(const FormulaClassSet& x) {
  for (WorldSet c : x.classes()) {
    for (std::size_t d = 0; d < x.universe_size(); ++d) {
      if (c.subset_of(WorldSet(d)) && !x.contains(WorldSet(d))) return false;
    }
  }
  return true;
}

bool check_dc(const FormulaClassSet& x) {
  for (std::size_t c = 0; c < x.universe_size(); ++c) {
    for (std::size_t d = c; d < x.universe_size(); ++d) {
      if (x.contains(WorldSet(c) | WorldSet(d)) && !x.contains(WorldSet(c)) && !x.contains(WorldSet(d))) return false;
    }
  }
  return true;
}

std::optional<WorldSet> find_witness_M(const FormulaClassSet& x, const Signature& sig) {
  WorldSet excluded;
  for (std::size_t c = 0; c < x.universe_size(); ++c) {
    if (!x.contains(WorldSet(c))) excluded |= WorldSet(c);
  }
  const WorldSet m = sig.all_worlds() - excluded;
  for (std::size_t c = 0; c < x.universe_size(); ++c) {
    if (x.contains(WorldSet(c)) != WorldSet(c).intersects(m)) return std::nullopt;
  }
  return m;
}

}  // namespace revlab
