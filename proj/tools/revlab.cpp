#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revlab/classify.hpp"
#include "revlab/fixtures.hpp"
#include "revlab/logic.hpp"
#include "revlab/operators.hpp"
#include "revlab/states.hpp"
#include "revlab/verify.hpp"

using namespace revlab;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string sig_text;
  std::string universe = "";
  bool unbiased = false;
  bool global_consistency = false;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool consistent_only = false;
  std::size_t states = 500;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr std::string_view kBuiltin = "builtin:";

ParsedState load_state(const std::string& path) {
  if (path.rfind(kBuiltin, 0) == 0) {
    const std::string name = path.substr(kBuiltin.size());
    if (name == "karl") return {karl_signature(), karl_state()};
    if (name == "fig1-1") return {fig1_signature(), fig1_state1()};
    if (name == "fig1-2") return {fig1_signature(), fig1_state2()};
    throw UsageError("unknown builtin state '" + name + "' (karl, fig1-1, fig1-2)");
  }
  try {
    return parse_state(read_file(path));
  } catch (const StateParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

RevisionOperator load_operator(const std::string& path, const Signature& sig) {
  if (path.rfind(kBuiltin, 0) == 0) {
    const std::string name = path.substr(kBuiltin.size());
    if (name == "karl") return karl_operator();
    if (name == "fig1") return fig1_operator();
    throw UsageError("unknown builtin operator '" + name + "' (karl, fig1)");
  }
  try {
    return parse_operator(read_file(path), sig);
  } catch (const OperatorParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

WorldSet load_formula(const std::string& text, const Signature& sig) {
  try {
    return models_of(text, sig);
  } catch (const ParseError& e) {
    throw UsageError("formula '" + text + "' at offset " + std::to_string(e.offset()) + ": " + e.what());
  } catch (const UnknownAtomError& e) {
    throw UsageError("formula '" + text + "': unknown atom '" + e.atom() + "'");
  }
}

Signature resolve_sig(const RunConfig& cfg, const Signature& fallback) {
  if (cfg.sig_text.empty()) return fallback;
  if (std::all_of(cfg.sig_text.begin(), cfg.sig_text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return Signature::with_atoms(std::stoul(cfg.sig_text));
  return Signature::parse(cfg.sig_text);
}

Assignment default_assignment(Family f) {
  switch (f) {
    case Family::Cl: return Assignment::Clf;
    case Family::Agm: return Assignment::Fa;
    default: return Assignment::Faithful;
  }
}

UniverseFlags flags_for(const RunConfig& cfg, Family f) {
  UniverseFlags flags;
  flags.assignment = cfg.universe.empty() ? default_assignment(f) : parse_assignment(cfg.universe);
  flags.unbiased = cfg.unbiased;
  flags.global_consistency = cfg.global_consistency;
  return flags;
}

/// The universe a check or classification ranges over. IL operators only see
/// states whose scope is their fixed scope.
std::shared_ptr<const StateUniverse> universe_for(const RunConfig& cfg, const RevisionOperator& op) {
  if (op.table()) return op.table()->universe_ptr();
  const Signature& sig = op.signature();
  const UniverseFlags flags = flags_for(cfg, op.family());
  auto keep = [&](const EpistemicState& st) { return op.family() != Family::Il || st.scope() == op.omega_prime(); };
  if (sig.atom_count() <= kMaxMaterializedAtoms) {
    const StateUniverse all = enumerate_states(sig, flags);
    return std::make_shared<const StateUniverse>(filter_universe(all, flags, keep));
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<EpistemicState> picked;
  std::size_t tries = 0;
  while (picked.size() < cfg.states && tries++ < cfg.states * 1000) {
    EpistemicState st = random_state(sig, flags, rng);
    if (keep(st)) picked.push_back(std::move(st));
  }
  UniverseFlags sampled = flags;
  sampled.unbiased = false;
  return std::make_shared<const StateUniverse>(sig, sampled, std::move(picked));
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions opts;
  opts.consistent_only = cfg.consistent_only;
  opts.seed = cfg.seed;
  return opts;
}

ReportFormat report_format(const RunConfig& cfg) {
  if (cfg.format == "json") return ReportFormat::Json;
  if (cfg.format == "text") return ReportFormat::Text;
  throw UsageError("unknown format '" + cfg.format + "' (text, json)");
}

json worlds_json(const Signature& sig, WorldSet ws) {
  json out = json::array();
  for (World w : ws) out.push_back(sig.world_name(w));
  return out;
}

json state_json(const EpistemicState& st, const Signature& sig) {
  return {{"bel", worlds_json(sig, st.bel())},
          {"scope", worlds_json(sig, st.scope())},
          {"order", st.order().to_string(sig)}};
}

// ---------------------------------------------------------------------------

int cmd_revise(const RunConfig& cfg, const std::string& state_path, const std::string& op_path,
               const std::vector<std::string>& inputs) {
  const ParsedState ps = load_state(state_path);
  const Signature sig = resolve_sig(cfg, ps.sig);
  const RevisionOperator op = load_operator(op_path, sig);
  EpistemicState st = ps.state;
  std::vector<std::pair<std::string, EpistemicState>> trace{{"", st}};
  for (const auto& text : inputs) {
    const WorldSet alpha = load_formula(text, sig);
    try {
      st = op.apply(st, alpha);
    } catch (const PreconditionError& e) {
      throw UsageError("revising by '" + text + "': " + e.what());
    }
    trace.emplace_back(text, st);
  }
  if (report_format(cfg) == ReportFormat::Json) {
    json doc{{"sig", sig.atoms()}, {"op", op.name()}, {"seed", cfg.seed}, {"steps", json::array()}};
    for (const auto& [input, s] : trace) {
      json step = state_json(s, sig);
      step["input"] = input;
      doc["steps"].push_back(std::move(step));
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "# op=" << op.name() << " seed=" << cfg.seed << "\n";
  std::cout << dump_state(trace.front().second, sig);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    std::cout << "\nafter " << trace[i].first << ":\n" << dump_state_body(trace[i].second, sig, "  ");
  }
  return 0;
}

std::string valid_ids() {
  std::string out;
  for (PostulateId p : all_postulate_ids()) out += " " + std::string(to_string(p));
  for (TheoremId t : all_theorem_ids()) out += " " + std::string(to_string(t));
  return out;
}

std::vector<PostulateId> family_postulates(Family f) {
  switch (f) {
    case Family::Cl: return cl_postulates();
    case Family::Il: return il_postulates();
    case Family::Agm: {
      std::vector<PostulateId> out = cl_postulates();
      const auto il = il_postulates();
      out.insert(out.end(), il.begin(), il.end());
      return out;
    }
    default: return dl_postulates();
  }
}

int cmd_check(const RunConfig& cfg, const std::string& op_path, const std::vector<std::string>& ids) {
  const Signature sig = resolve_sig(cfg, Signature::with_atoms(2));
  const RevisionOperator op = load_operator(op_path, sig);
  const CheckOptions opts = check_options(cfg);
  const ReportFormat fmt = report_format(cfg);

  std::vector<std::variant<PostulateId, TheoremId>> plan;
  for (const auto& id : ids) {
    if (id == "all") {
      for (PostulateId p : family_postulates(op.family())) plan.emplace_back(p);
    } else if (auto p = parse_postulate_id(id)) {
      plan.emplace_back(*p);
    } else if (auto t = parse_theorem_id(id)) {
      plan.emplace_back(*t);
    } else {
      throw UsageError("unknown id '" + id + "'; valid ids: all" + valid_ids());
    }
  }
  if (plan.empty()) throw UsageError("no ids given; valid ids: all" + valid_ids());

  const auto universe = universe_for(cfg, op);
  std::vector<std::future<Verdict>> jobs;
  for (const auto& item : plan) {
    jobs.push_back(std::async(std::launch::async, [&, item] {
      if (const auto* p = std::get_if<PostulateId>(&item)) return check_postulate(op, *universe, *p, opts);
      return verify_equivalence(op, *universe, std::get<TheoremId>(item), opts);
    }));
  }
  std::vector<Verdict> verdicts;
  for (auto& j : jobs) verdicts.push_back(j.get());

  std::vector<std::string> notes = condition_readings();
  notes.insert(notes.begin(), "universe=" + std::string(to_string(universe->flags().assignment)) +
                                  " states=" + std::to_string(universe->size()));
  std::cout << format_report(verdicts, op.signature(), fmt, opts, notes);
  const bool ok = std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.holds(); });
  return ok ? 0 : 1;
}

int cmd_classify(const RunConfig& cfg, const std::string& state_path, const std::string& op_path) {
  const ParsedState ps = load_state(state_path);
  const Signature sig = resolve_sig(cfg, ps.sig);
  const RevisionOperator op = load_operator(op_path, sig);
  const EpistemicState& st = ps.state;
  const RevisionTable table = revision_table(op, st);
  const FormulaClassSet syn = syntactic_scope(table);
  const FormulaClassSet sem = semantic_scope(st, sig);
  const Classifier cls(table);
  std::optional<InherenceInfo> inh;
  if (sig.atom_count() <= kMaxMaterializedAtoms) inh.emplace(op, *universe_for(cfg, op));

  auto yn = [](bool b) { return b ? "y" : "n"; };
  if (report_format(cfg) == ReportFormat::Json) {
    json doc{{"sig", sig.atoms()}, {"op", op.name()}, {"state", state_json(st, sig)},
             {"scope_matches", syn == sem}, {"classes", json::array()}};
    for (std::size_t m = 0; m < syn.universe_size(); ++m) {
      const WorldSet c(m);
      json row{{"class", worlds_json(sig, c)}, {"scope", syn.contains(c)}, {"latent", cls.latent(c)},
               {"reasonable", cls.reasonable(c)}};
      if (inh) {
        row["inherent"] = inh->inherent(c);
        row["immanent"] = inh->immanent(c);
      }
      doc["classes"].push_back(std::move(row));
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "# op=" << op.name() << " scope_matches=" << yn(syn == sem) << "\n";
  std::cout << dump_state_body(st, sig);
  for (std::size_t m = 0; m < syn.universe_size(); ++m) {
    const WorldSet c(m);
    std::cout << "class " << m << ": scope=" << yn(syn.contains(c)) << " latent=" << yn(cls.latent(c))
              << " reasonable=" << yn(cls.reasonable(c)) << " inherent=" << (inh ? yn(inh->inherent(c)) : "-")
              << " immanent=" << (inh ? yn(inh->immanent(c)) : "-") << " worlds={" << sig.format(c) << "}\n";
  }
  return 0;
}

int cmd_repro(const RunConfig& cfg, const std::string& name) {
  ReproResult r;
  try {
    r = repro(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (report_format(cfg) == ReportFormat::Json) {
    json doc{{"name", name}, {"ok", r.ok}, {"checked", r.checked}, {"lines", r.lines}};
    if (!r.ok) doc["first_mismatch"] = r.first_mismatch;
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
    std::cout << (r.ok ? "PASS " : "FAIL ") << name << ": " << r.checked << " checked";
    if (!r.ok) std::cout << "; first mismatch: " << r.first_mismatch;
    std::cout << "\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_enumerate(const RunConfig& cfg, bool count_only) {
  const Signature sig = resolve_sig(cfg, Signature::with_atoms(2));
  const UniverseFlags flags = flags_for(cfg, Family::Dl);
  const bool js = report_format(cfg) == ReportFormat::Json;
  std::size_t n = 0;
  json states = json::array();
  std::ostringstream text;
  if (flags.unbiased && sig.atom_count() <= kMaxMaterializedAtoms) (void)enumerate_states(sig, flags);
  for_each_state(sig, flags, [&](const EpistemicState& st) {
    if (!count_only) {
      if (js) {
        states.push_back(state_json(st, sig));
      } else {
        text << "state " << n << ":\n" << dump_state_body(st, sig, "  ");
      }
    }
    ++n;
  });
  if (js) {
    json doc{{"sig", sig.atoms()}, {"universe", to_string(flags.assignment)}, {"count", n}};
    if (!count_only) doc["states"] = std::move(states);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::string atoms;
    for (const auto& a : sig.atoms()) atoms += (atoms.empty() ? "" : ",") + a;
    std::cout << "# sig=" << atoms << " universe=" << to_string(flags.assignment) << " states=" << n << "\n"
              << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revlab: limited belief revision toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--sig", cfg.sig_text, "atom names, or an atom count");
  app.add_option("--universe", cfg.universe, "faithful | clf | fa | any (default follows the operator family)");
  app.add_flag("--unbiased", cfg.unbiased, "require a state for every consistent belief set");
  app.add_flag("--global-consistency", cfg.global_consistency, "drop states with inconsistent beliefs");
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--format", cfg.format, "text | json");
  app.add_flag("--consistent-only", cfg.consistent_only, "drop the inconsistent class from formula quantifiers");
  app.add_option("--states", cfg.states, "sampled states above two atoms");

  std::string state_path, op_path, name;
  std::vector<std::string> rest;
  bool count_only = false;

  auto* revise = app.add_subcommand("revise", "apply a sequence of revisions to a state");
  revise->add_option("state", state_path, "state file or builtin:karl|fig1-1|fig1-2")->required();
  revise->add_option("operator", op_path, "operator file or builtin:karl|fig1")->required();
  revise->add_option("formulas", rest, "inputs, in order");

  auto* check = app.add_subcommand("check", "run postulate or equivalence checks");
  check->add_option("operator", op_path)->required();
  check->add_option("ids", rest, "postulate or theorem ids, or all")->required();

  auto* classify = app.add_subcommand("classify", "classify every formula class for a state");
  classify->add_option("state", state_path)->required();
  classify->add_option("operator", op_path)->required();

  auto* repro_cmd = app.add_subcommand("repro", "reproduce a builtin example");
  repro_cmd->add_option("name", name, "karl | fig1 | lemmas")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list the states of a universe");
  enumerate->add_flag("--count", count_only, "print only the number of states");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*revise) return cmd_revise(cfg, state_path, op_path, rest);
    if (*check) return cmd_check(cfg, op_path, rest);
    if (*classify) return cmd_classify(cfg, state_path, op_path);
    if (*repro_cmd) return cmd_repro(cfg, name);
    if (*enumerate) return cmd_enumerate(cfg, count_only);
  } catch (const UsageError& e) {
    std::cerr << "revlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "revlab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
