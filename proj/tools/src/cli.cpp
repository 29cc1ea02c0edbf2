#include "goedel/cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "goedel/cli/lemmas.hpp"
#include "goedel/decision.hpp"
#include "goedel/interpolation.hpp"
#include "goedel/lindenbaum.hpp"
#include "goedel/linorder.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

namespace goedel::cli {

RunConfig default_config() {
  RunConfig config;
  if (const char* env = std::getenv("GOEDEL_BUDGET"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value == 0)
      throw std::invalid_argument(std::string("GOEDEL_BUDGET must be a positive integer, got '") + env + "'");
    config.clone_budget = static_cast<std::size_t>(value);
    config.search_budget = value;
  }
  return config;
}

namespace {

/// A usage problem detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  RunConfig config;
  std::string sig_path;
  std::ostream& out;
  std::ostream& err;

  bool json() const { return config.output_format == OutputFormat::Json; }

  /// Writes `result` as JSON (with command and seed) or the text lines.
  void emit(const std::string& command, nlohmann::json result, const std::string& text) const {
    if (json()) {
      nlohmann::json j = {{"command", command}, {"seed", config.seed}, {"result", std::move(result)}};
      out << j.dump(2) << "\n";
    } else {
      out << "seed: " << config.seed << "\n" << text;
    }
  }
};

/// File contents when `arg` names a regular file, else `arg` itself.
std::string read_argument(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw UsageError("cannot read " + arg);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool is_file(const std::string& arg) {
  std::error_code ec;
  return std::filesystem::is_regular_file(arg, ec);
}

std::optional<Signature> load_signature(const Context& ctx) {
  if (ctx.sig_path.empty()) return std::nullopt;
  return Signature::parse(read_argument(ctx.sig_path));
}

/// A formula file may spread one formula over several lines and carry `#`
/// comments.
Formula load_formula(const Context& ctx, const std::string& arg) {
  std::string text = read_argument(arg);
  if (is_file(arg)) {
    std::istringstream lines(text);
    std::string line, joined;
    while (std::getline(lines, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      joined += line + " ";
    }
    text = joined;
  }
  const auto sig = load_signature(ctx);
  return sig ? parse_formula(text, *sig) : parse_formula(text);
}

/// Theory files hold one formula per line; inline theories separate
/// formulas with ';'.
Theory load_theory(const Context& ctx, const std::string& arg) {
  std::string text = read_argument(arg);
  if (!is_file(arg))
    for (char& c : text)
      if (c == ';') c = '\n';
  const auto sig = load_signature(ctx);
  return sig ? parse_theory(text, *sig) : parse_theory(text);
}

nlohmann::json load_json(const std::string& arg) {
  const std::string text = read_argument(arg);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

bool propositional(const Theory& t) {
  for (const auto& f : t)
    if (!is_propositional(f)) return false;
  return true;
}

std::string verdict_text(const EntailmentVerdict& v, std::size_t max_universe) {
  std::ostringstream s;
  if (v.holds && v.bounded)
    s << "holds (bounded): no countermodel with at most " << max_universe << " elements\n";
  else if (v.holds)
    s << "holds\n";
  else
    s << "fails\nwitness: " << v.witness->to_json().dump() << "\n";
  return s.str();
}

int verdict_code(const EntailmentVerdict& v) {
  if (!v.holds) return kFails;
  return v.bounded ? kInconclusive : kHolds;
}

BoundedSearchOptions search_options(const RunConfig& config) {
  BoundedSearchOptions o;
  o.max_universe = config.max_universe;
  o.budget = config.search_budget;
  return o;
}

CloneOptions clone_options(const RunConfig& config) {
  CloneOptions o;
  o.budget = config.clone_budget;
  return o;
}

EntailmentVerdict decide(const Context& ctx, const Theory& t, const Formula& f) {
  if (propositional(t) && is_propositional(f)) return one_entails(t, f);
  return fo_check_bounded(t, f, search_options(ctx.config));
}

// ---------------------------------------------------------------------------
// Subcommands

struct CheckArgs {
  std::string taut, entail, sat, formula;
};

int run_check(const Context& ctx, const CheckArgs& a) {
  const int modes = !a.taut.empty() + !a.entail.empty() + !a.sat.empty();
  if (modes != 1) throw UsageError("check needs exactly one of --taut, --entail, --sat");
  if (!a.sat.empty()) {
    if (!a.formula.empty()) throw UsageError("check --sat takes no formula");
    const Theory t = load_theory(ctx, a.sat);
    // Satisfiable iff ⊥ is not 1-entailed; a countermodel to T ⊩ ⊥ is a model.
    const EntailmentVerdict v = decide(ctx, t, Formula::bottom());
    nlohmann::json j = {{"satisfiable", !v.holds}, {"bounded", v.bounded}};
    j["model"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
    std::string text;
    if (!v.holds)
      text = "satisfiable\nmodel: " + v.witness->to_json().dump() + "\n";
    else if (v.bounded)
      text = "no model with at most " + std::to_string(ctx.config.max_universe) + " elements (bounded)\n";
    else
      text = "unsatisfiable\n";
    ctx.emit("check", j, text);
    if (!v.holds) return kHolds;
    return v.bounded ? kInconclusive : kFails;
  }
  Theory t;
  Formula f;
  if (!a.taut.empty()) {
    if (!a.formula.empty()) throw UsageError("check --taut takes its formula as the option value");
    f = load_formula(ctx, a.taut);
  } else {
    if (a.formula.empty()) throw UsageError("check --entail T needs a formula");
    t = load_theory(ctx, a.entail);
    f = load_formula(ctx, a.formula);
  }
  const EntailmentVerdict v = decide(ctx, t, f);
  ctx.emit("check", v.to_json(), verdict_text(v, ctx.config.max_universe));
  return verdict_code(v);
}

struct PairArgs {
  std::string lhs, rhs;
  bool g_only = false;
};

void require_propositional(const Formula& f) {
  if (!is_propositional(f)) throw FragmentError("propositional input required: " + to_string(f));
}

int run_interpolate(const Context& ctx, const PairArgs& a) {
  const Formula phi = load_formula(ctx, a.lhs), psi = load_formula(ctx, a.rhs);
  require_propositional(phi);
  require_propositional(psi);
  const EntailmentVerdict v = one_entails({phi}, psi);
  if (!v.holds) {
    nlohmann::json j = {{"entails", false}, {"witness", v.witness->to_json()}};
    ctx.emit("interpolate", j, "no interpolant: φ does not 1-entail ψ\nwitness: " +
                                   v.witness->to_json().dump() + "\n");
    return kFails;
  }
  if (a.g_only && !(is_g_formula(phi) && is_g_formula(psi))) {
    // Interpolation into the Δ-free fragment can fail for inputs with Δ.
    try {
      const Interpolant theta = interpolate(phi, psi, true, clone_options(ctx.config));
      nlohmann::json j = theta.to_json();
      j["entails"] = true;
      ctx.emit("interpolate", j, "interpolant: " + to_string(theta.theta) + "\n");
      return kHolds;
    } catch (const PreconditionError& e) {
      ctx.emit("interpolate", {{"entails", true}, {"interpolant", nullptr}},
               std::string("no Δ-free interpolant\n"));
      return kFails;
    }
  }
  const Interpolant theta = interpolate(phi, psi, a.g_only, clone_options(ctx.config));
  nlohmann::json j = theta.to_json();
  j["entails"] = true;
  ctx.emit("interpolate", j, "interpolant: " + to_string(theta.theta) + "\n");
  return kHolds;
}

int run_separate(const Context& ctx, const PairArgs& a) {
  const Theory t = load_theory(ctx, a.lhs), u = load_theory(ctx, a.rhs);
  const SeparationResult r = find_separator(t, u, a.g_only, clone_options(ctx.config));
  std::string text;
  switch (r.status) {
    case SeparationStatus::Separable:
      text = "separator: " + to_string(r.certificate->separator) + "\n";
      break;
    case SeparationStatus::Inseparable:
      text = "inseparable\n";
      break;
    case SeparationStatus::Inconclusive:
      text = "inconclusive: clone budget exhausted\n";
      break;
  }
  ctx.emit("separate", r.to_json(), text);
  switch (r.status) {
    case SeparationStatus::Separable:
      return kHolds;
    case SeparationStatus::Inseparable:
      return kFails;
    default:
      return kInconclusive;
  }
}

int run_countermodel(const Context& ctx, const PairArgs& a) {
  const Formula phi = load_formula(ctx, a.lhs), psi = load_formula(ctx, a.rhs);
  require_propositional(phi);
  require_propositional(psi);
  if (one_entails({phi}, psi).holds) {
    // No countermodel exists; the interpolant is the witness of that.
    const Interpolant theta = interpolate(phi, psi, a.g_only, clone_options(ctx.config));
    nlohmann::json j = {{"entails", true}, {"interpolant", theta.to_json()}};
    ctx.emit("countermodel", j,
             "no countermodel: φ 1-entails ψ\ninterpolant: " + to_string(theta.theta) + "\n");
    return kFails;
  }
  CountermodelOptions options;
  options.henkin.g_only = a.g_only;
  options.henkin.clone = clone_options(ctx.config);
  const CountermodelResult r = countermodel_synthesize(phi, psi, a.g_only, options);
  std::ostringstream text;
  text << "countermodel: " << r.valuation.to_json().dump() << "\n"
       << "v(φ) = " << evaluate(r.valuation, phi) << ", v(ψ) = " << evaluate(r.valuation, psi)
       << "\n"
       << "henkin steps: " << r.trace.henkin.steps.size() << ", amalgam size: "
       << r.trace.amalgam.chain.size() << "\n";
  ctx.emit("countermodel", r.to_json(), text.str());
  return kHolds;
}

/// A hom given as a full LinHom object or as a bare id-to-id map.
LinHom hom_from(const nlohmann::json& j, const BoundedChain& source, const BoundedChain& target) {
  const nlohmann::json& map = j.contains("map") ? j.at("map") : j;
  return LinHom::from_map(source, target, map.get<std::map<std::string, std::string>>());
}

int run_amalgamate(const Context& ctx, const std::string& input, bool dot) {
  const nlohmann::json j = load_json(input);
  AmalgamResult r = [&] {
    try {
      const auto b0 = BoundedChain::from_json(j.at("b0"));
      const auto b1 = BoundedChain::from_json(j.at("b1"));
      const auto b2 = BoundedChain::from_json(j.at("b2"));
      return amalgamate(b0, b1, b2, hom_from(j.at("f1"), b0, b1), hom_from(j.at("f2"), b0, b2));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("amalgamation input: ") + e.what(), 0);
    }
  }();
  nlohmann::json result = r.to_json();
  if (dot) result["dot"] = r.to_dot();
  std::ostringstream text;
  text << "chain:";
  for (const auto& e : r.chain.elements()) text << " " << e;
  text << "\n";
  for (const auto* g : {&r.g1, &r.g2}) {
    text << (g == &r.g1 ? "g1:" : "g2:");
    for (std::size_t i = 0; i < g->source.size(); ++i)
      text << " " << g->source.at(i) << "->" << g->target.at(g->image[i]);
    text << "\n";
  }
  if (dot) text << r.to_dot();
  ctx.emit("amalgamate", result, text.str());
  return kHolds;
}

int run_embed(const Context& ctx, const std::string& input) {
  const std::string text = read_argument(input);
  BoundedChain chain = [&] {
    try {
      return BoundedChain::from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error&) {
      // Plain comma-separated ids, least first.
      std::vector<std::string> ids;
      std::istringstream in(text);
      std::string id;
      while (std::getline(in, id, ',')) {
        const auto b = id.find_first_not_of(" \t\r\n"), e = id.find_last_not_of(" \t\r\n");
        if (b != std::string::npos) ids.push_back(id.substr(b, e - b + 1));
      }
      return BoundedChain(ids);
    }
  }();
  const auto h = embed_into_unit(chain);
  nlohmann::json table = nlohmann::json::array();
  std::ostringstream out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    table.push_back({{"element", chain.at(i)}, {"value", h[i].str()}});
    out << chain.at(i) << " " << h[i] << "\n";
  }
  ctx.emit("embed", {{"chain", chain.to_json()}, {"embedding", table}}, out.str());
  return kHolds;
}

struct LindenbaumArgs {
  std::string valuation, formulas;
  std::size_t depth = 2;
  bool g_only = false;
};

int run_lindenbaum(const Context& ctx, const LindenbaumArgs& a) {
  if (a.depth > ctx.config.depth_budget)
    throw UsageError("--depth " + std::to_string(a.depth) + " exceeds the depth budget " +
                     std::to_string(ctx.config.depth_budget));
  const Valuation v = Valuation::from_json(load_json(a.valuation));
  std::vector<Formula> formulas;
  if (!a.formulas.empty()) {
    formulas = load_theory(ctx, a.formulas).formulas();
  } else {
    Signature sig;
    for (const auto& [name, table] : v.relations()) sig.add_relation(name, table.arity);
    for (const auto& [name, element] : v.constants()) sig.add_constant(name);
    formulas = enumerate_closed_formulas(sig, a.depth, !a.g_only, ctx.config.clone_budget);
  }
  const LindChain chain = build_chain(v, formulas, a.g_only);
  std::ostringstream text;
  for (const auto& c : chain.classes()) {
    text << c.value << ":";
    const std::size_t shown = std::min<std::size_t>(c.members.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) text << (i ? ", " : " ") << to_string(c.members[i]);
    if (c.members.size() > shown) text << ", ... (" << c.members.size() << " formulas)";
    text << "\n";
  }
  nlohmann::json j = chain.to_json();
  j["formula_count"] = formulas.size();
  ctx.emit("lindenbaum", j, text.str());
  return kHolds;
}

struct LemmaArgs {
  std::string suite = "all";
  std::optional<std::size_t> cases;
};

int run_lemmas(const Context& ctx, const LemmaArgs& a) {
  std::vector<SuiteReport> reports;
  auto options = [&](std::size_t default_cases) {
    LemmaOptions o;
    o.seed = ctx.config.seed;
    o.cases = a.cases.value_or(default_cases);
    o.max_universe = ctx.config.max_universe;
    return o;
  };
  const bool all = a.suite == "all";
  if (all || a.suite == "property") reports.push_back(run_property_suite(options(1000)));
  if (all || a.suite == "constants") reports.push_back(run_constants_suite(options(500)));
  if (all || a.suite == "eqd") reports.push_back(run_eqd_suite(options(200)));
  bool passed = true;
  nlohmann::json list = nlohmann::json::array();
  std::string text;
  for (const auto& r : reports) {
    passed = passed && r.passed();
    list.push_back(r.to_json());
    text += r.to_text();
  }
  ctx.emit("lemmas", {{"passed", passed}, {"suites", list}}, text);
  return passed ? kHolds : kFails;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = default_config();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Gödel logic toolkit: decision, Lindenbaum chains, amalgamation, interpolation"};
  app.name("goedel");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", sig_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", config.seed, "Seed of randomized suites");
  app.add_option("--depth-budget", config.depth_budget, "Largest enumeration depth")
      ->check(CLI::PositiveNumber);
  app.add_option("--clone-budget", config.clone_budget, "Vector budget of clone closures")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-universe", config.max_universe, "Largest universe of bounded checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--sig", sig_path, "Signature file for parsing formulas");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Decide tautology, 1-entailment or satisfiability");
  check_cmd->add_option("--taut", check.taut, "Formula to test for tautology");
  check_cmd->add_option("--entail", check.entail, "Theory (file or ';'-separated)");
  check_cmd->add_option("--sat", check.sat, "Theory to test for satisfiability");
  check_cmd->add_option("formula", check.formula, "Conclusion for --entail");

  PairArgs interp, separate, counter;
  auto* interp_cmd = app.add_subcommand("interpolate", "Craig interpolant of φ ⊩ ψ");
  interp_cmd->add_option("phi", interp.lhs)->required();
  interp_cmd->add_option("psi", interp.rhs)->required();
  interp_cmd->add_flag("--g-only", interp.g_only, "Search Δ-free interpolants only");

  auto* sep_cmd = app.add_subcommand("separate", "Separator of two theories");
  sep_cmd->add_option("T", separate.lhs)->required();
  sep_cmd->add_option("U", separate.rhs)->required();
  sep_cmd->add_flag("--g-only", separate.g_only, "Search Δ-free separators only");

  auto* cm_cmd = app.add_subcommand("countermodel", "Valuation with v(φ) = 1 and v(ψ) < 1");
  cm_cmd->add_option("phi", counter.lhs)->required();
  cm_cmd->add_option("psi", counter.rhs)->required();
  cm_cmd->add_flag("--g-only", counter.g_only, "Build the chains from Δ-free formulas");

  std::string amalgam_input;
  bool dot = false;
  auto* am_cmd = app.add_subcommand("amalgamate", "Amalgamate f1: B0 → B1 and f2: B0 → B2");
  am_cmd->add_option("input", amalgam_input, "JSON with b0, b1, b2, f1, f2")->required();
  am_cmd->add_flag("--dot", dot, "Also render the amalgam in DOT");

  std::string embed_input;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a finite chain into [0,1]");
  embed_cmd->add_option("chain", embed_input, "Chain JSON or comma-separated ids")->required();

  LindenbaumArgs lind;
  auto* lind_cmd = app.add_subcommand("lindenbaum", "Lindenbaum chain of a valuation's theory");
  lind_cmd->add_option("--valuation", lind.valuation, "Valuation JSON")->required();
  lind_cmd->add_option("--depth", lind.depth, "Enumeration depth");
  lind_cmd->add_option("--formulas", lind.formulas, "Formulas to classify instead");
  lind_cmd->add_flag("--g-only", lind.g_only, "Δ-free formulas only");

  LemmaArgs lemmas;
  std::size_t cases = 0;
  auto* lemma_cmd = app.add_subcommand("lemmas", "Run the randomized lemma suites");
  lemma_cmd->add_option("--suite", lemmas.suite)
      ->check(CLI::IsMember({"property", "constants", "eqd", "all"}));
  auto* cases_opt = lemma_cmd->add_option("--cases", cases, "Instances per item")
                        ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'goedel --help' for usage\n";
    return kUsage;
  }
  if (*cases_opt) lemmas.cases = cases;
  config.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  Context ctx{config, sig_path, out, err};

  try {
    if (*check_cmd) return run_check(ctx, check);
    if (*interp_cmd) return run_interpolate(ctx, interp);
    if (*sep_cmd) return run_separate(ctx, separate);
    if (*cm_cmd) return run_countermodel(ctx, counter);
    if (*am_cmd) return run_amalgamate(ctx, amalgam_input, dot);
    if (*embed_cmd) return run_embed(ctx, embed_input);
    if (*lind_cmd) return run_lindenbaum(ctx, lind);
    if (*lemma_cmd) return run_lemmas(ctx, lemmas);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace goedel::cli
