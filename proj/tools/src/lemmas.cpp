#include "goedel/cli/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

#include "goedel/cli/random.hpp"
#include "goedel/decision.hpp"
#include "goedel/syntax.hpp"

namespace goedel::cli {

nlohmann::json ItemReport::to_json() const {
  nlohmann::json j = {{"item", item},       {"statement", statement}, {"cases", cases},
                      {"failures", failures}, {"tallies", tallies},     {"counterexample", counterexample}};
  return j;
}

bool SuiteReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const ItemReport& r) { return r.failures == 0; });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : items) list.push_back(r.to_json());
  return {{"suite", suite}, {"seed", seed}, {"passed", passed()}, {"items", list}};
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << " seed " << seed << "\n";
  for (const auto& r : items) {
    out << "  item " << r.item << ": " << r.cases << " cases, " << r.failures << " failures";
    for (const auto& [name, n] : r.tallies) out << ", " << n << " " << name;
    out << "  [" << r.statement << "]\n";
    if (!r.counterexample.is_null()) out << "    counterexample: " << r.counterexample.dump() << "\n";
  }
  out << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

nlohmann::json theory_json(const Theory& t) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : t) j.push_back(to_string(f));
  return j;
}

ItemReport make_item(std::string item, std::string statement) {
  ItemReport r;
  r.item = std::move(item);
  r.statement = std::move(statement);
  return r;
}

void fail(ItemReport& r, nlohmann::json instance) {
  if (r.failures++ == 0) r.counterexample = std::move(instance);
}

// ---------------------------------------------------------------------------
// 1-entailment properties

bool entails(const Theory& t, const Formula& f) { return one_entails(t, f).holds; }
bool valid(const Formula& f) { return is_tautology(f); }

}  // namespace

SuiteReport run_property_suite(const LemmaOptions& options) {
  SuiteReport report{"property", options.seed, {}};
  const std::vector<std::pair<std::string, std::string>> statements = {
      {"1", "⊩ Δφ ∨ ~φ"},
      {"2", "⊩ Δφ → φ"},
      {"3", "φ ⊩ Δφ"},
      {"4", "Δ(φ ∧ ψ) ⊩ Δφ ∧ Δψ"},
      {"5", "ψ ⊩ φ iff ~φ ⊩ ~ψ"},
      {"6", "⊩ Δ~φ ↔ ~φ and ⊩ Δφ ↔ ~~φ"},
      {"7", "~~φ ⊩ φ and φ ⊩ ~~φ"},
      {"8", "~(φ → ψ) ⊩ ψ → φ"},
      {"9", "T ∪ {φ} ⊩ ψ and T ∪ {~φ} ⊩ ψ imply T ⊩ ψ"},
      {"10", "T ⊩ ~φ and T ⊩ ~ψ imply T ⊩ ~(φ ∨ ψ)"},
      {"11", "T ∪ {φ} ⊩ ψ iff T ⊩ Δφ → ψ"},
  };
  for (const auto& [item, statement] : statements) report.items.push_back(make_item(item, statement));
  auto& items = report.items;
  items[8].tallies["premise held"] = 0;
  items[9].tallies["premise held"] = 0;

  const std::vector<std::string> pool = {"p", "q", "r"};
  Random rng(options.seed);
  for (std::size_t n = 0; n < options.cases; ++n) {
    const std::size_t k = 1 + rng.below(std::min(options.max_atoms, pool.size()));
    const std::vector<std::string> atoms(pool.begin(), pool.begin() + static_cast<long>(k));
    const Formula phi = random_formula(rng, atoms, options.max_depth);
    const Formula psi = random_formula(rng, atoms, options.max_depth);
    const Theory t = random_theory(rng, atoms, options.max_depth, 0, 2);
    // Half of the conditional instances get their premises forced so the
    // conclusions are exercised.
    Theory t9 = t, t10 = t;
    if (rng.chance(1, 2)) {
      t9.add(Formula::implies(phi, psi));
      t9.add(Formula::implies(Formula::tilde(phi), psi));
    }
    if (rng.chance(1, 2)) {
      t10.add(Formula::tilde(phi));
      t10.add(Formula::tilde(psi));
    }
    auto instance = [&](const Theory& theory) {
      return nlohmann::json{{"T", theory_json(theory)}, {"phi", to_string(phi)}, {"psi", to_string(psi)}};
    };
    for (auto& r : items) ++r.cases;

    const Formula dphi = Formula::delta(phi), tphi = Formula::tilde(phi);
    if (!valid(Formula::disj(dphi, tphi))) fail(items[0], instance({}));
    if (!valid(Formula::implies(dphi, phi))) fail(items[1], instance({}));
    if (!entails({phi}, dphi)) fail(items[2], instance({}));
    if (!entails({Formula::delta(Formula::conj(phi, psi))},
                 Formula::conj(dphi, Formula::delta(psi))))
      fail(items[3], instance({}));
    if (entails({psi}, phi) != entails({tphi}, Formula::tilde(psi))) fail(items[4], instance({}));
    if (!valid(Formula::iff(Formula::delta(tphi), tphi)) ||
        !valid(Formula::iff(dphi, Formula::tilde(tphi))))
      fail(items[5], instance({}));
    if (!entails({Formula::tilde(tphi)}, phi) || !entails({phi}, Formula::tilde(tphi)))
      fail(items[6], instance({}));
    if (!entails({Formula::tilde(Formula::implies(phi, psi))}, Formula::implies(psi, phi)))
      fail(items[7], instance({}));
    if (entails(t9.with(phi), psi) && entails(t9.with(tphi), psi)) {
      ++items[8].tallies["premise held"];
      if (!entails(t9, psi)) fail(items[8], instance(t9));
    }
    if (entails(t10, tphi) && entails(t10, Formula::tilde(psi))) {
      ++items[9].tallies["premise held"];
      if (!entails(t10, Formula::tilde(Formula::disj(phi, psi)))) fail(items[9], instance(t10));
    }
    if (entails(t.with(phi), psi) != entails(t, Formula::implies(dphi, psi)))
      fail(items[10], instance(t));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Constants lemma

namespace {

/// Entailment facts collected over one sweep of the bounded search space.
class EntailmentSweep {
 public:
  explicit EntailmentSweep(std::vector<Formula> formulas) : formulas_(std::move(formulas)) {}

  /// Registers "premises ⊩ conclusion" (indices into the formula list).
  std::size_t add(std::vector<std::size_t> premises, std::size_t conclusion) {
    checks_.push_back({std::move(premises), conclusion, true, nullptr});
    return checks_.size() - 1;
  }

  void run(const BoundedSearchOptions& options) {
    sweep_bounded(formulas_, options,
                  [&](std::span<const std::uint8_t> levels, std::uint8_t top,
                      const std::function<Valuation()>& decode) {
                    for (auto& c : checks_) {
                      if (!c.holds) continue;
                      bool premises = std::all_of(c.premises.begin(), c.premises.end(),
                                                  [&](std::size_t i) { return levels[i] == top; });
                      if (premises && levels[c.conclusion] != top) {
                        c.holds = false;
                        c.witness = std::make_unique<Valuation>(decode());
                      }
                    }
                    return true;
                  });
  }

  bool holds(std::size_t check) const { return checks_[check].holds; }
  nlohmann::json witness(std::size_t check) const {
    return checks_[check].witness ? checks_[check].witness->to_json() : nlohmann::json();
  }

 private:
  struct Check {
    std::vector<std::size_t> premises;
    std::size_t conclusion;
    bool holds;
    std::unique_ptr<Valuation> witness;
  };
  std::vector<Formula> formulas_;
  std::vector<Check> checks_;
};

const FoVocabulary& open_vocabulary() {
  static const FoVocabulary v{{{"R", 1}, {"S", 2}}, {"d"}, {"x"}};
  return v;
}
const FoVocabulary& closed_vocabulary() {
  static const FoVocabulary v{{{"R", 1}, {"S", 2}}, {"d"}, {}};
  return v;
}

BoundedSearchOptions constants_search(std::size_t max_universe) {
  BoundedSearchOptions o;
  o.min_universe = 1;
  o.max_universe = max_universe;
  // Three-element universes use the values {0, 1/2, 1}; smaller ones the
  // full canonical grid.
  o.size_grids[3] = {TruthValue::zero(), TruthValue(1, 2), TruthValue::one()};
  o.budget = 50'000'000;
  return o;
}

}  // namespace

SuiteReport run_constants_suite(const LemmaOptions& options) {
  SuiteReport report{"constants", options.seed, {}};
  report.items = {
      make_item("1", "∀x σ(x) ⊩ σ(c)"),
      make_item("2", "σ(c) ⊩ ∃x σ(x)"),
      make_item("3", "~∀x σ(x) ⊩ ∃x ~σ(x) and ∃x ~σ(x) ⊩ ~∀x σ(x)"),
      make_item("4", "~∃x σ(x) ⊩ ∀x ~σ(x) and ∀x ~σ(x) ⊩ ~∃x σ(x)"),
      make_item("5", "c not in T and T ⊩ σ(c) imply T ⊩ ∀x σ(x)"),
      make_item("6", "σ(c) ⊩ θ with c not in θ implies ∃x σ(x) ⊩ θ"),
      make_item("7", "T ∪ {~∀x σ(x), ~σ(c)} ⊩ χ(c) with c not in T, σ, χ implies T ∪ {~∀x σ(x)} ⊩ ∃x χ(x)"),
  };
  auto& items = report.items;
  items[4].tallies["premise held"] = 0;
  items[5].tallies["premise held"] = 0;
  items[6].tallies["premise held"] = 0;
  const BoundedSearchOptions search = constants_search(options.max_universe);
  const std::size_t depth = std::min<std::size_t>(options.max_depth, 3);
  auto sub = [](const Formula& f) { return substitute(f, "x", "c"); };
  auto strings = [](std::initializer_list<std::pair<const char*, Formula>> fs) {
    nlohmann::json j;
    for (const auto& [k, f] : fs) j[k] = to_string(f);
    return j;
  };

  Random rng(options.seed);
  for (std::size_t n = 0; n < options.cases; ++n) {
    const Formula sigma = random_fo_formula(rng, open_vocabulary(), depth);
    const Formula rho = random_fo_formula(rng, open_vocabulary(), depth - 1);
    const Formula theta = random_fo_formula(rng, closed_vocabulary(), depth);
    Theory t;
    switch (rng.below(3)) {
      case 0:
        t.add(Formula::forall("x", Formula::conj(sigma, rho)));
        break;
      case 1:
        t.add(Formula::forall("x", Formula::implies(rho, sigma)));
        t.add(Formula::forall("x", rho));
        break;
      default:
        t.add(random_fo_formula(rng, closed_vocabulary(), depth));
    }
    const Formula theta6 =
        rng.chance(1, 2) ? Formula::disj(Formula::exists("x", sigma), theta) : theta;

    const Formula all = Formula::forall("x", sigma), some = Formula::exists("x", sigma);
    const Formula sc = sub(sigma);
    std::vector<Formula> fs = {all,
                               sc,
                               some,
                               Formula::tilde(all),
                               Formula::exists("x", Formula::tilde(sigma)),
                               Formula::tilde(some),
                               Formula::forall("x", Formula::tilde(sigma)),
                               theta6};
    const std::size_t t0 = fs.size();
    for (const auto& f : t) fs.push_back(f);
    std::vector<std::size_t> ts(t.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = t0 + i;
    EntailmentSweep sweep(fs);
    const auto c1 = sweep.add({0}, 1);
    const auto c2 = sweep.add({1}, 2);
    const auto c3a = sweep.add({3}, 4), c3b = sweep.add({4}, 3);
    const auto c4a = sweep.add({5}, 6), c4b = sweep.add({6}, 5);
    const auto c5p = sweep.add(ts, 1), c5c = sweep.add(ts, 0);
    const auto c6p = sweep.add({1}, 7), c6c = sweep.add({2}, 7);
    sweep.run(search);

    auto instance = [&](std::size_t check) {
      nlohmann::json j = strings({{"sigma", sigma}, {"theta", theta6}});
      j["T"] = theory_json(t);
      j["countermodel"] = sweep.witness(check);
      return j;
    };
    for (std::size_t i = 0; i < 6; ++i) ++items[i].cases;
    if (!sweep.holds(c1)) fail(items[0], instance(c1));
    if (!sweep.holds(c2)) fail(items[1], instance(c2));
    if (!sweep.holds(c3a)) fail(items[2], instance(c3a));
    if (!sweep.holds(c3b)) fail(items[2], instance(c3b));
    if (!sweep.holds(c4a)) fail(items[3], instance(c4a));
    if (!sweep.holds(c4b)) fail(items[3], instance(c4b));
    if (sweep.holds(c5p)) {
      ++items[4].tallies["premise held"];
      if (!sweep.holds(c5c)) fail(items[4], instance(c5c));
    }
    if (sweep.holds(c6p)) {
      ++items[5].tallies["premise held"];
      if (!sweep.holds(c6c)) fail(items[5], instance(c6c));
    }
  }

  // Item 7 is costlier (two more formulas and a larger theory), so it runs
  // on a 2/5 share of the instances.
  const std::size_t cases7 = options.cases * 2 / 5;
  for (std::size_t n = 0; n < cases7; ++n) {
    const Formula sigma = random_fo_formula(rng, open_vocabulary(), depth);
    Formula chi = random_fo_formula(rng, open_vocabulary(), depth);
    if (rng.chance(1, 2)) chi = Formula::disj(Formula::tilde(sigma), chi);
    const Theory t =
        rng.chance(1, 2) ? Theory{} : Theory{random_fo_formula(rng, closed_vocabulary(), depth)};
    const Formula not_all = Formula::tilde(Formula::forall("x", sigma));
    std::vector<Formula> fs = {not_all, Formula::tilde(sub(sigma)), sub(chi),
                               Formula::exists("x", chi)};
    for (const auto& f : t) fs.push_back(f);
    std::vector<std::size_t> premise = {0, 1}, conclusion = {0};
    for (std::size_t i = 4; i < fs.size(); ++i) {
      premise.push_back(i);
      conclusion.push_back(i);
    }
    EntailmentSweep sweep(fs);
    const auto p = sweep.add(premise, 2), c = sweep.add(conclusion, 3);
    sweep.run(search);
    ++items[6].cases;
    if (sweep.holds(p)) {
      ++items[6].tallies["premise held"];
      if (!sweep.holds(c)) {
        nlohmann::json j = strings({{"sigma", sigma}, {"chi", chi}});
        j["T"] = theory_json(t);
        j["countermodel"] = sweep.witness(c);
        fail(items[6], j);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Completeness conditions

SuiteReport run_eqd_suite(const LemmaOptions& options) {
  SuiteReport report{"eqd", options.seed, {}};
  report.items = {make_item("agreement",
                            "linearly complete, disjunction property, ~-complete and maximally "
                            "satisfiable hold jointly or fail jointly")};
  ItemReport& item = report.items[0];
  item.tallies["complete"] = 0;
  item.tallies["incomplete"] = 0;

  Signature sig;
  sig.add_relation("p", 0);
  sig.add_relation("q", 0);
  const std::vector<Formula> universe = enumerate_closed_formulas(sig, 2, true);
  const std::vector<std::string> atoms = {"p", "q"};

  Random rng(options.seed);
  for (std::size_t n = 0; n < options.cases; ++n) {
    // The unsatisfiable theory first, then valuations and finite theories
    // in turn.
    CompletenessInput sigma = Theory{Formula::bottom()};
    nlohmann::json presentation;
    if (n > 0 && n % 2 == 1) {
      Valuation v = random_assignment(rng, atoms, 6);
      presentation = {{"valuation", v.to_json()}};
      sigma = std::move(v);
    } else if (n > 0) {
      Theory t;
      const std::size_t k = 1 + rng.below(3);
      for (std::size_t i = 0; i < k; ++i) t.add(rng.pick(universe));
      presentation = {{"theory", theory_json(t)}};
      sigma = std::move(t);
    } else {
      presentation = {{"theory", nlohmann::json::array({"bot"})}};
    }
    const CompletenessReport r = classify_completeness(sigma, universe);
    ++item.cases;
    ++item.tallies[r.linearly_complete ? "complete" : "incomplete"];
    if (!r.agree()) {
      presentation["report"] = r.to_json();
      fail(item, presentation);
    }
  }
  return report;
}

}  // namespace goedel::cli
