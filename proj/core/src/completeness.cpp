#include <algorithm>
#include <map>

#include "goedel/decision.hpp"
#include "goedel/errors.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

bool CompletenessReport::agree() const {
  return linearly_complete == disjunction_property && disjunction_property == tilde_complete &&
         tilde_complete == maximally_satisfiable;
}

nlohmann::json CompletenessReport::to_json() const {
  return {{"linearly_complete", linearly_complete},
          {"disjunction_property", disjunction_property},
          {"tilde_complete", tilde_complete},
          {"maximally_satisfiable", maximally_satisfiable},
          {"agree", agree()},
          {"violations", violations}};
}

CompletenessReport classify_completeness(const CompletenessInput& sigma,
                                         const std::vector<Formula>& universe) {
  for (const auto& f : universe) {
    if (!is_propositional(f)) throw FragmentError("universe formula is not propositional: " + to_string(f));
  }
  Theory theory;
  if (const auto* t = std::get_if<Theory>(&sigma)) {
    theory = *t;
  } else {
    const auto& v = std::get<Valuation>(sigma);
    for (const auto& f : universe) {
      if (evaluate(v, f).is_one()) theory.add(f);
    }
  }

  std::vector<Formula> all(universe);
  all.insert(all.end(), theory.begin(), theory.end());
  for (const auto& f : all) {
    if (!is_propositional(f)) throw FragmentError("theory formula is not propositional: " + to_string(f));
  }
  AssignmentSpace space(propositional_atoms(all));
  const std::uint8_t top = space.top();

  std::vector<std::size_t> models;
  {
    std::vector<bool> mask(space.size(), true);
    for (const auto& f : theory) {
      auto col = space.column(f);
      for (std::size_t i = 0; i < space.size(); ++i) mask[i] = mask[i] && col[i] == top;
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (mask[i]) models.push_back(i);
    }
  }

  // Conditions only depend on a formula's values over the models of Σ, so
  // work with one representative (the first in `universe`) per restricted
  // column.
  std::vector<std::vector<std::uint8_t>> cols;
  std::vector<const Formula*> reps;
  {
    std::map<std::vector<std::uint8_t>, std::size_t> seen;
    for (const auto& f : universe) {
      auto full = space.column(f);
      std::vector<std::uint8_t> restricted;
      restricted.reserve(models.size());
      for (auto i : models) restricted.push_back(full[i]);
      if (seen.emplace(restricted, cols.size()).second) {
        cols.push_back(std::move(restricted));
        reps.push_back(&f);
      }
    }
  }

  auto entailed_top = [&](const std::vector<std::uint8_t>& c) {
    return std::all_of(c.begin(), c.end(), [&](std::uint8_t x) { return x == top; });
  };
  auto entailed_below = [&](const std::vector<std::uint8_t>& c) {
    return std::all_of(c.begin(), c.end(), [&](std::uint8_t x) { return x != top; });
  };
  auto somewhere_top = [&](const std::vector<std::uint8_t>& c) {
    return std::any_of(c.begin(), c.end(), [&](std::uint8_t x) { return x == top; });
  };

  CompletenessReport report;
  report.linearly_complete = true;
  report.disjunction_property = true;
  report.tilde_complete = true;
  report.maximally_satisfiable = true;

  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto& a = cols[i];
    if (report.tilde_complete && !entailed_top(a) && !entailed_below(a)) {
      report.tilde_complete = false;
      report.violations.push_back("neither Σ ⊩ φ nor Σ ⊩ ~φ for φ = " + to_string(*reps[i]));
    }
    if (report.maximally_satisfiable && somewhere_top(a) && !entailed_top(a)) {
      report.maximally_satisfiable = false;
      report.violations.push_back("Σ ∪ {φ} satisfiable but Σ ⊮ φ for φ = " + to_string(*reps[i]));
    }
  }

  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      const auto& a = cols[i];
      const auto& b = cols[j];
      bool le = true, ge = true, join_top = true;
      for (std::size_t k = 0; k < a.size(); ++k) {
        le = le && a[k] <= b[k];
        ge = ge && b[k] <= a[k];
        join_top = join_top && std::max(a[k], b[k]) == top;
      }
      std::string pair = to_string(*reps[i]) + " , " + to_string(*reps[j]);
      if (report.linearly_complete && !le && !ge) {
        report.linearly_complete = false;
        report.violations.push_back("neither direction of implication entailed for " + pair);
      }
      if (report.disjunction_property && join_top && !entailed_top(a) && !entailed_top(b)) {
        report.disjunction_property = false;
        report.violations.push_back("disjunction entailed but neither disjunct for " + pair);
      }
    }
  }
  return report;
}

}  // namespace goedel
