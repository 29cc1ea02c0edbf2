#include "goedel/decision.hpp"

#include <algorithm>

#include "goedel/errors.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

TruthValue CanonicalChain::value(std::uint8_t level) const {
  return TruthValue(level, static_cast<std::int64_t>(n + 1));
}

std::vector<TruthValue> CanonicalChain::values() const {
  std::vector<TruthValue> out;
  for (std::size_t i = 0; i <= n + 1; ++i) out.push_back(value(static_cast<std::uint8_t>(i)));
  return out;
}

AssignmentSpace::AssignmentSpace(std::vector<std::string> atoms, std::size_t limit)
    : atoms_(std::move(atoms)), chain_{atoms_.size()} {
  if (atoms_.size() > 250) throw BudgetExceeded("too many atoms for canonical enumeration");
  const std::size_t base = atoms_.size() + 2;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (size_ > limit / base) {
      throw BudgetExceeded(std::to_string(atoms_.size()) + " atoms exceed the assignment limit");
    }
    size_ *= base;
  }
  const std::size_t n = atoms_.size();
  levels_.resize(size_ * n);
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    std::copy(digits.begin(), digits.end(), levels_.begin() + static_cast<std::ptrdiff_t>(i * n));
    for (std::size_t pos = n; pos > 0; --pos) {
      if (++digits[pos - 1] < base) break;
      digits[pos - 1] = 0;
    }
  }
}

std::optional<std::size_t> AssignmentSpace::atom_index(std::string_view name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::vector<std::uint8_t> AssignmentSpace::column(const Formula& f) const {
  const std::uint8_t top = chain_.top();
  std::vector<std::uint8_t> out(size_);
  switch (f.kind()) {
    case Connective::Bottom:
      return out;
    case Connective::Atom: {
      if (!f.terms().empty()) {
        throw FragmentError("first-order atom '" + f.relation() + "' in propositional check");
      }
      auto idx = atom_index(f.relation());
      if (!idx) throw FragmentError("atom '" + f.relation() + "' outside the assignment space");
      for (std::size_t i = 0; i < size_; ++i) out[i] = level(i, *idx);
      return out;
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Implies: {
      auto a = column(f.lhs());
      auto b = column(f.rhs());
      if (f.is(Connective::And)) {
        for (std::size_t i = 0; i < size_; ++i) out[i] = std::min(a[i], b[i]);
      } else if (f.is(Connective::Or)) {
        for (std::size_t i = 0; i < size_; ++i) out[i] = std::max(a[i], b[i]);
      } else {
        for (std::size_t i = 0; i < size_; ++i) out[i] = a[i] <= b[i] ? top : b[i];
      }
      return out;
    }
    case Connective::Delta: {
      auto a = column(f.body());
      for (std::size_t i = 0; i < size_; ++i) out[i] = a[i] == top ? top : 0;
      return out;
    }
    case Connective::Forall:
    case Connective::Exists:
      throw FragmentError("quantifier in propositional check");
  }
  return out;
}

Valuation AssignmentSpace::valuation(std::size_t assignment) const {
  std::map<std::string, TruthValue> atoms;
  for (std::size_t j = 0; j < atoms_.size(); ++j) atoms[atoms_[j]] = chain_.value(level(assignment, j));
  return Valuation::propositional(atoms);
}

std::vector<std::vector<std::uint8_t>> enumerate_assignments(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  AssignmentSpace space(std::move(names));
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto a = space.assignment(i);
    out.emplace_back(a.begin(), a.end());
  }
  return out;
}

nlohmann::json EntailmentVerdict::to_json() const {
  nlohmann::json j = {{"holds", holds}, {"bounded", bounded}};
  j["witness"] = witness ? witness->to_json() : nlohmann::json(nullptr);
  return j;
}

namespace {

void require_propositional(const Formula& f) {
  if (!is_propositional(f)) throw FragmentError("not a propositional formula: " + to_string(f));
}

AssignmentSpace space_for(const Theory& theory, const Formula* extra) {
  std::vector<Formula> all(theory.begin(), theory.end());
  if (extra) all.push_back(*extra);
  for (const auto& f : all) require_propositional(f);
  return AssignmentSpace(propositional_atoms(all));
}

// Assignments where every premise takes the top level.
std::vector<bool> premise_mask(const AssignmentSpace& space, const Theory& theory) {
  std::vector<bool> mask(space.size(), true);
  for (const auto& f : theory) {
    auto col = space.column(f);
    for (std::size_t i = 0; i < space.size(); ++i) mask[i] = mask[i] && col[i] == space.top();
  }
  return mask;
}

}  // namespace

EntailmentVerdict one_entails(const Theory& theory, const Formula& formula) {
  AssignmentSpace space = space_for(theory, &formula);
  auto mask = premise_mask(space, theory);
  auto col = space.column(formula);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (mask[i] && col[i] != space.top()) {
      EntailmentVerdict v;
      v.witness = space.valuation(i);
      return v;
    }
  }
  return {true, std::nullopt, false};
}

EntailmentVerdict check_tautology(const Formula& formula) { return one_entails(Theory{}, formula); }

bool is_tautology(const Formula& formula) { return check_tautology(formula).holds; }

bool is_satisfiable(const Theory& theory) {
  AssignmentSpace space = space_for(theory, nullptr);
  auto mask = premise_mask(space, theory);
  return std::find(mask.begin(), mask.end(), true) != mask.end();
}

}  // namespace goedel
