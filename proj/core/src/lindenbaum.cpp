#include "goedel/lindenbaum.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "goedel/errors.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

std::optional<std::size_t> LindChain::class_of(const Formula& formula) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& m = classes_[i].members;
    if (std::find(m.begin(), m.end(), formula) != m.end()) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> LindChain::class_with_value(const TruthValue& value) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), value,
                             [](const LindClass& c, const TruthValue& v) { return c.value < v; });
  if (it == classes_.end() || it->value != value) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

BoundedChain LindChain::as_bounded_chain() const {
  std::vector<std::string> ids;
  for (const auto& c : classes_) ids.push_back(to_string(c.members.front()));
  return BoundedChain(std::move(ids));
}

nlohmann::json LindChain::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : classes_) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& f : c.members) reps.push_back(to_string(f));
    classes.push_back({{"value", c.value.str()}, {"representatives", reps}});
  }
  return {{"g_only", g_only_}, {"classes", classes}};
}

LindChain build_chain_from_values(const std::vector<Formula>& formulas,
                                  const std::vector<TruthValue>& values, bool g_only) {
  if (formulas.size() != values.size()) throw PreconditionError("one value per formula required");
  std::map<TruthValue, std::vector<Formula>> by_value;
  by_value[TruthValue::zero()];
  by_value[TruthValue::one()];
  const Formula bot = Formula::bottom(), top = Formula::top();
  std::unordered_set<Formula> seen;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    const Formula& f = formulas[i];
    if (!is_closed(f)) throw PreconditionError("open formula in Lindenbaum chain: " + to_string(f));
    if (g_only && !is_g_formula(f)) throw FragmentError("Δ-formula in a G-chain: " + to_string(f));
    if (seen.insert(f).second) by_value[values[i]].push_back(f);
  }
  if (!seen.contains(bot)) by_value[TruthValue::zero()].push_back(bot);
  if (!seen.contains(top)) by_value[TruthValue::one()].push_back(top);

  LindChain chain;
  chain.g_only_ = g_only;
  for (auto& [value, members] : by_value) chain.classes_.push_back({value, std::move(members)});
  return chain;
}

LindChain build_chain(const Valuation& oracle, const std::vector<Formula>& formulas, bool g_only) {
  std::vector<TruthValue> values;
  values.reserve(formulas.size());
  for (const auto& f : formulas) {
    if (!is_closed(f)) throw PreconditionError("open formula in Lindenbaum chain: " + to_string(f));
    values.push_back(evaluate(oracle, f));
  }
  LindChain chain = build_chain_from_values(formulas, values, g_only);
  chain.oracle_ = oracle;
  return chain;
}

std::size_t class_op(const LindChain& chain, ClassOp op, std::size_t lhs, std::size_t rhs) {
  if (lhs >= chain.size() || (op != ClassOp::Delta && rhs >= chain.size())) {
    throw PreconditionError("class index out of range");
  }
  const Formula& a = chain.representative(lhs);
  const Formula& b = chain.representative(op == ClassOp::Delta ? lhs : rhs);
  Formula combined;
  switch (op) {
    case ClassOp::And: combined = Formula::conj(a, b); break;
    case ClassOp::Or: combined = Formula::disj(a, b); break;
    case ClassOp::Implies: combined = Formula::implies(a, b); break;
    case ClassOp::Delta: combined = Formula::delta(a); break;
  }
  if (chain.g_only() && op == ClassOp::Delta) {
    throw PreconditionError("Δ is not an operation of a G-chain");
  }
  TruthValue value;
  if (chain.oracle()) {
    value = evaluate(*chain.oracle(), combined);
  } else {
    const TruthValue& x = chain.classes()[lhs].value;
    const TruthValue& y = chain.classes()[op == ClassOp::Delta ? lhs : rhs].value;
    switch (op) {
      case ClassOp::And: value = godel_and(x, y); break;
      case ClassOp::Or: value = godel_or(x, y); break;
      case ClassOp::Implies: value = godel_implies(x, y); break;
      case ClassOp::Delta: value = godel_delta(x); break;
    }
  }
  auto cls = chain.class_with_value(value);
  if (!cls) {
    throw PreconditionError("chain has no class for " + to_string(combined) + " (value " +
                            value.str() + ")");
  }
  return *cls;
}

}  // namespace goedel
