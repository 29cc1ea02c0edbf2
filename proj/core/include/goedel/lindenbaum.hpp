#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "goedel/formula.hpp"
#include "goedel/linorder.hpp"
#include "goedel/truth_value.hpp"
#include "goedel/valuation.hpp"

namespace goedel {

/// One equivalence class: the formulas sharing a value under the oracle.
struct LindClass {
  TruthValue value;
  std::vector<Formula> members;  // input order; ⊥/⊤ appended when adjoined
};

/// Classes of closed formulas modulo the complete theory Σ_v of a valuation,
/// in ascending order. Class 0 holds ⊥ and the last class holds ⊤.
class LindChain {
 public:
  const std::vector<LindClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::size_t bottom() const { return 0; }
  std::size_t top() const { return classes_.size() - 1; }
  bool g_only() const { return g_only_; }
  const std::optional<Valuation>& oracle() const { return oracle_; }

  std::optional<std::size_t> class_of(const Formula& formula) const;
  std::optional<std::size_t> class_with_value(const TruthValue& value) const;
  const Formula& representative(std::size_t cls) const { return classes_.at(cls).members.front(); }

  /// Chain over the printed first representatives.
  BoundedChain as_bounded_chain() const;
  nlohmann::json to_json() const;

 private:
  friend LindChain build_chain(const Valuation&, const std::vector<Formula>&, bool);
  friend LindChain build_chain_from_values(const std::vector<Formula>&,
                                           const std::vector<TruthValue>&, bool);

  std::vector<LindClass> classes_;
  bool g_only_ = false;
  std::optional<Valuation> oracle_;
};

/// Partitions `formulas` by their value under `oracle`, ordered by value,
/// adjoining ⊥ and ⊤. Throws PreconditionError for an open formula and
/// FragmentError for a Δ-formula when `g_only`.
LindChain build_chain(const Valuation& oracle, const std::vector<Formula>& formulas, bool g_only);

/// Same partition from precomputed values (values[i] belongs to
/// formulas[i]); used when the values are already known exactly.
LindChain build_chain_from_values(const std::vector<Formula>& formulas,
                                  const std::vector<TruthValue>& values, bool g_only);

enum class ClassOp { And, Or, Implies, Delta };

/// Class of the combined representatives, e.g. [a] ∧ [b] = [a ∧ b]. `rhs` is
/// ignored for Δ. Throws PreconditionError when an argument is out of range
/// or the chain has no class for the result.
std::size_t class_op(const LindChain& chain, ClassOp op, std::size_t lhs, std::size_t rhs = 0);

}  // namespace goedel
