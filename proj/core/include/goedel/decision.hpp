#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "goedel/formula.hpp"
#include "goedel/truth_value.hpp"
#include "goedel/valuation.hpp"

namespace goedel {

/// The chain {0, 1/(n+1), ..., 1}. Level i stands for i/(n+1).
struct CanonicalChain {
  std::size_t n = 0;

  std::uint8_t top() const { return static_cast<std::uint8_t>(n + 1); }
  TruthValue value(std::uint8_t level) const;
  std::vector<TruthValue> values() const;
};

/// All (n+2)^n maps from an ordered atom list into CanonicalChain(n).
///
/// Assignment i gives atom j the level of the j-th base-(n+2) digit of i,
/// most significant digit first, so the first atom varies slowest.
class AssignmentSpace {
 public:
  /// Throws BudgetExceeded when (n+2)^n exceeds `limit`.
  explicit AssignmentSpace(std::vector<std::string> atoms, std::size_t limit = 20'000'000);

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  const CanonicalChain& chain() const { return chain_; }
  std::uint8_t top() const { return chain_.top(); }
  std::size_t size() const { return size_; }

  std::uint8_t level(std::size_t assignment, std::size_t atom) const {
    return levels_[assignment * atoms_.size() + atom];
  }
  std::span<const std::uint8_t> assignment(std::size_t i) const {
    return {levels_.data() + i * atoms_.size(), atoms_.size()};
  }
  std::optional<std::size_t> atom_index(std::string_view name) const;

  /// Value vector of a propositional formula: entry i is its level under
  /// assignment i. Throws FragmentError for first-order input or an atom
  /// outside the space.
  std::vector<std::uint8_t> column(const Formula& formula) const;

  /// The assignment as a one-element valuation.
  Valuation valuation(std::size_t assignment) const;

 private:
  std::vector<std::string> atoms_;
  CanonicalChain chain_;
  std::size_t size_ = 1;
  std::vector<std::uint8_t> levels_;
};

/// Every assignment of n atoms into CanonicalChain(n) as a level tuple, in
/// the order used by AssignmentSpace.
std::vector<std::vector<std::uint8_t>> enumerate_assignments(std::size_t n);

/// Outcome of a (bounded or exact) 1-entailment check.
struct EntailmentVerdict {
  bool holds = false;
  /// Present iff !holds: models every premise, conclusion below 1.
  std::optional<Valuation> witness;
  /// True when produced by a bounded search: `holds` then only means no
  /// countermodel exists in the searched space.
  bool bounded = false;

  nlohmann::json to_json() const;
};

/// Exact propositional decision over the canonical chain.
bool is_tautology(const Formula& formula);
EntailmentVerdict check_tautology(const Formula& formula);
EntailmentVerdict one_entails(const Theory& theory, const Formula& formula);
/// True iff some valuation models every formula.
bool is_satisfiable(const Theory& theory);

struct BoundedSearchOptions {
  std::size_t min_universe = 1;
  std::size_t max_universe = 3;
  /// Relation values to try. Empty selects, per universe size, the N+2
  /// evenly spaced values where N is the number of atomic slots; that
  /// choice is exhaustive for the given universe size.
  std::vector<TruthValue> grid;
  /// Per universe size grids, taking precedence over `grid`.
  std::map<std::size_t, std::vector<TruthValue>> size_grids;
  /// Maximum number of valuations examined; checked before searching.
  std::uint64_t budget = 200'000'000;
};

/// Searches finite valuations of L(T ∪ {φ}) for a countermodel. Constant
/// interpretations are enumerated up to renaming of elements. The verdict
/// is flagged `bounded`.
///
/// Throws BudgetExceeded (before searching) when the space is too large,
/// and PreconditionError for open formulas or a grid without 0 and 1.
EntailmentVerdict fo_check_bounded(const Theory& theory, const Formula& formula,
                                   const BoundedSearchOptions& options = {});

/// Visitor for sweep_bounded: the levels of each formula (0 stands for 0,
/// `top` for 1, order preserved) and a lazy decoder of the valuation.
/// Returning false stops the sweep.
using BoundedVisitor = std::function<bool(std::span<const std::uint8_t> levels, std::uint8_t top,
                                          const std::function<Valuation()>& valuation)>;

/// Walks the search space of fo_check_bounded for the joint language of
/// `formulas`, in the same order; returns the number of valuations visited.
std::uint64_t sweep_bounded(const std::vector<Formula>& formulas,
                            const BoundedSearchOptions& options, const BoundedVisitor& visit);

/// Σ presented either as a finite theory or by a valuation v, in which case
/// Σ is {θ in the universe : v(θ) = 1}.
using CompletenessInput = std::variant<Theory, Valuation>;

struct CompletenessReport {
  bool linearly_complete = false;
  bool disjunction_property = false;
  bool tilde_complete = false;
  bool maximally_satisfiable = false;
  /// One human-readable line per condition that failed, naming the
  /// offending formula or pair.
  std::vector<std::string> violations;

  bool agree() const;
  nlohmann::json to_json() const;
};

/// Checks the four completeness conditions with every quantifier over
/// formulas restricted to `universe` (closed propositional formulas).
CompletenessReport classify_completeness(const CompletenessInput& sigma,
                                         const std::vector<Formula>& universe);

}  // namespace goedel
