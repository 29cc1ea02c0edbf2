#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "goedel/decision.hpp"
#include "goedel/errors.hpp"
#include "goedel/formula.hpp"
#include "goedel/lindenbaum.hpp"
#include "goedel/linorder.hpp"
#include "goedel/valuation.hpp"

namespace goedel {

// ---------------------------------------------------------------------------
// Clone closure

/// Formulas over `atoms` up to equivalence, as value vectors over the
/// canonical assignments of `atoms` (AssignmentSpace order).
///
/// Vectors are listed in discovery order, which is the order of their first
/// witness in the closed-formula enumeration: by depth, then constructor,
/// then children. `witnesses[i]` is that first formula.
struct CloneTable {
  std::vector<std::string> atoms;
  bool delta_allowed = false;
  std::vector<std::vector<std::uint8_t>> vectors;
  std::vector<Formula> witnesses;
  std::vector<std::size_t> depths;
  /// True when the table is closed under the operations. Either no new
  /// vector appeared in a full round, or (with Δ) every type-consistent
  /// vector has been reached.
  bool saturated = false;
  /// Deepest completed round.
  std::size_t depth_reached = 0;

  std::size_t size() const { return vectors.size(); }
  std::optional<std::size_t> find(const std::vector<std::uint8_t>& vector) const;

  nlohmann::json to_json(bool with_vectors = false) const;

 private:
  friend class CloneBuilder;
  std::map<std::vector<std::uint8_t>, std::size_t> index_;
};

struct CloneOptions {
  /// Largest number of atoms accepted.
  std::size_t max_atoms = 3;
  /// Maximum number of vectors; exceeding it raises CloneBudgetExceeded.
  std::size_t budget = 250'000;
  /// Stop after this many rounds (result flagged unsaturated if so).
  std::optional<std::size_t> max_depth;
};

/// Raised when a clone closure outgrows its budget; carries what was built.
class CloneBudgetExceeded : public BudgetExceeded {
 public:
  CloneBudgetExceeded(const std::string& message, std::shared_ptr<const CloneTable> partial)
      : BudgetExceeded(message), partial_(std::move(partial)) {}
  const CloneTable& partial() const { return *partial_; }

 private:
  std::shared_ptr<const CloneTable> partial_;
};

/// Computes (or returns the cached) closure of the atom projections and ⊥
/// under pointwise ∧, ∨, → and, when `delta_allowed`, Δ.
std::shared_ptr<const CloneTable> clone_closure(const std::vector<std::string>& atoms,
                                                bool delta_allowed,
                                                const CloneOptions& options = {});

// ---------------------------------------------------------------------------
// Separation and interpolation

struct SeparabilityCertificate {
  Formula separator;
  EntailmentVerdict t_entails;      // T ⊩ θ
  EntailmentVerdict u_entails_not;  // U ⊩ ~θ

  nlohmann::json to_json() const;
};

/// Certificate iff T ⊩ θ and U ⊩ ~θ. Throws PreconditionError when θ uses an
/// atom outside the common language of T and U.
std::optional<SeparabilityCertificate> separates(const Formula& theta, const Theory& t,
                                                 const Theory& u);

enum class SeparationStatus { Separable, Inseparable, Inconclusive };

struct SeparationResult {
  SeparationStatus status = SeparationStatus::Inconclusive;
  std::optional<SeparabilityCertificate> certificate;

  nlohmann::json to_json() const;
};

/// Exhaustive search of the clone over the common atoms (Δ excluded when
/// `g_only`) for the first separating vector. Inconclusive only when the
/// clone cannot be completed within the options' budget.
SeparationResult find_separator(const Theory& t, const Theory& u, bool g_only,
                                const CloneOptions& options = {});

struct Interpolant {
  Formula theta;
  EntailmentVerdict phi_entails;  // φ ⊩ θ
  EntailmentVerdict entails_psi;  // θ ⊩ ψ

  nlohmann::json to_json() const;
};

/// θ over the common atoms with φ ⊩ θ and θ ⊩ ψ, found as a separator of
/// {φ} and {~ψ}. Throws PreconditionError (with the countermodel) when
/// φ ⊮ ψ, PreconditionError when `g_only`, an input contains Δ and no
/// Δ-free interpolant exists, and BudgetExceeded when the clone is too large.
Interpolant interpolate(const Formula& phi, const Formula& psi, bool g_only,
                        const CloneOptions& options = {});

/// (∃x̄ φ[d̄ := x̄], ∀ȳ ψ[ē := ȳ]) where d̄ are the constants only in φ and ē
/// those only in ψ; the fresh variables come from the v<k> pool.
std::pair<Formula, Formula> abstract_constants(const Formula& phi, const Formula& psi);

// ---------------------------------------------------------------------------
// Henkin extension and countermodel synthesis

enum class Side { T, U };

struct HenkinStep {
  std::size_t m = 0;
  Side side = Side::T;
  Formula candidate;
  /// candidate itself, or ~candidate when adding it would separate.
  Formula added;
  bool positive = true;
  /// Extra formula ~σ(k) introduced for a rejected ∀x σ(x).
  std::optional<Formula> witness;
  /// Inseparability re-checked after the step.
  bool inseparable_after = true;
};

struct HenkinTrace {
  Theory t;
  Theory u;
  std::vector<HenkinStep> steps;
  /// Set when separability was only checked by bounded search.
  bool bounded = false;

  nlohmann::json to_json() const;
};

struct HenkinOptions {
  bool g_only = false;
  /// Maximum number of enumerated formulas per side.
  std::size_t budget = 10'000;
  CloneOptions clone;
  /// First-order mode: separator depth and bounded-search options.
  std::size_t fo_separator_depth = 1;
  BoundedSearchOptions fo_search{1, 2, {}, {}, 2'000'000};
};

/// Extends (T, U) along the two enumerations, at step m first deciding
/// t_stream[m] on the T side and then u_stream[m] on the U side: the
/// formula is added when that keeps the pair inseparable, otherwise its ~.
///
/// Throws PreconditionError when (T, U) starts out separable and
/// InvariantViolation if both choices of a step separate.
HenkinTrace henkin_extend(const Theory& t, const Theory& u, const std::vector<Formula>& t_stream,
                          const std::vector<Formula>& u_stream, const HenkinOptions& options = {});

/// Single enumeration: each side takes the formulas within its own
/// language, in stream order.
HenkinTrace henkin_extend(const Theory& t, const Theory& u, const std::vector<Formula>& stream,
                          const HenkinOptions& options = {});

/// Default enumerations: first witnesses of the Δ-clone of depth <= 2 over
/// the atoms of each side (propositional input only).
std::vector<Formula> default_stream(const std::vector<std::string>& atoms);

struct PipelineTrace {
  HenkinTrace henkin;
  /// Models of the final T and U with the same order type on the common
  /// atoms; their values define B1 and B2 (and B0 through t_model).
  Valuation t_model;
  Valuation u_model;
  LindChain b0;
  LindChain b1;
  LindChain b2;
  LinHom f1;
  LinHom f2;
  AmalgamResult amalgam;
  /// Embedding of the amalgam chain into [0,1], by chain position.
  std::vector<TruthValue> h;

  nlohmann::json to_json() const;
};

struct CountermodelResult {
  Valuation valuation;
  PipelineTrace trace;
  /// Set in first-order mode, where every check is bounded.
  bool bounded = false;

  nlohmann::json to_json() const;
};

struct CountermodelOptions {
  HenkinOptions henkin;
};

/// Runs Henkin extension of ({φ}, {~ψ}), reads off complete theories,
/// builds the Lindenbaum chains B0, B1, B2, amalgamates them, embeds the
/// amalgam into [0,1] and reads off a valuation v with v(φ) = 1 and
/// v(ψ) < 1 (both re-checked).
///
/// Throws PreconditionError when φ ⊩ ψ, and InvariantViolation when a
/// pipeline check fails.
CountermodelResult countermodel_synthesize(const Formula& phi, const Formula& psi, bool g_only,
                                           const CountermodelOptions& options = {});

}  // namespace goedel
