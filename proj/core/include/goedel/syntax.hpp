#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/signature.hpp"

namespace goedel {

// ---------------------------------------------------------------------------
// Parsing

/// Parses `text` against a declared signature. Relation symbols must be
/// declared with matching arity; a term is a constant when declared as one,
/// otherwise a variable (bound or free).
///
/// Throws ParseError (with byte offset) or SymbolError.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Parses without a signature: relation arities are inferred from first use
/// and every unbound term is read as a constant.
Formula parse_formula(std::string_view text);

/// `.thy` text: one formula per line, `#` comments, blank lines ignored.
Theory parse_theory(std::string_view text, const Signature& sig);
Theory parse_theory(std::string_view text);

// ---------------------------------------------------------------------------
// Structural queries

std::set<std::string> free_variables(const Formula& formula);
bool is_closed(const Formula& formula);

/// L_φ: exactly the relation and constant symbols occurring in φ.
Signature language_of(const Formula& formula);
Signature language_of(std::span<const Formula> formulas);
Signature language_of(const Theory& theory);

/// True iff no Δ occurs (hence no ∼).
bool is_g_formula(const Formula& formula);

/// No quantifiers and every atom 0-ary.
bool is_propositional(const Formula& formula);

/// Sorted names of the 0-ary atoms occurring in the formulas.
std::vector<std::string> propositional_atoms(const Formula& formula);
std::vector<std::string> propositional_atoms(std::span<const Formula> formulas);

/// Constants occurring in φ (sorted).
std::set<std::string> constants_of(const Formula& formula);

/// Capture-free replacement of the free occurrences of `variable` by the
/// constant `constant`. Constants never capture, so no renaming is needed.
Formula substitute(const Formula& formula, std::string_view variable,
                   const std::string& constant);

/// Replaces every occurrence of the constant `constant` by the variable
/// `variable` (which must not be bound anywhere inside `formula`).
Formula abstract_constant(const Formula& formula, std::string_view constant,
                          const std::string& variable);

/// Variable v<k> of the fixed pool, skipping names that clash with `sig`.
std::string pool_variable(std::size_t index, const Signature& sig);

/// First constant k<i> of the fresh pool not declared in `sig` and not in
/// `taken`.
std::string fresh_constant(const Signature& sig, const std::set<std::string>& taken = {});

// ---------------------------------------------------------------------------
// Enumeration

/// All closed formulas of constructor depth <= `depth` over `sig`, each
/// exactly once, in the fixed order
///
///   depth ascending; within a depth, constructor rank
///   Atom < ⊥ < ∧ < ∨ < → < Δ < ∀ < ∃; within a constructor, children
///   lexicographically by their own position in this order.
///
/// Atoms list relations by name and term tuples lexicographically with
/// constants (by name) before pool variables. Quantifiers are generated
/// only when `sig` has a relation of positive arity; the quantifier at
/// nesting level k binds pool variable v<k>.
///
/// Throws BudgetExceeded when more than `limit` formulas would be produced.
std::vector<Formula> enumerate_closed_formulas(
    const Signature& sig, std::size_t depth, bool delta_allowed,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

}  // namespace goedel
