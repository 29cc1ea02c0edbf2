#pragma once

#include <map>
#include <string>

#include "goedel/formula.hpp"
#include "goedel/truth_value.hpp"
#include "goedel/valuation.hpp"

namespace goedel {

/// Assignment of free variables to universe indices.
using Environment = std::map<std::string, std::size_t, std::less<>>;

/// Exact value of φ under v. Quantifiers range over the finite universe, so
/// inf and sup are attained.
///
/// Throws EvaluationError for an uninterpreted symbol or an unbound variable.
TruthValue evaluate(const Valuation& v, const Formula& formula, const Environment& env = {});

/// True iff every member of T evaluates to 1.
bool models(const Valuation& v, const Theory& theory);

}  // namespace goedel
