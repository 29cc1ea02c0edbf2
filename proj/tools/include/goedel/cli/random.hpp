#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/truth_value.hpp"
#include "goedel/valuation.hpp"

namespace goedel::cli {

/// Seeded source for the randomized suites. Draws are reduced with plain
/// modulo so a seed gives the same sequence with every standard library.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Random propositional formula of depth <= `max_depth` over `atoms`.
Formula random_formula(Random& rng, const std::vector<std::string>& atoms, std::size_t max_depth,
                       bool delta = true);

/// Theory of `min_size`..`max_size` random formulas.
Theory random_theory(Random& rng, const std::vector<std::string>& atoms, std::size_t max_depth,
                     std::size_t min_size, std::size_t max_size, bool delta = true);

/// p/q with 1 <= q <= max_den, uniform over the numerator.
TruthValue random_value(Random& rng, std::int64_t max_den);

Valuation random_assignment(Random& rng, const std::vector<std::string>& atoms,
                            std::int64_t max_den);

/// Vocabulary for first-order formulas: relations with arities, constants
/// and the variables already in scope.
struct FoVocabulary {
  std::vector<std::pair<std::string, std::size_t>> relations;
  std::vector<std::string> constants;
  std::vector<std::string> variables;
};

/// Random first-order formula whose free variables are among
/// `vocab.variables`. Quantifiers bind fresh names from `binders`, at most
/// one per nesting level.
Formula random_fo_formula(Random& rng, const FoVocabulary& vocab, std::size_t max_depth,
                          const std::vector<std::string>& binders = {"y", "z"});

}  // namespace goedel::cli
