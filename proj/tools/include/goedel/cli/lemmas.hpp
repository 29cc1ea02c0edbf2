#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace goedel::cli {

struct ItemReport {
  std::string item;
  std::string statement;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Named counters, e.g. how many cases met the premise of a conditional
  /// item.
  std::map<std::string, std::size_t> tallies;
  /// First falsifying instance; null when none.
  nlohmann::json counterexample;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<ItemReport> items;

  bool passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct LemmaOptions {
  std::uint64_t seed = 1;
  /// Random instances per item (the last constants item uses 2/5 of it).
  std::size_t cases = 1000;
  std::size_t max_atoms = 3;
  std::size_t max_depth = 4;
  std::size_t max_universe = 3;
};

/// Items 1-11 of the 1-entailment properties on random (T, φ, ψ).
SuiteReport run_property_suite(const LemmaOptions& options);

/// Items 1-7 of the constants lemma over R/1, S/2 and a constant c, checked
/// on every valuation of the bounded search space.
SuiteReport run_constants_suite(const LemmaOptions& options);

/// Agreement of the four completeness conditions on random presentations
/// of Σ, over the depth-2 formulas on {p, q}.
SuiteReport run_eqd_suite(const LemmaOptions& options);

}  // namespace goedel::cli
