#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "goedel/formula.hpp"

namespace goedel::cli {

/// One formula per equivalence class of the formulas of depth <= `depth`
/// over `atoms` (Δ-free when `g_only`): the first witness of each class in
/// enumeration order.
std::vector<Formula> semantic_corpus(const std::vector<std::string>& atoms, bool g_only,
                                     std::size_t depth = 3);

/// Every formula of depth <= `depth` over `atoms`, in enumeration order.
std::vector<Formula> syntactic_corpus(const std::vector<std::string>& atoms, bool g_only,
                                      std::size_t depth);

}  // namespace goedel::cli
