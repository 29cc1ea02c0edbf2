#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <optional>
#include <string>
#include <vector>

#include "goedel/decision.hpp"
#include "goedel/interpolation.hpp"

namespace goedel::detail {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
inline void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

/// Exact separability over the union of two atom sets. A formula over the
/// common atoms C is constant on assignments with the same normalized
/// C-restriction (its C-type), so T and U are separated by θ iff θ is top on
/// every C-type of a model of T and below top on every C-type of a model of
/// U. Only the top-sets of clone vectors matter, kept once each in clone
/// order.
class SeparationContext {
 public:
  SeparationContext(std::vector<std::string> union_atoms, std::vector<std::string> common_atoms,
                    bool delta, const CloneOptions& options);

  const AssignmentSpace& space() const { return space_; }
  const AssignmentSpace& common() const { return common_; }
  const CloneTable& clone() const { return *clone_; }
  /// False when the clone hit its budget; a miss is then inconclusive.
  bool complete() const { return complete_; }
  std::uint32_t type_of(std::size_t assignment) const { return type_of_[assignment]; }

  Bits all() const;
  Bits none() const { return Bits(words_, 0); }
  /// Assignments where the formula is 1. Memoized when `remember` (meant
  /// for enumeration formulas, which recur across calls); lookups always
  /// consult the memo.
  Bits top_set(const Formula& formula, bool remember = false) const;
  Bits top_set(const std::vector<std::uint8_t>& column) const;
  Bits models(const Theory& theory) const;

  /// Clone index of the first separating vector.
  std::optional<std::size_t> first_separator(const Bits& t_models, const Bits& u_models) const;

 private:
  AssignmentSpace space_;
  AssignmentSpace common_;
  std::shared_ptr<const CloneTable> clone_;
  bool complete_ = true;
  std::size_t words_ = 0;
  std::size_t type_words_ = 0;
  std::vector<std::uint32_t> type_of_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::size_t> mask_witness_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<Formula, Bits> memo_;
};

/// Cached per (union atoms, common atoms, Δ, depth limit).
std::shared_ptr<const SeparationContext> separation_context(
    const std::vector<std::string>& union_atoms, const std::vector<std::string>& common_atoms,
    bool delta, const CloneOptions& options);

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b);
std::vector<std::string> sorted_intersection(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b);

}  // namespace goedel::detail
