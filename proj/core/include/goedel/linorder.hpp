#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "goedel/truth_value.hpp"

namespace goedel {

/// A finite linear order with distinct least and greatest elements.
/// Elements are string ids listed in ascending order.
class BoundedChain {
 public:
  /// Throws PreconditionError for fewer than two elements or repeated ids.
  explicit BoundedChain(std::vector<std::string> ascending);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& at(std::size_t rank) const { return elements_.at(rank); }
  const std::string& bottom() const { return elements_.front(); }
  const std::string& top() const { return elements_.back(); }

  std::optional<std::size_t> rank(std::string_view id) const;
  bool contains(std::string_view id) const { return rank(id).has_value(); }

  nlohmann::json to_json() const;
  static BoundedChain from_json(const nlohmann::json& j);

  friend bool operator==(const BoundedChain&, const BoundedChain&) = default;

 private:
  std::vector<std::string> elements_;
  std::map<std::string, std::size_t, std::less<>> ranks_;
};

/// A map between bounded chains, stored as the image rank of each source
/// rank. It is a Lin-homomorphism when `validate_lin_hom` accepts it.
struct LinHom {
  BoundedChain source;
  BoundedChain target;
  std::vector<std::size_t> image;

  /// Builds from an id-to-id map. Throws PreconditionError when an id is
  /// unknown or a source element is unmapped.
  static LinHom from_map(const BoundedChain& source, const BoundedChain& target,
                         const std::map<std::string, std::string>& map);
  static LinHom identity(const BoundedChain& chain);

  const std::string& apply(std::string_view id) const;
  nlohmann::json to_json() const;
  static LinHom from_json(const nlohmann::json& j);
};

/// Strictly monotone, bottom to bottom and top to top.
bool validate_lin_hom(const LinHom& f);

/// A finite relation given by its reflexive closure: leq[i][j] means
/// elements[i] ⊑ elements[j].
struct PartialOrder {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;

  /// Empty string when reflexive, antisymmetric and transitive; otherwise a
  /// description of the first failure found.
  std::string check() const;
};

/// Strict "comes first" order on element ids used to break ties.
using TieBreak = std::function<bool(const std::string&, const std::string&)>;

/// Kahn-style topological sort: repeatedly emits the tie-break-least element
/// all of whose strict predecessors have been emitted. Throws
/// PreconditionError when the relation has a cycle.
BoundedChain linear_extension(const PartialOrder& order, const TieBreak& tie_break);

struct AmalgamResult {
  BoundedChain chain;
  LinHom g1;
  LinHom g2;
  /// The relation ⊑ on the identified union, before linearization.
  PartialOrder relation;

  nlohmann::json to_json() const;
  /// Graphviz rendering of the amalgam: chain edges plus dashed edges from
  /// the B1 and B2 elements that landed on each position.
  std::string to_dot() const;
};

/// Amalgamates f1: B0 → B1 and f2: B0 → B2 in Lin.
///
/// B0 is made a common sub-chain by renaming every f1- and f2-image to the
/// B0 id it comes from; the remaining elements keep their ids unless they
/// clash, in which case they get a "b1:" or "b2:" prefix. The union is
/// ordered by ⊑ (within-B1 order, within-B2 order, and the two mixed cases
/// through an element of B0), checked to be a partial order and linearized
/// with the tie-break "B1 elements first, then id lexicographically".
///
/// Throws PreconditionError if f1 or f2 is not a valid Lin-homomorphism with
/// the expected source and target, and InvariantViolation if the result
/// fails its own checks.
AmalgamResult amalgamate(const BoundedChain& b0, const BoundedChain& b1, const BoundedChain& b2,
                         const LinHom& f1, const LinHom& f2);

/// Uniform embedding into [0,1]: the i-th of k elements maps to i/(k-1).
std::vector<TruthValue> embed_into_unit(const BoundedChain& chain);

}  // namespace goedel
