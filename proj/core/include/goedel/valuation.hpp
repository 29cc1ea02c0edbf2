#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "goedel/signature.hpp"
#include "goedel/truth_value.hpp"

namespace goedel {

/// A finite Gödel valuation: universe, [0,1]-valued relation tables and
/// constant interpretations. Elements are addressed by index into
/// `universe()`.
class Valuation {
 public:
  struct Table {
    std::size_t arity = 0;
    std::vector<TruthValue> values;  // row-major over M^arity
  };

  /// Throws EvaluationError for an empty universe or repeated element ids.
  explicit Valuation(std::vector<std::string> universe);

  /// Single-element universe {"e0"} with each atom as a 0-ary relation.
  static Valuation propositional(const std::map<std::string, TruthValue>& atoms);

  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }
  std::optional<std::size_t> element(std::string_view id) const;

  /// Creates (or resets) a table filled with `fill`.
  void define_relation(const std::string& name, std::size_t arity,
                       TruthValue fill = TruthValue::zero());
  void set(std::string_view relation, std::span<const std::size_t> args, TruthValue value);
  /// Sets row `row` of the row-major table directly.
  void set_row(std::string_view relation, std::size_t row, TruthValue value);
  /// Shorthand for 0-ary relations.
  void set(std::string_view relation, TruthValue value) { set(relation, {}, value); }

  bool has_relation(std::string_view name) const;
  const Table& table(std::string_view name) const;
  TruthValue get(std::string_view relation, std::span<const std::size_t> args) const;
  const std::map<std::string, Table, std::less<>>& relations() const { return relations_; }

  void set_constant(const std::string& name, std::size_t element);
  std::optional<std::size_t> constant(std::string_view name) const;
  const std::map<std::string, std::size_t, std::less<>>& constants() const { return constants_; }

  /// True when every symbol of `sig` is interpreted with matching arity.
  bool interprets(const Signature& sig) const;

  /// {"universe":[...],"relations":{"R":{"(a,b)":"1/2"}},"constants":{"c":"a"}}
  nlohmann::json to_json() const;
  /// Throws ParseError on malformed input; missing table rows default to 0.
  static Valuation from_json(const nlohmann::json& j);

  friend bool operator==(const Valuation&, const Valuation&);

 private:
  std::size_t offset(const Table& t, std::span<const std::size_t> args) const;

  std::vector<std::string> universe_;
  std::map<std::string, Table, std::less<>> relations_;
  std::map<std::string, std::size_t, std::less<>> constants_;
};

bool operator==(const Valuation::Table& a, const Valuation::Table& b);

}  // namespace goedel
