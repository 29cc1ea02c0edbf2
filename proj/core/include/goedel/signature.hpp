#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace goedel {

/// A finite relational signature: relation symbols with fixed arities and
/// constant symbols. Names are unique across both sets.
class Signature {
 public:
  Signature() = default;

  /// Throws SymbolError on a name clash or a conflicting arity.
  void add_relation(const std::string& name, std::size_t arity);
  void add_constant(const std::string& name);

  std::optional<std::size_t> arity(std::string_view name) const;
  bool has_relation(std::string_view name) const;
  bool has_constant(std::string_view name) const;

  const std::map<std::string, std::size_t, std::less<>>& relations() const {
    return relations_;
  }
  const std::set<std::string, std::less<>>& constants() const { return constants_; }

  bool empty() const { return relations_.empty() && constants_.empty(); }
  bool is_propositional() const;

  /// True when every symbol of *this is declared (with equal arity) in other.
  bool subset_of(const Signature& other) const;

  Signature united(const Signature& other) const;
  Signature intersected(const Signature& other) const;

  /// Signature file: one `rel Name/arity` or `const Name` per line; `#`
  /// starts a comment.
  static Signature parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t, std::less<>> relations_;
  std::set<std::string, std::less<>> constants_;
};

/// Identifier syntax shared by the formula grammar and signature files.
bool is_identifier(std::string_view name);

/// Names with special meaning in the formula grammar.
bool is_reserved_word(std::string_view name);

}  // namespace goedel
