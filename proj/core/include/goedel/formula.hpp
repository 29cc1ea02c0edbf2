#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace goedel {

/// A term of a relational language: a variable or a constant symbol.
struct Term {
  enum class Kind : std::uint8_t { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Primitive constructors. The enumerator order is the declaration order.
enum class Connective : std::uint8_t {
  Atom,
  Bottom,
  And,
  Or,
  Implies,
  Delta,
  Forall,
  Exists,
};

/// Immutable formula tree with shared subterms.
///
/// Only the primitive constructors are stored. ¬φ, ⊤, ∼φ and φ↔ψ are
/// expanded on construction (φ→⊥, ⊥→⊥, Δφ→⊥ and (φ→ψ)∧(ψ→φ)); the
/// printer folds them back.
class Formula {
 public:
  /// The default formula is ⊥.
  Formula();

  static Formula atom(std::string relation, std::vector<Term> terms = {});
  static Formula bottom();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula delta(Formula body);
  static Formula forall(std::string variable, Formula body);
  static Formula exists(std::string variable, Formula body);

  static Formula top();
  static Formula negation(Formula body);
  static Formula tilde(Formula body);
  static Formula iff(Formula lhs, Formula rhs);

  Connective kind() const;
  bool is(Connective c) const { return kind() == c; }

  /// Atom accessors.
  const std::string& relation() const;
  const std::vector<Term>& terms() const;

  /// And / Or / Implies operands.
  const Formula& lhs() const;
  const Formula& rhs() const;

  /// Operand of Delta, Forall and Exists.
  const Formula& body() const;
  /// Bound variable of Forall / Exists.
  const std::string& variable() const;

  /// Constructor depth: atoms and ⊥ have depth 0.
  std::size_t depth() const;
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  /// Structural total order (kind rank first); used for canonical sorting.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);
  static Formula make_binary(Connective kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

/// Renders with the concrete grammar, re-sugaring ¬, ⊤, ∼ and ↔.
std::string to_string(const Formula& formula);
std::ostream& operator<<(std::ostream& out, const Formula& formula);

/// A finite, ordered set of closed formulas.
class Theory {
 public:
  Theory() = default;
  Theory(std::initializer_list<Formula> formulas);
  explicit Theory(const std::vector<Formula>& formulas);

  /// Throws SymbolError for an open formula; duplicates are ignored.
  void add(const Formula& formula);
  Theory with(const Formula& formula) const;

  bool contains(const Formula& formula) const;
  const std::vector<Formula>& formulas() const { return formulas_; }
  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }

  friend bool operator==(const Theory&, const Theory&) = default;

 private:
  std::vector<Formula> formulas_;
};

}  // namespace goedel

template <>
struct std::hash<goedel::Formula> {
  std::size_t operator()(const goedel::Formula& f) const noexcept { return f.hash(); }
};
