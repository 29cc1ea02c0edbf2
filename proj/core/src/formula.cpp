#include "goedel/formula.hpp"

#include <algorithm>
#include <utility>

#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

struct Formula::Node {
  Connective kind = Connective::Bottom;
  std::string name;  // relation for atoms, variable for quantifiers
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::size_t depth = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const Formula& bottom_singleton();

}  // namespace

Formula Formula::make(Node node) {
  std::size_t h = std::hash<std::uint8_t>()(static_cast<std::uint8_t>(node.kind));
  h = mix(h, std::hash<std::string>()(node.name));
  for (const auto& t : node.terms) {
    h = mix(h, std::hash<std::string>()(t.name) * 2 + (t.is_constant() ? 1 : 0));
  }
  node.depth = 0;
  node.size = 1;
  for (const auto& child : node.children) {
    h = mix(h, child.hash());
    node.depth = std::max(node.depth, child.depth() + 1);
    node.size += child.size();
  }
  node.hash = h;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

namespace {

const Formula& bottom_singleton() {
  static const Formula bot = Formula::bottom();
  return bot;
}

}  // namespace

Formula::Formula() : node_(bottom_singleton().node_) {}

Formula Formula::atom(std::string relation, std::vector<Term> terms) {
  Node n;
  n.kind = Connective::Atom;
  n.name = std::move(relation);
  n.terms = std::move(terms);
  return make(std::move(n));
}

Formula Formula::bottom() {
  Node n;
  n.kind = Connective::Bottom;
  return make(std::move(n));
}

Formula Formula::make_binary(Connective kind, Formula lhs, Formula rhs) {
  Node n;
  n.kind = kind;
  n.children.reserve(2);
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return make(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return make_binary(Connective::And, std::move(lhs), std::move(rhs));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return make_binary(Connective::Or, std::move(lhs), std::move(rhs));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make_binary(Connective::Implies, std::move(lhs), std::move(rhs));
}

Formula Formula::delta(Formula body) {
  Node n;
  n.kind = Connective::Delta;
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::forall(std::string variable, Formula body) {
  Node n;
  n.kind = Connective::Forall;
  n.name = std::move(variable);
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::exists(std::string variable, Formula body) {
  Node n;
  n.kind = Connective::Exists;
  n.name = std::move(variable);
  n.children.push_back(std::move(body));
  return make(std::move(n));
}

Formula Formula::top() { return implies(bottom(), bottom()); }

Formula Formula::negation(Formula body) { return implies(std::move(body), bottom()); }

Formula Formula::tilde(Formula body) { return negation(delta(std::move(body))); }

Formula Formula::iff(Formula lhs, Formula rhs) {
  return conj(implies(lhs, rhs), implies(rhs, lhs));
}

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::relation() const {
  if (node_->kind != Connective::Atom) throw InvariantViolation("relation() on non-atom");
  return node_->name;
}

const std::vector<Term>& Formula::terms() const { return node_->terms; }

const Formula& Formula::lhs() const {
  if (node_->children.size() != 2) throw InvariantViolation("lhs() on non-binary formula");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (node_->children.size() != 2) throw InvariantViolation("rhs() on non-binary formula");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (node_->children.size() != 1) throw InvariantViolation("body() on formula without a single operand");
  return node_->children[0];
}

const std::string& Formula::variable() const {
  if (node_->kind != Connective::Forall && node_->kind != Connective::Exists) {
    throw InvariantViolation("variable() on non-quantifier");
  }
  return node_->name;
}

std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  if (x.name != y.name || x.terms != y.terms) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.terms <=> y.terms; c != 0) return c;
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength; higher binds tighter.
enum Prec : int {
  kQuantifier = 0,
  kIff = 1,
  kImplies = 2,
  kOr = 3,
  kAnd = 4,
  kPrefix = 5,
  kPrimary = 6,
};

bool is_top(const Formula& f) {
  return f.is(Connective::Implies) && f.lhs().is(Connective::Bottom) &&
         f.rhs().is(Connective::Bottom);
}

bool is_tilde(const Formula& f) {
  return f.is(Connective::Implies) && f.rhs().is(Connective::Bottom) &&
         f.lhs().is(Connective::Delta);
}

bool is_negation(const Formula& f) {
  return f.is(Connective::Implies) && f.rhs().is(Connective::Bottom);
}

bool is_iff(const Formula& f) {
  if (!f.is(Connective::And)) return false;
  const auto& l = f.lhs();
  const auto& r = f.rhs();
  return l.is(Connective::Implies) && r.is(Connective::Implies) &&
         l.lhs() == r.rhs() && l.rhs() == r.lhs();
}

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Bottom:
      return kPrimary;
    case Connective::Delta:
      return kPrefix;
    case Connective::Forall:
    case Connective::Exists:
      return kQuantifier;
    case Connective::And:
      return is_iff(f) ? kIff : kAnd;
    case Connective::Or:
      return kOr;
    case Connective::Implies:
      if (is_top(f)) return kPrimary;
      if (is_negation(f)) return kPrefix;
      return kImplies;
  }
  return kPrimary;
}

void print(const Formula& f, std::string& out);

// Operands of a binary or prefix connective: quantifiers always get parens,
// since their body extends as far right as possible.
void print_operand(const Formula& f, int min_prec, std::string& out) {
  int p = precedence(f);
  if (p == kQuantifier || p < min_prec) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print_binary(const Formula& l, const char* op, const Formula& r, int left_min,
                  int right_min, std::string& out) {
  print_operand(l, left_min, out);
  out += op;
  print_operand(r, right_min, out);
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Connective::Atom: {
      out += f.relation();
      if (!f.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          out += f.terms()[i].name;
        }
        out += ')';
      }
      return;
    }
    case Connective::Bottom:
      out += "bot";
      return;
    case Connective::Delta:
      out += "D ";
      print_operand(f.body(), kPrefix, out);
      return;
    case Connective::Forall:
    case Connective::Exists:
      out += f.is(Connective::Forall) ? "forall " : "exists ";
      out += f.variable();
      out += ". ";
      print(f.body(), out);
      return;
    case Connective::And:
      if (is_iff(f)) {
        print_binary(f.lhs().lhs(), " <-> ", f.lhs().rhs(), kIff, kIff + 1, out);
      } else {
        print_binary(f.lhs(), " & ", f.rhs(), kAnd, kAnd + 1, out);
      }
      return;
    case Connective::Or:
      print_binary(f.lhs(), " | ", f.rhs(), kOr, kOr + 1, out);
      return;
    case Connective::Implies:
      if (is_top(f)) {
        out += "top";
      } else if (is_tilde(f)) {
        out += '~';
        print_operand(f.lhs().body(), kPrefix, out);
      } else if (is_negation(f)) {
        out += '!';
        print_operand(f.lhs(), kPrefix, out);
      } else {
        print_binary(f.lhs(), " -> ", f.rhs(), kImplies + 1, kImplies, out);
      }
      return;
  }
}

}  // namespace

std::string to_string(const Formula& formula) {
  std::string out;
  print(formula, out);
  return out;
}

std::ostream& operator<<(std::ostream& out, const Formula& formula) {
  return out << to_string(formula);
}

// ---------------------------------------------------------------------------
// Theory

Theory::Theory(std::initializer_list<Formula> formulas) {
  for (const auto& f : formulas) add(f);
}

Theory::Theory(const std::vector<Formula>& formulas) {
  for (const auto& f : formulas) add(f);
}

void Theory::add(const Formula& formula) {
  if (!is_closed(formula)) {
    throw SymbolError("theory member has free variables: " + to_string(formula));
  }
  if (!contains(formula)) formulas_.push_back(formula);
}

Theory Theory::with(const Formula& formula) const {
  Theory out = *this;
  out.add(formula);
  return out;
}

bool Theory::contains(const Formula& formula) const {
  return std::find(formulas_.begin(), formulas_.end(), formula) != formulas_.end();
}

}  // namespace goedel
