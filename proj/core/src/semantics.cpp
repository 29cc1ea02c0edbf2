#include "goedel/semantics.hpp"

#include <vector>

#include "goedel/errors.hpp"

namespace goedel {

namespace {

class Evaluator {
 public:
  Evaluator(const Valuation& v, const Environment& env) : v_(v), env_(env) {}

  TruthValue eval(const Formula& f) {
    switch (f.kind()) {
      case Connective::Bottom:
        return TruthValue::zero();
      case Connective::Atom:
        return atom(f);
      case Connective::And:
        return godel_and(eval(f.lhs()), eval(f.rhs()));
      case Connective::Or:
        return godel_or(eval(f.lhs()), eval(f.rhs()));
      case Connective::Implies:
        return godel_implies(eval(f.lhs()), eval(f.rhs()));
      case Connective::Delta:
        return godel_delta(eval(f.body()));
      case Connective::Forall:
      case Connective::Exists:
        return quantifier(f);
    }
    throw InvariantViolation("unknown connective");
  }

 private:
  std::size_t lookup(const Term& t) const {
    if (t.is_constant()) {
      auto c = v_.constant(t.name);
      if (!c) throw EvaluationError("constant '" + t.name + "' is not interpreted");
      return *c;
    }
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    auto it = env_.find(t.name);
    if (it == env_.end()) throw EvaluationError("variable '" + t.name + "' is unbound");
    return it->second;
  }

  TruthValue atom(const Formula& f) {
    args_.clear();
    for (const auto& t : f.terms()) args_.push_back(lookup(t));
    const auto& table = v_.table(f.relation());
    if (table.arity != f.terms().size()) {
      throw EvaluationError("relation '" + f.relation() + "' interpreted with a different arity");
    }
    return v_.get(f.relation(), args_);
  }

  TruthValue quantifier(const Formula& f) {
    bool universal = f.is(Connective::Forall);
    TruthValue acc = universal ? TruthValue::one() : TruthValue::zero();
    bound_.emplace_back(f.variable(), 0);
    for (std::size_t e = 0; e < v_.size(); ++e) {
      bound_.back().second = e;
      TruthValue x = eval(f.body());
      acc = universal ? godel_and(acc, x) : godel_or(acc, x);
      if (universal ? acc.is_zero() : acc.is_one()) break;
    }
    bound_.pop_back();
    return acc;
  }

  const Valuation& v_;
  const Environment& env_;
  std::vector<std::pair<std::string, std::size_t>> bound_;
  std::vector<std::size_t> args_;
};

}  // namespace

TruthValue evaluate(const Valuation& v, const Formula& formula, const Environment& env) {
  return Evaluator(v, env).eval(formula);
}

bool models(const Valuation& v, const Theory& theory) {
  for (const auto& f : theory) {
    if (!evaluate(v, f).is_one()) return false;
  }
  return true;
}

}  // namespace goedel
