#include "goedel/syntax.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "goedel/errors.hpp"

namespace goedel {

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Connective::Atom:
      for (const auto& t : f.terms()) {
        if (t.is_variable() && !bound.contains(t.name)) out.insert(t.name);
      }
      return;
    case Connective::Bottom:
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case Connective::Delta:
      collect_free(f.body(), bound, out);
      return;
    case Connective::Forall:
    case Connective::Exists: {
      bool fresh = bound.insert(f.variable()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.variable());
      return;
    }
  }
}

template <typename Visit>
void visit_atoms(const Formula& f, Visit&& visit) {
  switch (f.kind()) {
    case Connective::Atom:
      visit(f);
      return;
    case Connective::Bottom:
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      visit_atoms(f.lhs(), visit);
      visit_atoms(f.rhs(), visit);
      return;
    case Connective::Delta:
    case Connective::Forall:
    case Connective::Exists:
      visit_atoms(f.body(), visit);
      return;
  }
}

bool any_node(const Formula& f, Connective kind) {
  if (f.is(kind)) return true;
  switch (f.kind()) {
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return any_node(f.lhs(), kind) || any_node(f.rhs(), kind);
    case Connective::Delta:
    case Connective::Forall:
    case Connective::Exists:
      return any_node(f.body(), kind);
    default:
      return false;
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& formula) {
  std::set<std::string> bound, out;
  collect_free(formula, bound, out);
  return out;
}

namespace {

bool closed_under(const Formula& f, std::vector<const std::string*>& bound) {
  switch (f.kind()) {
    case Connective::Atom:
      for (const auto& t : f.terms()) {
        if (t.is_variable() &&
            std::none_of(bound.begin(), bound.end(), [&](const std::string* b) { return *b == t.name; })) {
          return false;
        }
      }
      return true;
    case Connective::Bottom:
      return true;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return closed_under(f.lhs(), bound) && closed_under(f.rhs(), bound);
    case Connective::Delta:
      return closed_under(f.body(), bound);
    case Connective::Forall:
    case Connective::Exists: {
      bound.push_back(&f.variable());
      bool ok = closed_under(f.body(), bound);
      bound.pop_back();
      return ok;
    }
  }
  return true;
}

}  // namespace

bool is_closed(const Formula& formula) {
  std::vector<const std::string*> bound;
  return closed_under(formula, bound);
}

Signature language_of(const Formula& formula) {
  Signature sig;
  visit_atoms(formula, [&](const Formula& atom) {
    sig.add_relation(atom.relation(), atom.terms().size());
    for (const auto& t : atom.terms()) {
      if (t.is_constant()) sig.add_constant(t.name);
    }
  });
  return sig;
}

Signature language_of(std::span<const Formula> formulas) {
  Signature sig;
  for (const auto& f : formulas) sig = sig.united(language_of(f));
  return sig;
}

Signature language_of(const Theory& theory) { return language_of(theory.formulas()); }

bool is_g_formula(const Formula& formula) { return !any_node(formula, Connective::Delta); }

bool is_propositional(const Formula& formula) {
  if (any_node(formula, Connective::Forall) || any_node(formula, Connective::Exists)) {
    return false;
  }
  bool ok = true;
  visit_atoms(formula, [&](const Formula& atom) { ok = ok && atom.terms().empty(); });
  return ok;
}

std::vector<std::string> propositional_atoms(const Formula& formula) {
  std::set<std::string> names;
  visit_atoms(formula, [&](const Formula& atom) {
    if (atom.terms().empty()) names.insert(atom.relation());
  });
  return {names.begin(), names.end()};
}

std::vector<std::string> propositional_atoms(std::span<const Formula> formulas) {
  std::set<std::string> names;
  for (const auto& f : formulas) {
    visit_atoms(f, [&](const Formula& atom) {
      if (atom.terms().empty()) names.insert(atom.relation());
    });
  }
  return {names.begin(), names.end()};
}

std::set<std::string> constants_of(const Formula& formula) {
  std::set<std::string> out;
  visit_atoms(formula, [&](const Formula& atom) {
    for (const auto& t : atom.terms()) {
      if (t.is_constant()) out.insert(t.name);
    }
  });
  return out;
}

namespace {

Formula rebuild(const Formula& f, const Formula& lhs, const Formula& rhs) {
  switch (f.kind()) {
    case Connective::And:
      return Formula::conj(lhs, rhs);
    case Connective::Or:
      return Formula::disj(lhs, rhs);
    default:
      return Formula::implies(lhs, rhs);
  }
}

template <typename MapTerm>
Formula map_terms(const Formula& f, std::set<std::string>& bound, MapTerm& map) {
  switch (f.kind()) {
    case Connective::Atom: {
      std::vector<Term> terms;
      terms.reserve(f.terms().size());
      for (const auto& t : f.terms()) terms.push_back(map(t, bound));
      return Formula::atom(f.relation(), std::move(terms));
    }
    case Connective::Bottom:
      return f;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      return rebuild(f, map_terms(f.lhs(), bound, map), map_terms(f.rhs(), bound, map));
    case Connective::Delta:
      return Formula::delta(map_terms(f.body(), bound, map));
    case Connective::Forall:
    case Connective::Exists: {
      bool fresh = bound.insert(f.variable()).second;
      Formula body = map_terms(f.body(), bound, map);
      if (fresh) bound.erase(f.variable());
      return f.is(Connective::Forall) ? Formula::forall(f.variable(), std::move(body))
                                      : Formula::exists(f.variable(), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& formula, std::string_view variable,
                   const std::string& constant) {
  auto map = [&](const Term& t, const std::set<std::string>& bound) {
    if (t.is_variable() && t.name == variable && !bound.contains(t.name)) {
      return Term::constant(constant);
    }
    return t;
  };
  std::set<std::string> bound;
  return map_terms(formula, bound, map);
}

Formula abstract_constant(const Formula& formula, std::string_view constant,
                          const std::string& variable) {
  auto map = [&](const Term& t, const std::set<std::string>& bound) {
    if (t.is_constant() && t.name == constant) {
      if (bound.contains(variable)) {
        throw InvariantViolation("abstraction variable '" + variable + "' is captured");
      }
      return Term::variable(variable);
    }
    return t;
  };
  std::set<std::string> bound;
  return map_terms(formula, bound, map);
}

std::string pool_variable(std::size_t index, const Signature& sig) {
  std::string name = "v" + std::to_string(index);
  while (sig.has_constant(name) || sig.has_relation(name)) name += '_';
  return name;
}

std::string fresh_constant(const Signature& sig, const std::set<std::string>& taken) {
  for (std::size_t i = 0;; ++i) {
    std::string name = "k" + std::to_string(i);
    if (!sig.has_constant(name) && !sig.has_relation(name) && !taken.contains(name)) {
      return name;
    }
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class Enumerator {
 public:
  Enumerator(const Signature& sig, bool delta, std::size_t limit)
      : sig_(sig), delta_(delta), limit_(limit) {
    for (const auto& [name, arity] : sig.relations()) {
      if (arity > 0) quantifiers_ = true;
    }
  }

  // Formulas of exact depth d with free variables among v0..v(k-1).
  const std::vector<Formula>& exact(std::size_t d, std::size_t k) {
    auto key = std::make_pair(d, k);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Formula> out = d == 0 ? atoms(k) : compound(d, k);
    return cache_.emplace(key, std::move(out)).first->second;
  }

  std::vector<Formula> up_to(std::size_t d, std::size_t k) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i <= d; ++i) {
      const auto& level = exact(i, k);
      out.insert(out.end(), level.begin(), level.end());
    }
    return out;
  }

 private:
  void charge(std::size_t n) {
    produced_ += n;
    if (produced_ > limit_) {
      throw BudgetExceeded("formula enumeration exceeded limit of " + std::to_string(limit_));
    }
  }

  std::vector<Formula> atoms(std::size_t k) {
    std::vector<Term> terms;
    for (const auto& c : sig_.constants()) terms.push_back(Term::constant(c));
    for (std::size_t i = 0; i < k; ++i) terms.push_back(Term::variable(pool_variable(i, sig_)));

    std::vector<Formula> out;
    for (const auto& [name, arity] : sig_.relations()) {
      if (arity > 0 && terms.empty()) continue;
      std::vector<std::size_t> idx(arity, 0);
      while (true) {
        std::vector<Term> args;
        args.reserve(arity);
        for (auto i : idx) args.push_back(terms[i]);
        out.push_back(Formula::atom(name, std::move(args)));
        std::size_t pos = arity;
        while (pos > 0 && ++idx[pos - 1] == terms.size()) idx[--pos] = 0;
        if (pos == 0) break;
      }
    }
    out.push_back(Formula::bottom());
    charge(out.size());
    return out;
  }

  std::vector<Formula> compound(std::size_t d, std::size_t k) {
    std::vector<Formula> below = up_to(d - 1, k);
    std::vector<Formula> out;
    auto emit = [&](Formula f) {
      charge(1);
      out.push_back(std::move(f));
    };
    auto pairs = [&](auto make) {
      for (const auto& a : below) {
        for (const auto& b : below) {
          if (a.depth() + 1 != d && b.depth() + 1 != d) continue;
          emit(make(a, b));
        }
      }
    };
    pairs([](const Formula& a, const Formula& b) { return Formula::conj(a, b); });
    pairs([](const Formula& a, const Formula& b) { return Formula::disj(a, b); });
    pairs([](const Formula& a, const Formula& b) { return Formula::implies(a, b); });
    if (delta_) {
      for (const auto& a : exact(d - 1, k)) emit(Formula::delta(a));
    }
    if (quantifiers_) {
      std::string var = pool_variable(k, sig_);
      const auto& bodies = exact(d - 1, k + 1);
      for (const auto& b : bodies) emit(Formula::forall(var, b));
      for (const auto& b : bodies) emit(Formula::exists(var, b));
    }
    return out;
  }

  const Signature& sig_;
  bool delta_;
  bool quantifiers_ = false;
  std::size_t limit_;
  std::size_t produced_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Formula>> cache_;
};

}  // namespace

std::vector<Formula> enumerate_closed_formulas(const Signature& sig, std::size_t depth,
                                               bool delta_allowed, std::size_t limit) {
  Enumerator e(sig, delta_allowed, limit);
  auto out = e.up_to(depth, 0);
  if (out.size() > limit) {
    throw BudgetExceeded("formula enumeration exceeded limit of " + std::to_string(limit));
  }
  return out;
}

}  // namespace goedel
