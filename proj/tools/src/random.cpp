#include "goedel/cli/random.hpp"

#include <map>

namespace goedel::cli {

Formula random_formula(Random& rng, const std::vector<std::string>& atoms, std::size_t max_depth,
                       bool delta) {
  // Leaves get likelier as depth runs out so sizes stay moderate.
  if (max_depth == 0 || rng.chance(1, max_depth + 1)) {
    if (atoms.empty() || rng.chance(1, 8)) return Formula::bottom();
    return Formula::atom(rng.pick(atoms));
  }
  const std::size_t d = max_depth - 1;
  switch (rng.below(delta ? 7 : 5)) {
    case 0:
      return Formula::conj(random_formula(rng, atoms, d, delta), random_formula(rng, atoms, d, delta));
    case 1:
      return Formula::disj(random_formula(rng, atoms, d, delta), random_formula(rng, atoms, d, delta));
    case 2:
    case 3:
      return Formula::implies(random_formula(rng, atoms, d, delta),
                              random_formula(rng, atoms, d, delta));
    case 4:
      return Formula::negation(random_formula(rng, atoms, d, delta));
    case 5:
      return Formula::delta(random_formula(rng, atoms, d, delta));
    default:
      return Formula::tilde(random_formula(rng, atoms, d, delta));
  }
}

Theory random_theory(Random& rng, const std::vector<std::string>& atoms, std::size_t max_depth,
                     std::size_t min_size, std::size_t max_size, bool delta) {
  Theory t;
  const std::size_t n = min_size + rng.below(max_size - min_size + 1);
  for (std::size_t i = 0; i < n; ++i) t.add(random_formula(rng, atoms, max_depth, delta));
  return t;
}

TruthValue random_value(Random& rng, std::int64_t max_den) {
  const auto den = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(max_den)));
  const auto num = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den + 1)));
  return TruthValue(num, den);
}

Valuation random_assignment(Random& rng, const std::vector<std::string>& atoms,
                            std::int64_t max_den) {
  std::map<std::string, TruthValue> values;
  for (const auto& a : atoms) values[a] = random_value(rng, max_den);
  return Valuation::propositional(values);
}

namespace {

Term random_term(Random& rng, const FoVocabulary& vocab) {
  const std::size_t n = vocab.constants.size() + vocab.variables.size();
  const std::size_t i = rng.below(n);
  if (i < vocab.constants.size()) return Term::constant(vocab.constants[i]);
  return Term::variable(vocab.variables[i - vocab.constants.size()]);
}

Formula fo_formula(Random& rng, FoVocabulary& vocab, std::size_t max_depth,
                   const std::vector<std::string>& binders, std::size_t next_binder) {
  const bool can_bind = next_binder < binders.size();
  if (max_depth == 0 || rng.chance(1, max_depth + 1)) {
    if (rng.chance(1, 10) || (vocab.constants.empty() && vocab.variables.empty()))
      return Formula::bottom();
    const auto& [name, arity] = rng.pick(vocab.relations);
    std::vector<Term> terms;
    for (std::size_t i = 0; i < arity; ++i) terms.push_back(random_term(rng, vocab));
    return Formula::atom(name, std::move(terms));
  }
  const std::size_t d = max_depth - 1;
  auto sub = [&] { return fo_formula(rng, vocab, d, binders, next_binder); };
  switch (rng.below(can_bind ? 9 : 7)) {
    case 0:
      return Formula::conj(sub(), sub());
    case 1:
      return Formula::disj(sub(), sub());
    case 2:
    case 3:
      return Formula::implies(sub(), sub());
    case 4:
      return Formula::negation(sub());
    case 5:
      return Formula::delta(sub());
    case 6:
      return Formula::tilde(sub());
    default: {
      const std::string& var = binders[next_binder];
      vocab.variables.push_back(var);
      Formula body = fo_formula(rng, vocab, d, binders, next_binder + 1);
      vocab.variables.pop_back();
      return rng.chance(1, 2) ? Formula::forall(var, body) : Formula::exists(var, body);
    }
  }
}

}  // namespace

Formula random_fo_formula(Random& rng, const FoVocabulary& vocab, std::size_t max_depth,
                          const std::vector<std::string>& binders) {
  FoVocabulary scope = vocab;
  return fo_formula(rng, scope, max_depth, binders, 0);
}

}  // namespace goedel::cli
