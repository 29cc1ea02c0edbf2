#include <gtest/gtest.h>

#include <set>

#include "goedel/cli/random.hpp"
#include "goedel/decision.hpp"
#include "goedel/errors.hpp"
#include "goedel/interpolation.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"
#include "oracles.hpp"

using namespace goedel;

namespace {

Formula F(const char* text) { return parse_formula(text); }

std::set<oracle::Vec> as_set(const CloneTable& table) {
  std::set<oracle::Vec> out;
  for (const auto& v : table.vectors) out.insert(oracle::Vec(v.begin(), v.end()));
  return out;
}

bool atoms_within(const Formula& f, const std::set<std::string>& allowed) {
  for (const auto& a : propositional_atoms(f))
    if (!allowed.contains(a)) return false;
  return true;
}

}  // namespace

TEST(Clone, FrozenSizes) {
  EXPECT_EQ(clone_closure({}, false)->size(), 2u);
  EXPECT_EQ(clone_closure({}, true)->size(), 2u);
  EXPECT_EQ(clone_closure({"p"}, false)->size(), 6u);
  EXPECT_EQ(clone_closure({"p"}, true)->size(), 12u);
  const auto g2 = clone_closure({"p", "q"}, false);
  EXPECT_EQ(g2->size(), 342u);
  EXPECT_TRUE(g2->saturated);
}

TEST(Clone, AgreesWithNaiveFixpoint) {
  EXPECT_EQ(as_set(*clone_closure({"p"}, false)), oracle::naive_clone(1, false));
  EXPECT_EQ(as_set(*clone_closure({"p"}, true)), oracle::naive_clone(1, true));
  EXPECT_EQ(as_set(*clone_closure({"p", "q"}, false)), oracle::naive_clone(2, false));
}

TEST(Clone, DeltaTypeProduct) {
  EXPECT_EQ(oracle::delta_function_count(1), 12u);
  EXPECT_EQ(oracle::delta_function_count(2), 62208u);
  const auto t = clone_closure({"p"}, true);
  for (const auto& v : t->vectors) EXPECT_TRUE(oracle::type_consistent(v, 1));
  const auto g = clone_closure({"p"}, false);
  for (const auto& v : g->vectors) EXPECT_TRUE(t->find(v).has_value());
}

TEST(Clone, WitnessesEvaluateToTheirVectors) {
  const auto t = clone_closure({"p", "q"}, false);
  const auto as = oracle::assignments(2);
  for (std::size_t i = 0; i < t->size(); i += 7) {
    for (std::size_t k = 0; k < as.size(); ++k) {
      const std::map<std::string, oracle::Rational> m{{"p", oracle::Rational(as[k][0], 3)},
                                                      {"q", oracle::Rational(as[k][1], 3)}};
      EXPECT_EQ(oracle::eval(t->witnesses[i], m), oracle::Rational(t->vectors[i][k], 3));
    }
  }
}

TEST(Clone, BudgetCarriesPartialTable) {
  CloneOptions o;
  o.budget = 100;
  try {
    clone_closure({"p", "q"}, true, o);
    FAIL() << "no budget error";
  } catch (const CloneBudgetExceeded& e) {
    EXPECT_FALSE(e.partial().saturated);
    EXPECT_GT(e.partial().size(), 0u);
  }
  CloneOptions few;
  few.max_atoms = 1;
  EXPECT_THROW(clone_closure({"p", "q"}, false, few), PreconditionError);
}

TEST(Separation, Certificates) {
  EXPECT_TRUE(separates(F("p"), {F("p")}, {F("~p")}));
  EXPECT_TRUE(separates(F("p"), {F("p & q")}, {F("!p")}));
  EXPECT_FALSE(separates(F("p"), {F("!!p")}, {F("!p | q")}));
  EXPECT_THROW(separates(F("q"), {F("p")}, {F("~p")}), PreconditionError);
}

TEST(Separation, FindSeparator) {
  const auto s = find_separator({F("p")}, {F("!p")}, true);
  ASSERT_EQ(s.status, SeparationStatus::Separable);
  EXPECT_TRUE(is_g_formula(s.certificate->separator));
  EXPECT_EQ(find_separator({F("p")}, {F("q")}, false).status, SeparationStatus::Inseparable);
  EXPECT_EQ(find_separator({F("!!p")}, {F("~p")}, false).status, SeparationStatus::Inseparable);
  // With Δ a separator of {p} and {~p} exists; it is p itself.
  const auto d = find_separator({F("p")}, {F("~p")}, false);
  ASSERT_EQ(d.status, SeparationStatus::Separable);
  EXPECT_EQ(d.certificate->separator, F("p"));
}

TEST(Interpolation, Examples) {
  const Interpolant i = interpolate(F("p & q"), F("p | r"), false);
  EXPECT_EQ(i.theta, F("p"));
  EXPECT_TRUE(i.phi_entails.holds && i.entails_psi.holds);
  const Interpolant g = interpolate(F("D p & q"), F("p | r"), true);
  EXPECT_TRUE(is_g_formula(g.theta));
  EXPECT_TRUE(one_entails({F("D p & q")}, g.theta).holds);
  EXPECT_TRUE(one_entails({g.theta}, F("p | r")).holds);
  EXPECT_THROW(interpolate(F("!!p"), F("p"), false), PreconditionError);
  // No shared atoms: the interpolant is a constant.
  const Interpolant c = interpolate(F("p & !p"), F("q"), false);
  EXPECT_TRUE(propositional_atoms(c.theta).empty());
  // ~q ⊩ r -> ~q, but no Δ-free formula in q lies between them.
  EXPECT_THROW(interpolate(F("~q"), F("r -> ~q"), true), PreconditionError);
}

TEST(Interpolation, ExistsExactlyWhenEntailed) {
  cli::Random rng(23);
  for (int n = 0; n < 150; ++n) {
    const Formula phi = cli::random_formula(rng, {"p", "q"}, 3);
    const Formula psi = cli::random_formula(rng, {"q", "r"}, 3);
    const bool entails = one_entails({phi}, psi).holds;
    for (bool g_only : {false, true}) {
      if (!entails) {
        EXPECT_THROW(interpolate(phi, psi, g_only), PreconditionError);
        continue;
      }
      if (g_only && !(is_g_formula(phi) && is_g_formula(psi))) {
        // A Δ-free interpolant may not exist; when one is returned it must check out.
        try {
          const Interpolant i = interpolate(phi, psi, true);
          EXPECT_TRUE(is_g_formula(i.theta));
          EXPECT_TRUE(one_entails({i.theta}, psi).holds);
        } catch (const PreconditionError&) {
        }
        continue;
      }
      const Interpolant i = interpolate(phi, psi, g_only);
      EXPECT_TRUE(atoms_within(i.theta, {"q"})) << to_string(i.theta);
      EXPECT_TRUE(one_entails({phi}, i.theta).holds);
      EXPECT_TRUE(one_entails({i.theta}, psi).holds);
      if (g_only) EXPECT_TRUE(is_g_formula(i.theta));
    }
  }
}

TEST(Interpolation, AbstractConstants) {
  const Signature sig = Signature::parse("rel R/1\nconst c\nconst d\nconst e\n");
  const Formula phi = parse_formula("R(c) & R(d)", sig);
  const Formula psi = parse_formula("R(c) | R(e)", sig);
  const auto [a, b] = abstract_constants(phi, psi);
  EXPECT_TRUE(a.is(Connective::Exists));
  EXPECT_TRUE(b.is(Connective::Forall));
  EXPECT_TRUE(is_closed(a) && is_closed(b));
  EXPECT_EQ(constants_of(a), std::set<std::string>{"c"});
  EXPECT_EQ(constants_of(b), std::set<std::string>{"c"});
  const auto [x, y] = abstract_constants(phi, phi);
  EXPECT_EQ(x, phi);
  EXPECT_EQ(y, phi);
}

TEST(Henkin, StepsKeepThePairInseparable) {
  const Theory t{F("!!p")}, u{F("~p")};
  const HenkinTrace h = henkin_extend(t, u, default_stream({"p"}));
  ASSERT_FALSE(h.steps.empty());
  for (const auto& s : h.steps) {
    EXPECT_TRUE(s.added == s.candidate || s.added == Formula::implies(Formula::delta(s.candidate), Formula::bottom()));
    EXPECT_EQ(s.positive, s.added == s.candidate);
    EXPECT_TRUE(s.inseparable_after);
    EXPECT_TRUE((s.side == Side::T ? h.t : h.u).contains(s.added));
  }
  EXPECT_TRUE(h.t.contains(F("!!p")));
  EXPECT_TRUE(h.u.contains(F("~p")));
  EXPECT_EQ(find_separator(h.t, h.u, false).status, SeparationStatus::Inseparable);
  EXPECT_THROW(henkin_extend({F("p")}, {F("~p")}, default_stream({"p"})), PreconditionError);
}

TEST(Countermodel, Examples) {
  const CountermodelResult r = countermodel_synthesize(F("!!p"), F("p"), false);
  EXPECT_TRUE(evaluate(r.valuation, F("!!p")).is_one());
  EXPECT_FALSE(evaluate(r.valuation, F("p")).is_one());
  EXPECT_THROW(countermodel_synthesize(F("p"), F("D p"), false), PreconditionError);
  const auto& t = r.trace;
  for (std::size_t x = 0; x < t.f1.source.size(); ++x)
    EXPECT_EQ(t.amalgam.g1.image[t.f1.image[x]], t.amalgam.g2.image[t.f2.image[x]]);
  EXPECT_EQ(t.h.size(), t.amalgam.chain.size());
}

TEST(Countermodel, RandomNonEntailments) {
  cli::Random rng(31);
  int checked = 0;
  while (checked < 40) {
    const Formula phi = cli::random_formula(rng, {"p", "q"}, 3);
    const Formula psi = cli::random_formula(rng, {"q", "r"}, 3);
    if (one_entails({phi}, psi).holds) continue;
    ++checked;
    for (bool g_only : {false, true}) {
      if (g_only && !(is_g_formula(phi) && is_g_formula(psi))) continue;
      const CountermodelResult r = countermodel_synthesize(phi, psi, g_only);
      EXPECT_TRUE(evaluate(r.valuation, phi).is_one()) << to_string(phi) << " / " << to_string(psi);
      EXPECT_FALSE(evaluate(r.valuation, psi).is_one()) << to_string(phi) << " / " << to_string(psi);
    }
  }
}
