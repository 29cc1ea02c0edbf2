#include <gtest/gtest.h>

#include "goedel/cli/random.hpp"
#include "goedel/decision.hpp"
#include "goedel/errors.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"
#include "oracles.hpp"

using namespace goedel;

namespace {

Formula F(const char* text) { return parse_formula(text); }

bool witness_checks(const Theory& t, const Formula& f, const EntailmentVerdict& v) {
  return v.witness && models(*v.witness, t) && !evaluate(*v.witness, f).is_one();
}

}  // namespace

TEST(Assignments, CountsAndOrder) {
  EXPECT_EQ(enumerate_assignments(0).size(), 1u);
  const auto one = enumerate_assignments(1);
  ASSERT_EQ(one.size(), 3u);
  EXPECT_EQ(one[1], std::vector<std::uint8_t>{1});
  const auto two = enumerate_assignments(2);
  ASSERT_EQ(two.size(), 16u);
  // The first atom varies slowest.
  EXPECT_EQ(two[1], (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(two[4], (std::vector<std::uint8_t>{1, 0}));
  const CanonicalChain c{2};
  EXPECT_EQ(c.values(), (std::vector<TruthValue>{TruthValue(0, 1), TruthValue(1, 3), TruthValue(2, 3),
                                                 TruthValue(1, 1)}));
}

TEST(Tautology, Examples) {
  EXPECT_TRUE(is_tautology(F("D p | ~p")));
  EXPECT_TRUE(is_tautology(F("D p -> p")));
  const auto v = check_tautology(F("p | !p"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->get("p", {}), TruthValue(1, 2));
  EXPECT_FALSE(v.bounded);
  EXPECT_THROW(is_tautology(F("forall x. R(x)")), FragmentError);
}

TEST(OneEntails, Examples) {
  EXPECT_TRUE(one_entails({F("p -> q"), F("p")}, F("q")).holds);
  const auto v = one_entails({F("!!p")}, F("p"));
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->get("p", {}), TruthValue(1, 2));
  EXPECT_TRUE(one_entails({F("p")}, F("D p")).holds);
  EXPECT_FALSE(one_entails({}, F("p")).holds);
  EXPECT_TRUE(one_entails({F("bot")}, F("p")).holds);
}

TEST(OneEntails, RandomFormulasEntailTheirDelta) {
  cli::Random rng(5);
  for (int i = 0; i < 500; ++i) {
    const Formula f = cli::random_formula(rng, {"p", "q", "r"}, 4);
    EXPECT_TRUE(one_entails({f}, Formula::delta(f)).holds) << to_string(f);
  }
}

TEST(OneEntails, VerdictsAgreeWithFinerGrid) {
  // Reference: all assignments into the 8-element chain {0, 1/7, ..., 1},
  // which is more than enough values for three atoms.
  cli::Random rng(9);
  const std::vector<std::string> atoms = {"p", "q", "r"};
  for (int i = 0; i < 300; ++i) {
    const Theory t = cli::random_theory(rng, atoms, 3, 0, 2);
    const Formula f = cli::random_formula(rng, atoms, 3);
    const EntailmentVerdict v = one_entails(t, f);
    bool reference = true;
    for (int a = 0; a <= 7 && reference; ++a)
      for (int b = 0; b <= 7 && reference; ++b)
        for (int c = 0; c <= 7 && reference; ++c) {
          std::map<std::string, oracle::Rational> m{
              {"p", oracle::Rational(a, 7)}, {"q", oracle::Rational(b, 7)}, {"r", oracle::Rational(c, 7)}};
          bool premises = true;
          for (const auto& g : t) premises = premises && oracle::eval(g, m) == oracle::Rational(1);
          if (premises && oracle::eval(f, m) != oracle::Rational(1)) reference = false;
        }
    EXPECT_EQ(v.holds, reference) << to_string(f);
    if (!v.holds) EXPECT_TRUE(witness_checks(t, f, v));
  }
}

TEST(Satisfiable, Basics) {
  EXPECT_TRUE(is_satisfiable({F("p"), F("!!q")}));
  EXPECT_FALSE(is_satisfiable({F("p"), F("~p")}));
  EXPECT_FALSE(is_satisfiable({F("bot")}));
  EXPECT_TRUE(is_satisfiable({}));
}

TEST(BoundedSearch, Examples) {
  const Signature sig = Signature::parse("rel R/1\nconst c\n");
  const auto forall = fo_check_bounded({parse_formula("forall x. R(x)", sig)}, parse_formula("R(c)", sig));
  EXPECT_TRUE(forall.holds);
  EXPECT_TRUE(forall.bounded);
  EXPECT_TRUE(fo_check_bounded({parse_formula("~forall x. R(x)", sig)},
                               parse_formula("exists x. ~R(x)", sig))
                  .holds);
  const Theory t{parse_formula("exists x. R(x)", sig)};
  const Formula f = parse_formula("forall x. R(x)", sig);
  const auto v = fo_check_bounded(t, f);
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.bounded);
  EXPECT_EQ(v.witness->size(), 2u);
  EXPECT_TRUE(witness_checks(t, f, v));
}

TEST(BoundedSearch, BudgetAndPreconditions) {
  const Signature sig = Signature::parse("rel S/2\n");
  BoundedSearchOptions o;
  o.budget = 100;
  EXPECT_THROW(fo_check_bounded({}, parse_formula("forall x. S(x, x)", sig), o), BudgetExceeded);
  BoundedSearchOptions bad;
  bad.grid = {TruthValue(1, 2), TruthValue::one()};
  EXPECT_THROW(fo_check_bounded({}, parse_formula("forall x. S(x, x)", sig), bad), PreconditionError);
  EXPECT_THROW(fo_check_bounded({}, parse_formula("S(x, x)", sig)), PreconditionError);
}

TEST(BoundedSearch, SizeGridsOverrideDefault) {
  const Signature sig = Signature::parse("rel R/1\nrel S/2\nconst c\n");
  BoundedSearchOptions o;
  o.size_grids[3] = {TruthValue::zero(), TruthValue(1, 2), TruthValue::one()};
  std::uint64_t visited = sweep_bounded({parse_formula("forall x. (R(x) -> S(x, c))", sig)}, o,
                                        [](auto, auto, const auto&) { return true; });
  // |M|=1: 4^2; |M|=2: 8^6; |M|=3: 3^12 (c fixed up to renaming).
  EXPECT_EQ(visited, 16u + 262144u + 531441u);
}

TEST(Completeness, Examples) {
  Signature sig;
  sig.add_relation("p", 0);
  sig.add_relation("q", 0);
  const auto universe = enumerate_closed_formulas(sig, 2, true);

  const auto v = classify_completeness(
      Valuation::propositional({{"p", TruthValue(1, 2)}, {"q", TruthValue::one()}}), universe);
  EXPECT_TRUE(v.linearly_complete && v.disjunction_property && v.tilde_complete && v.maximally_satisfiable);

  const auto disj = classify_completeness(Theory{F("p | q")}, universe);
  EXPECT_FALSE(disj.linearly_complete || disj.disjunction_property || disj.tilde_complete ||
               disj.maximally_satisfiable);
  EXPECT_FALSE(disj.violations.empty());

  const auto bot = classify_completeness(Theory{F("bot")}, universe);
  EXPECT_TRUE(bot.agree());
  EXPECT_TRUE(bot.linearly_complete);
}
