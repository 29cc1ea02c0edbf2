#include <gtest/gtest.h>

#include <set>
#include <unordered_set>

#include "goedel/cli/random.hpp"
#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"
#include "oracles.hpp"

using namespace goedel;

namespace {

Formula P(const char* name) { return Formula::atom(name); }

Signature props(std::initializer_list<const char*> names) {
  Signature sig;
  for (const char* n : names) sig.add_relation(n, 0);
  return sig;
}

}  // namespace

TEST(Parser, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_formula("p & q | r"), Formula::disj(Formula::conj(P("p"), P("q")), P("r")));
  EXPECT_EQ(parse_formula("p -> q -> r"),
            Formula::implies(P("p"), Formula::implies(P("q"), P("r"))));
  EXPECT_EQ(parse_formula("p | q -> r"), Formula::implies(Formula::disj(P("p"), P("q")), P("r")));
  EXPECT_EQ(parse_formula("p -> q <-> r"),
            Formula::iff(Formula::implies(P("p"), P("q")), P("r")));
  EXPECT_EQ(parse_formula("D p & q"), Formula::conj(Formula::delta(P("p")), P("q")));
  EXPECT_EQ(parse_formula("!(p & q)"), Formula::negation(Formula::conj(P("p"), P("q"))));
}

TEST(Parser, DerivedFormsExpand) {
  EXPECT_EQ(parse_formula("!p"), Formula::implies(P("p"), Formula::bottom()));
  EXPECT_EQ(parse_formula("top"), Formula::implies(Formula::bottom(), Formula::bottom()));
  EXPECT_EQ(parse_formula("~p"), Formula::implies(Formula::delta(P("p")), Formula::bottom()));
  EXPECT_EQ(to_string(parse_formula("D p | ~p")), "D p | ~p");
  EXPECT_EQ(to_string(Formula::top()), "top");
}

TEST(Parser, QuantifiersAndTerms) {
  const Signature sig = Signature::parse("rel R/1\nrel S/2\nconst c\n");
  const Formula f = parse_formula("forall x. exists y. S(x, y) -> R(c)", sig);
  EXPECT_TRUE(f.is(Connective::Forall));
  EXPECT_TRUE(is_closed(f));
  EXPECT_EQ(constants_of(f), std::set<std::string>{"c"});
  const Formula open = parse_formula("R(x)", sig);
  EXPECT_EQ(free_variables(open), std::set<std::string>{"x"});
  EXPECT_FALSE(is_closed(open));
}

TEST(Parser, Errors) {
  try {
    parse_formula("p & ");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_formula("(p"), ParseError);
  const Signature sig = Signature::parse("rel R/1\nconst c\n");
  EXPECT_THROW(parse_formula("R(c, c)", sig), SymbolError);
  EXPECT_THROW(parse_formula("Q", sig), SymbolError);
  EXPECT_THROW(parse_formula("R(c) & R"), SymbolError);
}

TEST(Parser, TheoryFiles) {
  const Theory t = parse_theory("# premises\np -> q\n\np   # trailing\n");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.formulas()[1], P("p"));
}

TEST(Printer, RoundTripsRandomFormulas) {
  cli::Random rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = cli::random_formula(rng, {"p", "q", "r"}, 5);
    EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
  }
  const cli::FoVocabulary vocab{{{"R", 1}, {"S", 2}}, {"c", "d"}, {}};
  const Signature sig = Signature::parse("rel R/1\nrel S/2\nconst c\nconst d\n");
  for (int i = 0; i < 2000; ++i) {
    const Formula f = cli::random_fo_formula(rng, vocab, 4);
    EXPECT_EQ(parse_formula(to_string(f), sig), f) << to_string(f);
  }
}

TEST(Structure, LanguageAndFragments) {
  const Formula f = parse_formula("R(c) & p -> D q");
  const Signature l = language_of(f);
  EXPECT_EQ(l.arity("R"), 1u);
  EXPECT_EQ(l.arity("p"), 0u);
  EXPECT_TRUE(l.has_constant("c"));
  EXPECT_FALSE(is_g_formula(f));
  EXPECT_TRUE(is_g_formula(parse_formula("!p | q")));
  EXPECT_FALSE(is_g_formula(parse_formula("~p")));
  EXPECT_TRUE(is_propositional(parse_formula("p -> q")));
  EXPECT_FALSE(is_propositional(f));
  EXPECT_EQ(propositional_atoms(parse_formula("r & (p | r)")), (std::vector<std::string>{"p", "r"}));
}

TEST(Structure, SubstitutionRespectsBinding) {
  const Signature sig = Signature::parse("rel R/1\nrel S/2\nconst c\n");
  const Formula f = parse_formula("S(x, x) & forall x. R(x)", sig);
  EXPECT_EQ(substitute(f, "x", "c"), parse_formula("S(c, c) & forall x. R(x)", sig));
  const Formula g = parse_formula("R(c) & exists y. S(y, c)", sig);
  const Formula abstracted = abstract_constant(g, "c", "v0");
  EXPECT_EQ(free_variables(abstracted), std::set<std::string>{"v0"});
  EXPECT_EQ(substitute(abstracted, "v0", "c"), g);
}

TEST(Structure, FreshNames) {
  const Signature sig = Signature::parse("const k0\nrel v0/1\n");
  EXPECT_EQ(fresh_constant(sig), "k1");
  EXPECT_EQ(fresh_constant(sig, {"k1"}), "k2");
  EXPECT_EQ(pool_variable(0, sig), "v0_");
  EXPECT_EQ(pool_variable(1, sig), "v1");
}

TEST(SignatureFile, ParseAndClash) {
  const Signature s = Signature::parse("rel R/2\n# comment\nconst a\n");
  EXPECT_EQ(Signature::parse(s.str()), s);
  EXPECT_THROW(Signature::parse("rel R/1\nconst R\n"), SymbolError);
  EXPECT_THROW(Signature::parse("rel R/1\nrel R/2\n"), SymbolError);
  EXPECT_THROW(Signature::parse("rel bot/0\n"), SymbolError);
}

TEST(Enumeration, DepthZeroFollowsRankOrder) {
  // Atoms rank before ⊥.
  const auto fs = enumerate_closed_formulas(props({"p"}), 0, false);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0], P("p"));
  EXPECT_EQ(fs[1], Formula::bottom());
}

TEST(Enumeration, CountsMatchRecurrence) {
  for (bool delta : {false, true}) {
    for (std::size_t d = 0; d <= 2; ++d) {
      EXPECT_EQ(enumerate_closed_formulas(props({"p"}), d, delta).size(),
                oracle::formula_count(1, d, delta));
      EXPECT_EQ(enumerate_closed_formulas(props({"p", "q"}), d, delta).size(),
                oracle::formula_count(2, d, delta));
    }
  }
  EXPECT_EQ(enumerate_closed_formulas(props({"p", "q"}), 2, true).size(), 3303u);
  EXPECT_EQ(enumerate_closed_formulas(props({"p", "q"}), 2, false).size(), 2703u);
}

TEST(Enumeration, DistinctAndDepthSorted) {
  const auto fs = enumerate_closed_formulas(props({"p", "q"}), 2, true);
  std::unordered_set<Formula> seen(fs.begin(), fs.end());
  EXPECT_EQ(seen.size(), fs.size());
  for (std::size_t i = 1; i < fs.size(); ++i) EXPECT_LE(fs[i - 1].depth(), fs[i].depth());
  EXPECT_THROW(enumerate_closed_formulas(props({"p", "q"}), 3, true, 10'000), BudgetExceeded);
}

TEST(Enumeration, QuantifiersUsePoolVariables) {
  const Signature sig = Signature::parse("rel R/1\n");
  const auto fs = enumerate_closed_formulas(sig, 1, false);
  bool saw_forall = false;
  for (const auto& f : fs) {
    EXPECT_TRUE(is_closed(f)) << to_string(f);
    if (f.is(Connective::Forall)) {
      saw_forall = true;
      EXPECT_EQ(f.variable(), "v0");
    }
  }
  EXPECT_TRUE(saw_forall);
}
