#include <gtest/gtest.h>

#include "goedel/errors.hpp"
#include "goedel/lindenbaum.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"

using namespace goedel;

namespace {

Formula F(const char* text) { return parse_formula(text); }

const Valuation& half_one() {
  static const Valuation v =
      Valuation::propositional({{"p", TruthValue(1, 2)}, {"q", TruthValue::one()}});
  return v;
}

}  // namespace

TEST(BuildChain, HalfAndOne) {
  const LindChain c = build_chain(half_one(), {F("bot"), F("p"), F("q"), F("p -> q"), F("q -> p")}, false);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.classes()[0].value, TruthValue::zero());
  EXPECT_EQ(c.classes()[1].value, TruthValue(1, 2));
  EXPECT_EQ(c.classes()[1].members, (std::vector<Formula>{F("p"), F("q -> p")}));
  EXPECT_EQ(c.classes()[2].members.front(), F("q"));
  EXPECT_EQ(c.class_of(F("p -> q")), 2u);
  // ⊤ is adjoined to the top class.
  EXPECT_EQ(c.class_of(F("top")), 2u);
}

TEST(BuildChain, EndpointsAndIdempotence) {
  const LindChain ends = build_chain(half_one(), {F("top"), F("bot")}, false);
  EXPECT_EQ(ends.size(), 2u);
  EXPECT_EQ(ends.class_of(F("bot")), 0u);
  const LindChain same = build_chain(half_one(), {F("p"), F("p & p"), F("p | p")}, false);
  EXPECT_EQ(same.size(), 3u);
  EXPECT_EQ(same.classes()[1].members.size(), 3u);
}

TEST(BuildChain, Errors) {
  EXPECT_THROW(build_chain(half_one(), {F("D p")}, true), FragmentError);
  Formula open = Formula::atom("R", {Term::variable("x")});
  Valuation v({"a"});
  v.define_relation("R", 1);
  EXPECT_THROW(build_chain(v, {open}, false), PreconditionError);
}

TEST(ClassOp, Examples) {
  const LindChain c = build_chain(half_one(), {F("p"), F("q")}, false);
  const auto p = *c.class_of(F("p")), q = *c.class_of(F("q"));
  EXPECT_EQ(class_op(c, ClassOp::And, p, q), p);
  EXPECT_EQ(class_op(c, ClassOp::Implies, p, q), c.top());
  EXPECT_EQ(class_op(c, ClassOp::Delta, p), c.bottom());
  EXPECT_THROW(class_op(c, ClassOp::And, 9, 0), PreconditionError);
}

TEST(ClassOp, DeltaRejectedOnGChains) {
  const LindChain c = build_chain(half_one(), {F("p")}, true);
  EXPECT_THROW(class_op(c, ClassOp::Delta, *c.class_of(F("p"))), PreconditionError);
  EXPECT_EQ(class_op(c, ClassOp::Or, *c.class_of(F("p")), c.bottom()), *c.class_of(F("p")));
}

TEST(ClassOp, WellDefinedAndOrderAgrees) {
  // Every representative of a class gives the same result class, and the
  // chain order matches v(θ → χ) = 1.
  const Valuation v = Valuation::propositional({{"p", TruthValue(1, 3)}, {"q", TruthValue(2, 3)}});
  Signature sig;
  sig.add_relation("p", 0);
  sig.add_relation("q", 0);
  const auto formulas = enumerate_closed_formulas(sig, 1, true);
  const LindChain c = build_chain(v, formulas, false);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      for (const auto& a : c.classes()[i].members) {
        for (const auto& b : c.classes()[j].members) {
          EXPECT_EQ(evaluate(v, Formula::implies(a, b)).is_one(), i <= j);
          const auto want = c.class_with_value(evaluate(v, Formula::conj(a, b)));
          ASSERT_TRUE(want);
          EXPECT_EQ(class_op(c, ClassOp::And, i, j), *want);
        }
      }
    }
  }
}

TEST(LindChain, AsBoundedChainAndJson) {
  const LindChain c = build_chain(half_one(), {F("p")}, false);
  const BoundedChain b = c.as_bounded_chain();
  EXPECT_EQ(b.size(), 3u);
  EXPECT_EQ(b.bottom(), "bot");
  EXPECT_EQ(b.at(1), "p");
  const auto j = c.to_json();
  EXPECT_EQ(j["classes"].size(), 3u);
  EXPECT_EQ(j["classes"][1]["value"], "1/2");
}
