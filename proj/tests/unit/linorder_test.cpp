#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "goedel/cli/random.hpp"
#include "goedel/errors.hpp"
#include "goedel/linorder.hpp"
#include "oracles.hpp"

using namespace goedel;

namespace {

BoundedChain chain(std::vector<std::string> ids) { return BoundedChain(std::move(ids)); }

}  // namespace

TEST(BoundedChain, Basics) {
  const auto c = chain({"0", "a", "1"});
  EXPECT_EQ(c.rank("a"), 1u);
  EXPECT_FALSE(c.contains("b"));
  EXPECT_EQ(BoundedChain::from_json(c.to_json()), c);
  EXPECT_THROW(chain({"0"}), PreconditionError);
  EXPECT_THROW(chain({"0", "0"}), PreconditionError);
}

TEST(LinHom, Validation) {
  const auto b0 = chain({"0", "1"}), b1 = chain({"0", "a", "1"});
  EXPECT_TRUE(validate_lin_hom(LinHom::from_map(b0, b1, {{"0", "0"}, {"1", "1"}})));
  EXPECT_FALSE(validate_lin_hom(LinHom::from_map(b0, b1, {{"0", "a"}, {"1", "1"}})));
  const auto b2 = chain({"0", "x", "y", "1"});
  EXPECT_FALSE(validate_lin_hom(LinHom::from_map(b2, b2, {{"0", "0"}, {"x", "y"}, {"y", "x"}, {"1", "1"}})));
  EXPECT_FALSE(validate_lin_hom(LinHom::from_map(b2, b2, {{"0", "0"}, {"x", "x"}, {"y", "x"}, {"1", "1"}})));
  EXPECT_THROW(LinHom::from_map(b0, b1, {{"0", "0"}}), PreconditionError);
  EXPECT_THROW(LinHom::from_map(b0, b1, {{"0", "0"}, {"1", "z"}}), PreconditionError);
  const LinHom id = LinHom::identity(b2);
  EXPECT_TRUE(validate_lin_hom(id));
  EXPECT_EQ(LinHom::from_json(id.to_json()).image, id.image);
}

TEST(LinearExtension, TieBreakAndCycles) {
  PartialOrder p{{"c", "a", "b"}, {{true, false, false}, {false, true, false}, {false, false, true}}};
  const auto lex = linear_extension(p, [](const std::string& x, const std::string& y) { return x < y; });
  EXPECT_EQ(lex.elements(), (std::vector<std::string>{"a", "b", "c"}));
  p.leq[0][1] = true;  // c ⊑ a
  const auto forced = linear_extension(p, [](const std::string& x, const std::string& y) { return x < y; });
  EXPECT_EQ(forced.elements(), (std::vector<std::string>{"b", "c", "a"}));
  p.leq[1][0] = true;  // and a ⊑ c
  EXPECT_FALSE(p.check().empty());
  EXPECT_THROW(linear_extension(p, [](const std::string& x, const std::string& y) { return x < y; }),
               PreconditionError);
}

TEST(Amalgamate, TrivialBase) {
  const auto b0 = chain({"0", "1"}), b1 = chain({"0", "a", "1"}), b2 = chain({"0", "b", "1"});
  const auto f1 = LinHom::from_map(b0, b1, {{"0", "0"}, {"1", "1"}});
  const auto f2 = LinHom::from_map(b0, b2, {{"0", "0"}, {"1", "1"}});
  const AmalgamResult r = amalgamate(b0, b1, b2, f1, f2);
  // B1 elements first on ties.
  EXPECT_EQ(r.chain.elements(), (std::vector<std::string>{"0", "a", "b", "1"}));
  EXPECT_TRUE(validate_lin_hom(r.g1));
  EXPECT_TRUE(validate_lin_hom(r.g2));
  EXPECT_TRUE(r.relation.check().empty());
  EXPECT_NE(r.to_dot().find("digraph"), std::string::npos);
}

TEST(Amalgamate, MixedCasesGoThroughBase) {
  // B0 = 0 < m < 1. In B1, a < m; in B2, m < b. So a must precede b, and
  // in the other direction c (above m in B1) must follow d (below m in B2).
  const auto b0 = chain({"0", "m", "1"});
  const auto b1 = chain({"0", "a", "M1", "c", "1"});
  const auto b2 = chain({"0", "d", "M2", "b", "1"});
  const auto f1 = LinHom::from_map(b0, b1, {{"0", "0"}, {"m", "M1"}, {"1", "1"}});
  const auto f2 = LinHom::from_map(b0, b2, {{"0", "0"}, {"m", "M2"}, {"1", "1"}});
  const AmalgamResult r = amalgamate(b0, b1, b2, f1, f2);
  EXPECT_LT(*r.chain.rank("a"), *r.chain.rank("b"));
  EXPECT_LT(*r.chain.rank("d"), *r.chain.rank("c"));
  EXPECT_EQ(r.chain.elements(), (std::vector<std::string>{"0", "a", "d", "m", "c", "b", "1"}));
}

TEST(Amalgamate, IdClashesArePrefixed) {
  const auto b0 = chain({"0", "1"}), b1 = chain({"0", "x", "1"}), b2 = chain({"0", "x", "1"});
  const auto f1 = LinHom::from_map(b0, b1, {{"0", "0"}, {"1", "1"}});
  const auto f2 = LinHom::from_map(b0, b2, {{"0", "0"}, {"1", "1"}});
  const AmalgamResult r = amalgamate(b0, b1, b2, f1, f2);
  EXPECT_EQ(r.chain.size(), 4u);
  EXPECT_NE(r.g1.apply("x"), r.g2.apply("x"));
}

TEST(Amalgamate, RejectsBadMaps) {
  const auto b0 = chain({"0", "1"}), b1 = chain({"0", "a", "1"});
  const auto bad = LinHom::from_map(b0, b1, {{"0", "a"}, {"1", "1"}});
  const auto good = LinHom::from_map(b0, b1, {{"0", "0"}, {"1", "1"}});
  EXPECT_THROW(amalgamate(b0, b1, b1, bad, good), PreconditionError);
}

TEST(Amalgamate, IdentityBaseIsPreserved) {
  const auto b = chain({"0", "u", "v", "1"});
  const auto id = LinHom::identity(b);
  const AmalgamResult r = amalgamate(b, b, b, id, id);
  EXPECT_EQ(r.chain.elements(), b.elements());
}

TEST(Amalgamate, RandomTriplesAgainstOracle) {
  cli::Random rng(17);
  auto make = [&](const std::string& prefix, std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    return BoundedChain(ids);
  };
  auto hom = [&](const BoundedChain& s, const BoundedChain& t) {
    std::vector<std::size_t> interior;
    for (std::size_t r = 1; r + 1 < t.size(); ++r) interior.push_back(r);
    for (std::size_t i = interior.size(); i > 1; --i) std::swap(interior[i - 1], interior[rng.below(i)]);
    interior.resize(s.size() - 2);
    std::sort(interior.begin(), interior.end());
    std::map<std::string, std::string> m{{s.bottom(), t.bottom()}, {s.top(), t.top()}};
    for (std::size_t r = 1; r + 1 < s.size(); ++r) m[s.at(r)] = t.at(interior[r - 1]);
    return LinHom::from_map(s, t, m);
  };
  for (int n = 0; n < 200; ++n) {
    const std::size_t s0 = 2 + rng.below(4);
    const auto b0 = make("o", s0), b1 = make("a", s0 + rng.below(3)), b2 = make("b", s0 + rng.below(3));
    const auto f1 = hom(b0, b1), f2 = hom(b0, b2);
    const AmalgamResult r = amalgamate(b0, b1, b2, f1, f2);
    std::map<std::size_t, std::string> by_rank;
    for (std::size_t i = 0; i < b1.size(); ++i) by_rank[r.g1.image[i]] = "1:" + b1.at(i);
    std::set<std::size_t> glued(f2.image.begin(), f2.image.end());
    for (std::size_t i = 0; i < b2.size(); ++i)
      if (!glued.contains(i)) by_rank[r.g2.image[i]] = "2:" + b2.at(i);
    std::vector<std::string> produced;
    for (const auto& [rank, key] : by_rank) produced.push_back(key);
    const auto orders = oracle::amalgam_orders(f1, f2);
    EXPECT_NE(std::find(orders.begin(), orders.end(), produced), orders.end());
  }
}

TEST(Embed, UniformSpacing) {
  const auto h = embed_into_unit(chain({"0", "a", "b", "c", "1"}));
  EXPECT_EQ(h, (std::vector<TruthValue>{TruthValue(0, 1), TruthValue(1, 4), TruthValue(1, 2),
                                        TruthValue(3, 4), TruthValue(1, 1)}));
  EXPECT_EQ(embed_into_unit(chain({"lo", "hi"})), (std::vector<TruthValue>{TruthValue::zero(), TruthValue::one()}));
}

TEST(Embed, ComposesWithHomomorphisms) {
  const auto b0 = chain({"0", "x", "1"}), b1 = chain({"0", "a", "x1", "b", "1"});
  const auto f = LinHom::from_map(b0, b1, {{"0", "0"}, {"x", "x1"}, {"1", "1"}});
  const auto h = embed_into_unit(b1);
  for (std::size_t i = 0; i + 1 < b0.size(); ++i) EXPECT_LT(h[f.image[i]], h[f.image[i + 1]]);
}
