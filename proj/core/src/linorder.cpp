#include "goedel/linorder.hpp"

#include <algorithm>
#include <set>

#include "goedel/errors.hpp"

namespace goedel {

BoundedChain::BoundedChain(std::vector<std::string> ascending) : elements_(std::move(ascending)) {
  if (elements_.size() < 2) throw PreconditionError("a bounded chain needs distinct bottom and top");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!ranks_.emplace(elements_[i], i).second) {
      throw PreconditionError("repeated chain element '" + elements_[i] + "'");
    }
  }
}

std::optional<std::size_t> BoundedChain::rank(std::string_view id) const {
  auto it = ranks_.find(id);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json BoundedChain::to_json() const { return {{"elements", elements_}}; }

BoundedChain BoundedChain::from_json(const nlohmann::json& j) {
  try {
    const auto& e = j.is_array() ? j : j.at("elements");
    return BoundedChain(e.get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed chain JSON: ") + e.what(), 0);
  }
}

LinHom LinHom::from_map(const BoundedChain& source, const BoundedChain& target,
                        const std::map<std::string, std::string>& map) {
  LinHom f{source, target, {}};
  for (const auto& id : source.elements()) {
    auto it = map.find(id);
    if (it == map.end()) throw PreconditionError("element '" + id + "' is not mapped");
    auto r = target.rank(it->second);
    if (!r) throw PreconditionError("image '" + it->second + "' is not in the target chain");
    f.image.push_back(*r);
  }
  for (const auto& [from, to] : map) {
    if (!source.contains(from)) throw PreconditionError("map mentions unknown element '" + from + "'");
  }
  return f;
}

LinHom LinHom::identity(const BoundedChain& chain) {
  LinHom f{chain, chain, {}};
  for (std::size_t i = 0; i < chain.size(); ++i) f.image.push_back(i);
  return f;
}

const std::string& LinHom::apply(std::string_view id) const {
  auto r = source.rank(id);
  if (!r) throw PreconditionError("'" + std::string(id) + "' is not in the source chain");
  return target.at(image.at(*r));
}

nlohmann::json LinHom::to_json() const {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t i = 0; i < source.size(); ++i) map[source.at(i)] = target.at(image.at(i));
  return {{"source", source.to_json()}, {"target", target.to_json()}, {"map", map}};
}

LinHom LinHom::from_json(const nlohmann::json& j) {
  try {
    return from_map(BoundedChain::from_json(j.at("source")), BoundedChain::from_json(j.at("target")),
                    j.at("map").get<std::map<std::string, std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed homomorphism JSON: ") + e.what(), 0);
  }
}

bool validate_lin_hom(const LinHom& f) {
  if (f.image.size() != f.source.size()) return false;
  for (auto r : f.image) {
    if (r >= f.target.size()) return false;
  }
  if (f.image.front() != 0 || f.image.back() != f.target.size() - 1) return false;
  for (std::size_t i = 1; i < f.image.size(); ++i) {
    if (f.image[i - 1] >= f.image[i]) return false;
  }
  return true;
}

std::string PartialOrder::check() const {
  const std::size_t n = elements.size();
  if (leq.size() != n) return "relation matrix has the wrong size";
  for (std::size_t i = 0; i < n; ++i) {
    if (leq[i].size() != n) return "relation matrix has the wrong size";
    if (!leq[i][i]) return "not reflexive at " + elements[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) {
        return "not antisymmetric: " + elements[i] + " and " + elements[j];
      }
      if (!leq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (leq[j][k] && !leq[i][k]) {
          return "not transitive: " + elements[i] + ", " + elements[j] + ", " + elements[k];
        }
      }
    }
  }
  return {};
}

BoundedChain linear_extension(const PartialOrder& order, const TieBreak& tie_break) {
  const std::size_t n = order.elements.size();
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && order.leq[j][i]) ++pending[i];
    }
  }
  std::vector<bool> done(n, false);
  std::vector<std::string> out;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || pending[i] != 0) continue;
      if (!pick || tie_break(order.elements[i], order.elements[*pick])) pick = i;
    }
    if (!pick) throw PreconditionError("relation has a cycle; no linear extension exists");
    done[*pick] = true;
    out.push_back(order.elements[*pick]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != *pick && order.leq[*pick][j]) --pending[j];
    }
  }
  return BoundedChain(std::move(out));
}

namespace {

void require_hom(const LinHom& f, const BoundedChain& src, const BoundedChain& dst, const char* name) {
  if (!(f.source == src) || !(f.target == dst)) {
    throw PreconditionError(std::string(name) + " does not go between the given chains");
  }
  if (!validate_lin_hom(f)) throw PreconditionError(std::string(name) + " is not a Lin-homomorphism");
}

std::string fresh_name(const std::string& id, const std::string& prefix,
                       const std::set<std::string>& taken) {
  std::string name = id;
  while (taken.contains(name)) name = prefix + name;
  return name;
}

}  // namespace

AmalgamResult amalgamate(const BoundedChain& b0, const BoundedChain& b1, const BoundedChain& b2,
                         const LinHom& f1, const LinHom& f2) {
  require_hom(f1, b0, b1, "f1");
  require_hom(f2, b0, b2, "f2");

  // Rename so that B0 sits inside both chains and they meet exactly in B0.
  std::vector<std::string> name1(b1.size()), name2(b2.size());
  std::vector<bool> shared1(b1.size(), false), shared2(b2.size(), false);
  for (std::size_t a = 0; a < b0.size(); ++a) {
    name1[f1.image[a]] = b0.at(a);
    shared1[f1.image[a]] = true;
    name2[f2.image[a]] = b0.at(a);
    shared2[f2.image[a]] = true;
  }
  std::set<std::string> taken(b0.elements().begin(), b0.elements().end());
  std::set<std::string> private2;
  for (std::size_t y = 0; y < b2.size(); ++y) {
    if (!shared2[y]) private2.insert(b2.at(y));
  }
  for (std::size_t x = 0; x < b1.size(); ++x) {
    if (shared1[x]) continue;
    std::set<std::string> avoid = taken;
    avoid.insert(private2.begin(), private2.end());
    name1[x] = fresh_name(b1.at(x), "b1:", avoid);
    taken.insert(name1[x]);
  }
  for (std::size_t y = 0; y < b2.size(); ++y) {
    if (shared2[y]) continue;
    name2[y] = fresh_name(b2.at(y), "b2:", taken);
    taken.insert(name2[y]);
  }

  // Identified union: B0 first, then the private elements of B1, then B2.
  std::vector<std::string> ids;
  std::vector<std::optional<std::size_t>> r1, r2;
  for (std::size_t a = 0; a < b0.size(); ++a) {
    ids.push_back(b0.at(a));
    r1.emplace_back(f1.image[a]);
    r2.emplace_back(f2.image[a]);
  }
  for (std::size_t x = 0; x < b1.size(); ++x) {
    if (shared1[x]) continue;
    ids.push_back(name1[x]);
    r1.emplace_back(x);
    r2.emplace_back(std::nullopt);
  }
  for (std::size_t y = 0; y < b2.size(); ++y) {
    if (shared2[y]) continue;
    ids.push_back(name2[y]);
    r1.emplace_back(std::nullopt);
    r2.emplace_back(y);
  }

  const std::size_t n = ids.size();
  PartialOrder rel{ids, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool le = false;
      if (r1[i] && r1[j] && *r1[i] <= *r1[j]) le = true;
      if (r2[i] && r2[j] && *r2[i] <= *r2[j]) le = true;
      if (!le && r1[i] && !r2[i] && r2[j]) {
        // x in B1 \ B2, y in B2: x <=1 α <=2 y for some α in B0.
        for (std::size_t a = 0; a < b0.size() && !le; ++a) {
          le = *r1[i] <= f1.image[a] && f2.image[a] <= *r2[j];
        }
      }
      if (!le && r2[i] && !r1[i] && r1[j]) {
        // x in B2 \ B1, y in B1: x <=2 α <=1 y for some α in B0.
        for (std::size_t a = 0; a < b0.size() && !le; ++a) {
          le = *r2[i] <= f2.image[a] && f1.image[a] <= *r1[j];
        }
      }
      rel.leq[i][j] = le;
    }
  }
  if (auto problem = rel.check(); !problem.empty()) {
    throw InvariantViolation("amalgam relation is not a partial order: " + problem);
  }

  std::set<std::string> in_b1(name1.begin(), name1.end());
  TieBreak tie = [&](const std::string& a, const std::string& b) {
    bool a1 = in_b1.contains(a), b1_ = in_b1.contains(b);
    if (a1 != b1_) return a1;
    return a < b;
  };
  BoundedChain chain = linear_extension(rel, tie);

  LinHom g1{b1, chain, {}}, g2{b2, chain, {}};
  for (std::size_t x = 0; x < b1.size(); ++x) g1.image.push_back(*chain.rank(name1[x]));
  for (std::size_t y = 0; y < b2.size(); ++y) g2.image.push_back(*chain.rank(name2[y]));
  if (!validate_lin_hom(g1) || !validate_lin_hom(g2)) {
    throw InvariantViolation("amalgam inclusions are not Lin-homomorphisms");
  }
  for (std::size_t a = 0; a < b0.size(); ++a) {
    if (g1.image[f1.image[a]] != g2.image[f2.image[a]]) {
      throw InvariantViolation("amalgam square does not commute at '" + b0.at(a) + "'");
    }
  }
  return {std::move(chain), std::move(g1), std::move(g2), std::move(rel)};
}

nlohmann::json AmalgamResult::to_json() const {
  nlohmann::json relation_pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < relation.elements.size(); ++i) {
    for (std::size_t j = 0; j < relation.elements.size(); ++j) {
      if (i != j && relation.leq[i][j]) {
        relation_pairs.push_back({relation.elements[i], relation.elements[j]});
      }
    }
  }
  return {{"chain", chain.to_json()},
          {"g1", g1.to_json()},
          {"g2", g2.to_json()},
          {"relation", relation_pairs}};
}

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string AmalgamResult::to_dot() const {
  std::string out = "digraph amalgam {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& id : chain.elements()) out += "  " + dot_id(id) + ";\n";
  for (std::size_t i = 1; i < chain.size(); ++i) {
    out += "  " + dot_id(chain.at(i - 1)) + " -> " + dot_id(chain.at(i)) + ";\n";
  }
  auto sources = [&](const LinHom& g, const std::string& tag, const char* color) {
    for (std::size_t x = 0; x < g.source.size(); ++x) {
      std::string node = tag + ":" + g.source.at(x);
      out += "  " + dot_id(node) + " [shape=ellipse, color=" + color + "];\n";
      out += "  " + dot_id(node) + " -> " + dot_id(chain.at(g.image[x])) +
             " [style=dashed, color=" + color + "];\n";
    }
  };
  sources(g1, "B1", "blue");
  sources(g2, "B2", "red");
  return out + "}\n";
}

std::vector<TruthValue> embed_into_unit(const BoundedChain& chain) {
  std::vector<TruthValue> out;
  const auto k = static_cast<std::int64_t>(chain.size());
  for (std::int64_t i = 0; i < k; ++i) out.emplace_back(i, k - 1);
  return out;
}

}  // namespace goedel
