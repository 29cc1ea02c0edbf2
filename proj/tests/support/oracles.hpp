#pragma once

// Reference implementations used to cross-check the library. They favour
// obviousness over speed and share no code with the code under test.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "goedel/formula.hpp"
#include "goedel/linorder.hpp"
#include "goedel/truth_value.hpp"

namespace oracle {

using goedel::Connective;
using goedel::Formula;
using goedel::TruthValue;
using Rational = TruthValue::Rep;

/// Value of a propositional formula straight from the truth tables.
inline Rational eval(const Formula& f, const std::map<std::string, Rational>& v) {
  const Rational one(1), zero(0);
  switch (f.kind()) {
    case Connective::Bottom:
      return zero;
    case Connective::Atom:
      return v.at(f.relation());
    case Connective::And:
      return std::min(eval(f.lhs(), v), eval(f.rhs(), v));
    case Connective::Or:
      return std::max(eval(f.lhs(), v), eval(f.rhs(), v));
    case Connective::Implies: {
      Rational a = eval(f.lhs(), v), b = eval(f.rhs(), v);
      return a <= b ? one : b;
    }
    case Connective::Delta:
      return eval(f.body(), v) == one ? one : zero;
    default:
      throw std::logic_error("oracle::eval is propositional only");
  }
}

/// Number of closed propositional formulas of depth <= d over k atoms:
/// S(0) = k + 1, S(d) = k + 1 + 3 S(d-1)^2 (+ S(d-1) with Δ).
inline std::size_t formula_count(std::size_t k, std::size_t d, bool delta) {
  std::size_t s = k + 1;
  for (std::size_t i = 0; i < d; ++i) s = k + 1 + 3 * s * s + (delta ? s : 0);
  return s;
}

/// Levels of the canonical chain with n atoms: 0..n+1.
using Vec = std::vector<int>;

/// Canonical assignments, first atom slowest.
inline std::vector<Vec> assignments(std::size_t n) {
  const int levels = static_cast<int>(n) + 2;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(levels);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < total; ++i) {
    Vec a(n);
    std::size_t x = i;
    for (std::size_t j = n; j-- > 0;) {
      a[j] = static_cast<int>(x % static_cast<std::size_t>(levels));
      x /= static_cast<std::size_t>(levels);
    }
    out.push_back(a);
  }
  return out;
}

/// Plain fixpoint of the projections and ⊥ under pointwise ∧, ∨, → (and Δ).
inline std::set<Vec> naive_clone(std::size_t n, bool delta) {
  const auto as = assignments(n);
  const int top = static_cast<int>(n) + 1;
  std::set<Vec> vs;
  vs.insert(Vec(as.size(), 0));
  for (std::size_t j = 0; j < n; ++j) {
    Vec p;
    for (const auto& a : as) p.push_back(a[j]);
    vs.insert(p);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Vec> cur(vs.begin(), vs.end());
    for (const auto& x : cur) {
      if (delta) {
        Vec d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] == top ? top : 0;
        grew |= vs.insert(d).second;
      }
      for (const auto& y : cur) {
        Vec a(x.size()), o(x.size()), m(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          a[i] = std::min(x[i], y[i]);
          o[i] = std::max(x[i], y[i]);
          m[i] = x[i] <= y[i] ? top : y[i];
        }
        grew |= vs.insert(a).second;
        grew |= vs.insert(o).second;
        grew |= vs.insert(m).second;
      }
    }
  }
  return vs;
}

/// Order type of an assignment: each atom's position relative to 0, 1 and
/// the other atoms, as the tuple of dense ranks with 0 and top pinned.
inline Vec order_type(const Vec& a, int top) {
  std::set<int> interior;
  for (int x : a)
    if (x != 0 && x != top) interior.insert(x);
  Vec t;
  for (int x : a) {
    if (x == 0) t.push_back(0);
    else if (x == top) t.push_back(-1);
    else t.push_back(1 + static_cast<int>(std::distance(interior.begin(), interior.find(x))));
  }
  return t;
}

/// Functions definable with Δ: per order type, the value is 0, 1 or one of
/// the atoms in (0,1). Counts the choices type by type.
inline std::size_t delta_function_count(std::size_t n) {
  const int top = static_cast<int>(n) + 1;
  std::set<Vec> types;
  for (const auto& a : assignments(n)) types.insert(order_type(a, top));
  std::size_t count = 1;
  for (const auto& t : types) {
    std::set<int> interior;
    for (int x : t)
      if (x > 0) interior.insert(x);
    count *= 2 + interior.size();
  }
  return count;
}

/// True when, on every order type, the vector is constantly 0, constantly
/// 1 or follows one fixed atom.
inline bool type_consistent(const std::vector<std::uint8_t>& vec, std::size_t n) {
  const int top = static_cast<int>(n) + 1;
  const auto as = assignments(n);
  std::map<Vec, std::vector<std::size_t>> by_type;
  for (std::size_t i = 0; i < as.size(); ++i) by_type[order_type(as[i], top)].push_back(i);
  for (const auto& [type, members] : by_type) {
    bool ok = std::all_of(members.begin(), members.end(), [&](auto i) { return vec[i] == 0; }) ||
              std::all_of(members.begin(), members.end(), [&](auto i) { return vec[i] == top; });
    for (std::size_t j = 0; j < n && !ok; ++j)
      ok = std::all_of(members.begin(), members.end(),
                       [&](auto i) { return vec[i] == as[i][j]; });
    if (!ok) return false;
  }
  return true;
}

/// Every linear order of the union of B1 and B2, glued along the images of
/// B0, that extends both chain orders. Elements are keyed "1:<id>" for B1
/// and "2:<id>" for B2 elements outside the image of f2.
inline std::vector<std::vector<std::string>> amalgam_orders(const goedel::LinHom& f1,
                                                            const goedel::LinHom& f2) {
  const auto& b1 = f1.target;
  const auto& b2 = f2.target;
  std::map<std::size_t, std::size_t> glue;  // B2 rank -> B1 rank
  for (std::size_t k = 0; k < f1.source.size(); ++k) glue[f2.image[k]] = f1.image[k];
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> index;
  for (const auto& e : b1.elements()) index["1:" + e] = keys.size(), keys.push_back("1:" + e);
  std::vector<std::size_t> b2_key(b2.size());
  for (std::size_t r = 0; r < b2.size(); ++r) {
    if (auto it = glue.find(r); it != glue.end()) {
      b2_key[r] = it->second;
    } else {
      b2_key[r] = keys.size();
      keys.push_back("2:" + b2.at(r));
    }
  }
  const std::size_t n = keys.size();
  std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
  for (std::size_t r = 0; r + 1 < b1.size(); ++r) before[r][r + 1] = true;
  for (std::size_t r = 0; r + 1 < b2.size(); ++r) before[b2_key[r]][b2_key[r + 1]] = true;

  std::vector<std::vector<std::string>> out;
  std::vector<std::string> prefix;
  std::vector<bool> used(n, false);
  std::function<void()> dfs = [&] {
    if (prefix.size() == n) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      bool ready = true;
      for (std::size_t y = 0; y < n && ready; ++y)
        if (before[y][x] && !used[y]) ready = false;
      if (!ready) continue;
      used[x] = true;
      prefix.push_back(keys[x]);
      dfs();
      prefix.pop_back();
      used[x] = false;
    }
  };
  dfs();
  return out;
}

}  // namespace oracle
