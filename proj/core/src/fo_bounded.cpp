#include <functional>
// Bounded first-order countermodel search.
//
// For a fixed universe size and constant interpretation every closed formula
// grounds to a propositional formula over the atomic slots R(e1..ek). The
// ground DAG is hash-consed and evaluated column-wise over blocks of
// consecutive valuations.

#include <algorithm>
#include <unordered_map>

#include "goedel/decision.hpp"
#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

namespace {

enum class GOp : std::uint8_t { Zero, One, Slot, And, Or, Imp, Delta };

struct GNode {
  GOp op;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

struct RelationSlots {
  std::size_t arity;
  std::size_t base;
};

class Grounder {
 public:
  Grounder(const std::map<std::string, RelationSlots, std::less<>>& slots,
           const std::map<std::string, std::size_t, std::less<>>& constants, std::size_t universe)
      : slots_(slots), constants_(constants), m_(universe) {
    nodes_.push_back({GOp::Zero});
    nodes_.push_back({GOp::One});
  }

  std::uint32_t ground(const Formula& f) { return go(f); }
  const std::vector<GNode>& nodes() const { return nodes_; }

 private:
  static constexpr std::uint32_t kZero = 0;
  static constexpr std::uint32_t kOne = 1;

  std::uint32_t intern(GNode n) {
    std::uint64_t key = (static_cast<std::uint64_t>(n.op) << 58) ^
                        (static_cast<std::uint64_t>(n.a) << 29) ^ n.b;
    auto [it, inserted] = cons_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    if (inserted) nodes_.push_back(n);
    return it->second;
  }

  std::uint32_t binary(GOp op, std::uint32_t a, std::uint32_t b) {
    switch (op) {
      case GOp::And:
        if (a == kZero || b == kZero) return kZero;
        if (a == kOne || a == b) return b;
        if (b == kOne) return a;
        if (a > b) std::swap(a, b);
        break;
      case GOp::Or:
        if (a == kOne || b == kOne) return kOne;
        if (a == kZero || a == b) return b;
        if (b == kZero) return a;
        if (a > b) std::swap(a, b);
        break;
      case GOp::Imp:
        if (a == kZero || b == kOne || a == b) return kOne;
        if (a == kOne) return b;
        break;
      default:
        break;
    }
    return intern({op, a, b});
  }

  std::size_t element_of(const Term& t) const {
    if (t.is_constant()) {
      auto it = constants_.find(t.name);
      if (it == constants_.end()) throw InvariantViolation("constant '" + t.name + "' unmapped");
      return it->second;
    }
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == t.name) return it->second;
    }
    throw PreconditionError("free variable '" + t.name + "' in bounded check");
  }

  std::uint32_t go(const Formula& f) {
    switch (f.kind()) {
      case Connective::Bottom:
        return kZero;
      case Connective::Atom: {
        const auto& rs = slots_.at(f.relation());
        std::size_t index = 0;
        for (const auto& t : f.terms()) index = index * m_ + element_of(t);
        return intern({GOp::Slot, static_cast<std::uint32_t>(rs.base + index), 0});
      }
      case Connective::And:
        return binary(GOp::And, go(f.lhs()), go(f.rhs()));
      case Connective::Or:
        return binary(GOp::Or, go(f.lhs()), go(f.rhs()));
      case Connective::Implies:
        return binary(GOp::Imp, go(f.lhs()), go(f.rhs()));
      case Connective::Delta: {
        auto a = go(f.body());
        if (a == kZero || a == kOne) return a;
        return intern({GOp::Delta, a, 0});
      }
      case Connective::Forall:
      case Connective::Exists: {
        bool universal = f.is(Connective::Forall);
        std::uint32_t acc = universal ? kOne : kZero;
        env_.emplace_back(f.variable(), 0);
        for (std::size_t e = 0; e < m_; ++e) {
          env_.back().second = e;
          acc = binary(universal ? GOp::And : GOp::Or, acc, go(f.body()));
        }
        env_.pop_back();
        return acc;
      }
    }
    throw InvariantViolation("unknown connective");
  }

  const std::map<std::string, RelationSlots, std::less<>>& slots_;
  const std::map<std::string, std::size_t, std::less<>>& constants_;
  std::size_t m_;
  std::vector<GNode> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> cons_;
  std::vector<std::pair<std::string, std::size_t>> env_;
};

std::vector<std::string> element_ids(std::size_t m) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) {
    ids.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i));
  }
  return ids;
}

// Restricted-growth maps from the sorted constants into {0..m-1}: one
// representative per orbit under permutations of the universe.
std::vector<std::vector<std::size_t>> constant_maps(std::size_t count, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t used) -> void {
    if (cur.size() == count) {
      out.push_back(cur);
      return;
    }
    for (std::size_t e = 0; e <= used && e < m; ++e) {
      cur.push_back(e);
      self(self, std::max(used, e + 1));
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// a^b with saturation at `cap + 1`.
std::uint64_t bounded_pow(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    if (a != 0 && r > cap / a) return cap + 1;
    r *= a;
  }
  return r;
}

std::vector<TruthValue> evenly_spaced(std::size_t slots) {
  return CanonicalChain{slots}.values();
}

constexpr std::size_t kBlock = 1024;

}  // namespace

namespace {

// Decodes position i of the current block into a Valuation.
using Decoder = std::function<Valuation(std::size_t)>;

// Enumerates the bounded search space block by block. `visit` gets one
// column of levels per input formula (0 = value 0, top = value 1), the block
// length, top and a decoder; it returns false to stop the sweep.
template <typename Visit>
void sweep(const std::vector<Formula>& formulas, const BoundedSearchOptions& options,
           Visit&& visit) {
  if (options.min_universe == 0 || options.max_universe < options.min_universe) {
    throw PreconditionError("universe bounds must satisfy 1 <= min <= max");
  }
  for (const auto& f : formulas) {
    if (!is_closed(f)) throw PreconditionError("open formula in bounded check: " + to_string(f));
  }
  auto normalize = [](std::vector<TruthValue> grid) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (!grid.empty() &&
        (!grid.front().is_zero() || !grid.back().is_one() || grid.size() > 255)) {
      throw PreconditionError("value grid must contain 0 and 1 (and at most 255 values)");
    }
    return grid;
  };
  const std::vector<TruthValue> fixed_grid = normalize(options.grid);
  const Signature sig = language_of(formulas);
  std::vector<std::string> consts(sig.constants().begin(), sig.constants().end());

  struct Stage {
    std::size_t m;
    std::size_t slot_count;
    std::vector<TruthValue> grid;
    std::uint64_t per_map;
    std::size_t maps;
  };
  std::vector<Stage> stages;
  std::uint64_t total = 0;
  for (std::size_t m = options.min_universe; m <= options.max_universe; ++m) {
    std::size_t slots = 0;
    for (const auto& [name, arity] : sig.relations()) {
      slots += static_cast<std::size_t>(bounded_pow(m, arity, std::uint64_t(1) << 32));
    }
    std::vector<TruthValue> grid = fixed_grid;
    if (auto it = options.size_grids.find(m); it != options.size_grids.end()) {
      grid = normalize(it->second);
    }
    if (grid.empty()) {
      if (slots > 253) throw BudgetExceeded("too many atomic slots for the canonical grid");
      grid = evenly_spaced(slots);
    }
    std::uint64_t per = bounded_pow(grid.size(), slots, options.budget);
    std::size_t maps = constant_maps(consts.size(), m).size();
    std::uint64_t stage_total = per > options.budget ? options.budget + 1 : per * maps;
    total += stage_total;
    if (total > options.budget) {
      throw BudgetExceeded("bounded search space exceeds budget of " +
                           std::to_string(options.budget) + " valuations");
    }
    stages.push_back({m, slots, std::move(grid), per, maps});
  }

  for (const auto& stage : stages) {
    const std::size_t m = stage.m;
    const std::size_t g = stage.grid.size();
    const auto top = static_cast<std::uint8_t>(g - 1);

    std::map<std::string, RelationSlots, std::less<>> slots;
    std::size_t base = 0;
    for (const auto& [name, arity] : sig.relations()) {
      slots[name] = {arity, base};
      base += static_cast<std::size_t>(bounded_pow(m, arity, std::uint64_t(1) << 32));
    }
    std::vector<std::uint64_t> stride(stage.slot_count, 1);
    for (std::size_t s = 1; s < stage.slot_count; ++s) stride[s] = stride[s - 1] * g;

    for (const auto& cmap : constant_maps(consts.size(), m)) {
      std::map<std::string, std::size_t, std::less<>> cvals;
      for (std::size_t i = 0; i < consts.size(); ++i) cvals[consts[i]] = cmap[i];
      Grounder grounder(slots, cvals, m);
      std::vector<std::uint32_t> roots;
      for (const auto& f : formulas) roots.push_back(grounder.ground(f));
      const auto& nodes = grounder.nodes();

      std::vector<std::uint8_t> cols(nodes.size() * kBlock);
      auto col = [&](std::uint32_t id) { return cols.data() + static_cast<std::size_t>(id) * kBlock; };
      std::fill_n(col(0), kBlock, std::uint8_t{0});
      std::fill_n(col(1), kBlock, top);
      std::vector<const std::uint8_t*> root_cols;
      for (auto r : roots) root_cols.push_back(col(r));

      for (std::uint64_t t0 = 0; t0 < stage.per_map; t0 += kBlock) {
        const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, stage.per_map - t0));
        for (std::uint32_t id = 2; id < nodes.size(); ++id) {
          const GNode& n = nodes[id];
          std::uint8_t* out = col(id);
          switch (n.op) {
            case GOp::Slot: {
              std::uint64_t st = stride[n.a];
              std::uint8_t digit = static_cast<std::uint8_t>((t0 / st) % g);
              std::uint64_t run = st - (t0 % st);
              for (std::size_t i = 0; i < len;) {
                std::size_t stop = static_cast<std::size_t>(std::min<std::uint64_t>(len, i + run));
                std::fill(out + i, out + stop, digit);
                i = stop;
                run = st;
                digit = static_cast<std::uint8_t>(digit + 1u == g ? 0 : digit + 1);
              }
              break;
            }
            case GOp::And: {
              const auto* a = col(n.a);
              const auto* b = col(n.b);
              for (std::size_t i = 0; i < len; ++i) out[i] = std::min(a[i], b[i]);
              break;
            }
            case GOp::Or: {
              const auto* a = col(n.a);
              const auto* b = col(n.b);
              for (std::size_t i = 0; i < len; ++i) out[i] = std::max(a[i], b[i]);
              break;
            }
            case GOp::Imp: {
              const auto* a = col(n.a);
              const auto* b = col(n.b);
              for (std::size_t i = 0; i < len; ++i) out[i] = a[i] <= b[i] ? top : b[i];
              break;
            }
            case GOp::Delta: {
              const auto* a = col(n.a);
              for (std::size_t i = 0; i < len; ++i) out[i] = a[i] == top ? top : 0;
              break;
            }
            default:
              break;
          }
        }
        Decoder decode = [&](std::size_t i) {
          const std::uint64_t t = t0 + i;
          Valuation v(element_ids(m));
          for (const auto& [name, rs] : slots) {
            v.define_relation(name, rs.arity);
            const std::size_t rows = v.table(name).values.size();
            for (std::size_t r = 0; r < rows; ++r) {
              v.set_row(name, r, stage.grid[static_cast<std::size_t>((t / stride[rs.base + r]) % g)]);
            }
          }
          for (const auto& [name, e] : cvals) v.set_constant(name, e);
          return v;
        };
        if (!visit(root_cols, len, top, decode)) return;
      }
    }
  }
}

}  // namespace

EntailmentVerdict fo_check_bounded(const Theory& theory, const Formula& formula,
                                   const BoundedSearchOptions& options) {
  std::vector<Formula> all(theory.begin(), theory.end());
  all.push_back(formula);
  EntailmentVerdict verdict{true, std::nullopt, true};
  sweep(all, options,
        [&](const std::vector<const std::uint8_t*>& cols, std::size_t len, std::uint8_t top,
            const Decoder& decode) {
          const auto* goal = cols.back();
          for (std::size_t i = 0; i < len; ++i) {
            if (goal[i] == top) continue;
            bool ok = true;
            for (std::size_t p = 0; p + 1 < cols.size() && ok; ++p) ok = cols[p][i] == top;
            if (!ok) continue;
            verdict.holds = false;
            verdict.witness = decode(i);
            return false;
          }
          return true;
        });
  return verdict;
}

std::uint64_t sweep_bounded(const std::vector<Formula>& formulas,
                            const BoundedSearchOptions& options, const BoundedVisitor& visit) {
  std::uint64_t count = 0;
  std::vector<std::uint8_t> row(formulas.size());
  sweep(formulas, options,
        [&](const std::vector<const std::uint8_t*>& cols, std::size_t len, std::uint8_t top,
            const Decoder& decode) {
          for (std::size_t i = 0; i < len; ++i) {
            for (std::size_t k = 0; k < cols.size(); ++k) row[k] = cols[k][i];
            ++count;
            if (!visit(row, top, [&] { return decode(i); })) return false;
          }
          return true;
        });
  return count;
}

}  // namespace goedel
