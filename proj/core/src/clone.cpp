#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>
#include <tuple>

#ifdef __BMI2__
#include <immintrin.h>
#endif

#include "goedel/decision.hpp"
#include "goedel/interpolation.hpp"

namespace goedel {

std::optional<std::size_t> CloneTable::find(const std::vector<std::uint8_t>& vector) const {
  auto it = index_.find(vector);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json CloneTable::to_json(bool with_vectors) const {
  nlohmann::json out{{"atoms", atoms},
                     {"delta_allowed", delta_allowed},
                     {"size", vectors.size()},
                     {"saturated", saturated},
                     {"depth_reached", depth_reached}};
  if (with_vectors) {
    auto& entries = out["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      entries.push_back(
          {{"vector", vectors[i]}, {"witness", to_string(witnesses[i])}, {"depth", depths[i]}});
    }
  }
  return out;
}

namespace {

// Value vectors packed as 4-bit lanes, one lane per assignment. Levels stay
// below 8, so a lane-wise x >= y test is ((x | 8) - y) & 8 without borrows
// crossing lanes.
template <std::size_t W>
struct Packed {
  std::array<std::uint64_t, W> w{};
  friend bool operator==(const Packed&, const Packed&) = default;
};

constexpr std::uint64_t kHigh = 0x8888888888888888ULL;

inline std::uint64_t ge_mask(std::uint64_t x, std::uint64_t y) {
  std::uint64_t h = ((x | kHigh) - y) & kHigh;
  return (h >> 3) * 0xF;
}

template <std::size_t W>
struct Ops {
  Packed<W> valid;
  Packed<W> top;

  Packed<W> meet(const Packed<W>& a, const Packed<W>& b) const {
    Packed<W> r;
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t m = ge_mask(a.w[i], b.w[i]);
      r.w[i] = (b.w[i] & m) | (a.w[i] & ~m);
    }
    return r;
  }
  Packed<W> join(const Packed<W>& a, const Packed<W>& b) const {
    Packed<W> r;
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t m = ge_mask(a.w[i], b.w[i]);
      r.w[i] = (a.w[i] & m) | (b.w[i] & ~m);
    }
    return r;
  }
  Packed<W> imp(const Packed<W>& a, const Packed<W>& b) const {
    Packed<W> r;
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t le = ge_mask(b.w[i], a.w[i]);
      r.w[i] = ((top.w[i] & le) | (b.w[i] & ~le)) & valid.w[i];
    }
    return r;
  }
  Packed<W> delta(const Packed<W>& a) const {
    Packed<W> r;
    for (std::size_t i = 0; i < W; ++i) r.w[i] = top.w[i] & ge_mask(a.w[i], top.w[i]);
    return r;
  }
};

template <std::size_t W>
std::uint64_t hash_packed(const Packed<W>& p) {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (auto x : p.w) {
    h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 31;
  }
  return h;
}

// Open-addressing set of indices into the vector store.
template <std::size_t W>
class PackedIndex {
 public:
  explicit PackedIndex(const std::vector<Packed<W>>& store) : store_(store), slots_(1024, kEmpty) {}

  bool contains(const Packed<W>& p) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_packed(p) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == kEmpty) return false;
      if (store_[slots_[i]] == p) return true;
    }
  }
  void insert(std::uint32_t id) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    place(id);
    ++count_;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  void place(std::uint32_t id) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash_packed(store_[id]) & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = id;
  }
  void grow() {
    std::vector<std::uint32_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    for (auto id : old) {
      if (id != kEmpty) place(id);
    }
  }

  const std::vector<Packed<W>>& store_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

// Assignments with the same order pattern (relative to 0, the atoms and
// top) are the same point up to a level renaming, so every formula vector
// is determined by its values on one representative per pattern, and each
// value lies in {0, top} ∪ {atom levels}.
struct OrderTypes {
  std::vector<std::size_t> representatives;
  // Number of vectors of that shape. A closure reaching it is complete.
  double product = 1;
};

OrderTypes order_types(const AssignmentSpace& space) {
  OrderTypes out;
  std::set<std::vector<std::uint8_t>> seen;
  const auto top = space.top();
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto a = space.assignment(i);
    std::set<std::uint8_t> values(a.begin(), a.end());
    values.insert(0);
    values.insert(top);
    std::vector<std::uint8_t> pattern;
    for (auto x : a) {
      pattern.push_back(static_cast<std::uint8_t>(std::distance(values.begin(), values.find(x))));
    }
    pattern.push_back(static_cast<std::uint8_t>(values.size()));
    if (seen.insert(pattern).second) {
      out.representatives.push_back(i);
      out.product *= static_cast<double>(values.size());
    }
  }
  return out;
}

}  // namespace

class CloneBuilder {
 public:
  template <std::size_t W>
  static std::shared_ptr<CloneTable> run(const std::vector<std::string>& atoms, bool delta,
                                         const CloneOptions& options);
};

template <std::size_t W>
std::shared_ptr<CloneTable> CloneBuilder::run(const std::vector<std::string>& atoms, bool delta,
                                              const CloneOptions& options) {
  AssignmentSpace space(atoms);
  const std::size_t lanes = space.size();
  const std::uint8_t top = space.top();

  Ops<W> ops;
  for (std::size_t i = 0; i < lanes; ++i) {
    ops.valid.w[i / 16] |= std::uint64_t{0xF} << (4 * (i % 16));
    ops.top.w[i / 16] |= std::uint64_t{top} << (4 * (i % 16));
  }
  const OrderTypes types = order_types(space);
  const double certificate = delta ? types.product : -1;

  // With one word and levels below 4, the representative lanes give an
  // exact key of 2 bits per order type; membership is then one bitmap probe.
  const bool use_bitmap = W == 1 && top < 4 && types.representatives.size() <= 12;
  std::vector<std::uint64_t> bitmap;
  if (use_bitmap) bitmap.assign((std::size_t{1} << (2 * types.representatives.size())) / 64 + 1, 0);
  std::uint64_t key_mask = 0;
  for (auto r : types.representatives) key_mask |= std::uint64_t{3} << (4 * r);
  auto bitmap_key = [&](const Packed<W>& p) {
#ifdef __BMI2__
    return static_cast<std::size_t>(_pext_u64(p.w[0], key_mask));
#else
    (void)key_mask;
    std::size_t key = 0;
    for (std::size_t r = 0; r < types.representatives.size(); ++r) {
      key |= ((p.w[0] >> (4 * types.representatives[r])) & 3) << (2 * r);
    }
    return key;
#endif
  };

  auto table = std::make_shared<CloneTable>();
  table->atoms = atoms;
  table->delta_allowed = delta;

  std::vector<Packed<W>> store;
  store.reserve(1024);
  PackedIndex<W> index(store);

  auto complete = [&] {
    return certificate > 0 && static_cast<double>(store.size()) == certificate;
  };
  auto finish = [&](bool saturated) {
    table->saturated = saturated;
    for (std::size_t id = 0; id < store.size(); ++id) {
      std::vector<std::uint8_t> v(lanes);
      for (std::size_t i = 0; i < lanes; ++i) {
        v[i] = static_cast<std::uint8_t>((store[id].w[i / 16] >> (4 * (i % 16))) & 0xF);
      }
      table->index_.emplace(v, id);
      table->vectors.push_back(std::move(v));
    }
  };
  // Returns true when the new vector completes the closure.
  auto add = [&](const Packed<W>& p, auto&& make_witness, std::size_t depth) {
    std::size_t key = 0;
    if (use_bitmap) {
      key = bitmap_key(p);
      if (bitmap[key / 64] >> (key % 64) & 1) return false;
    } else if (index.contains(p)) {
      return false;
    }
    if (store.size() >= options.budget) {
      finish(false);
      throw CloneBudgetExceeded("clone closure over " + std::to_string(atoms.size()) +
                                    " atoms exceeded " + std::to_string(options.budget) +
                                    " vectors",
                                table);
    }
    store.push_back(p);
    if (use_bitmap) {
      bitmap[key / 64] |= std::uint64_t{1} << (key % 64);
    } else {
      index.insert(static_cast<std::uint32_t>(store.size() - 1));
    }
    table->witnesses.push_back(make_witness());
    table->depths.push_back(depth);
    return complete();
  };

  for (std::size_t j = 0; j < atoms.size(); ++j) {
    Packed<W> p;
    for (std::size_t i = 0; i < lanes; ++i) {
      p.w[i / 16] |= std::uint64_t{space.level(i, j)} << (4 * (i % 16));
    }
    add(p, [&] { return Formula::atom(atoms[j]); }, 0);
  }
  if (add(Packed<W>{}, [] { return Formula::bottom(); }, 0)) {
    finish(true);
    return table;
  }

  std::size_t frontier = 0;  // first id of the previous round
  for (std::size_t d = 1;; ++d) {
    const std::size_t end = store.size();
    if (frontier == end) {
      table->depth_reached = d - 1;
      finish(true);
      return table;
    }
    if (options.max_depth && d > *options.max_depth) {
      table->depth_reached = d - 1;
      finish(false);
      return table;
    }
    table->depth_reached = d;
    // Binary constructors in rank order; pairs with a child from the last
    // round, lexicographically. ∧ and ∨ are commutative, so (b, a) with
    // b < a has already been produced by (a, b).
    auto scan = [&](auto combine, auto build, bool commutative) {
      for (std::size_t a = 0; a < end; ++a) {
        std::size_t b0 = a < frontier ? frontier : 0;
        if (commutative) b0 = std::max(b0, a);
        const Packed<W> x = store[a];
        for (std::size_t b = b0; b < end; ++b) {
          Packed<W> r = combine(x, store[b]);
          if (use_bitmap) {
            std::size_t key = bitmap_key(r);
            if (bitmap[key / 64] >> (key % 64) & 1) continue;
          }
          auto witness = [&] { return build(table->witnesses[a], table->witnesses[b]); };
          if (add(r, witness, d)) return true;
        }
      }
      return false;
    };
    bool done =
        scan([&](const Packed<W>& x, const Packed<W>& y) { return ops.meet(x, y); },
             [](const Formula& x, const Formula& y) { return Formula::conj(x, y); }, true) ||
        scan([&](const Packed<W>& x, const Packed<W>& y) { return ops.join(x, y); },
             [](const Formula& x, const Formula& y) { return Formula::disj(x, y); }, true) ||
        scan([&](const Packed<W>& x, const Packed<W>& y) { return ops.imp(x, y); },
             [](const Formula& x, const Formula& y) { return Formula::implies(x, y); }, false);
    if (done) {
      finish(true);
      return table;
    }
    if (delta) {
      for (std::size_t a = frontier; a < end; ++a) {
        if (add(ops.delta(store[a]), [&] { return Formula::delta(table->witnesses[a]); }, d)) {
          finish(true);
          return table;
        }
      }
    }
    frontier = end;
  }
}

std::shared_ptr<const CloneTable> clone_closure(const std::vector<std::string>& atoms,
                                                bool delta_allowed, const CloneOptions& options) {
  if (atoms.size() > options.max_atoms) {
    throw PreconditionError("clone closure supports at most " + std::to_string(options.max_atoms) +
                            " atoms, got " + std::to_string(atoms.size()));
  }
  if (std::set<std::string>(atoms.begin(), atoms.end()).size() != atoms.size()) {
    throw PreconditionError("clone closure atoms must be distinct");
  }

  using Key = std::tuple<std::vector<std::string>, bool, std::optional<std::size_t>>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const CloneTable>> cache;
  Key key{atoms, delta_allowed, options.max_depth};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  std::size_t lanes = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) lanes *= atoms.size() + 2;
  std::shared_ptr<const CloneTable> table;
  if (lanes <= 16) {
    table = CloneBuilder::run<1>(atoms, delta_allowed, options);
  } else if (lanes <= 128) {
    table = CloneBuilder::run<8>(atoms, delta_allowed, options);
  } else {
    throw PreconditionError("clone closure: too many assignments");
  }

  std::lock_guard lock(mutex);
  return cache.emplace(key, table).first->second;
}

}  // namespace goedel
