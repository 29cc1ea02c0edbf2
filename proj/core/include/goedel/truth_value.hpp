#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace goedel {

/// An exact rational in [0,1], kept in lowest terms.
class TruthValue {
 public:
  using Rep = boost::rational<std::int64_t>;

  constexpr TruthValue() = default;

  /// Throws std::domain_error when num/den falls outside [0,1] or den == 0.
  TruthValue(std::int64_t num, std::int64_t den);
  explicit TruthValue(Rep value);

  static TruthValue zero() { return TruthValue(); }
  static TruthValue one() { return TruthValue(1, 1); }

  /// Accepts "p/q", "0", "1" (surrounding whitespace ignored).
  static TruthValue parse(std::string_view text);

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const Rep& rep() const { return value_; }

  bool is_zero() const { return value_.numerator() == 0; }
  bool is_one() const { return value_.numerator() == value_.denominator(); }

  /// "0", "1" or "p/q".
  std::string str() const;

  friend bool operator==(const TruthValue& a, const TruthValue& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const TruthValue& a,
                                          const TruthValue& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rep value_{0};
};

std::ostream& operator<<(std::ostream& out, const TruthValue& value);

// Gödel connectives on [0,1].
inline TruthValue godel_and(const TruthValue& a, const TruthValue& b) {
  return a < b ? a : b;
}
inline TruthValue godel_or(const TruthValue& a, const TruthValue& b) {
  return a < b ? b : a;
}
inline TruthValue godel_implies(const TruthValue& a, const TruthValue& b) {
  return a <= b ? TruthValue::one() : b;
}
inline TruthValue godel_delta(const TruthValue& a) {
  return a.is_one() ? TruthValue::one() : TruthValue::zero();
}

}  // namespace goedel

template <>
struct std::hash<goedel::TruthValue> {
  std::size_t operator()(const goedel::TruthValue& v) const noexcept {
    return std::hash<std::int64_t>()(v.numerator()) * 31u +
           std::hash<std::int64_t>()(v.denominator());
  }
};
