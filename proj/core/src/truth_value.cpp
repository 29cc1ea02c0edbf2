#include "goedel/truth_value.hpp"

#include <charconv>
#include <stdexcept>

namespace goedel {

namespace {

TruthValue::Rep checked(TruthValue::Rep value) {
  if (value < 0 || value > 1) {
    throw std::domain_error("truth value outside [0,1]: " +
                            std::to_string(value.numerator()) + "/" +
                            std::to_string(value.denominator()));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed truth value '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

TruthValue::TruthValue(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("truth value with zero denominator");
  value_ = checked(Rep(num, den));
}

TruthValue::TruthValue(Rep value) : value_(checked(value)) {}

TruthValue TruthValue::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return TruthValue(parse_int(s, text), 1);
  return TruthValue(parse_int(trim(s.substr(0, slash)), text),
                    parse_int(trim(s.substr(slash + 1)), text));
}

std::string TruthValue::str() const {
  if (value_.denominator() == 1) return std::to_string(value_.numerator());
  return std::to_string(value_.numerator()) + "/" +
         std::to_string(value_.denominator());
}

std::ostream& operator<<(std::ostream& out, const TruthValue& value) {
  return out << value.str();
}

}  // namespace goedel
