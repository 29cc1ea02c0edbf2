#include "goedel/signature.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "goedel/errors.hpp"

namespace goedel {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return true;
}

bool is_reserved_word(std::string_view name) {
  return name == "bot" || name == "top" || name == "forall" ||
         name == "exists" || name == "D";
}

namespace {

void check_name(const std::string& name) {
  if (!is_identifier(name)) throw SymbolError("invalid symbol name '" + name + "'");
  if (is_reserved_word(name)) throw SymbolError("reserved word used as symbol: '" + name + "'");
}

}  // namespace

void Signature::add_relation(const std::string& name, std::size_t arity) {
  check_name(name);
  if (constants_.contains(name)) {
    throw SymbolError("'" + name + "' already declared as a constant");
  }
  auto [it, inserted] = relations_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw SymbolError("relation '" + name + "' declared with arities " +
                      std::to_string(it->second) + " and " + std::to_string(arity));
  }
}

void Signature::add_constant(const std::string& name) {
  check_name(name);
  if (relations_.contains(name)) {
    throw SymbolError("'" + name + "' already declared as a relation");
  }
  constants_.insert(name);
}

std::optional<std::size_t> Signature::arity(std::string_view name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

bool Signature::has_relation(std::string_view name) const {
  return relations_.find(name) != relations_.end();
}

bool Signature::has_constant(std::string_view name) const {
  return constants_.find(name) != constants_.end();
}

bool Signature::is_propositional() const {
  if (!constants_.empty()) return false;
  for (const auto& [name, arity] : relations_) {
    if (arity != 0) return false;
  }
  return true;
}

bool Signature::subset_of(const Signature& other) const {
  for (const auto& [name, arity] : relations_) {
    auto a = other.arity(name);
    if (!a || *a != arity) return false;
  }
  for (const auto& c : constants_) {
    if (!other.has_constant(c)) return false;
  }
  return true;
}

Signature Signature::united(const Signature& other) const {
  Signature out = *this;
  for (const auto& [name, arity] : other.relations_) out.add_relation(name, arity);
  for (const auto& c : other.constants_) out.add_constant(c);
  return out;
}

Signature Signature::intersected(const Signature& other) const {
  Signature out;
  for (const auto& [name, arity] : relations_) {
    auto a = other.arity(name);
    if (a && *a == arity) out.relations_.emplace(name, arity);
  }
  for (const auto& c : constants_) {
    if (other.has_constant(c)) out.constants_.insert(c);
  }
  return out;
}

Signature Signature::parse(std::string_view text) {
  Signature sig;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kind, decl, extra;
    if (!(words >> kind)) continue;
    if (!(words >> decl) || (words >> extra)) {
      throw ParseError("expected `rel Name/arity` or `const Name`", line_no);
    }
    if (kind == "const") {
      sig.add_constant(decl);
    } else if (kind == "rel") {
      auto slash = decl.find('/');
      if (slash == std::string::npos) throw ParseError("missing '/arity'", line_no);
      std::size_t arity = 0;
      std::string_view digits = std::string_view(decl).substr(slash + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw ParseError("malformed arity '" + std::string(digits) + "'", line_no);
      }
      sig.add_relation(decl.substr(0, slash), arity);
    } else {
      throw ParseError("unknown declaration kind '" + kind + "'", line_no);
    }
  }
  return sig;
}

std::string Signature::str() const {
  std::string out;
  for (const auto& [name, arity] : relations_) {
    out += "rel " + name + "/" + std::to_string(arity) + "\n";
  }
  for (const auto& c : constants_) out += "const " + c + "\n";
  return out;
}

}  // namespace goedel
