#include "goedel/valuation.hpp"

#include <algorithm>
#include <set>

#include "goedel/errors.hpp"

namespace goedel {

Valuation::Valuation(std::vector<std::string> universe) : universe_(std::move(universe)) {
  if (universe_.empty()) throw EvaluationError("valuation universe must be non-empty");
  std::set<std::string_view> seen;
  for (const auto& id : universe_) {
    if (id.empty() || id.find_first_of("(),") != std::string::npos) {
      throw EvaluationError("invalid element id '" + id + "'");
    }
    if (!seen.insert(id).second) throw EvaluationError("duplicate element id '" + id + "'");
  }
}

Valuation Valuation::propositional(const std::map<std::string, TruthValue>& atoms) {
  Valuation v({"e0"});
  for (const auto& [name, value] : atoms) v.define_relation(name, 0, value);
  return v;
}

std::optional<std::size_t> Valuation::element(std::string_view id) const {
  auto it = std::find(universe_.begin(), universe_.end(), id);
  if (it == universe_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

void Valuation::define_relation(const std::string& name, std::size_t arity, TruthValue fill) {
  std::size_t rows = 1;
  for (std::size_t i = 0; i < arity; ++i) rows *= universe_.size();
  relations_[name] = Table{arity, std::vector<TruthValue>(rows, fill)};
}

std::size_t Valuation::offset(const Table& t, std::span<const std::size_t> args) const {
  if (args.size() != t.arity) throw EvaluationError("relation applied to wrong number of arguments");
  std::size_t index = 0;
  for (auto a : args) {
    if (a >= universe_.size()) throw EvaluationError("element index out of range");
    index = index * universe_.size() + a;
  }
  return index;
}

void Valuation::set(std::string_view relation, std::span<const std::size_t> args, TruthValue value) {
  auto it = relations_.find(relation);
  if (it == relations_.end()) {
    throw EvaluationError("relation '" + std::string(relation) + "' is not defined");
  }
  it->second.values[offset(it->second, args)] = value;
}

void Valuation::set_row(std::string_view relation, std::size_t row, TruthValue value) {
  auto it = relations_.find(relation);
  if (it == relations_.end() || row >= it->second.values.size()) {
    throw EvaluationError("no row " + std::to_string(row) + " in table '" + std::string(relation) + "'");
  }
  it->second.values[row] = value;
}

bool Valuation::has_relation(std::string_view name) const {
  return relations_.find(name) != relations_.end();
}

const Valuation::Table& Valuation::table(std::string_view name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) {
    throw EvaluationError("relation '" + std::string(name) + "' is not interpreted");
  }
  return it->second;
}

TruthValue Valuation::get(std::string_view relation, std::span<const std::size_t> args) const {
  const Table& t = table(relation);
  return t.values[offset(t, args)];
}

void Valuation::set_constant(const std::string& name, std::size_t element) {
  if (element >= universe_.size()) throw EvaluationError("constant mapped outside the universe");
  constants_[name] = element;
}

std::optional<std::size_t> Valuation::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

bool Valuation::interprets(const Signature& sig) const {
  for (const auto& [name, arity] : sig.relations()) {
    auto it = relations_.find(name);
    if (it == relations_.end() || it->second.arity != arity) return false;
  }
  for (const auto& c : sig.constants()) {
    if (!constants_.contains(c)) return false;
  }
  return true;
}

nlohmann::json Valuation::to_json() const {
  nlohmann::json rels = nlohmann::json::object();
  for (const auto& [name, t] : relations_) {
    nlohmann::json rows = nlohmann::json::object();
    std::vector<std::size_t> idx(t.arity, 0);
    for (std::size_t row = 0; row < t.values.size(); ++row) {
      std::string key = "(";
      for (std::size_t i = 0; i < t.arity; ++i) {
        if (i) key += ',';
        key += universe_[idx[i]];
      }
      key += ')';
      rows[key] = t.values[row].str();
      for (std::size_t pos = t.arity; pos > 0; --pos) {
        if (++idx[pos - 1] < universe_.size()) break;
        idx[pos - 1] = 0;
      }
    }
    rels[name] = std::move(rows);
  }
  nlohmann::json consts = nlohmann::json::object();
  for (const auto& [name, e] : constants_) consts[name] = universe_[e];
  return {{"universe", universe_}, {"relations", std::move(rels)}, {"constants", std::move(consts)}};
}

namespace {

std::vector<std::string> split_tuple(const std::string& key) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')') {
    throw ParseError("tuple key must look like (a,b): '" + key + "'", 0);
  }
  std::vector<std::string> out;
  std::string inner = key.substr(1, key.size() - 2);
  if (inner.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = inner.find(',', start);
    out.push_back(inner.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (auto& s : out) {
    s.erase(0, s.find_first_not_of(' '));
    s.erase(s.find_last_not_of(' ') + 1);
  }
  return out;
}

TruthValue value_from_json(const nlohmann::json& j) {
  if (j.is_string()) return TruthValue::parse(j.get<std::string>());
  if (j.is_number_integer()) return TruthValue(j.get<std::int64_t>(), 1);
  throw ParseError("truth value must be a \"p/q\" string", 0);
}

}  // namespace

Valuation Valuation::from_json(const nlohmann::json& j) {
  try {
    Valuation v(j.at("universe").get<std::vector<std::string>>());
    if (j.contains("relations")) {
      for (const auto& [name, rows] : j.at("relations").items()) {
        std::optional<std::size_t> arity;
        for (const auto& [key, value] : rows.items()) {
          auto ids = split_tuple(key);
          if (!arity) {
            arity = ids.size();
            v.define_relation(name, *arity);
          } else if (*arity != ids.size()) {
            throw ParseError("inconsistent arity in table of '" + name + "'", 0);
          }
          std::vector<std::size_t> args;
          for (const auto& id : ids) {
            auto e = v.element(id);
            if (!e) throw ParseError("unknown element '" + id + "'", 0);
            args.push_back(*e);
          }
          v.set(name, args, value_from_json(value));
        }
        if (!arity) v.define_relation(name, 0);
      }
    }
    if (j.contains("constants")) {
      for (const auto& [name, id] : j.at("constants").items()) {
        auto e = v.element(id.get<std::string>());
        if (!e) throw ParseError("constant '" + name + "' mapped to unknown element", 0);
        v.set_constant(name, *e);
      }
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed valuation JSON: ") + e.what(), 0);
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("bad truth value: ") + e.what(), 0);
  }
}

bool operator==(const Valuation::Table& a, const Valuation::Table& b) {
  return a.arity == b.arity && a.values == b.values;
}

bool operator==(const Valuation& a, const Valuation& b) {
  return a.universe_ == b.universe_ && a.relations_ == b.relations_ && a.constants_ == b.constants_;
}

}  // namespace goedel
