#include <algorithm>
#include <bit>
#include <iterator>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "goedel/interpolation.hpp"
#include "goedel/syntax.hpp"
#include "separation_context.hpp"

namespace goedel {
namespace detail {

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::set<std::string> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

std::vector<std::string> sorted_intersection(const std::vector<std::string>& a,
                                             const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::vector<std::string> out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

SeparationContext::SeparationContext(std::vector<std::string> union_atoms,
                                     std::vector<std::string> common_atoms, bool delta,
                                     const CloneOptions& options)
    : space_(std::move(union_atoms)), common_(std::move(common_atoms)) {
  try {
    clone_ = clone_closure(common_.atoms(), delta, options);
    complete_ = clone_->saturated;
  } catch (const CloneBudgetExceeded& e) {
    clone_ = std::make_shared<CloneTable>(e.partial());
    complete_ = false;
  }
  words_ = (space_.size() + 63) / 64;
  type_words_ = (common_.size() + 63) / 64;

  std::vector<std::size_t> positions;
  for (const auto& a : common_.atoms()) positions.push_back(*space_.atom_index(a));
  const std::size_t base = common_.atom_count() + 2;
  type_of_.resize(space_.size());
  for (std::size_t i = 0; i < space_.size(); ++i) {
    std::set<std::uint8_t> interior;
    for (auto p : positions) {
      auto l = space_.level(i, p);
      if (l != 0 && l != space_.top()) interior.insert(l);
    }
    std::uint32_t index = 0;
    for (auto p : positions) {
      auto l = space_.level(i, p);
      std::uint32_t digit = l == 0                ? 0
                            : l == space_.top()   ? static_cast<std::uint32_t>(common_.top())
                                                  : static_cast<std::uint32_t>(
                                                      1 + std::distance(interior.begin(),
                                                                        interior.find(l)));
      index = index * static_cast<std::uint32_t>(base) + digit;
    }
    type_of_[i] = index;
  }

  std::set<std::vector<std::uint64_t>> seen;
  const auto ctop = common_.top();
  for (std::size_t k = 0; k < clone_->size(); ++k) {
    std::vector<std::uint64_t> mask(type_words_, 0);
    const auto& v = clone_->vectors[k];
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (v[t] == ctop) set_bit(mask, t);
    }
    if (seen.insert(mask).second) {
      masks_.insert(masks_.end(), mask.begin(), mask.end());
      mask_witness_.push_back(k);
    }
  }
}

Bits SeparationContext::all() const {
  Bits b(words_, ~std::uint64_t{0});
  if (space_.size() % 64) b.back() = (std::uint64_t{1} << (space_.size() % 64)) - 1;
  return b;
}

Bits SeparationContext::top_set(const std::vector<std::uint8_t>& column) const {
  Bits b(words_, 0);
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i] == space_.top()) set_bit(b, i);
  }
  return b;
}

Bits SeparationContext::top_set(const Formula& formula, bool remember) const {
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(formula); it != memo_.end()) return it->second;
  }
  Bits b = top_set(space_.column(formula));
  if (remember) {
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(formula, b);
  }
  return b;
}

Bits SeparationContext::models(const Theory& theory) const {
  Bits b = all();
  for (const auto& f : theory) {
    Bits t = top_set(f);
    for (std::size_t w = 0; w < words_; ++w) b[w] &= t[w];
  }
  return b;
}

std::optional<std::size_t> SeparationContext::first_separator(const Bits& t_models,
                                                              const Bits& u_models) const {
  Bits tt(type_words_, 0), ut(type_words_, 0);
  auto project = [&](const Bits& models, Bits& types) {
    for (std::size_t w = 0; w < models.size(); ++w) {
      for (std::uint64_t x = models[w]; x; x &= x - 1) {
        set_bit(types, type_of_[w * 64 + std::countr_zero(x)]);
      }
    }
  };
  project(t_models, tt);
  project(u_models, ut);
  const std::size_t n = mask_witness_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* m = masks_.data() + k * type_words_;
    bool ok = true;
    for (std::size_t w = 0; w < type_words_ && ok; ++w) {
      ok = (tt[w] & ~m[w]) == 0 && (ut[w] & m[w]) == 0;
    }
    if (ok) return mask_witness_[k];
  }
  return std::nullopt;
}

std::shared_ptr<const SeparationContext> separation_context(
    const std::vector<std::string>& union_atoms, const std::vector<std::string>& common_atoms,
    bool delta, const CloneOptions& options) {
  using Key = std::tuple<std::vector<std::string>, std::vector<std::string>, bool,
                         std::optional<std::size_t>, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SeparationContext>> cache;
  Key key{union_atoms, common_atoms, delta, options.max_depth, options.budget};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<const SeparationContext>(union_atoms, common_atoms, delta, options);
  std::lock_guard lock(mutex);
  return cache.emplace(key, ctx).first->second;
}

}  // namespace detail

namespace {

void require_propositional(const Theory& theory, const char* what) {
  for (const auto& f : theory) {
    if (!is_propositional(f)) {
      throw FragmentError(std::string(what) + " is not propositional: " + to_string(f));
    }
  }
}

std::vector<std::string> atoms_of(const Theory& theory) {
  return propositional_atoms(std::span<const Formula>(theory.formulas()));
}

}  // namespace

nlohmann::json SeparabilityCertificate::to_json() const {
  return {{"separator", to_string(separator)},
          {"t_entails", t_entails.to_json()},
          {"u_entails_not", u_entails_not.to_json()}};
}

nlohmann::json SeparationResult::to_json() const {
  static const char* names[] = {"separable", "inseparable", "inconclusive"};
  nlohmann::json j{{"status", names[static_cast<int>(status)]}};
  if (certificate) j["certificate"] = certificate->to_json();
  return j;
}

nlohmann::json Interpolant::to_json() const {
  return {{"interpolant", to_string(theta)},
          {"phi_entails", phi_entails.to_json()},
          {"entails_psi", entails_psi.to_json()}};
}

std::optional<SeparabilityCertificate> separates(const Formula& theta, const Theory& t,
                                                 const Theory& u) {
  require_propositional(t, "T");
  require_propositional(u, "U");
  if (!is_propositional(theta)) throw FragmentError("separator is not propositional");
  auto common = detail::sorted_intersection(atoms_of(t), atoms_of(u));
  for (const auto& a : propositional_atoms(theta)) {
    if (!std::binary_search(common.begin(), common.end(), a)) {
      throw PreconditionError("separator atom '" + a + "' is outside the common language");
    }
  }
  auto te = one_entails(t, theta);
  if (!te.holds) return std::nullopt;
  auto ue = one_entails(u, Formula::tilde(theta));
  if (!ue.holds) return std::nullopt;
  return SeparabilityCertificate{theta, std::move(te), std::move(ue)};
}

SeparationResult find_separator(const Theory& t, const Theory& u, bool g_only,
                                const CloneOptions& options) {
  require_propositional(t, "T");
  require_propositional(u, "U");
  auto ta = atoms_of(t), ua = atoms_of(u);
  auto ctx = detail::separation_context(detail::sorted_union(ta, ua),
                                        detail::sorted_intersection(ta, ua), !g_only, options);
  SeparationResult result;
  auto k = ctx->first_separator(ctx->models(t), ctx->models(u));
  if (!k) {
    result.status = ctx->complete() ? SeparationStatus::Inseparable : SeparationStatus::Inconclusive;
    return result;
  }
  auto cert = separates(ctx->clone().witnesses[*k], t, u);
  if (!cert) {
    throw InvariantViolation("clone separator " + to_string(ctx->clone().witnesses[*k]) +
                             " failed its entailment checks");
  }
  result.status = SeparationStatus::Separable;
  result.certificate = std::move(cert);
  return result;
}

Interpolant interpolate(const Formula& phi, const Formula& psi, bool g_only,
                        const CloneOptions& options) {
  if (!is_propositional(phi) || !is_propositional(psi)) {
    throw FragmentError("interpolation needs propositional formulas");
  }
  auto entailment = one_entails(Theory{phi}, psi);
  if (!entailment.holds) {
    throw PreconditionError("no interpolant: φ does not entail ψ; countermodel " +
                            entailment.witness->to_json().dump());
  }
  auto finish = [&](const Formula& theta, EntailmentVerdict phi_entails) {
    auto entails_psi = one_entails(Theory{theta}, psi);
    if (!phi_entails.holds || !entails_psi.holds || (g_only && !is_g_formula(theta))) {
      throw InvariantViolation("interpolant check failed for " + to_string(theta));
    }
    return Interpolant{theta, std::move(phi_entails), std::move(entails_psi)};
  };

  auto sep = find_separator(Theory{phi}, Theory{Formula::tilde(psi)}, g_only, options);
  switch (sep.status) {
    case SeparationStatus::Separable:
      return finish(sep.certificate->separator, sep.certificate->t_entails);
    case SeparationStatus::Inseparable:
      if (g_only && !(is_g_formula(phi) && is_g_formula(psi))) {
        throw PreconditionError("no Δ-free interpolant exists for inputs containing Δ");
      }
      throw InvariantViolation("φ entails ψ but no separator of {φ} and {~ψ} exists");
    case SeparationStatus::Inconclusive:
      break;
  }
  // The clone over the common atoms is out of reach; one of the inputs is
  // still an interpolant when its atoms are all shared.
  auto pa = propositional_atoms(phi), qa = propositional_atoms(psi);
  auto common = detail::sorted_intersection(pa, qa);
  if (pa == common && (!g_only || is_g_formula(phi))) {
    return finish(phi, one_entails(Theory{phi}, phi));
  }
  if (qa == common && (!g_only || is_g_formula(psi))) {
    return finish(psi, std::move(entailment));
  }
  throw BudgetExceeded("clone closure over " + std::to_string(common.size()) +
                       " common atoms exceeded its budget");
}

std::pair<Formula, Formula> abstract_constants(const Formula& phi, const Formula& psi) {
  auto cp = constants_of(phi), cq = constants_of(psi);
  Signature taken = language_of(std::vector<Formula>{phi, psi});
  // Keep clear of every variable already used in either formula.
  std::set<std::string> used;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    switch (f.kind()) {
      case Connective::Atom:
        for (const auto& t : f.terms()) used.insert(t.name);
        break;
      case Connective::Bottom:
        break;
      case Connective::And:
      case Connective::Or:
      case Connective::Implies:
        collect(f.lhs());
        collect(f.rhs());
        break;
      case Connective::Delta:
        collect(f.body());
        break;
      case Connective::Forall:
      case Connective::Exists:
        used.insert(f.variable());
        collect(f.body());
        break;
    }
  };
  collect(phi);
  collect(psi);
  std::size_t next = 0;
  auto fresh = [&] {
    for (;; ++next) {
      auto name = pool_variable(next, taken);
      if (!used.contains(name)) {
        used.insert(name);
        return name;
      }
    }
  };

  auto abstract = [&](const Formula& f, const std::set<std::string>& own,
                      const std::set<std::string>& other, bool existential) {
    std::vector<std::string> vars;
    Formula body = f;
    for (const auto& c : own) {
      if (other.contains(c)) continue;
      vars.push_back(fresh());
      body = abstract_constant(body, c, vars.back());
    }
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = existential ? Formula::exists(*it, body) : Formula::forall(*it, body);
    }
    return body;
  };
  Formula a = abstract(phi, cp, cq, true);
  Formula b = abstract(psi, cq, cp, false);
  return {a, b};
}

}  // namespace goedel
