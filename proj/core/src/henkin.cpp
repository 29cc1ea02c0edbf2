#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "goedel/interpolation.hpp"
#include "goedel/semantics.hpp"
#include "goedel/syntax.hpp"
#include "separation_context.hpp"

namespace goedel {

namespace {

const char* side_name(Side s) { return s == Side::T ? "T" : "U"; }

bool propositional(const std::vector<Formula>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const Formula& f) { return is_propositional(f); });
}

std::vector<Formula> concat(const Theory& t, const std::vector<Formula>& stream) {
  std::vector<Formula> out(t.begin(), t.end());
  out.insert(out.end(), stream.begin(), stream.end());
  return out;
}

HenkinTrace henkin_propositional(const Theory& t, const Theory& u,
                                 const std::vector<Formula>& t_stream,
                                 const std::vector<Formula>& u_stream,
                                 const HenkinOptions& options) {
  auto lt = propositional_atoms(concat(t, t_stream));
  auto lu = propositional_atoms(concat(u, u_stream));
  auto ctx = detail::separation_context(detail::sorted_union(lt, lu),
                                        detail::sorted_intersection(lt, lu), !options.g_only,
                                        options.clone);
  auto separator = [&](const detail::Bits& a, const detail::Bits& b) -> std::optional<Formula> {
    if (auto k = ctx->first_separator(a, b)) return ctx->clone().witnesses[*k];
    if (!ctx->complete()) {
      throw BudgetExceeded("inseparability undecided: clone over the common atoms is incomplete");
    }
    return std::nullopt;
  };

  detail::Bits tm = ctx->models(t), um = ctx->models(u);
  if (auto s = separator(tm, um)) {
    throw PreconditionError("T and U are separable, e.g. by " + to_string(*s));
  }

  HenkinTrace trace;
  trace.t = t;
  trace.u = u;
  const detail::Bits all = ctx->all();
  const std::size_t rounds = std::max(t_stream.size(), u_stream.size());
  for (std::size_t m = 0; m < rounds; ++m) {
    for (Side side : {Side::T, Side::U}) {
      const auto& stream = side == Side::T ? t_stream : u_stream;
      if (m >= stream.size()) continue;
      const Formula& c = stream[m];
      detail::Bits& own = side == Side::T ? tm : um;
      const detail::Bits& other = side == Side::T ? um : tm;
      auto check = [&](const detail::Bits& mine) {
        return side == Side::T ? separator(mine, other) : separator(other, mine);
      };

      detail::Bits top = ctx->top_set(c, true);
      detail::Bits pos(own.size()), neg(own.size());
      for (std::size_t w = 0; w < own.size(); ++w) {
        pos[w] = own[w] & top[w];
        neg[w] = own[w] & ~top[w] & all[w];
      }
      bool positive = !check(pos).has_value();
      if (!positive && check(neg)) {
        throw InvariantViolation(std::string("both choices separate at step ") +
                                 std::to_string(m) + " on side " + side_name(side) + " for " +
                                 to_string(c));
      }
      own = positive ? pos : neg;
      Formula added = positive ? c : Formula::tilde(c);
      if (!positive) ctx->top_set(added, true);
      (side == Side::T ? trace.t : trace.u).add(added);
      trace.steps.push_back(HenkinStep{m, side, c, added, positive, std::nullopt, true});
    }
  }
  return trace;
}

// First-order inseparability by bounded search for a separator among the
// closed formulas of the common language up to a small depth.
std::optional<Formula> fo_separator(const Theory& t, const Theory& u,
                                    const HenkinOptions& options) {
  Signature common = language_of(t).intersected(language_of(u));
  for (const auto& theta :
       enumerate_closed_formulas(common, options.fo_separator_depth, !options.g_only, 100'000)) {
    if (fo_check_bounded(t, theta, options.fo_search).holds &&
        fo_check_bounded(u, Formula::tilde(theta), options.fo_search).holds) {
      return theta;
    }
  }
  return std::nullopt;
}

HenkinTrace henkin_first_order(const Theory& t, const Theory& u,
                               const std::vector<Formula>& t_stream,
                               const std::vector<Formula>& u_stream,
                               const HenkinOptions& options) {
  if (auto s = fo_separator(t, u, options)) {
    throw PreconditionError("T and U are separable, e.g. by " + to_string(*s));
  }
  HenkinTrace trace;
  trace.t = t;
  trace.u = u;
  trace.bounded = true;
  std::set<std::string> fresh_taken;
  const std::size_t rounds = std::max(t_stream.size(), u_stream.size());
  for (std::size_t m = 0; m < rounds; ++m) {
    for (Side side : {Side::T, Side::U}) {
      const auto& stream = side == Side::T ? t_stream : u_stream;
      if (m >= stream.size()) continue;
      const Formula& c = stream[m];
      Theory& own = side == Side::T ? trace.t : trace.u;
      const Theory& other = side == Side::T ? trace.u : trace.t;
      auto check = [&](const Theory& mine) {
        return side == Side::T ? fo_separator(mine, other, options)
                               : fo_separator(other, mine, options);
      };

      HenkinStep step{m, side, c, c, true, std::nullopt, true};
      Theory next = own.with(c);
      if (check(next)) {
        step.positive = false;
        step.added = Formula::tilde(c);
        next = own.with(step.added);
        if (c.is(Connective::Forall)) {
          std::vector<Formula> everything = concat(trace.t, t_stream);
          auto rest = concat(trace.u, u_stream);
          everything.insert(everything.end(), rest.begin(), rest.end());
          auto k = fresh_constant(language_of(everything), fresh_taken);
          fresh_taken.insert(k);
          step.witness = Formula::tilde(substitute(c.body(), c.variable(), k));
          next.add(*step.witness);
        }
        if (check(next)) {
          throw InvariantViolation(std::string("both choices separate at step ") +
                                   std::to_string(m) + " on side " + side_name(side) +
                                   " for " + to_string(c) + " (bounded checks)");
        }
      }
      own = std::move(next);
      trace.steps.push_back(std::move(step));
    }
  }
  return trace;
}

}  // namespace

nlohmann::json HenkinTrace::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json j{{"m", s.m},
                     {"side", side_name(s.side)},
                     {"candidate", to_string(s.candidate)},
                     {"added", to_string(s.added)},
                     {"positive", s.positive},
                     {"inseparable_after", s.inseparable_after}};
    if (s.witness) j["witness"] = to_string(*s.witness);
    steps_json.push_back(std::move(j));
  }
  auto list = [](const Theory& th) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& f : th) a.push_back(to_string(f));
    return a;
  };
  return {{"steps", steps_json}, {"t", list(t)}, {"u", list(u)}, {"bounded", bounded}};
}

HenkinTrace henkin_extend(const Theory& t, const Theory& u, const std::vector<Formula>& t_stream,
                          const std::vector<Formula>& u_stream, const HenkinOptions& options) {
  if (t_stream.size() > options.budget || u_stream.size() > options.budget) {
    throw BudgetExceeded("enumeration longer than the Henkin budget of " +
                         std::to_string(options.budget) + " formulas per side");
  }
  if (propositional(concat(t, t_stream)) && propositional(concat(u, u_stream))) {
    return henkin_propositional(t, u, t_stream, u_stream, options);
  }
  return henkin_first_order(t, u, t_stream, u_stream, options);
}

HenkinTrace henkin_extend(const Theory& t, const Theory& u, const std::vector<Formula>& stream,
                          const HenkinOptions& options) {
  Signature lt = language_of(t), lu = language_of(u);
  std::vector<Formula> ts, us;
  for (const auto& f : stream) {
    Signature lf = language_of(f);
    if (lf.subset_of(lt)) ts.push_back(f);
    if (lf.subset_of(lu)) us.push_back(f);
  }
  return henkin_extend(t, u, ts, us, options);
}

std::vector<Formula> default_stream(const std::vector<std::string>& atoms) {
  CloneOptions options;
  options.max_depth = 2;
  return clone_closure(atoms, true, options)->witnesses;
}

// ---------------------------------------------------------------------------
// Countermodel synthesis

nlohmann::json PipelineTrace::to_json() const {
  nlohmann::json embedding = nlohmann::json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    embedding.push_back({{"element", amalgam.chain.at(i)}, {"value", h[i].str()}});
  }
  return {{"henkin", henkin.to_json()},
          {"t_model", t_model.to_json()},
          {"u_model", u_model.to_json()},
          {"b0", b0.to_json()},
          {"b1", b1.to_json()},
          {"b2", b2.to_json()},
          {"f1", f1.to_json()},
          {"f2", f2.to_json()},
          {"amalgam", amalgam.to_json()},
          {"embedding", embedding}};
}

nlohmann::json CountermodelResult::to_json() const {
  return {{"valuation", valuation.to_json()}, {"bounded", bounded}, {"trace", trace.to_json()}};
}

namespace {

std::uint8_t level_at(const AssignmentSpace& space, std::size_t i, const Formula& f) {
  switch (f.kind()) {
    case Connective::Bottom:
      return 0;
    case Connective::Atom:
      return space.level(i, *space.atom_index(f.relation()));
    case Connective::And:
      return std::min(level_at(space, i, f.lhs()), level_at(space, i, f.rhs()));
    case Connective::Or:
      return std::max(level_at(space, i, f.lhs()), level_at(space, i, f.rhs()));
    case Connective::Implies: {
      auto a = level_at(space, i, f.lhs()), b = level_at(space, i, f.rhs());
      return a <= b ? space.top() : b;
    }
    case Connective::Delta:
      return level_at(space, i, f.body()) == space.top() ? space.top() : 0;
    case Connective::Forall:
    case Connective::Exists:
      break;
  }
  throw FragmentError("quantifier in propositional evaluation");
}

class FormulaList {
 public:
  void add(const Formula& f) {
    if (seen_.insert(f).second) items_.push_back(f);
  }
  const std::vector<Formula>& items() const { return items_; }

 private:
  std::unordered_set<Formula> seen_;
  std::vector<Formula> items_;
};

}  // namespace

CountermodelResult countermodel_synthesize(const Formula& phi, const Formula& psi, bool g_only,
                                           const CountermodelOptions& options) {
  if (!is_propositional(phi) || !is_propositional(psi)) {
    throw FragmentError("countermodel synthesis needs propositional formulas");
  }
  if (one_entails(Theory{phi}, psi).holds) {
    throw PreconditionError("φ entails ψ, so {φ} and {~ψ} are separable");
  }
  const auto pa = propositional_atoms(phi), qa = propositional_atoms(psi);
  const auto common = detail::sorted_intersection(pa, qa);

  HenkinOptions henkin_options = options.henkin;
  henkin_options.g_only = g_only;
  HenkinTrace henkin = henkin_extend(Theory{phi}, Theory{Formula::tilde(psi)}, default_stream(pa),
                                     default_stream(qa), henkin_options);

  // Read off models of the final theories with the same common type.
  AssignmentSpace space(detail::sorted_union(pa, qa));
  auto ctx = detail::separation_context(space.atoms(), common, !g_only, henkin_options.clone);
  auto tm = ctx->models(henkin.t), um = ctx->models(henkin.u);
  std::optional<std::size_t> v1, v2;
  for (std::size_t i = 0; i < space.size() && !v1; ++i) {
    if (detail::test_bit(tm, i)) v1 = i;
  }
  if (!v1) throw InvariantViolation("final T has no model");
  for (std::size_t i = 0; i < space.size() && !v2; ++i) {
    if (detail::test_bit(um, i) && ctx->type_of(i) == ctx->type_of(*v1)) v2 = i;
  }
  if (!v2) throw InvariantViolation("final T and U disagree on the common atoms");

  // Traced formulas of each side, plus the common ones on both sides.
  auto keep = [&](const Formula& f) { return !g_only || is_g_formula(f); };
  FormulaList t_side, u_side, shared;
  auto collect = [&](FormulaList& list, const Formula& head, const std::vector<std::string>& atoms,
                     const Theory& final_theory, Side side) {
    list.add(head);
    for (const auto& a : atoms) list.add(Formula::atom(a));
    for (const auto& s : henkin.steps) {
      if (s.side == side) list.add(s.candidate);
    }
    for (const auto& f : final_theory) list.add(f);
  };
  collect(t_side, phi, pa, henkin.t, Side::T);
  collect(u_side, psi, qa, henkin.u, Side::U);
  std::function<bool(const Formula&)> is_common = [&](const Formula& f) {
    switch (f.kind()) {
      case Connective::Atom:
        return std::binary_search(common.begin(), common.end(), f.relation());
      case Connective::And:
      case Connective::Or:
      case Connective::Implies:
        return is_common(f.lhs()) && is_common(f.rhs());
      case Connective::Delta:
        return is_common(f.body());
      default:
        return true;
    }
  };
  for (const auto* list : {&t_side, &u_side}) {
    for (const auto& f : list->items()) {
      if (keep(f) && is_common(f)) shared.add(f);
    }
  }

  auto chain = [&](const FormulaList& own, bool with_shared, std::size_t assignment) {
    std::vector<Formula> fs;
    std::vector<TruthValue> vals;
    auto push = [&](const Formula& f) {
      if (!keep(f)) return;
      fs.push_back(f);
      vals.push_back(space.chain().value(level_at(space, assignment, f)));
    };
    for (const auto& f : own.items()) push(f);
    if (with_shared) {
      for (const auto& f : shared.items()) push(f);
    }
    return build_chain_from_values(fs, vals, g_only);
  };
  LindChain b0 = chain(shared, false, *v1);
  LindChain b1 = chain(t_side, true, *v1);
  LindChain b2 = chain(u_side, true, *v2);
  BoundedChain c0 = b0.as_bounded_chain(), c1 = b1.as_bounded_chain(),
               c2 = b2.as_bounded_chain();

  std::map<std::string, std::string> m1, m2;
  for (std::size_t k = 0; k < b0.size(); ++k) {
    const Formula& rep = b0.representative(k);
    auto i1 = b1.class_with_value(space.chain().value(level_at(space, *v1, rep)));
    auto i2 = b2.class_with_value(space.chain().value(level_at(space, *v2, rep)));
    if (!i1 || !i2) throw InvariantViolation("common class missing from B1 or B2");
    m1[c0.at(k)] = c1.at(*i1);
    m2[c0.at(k)] = c2.at(*i2);
  }
  LinHom f1 = LinHom::from_map(c0, c1, m1);
  LinHom f2 = LinHom::from_map(c0, c2, m2);
  if (!validate_lin_hom(f1) || !validate_lin_hom(f2)) {
    throw InvariantViolation("B0 does not embed into B1 and B2");
  }
  AmalgamResult amalgam = amalgamate(c0, c1, c2, f1, f2);
  std::vector<TruthValue> h = embed_into_unit(amalgam.chain);

  std::map<std::string, TruthValue> values;
  for (const auto& a : pa) {
    auto cls = b1.class_of(Formula::atom(a));
    values[a] = h[amalgam.g1.image[*cls]];
  }
  for (const auto& a : qa) {
    auto cls = b2.class_of(Formula::atom(a));
    TruthValue x = h[amalgam.g2.image[*cls]];
    if (auto it = values.find(a); it != values.end() && it->second != x) {
      throw InvariantViolation("shared atom '" + a + "' gets different values from g1 and g2");
    }
    values[a] = x;
  }
  Valuation v = Valuation::propositional(values);
  if (!evaluate(v, phi).is_one() || evaluate(v, psi).is_one()) {
    throw InvariantViolation("synthesized valuation is not a countermodel");
  }

  PipelineTrace trace{std::move(henkin),
                      space.valuation(*v1),
                      space.valuation(*v2),
                      std::move(b0),
                      std::move(b1),
                      std::move(b2),
                      std::move(f1),
                      std::move(f2),
                      std::move(amalgam),
                      std::move(h)};
  return CountermodelResult{std::move(v), std::move(trace), false};
}

}  // namespace goedel
