#include "sulcheck/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sulcheck/update.hpp"

namespace sulcheck {

// --- QBF ---------------------------------------------------------------------

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f->kind == FKind::atom)
    out.insert(f->atom);
  for (const auto& k : f->kids)
    collect_atoms(k, out);
}

void require_propositional(const Formula& f) {
  if (is_path_kind(f->kind) || is_strategic_kind(f->kind))
    throw Error(Errc::syntax, "QBF matrix must be propositional");
  for (const auto& k : f->kids)
    require_propositional(k);
}

bool eval_prop(const Formula& f, const std::map<std::string, bool>& env) {
  switch (f->kind) {
  case FKind::konst_true: return true;
  case FKind::konst_false: return false;
  case FKind::atom: {
    auto it = env.find(f->atom);
    if (it == env.end())
      throw Error(Errc::syntax, "free variable '" + f->atom + "' in QBF matrix");
    return it->second;
  }
  case FKind::negation: return !eval_prop(f->kids[0], env);
  case FKind::conj: return eval_prop(f->kids[0], env) && eval_prop(f->kids[1], env);
  case FKind::disj: return eval_prop(f->kids[0], env) || eval_prop(f->kids[1], env);
  case FKind::implies: return !eval_prop(f->kids[0], env) || eval_prop(f->kids[1], env);
  case FKind::iff: return eval_prop(f->kids[0], env) == eval_prop(f->kids[1], env);
  default: throw Error(Errc::syntax, "QBF matrix must be propositional");
  }
}

bool qbf_rec(const QbfInstance& q, size_t at, std::map<std::string, bool>& env) {
  if (at == q.prefix.size())
    return eval_prop(q.matrix, env);
  const auto& [universal, var] = q.prefix[at];
  env[var] = false;
  bool v0 = qbf_rec(q, at + 1, env);
  env[var] = true;
  bool v1 = qbf_rec(q, at + 1, env);
  env.erase(var);
  return universal ? (v0 && v1) : (v0 || v1);
}

} // namespace

QbfInstance parse_qbf(std::string_view text) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::syntax, "QBF needs the form '<prefix> : <matrix>'", 1, 1);
  std::istringstream prefix_in{std::string(text.substr(0, colon))};
  QbfInstance q;
  std::string word;
  std::set<std::string> seen;
  while (prefix_in >> word) {
    bool universal;
    if (word == "forall")
      universal = true;
    else if (word == "exists")
      universal = false;
    else
      throw Error(Errc::syntax, "expected 'forall' or 'exists', got '" + word + "'", 1, 1);
    std::string var;
    if (!(prefix_in >> var))
      throw Error(Errc::syntax, "quantifier without a variable", 1, 1);
    if (!seen.insert(var).second)
      throw Error(Errc::syntax, "variable '" + var + "' quantified twice", 1, 1);
    q.prefix.emplace_back(universal, var);
  }
  q.matrix = parse_formula(text.substr(colon + 1));
  require_propositional(q.matrix);
  std::set<std::string> used;
  collect_atoms(q.matrix, used);
  for (const auto& a : used)
    if (!seen.count(a))
      throw Error(Errc::syntax, "free variable '" + a + "' in QBF matrix");
  return q;
}

std::string print_qbf(const QbfInstance& q) {
  std::ostringstream out;
  for (const auto& [universal, var] : q.prefix)
    out << (universal ? "forall " : "exists ") << var << ' ';
  out << ": " << print_formula(q.matrix);
  return out.str();
}

bool qbf_eval(const QbfInstance& q) {
  std::map<std::string, bool> env;
  return qbf_rec(q, 0, env);
}

QbfInstance dualize_qbf(const QbfInstance& q) {
  QbfInstance out;
  for (const auto& [universal, var] : q.prefix)
    out.prefix.emplace_back(!universal, var);
  out.matrix = fml::negation(q.matrix);
  return out;
}

// --- CTL labelling -------------------------------------------------------------

namespace {

using Bits = std::vector<bool>;

Bits bits_not(Bits a) {
  for (size_t i = 0; i < a.size(); ++i)
    a[i] = !a[i];
  return a;
}

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] && b[i];
  return out;
}

Bits bits_or(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] || b[i];
  return out;
}

// states with some successor inside `target`
Bits pre_exists(const Model& m, const Bits& target) {
  Bits out(m.state_count(), false);
  for (const Edge& e : m.edges())
    if (target[e.dst])
      out[e.src] = true;
  return out;
}

Bits eu_set(const Model& m, const Bits& a, const Bits& b) {
  Bits out = b;
  for (bool changed = true; changed;) {
    changed = false;
    Bits p = pre_exists(m, out);
    for (size_t s = 0; s < out.size(); ++s)
      if (!out[s] && a[s] && p[s]) {
        out[s] = true;
        changed = true;
      }
  }
  return out;
}

Bits eg_set(const Model& m, const Bits& a) {
  Bits out = a;
  for (bool changed = true; changed;) {
    changed = false;
    Bits p = pre_exists(m, out);
    for (size_t s = 0; s < out.size(); ++s)
      if (out[s] && !p[s]) {
        out[s] = false;
        changed = true;
      }
  }
  return out;
}

Bits sat(const Model& m, const CtlFormula& f) {
  const size_t n = m.state_count();
  switch (f->kind) {
  case CKind::konst_true: return Bits(n, true);
  case CKind::konst_false: return Bits(n, false);
  case CKind::atom: {
    Bits out(n, false);
    for (StateId s = 0; s < n; ++s)
      out[s] = m.holds(f->atom, s);
    return out;
  }
  case CKind::negation: return bits_not(sat(m, f->kids[0]));
  case CKind::conj: return bits_and(sat(m, f->kids[0]), sat(m, f->kids[1]));
  case CKind::disj: return bits_or(sat(m, f->kids[0]), sat(m, f->kids[1]));
  case CKind::implies: return bits_or(bits_not(sat(m, f->kids[0])), sat(m, f->kids[1]));
  case CKind::iff: {
    Bits a = sat(m, f->kids[0]), b = sat(m, f->kids[1]);
    Bits out(n);
    for (size_t s = 0; s < n; ++s)
      out[s] = a[s] == b[s];
    return out;
  }
  case CKind::ex: return pre_exists(m, sat(m, f->kids[0]));
  case CKind::ax: return bits_not(pre_exists(m, bits_not(sat(m, f->kids[0]))));
  case CKind::ef: return eu_set(m, Bits(n, true), sat(m, f->kids[0]));
  case CKind::eg: return eg_set(m, sat(m, f->kids[0]));
  case CKind::af: return bits_not(eg_set(m, bits_not(sat(m, f->kids[0]))));
  case CKind::ag: return bits_not(eu_set(m, Bits(n, true), bits_not(sat(m, f->kids[0]))));
  case CKind::eu: return eu_set(m, sat(m, f->kids[0]), sat(m, f->kids[1]));
  case CKind::au: {
    // A(a U b) = !(E(!b U (!a & !b)) | EG !b)
    Bits nb = bits_not(sat(m, f->kids[1]));
    Bits na = bits_not(sat(m, f->kids[0]));
    return bits_not(bits_or(eu_set(m, nb, bits_and(na, nb)), eg_set(m, nb)));
  }
  case CKind::ar: {
    // A(a R b) = !E(!a U !b)
    Bits na = bits_not(sat(m, f->kids[0]));
    Bits nb = bits_not(sat(m, f->kids[1]));
    return bits_not(eu_set(m, na, nb));
  }
  case CKind::er: {
    // E(a R b) = !A(!a U !b)
    CtlFormula inner = ctl::au(ctl::negation(f->kids[0]), ctl::negation(f->kids[1]));
    return bits_not(sat(m, inner));
  }
  }
  throw Error(Errc::syntax, "malformed CTL node");
}

} // namespace

bool ctl_check(const Model& m, StateId s, const CtlFormula& f) {
  if (s >= m.state_count())
    throw Error(Errc::undeclared_state, "state index out of range");
  return sat(m, f)[s];
}

// --- memoryless brute force for the next-time fragment --------------------------

namespace {

uint64_t max_budget_used(const Formula& f) {
  uint64_t b = 0;
  if (f->kind == FKind::strat_d)
    b = f->demon_budget;
  else if (f->kind == FKind::strat_a)
    b = f->angel_budget;
  else if (f->kind == FKind::strat_u)
    b = std::max(f->angel_budget, f->demon_budget);
  for (const auto& k : f->kids)
    b = std::max(b, max_budget_used(k));
  return b;
}

// Full powerset of the present edges, filtered by cost and seriality.
std::vector<std::vector<Edge>> all_removal_sets(const Model& m, uint64_t budget) {
  const auto& edges = m.edges();
  std::vector<std::vector<Edge>> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << edges.size()); ++mask) {
    uint64_t cost = 0;
    std::vector<Edge> set;
    std::vector<uint32_t> outdeg(m.state_count(), 0);
    for (const Edge& e : edges)
      ++outdeg[e.src];
    bool ok = true;
    for (size_t i = 0; i < edges.size() && ok; ++i) {
      if (!(mask & (uint64_t{1} << i)))
        continue;
      cost = checked_add(cost, m.cost(edges[i]));
      set.push_back(edges[i]);
      if (--outdeg[edges[i].src] == 0)
        ok = false;
    }
    if (ok && cost <= budget)
      out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::vector<Edge>> all_addition_sets(const Model& m, uint64_t budget) {
  std::vector<Edge> absent;
  for (StateId a = 0; a < m.state_count(); ++a)
    for (StateId b = 0; b < m.state_count(); ++b)
      if (!m.has_edge(Edge{a, b}))
        absent.push_back(Edge{a, b});
  std::vector<std::vector<Edge>> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << absent.size()); ++mask) {
    uint64_t cost = 0;
    std::vector<Edge> set;
    for (size_t i = 0; i < absent.size(); ++i) {
      if (!(mask & (uint64_t{1} << i)))
        continue;
      cost = checked_add(cost, m.cost(absent[i]));
      set.push_back(absent[i]);
    }
    if (cost <= budget)
      out.push_back(std::move(set));
  }
  return out;
}

Model updated_model(const Model& m, const std::vector<Edge>& add, const std::vector<Edge>& rem) {
  std::vector<Edge> rest;
  std::set_difference(m.edges().begin(), m.edges().end(), rem.begin(), rem.end(),
                      std::back_inserter(rest));
  std::vector<Edge> all;
  std::set_union(rest.begin(), rest.end(), add.begin(), add.end(), std::back_inserter(all));
  return m.with_edges(std::move(all));
}

bool bf(const PointedModel& pm, const Formula& f);

template <typename Range, typename Pred>
bool quantify(bool exists, const Range& range, Pred pred) {
  for (const auto& item : range) {
    bool v = pred(item);
    if (exists && v)
      return true;
    if (!exists && !v)
      return false;
  }
  return !exists;
}

bool bf_strat(const PointedModel& pm, const Formula& f) {
  const Formula& sub = f->kids[0]->kids[0];
  const Model& m = pm.model;
  const std::vector<Edge> none;
  bool dual = f->dual;

  auto traveller = [&](const Model& next) {
    return quantify(dual, successors(next, pm.point), [&](StateId t) {
      return bf(PointedModel{next, t}, sub);
    });
  };

  if (f->kind == FKind::strat_d) {
    return quantify(!dual, all_removal_sets(m, f->demon_budget), [&](const std::vector<Edge>& b) {
      return traveller(updated_model(m, none, b));
    });
  }
  if (f->kind == FKind::strat_a) {
    return quantify(!dual, all_addition_sets(m, f->angel_budget), [&](const std::vector<Edge>& a) {
      return traveller(updated_model(m, a, none));
    });
  }

  auto adds = all_addition_sets(m, f->angel_budget);
  auto rems = all_removal_sets(m, f->demon_budget);
  const bool ca = f->coalition_angel, cd = f->coalition_demon;
  bool outer = (ca || cd) ? !dual : dual;
  bool inner = dual;
  if (ca && !cd) {
    return quantify(outer, adds, [&](const std::vector<Edge>& a) {
      return quantify(inner, rems, [&](const std::vector<Edge>& b) {
        return traveller(updated_model(m, a, b));
      });
    });
  }
  if (cd && !ca) {
    return quantify(outer, rems, [&](const std::vector<Edge>& b) {
      return quantify(inner, adds, [&](const std::vector<Edge>& a) {
        return traveller(updated_model(m, a, b));
      });
    });
  }
  // both or neither: a single quantifier over joint choices
  return quantify(outer, adds, [&](const std::vector<Edge>& a) {
    return quantify(outer, rems, [&](const std::vector<Edge>& b) {
      return traveller(updated_model(m, a, b));
    });
  });
}

bool bf(const PointedModel& pm, const Formula& f) {
  switch (f->kind) {
  case FKind::konst_true: return true;
  case FKind::konst_false: return false;
  case FKind::atom: return pm.model.holds(f->atom, pm.point);
  case FKind::negation: return !bf(pm, f->kids[0]);
  case FKind::conj: return bf(pm, f->kids[0]) && bf(pm, f->kids[1]);
  case FKind::disj: return bf(pm, f->kids[0]) || bf(pm, f->kids[1]);
  case FKind::implies: return !bf(pm, f->kids[0]) || bf(pm, f->kids[1]);
  case FKind::iff: return bf(pm, f->kids[0]) == bf(pm, f->kids[1]);
  case FKind::strat_d:
  case FKind::strat_a:
  case FKind::strat_u: return bf_strat(pm, f);
  default: throw Error(Errc::fragment, "unexpected path node");
  }
}

} // namespace

bool brute_force_next(const PointedModel& pm, const Formula& f, const BruteForceLimits& lim) {
  validate_formula(f);
  if (!is_next_time_fragment(f))
    throw Error(Errc::fragment, "formula is outside the next-time fragment");
  if (pm.model.state_count() > lim.max_states)
    throw Error(Errc::size_bound, "model exceeds the brute-force size bound");
  if (max_budget_used(f) > lim.max_budget)
    throw Error(Errc::size_bound, "budget exceeds the brute-force bound");
  return bf(pm, f);
}

} // namespace sulcheck
