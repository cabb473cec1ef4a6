#include "sulcheck/reduction.hpp"

#include <algorithm>
#include <functional>

namespace sulcheck {

namespace {

Formula substitute_atoms(const Formula& f, const std::map<std::string, Formula>& repl) {
  if (f->kind == FKind::atom) {
    auto it = repl.find(f->atom);
    if (it == repl.end())
      throw Error(Errc::syntax, "matrix variable '" + f->atom + "' is not quantified");
    return it->second;
  }
  auto n = std::make_shared<FormulaNode>(*f);
  for (auto& k : n->kids)
    k = substitute_atoms(k, repl);
  return n;
}

Formula conj_all(std::vector<Formula> parts) {
  if (parts.empty())
    return fml::top();
  Formula out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i)
    out = fml::conj(std::move(out), parts[i]);
  return out;
}

struct ReductionBits {
  // one-step possibility operator of the flavor in force
  std::function<Formula(Formula)> dia;
  // the quantifier-simulating operators
  std::function<Formula(Formula)> forall_step;
  std::function<Formula(Formula)> exists_step;
  bool reachable_when_unset; // SDL: untouched variables stay reachable
};

Reduction build_reduction(const QbfInstance& q, const ReductionBits& bits, Model model) {
  const size_t n = q.prefix.size();
  if (n == 0)
    throw Error(Errc::syntax, "QBF instance has no quantified variables");

  auto dd = [&](const std::string& atom) { return bits.dia(bits.dia(fml::atom(atom))); };
  auto pos_atom = [&](size_t i) { return q.prefix[i - 1].second + "^1"; };
  auto neg_atom = [&](size_t i) { return q.prefix[i - 1].second + "^0"; };

  auto chosen = [&](size_t k) {
    std::vector<Formula> parts;
    for (size_t i = 1; i <= k; ++i)
      parts.push_back(fml::iff(dd(neg_atom(i)), fml::negation(dd(pos_atom(i)))));
    for (size_t i = k + 1; i <= n; ++i) {
      if (bits.reachable_when_unset)
        parts.push_back(fml::conj(dd(neg_atom(i)), dd(pos_atom(i))));
      else
        parts.push_back(fml::conj(fml::negation(dd(neg_atom(i))), fml::negation(dd(pos_atom(i)))));
    }
    return conj_all(std::move(parts));
  };

  std::map<std::string, Formula> repl;
  for (size_t i = 1; i <= n; ++i)
    repl[q.prefix[i - 1].second] = dd(pos_atom(i));
  Formula body = substitute_atoms(q.matrix, repl);

  // innermost quantifier first; the outermost operator guards chosen_1
  for (size_t j = n; j >= 1; --j) {
    if (q.prefix[j - 1].first)
      body = bits.forall_step(fml::implies(chosen(j), std::move(body)));
    else
      body = bits.exists_step(fml::conj(chosen(j), std::move(body)));
    if (j == 1)
      break;
  }

  StateId point = model.id_of("s");
  return Reduction{PointedModel{std::move(model), point}, std::move(body)};
}

Model reduction_model(const QbfInstance& q, bool outward_spokes, uint64_t hub_loop_cost) {
  const size_t n = q.prefix.size();
  std::vector<std::string> states{"s"};
  std::vector<std::pair<std::string, std::string>> edges{{"s", "s"}};
  std::map<std::string, std::vector<std::string>> valuation;
  for (size_t i = 1; i <= 2 * n; ++i) {
    std::string name = "s" + std::to_string(i);
    states.push_back(name);
    edges.emplace_back(name, "s");
    if (outward_spokes)
      edges.emplace_back("s", name);
  }
  for (size_t i = 1; i <= n; ++i) {
    valuation[q.prefix[i - 1].second + "^1"] = {"s" + std::to_string(i)};
    valuation[q.prefix[i - 1].second + "^0"] = {"s" + std::to_string(n + i)};
  }
  std::map<std::pair<std::string, std::string>, uint64_t> costs;
  if (hub_loop_cost != 1)
    costs[{"s", "s"}] = hub_loop_cost;
  return Model(std::move(states), std::move(edges), std::move(valuation), std::move(costs), 1);
}

} // namespace

Reduction build_sdl_reduction(const QbfInstance& q) {
  ReductionBits bits;
  bits.dia = [](Formula f) { return fml::strat_d(0, true, fml::next(std::move(f))); };
  bits.forall_step = [](Formula f) { return fml::strat_d(1, true, fml::next(std::move(f))); };
  bits.exists_step = [](Formula f) { return fml::strat_d(1, false, fml::next(std::move(f))); };
  bits.reachable_when_unset = true;
  return build_reduction(q, bits, reduction_model(q, /*outward_spokes=*/true, /*hub_loop_cost=*/2));
}

Reduction build_scl_reduction(const QbfInstance& q) {
  ReductionBits bits;
  bits.dia = [](Formula f) { return fml::strat_a(0, true, fml::next(std::move(f))); };
  bits.forall_step = [](Formula f) { return fml::strat_a(1, true, fml::next(std::move(f))); };
  bits.exists_step = [](Formula f) { return fml::strat_a(1, false, fml::next(std::move(f))); };
  bits.reachable_when_unset = false;
  return build_reduction(q, bits, reduction_model(q, /*outward_spokes=*/false, /*hub_loop_cost=*/1));
}

Formula translate_ctl(const CtlFormula& f, Flavor flavor) {
  auto heart = [flavor](Formula path) {
    switch (flavor) {
    case Flavor::scl: return fml::strat_a(0, false, std::move(path));
    case Flavor::sul: return fml::strat_u(true, true, 0, 0, false, std::move(path));
    default: return fml::strat_d(0, false, std::move(path));
    }
  };
  auto t = [&](auto&& self, const CtlFormula& g) -> Formula {
    auto kid = [&](size_t i) { return self(self, g->kids[i]); };
    switch (g->kind) {
    case CKind::konst_true: return fml::top();
    case CKind::konst_false: return fml::bottom();
    case CKind::atom: return fml::atom(g->atom);
    case CKind::negation: return fml::negation(kid(0));
    case CKind::conj: return fml::conj(kid(0), kid(1));
    case CKind::disj: return fml::disj(kid(0), kid(1));
    case CKind::implies: return fml::implies(kid(0), kid(1));
    case CKind::iff: return fml::iff(kid(0), kid(1));
    case CKind::ax: return heart(fml::next(kid(0)));
    case CKind::au: return heart(fml::until(kid(0), kid(1)));
    case CKind::ar: return heart(fml::release(kid(0), kid(1)));
    case CKind::af: return heart(fml::until(fml::top(), kid(0)));
    case CKind::ag: return heart(fml::release(fml::bottom(), kid(0)));
    // E-quantified operators via the classical dualities
    case CKind::ex: return fml::negation(heart(fml::next(fml::negation(kid(0)))));
    case CKind::eu:
      return fml::negation(heart(fml::release(fml::negation(kid(0)), fml::negation(kid(1)))));
    case CKind::er:
      return fml::negation(heart(fml::until(fml::negation(kid(0)), fml::negation(kid(1)))));
    case CKind::ef:
      return fml::negation(heart(fml::release(fml::bottom(), fml::negation(kid(0)))));
    case CKind::eg:
      return fml::negation(heart(fml::until(fml::top(), fml::negation(kid(0)))));
    }
    throw Error(Errc::syntax, "malformed CTL node");
  };
  return t(t, f);
}

std::pair<PointedModel, PointedModel> build_distinguishing_family(uint64_t n) {
  if (n == 0)
    throw Error(Errc::syntax, "family parameter must be at least 1");
  auto build = [&](uint64_t fan) {
    std::vector<std::string> states;
    std::vector<std::pair<std::string, std::string>> edges;
    for (uint64_t i = 1; i <= n + 1; ++i)
      states.push_back("s" + std::to_string(i));
    for (uint64_t i = 1; i <= n; ++i)
      edges.emplace_back("s" + std::to_string(i), "s" + std::to_string(i + 1));
    std::string last = "s" + std::to_string(n + 1);
    for (uint64_t j = 1; j <= fan; ++j) {
      std::string t = "t" + std::to_string(j);
      states.push_back(t);
      edges.emplace_back(last, t);
      edges.emplace_back(t, t);
    }
    std::map<std::string, std::vector<std::string>> valuation{{"p", {"t1"}}};
    Model m(std::move(states), std::move(edges), std::move(valuation), {}, 1);
    StateId point = m.id_of("s1");
    return PointedModel{std::move(m), point};
  };
  return {build(n + 2), build(n + 3)};
}

std::map<std::string, PointedModel> build_figure_fixtures() {
  std::map<std::string, PointedModel> out;

  // Access-control example: two server modules behind an authentication
  // state, a failure sink, and an admin module. Drawn transitions carry
  // their labelled costs; pairs the figure leaves undrawn are priced at 4,
  // out of reach of every budget used with these models.
  Model m1({"s0", "s1", "s2", "s3"},
           {{"s0", "s0"},
            {"s0", "s1"},
            {"s0", "s2"},
            {"s0", "s3"},
            {"s1", "s1"},
            {"s2", "s0"},
            {"s2", "s2"},
            {"s2", "s3"},
            {"s3", "s3"}},
           {{"error", {"s1"}}, {"server", {"s2", "s3"}}, {"admin", {"s3"}}},
           {{{"s0", "s0"}, 3},
            {{"s0", "s1"}, 3},
            {{"s0", "s2"}, 2},
            {{"s0", "s3"}, 2},
            {{"s1", "s0"}, 1},
            {{"s1", "s1"}, 3},
            {{"s2", "s0"}, 1},
            {{"s2", "s2"}, 2},
            {{"s2", "s3"}, 1},
            {{"s3", "s2"}, 1},
            {{"s3", "s3"}, 2}},
           4);
  StateId s0 = m1.id_of("s0");
  Model m2 = remove_edges(m1, EdgeSet::of_names(m1, {{"s0", "s3"}, {"s2", "s3"}}));
  Model m3 = add_edges(m1, EdgeSet::of_names(m1, {{"s1", "s0"}}));
  Model m4 = apply_update(apply_update(m2, EdgeSet::of_names(m2, {{"s3", "s2"}}), EdgeSet{}),
                          EdgeSet{}, EdgeSet::of_names(m2, {{"s3", "s3"}}));
  out.emplace("fig1.M1", PointedModel{m1, s0});
  out.emplace("fig1.M2", PointedModel{m2, s0});
  out.emplace("fig2.M3", PointedModel{m3, s0});
  out.emplace("fig2.M4", PointedModel{m4, s0});

  // Two-state separating models: complete graphs at cost 1 vs cost 2, and
  // loop-only graphs with and without the second state.
  auto two_state = [&](std::vector<std::pair<std::string, std::string>> edges, uint64_t cost) {
    Model m({"s", "t"}, std::move(edges), {{"p", {"s"}}}, {}, cost);
    StateId s = m.id_of("s");
    return PointedModel{std::move(m), s};
  };
  out.emplace("fig3.M1",
              two_state({{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}}, 1));
  out.emplace("fig3.M2",
              two_state({{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}}, 2));
  out.emplace("fig3.M3", two_state({{"s", "s"}, {"t", "t"}}, 1));
  {
    Model m({"s"}, {{"s", "s"}}, {{"p", {"s"}}}, {}, 1);
    StateId s = m.id_of("s");
    out.emplace("fig3.M4", PointedModel{std::move(m), s});
  }

  out.emplace("fig6.MPsi",
              build_sdl_reduction(parse_qbf("forall p1 exists p2 : (p1 -> p2)")).pm);
  return out;
}

} // namespace sulcheck
