#include "sulcheck/checker.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <set>
#include <unordered_map>

namespace sulcheck {

namespace {

constexpr uint64_t kSat = std::numeric_limits<uint64_t>::max();
constexpr uint64_t kRankInf = std::numeric_limits<uint64_t>::max();

uint64_t sat_mul(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    return kSat;
  return r;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
  uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    return kSat;
  return r;
}

} // namespace

uint64_t br_depth_for(size_t states, size_t edges, Flavor flavor, uint64_t sul_cap) {
  uint64_t s = states;
  uint64_t e = edges;
  switch (flavor) {
  case Flavor::sdl: return sat_mul(sat_add(e, 1), s);
  case Flavor::scl: return sat_mul(sat_add(sat_mul(s, s) - e, 1), s);
  case Flavor::sul: {
    uint64_t exp = sat_mul(s, s);
    uint64_t pow2 = exp >= 64 ? kSat : (uint64_t{1} << exp);
    return std::min(sat_mul(pow2, s), sul_cap);
  }
  case Flavor::none: return 0;
  }
  return 0;
}

uint64_t br_depth(const Model& m, Flavor flavor, uint64_t sul_cap) {
  return br_depth_for(m.state_count(), m.edges().size(), flavor, sul_cap);
}

std::string position_digest(const Model& base, std::span<const Edge> edges, StateId point) {
  PointedModel pm{base.with_edges(std::vector<Edge>(edges.begin(), edges.end())), point};
  return serialize_pointed(pm);
}

bool has_existential_strategic_outer(const Formula& f) {
  if (!is_strategic_kind(f->kind) || f->dual)
    return false;
  if (f->kind == FKind::strat_u && !f->coalition_angel && !f->coalition_demon)
    return false;
  return true;
}

namespace {

struct Position {
  std::vector<Edge> edges;
  StateId point = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct PositionHash {
  size_t operator()(const Position& p) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(p.point);
    for (const Edge& e : p.edges) {
      mix(e.src);
      mix(e.dst);
    }
    return static_cast<size_t>(h);
  }
};

std::vector<Edge> apply_pairs(const std::vector<Edge>& edges, const std::vector<Edge>& add,
                              const std::vector<Edge>& rem) {
  std::vector<Edge> rest;
  rest.reserve(edges.size() + add.size());
  std::set_difference(edges.begin(), edges.end(), rem.begin(), rem.end(), std::back_inserter(rest));
  if (add.empty())
    return rest;
  std::vector<Edge> all;
  all.reserve(rest.size() + add.size());
  std::set_union(rest.begin(), rest.end(), add.begin(), add.end(), std::back_inserter(all));
  return all;
}

struct Group {
  UpdateChoice choice;
  std::vector<Position> succs;
};

struct MemoKey {
  const FormulaNode* node;
  Position pos;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    return PositionHash{}(k.pos) ^ std::hash<const FormulaNode*>{}(k.node);
  }
};

class Evaluator {
public:
  Evaluator(const Model& base, Flavor flavor, const CheckerConfig& cfg)
      : base_(base), cfg_(cfg), flavor_(flavor), sul_cap_(cfg.effective_sul_cap()) {}

  CheckStats stats;

  bool eval(const Position& pos, const FormulaNode* f) {
    note_position();
    const bool memoable = cfg_.memoization && f->kind != FKind::konst_true &&
                          f->kind != FKind::konst_false && f->kind != FKind::atom;
    if (memoable) {
      auto it = memo_.find(MemoKey{f, pos});
      if (it != memo_.end()) {
        ++stats.memo_hits;
        return it->second;
      }
    }
    bool v = false;
    switch (f->kind) {
    case FKind::konst_true: v = true; break;
    case FKind::konst_false: v = false; break;
    case FKind::atom: v = base_.holds(f->atom, pos.point); break;
    case FKind::negation: v = !eval(pos, f->kids[0].get()); break;
    case FKind::conj:
      v = eval(pos, f->kids[0].get()) && eval(pos, f->kids[1].get());
      break;
    case FKind::disj:
      v = eval(pos, f->kids[0].get()) || eval(pos, f->kids[1].get());
      break;
    case FKind::implies:
      v = !eval(pos, f->kids[0].get()) || eval(pos, f->kids[1].get());
      break;
    case FKind::iff:
      v = eval(pos, f->kids[0].get()) == eval(pos, f->kids[1].get());
      break;
    case FKind::strat_d:
    case FKind::strat_a:
    case FKind::strat_u:
      v = f->kids[0]->kind == FKind::next ? eval_strat_next(pos, f) : solve_loop(pos, f);
      break;
    case FKind::next:
    case FKind::until:
    case FKind::release:
      throw Error(Errc::path_outside_strategic, "path formula evaluated outside a strategic context");
    }
    if (memoable)
      memo_.emplace(MemoKey{f, pos}, v);
    return v;
  }

  // Proponent choice groups at a position: outer index is the coalition's
  // choice, members are all antagonist responses x traveller moves.
  std::vector<Group> expand_groups(const Position& pos, const FormulaNode* op) {
    std::vector<Group> groups;
    auto succ_positions = [&](std::vector<Edge> edges, std::vector<Position>& out) {
      for (StateId t : successors(std::span<const Edge>(edges), pos.point))
        out.push_back(Position{edges, t});
    };
    auto to_edge_set = [&](const EdgeSubsetStream& s) {
      return EdgeSet{std::vector<Edge>(s.current().begin(), s.current().end()), s.current_cost()};
    };

    if (op->kind == FKind::strat_d) {
      auto bs = EdgeSubsetStream::removals(base_, pos.edges, op->demon_budget);
      while (bs.next()) {
        Group g;
        g.choice.removals = to_edge_set(bs);
        succ_positions(apply_pairs(pos.edges, {}, g.choice.removals.pairs), g.succs);
        groups.push_back(std::move(g));
      }
      return groups;
    }
    if (op->kind == FKind::strat_a) {
      auto as = EdgeSubsetStream::additions(base_, pos.edges, op->angel_budget);
      while (as.next()) {
        Group g;
        g.choice.additions = to_edge_set(as);
        succ_positions(apply_pairs(pos.edges, g.choice.additions.pairs, {}), g.succs);
        groups.push_back(std::move(g));
      }
      return groups;
    }

    const bool ca = op->coalition_angel;
    const bool cd = op->coalition_demon;
    if (ca && !cd) {
      auto as = EdgeSubsetStream::additions(base_, pos.edges, op->angel_budget);
      while (as.next()) {
        Group g;
        g.choice.additions = to_edge_set(as);
        auto bs = EdgeSubsetStream::removals(base_, pos.edges, op->demon_budget);
        while (bs.next())
          succ_positions(apply_pairs(pos.edges, g.choice.additions.pairs,
                                     std::vector<Edge>(bs.current().begin(), bs.current().end())),
                         g.succs);
        groups.push_back(std::move(g));
      }
      return groups;
    }
    if (cd && !ca) {
      auto bs = EdgeSubsetStream::removals(base_, pos.edges, op->demon_budget);
      while (bs.next()) {
        Group g;
        g.choice.removals = to_edge_set(bs);
        auto as = EdgeSubsetStream::additions(base_, pos.edges, op->angel_budget);
        while (as.next())
          succ_positions(apply_pairs(pos.edges,
                                     std::vector<Edge>(as.current().begin(), as.current().end()),
                                     g.choice.removals.pairs),
                         g.succs);
        groups.push_back(std::move(g));
      }
      return groups;
    }
    // {a,d} and the empty coalition share the (A, B) pair enumeration:
    // additions outer, removals inner.
    auto as = EdgeSubsetStream::additions(base_, pos.edges, op->angel_budget);
    while (as.next()) {
      EdgeSet add = to_edge_set(as);
      auto bs = EdgeSubsetStream::removals(base_, pos.edges, op->demon_budget);
      while (bs.next()) {
        Group g;
        g.choice.additions = add;
        g.choice.removals = to_edge_set(bs);
        succ_positions(apply_pairs(pos.edges, add.pairs, g.choice.removals.pairs), g.succs);
        groups.push_back(std::move(g));
      }
    }
    return groups;
  }

  // --- the bounded Until/Release games --------------------------------------

  struct LoopInfo {
    int cls = -1; // 0 losing terminal, 1 winning terminal, 2 internal
    bool value = false;
    uint64_t rank = kRankInf; // determination round; terminals 0
    std::vector<Group> groups;
  };
  struct LoopState {
    std::unordered_map<Position, LoopInfo, PositionHash> info;
  };

  bool solve_loop(const Position& entry, const FormulaNode* op) {
    LoopState scratch;
    return run_loop(entry, op, scratch).first->info.at(entry).value;
  }

  std::pair<LoopState*, bool> run_loop(const Position& entry, const FormulaNode* op,
                                       LoopState& scratch) {
    LoopState& st = cfg_.memoization ? loop_cache_[op] : scratch;
    const FormulaNode* path = op->kids[0].get();
    const bool is_until = path->kind == FKind::until;
    const FormulaNode* psi1 = path->kids[0].get();
    const FormulaNode* psi2 = path->kids[1].get();

    auto known = st.info.find(entry);
    if (known == st.info.end()) {
      discover_and_solve(st, entry, op, is_until, psi1, psi2);
    } else {
      ++stats.memo_hits;
    }

    const LoopInfo& info = st.info.at(entry);
    uint64_t bound = br_depth_for(base_.state_count(), entry.edges.size(), flavor_, sul_cap_);
    // The step-bounded loop credits a win (Until) or a loss (Release) only
    // within brDepth rounds; a deeper determination means the configured cap
    // truncated the game, so the verdict must not be reported silently.
    bool capped = is_until ? (info.value && info.rank > bound) : (!info.value && info.rank > bound);
    if (capped)
      throw Error(Errc::resource_cap,
                  "depth cap truncates the game (positions explored: " +
                      std::to_string(stats.positions) + "); raise the depth cap");
    return {&st, info.value};
  }

private:
  void discover_and_solve(LoopState& st, const Position& entry, const FormulaNode* op,
                          bool is_until, const FormulaNode* psi1, const FormulaNode* psi2) {
    std::vector<Position> internals;
    uint64_t boundary_rank = 0;
    std::deque<Position> queue;
    queue.push_back(entry);
    st.info.emplace(entry, LoopInfo{});

    while (!queue.empty()) {
      Position pos = std::move(queue.front());
      queue.pop_front();
      note_position();
      LoopInfo& info = st.info.at(pos);
      if (is_until) {
        if (eval(pos, psi2)) {
          info.cls = 1;
          info.value = true;
          info.rank = 0;
          continue;
        }
        if (!eval(pos, psi1)) {
          info.cls = 0;
          info.value = false;
          info.rank = kRankInf;
          continue;
        }
      } else {
        if (!eval(pos, psi2)) {
          info.cls = 0;
          info.value = false;
          info.rank = 0;
          continue;
        }
        if (eval(pos, psi1)) {
          info.cls = 1;
          info.value = true;
          info.rank = kRankInf;
          continue;
        }
      }
      info.cls = 2;
      info.value = !is_until; // lfp starts false, gfp starts true
      info.rank = kRankInf;
      info.groups = expand_groups(pos, op);
      for (const Group& g : info.groups) {
        for (const Position& m : g.succs) {
          auto [it, inserted] = st.info.try_emplace(m);
          if (inserted) {
            queue.push_back(m);
          } else if (it->second.cls != -1 && it->second.rank != kRankInf) {
            boundary_rank = std::max(boundary_rank, it->second.rank);
          }
        }
      }
      internals.push_back(std::move(pos));
    }

    // Round-indexed fixpoint. In round r a position may use members
    // determined in rounds <= r-1, which reproduces the step-bounded loop
    // exactly and yields the number of game rounds each verdict needs.
    const bool inner_exists = op->dual;
    const bool empty_coalition = op->kind == FKind::strat_u && !op->coalition_angel &&
                                 !op->coalition_demon;
    const bool outer_exists = empty_coalition ? inner_exists : !inner_exists;

    std::vector<Position> undetermined;
    for (const Position& p : internals)
      undetermined.push_back(p);

    uint64_t round = 0;
    while (!undetermined.empty()) {
      ++round;
      // determined(m, k): member m usable at round k+1
      auto member_good = [&](const Position& m, uint64_t k) {
        const LoopInfo& mi = st.info.at(m);
        if (is_until)
          return mi.value && mi.rank <= k; // not yet determined counts as false
        return !(!mi.value && mi.rank <= k); // not yet determined counts as true
      };
      std::vector<Position> still;
      bool changed = false;
      for (const Position& p : undetermined) {
        LoopInfo& info = st.info.at(p);
        bool combined;
        if (outer_exists) {
          combined = false;
          for (const Group& g : info.groups) {
            bool gv = inner_exists ? std::any_of(g.succs.begin(), g.succs.end(),
                                                 [&](const Position& m) {
                                                   return member_good(m, round - 1);
                                                 })
                                   : std::all_of(g.succs.begin(), g.succs.end(),
                                                 [&](const Position& m) {
                                                   return member_good(m, round - 1);
                                                 });
            if (gv) {
              combined = true;
              break;
            }
          }
        } else {
          combined = true;
          for (const Group& g : info.groups) {
            bool gv = inner_exists ? std::any_of(g.succs.begin(), g.succs.end(),
                                                 [&](const Position& m) {
                                                   return member_good(m, round - 1);
                                                 })
                                   : std::all_of(g.succs.begin(), g.succs.end(),
                                                 [&](const Position& m) {
                                                   return member_good(m, round - 1);
                                                 });
            if (!gv) {
              combined = false;
              break;
            }
          }
        }
        bool determine = is_until ? combined : !combined;
        if (determine) {
          info.value = is_until;
          info.rank = round;
          changed = true;
        } else {
          still.push_back(p);
        }
      }
      undetermined = std::move(still);
      if (!changed && round > boundary_rank)
        break; // stabilized: leftovers keep the fixpoint default
    }
  }

  void note_position() {
    ++stats.positions;
    if (cfg_.max_positions && stats.positions > *cfg_.max_positions)
      throw Error(Errc::resource_cap, "position cap exceeded (positions explored: " +
                                          std::to_string(stats.positions) + ")");
  }

  bool eval_strat_next(const Position& pos, const FormulaNode* op) {
    const FormulaNode* sub = op->kids[0]->kids[0].get();
    const bool inner_exists = op->dual;
    const bool empty_coalition = op->kind == FKind::strat_u && !op->coalition_angel &&
                                 !op->coalition_demon;
    const bool outer_exists = empty_coalition ? inner_exists : !inner_exists;
    for (const Group& g : expand_groups(pos, op)) {
      bool gv;
      if (inner_exists) {
        gv = false;
        for (const Position& m : g.succs)
          if (eval(m, sub)) {
            gv = true;
            break;
          }
      } else {
        gv = true;
        for (const Position& m : g.succs)
          if (!eval(m, sub)) {
            gv = false;
            break;
          }
      }
      if (outer_exists && gv)
        return true;
      if (!outer_exists && !gv)
        return false;
    }
    return !outer_exists;
  }

  const Model& base_;
  CheckerConfig cfg_;
  Flavor flavor_;
  uint64_t sul_cap_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
  std::map<const FormulaNode*, LoopState> loop_cache_;

public:
  StrategyTable build_witness(const Position& entry, const FormulaNode* op) {
    StrategyTable table;
    const FormulaNode* path = op->kids[0].get();
    if (path->kind == FKind::next) {
      const FormulaNode* sub = path->kids[0].get();
      for (const Group& g : expand_groups(entry, op)) {
        bool all = true;
        for (const Position& m : g.succs)
          if (!eval(m, sub)) {
            all = false;
            break;
          }
        if (all) {
          table.entries[position_digest(base_, entry.edges, entry.point)] =
              StrategyTable::Entry{entry.edges, entry.point, g.choice};
          return table;
        }
      }
      throw Error(Errc::no_witness, "no winning first move found");
    }

    LoopState scratch;
    auto [st, value] = run_loop(entry, op, scratch);
    if (!value)
      throw Error(Errc::no_witness, "verdict is false");
    std::deque<Position> queue;
    std::unordered_map<Position, bool, PositionHash> seen;
    queue.push_back(entry);
    seen.emplace(entry, true);
    while (!queue.empty()) {
      Position pos = std::move(queue.front());
      queue.pop_front();
      const LoopInfo& info = st->info.at(pos);
      if (info.cls == 1)
        continue; // success / released: the game is over here
      if (info.cls != 2 || !info.value)
        throw Error(Errc::no_witness, "reached a losing position while reifying the strategy");
      const Group* winning = nullptr;
      for (const Group& g : info.groups) {
        bool all = true;
        for (const Position& m : g.succs)
          if (!st->info.at(m).value) {
            all = false;
            break;
          }
        if (all) {
          winning = &g;
          break;
        }
      }
      if (!winning)
        throw Error(Errc::no_witness, "no winning group at a supposedly winning position");
      table.entries[position_digest(base_, pos.edges, pos.point)] =
          StrategyTable::Entry{pos.edges, pos.point, winning->choice};
      for (const Position& m : winning->succs) {
        if (seen.emplace(m, true).second)
          queue.push_back(m);
      }
    }
    return table;
  }

  std::vector<TraceStep> build_trace(const Position& entry, const FormulaNode* op,
                                     const StrategyTable& table) {
    std::vector<TraceStep> trace;
    Position pos = entry;
    std::set<std::string> seen;
    for (;;) {
      std::string key = position_digest(base_, pos.edges, pos.point);
      auto it = table.entries.find(key);
      if (it == table.entries.end() || !seen.insert(key).second)
        break;
      const UpdateChoice& choice = it->second.choice;
      std::vector<Edge> updated =
          apply_pairs(pos.edges, choice.additions.pairs, choice.removals.pairs);
      auto succ = successors(std::span<const Edge>(updated), pos.point);
      if (succ.empty())
        break;
      trace.push_back(TraceStep{choice, base_.state_name(succ[0])});
      pos = Position{std::move(updated), succ[0]};
      (void)op;
    }
    return trace;
  }

  // --- replay ----------------------------------------------------------------

  void validate_choice(const Position& pos, const FormulaNode* op, const UpdateChoice& choice) {
    uint64_t angel_budget = op->kind == FKind::strat_d ? 0 : op->angel_budget;
    uint64_t demon_budget = op->kind == FKind::strat_a ? 0 : op->demon_budget;
    bool angel_owner = op->kind == FKind::strat_a || (op->kind == FKind::strat_u && op->coalition_angel);
    bool demon_owner = op->kind == FKind::strat_d || (op->kind == FKind::strat_u && op->coalition_demon);
    if (!angel_owner && !choice.additions.pairs.empty())
      throw Error(Errc::bad_strategy, "strategy adds edges but the angel is not in the coalition");
    if (!demon_owner && !choice.removals.pairs.empty())
      throw Error(Errc::bad_strategy, "strategy removes edges but the demon is not in the coalition");

    uint64_t add_cost = 0;
    for (const Edge& e : choice.additions.pairs) {
      if (std::binary_search(pos.edges.begin(), pos.edges.end(), e))
        throw Error(Errc::bad_strategy, "strategy adds an edge that is already present");
      add_cost = checked_add(add_cost, base_.cost(e));
    }
    if (angel_owner && add_cost > angel_budget)
      throw Error(Errc::budget_violated, "strategy exceeds the angel budget at some position");

    uint64_t rem_cost = 0;
    std::vector<uint32_t> outdeg(base_.state_count(), 0);
    for (const Edge& e : pos.edges)
      ++outdeg[e.src];
    for (const Edge& e : choice.removals.pairs) {
      if (!std::binary_search(pos.edges.begin(), pos.edges.end(), e))
        throw Error(Errc::bad_strategy, "strategy removes an edge that is not present");
      if (--outdeg[e.src] == 0)
        throw Error(Errc::bad_strategy, "strategy removes a state's last outgoing edge");
      rem_cost = checked_add(rem_cost, base_.cost(e));
    }
    if (demon_owner && rem_cost > demon_budget)
      throw Error(Errc::budget_violated, "strategy exceeds the demon budget at some position");
  }

  // All update results compatible with the table's choice at this position.
  std::vector<std::vector<Edge>> antagonist_results(const Position& pos, const FormulaNode* op,
                                                    const UpdateChoice& choice) {
    std::vector<std::vector<Edge>> out;
    if (op->kind == FKind::strat_d || op->kind == FKind::strat_a ||
        (op->coalition_angel && op->coalition_demon)) {
      out.push_back(apply_pairs(pos.edges, choice.additions.pairs, choice.removals.pairs));
      return out;
    }
    if (op->coalition_angel) { // demon responds
      auto bs = EdgeSubsetStream::removals(base_, pos.edges, op->demon_budget);
      while (bs.next())
        out.push_back(apply_pairs(pos.edges, choice.additions.pairs,
                                  std::vector<Edge>(bs.current().begin(), bs.current().end())));
      return out;
    }
    // angel responds
    auto as = EdgeSubsetStream::additions(base_, pos.edges, op->angel_budget);
    while (as.next())
      out.push_back(apply_pairs(pos.edges, std::vector<Edge>(as.current().begin(), as.current().end()),
                                choice.removals.pairs));
    return out;
  }

  const UpdateChoice& table_choice(const Position& pos, const StrategyTable& table) {
    auto it = table.entries.find(position_digest(base_, pos.edges, pos.point));
    if (it == table.entries.end())
      throw Error(Errc::table_gap, "strategy table has no entry for a reachable position (point '" +
                                       base_.state_name(pos.point) + "')");
    return it->second.choice;
  }

  bool replay(const Position& pos, const FormulaNode* op, const StrategyTable& table,
              std::set<std::pair<std::vector<Edge>, StateId>>& path) {
    note_position();
    const FormulaNode* pf = op->kids[0].get();
    if (pf->kind == FKind::next) {
      const UpdateChoice& choice = table_choice(pos, table);
      validate_choice(pos, op, choice);
      for (const auto& edges : antagonist_results(pos, op, choice))
        for (StateId t : successors(std::span<const Edge>(edges), pos.point))
          if (!eval(Position{edges, t}, pf->kids[0].get()))
            return false;
      return true;
    }
    const bool is_until = pf->kind == FKind::until;
    const FormulaNode* psi1 = pf->kids[0].get();
    const FormulaNode* psi2 = pf->kids[1].get();
    if (is_until) {
      if (eval(pos, psi2))
        return true;
      if (!eval(pos, psi1))
        return false;
    } else {
      if (!eval(pos, psi2))
        return false;
      if (eval(pos, psi1))
        return true;
    }
    auto key = std::make_pair(pos.edges, pos.point);
    if (path.count(key))
      return !is_until; // a lap without progress decides the bounded loop
    const UpdateChoice& choice = table_choice(pos, table);
    validate_choice(pos, op, choice);
    path.insert(key);
    bool ok = true;
    for (const auto& edges : antagonist_results(pos, op, choice)) {
      for (StateId t : successors(std::span<const Edge>(edges), pos.point)) {
        if (!replay(Position{edges, t}, op, table, path)) {
          ok = false;
          break;
        }
      }
      if (!ok)
        break;
    }
    path.erase(key);
    return ok;
  }
};

Position entry_position(const PointedModel& pm) {
  return Position{pm.model.edges(), pm.point};
}

} // namespace

Verdict check(const PointedModel& pm, const Formula& f, const CheckerConfig& cfg,
              bool with_witness) {
  validate_formula(f);
  Flavor flavor = formula_flavor(f);
  if (pm.point >= pm.model.state_count())
    throw Error(Errc::undeclared_state, "point is not a state of the model");
  Evaluator ev(pm.model, flavor, cfg);
  Position entry = entry_position(pm);
  Verdict out;
  out.value = ev.eval(entry, f.get());
  if (with_witness && out.value && has_existential_strategic_outer(f)) {
    out.witness = ev.build_witness(entry, f.get());
    out.trace = ev.build_trace(entry, f.get(), *out.witness);
  }
  out.stats = ev.stats;
  return out;
}

StrategyTable extract_witness(const PointedModel& pm, const Formula& f, const CheckerConfig& cfg) {
  validate_formula(f);
  if (!has_existential_strategic_outer(f))
    throw Error(Errc::no_witness, "outermost operator is not existential strategic");
  Flavor flavor = formula_flavor(f);
  Evaluator ev(pm.model, flavor, cfg);
  Position entry = entry_position(pm);
  if (!ev.eval(entry, f.get()))
    throw Error(Errc::no_witness, "formula does not hold, no witness exists");
  return ev.build_witness(entry, f.get());
}

bool verify_witness(const PointedModel& pm, const Formula& f, const StrategyTable& table,
                    const CheckerConfig& cfg) {
  validate_formula(f);
  if (!has_existential_strategic_outer(f))
    throw Error(Errc::no_witness, "outermost operator is not existential strategic");
  Flavor flavor = formula_flavor(f);
  Evaluator ev(pm.model, flavor, cfg);
  Position entry = entry_position(pm);
  std::set<std::pair<std::vector<Edge>, StateId>> path;
  return ev.replay(entry, f.get(), table, path);
}

} // namespace sulcheck
