#ifndef SULCHECK_CHECKER_HPP
#define SULCHECK_CHECKER_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sulcheck/formula.hpp"
#include "sulcheck/model.hpp"
#include "sulcheck/update.hpp"

namespace sulcheck {

struct CheckerConfig {
  bool memoization = true;
  std::optional<uint64_t> max_positions;
  std::optional<uint64_t> sul_depth_cap;
  bool parallel = false;

  static constexpr uint64_t default_sul_depth_cap = 10'000;
  uint64_t effective_sul_cap() const { return sul_depth_cap.value_or(default_sul_depth_cap); }
};

/// Per-branch step bound for the bounded Until/Release loops.
///   SDL: (|edges|+1) * |S|
///   SCL: (|S|^2 - |edges| + 1) * |S|
///   SUL: 2^(|S|^2) * |S|, saturating at the configured cap
/// All arithmetic saturates instead of overflowing.
uint64_t br_depth(const Model& m, Flavor flavor,
                  uint64_t sul_cap = CheckerConfig::default_sul_depth_cap);
uint64_t br_depth_for(size_t states, size_t edges, Flavor flavor, uint64_t sul_cap);

/// Canonical digest of a game position: the pointed model in canonical
/// serialized form (states, edges, valuation, costs, point).
std::string position_digest(const Model& base, std::span<const Edge> edges, StateId point);

/// A reified memoryless strategy for the owner of an existential strategic
/// operator: one update choice per reachable pointed model.
struct StrategyTable {
  struct Entry {
    std::vector<Edge> edges;
    StateId point = 0;
    UpdateChoice choice;
  };
  std::map<std::string, Entry> entries; // keyed by position_digest

  friend bool operator==(const StrategyTable&, const StrategyTable&) = default;
};

struct CheckStats {
  uint64_t positions = 0;
  uint64_t memo_hits = 0;
};

struct TraceStep {
  UpdateChoice choice;
  std::string moved_to;
};

struct Verdict {
  bool value = false;
  std::optional<StrategyTable> witness;
  std::optional<std::vector<TraceStep>> trace;
  CheckStats stats;
};

/// True when the outermost operator is an existential strategic one
/// (non-dual with a nonempty coalition), i.e. a witness can be extracted.
bool has_existential_strategic_outer(const Formula& f);

/// Evaluates the formula on the pointed model. Accepts any well-formed
/// single-flavor state formula; negation is handled classically, so
/// check(pm, f) == check(pm, to_nnf(f)). Throws Errc::resource_cap when a
/// configured cap (max_positions, or the SUL depth cap when it truncates
/// the true bound) would affect the verdict.
Verdict check(const PointedModel& pm, const Formula& f, const CheckerConfig& cfg = {},
              bool with_witness = false);

/// Reifies the winning existential choices of a true verdict.
/// Throws Errc::no_witness when the outermost operator is not existential
/// strategic, or when the verdict is false.
StrategyTable extract_witness(const PointedModel& pm, const Formula& f,
                              const CheckerConfig& cfg = {});

/// Replays a strategy table against all antagonist updates and traveller
/// moves. Throws Errc::table_gap when a reachable position is missing and
/// Errc::budget_violated / Errc::bad_strategy on illegal choices.
bool verify_witness(const PointedModel& pm, const Formula& f, const StrategyTable& table,
                    const CheckerConfig& cfg = {});

} // namespace sulcheck

#endif
