#ifndef SULCHECK_MODEL_HPP
#define SULCHECK_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sulcheck/error.hpp"

namespace sulcheck {

using StateId = uint32_t;

struct Edge {
  StateId src;
  StateId dst;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A weighted serial digraph with a valuation and a total cost function.
///
/// States are kept sorted lexicographically by name and addressed by index,
/// which makes every derived enumeration and serialization deterministic.
/// The cost function is total over states x states: explicit entries override
/// `default_cost`, and entries equal to the default are normalized away.
/// Instances are immutable after construction and safe to share across
/// threads; all operations below are pure and return new values.
class Model {
public:
  Model(std::vector<std::string> states,
        std::vector<std::pair<std::string, std::string>> edges,
        std::map<std::string, std::vector<std::string>> valuation,
        std::map<std::pair<std::string, std::string>, uint64_t> costs,
        uint64_t default_cost);

  size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::string& state_name(StateId s) const { return states_[s]; }
  StateId id_of(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;

  /// Sorted by (src, dst).
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(Edge e) const;

  uint64_t cost(Edge e) const;
  uint64_t cost(StateId s, StateId t) const { return cost(Edge{s, t}); }
  uint64_t default_cost() const { return default_cost_; }
  const std::map<Edge, uint64_t>& explicit_costs() const { return costs_; }

  /// Atom -> sorted member states; only nonempty atoms are stored.
  const std::map<std::string, std::vector<StateId>>& valuation() const { return valuation_; }
  bool holds(std::string_view atom, StateId s) const;
  /// The set of atoms true at s, sorted by name.
  std::vector<std::string> true_atoms(StateId s) const;

  /// Same model with a different edge relation; validates seriality and
  /// endpoint bounds, everything else is carried over unchanged.
  Model with_edges(std::vector<Edge> edges) const;

  /// Extensional equality: same states, edges, valuation and the same cost
  /// on every ordered pair (regardless of how sparsely it is stored).
  bool operator==(const Model& other) const;

private:
  Model() = default;

  std::vector<std::string> states_;
  std::vector<Edge> edges_;
  std::map<std::string, std::vector<StateId>> valuation_;
  std::map<Edge, uint64_t> costs_;
  uint64_t default_cost_ = 1;
};

struct PointedModel {
  Model model;
  StateId point = 0;

  const std::string& point_name() const { return model.state_name(point); }
};

/// A set of ordered state pairs together with its total cost in some model.
struct EdgeSet {
  std::vector<Edge> pairs; // sorted, unique
  uint64_t total_cost = 0; // sum of C over pairs, overflow-checked

  bool empty() const { return pairs.empty(); }

  /// Builds the set against `m`, validating endpoints, sorting, rejecting
  /// duplicates and summing costs with overflow checking.
  static EdgeSet of(const Model& m, std::vector<Edge> pairs);
  static EdgeSet of_names(const Model& m,
                          const std::vector<std::pair<std::string, std::string>>& pairs);

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
};

struct ParsedModel {
  Model model;
  std::optional<StateId> point;
};

/// Parses the line-oriented model format (see docs/model-format.md).
ParsedModel parse_model_file(std::string_view text);
Model parse_model(std::string_view text);

/// Canonical form: states, edges, atoms and explicit costs each emitted in
/// lexicographic order, one edge per line, redundant cost entries dropped.
std::string serialize_model(const Model& m);
std::string serialize_pointed(const PointedModel& pm);

/// |M| = |S| + |->| + sum_s |True(s)| + sum_{s,t} C(s,t).
uint64_t model_size(const Model& m);

Model remove_edges(const Model& m, const EdgeSet& removals);
Model add_edges(const Model& m, const EdgeSet& additions);
Model apply_update(const Model& m, const EdgeSet& additions, const EdgeSet& removals);

uint64_t checked_add(uint64_t a, uint64_t b);

} // namespace sulcheck

#endif
