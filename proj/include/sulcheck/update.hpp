#ifndef SULCHECK_UPDATE_HPP
#define SULCHECK_UPDATE_HPP

#include <optional>
#include <span>
#include <vector>

#include "sulcheck/model.hpp"

namespace sulcheck {

/// States reachable in one step from s, sorted; nonempty by seriality.
std::vector<StateId> successors(const Model& m, StateId s);
std::vector<StateId> successors(std::span<const Edge> edges, StateId s);

struct UpdateChoice {
  EdgeSet additions;
  EdgeSet removals;

  friend bool operator==(const UpdateChoice&, const UpdateChoice&) = default;
};

/// Lazy pre-order enumeration of edge subsets in lexicographic order over
/// canonical edge lists, pruned by budget (costs are positive, so any
/// over-budget set has only over-budget extensions). In removal mode,
/// subsets that would strip a state of its last outgoing edge are pruned
/// the same way. The empty set always comes first.
class EdgeSubsetStream {
public:
  static EdgeSubsetStream removals(const Model& costs, std::span<const Edge> current_edges,
                                   uint64_t budget);
  static EdgeSubsetStream additions(const Model& costs, std::span<const Edge> current_edges,
                                    uint64_t budget);

  /// Advances to the next subset; false when exhausted.
  bool next();
  std::span<const Edge> current() const { return chosen_; }
  uint64_t current_cost() const { return total_; }

private:
  EdgeSubsetStream() = default;

  bool acceptable(size_t idx) const;
  void push(size_t idx);
  void pop();

  std::vector<Edge> candidates_;
  std::vector<uint64_t> cost_;
  std::vector<size_t> stack_;
  std::vector<Edge> chosen_;
  std::vector<uint32_t> outdeg_; // removal mode only
  uint64_t budget_ = 0;
  uint64_t total_ = 0;
  bool removal_mode_ = false;
  bool started_ = false;
};

/// Streams over whole models, in the same order as the subset streams.
class SubmodelStream {
public:
  SubmodelStream(const Model& m, uint64_t budget);
  std::optional<std::pair<EdgeSet, Model>> next();

private:
  const Model& base_;
  EdgeSubsetStream inner_;
};

class SupermodelStream {
public:
  SupermodelStream(const Model& m, uint64_t budget);
  std::optional<std::pair<EdgeSet, Model>> next();

private:
  const Model& base_;
  EdgeSubsetStream inner_;
};

/// Cartesian combination: additions outer, removals inner.
class UpdateStream {
public:
  UpdateStream(const Model& m, uint64_t angel_budget, uint64_t demon_budget);
  std::optional<std::pair<UpdateChoice, Model>> next();

private:
  const Model& base_;
  uint64_t demon_budget_;
  EdgeSubsetStream additions_;
  std::optional<EdgeSubsetStream> removals_;
  EdgeSet current_add_;
};

std::vector<std::pair<EdgeSet, Model>> enumerate_submodels(const Model& m, uint64_t budget);
std::vector<std::pair<EdgeSet, Model>> enumerate_supermodels(const Model& m, uint64_t budget);
std::vector<std::pair<UpdateChoice, Model>> enumerate_updates(const Model& m, uint64_t angel_budget,
                                                              uint64_t demon_budget);

} // namespace sulcheck

#endif
