#include "sulcheck/update.hpp"

#include <algorithm>

namespace sulcheck {

std::vector<StateId> successors(std::span<const Edge> edges, StateId s) {
  std::vector<StateId> out;
  // edges are sorted by (src, dst), so the block for s is contiguous
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{s, 0});
  for (auto it = lo; it != edges.end() && it->src == s; ++it)
    out.push_back(it->dst);
  return out;
}

std::vector<StateId> successors(const Model& m, StateId s) {
  if (s >= m.state_count())
    throw Error(Errc::undeclared_state, "state index out of range");
  return successors(std::span<const Edge>(m.edges()), s);
}

EdgeSubsetStream EdgeSubsetStream::removals(const Model& costs, std::span<const Edge> current_edges,
                                            uint64_t budget) {
  EdgeSubsetStream s;
  s.removal_mode_ = true;
  s.budget_ = budget;
  s.outdeg_.assign(costs.state_count(), 0);
  for (const Edge& e : current_edges) {
    s.candidates_.push_back(e);
    s.cost_.push_back(costs.cost(e));
    ++s.outdeg_[e.src];
  }
  return s;
}

EdgeSubsetStream EdgeSubsetStream::additions(const Model& costs, std::span<const Edge> current_edges,
                                             uint64_t budget) {
  EdgeSubsetStream s;
  s.removal_mode_ = false;
  s.budget_ = budget;
  const size_t n = costs.state_count();
  size_t at = 0;
  for (StateId a = 0; a < n; ++a) {
    for (StateId b = 0; b < n; ++b) {
      Edge e{a, b};
      while (at < current_edges.size() && current_edges[at] < e)
        ++at;
      if (at < current_edges.size() && current_edges[at] == e)
        continue;
      s.candidates_.push_back(e);
      s.cost_.push_back(costs.cost(e));
    }
  }
  return s;
}

bool EdgeSubsetStream::acceptable(size_t idx) const {
  if (cost_[idx] > budget_ || budget_ - cost_[idx] < total_)
    return false;
  if (removal_mode_ && outdeg_[candidates_[idx].src] <= 1)
    return false;
  return true;
}

void EdgeSubsetStream::push(size_t idx) {
  stack_.push_back(idx);
  chosen_.push_back(candidates_[idx]);
  total_ += cost_[idx];
  if (removal_mode_)
    --outdeg_[candidates_[idx].src];
}

void EdgeSubsetStream::pop() {
  size_t idx = stack_.back();
  stack_.pop_back();
  chosen_.pop_back();
  total_ -= cost_[idx];
  if (removal_mode_)
    ++outdeg_[candidates_[idx].src];
}

bool EdgeSubsetStream::next() {
  if (!started_) {
    started_ = true;
    return true; // the empty set
  }
  // extend the current set first (pre-order), otherwise advance siblings
  size_t from = stack_.empty() ? 0 : stack_.back() + 1;
  for (size_t j = from; j < candidates_.size(); ++j) {
    if (acceptable(j)) {
      push(j);
      return true;
    }
  }
  while (!stack_.empty()) {
    size_t last = stack_.back();
    pop();
    for (size_t j = last + 1; j < candidates_.size(); ++j) {
      if (acceptable(j)) {
        push(j);
        return true;
      }
    }
  }
  return false;
}

SubmodelStream::SubmodelStream(const Model& m, uint64_t budget)
    : base_(m), inner_(EdgeSubsetStream::removals(m, m.edges(), budget)) {}

std::optional<std::pair<EdgeSet, Model>> SubmodelStream::next() {
  if (!inner_.next())
    return std::nullopt;
  EdgeSet removed{std::vector<Edge>(inner_.current().begin(), inner_.current().end()),
                  inner_.current_cost()};
  std::vector<Edge> rest;
  std::set_difference(base_.edges().begin(), base_.edges().end(), removed.pairs.begin(),
                      removed.pairs.end(), std::back_inserter(rest));
  return std::make_pair(std::move(removed), base_.with_edges(std::move(rest)));
}

SupermodelStream::SupermodelStream(const Model& m, uint64_t budget)
    : base_(m), inner_(EdgeSubsetStream::additions(m, m.edges(), budget)) {}

std::optional<std::pair<EdgeSet, Model>> SupermodelStream::next() {
  if (!inner_.next())
    return std::nullopt;
  EdgeSet added{std::vector<Edge>(inner_.current().begin(), inner_.current().end()),
                inner_.current_cost()};
  std::vector<Edge> all;
  std::set_union(base_.edges().begin(), base_.edges().end(), added.pairs.begin(), added.pairs.end(),
                 std::back_inserter(all));
  return std::make_pair(std::move(added), base_.with_edges(std::move(all)));
}

UpdateStream::UpdateStream(const Model& m, uint64_t angel_budget, uint64_t demon_budget)
    : base_(m), demon_budget_(demon_budget),
      additions_(EdgeSubsetStream::additions(m, m.edges(), angel_budget)) {}

std::optional<std::pair<UpdateChoice, Model>> UpdateStream::next() {
  for (;;) {
    if (!removals_) {
      if (!additions_.next())
        return std::nullopt;
      current_add_ = EdgeSet{std::vector<Edge>(additions_.current().begin(), additions_.current().end()),
                             additions_.current_cost()};
      removals_ = EdgeSubsetStream::removals(base_, base_.edges(), demon_budget_);
    }
    if (!removals_->next()) {
      removals_.reset();
      continue;
    }
    UpdateChoice choice;
    choice.additions = current_add_;
    choice.removals = EdgeSet{std::vector<Edge>(removals_->current().begin(), removals_->current().end()),
                              removals_->current_cost()};
    std::vector<Edge> rest;
    std::set_difference(base_.edges().begin(), base_.edges().end(), choice.removals.pairs.begin(),
                        choice.removals.pairs.end(), std::back_inserter(rest));
    std::vector<Edge> all;
    std::set_union(rest.begin(), rest.end(), choice.additions.pairs.begin(),
                   choice.additions.pairs.end(), std::back_inserter(all));
    return std::make_pair(std::move(choice), base_.with_edges(std::move(all)));
  }
}

std::vector<std::pair<EdgeSet, Model>> enumerate_submodels(const Model& m, uint64_t budget) {
  std::vector<std::pair<EdgeSet, Model>> out;
  SubmodelStream s(m, budget);
  while (auto item = s.next())
    out.push_back(std::move(*item));
  return out;
}

std::vector<std::pair<EdgeSet, Model>> enumerate_supermodels(const Model& m, uint64_t budget) {
  std::vector<std::pair<EdgeSet, Model>> out;
  SupermodelStream s(m, budget);
  while (auto item = s.next())
    out.push_back(std::move(*item));
  return out;
}

std::vector<std::pair<UpdateChoice, Model>> enumerate_updates(const Model& m, uint64_t angel_budget,
                                                              uint64_t demon_budget) {
  std::vector<std::pair<UpdateChoice, Model>> out;
  UpdateStream s(m, angel_budget, demon_budget);
  while (auto item = s.next())
    out.push_back(std::move(*item));
  return out;
}

} // namespace sulcheck
