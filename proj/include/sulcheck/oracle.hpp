#ifndef SULCHECK_ORACLE_HPP
#define SULCHECK_ORACLE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sulcheck/formula.hpp"
#include "sulcheck/model.hpp"

namespace sulcheck {

/// A closed prenex quantified boolean formula. The matrix is a purely
/// propositional Formula over the prefixed variables.
struct QbfInstance {
  std::vector<std::pair<bool, std::string>> prefix; // (is_forall, variable)
  Formula matrix;
};

/// Text form: `forall p1 exists p2 : (p1 -> p2)` (see docs/qbf-format.md).
QbfInstance parse_qbf(std::string_view text);
std::string print_qbf(const QbfInstance& q);

/// Truth by recursive expansion over all assignments.
bool qbf_eval(const QbfInstance& q);

/// Flips every quantifier and negates the matrix; evaluates to !qbf_eval(q).
QbfInstance dualize_qbf(const QbfInstance& q);

/// Classic CTL labelling over the graph; edge costs are ignored.
bool ctl_check(const Model& m, StateId s, const CtlFormula& f);

struct BruteForceLimits {
  size_t max_states = 3;
  uint64_t max_budget = 2;
};

/// Literal strategy-quantification semantics for the next-time fragment:
/// every agent's one-step choice is drawn from the full powerset of
/// candidate edges (filtered by cost and seriality), independently of the
/// production enumerators. Throws Errc::fragment outside the fragment and
/// Errc::size_bound beyond the limits.
bool brute_force_next(const PointedModel& pm, const Formula& f, const BruteForceLimits& lim = {});

} // namespace sulcheck

#endif
