#ifndef SULCHECK_REDUCTION_HPP
#define SULCHECK_REDUCTION_HPP

#include <map>
#include <string>
#include <utility>

#include "sulcheck/checker.hpp"
#include "sulcheck/formula.hpp"
#include "sulcheck/model.hpp"
#include "sulcheck/oracle.hpp"

namespace sulcheck {

struct Reduction {
  PointedModel pm;
  Formula formula;
};

/// QBF -> SDL model checking. The model is a hub `s` with a protected
/// self-loop (cost 2) and a cost-1 two-way spoke to each literal state;
/// the formula alternates budget-1 demonic operators guarded by the
/// "exactly the first k variables decided" condition. The pair satisfies
/// check(pm, formula) == qbf_eval(q).
Reduction build_sdl_reduction(const QbfInstance& q);

/// QBF -> SCL: inward star, all costs 1, the angel adds spokes instead of
/// the demon cutting them.
Reduction build_scl_reduction(const QbfInstance& q);

/// Truth-preserving CTL embedding using budget-0 strategic operators of the
/// requested flavor; E-quantified operators are first rewritten through the
/// classical dualities.
Formula translate_ctl(const CtlFormula& f, Flavor flavor);

/// The chain-and-fan model pair distinguished by `<d:1> F p`: true on the
/// first (n+2 fan states), false on the second (n+3 fan states).
std::pair<PointedModel, PointedModel> build_distinguishing_family(uint64_t n);

/// All fixture models, keyed fig1.M1 .. fig6.MPsi.
std::map<std::string, PointedModel> build_figure_fixtures();

} // namespace sulcheck

#endif
