#ifndef SULCHECK_FORMULA_HPP
#define SULCHECK_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sulcheck/error.hpp"

namespace sulcheck {

enum class Flavor { none, sdl, scl, sul };

std::string_view flavor_name(Flavor f);

enum class FKind {
  konst_true,
  konst_false,
  atom,
  negation,
  conj,
  disj,
  implies,
  iff,
  // path constructs; appear only directly under a strategic node
  next,
  until,
  release,
  // strategic nodes; `dual` distinguishes [.] from <.>
  strat_d,
  strat_a,
  strat_u,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  std::string atom;                       // FKind::atom
  bool dual = false;                      // strategic nodes
  bool coalition_angel = false;           // strat_u
  bool coalition_demon = false;           // strat_u
  uint64_t angel_budget = 0;              // strat_a / strat_u
  uint64_t demon_budget = 0;              // strat_d / strat_u
  std::vector<Formula> kids;
};

bool is_path_kind(FKind k);
bool is_strategic_kind(FKind k);

// Construction helpers. Strategic constructors take the path formula last.
namespace fml {
Formula top();
Formula bottom();
Formula atom(std::string name);
Formula negation(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula a);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula finally_(Formula a);  // sugar: true U a
Formula globally(Formula a);  // sugar: false R a
Formula strat_d(uint64_t budget, bool dual, Formula path);
Formula strat_a(uint64_t budget, bool dual, Formula path);
Formula strat_u(bool angel, bool demon, uint64_t angel_budget, uint64_t demon_budget, bool dual,
                Formula path);
} // namespace fml

bool equal(const Formula& a, const Formula& b);

enum class ParseMode {
  state_formula, // path operators only under strategic nodes
  any,           // additionally allow a path formula at the top (nnf tool)
};

/// Parses the concrete syntax (see docs/grammar.md). F/G and dia/box sugar
/// are expanded; dia/box pick the budget-0 operator of the formula's flavor
/// (SDL when no strategic operator fixes one).
Formula parse_formula(std::string_view text, ParseMode mode = ParseMode::state_formula);

/// Canonical printer; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

/// Negation normal form: negations only on atoms, duals first-class,
/// -> and <-> eliminated.
Formula to_nnf(const Formula& f);

/// Symbol count with budgets contributing their binary length
/// (max(1, bit_width(n)) per budget).
uint64_t formula_size(const Formula& f);

/// The single logic the formula belongs to; throws Errc::flavor_mix when
/// operators of different logics are combined.
Flavor formula_flavor(const Formula& f);

/// True when every strategic node wraps a Next path formula.
bool is_next_time_fragment(const Formula& f);

/// Validates path-operator placement and strategic-node children the same
/// way parse_formula does (for programmatically built trees).
void validate_formula(const Formula& f, ParseMode mode = ParseMode::state_formula);

// --- CTL -------------------------------------------------------------------

enum class CKind {
  konst_true,
  konst_false,
  atom,
  negation,
  conj,
  disj,
  implies,
  iff,
  ax,
  ex,
  af,
  ef,
  ag,
  eg,
  au,
  eu,
  ar,
  er,
};

struct CtlNode;
using CtlFormula = std::shared_ptr<const CtlNode>;

struct CtlNode {
  CKind kind;
  std::string atom;
  std::vector<CtlFormula> kids;
};

namespace ctl {
CtlFormula top();
CtlFormula bottom();
CtlFormula atom(std::string name);
CtlFormula negation(CtlFormula a);
CtlFormula conj(CtlFormula a, CtlFormula b);
CtlFormula disj(CtlFormula a, CtlFormula b);
CtlFormula implies(CtlFormula a, CtlFormula b);
CtlFormula iff(CtlFormula a, CtlFormula b);
CtlFormula ax(CtlFormula a);
CtlFormula ex(CtlFormula a);
CtlFormula af(CtlFormula a);
CtlFormula ef(CtlFormula a);
CtlFormula ag(CtlFormula a);
CtlFormula eg(CtlFormula a);
CtlFormula au(CtlFormula a, CtlFormula b);
CtlFormula eu(CtlFormula a, CtlFormula b);
CtlFormula ar(CtlFormula a, CtlFormula b);
CtlFormula er(CtlFormula a, CtlFormula b);
} // namespace ctl

CtlFormula parse_ctl(std::string_view text);
std::string print_ctl(const CtlFormula& f);
bool equal(const CtlFormula& a, const CtlFormula& b);

} // namespace sulcheck

#endif
