#ifndef SULCHECK_ERROR_HPP
#define SULCHECK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sulcheck {

enum class Errc {
  syntax,
  undeclared_state,
  duplicate_state,
  duplicate_edge,
  duplicate_atom,
  duplicate_cost,
  non_positive_cost,
  seriality,
  edge_not_present,
  edge_already_present,
  overflow,
  bad_budget,
  bad_coalition,
  path_outside_strategic,
  strategic_needs_path,
  flavor_mix,
  fragment,
  size_bound,
  no_witness,
  table_gap,
  budget_violated,
  bad_strategy,
  resource_cap,
  io,
};

// Single exception type for the whole library. Parse errors carry a
// 1-based line/column; everything else leaves them at 0.
class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message, int line = 0, int column = 0)
      : std::runtime_error(std::move(message)), code_(code), line_(line), column_(column) {}

  Errc code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  Errc code_;
  int line_;
  int column_;
};

} // namespace sulcheck

#endif
