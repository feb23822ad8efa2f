#ifndef SEGTRI_LP_HPP
#define SEGTRI_LP_HPP

#include <vector>

#include "segtri/rational.hpp"

namespace segtri {

// Exact-rational LP in standard form:
//
//   maximize c.x   subject to   A x = b,  x >= 0.
//
// Two-phase dense simplex with Bland's pivot rule, so the solve is
// deterministic and cannot cycle. Column order is the caller's variable
// order; ties in the ratio test break toward the lowest basic variable
// index.
struct LinearProgram {
  std::vector<Vec> rows;  // A, one Vec per equality constraint
  Vec rhs;                // b
  Vec objective;          // c, empty means pure feasibility

  std::size_t num_vars() const { return rows.empty() ? objective.size() : rows[0].size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vec solution;   // valid when optimal
  Rat objective;  // valid when optimal
};

LpResult solve_exact_lp(const LinearProgram& lp);

}  // namespace segtri

#endif
