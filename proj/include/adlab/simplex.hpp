#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace adlab {

enum class RowSense { le, ge, eq };

struct LpRow {
  std::vector<mpq_class> a;  // dense coefficients over the structural variables
  RowSense sense = RowSense::le;
  mpq_class b;
};

struct LpSolution {
  bool feasible = false;
  mpq_class objective;
  std::vector<mpq_class> x;    // structural variables only
  std::uint64_t pivots = 0;
  std::vector<int> basis;      // final basic columns (tableau indexing)
  bool certified = false;      // reduced costs re-verified nonnegative at exit
};

/**
 * Minimizes cost . x subject to rows and x >= 0, exactly over rationals.
 * Two-phase dense tableau with Bland's rule (terminates on degenerate
 * problems); throws std::runtime_error on unbounded problems.
 */
LpSolution lp_minimize(std::size_t nvars, const std::vector<LpRow>& rows,
                       const std::vector<mpq_class>& cost);

}  // namespace adlab
