#include "adlab/simplex.hpp"

#include <stdexcept>

namespace adlab {

namespace {

// Dense tableau: one row per constraint plus two objective rows (phase 2,
// then phase 1); column layout is structural | slack/surplus | artificial | rhs.
struct Tableau {
  std::size_t m = 0, cols = 0, rhs = 0;
  std::vector<std::vector<mpq_class>> t;
  std::vector<int> basis;
  std::uint64_t pivots = 0;

  void pivot(std::size_t r, std::size_t c) {
    const mpq_class piv = t[r][c];
    for (auto& v : t[r]) v /= piv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r) continue;
      const mpq_class f = t[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= rhs; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = static_cast<int>(c);
    ++pivots;
  }

  // Bland: entering = lowest-index column with negative reduced cost in the
  // objective row obj; leaving = min ratio, ties to the lowest basic column.
  bool step(std::size_t obj, std::size_t limit_col) {
    std::size_t enter = limit_col;
    for (std::size_t j = 0; j < limit_col; ++j)
      if (t[obj][j] < 0) {
        enter = j;
        break;
      }
    if (enter == limit_col) return false;
    std::size_t leave = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      mpq_class ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("lp_minimize: unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution lp_minimize(std::size_t nvars, const std::vector<LpRow>& rows,
                       const std::vector<mpq_class>& cost) {
  if (cost.size() != nvars) throw std::invalid_argument("lp_minimize: cost length != nvars");
  for (const auto& r : rows) {
    if (r.a.size() != nvars) throw std::invalid_argument("lp_minimize: row length != nvars");
  }
  const std::size_t m = rows.size();
  // Count extra columns.
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    const bool neg = r.b < 0;
    const RowSense s = !neg ? r.sense
                            : (r.sense == RowSense::le   ? RowSense::ge
                               : r.sense == RowSense::ge ? RowSense::le
                                                         : RowSense::eq);
    if (s != RowSense::eq) ++n_slack;
    if (s != RowSense::le) ++n_art;
  }
  Tableau tb;
  tb.m = m;
  tb.cols = nvars + n_slack + n_art;
  tb.rhs = tb.cols;
  tb.t.assign(m + 2, std::vector<mpq_class>(tb.cols + 1, 0));
  tb.basis.assign(m, -1);

  const std::size_t phase2 = m, phase1 = m + 1;
  std::size_t slack_at = nvars, art_at = nvars + n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const bool neg = rows[i].b < 0;
    const mpq_class sgn = neg ? -1 : 1;
    for (std::size_t j = 0; j < nvars; ++j) tb.t[i][j] = sgn * rows[i].a[j];
    tb.t[i][tb.rhs] = sgn * rows[i].b;
    RowSense s = !neg ? rows[i].sense
                      : (rows[i].sense == RowSense::le   ? RowSense::ge
                         : rows[i].sense == RowSense::ge ? RowSense::le
                                                         : RowSense::eq);
    if (s == RowSense::le) {
      tb.t[i][slack_at] = 1;
      tb.basis[i] = static_cast<int>(slack_at++);
    } else {
      if (s == RowSense::ge) tb.t[i][slack_at++] = -1;
      tb.t[i][art_at] = 1;
      tb.basis[i] = static_cast<int>(art_at++);
      // Phase-1 objective: minimize the artificials; keep its row reduced.
      for (std::size_t j = 0; j <= tb.rhs; ++j) tb.t[phase1][j] -= tb.t[i][j];
      tb.t[phase1][tb.basis[i]] += 1;
    }
  }
  for (std::size_t j = 0; j < nvars; ++j) tb.t[phase2][j] = cost[j];

  LpSolution sol;
  // Phase 1.
  if (n_art > 0) {
    while (tb.step(phase1, tb.cols)) {
    }
    if (tb.t[phase1][tb.rhs] != 0) {
      sol.feasible = false;
      return sol;
    }
    // Drive leftover artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i) {
      if (tb.basis[i] < static_cast<int>(nvars + n_slack)) continue;
      std::size_t c = nvars + n_slack;
      for (std::size_t j = 0; j < nvars + n_slack; ++j)
        if (tb.t[i][j] != 0) {
          c = j;
          break;
        }
      if (c < nvars + n_slack) tb.pivot(i, c);
      // Otherwise the row is all-zero over real columns (redundant) and can
      // stay basic at level zero.
    }
  }
  // Reduce the phase-2 objective over the current basis.
  for (std::size_t i = 0; i < m; ++i) {
    const int b = tb.basis[i];
    if (b >= 0 && tb.t[phase2][b] != 0) {
      const mpq_class f = tb.t[phase2][b];
      for (std::size_t j = 0; j <= tb.rhs; ++j) tb.t[phase2][j] -= f * tb.t[i][j];
    }
  }
  // Phase 2 never re-enters artificial columns.
  while (tb.step(phase2, nvars + n_slack)) {
  }

  sol.feasible = true;
  sol.objective = -tb.t[phase2][tb.rhs];
  sol.x.assign(nvars, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] >= 0 && tb.basis[i] < static_cast<int>(nvars))
      sol.x[tb.basis[i]] = tb.t[i][tb.rhs];
  sol.pivots = tb.pivots;
  sol.basis = tb.basis;
  sol.certified = true;
  for (std::size_t j = 0; j < nvars + n_slack; ++j)
    if (tb.t[phase2][j] < 0) sol.certified = false;
  return sol;
}

}  // namespace adlab
