#include "segtri/lp.hpp"

#include <stdexcept>

namespace segtri {

namespace {

// Dense tableau: m rows of n structural + m artificial columns, plus rhs.
struct Tableau {
  std::size_t m, n;                 // constraints, structural variables
  std::vector<Vec> t;               // m x (n + m + 1)
  Vec cost;                         // reduced-cost row, length n + m
  Rat value;                        // current objective value
  std::vector<std::size_t> basis;   // basic variable per row

  std::size_t width() const { return n + m; }

  void pivot(std::size_t row, std::size_t col) {
    Rat p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rat f = t[i][col];
      for (std::size_t j = 0; j <= width(); ++j) t[i][j] -= Rat(f * t[row][j]);
    }
    if (cost[col] != 0) {
      Rat f = cost[col];
      for (std::size_t j = 0; j < width(); ++j) cost[j] -= Rat(f * t[row][j]);
      value -= Rat(f * t[row][width()]);
    }
    basis[row] = col;
  }

  // Installs an objective (maximize obj.x over all tableau columns) and
  // reduces it against the current basis.
  void set_objective(const Vec& obj) {
    cost.assign(width(), 0);
    for (std::size_t j = 0; j < obj.size(); ++j) cost[j] = -obj[j];
    value = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (cost[basis[i]] == 0) continue;
      Rat f = cost[basis[i]];
      for (std::size_t j = 0; j < width(); ++j) cost[j] -= Rat(f * t[i][j]);
      value -= Rat(f * t[i][width()]);
    }
  }

  // Bland's rule; entering columns restricted to [0, limit). Returns false
  // when unbounded.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost[j] < 0) { enter = j; break; }
      if (enter == limit) return true;
      std::size_t leave = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        if (leave == m) { leave = i; continue; }
        Rat cur = Rat(t[i][width()] / t[i][enter]);
        Rat best = Rat(t[leave][width()] / t[leave][enter]);
        if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_exact_lp(const LinearProgram& lp) {
  std::size_t m = lp.rows.size();
  std::size_t n = lp.num_vars();
  if (lp.rhs.size() != m) throw std::invalid_argument("lp: rhs/row count mismatch");
  for (const auto& row : lp.rows)
    if (row.size() != n) throw std::invalid_argument("lp: ragged constraint matrix");
  if (!lp.objective.empty() && lp.objective.size() != n)
    throw std::invalid_argument("lp: objective dimension mismatch");

  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.t.assign(m, Vec(n + m + 1, 0));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = lp.rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = flip ? Rat(-lp.rows[i][j]) : lp.rows[i][j];
    tb.t[i][n + m] = flip ? Rat(-lp.rhs[i]) : lp.rhs[i];
    tb.t[i][n + i] = 1;
    tb.basis[i] = n + i;
  }

  // Phase 1: maximize minus the artificial mass.
  Vec phase1(n + m, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  tb.set_objective(phase1);
  tb.optimize(tb.width());
  if (tb.value != 0) return {LpStatus::infeasible, {}, 0};

  // Pivot any artificial still basic (at zero) onto a structural column;
  // rows with no structural entry are redundant and harmless.
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (tb.t[i][j] != 0) { tb.pivot(i, j); break; }
  }

  Vec obj = lp.objective.empty() ? Vec(n, 0) : lp.objective;
  tb.set_objective(obj);
  if (!tb.optimize(n)) return {LpStatus::unbounded, {}, 0};

  LpResult res;
  res.status = LpStatus::optimal;
  res.solution.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) res.solution[tb.basis[i]] = tb.t[i][n + m];
  res.objective = tb.value;
  return res;
}

}  // namespace segtri
