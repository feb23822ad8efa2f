#include "segtri/market.hpp"

#include <cstdlib>
#include <stdexcept>

#include "segtri/lp.hpp"

namespace segtri {

ValuationGrid make_grid(Vec values) {
  if (values.size() < 2) throw std::invalid_argument("grid: need at least two valuations");
  if (values[0] <= 0) throw std::invalid_argument("grid: valuations must be strictly positive");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      throw std::invalid_argument("grid: valuations must be strictly increasing");
  return ValuationGrid{std::move(values)};
}

Market make_market(const ValuationGrid& grid, Vec masses) {
  if (static_cast<int>(masses.size()) != grid.size())
    throw std::invalid_argument("market: mass count does not match grid");
  Rat total = 0;
  for (const auto& m : masses) {
    if (m < 0) throw std::invalid_argument("market: negative mass");
    total += m;
  }
  if (total != 1) throw std::invalid_argument("market: masses must sum to 1");
  return Market{std::move(masses)};
}

Instance make_instance(ValuationGrid grid, Market aggregate) {
  if (static_cast<int>(aggregate.masses.size()) != grid.size())
    throw std::invalid_argument("instance: aggregate does not match grid");
  for (const auto& m : aggregate.masses)
    if (m <= 0) throw std::invalid_argument("instance: aggregate masses must be strictly positive");
  return Instance{std::move(grid), std::move(aggregate)};
}

int max_grid_size() {
  if (const char* env = std::getenv("SEGTRI_MAX_K")) {
    int v = std::atoi(env);
    if (v >= 2) return v;
  }
  return 12;
}

static void check_index(const Instance& inst, int k) {
  if (k < 1 || k > inst.grid.size()) throw std::out_of_range("price index out of range");
}

Rat revenue(const Instance& inst, const Market& x, int k) {
  check_index(inst, k);
  Rat tail = 0;
  for (int j = k; j <= inst.grid.size(); ++j) tail += x.masses[static_cast<std::size_t>(j) - 1];
  return Rat(inst.grid.value(k) * tail);
}

IndexSet optimal_price_set(const Instance& inst, const Market& x) {
  IndexSet best;
  Rat best_rev = -1;
  for (int k = 1; k <= inst.grid.size(); ++k) {
    Rat r = revenue(inst, x, k);
    if (r > best_rev) {
      best_rev = r;
      best.clear();
    }
    if (r == best_rev) best.push_back(k);
  }
  return best;
}

bool is_in_Xk(const Instance& inst, const Market& x, int k) {
  check_index(inst, k);
  Rat rk = revenue(inst, x, k);
  for (int i = 1; i <= inst.grid.size(); ++i)
    if (revenue(inst, x, i) > rk) return false;
  return true;
}

Market extremal_market(const Instance& inst, const IndexSet& S) {
  if (S.empty()) throw std::invalid_argument("extremal_market: empty subset");
  for (int k : S) check_index(inst, k);
  const Rat& vmin = inst.grid.value(S.front());
  Vec masses(static_cast<std::size_t>(inst.grid.size()), 0);
  for (std::size_t i = 0; i < S.size(); ++i) {
    Rat tail(vmin / inst.grid.value(S[i]));
    Rat next = (i + 1 < S.size()) ? Rat(vmin / inst.grid.value(S[i + 1])) : Rat(0);
    masses[static_cast<std::size_t>(S[i]) - 1] = Rat(tail - next);
  }
  return Market{std::move(masses)};
}

std::vector<IndexSet> subsets_containing(int K, const IndexSet& required) {
  if (K > max_grid_size()) throw std::invalid_argument("grid size exceeds subset enumeration cap");
  unsigned req_mask = 0;
  for (int k : required) req_mask |= 1u << (k - 1);
  std::vector<IndexSet> out;
  for (unsigned mask = 1; mask < (1u << K); ++mask) {
    if ((mask & req_mask) != req_mask) continue;
    IndexSet s;
    for (int k = 1; k <= K; ++k)
      if (mask & (1u << (k - 1))) s.push_back(k);
    out.push_back(std::move(s));
  }
  return out;
}

Market recombine(const Instance& inst, const Decomposition& d) {
  Vec acc(static_cast<std::size_t>(inst.grid.size()), 0);
  for (const auto& [subset, weight] : d.terms) {
    Market xs = extremal_market(inst, subset);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += Rat(weight * xs.masses[j]);
  }
  return Market{std::move(acc)};
}

// Shared constraint block: sum alpha_S x^S = x (K rows) and sum alpha = 1.
static LinearProgram decomposition_system(const Instance& inst, const Market& x,
                                          const std::vector<IndexSet>& subsets,
                                          bool with_min_weight_var) {
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  std::size_t n = subsets.size() + (with_min_weight_var ? 1 : 0);
  LinearProgram lp;
  lp.rows.assign(K + 1, Vec(n, 0));
  lp.rhs = x.masses;
  lp.rhs.push_back(1);
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    Market xs = extremal_market(inst, subsets[c]);
    for (std::size_t j = 0; j < K; ++j) lp.rows[j][c] = xs.masses[j];
    lp.rows[K][c] = 1;
  }
  return lp;
}

Decomposition decompose_in_Xk(const Instance& inst, const Market& x, int k) {
  if (!is_in_Xk(inst, x, k))
    throw std::invalid_argument("decompose_in_Xk: price is not optimal for the market");
  auto subsets = subsets_containing(inst.grid.size(), {k});
  LinearProgram lp = decomposition_system(inst, x, subsets, false);
  LpResult res = solve_exact_lp(lp);
  if (res.status != LpStatus::optimal)
    throw std::logic_error("decompose_in_Xk: infeasible despite precondition");
  Decomposition d;
  for (std::size_t c = 0; c < subsets.size(); ++c)
    if (res.solution[c] != 0) d.terms.emplace_back(subsets[c], res.solution[c]);
  return d;
}

Decomposition interior_decompose(const Instance& inst, const Market& x, const IndexSet& P) {
  if (optimal_price_set(inst, x) != P)
    throw std::invalid_argument("interior_decompose: P is not the optimal price set of x");
  auto subsets = subsets_containing(inst.grid.size(), P);
  // Variables: s_S = alpha_S - t (>= 0), plus t itself; maximize t.
  LinearProgram lp = decomposition_system(inst, x, subsets, true);
  std::size_t tcol = subsets.size();
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  for (std::size_t j = 0; j < K; ++j) {
    Rat col_sum = 0;
    for (std::size_t c = 0; c < subsets.size(); ++c) col_sum += lp.rows[j][c];
    lp.rows[j][tcol] = col_sum;
  }
  lp.rows[K][tcol] = static_cast<int>(subsets.size());
  lp.objective.assign(subsets.size() + 1, 0);
  lp.objective[tcol] = 1;
  LpResult res = solve_exact_lp(lp);
  if (res.status != LpStatus::optimal)
    throw std::logic_error("interior_decompose: LP did not solve");
  if (res.objective <= 0)
    throw std::logic_error("interior_decompose: no strictly positive decomposition found");
  Decomposition d;
  for (std::size_t c = 0; c < subsets.size(); ++c)
    d.terms.emplace_back(subsets[c], Rat(res.solution[c] + res.solution[tcol]));
  return d;
}

}  // namespace segtri
