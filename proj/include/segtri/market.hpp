#ifndef SEGTRI_MARKET_HPP
#define SEGTRI_MARKET_HPP

#include <utility>
#include <vector>

#include "segtri/rational.hpp"

namespace segtri {

// Valuation indices are 1-based throughout (price index k posts value
// values[k-1]), matching the file formats and the CLI.
using IndexSet = std::vector<int>;  // sorted, strictly increasing

struct ValuationGrid {
  Vec values;  // strictly increasing, strictly positive, size >= 2

  int size() const { return static_cast<int>(values.size()); }
  const Rat& value(int k) const { return values[static_cast<std::size_t>(k) - 1]; }
};

struct Market {
  Vec masses;  // nonnegative, sums to 1

  bool operator==(const Market& other) const { return vec_equal(masses, other.masses); }
};

struct Instance {
  ValuationGrid grid;
  Market aggregate;  // every mass strictly positive
};

struct Decomposition {
  std::vector<std::pair<IndexSet, Rat>> terms;  // (subset, weight)
};

// Validating constructors; throw std::invalid_argument on violated
// invariants.
ValuationGrid make_grid(Vec values);
Market make_market(const ValuationGrid& grid, Vec masses);
Instance make_instance(ValuationGrid grid, Market aggregate);

// Subset-enumeration cap: default 12, overridable via SEGTRI_MAX_K.
int max_grid_size();

// v_k times the tail mass from k.
Rat revenue(const Instance& inst, const Market& x, int k);

// Exact argmax set of revenue over price indices; never empty.
IndexSet optimal_price_set(const Instance& inst, const Market& x);

bool is_in_Xk(const Instance& inst, const Market& x, int k);

// The unique market supported on S with equal revenue at every price in S.
Market extremal_market(const Instance& inst, const IndexSet& S);

// All subsets of {1..K} containing `required`, in ascending bitmask order
// (bit k-1 set iff index k present). This is the enumeration order every
// decomposition routine uses.
std::vector<IndexSet> subsets_containing(int K, const IndexSet& required);

// Nonnegative weights over subsets S containing k with sum 1 and
// sum alpha_S x^S = x. Requires x in X_k.
Decomposition decompose_in_Xk(const Instance& inst, const Market& x, int k);

// Strictly positive weights over all S with P subset of S, recombining to x.
// Solves max t s.t. alpha_S >= t, sum alpha = 1, sum alpha_S x^S = x and
// returns the optimizer. Requires optimal_price_set(x) == P.
Decomposition interior_decompose(const Instance& inst, const Market& x, const IndexSet& P);

// sum of weight * x^S over the decomposition's terms.
Market recombine(const Instance& inst, const Decomposition& d);

}  // namespace segtri

#endif
