#ifndef SEGTRI_SYNTHESIS_HPP
#define SEGTRI_SYNTHESIS_HPP

#include <optional>

#include "segtri/segmentation.hpp"

namespace segtri {

enum class SynthesisStatus { ok, outside_triangle, prop3_gap };

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::outside_triangle;
  std::optional<DirectSegmentation> direct;  // set iff status == ok
  SurplusPoint achieved{0, 0};               // recomputed from the output
};

// Exact membership in T = {u >= 0, pi >= pi*, u + pi <= w*}.
bool in_triangle(const Instance& inst, const Rat& u, const Rat& pi);

// True iff the aggregate is the equal-revenue market over the full grid,
// the one aggregate for which the direct frontier degenerates.
bool aggregate_is_equal_revenue(const Instance& inst);

// The K consumer-surplus values reachable at pi = pi* when the aggregate is
// the equal-revenue market, in price-index order.
Vec prop3_point_set(const Instance& inst);

// Decides feasibility of the target (u, pi) and constructs a direct
// segmentation achieving it exactly.
SynthesisResult synthesize_direct(const Instance& inst, const Rat& u, const Rat& pi);

// The two-segment construction used when the optimal price set of the
// aggregate contains both endpoints of the grid but not all of it. A single
// split weight solving u'(beta) = u is generally irrational, so two
// rational brackets beta1, beta2 with u'(beta1) <= u <= u'(beta2) are
// merged with weight lambda; consumer surplus is affine in weighted
// markets at a fixed posted price, so the merge hits u exactly.
struct TwoSegmentConstruction {
  IndexSet S1, S2;
  Rat epsilon;
  Rat beta1, beta2, lambda;
  Market x_prime_1, x_dprime_1;  // the split at beta1
  Market x_prime_2, x_dprime_2;  // the split at beta2
  DirectSegmentation merged;
};

TwoSegmentConstruction two_segment_solve(const Instance& inst, const IndexSet& P,
                                         const Decomposition& interior, const Rat& u);

}  // namespace segtri

#endif
