#ifndef SEGTRI_CONVERSION_HPP
#define SEGTRI_CONVERSION_HPP

#include <optional>

#include "segtri/segmentation.hpp"

namespace segtri {

// Prices whose induced markets coincide, with the shared market. The
// outcome carries the full partition; groups of size >= 2 are collisions.
struct InducedGroup {
  IndexSet prices;  // ascending
  Market market;
};

struct ConversionOutcome {
  std::optional<DirectSegmentation> direct;  // set iff all groups are singletons
  std::vector<InducedGroup> groups;          // partition of the posted prices

  bool ok() const { return direct.has_value(); }
};

// Builds the induced price-indexed markets x^k from an optimal (sigma, phi)
// and returns the direct segmentation when they are pairwise distinct, or
// the collision certificate when they are not. Prices with zero marginal
// probability are omitted.
ConversionOutcome bbm_convert(const Instance& inst, const Segmentation& sigma,
                              const PricingRule& phi);

// Market-price form conversion: groups atoms by posted price. Always
// succeeds and preserves the joint distribution.
RevisedSegmentation revised_convert(const Instance& inst, const RevisedSegmentation& rho);

bool joint_equal(const JointDistribution& a, const JointDistribution& b);

}  // namespace segtri

#endif
