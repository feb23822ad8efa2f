#ifndef SEGTRI_SEGMENTATION_HPP
#define SEGTRI_SEGMENTATION_HPP

#include <array>

#include "segtri/market.hpp"

namespace segtri {

struct Segment {
  Market market;
  Rat weight;  // strictly positive
};

// Finite-support distribution over markets averaging to the aggregate.
// Canonical form: segments sorted by market vector, duplicates merged.
struct Segmentation {
  std::vector<Segment> segments;
};

// One price distribution per segment, aligned by index with the
// segmentation it was built for.
struct PricingRule {
  std::vector<Vec> rows;  // rows[i][k-1] = probability of price k in segment i
};

struct RevisedAtom {
  Market market;
  int price;   // 1-based; always optimal for the market
  Rat weight;  // strictly positive
};

// Distribution over market-price pairs averaging to the aggregate; the
// pricing rule is implied (deterministic at each atom's price tag).
struct RevisedSegmentation {
  std::vector<RevisedAtom> atoms;
};

struct DirectEntry {
  int price;  // entry key: at most one entry per price index
  Market market;
  Rat weight;
};

struct DirectSegmentation {
  std::vector<DirectEntry> entries;  // sorted by price
};

struct JointDistribution {
  std::vector<Vec> mass;  // mass[j-1][k-1] = P(valuation j, price k)
};

struct SurplusPoint {
  Rat u;   // consumer surplus
  Rat pi;  // producer surplus
};

struct TriangleSummary {
  Rat pi_star;  // uniform-price profit
  Rat w_star;   // efficient total surplus
  std::array<SurplusPoint, 3> vertices;  // (0,pi*), (w*-pi*,pi*), (0,w*)
};

struct SurplusAccount {
  SurplusPoint point;
  Rat total;  // always u + pi
};

// Canonicalizes (sort + merge equal markets) and checks the averaging
// invariant. A pricing rule given alongside must agree on merged segments.
Segmentation make_segmentation(const Instance& inst, std::vector<Segment> segments);
std::pair<Segmentation, PricingRule> make_segmentation_with_pricing(
    const Instance& inst, std::vector<Segment> segments, std::vector<Vec> rows);

RevisedSegmentation make_revised(const Instance& inst, std::vector<RevisedAtom> atoms);
DirectSegmentation make_direct(const Instance& inst, std::vector<DirectEntry> entries);

bool is_optimal_pricing(const Instance& inst, const Segmentation& sigma, const PricingRule& phi);

SurplusAccount surplus(const Instance& inst, const Segmentation& sigma, const PricingRule& phi);
SurplusAccount surplus(const Instance& inst, const RevisedSegmentation& rho);
SurplusAccount surplus(const Instance& inst, const DirectSegmentation& d);

JointDistribution joint_distribution(const Instance& inst, const Segmentation& sigma,
                                     const PricingRule& phi);
JointDistribution joint_distribution(const Instance& inst, const RevisedSegmentation& rho);
JointDistribution joint_distribution(const Instance& inst, const DirectSegmentation& d);

// Deterministic rules posting each segment's lowest / highest supported
// valuation.
PricingRule min_pricing(const Instance& inst, const Segmentation& sigma);
PricingRule max_pricing(const Instance& inst, const Segmentation& sigma);

TriangleSummary triangle(const Instance& inst);

// Pushes an optimal (sigma, phi) pair into the market-price form; rejects
// non-optimal pricing.
RevisedSegmentation revise(const Instance& inst, const Segmentation& sigma,
                           const PricingRule& phi);

// View of a direct segmentation as an ordinary (sigma, phi) pair.
std::pair<Segmentation, PricingRule> as_pair(const Instance& inst, const DirectSegmentation& d);

}  // namespace segtri

#endif
