#ifndef SEGTRI_VERIFY_HPP
#define SEGTRI_VERIFY_HPP

#include <cstdint>
#include <string>

#include "segtri/segmentation.hpp"

namespace segtri {

struct Check {
  std::string name;
  bool pass;
  std::string witness;  // empty when passing
};

struct VerificationReport {
  std::vector<Check> checks;
  bool overall = true;

  void add(std::string name, bool pass, std::string witness = "");
};

// Independent re-check of every direct-segmentation invariant: weights,
// averaging, per-entry price optimality via exhaustive argmax, pairwise
// distinctness, and a from-scratch surplus recomputation. When a target
// surplus pair is supplied, exact equality with it is checked too.
VerificationReport verify_direct(const Instance& inst, const DirectSegmentation& d,
                                 const SurplusPoint* target = nullptr);

// Exhaustive-comparison twin of optimal_price_set.
IndexSet brute_optimal_prices(const Instance& inst, const Market& x);

// Deterministic generators with small-denominator rationals.
Instance random_instance(std::uint64_t seed, int K);
std::pair<Segmentation, PricingRule> random_segmentation(std::uint64_t seed, const Instance& inst);

// For candidate direct-segmentation entries claiming producer surplus pi*,
// names the first entry and price where the forced equal-revenue condition
// v_k * tail = v_1 fails. Empty witness means every entry is the
// equal-revenue market.
std::string forced_revenue_violation(const Instance& inst,
                                     const std::vector<DirectEntry>& entries);

// Randomized search (plus the deductive equal-revenue check) that no direct
// segmentation at pi = pi* has multi-market support when the aggregate is
// the equal-revenue market.
VerificationReport prop3_search(const Instance& inst, int trials, std::uint64_t seed = 1);

}  // namespace segtri

#endif
