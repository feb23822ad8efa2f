#ifndef SEGTRI_IO_HPP
#define SEGTRI_IO_HPP

#include <optional>
#include <string>

#include "segtri/segmentation.hpp"

namespace segtri {

// All documents are JSON with rationals serialized as strings ("p/q" or an
// integer literal), lowest terms on output. Parse failures and invariant
// violations throw std::invalid_argument.

Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

// A segmentation document always embeds its instance so that downstream
// commands can consume it standalone. Segments may carry an optional
// price_index (deterministic pricing), or an explicit "pricing" matrix.
struct LoadedSegmentation {
  Instance inst;
  bool revised = false;
  std::vector<Market> markets;
  Vec weights;
  std::vector<std::optional<int>> prices;
  std::vector<Vec> pricing;  // explicit rows, empty if prices are used

  bool all_priced() const;
  std::pair<Segmentation, PricingRule> as_general() const;
  RevisedSegmentation as_revised() const;
  DirectSegmentation as_direct() const;
};

LoadedSegmentation parse_segmentation_json(const std::string& text);

std::string direct_to_json(const Instance& inst, const DirectSegmentation& d);
std::string revised_to_json(const Instance& inst, const RevisedSegmentation& rho);
std::string general_to_json(const Instance& inst, const Segmentation& sigma,
                            const PricingRule& phi);

}  // namespace segtri

#endif
