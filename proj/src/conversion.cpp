#include "segtri/conversion.hpp"

#include <stdexcept>

namespace segtri {

ConversionOutcome bbm_convert(const Instance& inst, const Segmentation& sigma,
                              const PricingRule& phi) {
  if (!is_optimal_pricing(inst, sigma, phi))
    throw std::invalid_argument("bbm_convert: pricing rule is not optimal");
  std::size_t K = static_cast<std::size_t>(inst.grid.size());

  std::vector<Rat> marginal(K, 0);
  std::vector<Vec> sums(K, Vec(K, 0));
  for (std::size_t i = 0; i < sigma.segments.size(); ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const Rat& p = phi.rows[i][k];
      if (p == 0) continue;
      Rat w(sigma.segments[i].weight * p);
      marginal[k] += w;
      for (std::size_t j = 0; j < K; ++j)
        sums[k][j] += Rat(w * sigma.segments[i].market.masses[j]);
    }

  std::vector<std::pair<int, Market>> induced;
  for (std::size_t k = 0; k < K; ++k) {
    if (marginal[k] == 0) continue;
    Vec masses(K);
    for (std::size_t j = 0; j < K; ++j) masses[j] = Rat(sums[k][j] / marginal[k]);
    Market xk{std::move(masses)};
    if (!is_in_Xk(inst, xk, static_cast<int>(k) + 1))
      throw std::logic_error("bbm_convert: induced market left its price's optimality region");
    induced.emplace_back(static_cast<int>(k) + 1, std::move(xk));
  }

  ConversionOutcome out;
  for (auto& [k, xk] : induced) {
    bool placed = false;
    for (auto& g : out.groups)
      if (g.market == xk) {
        g.prices.push_back(k);
        placed = true;
        break;
      }
    if (!placed) out.groups.push_back({{k}, std::move(xk)});
  }

  bool distinct = true;
  for (const auto& g : out.groups)
    if (g.prices.size() > 1) distinct = false;
  if (distinct) {
    std::vector<DirectEntry> entries;
    for (const auto& g : out.groups)
      entries.push_back({g.prices[0], g.market, marginal[static_cast<std::size_t>(g.prices[0]) - 1]});
    out.direct = make_direct(inst, std::move(entries));
  }
  return out;
}

RevisedSegmentation revised_convert(const Instance& inst, const RevisedSegmentation& rho) {
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  std::vector<Rat> marginal(K, 0);
  std::vector<Vec> sums(K, Vec(K, 0));
  for (const auto& a : rho.atoms) {
    std::size_t k = static_cast<std::size_t>(a.price) - 1;
    marginal[k] += a.weight;
    for (std::size_t j = 0; j < K; ++j) sums[k][j] += Rat(a.weight * a.market.masses[j]);
  }
  std::vector<RevisedAtom> atoms;
  for (std::size_t k = 0; k < K; ++k) {
    if (marginal[k] == 0) continue;
    Vec masses(K);
    for (std::size_t j = 0; j < K; ++j) masses[j] = Rat(sums[k][j] / marginal[k]);
    atoms.push_back({Market{std::move(masses)}, static_cast<int>(k) + 1, marginal[k]});
  }
  return make_revised(inst, std::move(atoms));
}

bool joint_equal(const JointDistribution& a, const JointDistribution& b) {
  if (a.mass.size() != b.mass.size())
    throw std::invalid_argument("joint_equal: dimension mismatch");
  for (std::size_t j = 0; j < a.mass.size(); ++j) {
    if (a.mass[j].size() != b.mass[j].size())
      throw std::invalid_argument("joint_equal: dimension mismatch");
    if (!vec_equal(a.mass[j], b.mass[j])) return false;
  }
  return true;
}

}  // namespace segtri
