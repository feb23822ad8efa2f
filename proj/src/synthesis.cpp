#include "segtri/synthesis.hpp"

#include <algorithm>
#include <stdexcept>

#include "segtri/conversion.hpp"

namespace segtri {

namespace {

Rat gain(const Instance& inst, const Market& x, int k) {
  Rat g = 0;
  for (int j = k; j <= inst.grid.size(); ++j)
    g += Rat((inst.grid.value(j) - inst.grid.value(k)) * x.masses[static_cast<std::size_t>(j) - 1]);
  return g;
}

IndexSet full_set(int K) {
  IndexSet s;
  for (int k = 1; k <= K; ++k) s.push_back(k);
  return s;
}

DirectSegmentation perfect_discrimination(const Instance& inst) {
  std::vector<DirectEntry> entries;
  for (int k = 1; k <= inst.grid.size(); ++k) {
    Vec masses(static_cast<std::size_t>(inst.grid.size()), 0);
    masses[static_cast<std::size_t>(k) - 1] = 1;
    entries.push_back({k, Market{std::move(masses)}, inst.aggregate.masses[static_cast<std::size_t>(k) - 1]});
  }
  return make_direct(inst, std::move(entries));
}

// The pi > pi* construction: alpha-mix of perfect discrimination and an
// extremal-market decomposition, priced by a beta-blend of the support
// endpoint rules. Every induced market has a unique optimal price, so the
// direct conversion cannot collide.
DirectSegmentation above_uniform_profit(const Instance& inst, const Rat& u, const Rat& pi,
                                        const TriangleSummary& tri) {
  Rat span(tri.w_star - tri.pi_star);
  Rat alpha((pi - tri.pi_star) / span);
  if (alpha == 1) return perfect_discrimination(inst);
  Rat beta(u / Rat((1 - alpha) * span));

  int k_star = optimal_price_set(inst, inst.aggregate).front();
  Decomposition dec = decompose_in_Xk(inst, inst.aggregate, k_star);

  std::vector<Segment> segs;
  for (int k = 1; k <= inst.grid.size(); ++k) {
    Vec masses(static_cast<std::size_t>(inst.grid.size()), 0);
    masses[static_cast<std::size_t>(k) - 1] = 1;
    segs.push_back({Market{std::move(masses)},
                    Rat(alpha * inst.aggregate.masses[static_cast<std::size_t>(k) - 1])});
  }
  for (const auto& [subset, weight] : dec.terms)
    segs.push_back({extremal_market(inst, subset), Rat((1 - alpha) * weight)});

  Segmentation sigma = make_segmentation(inst, std::move(segs));
  PricingRule lo = min_pricing(inst, sigma);
  PricingRule hi = max_pricing(inst, sigma);
  PricingRule phi;
  for (std::size_t i = 0; i < sigma.segments.size(); ++i) {
    Vec row(static_cast<std::size_t>(inst.grid.size()), 0);
    for (std::size_t k = 0; k < row.size(); ++k)
      row[k] = Rat(beta * lo.rows[i][k] + Rat((1 - beta) * hi.rows[i][k]));
    phi.rows.push_back(std::move(row));
  }

  ConversionOutcome out = bbm_convert(inst, sigma, phi);
  if (!out.ok()) throw std::logic_error("synthesis: unexpected collision above uniform profit");
  return *out.direct;
}

}  // namespace

bool in_triangle(const Instance& inst, const Rat& u, const Rat& pi) {
  TriangleSummary tri = triangle(inst);
  return u >= 0 && pi >= tri.pi_star && Rat(u + pi) <= tri.w_star;
}

bool aggregate_is_equal_revenue(const Instance& inst) {
  return inst.aggregate == extremal_market(inst, full_set(inst.grid.size()));
}

Vec prop3_point_set(const Instance& inst) {
  Vec out;
  for (int k = 1; k <= inst.grid.size(); ++k) out.push_back(gain(inst, inst.aggregate, k));
  return out;
}

TwoSegmentConstruction two_segment_solve(const Instance& inst, const IndexSet& P,
                                         const Decomposition& interior, const Rat& u) {
  int K = inst.grid.size();
  if (P.empty() || P.front() != 1 || P.back() != K || static_cast<int>(P.size()) == K)
    throw std::invalid_argument("two_segment_solve: optimal set must contain both grid endpoints and miss some index");
  if (interior.terms.size() < 2)
    throw std::invalid_argument("two_segment_solve: need at least two decomposition terms");
  TriangleSummary tri = triangle(inst);
  Rat span(tri.w_star - tri.pi_star);
  if (u <= 0 || u >= span)
    throw std::invalid_argument("two_segment_solve: consumer surplus must be strictly inside the edge");

  TwoSegmentConstruction c;
  c.S1 = interior.terms[0].first;
  c.S2 = interior.terms[1].first;
  const Rat& a1 = interior.terms[0].second;
  const Rat& a2 = interior.terms[1].second;
  Rat pair_weight(a1 + a2);
  Market xs1 = extremal_market(inst, c.S1);
  Market xs2 = extremal_market(inst, c.S2);
  Vec diff(static_cast<std::size_t>(K));
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = Rat(xs1.masses[j] - xs2.masses[j]);

  // Largest epsilon keeping both split markets in the simplex and both
  // decomposition weights positive for every beta in (0,1); then halve.
  Rat bound(std::min(a1, a2) / pair_weight);
  for (std::size_t j = 0; j < diff.size(); ++j) {
    if (diff[j] == 0) continue;
    Rat coord(inst.aggregate.masses[j] / Rat(pair_weight * abs(diff[j])));
    bound = std::min(bound, coord);
  }
  c.epsilon = Rat(bound / 2);

  // u'(beta) = beta * (C + (1-beta) E) with C the full-information consumer
  // surplus at the lowest price and E the epsilon-shift correction.
  Rat C = gain(inst, inst.aggregate, 1);
  Rat E(Rat(pair_weight * c.epsilon) * Rat(gain(inst, xs1, 1) - gain(inst, xs2, 1)));
  auto u_of = [&](const Rat& beta) { return Rat(beta * Rat(C + Rat(Rat(1 - beta) * E))); };

  c.beta1 = Rat(1, 2);
  while (u_of(c.beta1) > u) c.beta1 /= 2;
  c.beta2 = Rat(9, 10);
  while (u_of(c.beta2) < u) c.beta2 = Rat(1 - Rat(Rat(1 - c.beta2) / 10));

  Rat u1 = u_of(c.beta1);
  Rat u2 = u_of(c.beta2);
  c.lambda = (u1 == u2) ? Rat(1) : Rat(Rat(u2 - u) / Rat(u2 - u1));

  auto split_lo = [&](const Rat& beta) {  // x'(beta), posted the lowest price
    Vec m(static_cast<std::size_t>(K));
    Rat shift(Rat(pair_weight * Rat(1 - beta)) * c.epsilon);
    for (std::size_t j = 0; j < m.size(); ++j)
      m[j] = Rat(inst.aggregate.masses[j] + Rat(shift * diff[j]));
    return Market{std::move(m)};
  };
  auto split_hi = [&](const Rat& beta) {  // x''(beta), posted the highest price
    Vec m(static_cast<std::size_t>(K));
    Rat shift(Rat(pair_weight * beta) * c.epsilon);
    for (std::size_t j = 0; j < m.size(); ++j)
      m[j] = Rat(inst.aggregate.masses[j] - Rat(shift * diff[j]));
    return Market{std::move(m)};
  };
  c.x_prime_1 = split_lo(c.beta1);
  c.x_dprime_1 = split_hi(c.beta1);
  c.x_prime_2 = split_lo(c.beta2);
  c.x_dprime_2 = split_hi(c.beta2);

  Rat w_lo(Rat(c.lambda * c.beta1) + Rat(Rat(1 - c.lambda) * c.beta2));
  Rat w_hi(1 - w_lo);
  Vec m_lo(static_cast<std::size_t>(K)), m_hi(static_cast<std::size_t>(K));
  for (std::size_t j = 0; j < m_lo.size(); ++j) {
    Rat lo(Rat(Rat(c.lambda * c.beta1) * c.x_prime_1.masses[j]) +
           Rat(Rat(Rat(1 - c.lambda) * c.beta2) * c.x_prime_2.masses[j]));
    Rat hi(Rat(Rat(c.lambda * Rat(1 - c.beta1)) * c.x_dprime_1.masses[j]) +
           Rat(Rat(Rat(1 - c.lambda) * Rat(1 - c.beta2)) * c.x_dprime_2.masses[j]));
    m_lo[j] = Rat(lo / w_lo);
    m_hi[j] = Rat(hi / w_hi);
  }
  c.merged = make_direct(inst, {{1, Market{std::move(m_lo)}, w_lo},
                                {K, Market{std::move(m_hi)}, w_hi}});
  return c;
}

SynthesisResult synthesize_direct(const Instance& inst, const Rat& u, const Rat& pi) {
  SynthesisResult res;
  if (!in_triangle(inst, u, pi)) {
    res.status = SynthesisStatus::outside_triangle;
    return res;
  }
  TriangleSummary tri = triangle(inst);
  DirectSegmentation direct;

  if (pi > tri.pi_star) {
    direct = above_uniform_profit(inst, u, pi, tri);
  } else if (aggregate_is_equal_revenue(inst)) {
    Vec points = prop3_point_set(inst);
    int hit = 0;
    for (int k = 1; k <= inst.grid.size(); ++k)
      if (points[static_cast<std::size_t>(k) - 1] == u) { hit = k; break; }
    if (hit == 0) {
      res.status = SynthesisStatus::prop3_gap;
      return res;
    }
    direct = make_direct(inst, {{hit, inst.aggregate, 1}});
  } else {
    IndexSet P = optimal_price_set(inst, inst.aggregate);
    Decomposition dec = interior_decompose(inst, inst.aggregate, P);
    std::vector<Segment> segs;
    for (const auto& [subset, weight] : dec.terms)
      segs.push_back({extremal_market(inst, subset), weight});
    Segmentation sigma = make_segmentation(inst, std::move(segs));

    Rat span(tri.w_star - tri.pi_star);
    bool endpoints_in_P = P.front() == 1 && P.back() == inst.grid.size();
    if (u == 0 || u == span) {
      PricingRule phi = (u == 0) ? max_pricing(inst, sigma) : min_pricing(inst, sigma);
      ConversionOutcome out = bbm_convert(inst, sigma, phi);
      if (!out.ok()) throw std::logic_error("synthesis: unexpected collision at an edge endpoint");
      direct = *out.direct;
    } else if (!endpoints_in_P) {
      // Mixture of the endpoint rules; the induced markets are distinct
      // because their optimal price sets differ.
      Rat t(u / span);
      PricingRule lo = min_pricing(inst, sigma);
      PricingRule hi = max_pricing(inst, sigma);
      PricingRule phi;
      for (std::size_t i = 0; i < sigma.segments.size(); ++i) {
        Vec row(static_cast<std::size_t>(inst.grid.size()), 0);
        for (std::size_t k = 0; k < row.size(); ++k)
          row[k] = Rat(Rat(t * lo.rows[i][k]) + Rat(Rat(1 - t) * hi.rows[i][k]));
        phi.rows.push_back(std::move(row));
      }
      ConversionOutcome out = bbm_convert(inst, sigma, phi);
      if (!out.ok())
        throw std::logic_error("synthesis: mixture collision with no two-segment fallback");
      direct = *out.direct;
    } else {
      direct = two_segment_solve(inst, P, dec, u).merged;
    }
  }

  SurplusAccount acc = surplus(inst, direct);
  if (acc.point.u != u || acc.point.pi != pi)
    throw std::logic_error("synthesis: constructed segmentation missed the target");
  res.status = SynthesisStatus::ok;
  res.achieved = acc.point;
  res.direct = std::move(direct);
  return res;
}

}  // namespace segtri
