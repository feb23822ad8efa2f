#include "segtri/segmentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace segtri {

namespace {

void check_market(const Instance& inst, const Market& x) {
  if (static_cast<int>(x.masses.size()) != inst.grid.size())
    throw std::invalid_argument("segmentation: market size does not match grid");
  Rat total = 0;
  for (const auto& m : x.masses) {
    if (m < 0) throw std::invalid_argument("segmentation: negative market mass");
    total += m;
  }
  if (total != 1) throw std::invalid_argument("segmentation: market masses must sum to 1");
}

void check_average(const Instance& inst, const Vec& weighted_sum, const Rat& weight_sum) {
  if (weight_sum != 1) throw std::invalid_argument("segmentation: weights must sum to 1");
  if (!vec_equal(weighted_sum, inst.aggregate.masses))
    throw std::invalid_argument("segmentation: segments do not average to the aggregate market");
}

void check_row(const Instance& inst, const Vec& row) {
  if (static_cast<int>(row.size()) != inst.grid.size())
    throw std::invalid_argument("pricing: row size does not match grid");
  Rat total = 0;
  for (const auto& p : row) {
    if (p < 0) throw std::invalid_argument("pricing: negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("pricing: row must sum to 1");
}

// Consumer surplus of market x at posted price k.
Rat gain(const Instance& inst, const Market& x, int k) {
  Rat g = 0;
  for (int j = k; j <= inst.grid.size(); ++j)
    g += Rat((inst.grid.value(j) - inst.grid.value(k)) * x.masses[static_cast<std::size_t>(j) - 1]);
  return g;
}

int min_support(const Market& x) {
  for (std::size_t j = 0; j < x.masses.size(); ++j)
    if (x.masses[j] > 0) return static_cast<int>(j) + 1;
  throw std::invalid_argument("market has empty support");
}

int max_support(const Market& x) {
  for (std::size_t j = x.masses.size(); j > 0; --j)
    if (x.masses[j - 1] > 0) return static_cast<int>(j);
  throw std::invalid_argument("market has empty support");
}

}  // namespace

Segmentation make_segmentation(const Instance& inst, std::vector<Segment> segments) {
  std::vector<Vec> no_rows;
  Vec sum(static_cast<std::size_t>(inst.grid.size()), 0);
  Rat wsum = 0;
  for (const auto& s : segments) {
    check_market(inst, s.market);
    if (s.weight <= 0) throw std::invalid_argument("segmentation: weights must be strictly positive");
    wsum += s.weight;
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += Rat(s.weight * s.market.masses[j]);
  }
  check_average(inst, sum, wsum);
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return vec_less(a.market.masses, b.market.masses); });
  Segmentation out;
  for (auto& s : segments) {
    if (!out.segments.empty() && out.segments.back().market == s.market)
      out.segments.back().weight += s.weight;
    else
      out.segments.push_back(std::move(s));
  }
  return out;
}

std::pair<Segmentation, PricingRule> make_segmentation_with_pricing(
    const Instance& inst, std::vector<Segment> segments, std::vector<Vec> rows) {
  if (rows.size() != segments.size())
    throw std::invalid_argument("pricing: row count does not match segment count");
  for (const auto& r : rows) check_row(inst, r);
  // A pricing rule is a function of the market, so equal markets with
  // different rows are ill-formed under the original definition.
  std::vector<std::size_t> order(segments.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vec_less(segments[a].market.masses, segments[b].market.masses);
  });
  std::vector<Segment> sorted;
  std::vector<Vec> sorted_rows;
  for (std::size_t i : order) {
    if (!sorted.empty() && sorted.back().market == segments[i].market) {
      if (!vec_equal(sorted_rows.back(), rows[i]))
        throw std::invalid_argument("pricing: equal markets assigned different price rows");
      sorted.back().weight += segments[i].weight;
    } else {
      sorted.push_back(std::move(segments[i]));
      sorted_rows.push_back(std::move(rows[i]));
    }
  }
  Segmentation sigma = make_segmentation(inst, std::move(sorted));
  return {std::move(sigma), PricingRule{std::move(sorted_rows)}};
}

RevisedSegmentation make_revised(const Instance& inst, std::vector<RevisedAtom> atoms) {
  Vec sum(static_cast<std::size_t>(inst.grid.size()), 0);
  Rat wsum = 0;
  for (const auto& a : atoms) {
    check_market(inst, a.market);
    if (a.weight <= 0) throw std::invalid_argument("revised: weights must be strictly positive");
    if (!is_in_Xk(inst, a.market, a.price))
      throw std::invalid_argument("revised: atom price is not optimal for its market");
    wsum += a.weight;
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += Rat(a.weight * a.market.masses[j]);
  }
  check_average(inst, sum, wsum);
  std::sort(atoms.begin(), atoms.end(), [](const RevisedAtom& a, const RevisedAtom& b) {
    if (a.price != b.price) return a.price < b.price;
    return vec_less(a.market.masses, b.market.masses);
  });
  RevisedSegmentation out;
  for (auto& a : atoms) {
    if (!out.atoms.empty() && out.atoms.back().price == a.price && out.atoms.back().market == a.market)
      out.atoms.back().weight += a.weight;
    else
      out.atoms.push_back(std::move(a));
  }
  return out;
}

DirectSegmentation make_direct(const Instance& inst, std::vector<DirectEntry> entries) {
  Vec sum(static_cast<std::size_t>(inst.grid.size()), 0);
  Rat wsum = 0;
  for (const auto& e : entries) {
    check_market(inst, e.market);
    if (e.weight <= 0) throw std::invalid_argument("direct: weights must be strictly positive");
    if (!is_in_Xk(inst, e.market, e.price))
      throw std::invalid_argument("direct: posted price is not optimal for its market");
  }
  std::sort(entries.begin(), entries.end(),
            [](const DirectEntry& a, const DirectEntry& b) { return a.price < b.price; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    wsum += entries[i].weight;
    for (std::size_t j = 0; j < sum.size(); ++j)
      sum[j] += Rat(entries[i].weight * entries[i].market.masses[j]);
    for (std::size_t l = i + 1; l < entries.size(); ++l) {
      if (entries[l].price == entries[i].price)
        throw std::invalid_argument("direct: duplicate price index");
      if (entries[l].market == entries[i].market)
        throw std::invalid_argument("direct: markets must be pairwise distinct");
    }
  }
  check_average(inst, sum, wsum);
  return DirectSegmentation{std::move(entries)};
}

bool is_optimal_pricing(const Instance& inst, const Segmentation& sigma, const PricingRule& phi) {
  if (phi.rows.size() != sigma.segments.size())
    throw std::invalid_argument("pricing: row count does not match segment count");
  for (std::size_t i = 0; i < sigma.segments.size(); ++i)
    for (int k = 1; k <= inst.grid.size(); ++k)
      if (phi.rows[i][static_cast<std::size_t>(k) - 1] > 0 &&
          !is_in_Xk(inst, sigma.segments[i].market, k))
        return false;
  return true;
}

SurplusAccount surplus(const Instance& inst, const Segmentation& sigma, const PricingRule& phi) {
  if (phi.rows.size() != sigma.segments.size())
    throw std::invalid_argument("pricing: row count does not match segment count");
  SurplusAccount acc{{0, 0}, 0};
  for (std::size_t i = 0; i < sigma.segments.size(); ++i) {
    const auto& seg = sigma.segments[i];
    for (int k = 1; k <= inst.grid.size(); ++k) {
      const Rat& p = phi.rows[i][static_cast<std::size_t>(k) - 1];
      if (p == 0) continue;
      Rat w(seg.weight * p);
      acc.point.u += Rat(w * gain(inst, seg.market, k));
      acc.point.pi += Rat(w * revenue(inst, seg.market, k));
    }
  }
  acc.total = Rat(acc.point.u + acc.point.pi);
  return acc;
}

SurplusAccount surplus(const Instance& inst, const RevisedSegmentation& rho) {
  SurplusAccount acc{{0, 0}, 0};
  for (const auto& a : rho.atoms) {
    acc.point.u += Rat(a.weight * gain(inst, a.market, a.price));
    acc.point.pi += Rat(a.weight * revenue(inst, a.market, a.price));
  }
  acc.total = Rat(acc.point.u + acc.point.pi);
  return acc;
}

SurplusAccount surplus(const Instance& inst, const DirectSegmentation& d) {
  SurplusAccount acc{{0, 0}, 0};
  for (const auto& e : d.entries) {
    acc.point.u += Rat(e.weight * gain(inst, e.market, e.price));
    acc.point.pi += Rat(e.weight * revenue(inst, e.market, e.price));
  }
  acc.total = Rat(acc.point.u + acc.point.pi);
  return acc;
}

JointDistribution joint_distribution(const Instance& inst, const Segmentation& sigma,
                                     const PricingRule& phi) {
  if (phi.rows.size() != sigma.segments.size())
    throw std::invalid_argument("pricing: row count does not match segment count");
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  JointDistribution jd{std::vector<Vec>(K, Vec(K, 0))};
  for (std::size_t i = 0; i < sigma.segments.size(); ++i)
    for (std::size_t k = 0; k < K; ++k) {
      const Rat& p = phi.rows[i][k];
      if (p == 0) continue;
      Rat w(sigma.segments[i].weight * p);
      for (std::size_t j = 0; j < K; ++j)
        jd.mass[j][k] += Rat(w * sigma.segments[i].market.masses[j]);
    }
  return jd;
}

JointDistribution joint_distribution(const Instance& inst, const RevisedSegmentation& rho) {
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  JointDistribution jd{std::vector<Vec>(K, Vec(K, 0))};
  for (const auto& a : rho.atoms)
    for (std::size_t j = 0; j < K; ++j)
      jd.mass[j][static_cast<std::size_t>(a.price) - 1] += Rat(a.weight * a.market.masses[j]);
  return jd;
}

JointDistribution joint_distribution(const Instance& inst, const DirectSegmentation& d) {
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  JointDistribution jd{std::vector<Vec>(K, Vec(K, 0))};
  for (const auto& e : d.entries)
    for (std::size_t j = 0; j < K; ++j)
      jd.mass[j][static_cast<std::size_t>(e.price) - 1] += Rat(e.weight * e.market.masses[j]);
  return jd;
}

static PricingRule support_pricing(const Instance& inst, const Segmentation& sigma, bool low) {
  PricingRule phi;
  for (const auto& s : sigma.segments) {
    Vec row(static_cast<std::size_t>(inst.grid.size()), 0);
    int k = low ? min_support(s.market) : max_support(s.market);
    row[static_cast<std::size_t>(k) - 1] = 1;
    phi.rows.push_back(std::move(row));
  }
  return phi;
}

PricingRule min_pricing(const Instance& inst, const Segmentation& sigma) {
  return support_pricing(inst, sigma, true);
}

PricingRule max_pricing(const Instance& inst, const Segmentation& sigma) {
  return support_pricing(inst, sigma, false);
}

TriangleSummary triangle(const Instance& inst) {
  Rat pi_star = 0;
  for (int k = 1; k <= inst.grid.size(); ++k)
    pi_star = std::max(pi_star, revenue(inst, inst.aggregate, k));
  Rat w_star = 0;
  for (int j = 1; j <= inst.grid.size(); ++j)
    w_star += Rat(inst.grid.value(j) * inst.aggregate.masses[static_cast<std::size_t>(j) - 1]);
  TriangleSummary t;
  t.pi_star = pi_star;
  t.w_star = w_star;
  t.vertices = {SurplusPoint{0, pi_star}, SurplusPoint{Rat(w_star - pi_star), pi_star},
                SurplusPoint{0, w_star}};
  return t;
}

RevisedSegmentation revise(const Instance& inst, const Segmentation& sigma,
                           const PricingRule& phi) {
  if (!is_optimal_pricing(inst, sigma, phi))
    throw std::invalid_argument("revise: pricing rule is not optimal");
  std::vector<RevisedAtom> atoms;
  for (std::size_t i = 0; i < sigma.segments.size(); ++i)
    for (int k = 1; k <= inst.grid.size(); ++k) {
      const Rat& p = phi.rows[i][static_cast<std::size_t>(k) - 1];
      if (p > 0)
        atoms.push_back({sigma.segments[i].market, k, Rat(sigma.segments[i].weight * p)});
    }
  return make_revised(inst, std::move(atoms));
}

std::pair<Segmentation, PricingRule> as_pair(const Instance& inst, const DirectSegmentation& d) {
  std::vector<Segment> segs;
  std::vector<Vec> rows;
  for (const auto& e : d.entries) {
    segs.push_back({e.market, e.weight});
    Vec row(static_cast<std::size_t>(inst.grid.size()), 0);
    row[static_cast<std::size_t>(e.price) - 1] = 1;
    rows.push_back(std::move(row));
  }
  return make_segmentation_with_pricing(inst, std::move(segs), std::move(rows));
}

}  // namespace segtri
