#include "segtri/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "segtri/conversion.hpp"
#include "segtri/synthesis.hpp"

namespace segtri {

void VerificationReport::add(std::string name, bool pass, std::string witness) {
  overall = overall && pass;
  checks.push_back({std::move(name), pass, std::move(witness)});
}

IndexSet brute_optimal_prices(const Instance& inst, const Market& x) {
  std::size_t K = static_cast<std::size_t>(inst.grid.size());
  Vec revs(K);
  for (std::size_t k = 0; k < K; ++k) {
    Rat tail = 0;
    for (std::size_t j = k; j < K; ++j) tail += x.masses[j];
    revs[k] = Rat(inst.grid.values[k] * tail);
  }
  Rat best = revs[0];
  for (std::size_t k = 1; k < K; ++k)
    if (revs[k] > best) best = revs[k];
  IndexSet out;
  for (std::size_t k = 0; k < K; ++k)
    if (revs[k] == best) out.push_back(static_cast<int>(k) + 1);
  return out;
}

VerificationReport verify_direct(const Instance& inst, const DirectSegmentation& d,
                                 const SurplusPoint* target) {
  VerificationReport rep;
  std::size_t K = static_cast<std::size_t>(inst.grid.size());

  bool weights_ok = !d.entries.empty();
  Rat wsum = 0;
  std::string w_witness = d.entries.empty() ? "no entries" : "";
  for (const auto& e : d.entries) {
    if (e.weight <= 0 && w_witness.empty())
      w_witness = "nonpositive weight at price " + std::to_string(e.price);
    weights_ok = weights_ok && e.weight > 0;
    wsum += e.weight;
  }
  if (weights_ok && wsum != 1) {
    weights_ok = false;
    w_witness = "weights sum to " + to_string(wsum);
  }
  rep.add("weights", weights_ok, w_witness);

  Vec avg(K, 0);
  for (const auto& e : d.entries)
    for (std::size_t j = 0; j < K && j < e.market.masses.size(); ++j)
      avg[j] += Rat(e.weight * e.market.masses[j]);
  bool avg_ok = vec_equal(avg, inst.aggregate.masses);
  rep.add("average-equals-aggregate", avg_ok, avg_ok ? "" : "weighted average differs from x*");

  bool opt_ok = true;
  std::string opt_witness;
  for (const auto& e : d.entries) {
    IndexSet opt = brute_optimal_prices(inst, e.market);
    bool in = false;
    for (int k : opt) in = in || k == e.price;
    if (!in && opt_ok) {
      opt_ok = false;
      opt_witness = "price " + std::to_string(e.price) + " is not optimal in its segment";
    }
  }
  rep.add("prices-optimal", opt_ok, opt_witness);

  bool distinct_ok = true;
  std::string distinct_witness;
  for (std::size_t a = 0; a < d.entries.size() && distinct_ok; ++a)
    for (std::size_t b = a + 1; b < d.entries.size() && distinct_ok; ++b) {
      if (d.entries[a].price == d.entries[b].price) {
        distinct_ok = false;
        distinct_witness = "duplicate price " + std::to_string(d.entries[a].price);
      } else if (d.entries[a].market == d.entries[b].market) {
        distinct_ok = false;
        distinct_witness = "prices " + std::to_string(d.entries[a].price) + " and " +
                           std::to_string(d.entries[b].price) + " share a market";
      }
    }
  rep.add("markets-distinct", distinct_ok, distinct_witness);

  // Surplus from first principles, without going through surplus().
  Rat u = 0, pi = 0;
  for (const auto& e : d.entries) {
    std::size_t k = static_cast<std::size_t>(e.price) - 1;
    for (std::size_t j = k; j < K && j < e.market.masses.size(); ++j) {
      u += Rat(Rat(e.weight * e.market.masses[j]) * Rat(inst.grid.values[j] - inst.grid.values[k]));
      pi += Rat(Rat(e.weight * e.market.masses[j]) * inst.grid.values[k]);
    }
  }
  rep.add("surplus-nonnegative", u >= 0 && pi >= 0);
  if (target) {
    bool hit = u == target->u && pi == target->pi;
    rep.add("surplus-matches-target", hit,
            hit ? "" : "(u, pi) = (" + to_string(u) + ", " + to_string(pi) + ")");
  }
  return rep;
}

namespace {

Rat random_positive_rat(std::mt19937_64& rng, unsigned max_num) {
  return Rat(1 + static_cast<long>(rng() % max_num));
}

}  // namespace

Instance random_instance(std::uint64_t seed, int K) {
  std::mt19937_64 rng(seed);
  std::vector<long> vals;
  while (static_cast<int>(vals.size()) < K) {
    long v = 1 + static_cast<long>(rng() % 30);
    bool dup = false;
    for (long w : vals) dup = dup || w == v;
    if (!dup) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  Vec values;
  for (long v : vals) values.push_back(Rat(v));
  Vec masses;
  Rat total = 0;
  for (int k = 0; k < K; ++k) {
    Rat m = random_positive_rat(rng, 9);
    masses.push_back(m);
    total += m;
  }
  for (auto& m : masses) m /= total;
  return make_instance(make_grid(std::move(values)), Market{std::move(masses)});
}

std::pair<Segmentation, PricingRule> random_segmentation(std::uint64_t seed,
                                                         const Instance& inst) {
  std::mt19937_64 rng(seed);
  std::size_t K = static_cast<std::size_t>(inst.grid.size());

  // Start from perfect discrimination and apply weight-preserving merges;
  // every intermediate list still averages to the aggregate.
  std::vector<Segment> segs;
  for (std::size_t k = 0; k < K; ++k) {
    Vec masses(K, 0);
    masses[k] = 1;
    segs.push_back({Market{std::move(masses)}, inst.aggregate.masses[k]});
  }
  std::size_t rounds = 2 + rng() % 4;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::size_t a = rng() % segs.size();
    std::size_t b = rng() % segs.size();
    if (a == b) continue;
    Rat f(1 + static_cast<long>(rng() % 3), 4);  // move this fraction of both weights
    f.canonicalize();
    Rat moved(Rat(f * segs[a].weight) + Rat(f * segs[b].weight));
    Vec mix(K);
    for (std::size_t j = 0; j < K; ++j)
      mix[j] = Rat(Rat(Rat(f * segs[a].weight) * segs[a].market.masses[j]) +
                   Rat(Rat(f * segs[b].weight) * segs[b].market.masses[j]));
    for (auto& m : mix) m /= moved;
    segs[a].weight *= Rat(1 - f);
    segs[b].weight *= Rat(1 - f);
    segs.push_back({Market{std::move(mix)}, moved});
  }

  Segmentation sigma = make_segmentation(inst, std::move(segs));
  PricingRule phi;
  for (const auto& s : sigma.segments) {
    IndexSet opt = brute_optimal_prices(inst, s.market);
    IndexSet chosen;
    for (int k : opt)
      if (rng() % 2 == 0) chosen.push_back(k);
    if (chosen.empty()) chosen.push_back(opt[rng() % opt.size()]);
    Vec row(K, 0);
    Rat total = 0;
    for (int k : chosen) {
      Rat p = random_positive_rat(rng, 5);
      row[static_cast<std::size_t>(k) - 1] = p;
      total += p;
    }
    for (auto& p : row) p /= total;
    phi.rows.push_back(std::move(row));
  }
  return {std::move(sigma), std::move(phi)};
}

std::string forced_revenue_violation(const Instance& inst,
                                     const std::vector<DirectEntry>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (int k = 1; k <= inst.grid.size(); ++k) {
      Rat tail = 0;
      for (int j = k; j <= inst.grid.size(); ++j)
        tail += entries[i].market.masses[static_cast<std::size_t>(j) - 1];
      if (Rat(inst.grid.value(k) * tail) != inst.grid.value(1))
        return "entry " + std::to_string(i) + " (price " + std::to_string(entries[i].price) +
               "): revenue at price " + std::to_string(k) + " is " +
               to_string(Rat(inst.grid.value(k) * tail)) + ", not " + to_string(inst.grid.value(1));
    }
  return "";
}

VerificationReport prop3_search(const Instance& inst, int trials, std::uint64_t seed) {
  if (!aggregate_is_equal_revenue(inst))
    throw std::invalid_argument("prop3_search: aggregate is not the equal-revenue market");
  VerificationReport rep;
  TriangleSummary tri = triangle(inst);
  int at_pi_star = 0;
  bool ok = true;
  std::string witness;
  for (int t = 0; t < trials && ok; ++t) {
    auto [sigma, phi] = random_segmentation(seed * 100003 + static_cast<std::uint64_t>(t), inst);
    ConversionOutcome out = bbm_convert(inst, sigma, phi);
    if (!out.ok()) continue;  // no direct form under the original definition
    SurplusAccount acc = surplus(inst, *out.direct);
    if (acc.point.pi != tri.pi_star) continue;
    ++at_pi_star;
    if (out.direct->entries.size() > 1) {
      ok = false;
      witness = "multi-segment direct segmentation at pi*; " +
                forced_revenue_violation(inst, out.direct->entries);
    } else if (!(out.direct->entries[0].market == inst.aggregate)) {
      ok = false;
      witness = "single segment at pi* differs from the equal-revenue market";
    }
  }
  rep.add("no-counterexample", ok, witness);
  rep.add("trials-at-uniform-profit", true, std::to_string(at_pi_star) + " samples hit pi*");
  // Deductive side: multi-market support at pi* forces equal revenue at
  // every price in every segment, which pins each market down uniquely.
  Market xv = extremal_market(inst, [&] {
    IndexSet s;
    for (int k = 1; k <= inst.grid.size(); ++k) s.push_back(k);
    return s;
  }());
  bool forced = forced_revenue_violation(inst, {{1, xv, 1}}).empty();
  rep.add("equal-revenue-market-is-unique-support", forced);
  return rep;
}

}  // namespace segtri
