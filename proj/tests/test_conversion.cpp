#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "segtri/conversion.hpp"
#include "segtri/verify.hpp"

using namespace segtri;
using oracle::q;

TEST_CASE("stochastic uniform pricing collides on V = {1,2}") {
  Instance inst = oracle::tiny12();
  auto [sigma, phi] = make_segmentation_with_pricing(inst, {{inst.aggregate, q("1")}},
                                                     {{q("1/2"), q("1/2")}});
  ConversionOutcome out = bbm_convert(inst, sigma, phi);
  CHECK_FALSE(out.ok());
  REQUIRE(out.groups.size() == 1);
  CHECK(out.groups[0].prices == IndexSet{1, 2});
  CHECK(out.groups[0].market == inst.aggregate);
}

TEST_CASE("three-segment deterministic pricing collides on V = {1,2,3}") {
  Instance inst = oracle::example2();
  std::vector<Segment> segs = {
      {Market{{q("1/2"), q("1/6"), q("1/3")}}, q("1/4")},
      {Market{{q("1/2"), q("1/2"), q("0")}}, q("1/4")},
      {Market{{q("1/2"), q("1/3"), q("1/6")}}, q("1/2")},
  };
  std::vector<Vec> rows = {
      {q("1"), q("0"), q("0")},
      {q("1"), q("0"), q("0")},
      {q("0"), q("1"), q("0")},
  };
  auto [sigma, phi] = make_segmentation_with_pricing(inst, std::move(segs), std::move(rows));
  ConversionOutcome out = bbm_convert(inst, sigma, phi);
  CHECK_FALSE(out.ok());
  REQUIRE(out.groups.size() == 1);
  CHECK(out.groups[0].prices == IndexSet{1, 2});
  // Both induced conditionals equal the aggregate: the heart of the
  // counterexample.
  CHECK(out.groups[0].market == inst.aggregate);
}

TEST_CASE("perfect discrimination converts to itself") {
  Instance inst = oracle::example2();
  std::vector<Segment> segs;
  std::vector<Vec> rows;
  for (int k = 1; k <= 3; ++k) {
    Vec m(3, q("0")), row(3, q("0"));
    m[static_cast<std::size_t>(k) - 1] = q("1");
    row[static_cast<std::size_t>(k) - 1] = q("1");
    segs.push_back({Market{std::move(m)}, inst.aggregate.masses[static_cast<std::size_t>(k) - 1]});
    rows.push_back(std::move(row));
  }
  auto [sigma, phi] = make_segmentation_with_pricing(inst, std::move(segs), std::move(rows));
  ConversionOutcome out = bbm_convert(inst, sigma, phi);
  REQUIRE(out.ok());
  REQUIRE(out.direct->entries.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const DirectEntry& e = out.direct->entries[static_cast<std::size_t>(k) - 1];
    CHECK(e.price == k);
    CHECK(e.weight == inst.aggregate.masses[static_cast<std::size_t>(k) - 1]);
    CHECK(e.market.masses[static_cast<std::size_t>(k) - 1] == 1);
  }
}

TEST_CASE("zero-marginal prices are omitted from the conversion") {
  Instance inst = oracle::example2();
  // Single segment at the aggregate, deterministic price 1: direct form has
  // one entry, prices 2 and 3 unused.
  auto [sigma, phi] = make_segmentation_with_pricing(inst, {{inst.aggregate, q("1")}},
                                                     {{q("1"), q("0"), q("0")}});
  ConversionOutcome out = bbm_convert(inst, sigma, phi);
  REQUIRE(out.ok());
  REQUIRE(out.direct->entries.size() == 1);
  CHECK(out.direct->entries[0].price == 1);
  CHECK(out.direct->entries[0].market == inst.aggregate);
  CHECK(out.direct->entries[0].weight == 1);
}

TEST_CASE("conversion rejects non-optimal pricing") {
  Instance inst = oracle::example2();
  Segmentation sigma = make_segmentation(inst, {{inst.aggregate, q("1")}});
  PricingRule bad{{{q("0"), q("0"), q("1")}}};
  CHECK_THROWS_AS(bbm_convert(inst, sigma, bad), std::invalid_argument);
}

TEST_CASE("successful conversion preserves surplus and the price marginal") {
  std::mt19937_64 rng(314159);
  int converted = 0, collided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int K = 2 + static_cast<int>(rng() % 4);
    Instance inst = random_instance(rng(), K);
    auto [sigma, phi] = random_segmentation(rng(), inst);
    JointDistribution before = joint_distribution(inst, sigma, phi);
    ConversionOutcome out = bbm_convert(inst, sigma, phi);
    // The induced groups always partition the posted prices, and each
    // group's market averages the conditionals exactly.
    std::vector<bool> seen(static_cast<std::size_t>(K), false);
    for (const auto& g : out.groups)
      for (int p : g.prices) {
        CHECK_FALSE(seen[static_cast<std::size_t>(p) - 1]);
        seen[static_cast<std::size_t>(p) - 1] = true;
      }
    // Force a collision on a sibling instance over the same grid: make the
    // aggregate the full equal-revenue market and price it uniformly at
    // random over every (tied) price, so each price induces that market.
    {
      IndexSet full;
      for (int k = 1; k <= K; ++k) full.push_back(k);
      Instance tied = make_instance(inst.grid, extremal_market(inst, full));
      Vec row(static_cast<std::size_t>(K), Rat(1, K));
      auto [cs, cp] =
          make_segmentation_with_pricing(tied, {{tied.aggregate, Rat(1)}}, {std::move(row)});
      ConversionOutcome forced = bbm_convert(tied, cs, cp);
      CHECK_FALSE(forced.ok());
      REQUIRE(forced.groups.size() == 1);
      CHECK(forced.groups[0].prices == full);
      CHECK(forced.groups[0].market == tied.aggregate);
      ++collided;
    }
    if (!out.ok()) {
      bool multi = false;
      for (const auto& g : out.groups) multi = multi || g.prices.size() >= 2;
      CHECK(multi);
      continue;
    }
    ++converted;
    SurplusAccount a = surplus(inst, sigma, phi);
    SurplusAccount b = surplus(inst, *out.direct);
    CHECK(a.point.u == b.point.u);
    CHECK(a.point.pi == b.point.pi);
    // Price marginals match even though the joint usually does not.
    JointDistribution after = joint_distribution(inst, *out.direct);
    for (int k = 0; k < K; ++k) {
      Rat ma = 0, mb = 0;
      for (int j = 0; j < K; ++j) {
        ma += before.mass[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        mb += after.mass[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      CHECK(ma == mb);
    }
    // And the output re-validates as a direct segmentation.
    CHECK(verify_direct(inst, *out.direct).overall);
  }
  CHECK(converted > 0);
  CHECK(collided > 0);
}

TEST_CASE("market-price form conversion always succeeds and keeps the joint") {
  Instance inst = oracle::tiny12();
  auto [sigma, phi] = make_segmentation_with_pricing(inst, {{inst.aggregate, q("1")}},
                                                     {{q("1/2"), q("1/2")}});
  RevisedSegmentation rho = revise(inst, sigma, phi);
  RevisedSegmentation grouped = revised_convert(inst, rho);
  CHECK(joint_equal(joint_distribution(inst, grouped), joint_distribution(inst, rho)));
  // Grouped form: atoms sorted by price, at most one atom per (market,
  // price) pair, here exactly the two original atoms.
  REQUIRE(grouped.atoms.size() == 2);
  CHECK(grouped.atoms[0].price == 1);
  CHECK(grouped.atoms[1].price == 2);

  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    int K = 2 + static_cast<int>(rng() % 4);
    Instance rinst = random_instance(rng(), K);
    auto [rs, rp] = random_segmentation(rng(), rinst);
    RevisedSegmentation r1 = revise(rinst, rs, rp);
    RevisedSegmentation r2 = revised_convert(rinst, r1);
    CHECK(joint_equal(joint_distribution(rinst, r2), joint_distribution(rinst, r1)));
    for (std::size_t i = 1; i < r2.atoms.size(); ++i)
      CHECK(r2.atoms[i - 1].price <= r2.atoms[i].price);
    SurplusAccount a = surplus(rinst, r1);
    SurplusAccount b = surplus(rinst, r2);
    CHECK(a.point.u == b.point.u);
    CHECK(a.point.pi == b.point.pi);
  }
}

TEST_CASE("joint_equal distinguishes dimensions and entries") {
  Instance inst = oracle::tiny12();
  auto [sigma, phi] = make_segmentation_with_pricing(inst, {{inst.aggregate, q("1")}},
                                                     {{q("1/2"), q("1/2")}});
  JointDistribution a = joint_distribution(inst, sigma, phi);
  JointDistribution b = a;
  CHECK(joint_equal(a, b));
  b.mass[0][0] += q("1/8");
  b.mass[0][1] -= q("1/8");
  CHECK_FALSE(joint_equal(a, b));
  JointDistribution c{{Vec{q("1")}}};
  CHECK_THROWS_AS(joint_equal(a, c), std::invalid_argument);
}
