#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "segtri/synthesis.hpp"
#include "segtri/verify.hpp"

using namespace segtri;
using oracle::q;

TEST_CASE("exhaustive argmax agrees with the incremental optimal set") {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 400; ++trial) {
    int K = 2 + static_cast<int>(rng() % 5);
    Instance inst = random_instance(rng(), K);
    CHECK(brute_optimal_prices(inst, inst.aggregate) == optimal_price_set(inst, inst.aggregate));
    for (const auto& S : subsets_containing(K, {})) {
      Market xs = extremal_market(inst, S);
      CHECK(brute_optimal_prices(inst, xs) == optimal_price_set(inst, xs));
    }
  }
}

TEST_CASE("verify_direct accepts a valid construction and pins the target") {
  Instance inst = oracle::example2();
  SynthesisResult r = synthesize_direct(inst, q("1/3"), q("5/4"));
  REQUIRE(r.status == SynthesisStatus::ok);
  VerificationReport rep = verify_direct(inst, *r.direct);
  CHECK(rep.overall);
  for (const auto& c : rep.checks) CHECK(c.pass);

  SurplusPoint good{q("1/3"), q("5/4")};
  CHECK(verify_direct(inst, *r.direct, &good).overall);
  SurplusPoint bad{q("1/3"), Rat(q("5/4") + q("1/1000000"))};
  VerificationReport miss = verify_direct(inst, *r.direct, &bad);
  CHECK_FALSE(miss.overall);
}

TEST_CASE("verify_direct flags each tampered invariant") {
  Instance inst = oracle::example2();
  SynthesisResult r = synthesize_direct(inst, q("1/5"), q("7/6"));
  REQUIRE(r.status == SynthesisStatus::ok);
  REQUIRE(r.direct->entries.size() >= 2);

  SUBCASE("weights no longer sum to one") {
    DirectSegmentation d = *r.direct;
    d.entries[0].weight += q("1/100");
    VerificationReport rep = verify_direct(inst, d);
    CHECK_FALSE(rep.overall);
  }
  SUBCASE("average drifts from the aggregate") {
    DirectSegmentation d = *r.direct;
    Rat w0 = d.entries[0].weight;
    d.entries[0].weight = d.entries[1].weight;
    d.entries[1].weight = w0;
    if (d.entries[0].weight == w0) {
      d.entries[0].weight -= q("1/97");
      d.entries[1].weight += q("1/97");
    }
    VerificationReport rep = verify_direct(inst, d);
    CHECK_FALSE(rep.overall);
  }
  SUBCASE("posted price loses optimality") {
    DirectSegmentation d = *r.direct;
    // Replace an entry's market with a point mass elsewhere; either the
    // averaging or the optimality check must trip.
    std::size_t K = d.entries[0].market.masses.size();
    Vec point(K, 0);
    std::size_t other = d.entries[0].price == 1 ? K - 1 : 0;
    point[other] = 1;
    d.entries[0].market = Market{point};
    VerificationReport rep = verify_direct(inst, d);
    CHECK_FALSE(rep.overall);
  }
  SUBCASE("duplicate markets across entries") {
    DirectSegmentation d = *r.direct;
    d.entries[1].market = d.entries[0].market;
    VerificationReport rep = verify_direct(inst, d);
    CHECK_FALSE(rep.overall);
  }
}

TEST_CASE("random generators are deterministic in the seed") {
  Instance a = random_instance(77, 4);
  Instance b = random_instance(77, 4);
  CHECK(a.grid.values == b.grid.values);
  CHECK(a.aggregate == b.aggregate);
  Instance c = random_instance(78, 4);
  CHECK((a.grid.values != c.grid.values || !(a.aggregate == c.aggregate)));

  auto [s1, p1] = random_segmentation(5, a);
  auto [s2, p2] = random_segmentation(5, a);
  REQUIRE(s1.segments.size() == s2.segments.size());
  for (std::size_t i = 0; i < s1.segments.size(); ++i) {
    CHECK(s1.segments[i].market == s2.segments[i].market);
    CHECK(s1.segments[i].weight == s2.segments[i].weight);
    CHECK(p1.rows[i] == p2.rows[i]);
  }
}

TEST_CASE("random instances satisfy the construction invariants") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    int K = 2 + static_cast<int>(rng() % 5);
    Instance inst = random_instance(rng(), K);
    REQUIRE(inst.grid.size() == K);
    std::set<Rat> distinct;
    Rat total = 0;
    for (int j = 1; j <= K; ++j) {
      CHECK(inst.grid.value(j) > 0);
      if (j > 1) CHECK(inst.grid.value(j - 1) < inst.grid.value(j));
      distinct.insert(inst.grid.value(j));
    }
    CHECK(distinct.size() == static_cast<std::size_t>(K));
    for (const auto& m : inst.aggregate.masses) {
      CHECK(m > 0);
      total += m;
    }
    CHECK(total == 1);
    auto [sigma, phi] = random_segmentation(rng(), inst);
    CHECK(is_optimal_pricing(inst, sigma, phi));
  }
}

TEST_CASE("forced equal-revenue condition at the uniform profit") {
  Instance er3 = make_instance(make_grid({q("1"), q("2"), q("3")}),
                               Market{{q("1/2"), q("1/6"), q("1/3")}});
  // The aggregate itself satisfies the condition at every price.
  CHECK(forced_revenue_violation(er3, {{1, er3.aggregate, q("1")}}).empty());
  // A tilted market fails it somewhere.
  Market tilted{{q("2/3"), q("1/6"), q("1/6")}};
  CHECK_FALSE(forced_revenue_violation(er3, {{1, tilted, q("1")}}).empty());
}

TEST_CASE("no multi-market direct segmentation at the uniform profit") {
  Instance tiny = oracle::tiny12();
  VerificationReport rep = prop3_search(tiny, 300, 99);
  CHECK(rep.overall);

  Instance er3 = make_instance(make_grid({q("1"), q("2"), q("3")}),
                               Market{{q("1/2"), q("1/6"), q("1/3")}});
  VerificationReport rep3 = prop3_search(er3, 300, 99);
  CHECK(rep3.overall);
}
