#include <doctest.h>

#include "oracle.hpp"
#include "segtri/synthesis.hpp"
#include "segtri/verify.hpp"

using namespace segtri;
using oracle::q;

namespace {

void check_hits(const Instance& inst, const Rat& u, const Rat& pi) {
  SynthesisResult r = synthesize_direct(inst, u, pi);
  REQUIRE(r.status == SynthesisStatus::ok);
  CHECK(r.achieved.u == u);
  CHECK(r.achieved.pi == pi);
  SurplusPoint target{u, pi};
  VerificationReport rep = verify_direct(inst, *r.direct, &target);
  CHECK(rep.overall);
}

}  // namespace

TEST_CASE("triangle membership is exact") {
  Instance inst = oracle::example2();  // pi* = 1, w* = 5/3
  CHECK(in_triangle(inst, q("0"), q("1")));
  CHECK(in_triangle(inst, q("2/3"), q("1")));
  CHECK(in_triangle(inst, q("0"), q("5/3")));
  CHECK(in_triangle(inst, q("1/3"), q("5/4")));
  CHECK_FALSE(in_triangle(inst, q("-1/1000"), q("1")));
  CHECK_FALSE(in_triangle(inst, q("0"), q("999/1000")));
  CHECK_FALSE(in_triangle(inst, q("2/3"), Rat(q("1") + q("1/1000000"))));
}

TEST_CASE("equal-revenue aggregate detection and its reachable point set") {
  Instance tiny = oracle::tiny12();
  CHECK(aggregate_is_equal_revenue(tiny));
  CHECK(prop3_point_set(tiny) == Vec{q("1/2"), q("0")});

  Instance er3 = make_instance(make_grid({q("1"), q("2"), q("3")}),
                               Market{{q("1/2"), q("1/6"), q("1/3")}});
  CHECK(aggregate_is_equal_revenue(er3));
  CHECK(prop3_point_set(er3) == Vec{q("5/6"), q("1/3"), q("0")});

  CHECK_FALSE(aggregate_is_equal_revenue(oracle::example2()));
  CHECK_FALSE(aggregate_is_equal_revenue(oracle::two_segment_fixture()));
}

TEST_CASE("targets outside the triangle are refused") {
  Instance inst = oracle::example2();
  CHECK(synthesize_direct(inst, q("-1"), q("1")).status == SynthesisStatus::outside_triangle);
  CHECK(synthesize_direct(inst, q("0"), q("1/2")).status == SynthesisStatus::outside_triangle);
  CHECK(synthesize_direct(inst, q("1"), q("1")).status == SynthesisStatus::outside_triangle);
}

TEST_CASE("above-uniform-profit targets via segment splitting") {
  // V = {1,2}, x* = (3/4,1/4): pi* = 1, w* = 5/4. Target (1/8, 9/8) lands
  // strictly between the uniform profit and full extraction.
  Instance inst = make_instance(make_grid({q("1"), q("2")}), Market{{q("3/4"), q("1/4")}});
  SynthesisResult r = synthesize_direct(inst, q("1/8"), q("9/8"));
  REQUIRE(r.status == SynthesisStatus::ok);
  REQUIRE(r.direct->entries.size() == 2);
  CHECK(r.direct->entries[0].price == 1);
  CHECK(r.direct->entries[0].weight == q("7/8"));
  CHECK(r.direct->entries[0].market.masses == Vec{q("6/7"), q("1/7")});
  CHECK(r.direct->entries[1].price == 2);
  CHECK(r.direct->entries[1].weight == q("1/8"));
  CHECK(r.direct->entries[1].market.masses == Vec{q("0"), q("1")});
  CHECK(verify_direct(inst, *r.direct).overall);
}

TEST_CASE("full extraction is perfect discrimination") {
  Instance inst = oracle::example2();
  SynthesisResult r = synthesize_direct(inst, q("0"), q("5/3"));
  REQUIRE(r.status == SynthesisStatus::ok);
  REQUIRE(r.direct->entries.size() == 3);
  for (const auto& e : r.direct->entries) {
    CHECK(e.market.masses[static_cast<std::size_t>(e.price) - 1] == 1);
    CHECK(e.weight == inst.aggregate.masses[static_cast<std::size_t>(e.price) - 1]);
  }
}

TEST_CASE("triangle vertices and edges on a generic aggregate") {
  Instance inst = oracle::example2();  // pi* = 1, w* = 5/3, x* != x^V
  check_hits(inst, q("0"), q("1"));
  check_hits(inst, q("2/3"), q("1"));
  check_hits(inst, q("0"), q("5/3"));
  check_hits(inst, q("1/3"), q("1"));          // bottom edge interior
  check_hits(inst, q("0"), q("4/3"));          // left edge interior
  check_hits(inst, q("1/3"), q("4/3"));        // hypotenuse interior
  check_hits(inst, q("1/5"), q("7/6"));        // interior point
  check_hits(inst, q("123/1000"), q("1001/1000"));
}

TEST_CASE("equal-revenue aggregate: bottom edge degenerates to a point set") {
  Instance er3 = make_instance(make_grid({q("1"), q("2"), q("3")}),
                               Market{{q("1/2"), q("1/6"), q("1/3")}});
  // Reachable at pi = pi*: exactly u in {5/6, 1/3, 0}, each via the single
  // segment posting one fixed price.
  for (const Rat& u : prop3_point_set(er3)) {
    SynthesisResult r = synthesize_direct(er3, u, q("1"));
    REQUIRE(r.status == SynthesisStatus::ok);
    REQUIRE(r.direct->entries.size() == 1);
    CHECK(r.direct->entries[0].market == er3.aggregate);
    CHECK(r.achieved.u == u);
  }
  for (const char* miss : {"1/2", "1/6", "2/3", "5/12", "829/1000"}) {
    SynthesisResult r = synthesize_direct(er3, q(miss), q("1"));
    CHECK(r.status == SynthesisStatus::prop3_gap);
  }
  // Above pi* the gap disappears.
  check_hits(er3, q("1/2"), q("1001/1000"));
  check_hits(er3, q("0"), q("3/2"));
}

TEST_CASE("two-segment construction constants on the pinned fixture") {
  // V = {1,2,3}, x* = (7/12, 1/12, 1/3): optimal prices {1,3}, pi* = 1,
  // w* = 7/4. Target (1/2, 1) sits strictly inside the bottom edge.
  Instance inst = oracle::two_segment_fixture();
  Decomposition interior = interior_decompose(inst, inst.aggregate, {1, 3});
  TwoSegmentConstruction ts = two_segment_solve(inst, {1, 3}, interior, q("1/2"));
  CHECK(ts.S1 == IndexSet{1, 3});
  CHECK(ts.S2 == IndexSet{1, 2, 3});
  CHECK(ts.epsilon == q("1/4"));
  CHECK(ts.beta1 == q("1/2"));
  CHECK(ts.beta2 == q("9/10"));
  CHECK(ts.lambda == q("411/736"));
  SurplusPoint target{q("1/2"), q("1")};
  CHECK(verify_direct(inst, ts.merged, &target).overall);

  SynthesisResult r = synthesize_direct(inst, q("1/2"), q("1"));
  REQUIRE(r.status == SynthesisStatus::ok);
  CHECK(r.achieved.u == q("1/2"));
  CHECK(r.achieved.pi == q("1"));
}

TEST_CASE("grid of targets across several aggregates") {
  std::vector<Instance> instances = {
      oracle::example2(),
      oracle::two_segment_fixture(),
      make_instance(make_grid({q("1"), q("2")}), Market{{q("3/4"), q("1/4")}}),
      make_instance(make_grid({q("1"), q("3"), q("4")}), Market{{q("1/3"), q("1/3"), q("1/3")}}),
      make_instance(make_grid({q("2"), q("5"), q("7"), q("11")}),
                    Market{{q("1/4"), q("1/4"), q("1/4"), q("1/4")}}),
  };
  for (const Instance& inst : instances) {
    TriangleSummary tri = triangle(inst);
    Rat span(tri.w_star - tri.pi_star);
    bool er = aggregate_is_equal_revenue(inst);
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; a + b <= 4; ++b) {
        // (u, pi) = pi* + span * (a, b) / 4 sweeps the whole triangle.
        Rat u(Rat(span * a) / 4);
        Rat pi(tri.pi_star + Rat(span * b) / 4);
        if (er && pi == tri.pi_star) continue;  // covered by the edge test
        check_hits(inst, u, pi);
      }
  }
}
