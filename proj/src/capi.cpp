#include "segtri/segtri.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "segtri/conversion.hpp"
#include "segtri/io.hpp"
#include "segtri/synthesis.hpp"
#include "segtri/verify.hpp"

using namespace segtri;
using nlohmann::json;

struct segtri_instance {
  Instance inst;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& msg) {
  if (error) *error = dup_string(msg);
}

template <typename Fn>
segtri_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(error, e.what());
    return SEGTRI_INVALID_INPUT;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return SEGTRI_INTERNAL_ERROR;
  }
}

std::string market_str(const Market& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.masses.size(); ++j) {
    if (j) s += ", ";
    s += to_string(x.masses[j]);
  }
  return s + ")";
}

std::string collision_certificate(const ConversionOutcome& out) {
  std::string s;
  for (const auto& g : out.groups) {
    if (g.prices.size() < 2) continue;
    s += "collision:";
    for (int k : g.prices) s += " x^" + std::to_string(k) + " =";
    s += " " + market_str(g.market) + "\n";
  }
  s += "no direct segmentation under the original definition reproduces this joint distribution\n";
  return s;
}

// Tolerant re-check of a loaded document; invariant violations become
// report entries rather than exceptions.
VerificationReport verify_loaded(const LoadedSegmentation& ls) {
  VerificationReport rep;
  const Instance& inst = ls.inst;
  std::size_t K = static_cast<std::size_t>(inst.grid.size());

  bool markets_ok = true;
  std::string witness;
  for (std::size_t i = 0; i < ls.markets.size() && markets_ok; ++i) {
    if (ls.markets[i].masses.size() != K) {
      markets_ok = false;
      witness = "segment " + std::to_string(i) + ": market size mismatch";
      break;
    }
    Rat total = 0;
    for (const auto& m : ls.markets[i].masses) {
      if (m < 0) {
        markets_ok = false;
        witness = "segment " + std::to_string(i) + ": negative mass";
      }
      total += m;
    }
    if (markets_ok && total != 1) {
      markets_ok = false;
      witness = "segment " + std::to_string(i) + ": masses sum to " + to_string(total);
    }
  }
  rep.add("markets-valid", markets_ok, witness);

  Rat wsum = 0;
  bool weights_ok = true;
  witness.clear();
  for (std::size_t i = 0; i < ls.weights.size(); ++i) {
    if (ls.weights[i] <= 0 && weights_ok) {
      weights_ok = false;
      witness = "segment " + std::to_string(i) + ": nonpositive weight";
    }
    wsum += ls.weights[i];
  }
  if (weights_ok && wsum != 1) {
    weights_ok = false;
    witness = "weights sum to " + to_string(wsum);
  }
  rep.add("weights", weights_ok, witness);

  if (markets_ok) {
    Vec avg(K, 0);
    for (std::size_t i = 0; i < ls.markets.size(); ++i)
      for (std::size_t j = 0; j < K; ++j) avg[j] += Rat(ls.weights[i] * ls.markets[i].masses[j]);
    bool avg_ok = vec_equal(avg, inst.aggregate.masses);
    rep.add("average-equals-aggregate", avg_ok,
            avg_ok ? "" : "weighted average differs from the aggregate market");
  }

  if (markets_ok && !ls.pricing.empty()) {
    bool rows_ok = true;
    witness.clear();
    for (std::size_t i = 0; i < ls.pricing.size() && rows_ok; ++i) {
      Rat total = 0;
      for (const auto& p : ls.pricing[i]) {
        if (p < 0) rows_ok = false;
        total += p;
      }
      if (ls.pricing[i].size() != K || total != 1) rows_ok = false;
      if (!rows_ok) witness = "segment " + std::to_string(i) + ": malformed pricing row";
      for (std::size_t k = 0; k < ls.pricing[i].size() && rows_ok; ++k) {
        if (ls.pricing[i][k] == 0) continue;
        IndexSet opt = brute_optimal_prices(inst, ls.markets[i]);
        bool in = false;
        for (int o : opt) in = in || o == static_cast<int>(k) + 1;
        if (!in) {
          rows_ok = false;
          witness = "segment " + std::to_string(i) + ": price " + std::to_string(k + 1) +
                    " posted but not optimal";
        }
      }
    }
    rep.add("pricing-optimal", rows_ok, witness);
  }

  if (markets_ok && ls.pricing.empty() && ls.all_priced()) {
    bool prices_ok = true;
    witness.clear();
    for (std::size_t i = 0; i < ls.markets.size() && prices_ok; ++i) {
      int k = *ls.prices[i];
      if (k < 1 || static_cast<std::size_t>(k) > K) {
        prices_ok = false;
        witness = "segment " + std::to_string(i) + ": price index out of range";
        break;
      }
      IndexSet opt = brute_optimal_prices(inst, ls.markets[i]);
      bool in = false;
      for (int o : opt) in = in || o == k;
      if (!in) {
        prices_ok = false;
        witness = "segment " + std::to_string(i) + ": posted price " + std::to_string(k) +
                  " is not optimal for its market";
      }
    }
    rep.add("posted-prices-optimal", prices_ok, witness);

    if (!ls.revised) {
      bool distinct_ok = true;
      witness.clear();
      for (std::size_t a = 0; a < ls.markets.size() && distinct_ok; ++a)
        for (std::size_t b = a + 1; b < ls.markets.size() && distinct_ok; ++b) {
          if (*ls.prices[a] == *ls.prices[b]) {
            distinct_ok = false;
            witness = "segments " + std::to_string(a) + " and " + std::to_string(b) +
                      " share price " + std::to_string(*ls.prices[a]);
          } else if (ls.markets[a] == ls.markets[b]) {
            distinct_ok = false;
            witness = "segments " + std::to_string(a) + " and " + std::to_string(b) +
                      " share a market";
          }
        }
      rep.add("direct-entries-distinct", distinct_ok, witness);
    }
  }
  return rep;
}

std::string report_text(const VerificationReport& rep) {
  std::string out;
  for (const auto& c : rep.checks) {
    out += c.name;
    out += c.pass ? ": ok" : ": FAIL";
    if (!c.witness.empty()) out += " (" + c.witness + ")";
    out += "\n";
  }
  out += rep.overall ? "overall: ok\n" : "overall: FAIL\n";
  return out;
}

struct DemoFixture {
  Instance inst;
  Segmentation sigma;
  PricingRule phi;
};

DemoFixture demo_fixture(const std::string& name) {
  auto rat = [](const char* s) { return *parse_rational(s); };
  if (name == "example1") {
    Instance inst = make_instance(make_grid({rat("1"), rat("2")}),
                                  Market{{rat("1/2"), rat("1/2")}});
    auto [sigma, phi] = make_segmentation_with_pricing(
        inst, {{inst.aggregate, rat("1")}}, {{rat("1/2"), rat("1/2")}});
    return {std::move(inst), std::move(sigma), std::move(phi)};
  }
  if (name == "example2") {
    Instance inst = make_instance(make_grid({rat("1"), rat("2"), rat("3")}),
                                  Market{{rat("1/2"), rat("1/3"), rat("1/6")}});
    std::vector<Segment> segs = {
        {Market{{rat("1/2"), rat("1/6"), rat("1/3")}}, rat("1/4")},
        {Market{{rat("1/2"), rat("1/2"), rat("0")}}, rat("1/4")},
        {Market{{rat("1/2"), rat("1/3"), rat("1/6")}}, rat("1/2")},
    };
    std::vector<Vec> rows = {
        {rat("1"), rat("0"), rat("0")},
        {rat("1"), rat("0"), rat("0")},
        {rat("0"), rat("1"), rat("0")},
    };
    auto [sigma, phi] = make_segmentation_with_pricing(inst, std::move(segs), std::move(rows));
    return {std::move(inst), std::move(sigma), std::move(phi)};
  }
  throw std::invalid_argument("unknown demo '" + name + "' (expected example1 or example2)");
}

std::string run_demo(const std::string& name) {
  DemoFixture fx = demo_fixture(name);
  const Instance& inst = fx.inst;
  std::ostringstream os;
  os << "demo: " << name << "\n";
  os << "valuations:";
  for (const auto& v : inst.grid.values) os << " " << to_string(v);
  os << "\naggregate market: " << market_str(inst.aggregate) << "\n\nsegmentation and pricing:\n";
  for (std::size_t i = 0; i < fx.sigma.segments.size(); ++i) {
    os << "  weight " << to_string(fx.sigma.segments[i].weight) << " on "
       << market_str(fx.sigma.segments[i].market) << ", price row (";
    for (std::size_t k = 0; k < fx.phi.rows[i].size(); ++k)
      os << (k ? ", " : "") << to_string(fx.phi.rows[i][k]);
    os << ")\n";
  }
  os << "optimal pricing rule: " << (is_optimal_pricing(inst, fx.sigma, fx.phi) ? "yes" : "no")
     << "\n";

  JointDistribution jd = joint_distribution(inst, fx.sigma, fx.phi);
  os << "\njoint distribution (rows = valuations, columns = prices):\n";
  for (const auto& row : jd.mass) {
    os << " ";
    for (const auto& m : row) os << " " << to_string(m);
    os << "\n";
  }

  ConversionOutcome out = bbm_convert(inst, fx.sigma, fx.phi);
  os << "\ninduced price-conditional markets:\n";
  for (const auto& g : out.groups)
    for (int k : g.prices)
      os << "  x^" << k << " = " << market_str(g.market) << "\n";
  os << "\n" << collision_certificate(out);

  RevisedSegmentation rho = revised_convert(inst, revise(inst, fx.sigma, fx.phi));
  os << "\nmarket-price form resolves the collision:\n";
  for (const auto& a : rho.atoms)
    os << "  weight " << to_string(a.weight) << " on (" << market_str(a.market) << ", price "
       << a.price << ")\n";
  os << "joint distribution preserved: "
     << (joint_equal(jd, joint_distribution(inst, rho)) ? "yes" : "no") << "\n";
  return os.str();
}

std::string analyze_text(const Instance& inst) {
  TriangleSummary tri = triangle(inst);
  IndexSet opt = optimal_price_set(inst, inst.aggregate);
  bool eq = aggregate_is_equal_revenue(inst);
  std::ostringstream os;
  os << "K: " << inst.grid.size() << "\n";
  os << "pi_star: " << to_string(tri.pi_star) << "\n";
  os << "w_star: " << to_string(tri.w_star) << "\n";
  os << "optimal_prices:";
  for (int k : opt) os << " " << k;
  os << "\naggregate_equal_revenue: " << (eq ? "true" : "false") << "\n";
  if (eq) {
    os << "direct_consumer_surplus_at_pi_star:";
    for (const auto& u : prop3_point_set(inst)) os << " " << to_string(u);
    os << "\n";
  }
  return os.str();
}

std::string analyze_json(const Instance& inst) {
  TriangleSummary tri = triangle(inst);
  json doc;
  doc["K"] = inst.grid.size();
  doc["pi_star"] = to_string(tri.pi_star);
  doc["w_star"] = to_string(tri.w_star);
  doc["optimal_prices"] = optimal_price_set(inst, inst.aggregate);
  bool eq = aggregate_is_equal_revenue(inst);
  doc["aggregate_equal_revenue"] = eq;
  if (eq) {
    json pts = json::array();
    for (const auto& u : prop3_point_set(inst)) pts.push_back(to_string(u));
    doc["direct_consumer_surplus_at_pi_star"] = std::move(pts);
  }
  return doc.dump(2) + "\n";
}

std::string triangle_csv(const Instance& inst, const std::vector<SurplusPoint>& points) {
  TriangleSummary tri = triangle(inst);
  std::ostringstream os;
  os << "kind,u1,pi1,u2,pi2\n";
  for (const auto& v : tri.vertices)
    os << "vertex," << to_string(v.u) << "," << to_string(v.pi) << ",,\n";
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = tri.vertices[i];
    const auto& b = tri.vertices[(i + 1) % 3];
    os << "edge," << to_string(a.u) << "," << to_string(a.pi) << "," << to_string(b.u) << ","
       << to_string(b.pi) << "\n";
  }
  for (const auto& p : points)
    os << "point," << to_string(p.u) << "," << to_string(p.pi) << ",,\n";
  return os.str();
}

std::string triangle_svg(const Instance& inst, const std::vector<SurplusPoint>& points) {
  TriangleSummary tri = triangle(inst);
  // Surplus coordinates: u rightward, pi upward, both scaled by w*.
  const Rat& w = tri.w_star;
  auto px = [&](const Rat& u) { return to_decimal(Rat(20 + Rat(Rat(u / w) * 360)), 3); };
  auto py = [&](const Rat& pi) { return to_decimal(Rat(380 - Rat(Rat(pi / w) * 360)), 3); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
        "viewBox=\"0 0 400 400\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\"/>\n";
  os << "<line x1=\"20\" y1=\"380\" x2=\"396\" y2=\"380\" stroke=\"black\"/>\n";
  os << "<line x1=\"20\" y1=\"380\" x2=\"20\" y2=\"4\" stroke=\"black\"/>\n";
  os << "<polygon points=\"";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) os << " ";
    os << px(tri.vertices[i].u) << "," << py(tri.vertices[i].pi);
  }
  os << "\" fill=\"#cfe2f3\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
  for (const auto& p : points)
    os << "<circle cx=\"" << px(p.u) << "\" cy=\"" << py(p.pi)
       << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::vector<SurplusPoint> parse_points(const char* points_json) {
  std::vector<SurplusPoint> points;
  if (!points_json || !*points_json) return points;
  json doc = json::parse(std::string(points_json), nullptr, false);
  if (doc.is_discarded()) throw std::invalid_argument("invalid points document");
  const json& arr = doc.is_array() ? doc : doc.at("points");
  for (const auto& p : arr) {
    auto u = parse_rational(p.at("u").get<std::string>());
    auto pi = parse_rational(p.at("pi").get<std::string>());
    if (!u || !pi) throw std::invalid_argument("malformed rational in points document");
    points.push_back({*u, *pi});
  }
  return points;
}

}  // namespace

extern "C" {

const char* segtri_version(void) { return "0.1.0"; }

void segtri_string_free(char* s) { std::free(s); }

segtri_status segtri_instance_parse(const char* text, segtri_instance** out, char** error) {
  if (!text || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  *out = nullptr;
  return guarded(error, [&] {
    *out = new segtri_instance{parse_instance_json(text)};
    return SEGTRI_OK;
  });
}

void segtri_instance_free(segtri_instance* inst) { delete inst; }

segtri_status segtri_analyze(const segtri_instance* inst, int json_format, char** out,
                             char** error) {
  if (!inst || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    *out = dup_string(json_format ? analyze_json(inst->inst) : analyze_text(inst->inst));
    return SEGTRI_OK;
  });
}

segtri_status segtri_synthesize(const segtri_instance* inst, const char* u, const char* pi,
                                char** out, char** error) {
  if (!inst || !u || !pi || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    auto ur = parse_rational(u);
    auto pr = parse_rational(pi);
    if (!ur || !pr) throw std::invalid_argument("targets must be exact rationals");
    SynthesisResult res = synthesize_direct(inst->inst, *ur, *pr);
    if (res.status == SynthesisStatus::outside_triangle) {
      set_error(error, "outside-triangle");
      return SEGTRI_INFEASIBLE;
    }
    if (res.status == SynthesisStatus::prop3_gap) {
      set_error(error, "prop3-gap");
      return SEGTRI_INFEASIBLE;
    }
    *out = dup_string(direct_to_json(inst->inst, *res.direct));
    return SEGTRI_OK;
  });
}

segtri_status segtri_convert(const char* segmentation_json, int revised, char** out,
                             char** error) {
  if (!segmentation_json || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    LoadedSegmentation ls = parse_segmentation_json(segmentation_json);
    if (revised) {
      RevisedSegmentation rho;
      if (ls.revised) {
        rho = ls.as_revised();
      } else {
        auto [sigma, phi] = ls.as_general();
        rho = revise(ls.inst, sigma, phi);
      }
      *out = dup_string(revised_to_json(ls.inst, revised_convert(ls.inst, rho)));
      return SEGTRI_OK;
    }
    if (ls.revised)
      throw std::invalid_argument("document is in market-price form; pass revised mode");
    auto [sigma, phi] = ls.as_general();
    ConversionOutcome res = bbm_convert(ls.inst, sigma, phi);
    if (!res.ok()) {
      *out = dup_string(collision_certificate(res));
      return SEGTRI_COLLISION;
    }
    *out = dup_string(direct_to_json(ls.inst, *res.direct));
    return SEGTRI_OK;
  });
}

segtri_status segtri_verify(const char* segmentation_json, char** report, char** error) {
  if (!segmentation_json || !report) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    LoadedSegmentation ls = parse_segmentation_json(segmentation_json);
    VerificationReport rep = verify_loaded(ls);
    *report = dup_string(report_text(rep));
    return rep.overall ? SEGTRI_OK : SEGTRI_VERIFY_FAILED;
  });
}

segtri_status segtri_triangle_emit(const segtri_instance* inst, const char* format,
                                   const char* points_json, char** out, char** error) {
  if (!inst || !format || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    std::vector<SurplusPoint> points = parse_points(points_json);
    std::string fmt(format);
    if (fmt == "csv")
      *out = dup_string(triangle_csv(inst->inst, points));
    else if (fmt == "svg")
      *out = dup_string(triangle_svg(inst->inst, points));
    else
      throw std::invalid_argument("format must be csv or svg");
    return SEGTRI_OK;
  });
}

segtri_status segtri_demo(const char* name, char** out, char** error) {
  if (!name || !out) {
    set_error(error, "null argument");
    return SEGTRI_INVALID_INPUT;
  }
  return guarded(error, [&] {
    *out = dup_string(run_demo(name));
    return SEGTRI_OK;
  });
}

}  // extern "C"
