#include "segtri/io.hpp"

#include <json.hpp>

#include <stdexcept>

namespace segtri {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw std::invalid_argument("invalid JSON document");
  return doc;
}

Rat rat_field(const json& v, const char* what) {
  if (!v.is_string() && !v.is_number_integer())
    throw std::invalid_argument(std::string("expected rational string for ") + what);
  std::string s = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
  auto r = parse_rational(s);
  if (!r) throw std::invalid_argument(std::string("malformed rational '") + s + "' in " + what);
  return *r;
}

Vec rat_array(const json& v, const char* what) {
  if (!v.is_array()) throw std::invalid_argument(std::string("expected array for ") + what);
  Vec out;
  for (const auto& e : v) out.push_back(rat_field(e, what));
  return out;
}

json rat_json(const Rat& r) { return to_string(r); }

json vec_json(const Vec& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(rat_json(r));
  return arr;
}

json instance_fields(const Instance& inst) {
  json doc;
  doc["valuations"] = vec_json(inst.grid.values);
  doc["aggregate"] = vec_json(inst.aggregate.masses);
  return doc;
}

Instance instance_from(const json& doc) {
  if (!doc.contains("valuations") || !doc.contains("aggregate"))
    throw std::invalid_argument("instance document needs 'valuations' and 'aggregate'");
  ValuationGrid grid = make_grid(rat_array(doc["valuations"], "valuations"));
  Market agg = make_market(grid, rat_array(doc["aggregate"], "aggregate"));
  return make_instance(std::move(grid), std::move(agg));
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  return instance_from(parse_or_throw(text));
}

std::string instance_to_json(const Instance& inst) {
  return instance_fields(inst).dump(2) + "\n";
}

bool LoadedSegmentation::all_priced() const {
  for (const auto& p : prices)
    if (!p) return false;
  return !prices.empty();
}

std::pair<Segmentation, PricingRule> LoadedSegmentation::as_general() const {
  std::vector<Segment> segs;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < markets.size(); ++i) {
    segs.push_back({markets[i], weights[i]});
    if (!pricing.empty()) {
      rows.push_back(pricing[i]);
    } else if (prices[i]) {
      Vec row(static_cast<std::size_t>(inst.grid.size()), 0);
      if (*prices[i] < 1 || *prices[i] > inst.grid.size())
        throw std::invalid_argument("price_index out of range");
      row[static_cast<std::size_t>(*prices[i]) - 1] = 1;
      rows.push_back(std::move(row));
    } else {
      throw std::invalid_argument("segment lacks both price_index and a pricing row");
    }
  }
  return make_segmentation_with_pricing(inst, std::move(segs), std::move(rows));
}

RevisedSegmentation LoadedSegmentation::as_revised() const {
  if (!all_priced()) throw std::invalid_argument("revised segmentation needs price_index per segment");
  std::vector<RevisedAtom> atoms;
  for (std::size_t i = 0; i < markets.size(); ++i)
    atoms.push_back({markets[i], *prices[i], weights[i]});
  return make_revised(inst, std::move(atoms));
}

DirectSegmentation LoadedSegmentation::as_direct() const {
  if (!all_priced()) throw std::invalid_argument("direct segmentation needs price_index per segment");
  std::vector<DirectEntry> entries;
  for (std::size_t i = 0; i < markets.size(); ++i)
    entries.push_back({*prices[i], markets[i], weights[i]});
  return make_direct(inst, std::move(entries));
}

LoadedSegmentation parse_segmentation_json(const std::string& text) {
  json doc = parse_or_throw(text);
  LoadedSegmentation out;
  out.inst = instance_from(doc);
  out.revised = doc.value("revised", false);
  if (!doc.contains("segments") || !doc["segments"].is_array() || doc["segments"].empty())
    throw std::invalid_argument("segmentation document needs a nonempty 'segments' array");
  for (const auto& seg : doc["segments"]) {
    out.markets.push_back(Market{rat_array(seg.at("market"), "market")});
    out.weights.push_back(rat_field(seg.at("weight"), "weight"));
    if (seg.contains("price_index")) {
      if (!seg["price_index"].is_number_integer())
        throw std::invalid_argument("price_index must be an integer");
      out.prices.push_back(seg["price_index"].get<int>());
    } else {
      out.prices.push_back(std::nullopt);
    }
  }
  if (doc.contains("pricing")) {
    if (!doc["pricing"].is_array() || doc["pricing"].size() != out.markets.size())
      throw std::invalid_argument("pricing must have one row per segment");
    for (const auto& row : doc["pricing"]) out.pricing.push_back(rat_array(row, "pricing"));
  }
  return out;
}

std::string direct_to_json(const Instance& inst, const DirectSegmentation& d) {
  json doc = instance_fields(inst);
  doc["revised"] = false;
  json segs = json::array();
  for (const auto& e : d.entries) {
    json s;
    s["market"] = vec_json(e.market.masses);
    s["weight"] = rat_json(e.weight);
    s["price_index"] = e.price;
    segs.push_back(std::move(s));
  }
  doc["segments"] = std::move(segs);
  return doc.dump(2) + "\n";
}

std::string revised_to_json(const Instance& inst, const RevisedSegmentation& rho) {
  json doc = instance_fields(inst);
  doc["revised"] = true;
  json segs = json::array();
  for (const auto& a : rho.atoms) {
    json s;
    s["market"] = vec_json(a.market.masses);
    s["weight"] = rat_json(a.weight);
    s["price_index"] = a.price;
    segs.push_back(std::move(s));
  }
  doc["segments"] = std::move(segs);
  return doc.dump(2) + "\n";
}

std::string general_to_json(const Instance& inst, const Segmentation& sigma,
                            const PricingRule& phi) {
  json doc = instance_fields(inst);
  doc["revised"] = false;
  json segs = json::array();
  for (const auto& s : sigma.segments) {
    json e;
    e["market"] = vec_json(s.market.masses);
    e["weight"] = rat_json(s.weight);
    segs.push_back(std::move(e));
  }
  doc["segments"] = std::move(segs);
  json rows = json::array();
  for (const auto& row : phi.rows) rows.push_back(vec_json(row));
  doc["pricing"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace segtri
