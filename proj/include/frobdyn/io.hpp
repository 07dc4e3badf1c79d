// Text and JSON encodings for fields, points, fibers, orbits, censuses and
// towers. Field elements are hex bitstrings, bit i = coefficient of t^i.
#ifndef FROBDYN_IO_HPP
#define FROBDYN_IO_HPP

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/fibers.hpp"
#include "frobdyn/gf2k.hpp"
#include "frobdyn/moduli.hpp"

namespace frobdyn {

inline constexpr std::string_view kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Hex, or for GF(4) also "w" / "w2" (and the forms "ω", "ω²", "w^2").
inline FieldElement parse_element(const FieldPtr& f, std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (f->degree() == 2) {
    if (s == "w" || s == "ω") return FieldElement::from_uint(f, 2);
    if (s == "w2" || s == "w^2" || s == "ω²" || s == "ω^2") return FieldElement::from_uint(f, 3);
  }
  return FieldElement::from_hex(f, s);
}

// "1,0,0,1", "(1:0:0:1)" or "1:0:0:1"; `count` coordinates expected.
inline std::vector<FieldElement> parse_tuple(const FieldPtr& f, std::string_view s, std::size_t count) {
  std::string body(s);
  if (!body.empty() && body.front() == '(') body.erase(0, 1);
  if (!body.empty() && body.back() == ')') body.pop_back();
  for (char& c : body) {
    if (c == ':') c = ',';
  }
  std::vector<FieldElement> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_element(f, item));
  if (out.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " coordinates in '" + std::string(s) + "'");
  }
  return out;
}

inline ProjPoint parse_point(const FieldPtr& f, std::string_view s) {
  const auto v = parse_tuple(f, s, 4);
  return ProjPoint(Coords{v[0], v[1], v[2], v[3]});
}

inline ThetaConstants parse_lambda(const FieldPtr& f, std::string_view s) {
  const auto v = parse_tuple(f, s, 4);
  return ThetaConstants({v[0], v[1], v[2], v[3]});
}

inline PluckerPoint parse_plucker(const FieldPtr& f, std::string_view s) {
  const auto v = parse_tuple(f, s, 6);
  return PluckerPoint({v[0], v[1], v[2], v[3], v[4], v[5]});
}

inline Json to_json(const BinaryField& f) {
  Json j;
  j["degree"] = f.degree();
  j["base_degree"] = f.base_degree();
  j["modulus"] = f.modulus_hex();
  j["tower"] = f.tower_hex();
  return j;
}

inline Json to_json(const FieldElement& e) { return e.to_hex(); }

inline Json to_json(const ProjPoint& p) {
  Json j = Json::array();
  for (const auto& c : p.coords()) j.push_back(c.to_hex());
  return j;
}

inline Json to_json(const Coords& c) {
  Json j = Json::array();
  for (const auto& e : c) j.push_back(e.to_hex());
  return j;
}

inline Json to_json(const ThetaConstants& l) { return to_json(l.values()); }

inline Json to_json(const std::optional<ProjPoint>& p) { return p ? to_json(*p) : Json(nullptr); }

inline Json to_json(const FiberResult& r) {
  Json j;
  j["kind"] = fiber_kind(r);
  j["points"] = Json::array();
  j["extension_used"] = extension_used(r);
  if (const auto* four = std::get_if<GenericFour>(&r)) {
    for (const auto& p : four->points) j["points"].push_back(to_json(p));
    const FiberDerivation& d = four->derivation;
    j["field"] = to_json(*four->points[0].field());
    j["derivation"] = {{"b", to_json(d.b)},         {"c", d.c.to_hex()},         {"alpha", d.alpha.to_hex()},
                       {"beta", d.beta.to_hex()},   {"gamma", d.gamma.to_hex()}, {"delta", d.delta.to_hex()},
                       {"extension_used", d.extension_used}};
  } else if (const auto* line = std::get_if<LineFiber>(&r)) {
    j["points"].push_back(to_json(line->through));
    j["points"].push_back(to_json(line->other));
    j["field"] = to_json(*line->through.field());
    j["hyperplanes"] = {to_json(line->h1), to_json(line->h_alpha_gamma)};
    j["derivation"] = {{"alpha", line->alpha.to_hex()}, {"gamma", line->gamma.to_hex()}};
  } else {
    j["derivation"] = {{"obstruction", std::get<EmptyFiber>(r).obstruction.to_hex()}};
  }
  return j;
}

inline Json optional_json(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const OrbitReport& r) {
  Json j;
  j["start"] = to_json(r.start);
  j["classification"] = to_string(r.classification);
  j["preperiod"] = r.preperiod;
  j["period"] = optional_json(r.period);
  j["hit_base_locus_at"] = optional_json(r.hit_base_locus_at);
  j["max_steps"] = r.max_steps;
  j["trajectory"] = Json::array();
  for (const auto& p : r.trajectory) j["trajectory"].push_back(to_json(p));
  return j;
}

inline const char* to_string(FrobeniusConvention c) { return c == FrobeniusConvention::kFixed ? "fixed" : "twisted"; }

inline Json census_header(const CensusTable& t, std::uint64_t seed) {
  return {{"field", to_json(*t.field)},
          {"modulus", t.field->modulus_hex()},
          {"lambda", to_json(t.lambda)},
          {"seed", seed},
          {"version", std::string(kVersion)},
          {"convention", to_string(t.convention)}};
}

inline Json to_json(const CensusTable& t, std::uint64_t seed) {
  Json j;
  j["header"] = census_header(t, seed);
  Json rows = Json::array();
  for (const CensusRow& r : t.rows) {
    rows.push_back({{"point", to_json(r.point)},
                    {"classification", to_string(r.classification)},
                    {"preperiod", r.preperiod},
                    {"period", optional_json(r.period)},
                    {"destab_step", optional_json(r.destab_step)},
                    {"on_boundary", r.on_boundary}});
  }
  j["rows"] = std::move(rows);
  Json cycles = Json::object(), depths = Json::object();
  for (const auto& [len, n] : t.cycle_lengths) cycles[std::to_string(len)] = n;
  for (const auto& [d, n] : t.destab_depths) depths[std::to_string(d)] = n;
  j["summary"] = {{"total", t.rows.size()},
                  {"periodic", t.periodic},
                  {"preperiodic", t.preperiodic},
                  {"destabilized", t.destabilized},
                  {"unresolved", t.unresolved},
                  {"periodic_on_boundary", t.periodic_on_boundary},
                  {"cycle_lengths", cycles},
                  {"destab_depths", depths}};
  return j;
}

inline std::string point_csv(const ProjPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i != 0) s += ':';
    s += p.coords()[i].to_hex();
  }
  return s;
}

inline std::string to_csv(const CensusTable& t) {
  std::string out = "point,classification,preperiod,period,destab_step,on_boundary\n";
  for (const CensusRow& r : t.rows) {
    out += point_csv(r.point) + ',' + to_string(r.classification) + ',' + std::to_string(r.preperiod) + ',' +
           (r.period ? std::to_string(*r.period) : "") + ',' + (r.destab_step ? std::to_string(*r.destab_step) : "") +
           ',' + (r.on_boundary ? "1" : "0") + '\n';
  }
  return out;
}

inline Json to_json(const TowerReport& r) {
  Json j;
  j["depth"] = r.depth;
  j["degree_ratios"] = r.degree_ratios;
  Json levels = Json::array();
  for (const TowerLevel& l : r.levels) {
    Json pts = Json::array();
    for (const auto& p : l.points) pts.push_back(to_json(p));
    levels.push_back({{"field_degree", l.field->degree()},
                      {"cumulative_degree", l.cumulative_degree},
                      {"degree_ratio", l.degree_ratio},
                      {"line_fibers", l.line_fibers},
                      {"empty_fibers", l.empty_fibers},
                      {"points", std::move(pts)}});
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace frobdyn

#endif  // FROBDYN_IO_HPP
