#include "report.hpp"

namespace planar::cli {
namespace {

const char* kind_name(Hypothesis::Kind k) {
  switch (k) {
    case Hypothesis::Kind::Constant0: return "constant0";
    case Hypothesis::Kind::Polygon: return "polygon";
    case Hypothesis::Kind::Point: return "point";
    case Hypothesis::Kind::Segment: return "segment";
  }
  return "constant0";
}

nlohmann::json ring_json(const std::vector<Point>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

}  // namespace

nlohmann::json rational_json(const Rational& r) {
  return {{"num", r.num}, {"den", r.den}, {"value", r.value()}};
}

nlohmann::json hypothesis_json(const Hypothesis& h) {
  nlohmann::json j;
  j["kind"] = kind_name(h.kind);
  j["provenance"] = h.provenance == Hypothesis::Provenance::KGon ? "kgon" : "island";
  if (h.provenance == Hypothesis::Provenance::KGon) j["k"] = h.k;
  if (h.kind == Hypothesis::Kind::Polygon) {
    j["vertices"] = ring_json(h.polygon.vertices);
  } else if (h.kind != Hypothesis::Kind::Constant0) {
    j["vertices"] = ring_json(h.support);
  } else {
    j["vertices"] = nlohmann::json::array();
  }
  return j;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["schema"] = "planar-report/1";
  j["command"] = command;
  j["rng"] = "philox4x32-10";
  j["parameters"] = parameters;
  j["drawn"] = drawn;
  if (hypothesis) j["hypothesis"] = hypothesis_json(*hypothesis);

  nlohmann::json errors = nlohmann::json::object();
  if (validation_error) errors["validation"] = rational_json(*validation_error);
  if (monte_carlo_error) {
    errors["monte_carlo"] = {{"value", *monte_carlo_error},
                             {"examples", monte_carlo_examples.value_or(0)}};
  }
  if (distance) errors["distance"] = rational_json(*distance);
  j["errors"] = errors;

  if (amplification) {
    j["amplification"] = {{"t", amplification->plan.t},
                          {"q", amplification->plan.q},
                          {"base_eps", amplification->plan.base_eps},
                          {"failures", amplification->failures},
                          {"chosen", amplification->chosen}};
  }

  nlohmann::json t = nlohmann::json::object();
  for (const auto& [phase, secs] : timings) t[phase] = secs;
  j["timings"] = t;
  return j;
}

}  // namespace planar::cli
