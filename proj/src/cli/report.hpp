#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "planar/disc.hpp"
#include "planar/meta.hpp"

namespace planar::cli {

// JSON run record, schema "planar-report/1". Field names are part of the
// interface; every number except the timings replays from (command, seed).
struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::int64_t drawn = 0;
  std::optional<Hypothesis> hypothesis;
  std::optional<Rational> validation_error;
  std::optional<double> monte_carlo_error;
  std::optional<std::int64_t> monte_carlo_examples;
  std::optional<Rational> distance;
  std::optional<AmplifyDiag> amplification;
  std::vector<std::pair<std::string, double>> timings;

  nlohmann::json to_json() const;
};

nlohmann::json rational_json(const Rational& r);
nlohmann::json hypothesis_json(const Hypothesis& h);

}  // namespace planar::cli
