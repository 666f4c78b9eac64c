#pragma once

// Result record shared by every assignment method, and its JSON form.

#include "qbal/core.hpp"
#include "qbal/qsim.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbal {

struct RunResult {
  std::string method;
  Assignment omega;
  double imbalance = 0.0;    // i_X(omega)
  double discrepancy = 0.0;  // d_X(omega)
  std::optional<double> expectation;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  double phi = 0.5;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> p;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> samples;
  bool equal_split = false;
  Histogram histogram;
  std::vector<std::vector<double>> history;
};

/// Histogram and optimizer logs stay in memory; everything else is written.
inline nlohmann::ordered_json to_json(const RunResult& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["omega"] = std::vector<int>(r.omega.signs().begin(), r.omega.signs().end());
  j["imbalance"] = r.imbalance;
  j["discrepancy"] = r.discrepancy;
  j["expectation"] = r.expectation ? nlohmann::ordered_json(*r.expectation) : nlohmann::ordered_json(nullptr);
  j["seed"] = r.seed;
  j["shots"] = r.shots;
  j["phi"] = r.phi;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  if (r.reps) cfg["reps"] = *r.reps;
  if (r.p) cfg["p"] = *r.p;
  if (r.restarts) cfg["restarts"] = *r.restarts;
  if (r.samples) cfg["samples"] = *r.samples;
  if (r.equal_split) cfg["equal_split"] = true;
  j["config"] = cfg;
  j["evaluations"] = r.evaluations;
  return j;
}

/// Reads back the fields written by to_json. Throws on missing or malformed fields.
inline RunResult run_result_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("result JSON must be an object");
  RunResult r;
  try {
    r.method = j.at("method").get<std::string>();
    r.omega = Assignment(j.at("omega").get<std::vector<int>>());
    r.imbalance = j.at("imbalance").get<double>();
    if (j.contains("discrepancy")) r.discrepancy = j.at("discrepancy").get<double>();
    if (j.contains("expectation") && !j.at("expectation").is_null()) r.expectation = j.at("expectation").get<double>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("shots")) r.shots = j.at("shots").get<std::uint64_t>();
    if (j.contains("phi")) r.phi = j.at("phi").get<double>();
    if (j.contains("evaluations")) r.evaluations = j.at("evaluations").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed result JSON: ") + e.what());
  }
  return r;
}

}  // namespace qbal
