#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsgrad/engine.hpp"

namespace dsgrad {

// One metric bound from the config's thresholds section.  expect_fail
// inverts the verdict for negative controls: the threshold is satisfied
// when the metric does NOT meet the bound.
struct ThresholdSpec {
  std::string metric;
  double max = 0.0;
  bool expect_fail = false;
};

struct OracleSpec {
  std::string method = "none";  // "grid", "centralized", "closed_form", "none"
  double resolution = 1e-3;     // grid
  std::int64_t budget = 1000000;  // centralized
  std::optional<Vector> x_star;   // closed_form
  bool unique_minimizer = false;
};

struct OutputSpec {
  std::string directory;  // empty: resolved from the environment or default
  bool write_csv = true;
  bool write_json = true;
};

// A fully parsed experiment file: domain objects plus the canonical JSON
// echo that goes into the run summary.
struct ExperimentConfig {
  std::string name;
  std::string description;
  RunConfig run;  // oracle and q are attached by run_experiment
  OracleSpec oracle;
  std::vector<ThresholdSpec> thresholds;
  std::vector<std::string> waive;  // check ids exempted for negative controls
  OutputSpec output;
  std::string config_json;
};

// Parses and cross-checks an experiment description.  Throws
// std::invalid_argument with the origin and, for malformed JSON, the byte
// offset of the error.
ExperimentConfig parse_experiment(const std::string& json_text,
                                  const std::string& origin);
ExperimentConfig load_experiment(const std::string& path);

}  // namespace dsgrad
