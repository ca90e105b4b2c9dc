#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsgrad/config.hpp"
#include "dsgrad/validation.hpp"

namespace dsgrad {

// Process exit codes shared by the library and the command-line tool.
inline constexpr int kExitOk = 0;         // success or expected-failure-confirmed
inline constexpr int kExitValidation = 1; // an assumption check failed
inline constexpr int kExitAbort = 2;      // engine/oracle runtime failure
inline constexpr int kExitThreshold = 3;  // a declared threshold missed

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnvVar = "DSGRAD_OUT";

struct RunOverrides {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> rounds;
};

struct ThresholdOutcome {
  ThresholdSpec spec;
  std::optional<double> observed;
  bool satisfied = false;
  std::string detail;
};

struct ExperimentResult {
  ValidationReport validation;
  std::optional<OracleSolution> oracle;
  std::optional<RunTrace> trace;
  std::vector<ThresholdOutcome> thresholds;
  int exit_code = kExitOk;
  std::string status;  // "ok", "expected-failure-confirmed", "validation-failed", ...
  std::string report_text;
};

// Runs every module validator (graph assumptions, schedule envelope,
// problem feasibility and subgradient bound) and applies the config's
// waivers.  Pure function of the config.
ValidationReport validate_experiment(const ExperimentConfig& cfg);

// Validate, solve the oracle, run the engine, and judge thresholds.  Never
// throws for expected failure modes; the outcome is encoded in exit_code
// and status.  Artifact bytes are deterministic given config and seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const RunOverrides& overrides = {});

// --out override, then the config's output.directory, then $DSGRAD_OUT,
// then "./dsgrad-out"; the experiment name is appended as a subdirectory.
std::string resolve_output_dir(const ExperimentConfig& cfg,
                               const RunOverrides& overrides);

// Deterministic JSON document with the config echo, validation outcome,
// oracle solution, summary metrics, and threshold verdicts.  Timestamps
// live in meta.json only, so re-runs produce identical bytes.
std::string summary_json(const ExperimentConfig& cfg,
                         const ExperimentResult& result);

// Writes trace.csv, summary.json, report.txt, and meta.json under dir,
// creating it if needed.  Respects the config's format toggles.
void write_artifacts(const ExperimentConfig& cfg,
                     const ExperimentResult& result, const std::string& dir);

}  // namespace dsgrad
