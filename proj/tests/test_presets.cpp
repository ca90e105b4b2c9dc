#include <doctest.h>

#include <set>
#include <stdexcept>

#include "dsgrad/experiment.hpp"
#include "dsgrad/presets.hpp"

using namespace dsgrad;

TEST_CASE("the preset catalogue is stable") {
  const auto& presets = list_presets();
  REQUIRE(presets.size() == 7);
  const char* expected[] = {
      "thm1_balanced_sqrt",      "thm1_fixed_unbalanced",
      "thm2_boxes_sqrt",         "thm2_timevarying_balanced",
      "classical_p1",            "negative_constant_step",
      "nonuniform_steps",
  };
  for (std::size_t i = 0; i < presets.size(); ++i) {
    CHECK(presets[i].name == expected[i]);
    CHECK_FALSE(presets[i].description.empty());
  }
}

TEST_CASE("every preset parses and passes validation with its own waivers") {
  for (const auto& info : list_presets()) {
    CAPTURE(info.name);
    const ExperimentConfig cfg = preset_config(info.name);
    CHECK(cfg.name == info.name);
    const auto report = validate_experiment(cfg);
    CHECK_MESSAGE(report.passed(), report.to_string());
    // Convergence presets pin at least one threshold each.
    CHECK_FALSE(cfg.thresholds.empty());
  }
}

TEST_CASE("the negative control's waiver is load-bearing") {
  ExperimentConfig cfg = preset_config("negative_constant_step");
  REQUIRE_FALSE(cfg.waive.empty());
  CHECK(cfg.run.allow_invalid_schedule);
  bool expects_failure = false;
  for (const auto& t : cfg.thresholds) expects_failure |= t.expect_fail;
  CHECK(expects_failure);

  cfg.waive.clear();
  const auto report = validate_experiment(cfg);
  REQUIRE_FALSE(report.passed());
  bool envelope = false;
  for (const auto& v : report.violations)
    envelope = envelope || v.check == "assumption-7";
  CHECK(envelope);
}

TEST_CASE("unknown preset names are rejected") {
  CHECK_THROWS_AS(preset_json("thm3_miracle"), std::invalid_argument);
  CHECK_THROWS_AS(preset_config(""), std::invalid_argument);
}

TEST_CASE("preset experiments cover both graph regimes and both modes") {
  std::set<GraphKind> kinds;
  bool constrained_seen = false;
  bool unconstrained_seen = false;
  bool perturbed_seen = false;
  for (const auto& info : list_presets()) {
    const auto cfg = preset_config(info.name);
    kinds.insert(cfg.run.graph.kind());
    (cfg.run.problem.constrained() ? constrained_seen : unconstrained_seen) =
        true;
    perturbed_seen = perturbed_seen || cfg.run.perturbation.has_value();
  }
  CHECK(kinds.size() == 3);
  CHECK(constrained_seen);
  CHECK(unconstrained_seen);
  CHECK(perturbed_seen);
}
