#pragma once

#include <string>
#include <vector>

#include "dsgrad/config.hpp"

namespace dsgrad {

struct PresetInfo {
  std::string name;
  std::string description;
};

// Bundled experiments, one per validated claim: the unconstrained
// convergence regime (T1) over balanced switching and fixed unbalanced
// graphs, the constrained regime (T2) over non-identical boxes, the
// classical square-summable control, the non-vanishing negative control,
// and the per-agent perturbed-step variant.
const std::vector<PresetInfo>& list_presets();

// JSON text of a bundled preset; throws std::invalid_argument for unknown
// names.
const std::string& preset_json(const std::string& name);

// Parses the preset through the regular config path.
ExperimentConfig preset_config(const std::string& name);

}  // namespace dsgrad
