#pragma once

#include <string>
#include <vector>

#include "bgcsp/ensemble.hpp"

namespace bgcsp {

// Bundled experiment configurations fig06..fig13; the same definitions ship
// as JSON files under configs/. All of them run 10,000 paths of 1,000
// unit-variance steps with zero drift.
const std::vector<std::string>& figure_names();

bool is_figure_name(const std::string& name);

// Throws ConfigError for an unknown name.
ExperimentConfig figure_config(const std::string& name);

}  // namespace bgcsp
