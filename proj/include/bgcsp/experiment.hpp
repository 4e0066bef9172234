#pragma once

#include <string>
#include <vector>

#include "bgcsp/ensemble.hpp"

namespace bgcsp {

struct ExperimentOutcome {
    EnsembleResult result;
    std::vector<std::string> written_files;
    std::string summary;  // one line: paths, steps, seconds, barrier estimate
};

// Runs the ensemble and writes every declared output into out_dir (created
// if needed). Throws ConfigError on invalid configuration or unwritable
// output files, NumericError (with the first offending path and step) on
// non-finite states.
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::string& out_dir,
                                 const std::string& label);

}  // namespace bgcsp
