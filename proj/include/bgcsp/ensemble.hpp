#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bgcsp/coefficients.hpp"
#include "bgcsp/histogram.hpp"
#include "bgcsp/ladder.hpp"
#include "bgcsp/sde.hpp"
#include "bgcsp/skew.hpp"

namespace bgcsp {

struct ProcessUnconstrained {};

struct ProcessBgc {
    BgcPlacement placement = BgcPlacement::DriftTerm;
    CoefficientField psi;
};

struct ProcessMsbm {
    std::vector<BarrierSpec> barriers;
};

struct ProcessReflected {
    double a = -10.0;
    double b = 10.0;
};

struct ProcessLadder {
    CoefficientField psi;
    int half_count = 1;
    LadderSchedule schedule = LadderSchedule::PsiProportional;
    double geometric_ratio = 0.5;
    double half_width = 10.0;
    BandRule band_rule = BandRule::PositionBased;
};

using ProcessSpec = std::variant<ProcessUnconstrained, ProcessBgc, ProcessMsbm,
                                 ProcessReflected, ProcessLadder>;

struct OutputSpec {
    std::optional<std::string> paths_csv;
    std::optional<std::string> terminal_csv;
    std::optional<std::string> histogram_csv;
    std::optional<std::string> density_svg;
    std::optional<std::string> barrier_estimate_json;
};

struct ExperimentConfig {
    ProcessSpec process;
    double mu = 0.0;
    double sigma = 1.0;
    double x0 = 0.0;
    IncrementMode increment_mode = IncrementMode::GaussianScaled;
    long n_paths = 1;
    long n_steps = 1;
    double horizon = 1.0;
    std::uint64_t master_seed = 0;
    int histogram_bins = 101;
    int workers = 0;  // 0 = hardware concurrency
    OutputSpec outputs;

    void validate() const;  // throws ConfigError with dotted field paths
};

struct EnsembleResult {
    std::vector<double> terminal;             // n_paths entries, path order
    std::vector<double> step_mean;            // n_steps + 1
    std::vector<double> step_var;             // n_steps + 1, >= 0
    std::vector<PathExtremes> extremes;       // per path
    Histogram histogram;                      // of terminal values
    std::optional<HiddenBarrierEstimate> barrier_estimate;
    std::vector<std::vector<double>> display_paths;  // first <=1000 full paths
    std::vector<double> mean_local_time;      // msbm only, per barrier
    std::vector<long> total_hits;             // msbm only, per barrier
    double mean_regulator_lower = 0.0;        // reflected only: mean A_T
    double mean_regulator_upper = 0.0;        // reflected only: mean B_T
    double wall_seconds = 0.0;
};

// Simulates config.n_paths paths with per-path streams derived from the
// master seed and reduces them over a fixed shard layout, so the result is
// bit-identical for any worker count. Full paths are retained for the first
// min(1000, n_paths) path indices when a paths output is declared.
EnsembleResult run_ensemble(const ExperimentConfig& config);

}  // namespace bgcsp
