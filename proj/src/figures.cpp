#include "bgcsp/figures.hpp"

#include <algorithm>

#include "bgcsp/errors.hpp"

namespace bgcsp {

namespace {

ExperimentConfig base_config(const std::string& name, std::uint64_t seed) {
    ExperimentConfig c;
    c.mu = 0.0;
    c.sigma = 1.0;
    c.x0 = 0.0;
    c.increment_mode = IncrementMode::GaussianUnit;
    c.n_paths = 10000;
    c.n_steps = 1000;
    c.horizon = 1000.0;  // dt = 1: unit-variance increments either way
    c.master_seed = seed;
    c.histogram_bins = 101;
    c.outputs.terminal_csv = name + "_terminal.csv";
    c.outputs.histogram_csv = name + "_histogram.csv";
    return c;
}

ProcessLadder figure_ladder(int half_count, double half_width) {
    ProcessLadder p;
    p.psi = CoefficientField::quadratic(10.0);
    p.half_count = half_count;
    p.schedule = LadderSchedule::PsiProportional;
    p.half_width = half_width;
    p.band_rule = BandRule::SquaredDamping;
    return p;
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {
        "fig06", "fig07", "fig08", "fig09", "fig10", "fig11", "fig12", "fig13"};
    return names;
}

bool is_figure_name(const std::string& name) {
    const auto& names = figure_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ExperimentConfig figure_config(const std::string& name) {
    // fig06..fig11: barrier-ladder runs, doubling the barrier count;
    // fig12: constrained random walk with binomial increments (banding);
    // fig13: directly constrained diffusion with psi = (x/10)^2.
    if (name == "fig06") {
        ExperimentConfig c = base_config(name, 1006);
        c.process = figure_ladder(1, 10.0);  // two fully reflective barriers
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig07") {
        ExperimentConfig c = base_config(name, 1007);
        c.process = figure_ladder(2, 20.0);
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig08") {
        ExperimentConfig c = base_config(name, 1008);
        c.process = figure_ladder(4, 20.0);
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig09") {
        ExperimentConfig c = base_config(name, 1009);
        c.process = figure_ladder(8, 20.0);
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig10") {
        ExperimentConfig c = base_config(name, 1010);
        c.process = figure_ladder(16, 20.0);
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig11") {
        ExperimentConfig c = base_config(name, 1011);
        c.process = figure_ladder(16, 20.0);  // density only, no barriers drawn
        c.outputs.density_svg = name + "_density.svg";
        return c;
    }
    if (name == "fig12") {
        ExperimentConfig c = base_config(name, 1012);
        ProcessBgc p;
        p.placement = BgcPlacement::DriftTerm;
        p.psi = CoefficientField::quadratic(10.0);
        c.process = p;
        c.increment_mode = IncrementMode::Binomial;
        return c;
    }
    if (name == "fig13") {
        ExperimentConfig c = base_config(name, 1013);
        ProcessBgc p;
        p.placement = BgcPlacement::DriftTerm;
        p.psi = CoefficientField::quadratic(10.0);
        c.process = p;
        c.outputs.paths_csv = name + "_paths.csv";
        c.outputs.density_svg = name + "_density.svg";
        c.outputs.barrier_estimate_json = name + "_barriers.json";
        return c;
    }
    throw ConfigError("figure: unknown name '" + name +
                      "' (expected fig06..fig13)");
}

}  // namespace bgcsp
