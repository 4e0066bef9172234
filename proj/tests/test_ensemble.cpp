#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bgcsp/ensemble.hpp"
#include "bgcsp/errors.hpp"
#include "bgcsp/experiment.hpp"
#include "bgcsp/figures.hpp"
#include "bgcsp/json_io.hpp"

using namespace bgcsp;

namespace {

ExperimentConfig small_unconstrained() {
    ExperimentConfig c;
    c.process = ProcessUnconstrained{};
    c.mu = 0.0;
    c.sigma = 1.0;
    c.increment_mode = IncrementMode::GaussianScaled;
    c.n_paths = 400;
    c.n_steps = 50;
    c.horizon = 1.0;
    c.master_seed = 99;
    return c;
}

}  // namespace

TEST_CASE("a frozen path ensemble is deterministic and degenerate") {
    ExperimentConfig c = small_unconstrained();
    c.sigma = 0.0;
    c.x0 = 1.25;
    c.n_paths = 1;
    const EnsembleResult r = run_ensemble(c);
    CHECK(r.terminal[0] == 1.25);
    for (double v : r.step_var) CHECK(v == 0.0);
    for (double m : r.step_mean) CHECK(m == 1.25);
}

TEST_CASE("worker count does not change any result byte") {
    ExperimentConfig c = small_unconstrained();
    c.process = ProcessMsbm{{BarrierSpec{0.0, 0.5}}};
    c.outputs.paths_csv = "p.csv";  // exercise display-path collection too

    ExperimentConfig c1 = c, c4 = c;
    c1.workers = 1;
    c4.workers = 4;
    const EnsembleResult r1 = run_ensemble(c1);
    const EnsembleResult r4 = run_ensemble(c4);
    CHECK(r1.terminal == r4.terminal);
    CHECK(r1.step_mean == r4.step_mean);
    CHECK(r1.step_var == r4.step_var);
    CHECK(r1.mean_local_time == r4.mean_local_time);
    CHECK(r1.total_hits == r4.total_hits);
    CHECK(r1.display_paths == r4.display_paths);
    CHECK(r1.histogram.counts == r4.histogram.counts);
}

TEST_CASE("running the same config twice is bit-identical") {
    ExperimentConfig c = small_unconstrained();
    const EnsembleResult a = run_ensemble(c);
    const EnsembleResult b = run_ensemble(c);
    CHECK(a.terminal == b.terminal);
    CHECK(a.step_mean == b.step_mean);
}

TEST_CASE("histogram counts conserve the path count") {
    ExperimentConfig c = small_unconstrained();
    c.n_paths = 1234;
    const EnsembleResult r = run_ensemble(c);
    CHECK(r.histogram.total() == 1234);
    CHECK(r.step_var.back() >= 0.0);
}

TEST_CASE("reflected ensembles report regulator means") {
    ExperimentConfig c = small_unconstrained();
    c.process = ProcessReflected{-1.0, 1.0};
    c.n_paths = 200;
    c.n_steps = 400;
    c.horizon = 4.0;
    const EnsembleResult r = run_ensemble(c);
    CHECK(r.mean_regulator_lower > 0.0);
    CHECK(r.mean_regulator_upper > 0.0);
    for (double v : r.terminal) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("validation reports dotted field paths") {
    ExperimentConfig c = small_unconstrained();
    c.n_paths = 0;
    CHECK_THROWS_WITH_AS(c.validate(), "n_paths: must be >= 1", ConfigError);

    ExperimentConfig bad_reflect = small_unconstrained();
    bad_reflect.process = ProcessReflected{1.0, -1.0};
    CHECK_THROWS_AS(bad_reflect.validate(), ConfigError);

    ExperimentConfig tent = small_unconstrained();
    ProcessBgc p;
    p.psi = CoefficientField::tabulated({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
    tent.process = p;
    CHECK_THROWS_AS(tent.validate(), ConfigError);
}

TEST_CASE("config json round-trips to a canonical fixed point") {
    for (const auto& name : figure_names()) {
        const ExperimentConfig config = figure_config(name);
        const std::string once = config_to_json(config);
        const std::string twice = config_to_json(config_from_json(once));
        CHECK(once == twice);
    }
}

TEST_CASE("config parse errors carry field paths") {
    CHECK_THROWS_WITH_AS(config_from_json("{}"), "config.process: missing",
                         ConfigError);
    CHECK_THROWS_WITH_AS(
        config_from_json(R"({"process":{"type":"nope"},"mu":0,"sigma":1,)"
                         R"("increment_mode":"gaussian_unit","n_paths":1,)"
                         R"("n_steps":1,"horizon":1,"master_seed":0})"),
        "config.process.type: unknown process type 'nope'", ConfigError);
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
}

TEST_CASE("bundled figure configs parse, validate and match the shipped files") {
    for (const auto& name : figure_names()) {
        const ExperimentConfig config = figure_config(name);
        CHECK_NOTHROW(config.validate());

        const std::filesystem::path file =
            std::filesystem::path(TEST_SOURCE_DIR) / ".." / "configs" /
            (name + ".json");
        REQUIRE(std::filesystem::exists(file));
        std::ifstream in(file, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        CHECK(buffer.str() == config_to_json(config));
    }
}

TEST_CASE("numeric failures report the first offending path and step") {
    ExperimentConfig c = small_unconstrained();
    c.mu = 1e308;
    c.x0 = 1e308;
    c.sigma = 0.0;
    c.n_paths = 8;
    c.n_steps = 3;
    c.horizon = 3.0;
    try {
        run_ensemble(c);
        FAIL("expected a NumericError");
    } catch (const NumericError& e) {
        CHECK(e.path_index == 0);
        CHECK(e.step_index == 0);
    }
}

TEST_CASE("ladder and direct constraint agree on the hidden-barrier scale") {
    // same psi; the ladder's fully reflective wall sits at 12, the level
    // where the one-step pull psi(12)*dt = 1.44 exceeds the mean absolute
    // increment enough to act impermeable for unit-variance steps
    ExperimentConfig direct;
    ProcessBgc bgc;
    bgc.placement = BgcPlacement::DriftTerm;
    bgc.psi = CoefficientField::quadratic(10.0);
    direct.process = bgc;
    direct.mu = 0.0;
    direct.sigma = 1.0;
    direct.increment_mode = IncrementMode::GaussianUnit;
    direct.n_paths = 10000;
    direct.n_steps = 1000;
    direct.horizon = 1000.0;
    direct.master_seed = 1013;

    ExperimentConfig laddered = direct;
    ProcessLadder lad;
    lad.psi = CoefficientField::quadratic(10.0);
    lad.half_count = 16;
    lad.schedule = LadderSchedule::PsiProportional;
    lad.half_width = 12.0;
    lad.band_rule = BandRule::PositionBased;
    laddered.process = lad;
    laddered.master_seed = 16;

    const double direct_kappa = run_ensemble(direct).barrier_estimate->kappa;
    const double ladder_kappa = run_ensemble(laddered).barrier_estimate->kappa;
    CHECK(std::abs(ladder_kappa - direct_kappa) <= 0.10 * direct_kappa);
}

TEST_CASE("experiment writes declared outputs") {
    const auto dir =
        std::filesystem::temp_directory_path() / "bgcsp_test_outputs";
    std::filesystem::remove_all(dir);

    ExperimentConfig c = small_unconstrained();
    c.n_paths = 120;
    c.n_steps = 20;
    c.outputs.paths_csv = "paths.csv";
    c.outputs.terminal_csv = "terminal.csv";
    c.outputs.histogram_csv = "histogram.csv";
    c.outputs.density_svg = "density.svg";
    c.outputs.barrier_estimate_json = "barriers.json";

    const auto outcome = run_experiment(c, dir.string(), "unit");
    CHECK(outcome.written_files.size() == 5);
    for (const auto& f : outcome.written_files)
        CHECK(std::filesystem::file_size(f) > 0);
    CHECK(outcome.summary.find("paths=120") != std::string::npos);

    // display subset: 120 paths -> 120 columns plus t
    std::ifstream paths(dir / "paths.csv");
    std::string header;
    std::getline(paths, header);
    CHECK(std::count(header.begin(), header.end(), ',') == 120);
    std::filesystem::remove_all(dir);
}
