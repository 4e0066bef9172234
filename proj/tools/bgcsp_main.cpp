#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgcsp/csv.hpp"
#include "bgcsp/errors.hpp"
#include "bgcsp/experiment.hpp"
#include "bgcsp/figures.hpp"
#include "bgcsp/json_io.hpp"
#include "bgcsp/skew.hpp"

namespace {

struct Overrides {
    std::uint64_t seed = 0;
    bool seed_set = false;
    long paths = 0;
    long steps = 0;
    int workers = -1;
};

void apply_overrides(bgcsp::ExperimentConfig& config, const Overrides& ov) {
    if (ov.seed_set) config.master_seed = ov.seed;
    if (ov.paths > 0) config.n_paths = ov.paths;
    if (ov.steps > 0) config.n_steps = ov.steps;
    if (ov.workers >= 0) config.workers = ov.workers;
}

std::vector<double> parse_beta_list(const std::string& text) {
    std::vector<double> betas;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        betas.push_back(std::stod(cur));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    return betas;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained stochastic process simulator"};
    app.require_subcommand(1);

    Overrides ov;
    std::string out_dir = ".";

    auto* simulate = app.add_subcommand("simulate", "Run an experiment config");
    std::string config_path;
    simulate->add_option("--config", config_path, "JSON experiment config")
        ->required();
    simulate->add_option("--seed", ov.seed, "Override master seed")
        ->each([&](const std::string&) { ov.seed_set = true; });
    simulate->add_option("--paths", ov.paths, "Override path count");
    simulate->add_option("--steps", ov.steps, "Override step count");
    simulate->add_option("--workers", ov.workers, "Worker threads (0 = auto)");
    simulate->add_option("--out", out_dir, "Output directory");

    auto* merge = app.add_subcommand("merge", "Merge barrier skewness values");
    std::string beta_text;
    merge->add_option("--betas", beta_text, "Comma-separated list in [-1,1]")
        ->required();

    auto* ladder_cmd = app.add_subcommand("ladder", "Build a barrier ladder");
    std::string psi_text = "quadratic:10";
    int ladder_n = 16;
    double ladder_width = 10.0;
    std::string schedule_text = "psi_proportional";
    double ratio = 0.5;
    std::string emit_path;
    ladder_cmd->add_option("--psi", psi_text, "Field, e.g. quadratic:10");
    ladder_cmd->add_option("--n", ladder_n, "Barriers per side")->required();
    ladder_cmd->add_option("--width", ladder_width, "Outermost barrier position");
    ladder_cmd->add_option("--schedule", schedule_text,
                           "psi_proportional or geometric");
    ladder_cmd->add_option("--ratio", ratio, "Geometric decay ratio");
    ladder_cmd->add_option("--emit", emit_path, "Write JSON here (default stdout)");

    auto* reproduce = app.add_subcommand("reproduce", "Run a bundled figure config");
    std::string figure;
    reproduce->add_option("figure", figure, "fig06..fig13")->required();
    reproduce->add_option("--seed", ov.seed, "Override master seed")
        ->each([&](const std::string&) { ov.seed_set = true; });
    reproduce->add_option("--paths", ov.paths, "Override path count");
    reproduce->add_option("--steps", ov.steps, "Override step count");
    reproduce->add_option("--workers", ov.workers, "Worker threads (0 = auto)");
    reproduce->add_option("--out", out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            bgcsp::ExperimentConfig config = bgcsp::config_from_file(config_path);
            apply_overrides(config, ov);
            const auto outcome = bgcsp::run_experiment(config, out_dir, config_path);
            std::cout << outcome.summary << "\n";
            return 0;
        }
        if (merge->parsed()) {
            const auto betas = parse_beta_list(beta_text);
            std::cout << bgcsp::format_double(bgcsp::merge_beta_product(betas))
                      << "\n";
            return 0;
        }
        if (ladder_cmd->parsed()) {
            const auto psi = bgcsp::field_from_shorthand(psi_text);
            const auto schedule = schedule_text == "geometric"
                                      ? bgcsp::LadderSchedule::Geometric
                                      : bgcsp::LadderSchedule::PsiProportional;
            const auto ladder =
                bgcsp::build_ladder(psi, ladder_width, ladder_n, schedule, ratio);
            const std::string text = bgcsp::ladder_to_json(ladder);
            if (emit_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(emit_path, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot write '" << emit_path << "'\n";
                    return 1;
                }
                out << text;
            }
            return 0;
        }
        if (reproduce->parsed()) {
            bgcsp::ExperimentConfig config = bgcsp::figure_config(figure);
            apply_overrides(config, ov);
            const auto outcome = bgcsp::run_experiment(config, out_dir, figure);
            std::cout << outcome.summary << "\n";
            return 0;
        }
    } catch (const bgcsp::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << " (path " << e.path_index
                  << ", step " << e.step_index << ")\n";
        return 2;
    } catch (const bgcsp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
