#include "bgcsp/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bgcsp/csv.hpp"
#include "bgcsp/errors.hpp"
#include "bgcsp/json_io.hpp"
#include "bgcsp/svg.hpp"

namespace bgcsp {

namespace {

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name,
                          const char* field, std::vector<std::string>& written) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError(std::string("outputs.") + field + ": cannot write '" +
                          path.string() + "'");
    written.push_back(path.string());
    return out;
}

void write_paths_csv(std::ostream& out, const ExperimentConfig& config,
                     const EnsembleResult& result) {
    const double dt = config.horizon / static_cast<double>(config.n_steps);
    out << "t";
    for (std::size_t p = 0; p < result.display_paths.size(); ++p) out << ",p" << p;
    out << "\n";
    for (long k = 0; k <= config.n_steps; ++k) {
        write_csv_field(out, dt * static_cast<double>(k));
        for (const auto& path : result.display_paths) {
            out << ",";
            write_csv_field(out, path[static_cast<std::size_t>(k)]);
        }
        out << "\n";
    }
}

void write_terminal_csv(std::ostream& out, const EnsembleResult& result) {
    out << "path,terminal\n";
    for (std::size_t p = 0; p < result.terminal.size(); ++p) {
        out << p << ",";
        write_csv_field(out, result.terminal[p]);
        out << "\n";
    }
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::string& out_dir,
                                 const std::string& label) {
    ExperimentOutcome outcome;
    outcome.result = run_ensemble(config);
    const EnsembleResult& r = outcome.result;

    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("outputs: cannot create directory '" + dir.string() +
                          "': " + ec.message());

    const OutputSpec& o = config.outputs;
    if (o.paths_csv) {
        auto out = open_output(dir, *o.paths_csv, "paths_csv", outcome.written_files);
        write_paths_csv(out, config, r);
    }
    if (o.terminal_csv) {
        auto out =
            open_output(dir, *o.terminal_csv, "terminal_csv", outcome.written_files);
        write_terminal_csv(out, r);
    }
    if (o.histogram_csv) {
        auto out =
            open_output(dir, *o.histogram_csv, "histogram_csv", outcome.written_files);
        r.histogram.write_csv(out);
    }
    if (o.density_svg) {
        auto out =
            open_output(dir, *o.density_svg, "density_svg", outcome.written_files);
        write_density_svg(out, r.histogram, label);
    }
    if (o.barrier_estimate_json) {
        auto out = open_output(dir, *o.barrier_estimate_json, "barrier_estimate_json",
                               outcome.written_files);
        if (!r.barrier_estimate)
            throw ConfigError(
                "outputs.barrier_estimate_json: needs an ensemble of >= 100 paths");
        out << barrier_estimate_to_json(*r.barrier_estimate);
    }

    std::ostringstream line;
    char seconds[32];
    std::snprintf(seconds, sizeof(seconds), "%.3f", r.wall_seconds);
    line << label << ": paths=" << config.n_paths << " steps=" << config.n_steps
         << " seconds=" << seconds;
    if (r.barrier_estimate) {
        if (r.barrier_estimate->diverged) {
            line << " barriers=diverged";
        } else {
            line << " barriers=[" << format_double(r.barrier_estimate->lower) << ","
                 << format_double(r.barrier_estimate->upper)
                 << "] kappa=" << format_double(r.barrier_estimate->kappa);
        }
    }
    outcome.summary = line.str();
    return outcome;
}

}  // namespace bgcsp
