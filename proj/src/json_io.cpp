#include "bgcsp/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bgcsp/errors.hpp"

namespace bgcsp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

double require_number(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

double optional_number(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    return it->get<double>();
}

CoefficientField::Knots knots_from(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of [x, value] pairs");
    CoefficientField::Knots knots;
    for (const auto& pair : v) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number())
            fail(path, "each knot must be a [x, value] number pair");
        knots.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return knots;
}

json knots_to(const CoefficientField::Knots& knots) {
    json arr = json::array();
    for (const auto& [x, v] : knots) arr.push_back(json::array({x, v}));
    return arr;
}

json field_to(const CoefficientField& f) {
    json j;
    switch (f.kind()) {
        case FieldKind::Constant:
            j["kind"] = "constant";
            j["value"] = f.constant_value();
            break;
        case FieldKind::Linear:
            j["kind"] = "linear";
            j["a"] = f.linear_a();
            j["b"] = f.linear_b();
            break;
        case FieldKind::Quadratic:
            j["kind"] = "quadratic";
            j["scale"] = f.quadratic_scale();
            break;
        case FieldKind::AsymptoticConstant:
            j["kind"] = "asymptotic_constant";
            j["limit"] = f.asymptotic_limit();
            j["rate"] = f.asymptotic_rate();
            break;
        case FieldKind::Tabulated:
            j["kind"] = "tabulated";
            j["knots"] = knots_to(f.knots());
            break;
    }
    if (f.has_time_profile()) j["time_profile"] = knots_to(f.time_profile());
    return j;
}

CoefficientField field_from(const json& j, const std::string& path) {
    const json& kind = require(j, "kind", path);
    if (!kind.is_string()) fail(path + ".kind", "expected a string");
    const std::string k = kind.get<std::string>();
    CoefficientField f;
    try {
        if (k == "constant") {
            f = CoefficientField::constant(require_number(j, "value", path));
        } else if (k == "linear") {
            f = CoefficientField::linear(require_number(j, "a", path),
                                         require_number(j, "b", path));
        } else if (k == "quadratic") {
            f = CoefficientField::quadratic(require_number(j, "scale", path));
        } else if (k == "asymptotic_constant") {
            f = CoefficientField::asymptotic_constant(
                require_number(j, "limit", path), require_number(j, "rate", path));
        } else if (k == "tabulated") {
            f = CoefficientField::tabulated(
                knots_from(require(j, "knots", path), path + ".knots"));
        } else {
            fail(path + ".kind", "unknown field kind '" + k + "'");
        }
        if (auto it = j.find("time_profile"); it != j.end())
            f = f.with_time_profile(knots_from(*it, path + ".time_profile"));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return f;
}

const char* placement_name(BgcPlacement p) {
    switch (p) {
        case BgcPlacement::DriftTerm: return "drift";
        case BgcPlacement::DiffusionTerm: return "diffusion";
        case BgcPlacement::Differential: return "differential";
    }
    return "drift";
}

BgcPlacement placement_from(const std::string& s, const std::string& path) {
    if (s == "drift") return BgcPlacement::DriftTerm;
    if (s == "diffusion") return BgcPlacement::DiffusionTerm;
    if (s == "differential") return BgcPlacement::Differential;
    fail(path, "unknown placement '" + s + "'");
}

const char* mode_name(IncrementMode m) {
    switch (m) {
        case IncrementMode::GaussianScaled: return "gaussian_scaled";
        case IncrementMode::GaussianUnit: return "gaussian_unit";
        case IncrementMode::Binomial: return "binomial";
    }
    return "gaussian_scaled";
}

IncrementMode mode_from(const std::string& s, const std::string& path) {
    if (s == "gaussian_scaled") return IncrementMode::GaussianScaled;
    if (s == "gaussian_unit") return IncrementMode::GaussianUnit;
    if (s == "binomial") return IncrementMode::Binomial;
    fail(path, "unknown increment_mode '" + s + "'");
}

const char* schedule_name(LadderSchedule s) {
    return s == LadderSchedule::PsiProportional ? "psi_proportional" : "geometric";
}

LadderSchedule schedule_from(const std::string& s, const std::string& path) {
    if (s == "psi_proportional") return LadderSchedule::PsiProportional;
    if (s == "geometric") return LadderSchedule::Geometric;
    fail(path, "unknown schedule '" + s + "'");
}

const char* band_rule_name(BandRule r) {
    return r == BandRule::PositionBased ? "position_based" : "squared_damping";
}

BandRule band_rule_from(const std::string& s, const std::string& path) {
    if (s == "position_based") return BandRule::PositionBased;
    if (s == "squared_damping") return BandRule::SquaredDamping;
    fail(path, "unknown band_rule '" + s + "'");
}

json process_to(const ProcessSpec& process) {
    json j;
    if (std::holds_alternative<ProcessUnconstrained>(process)) {
        j["type"] = "unconstrained";
    } else if (const auto* p = std::get_if<ProcessBgc>(&process)) {
        j["type"] = "bgc";
        j["placement"] = placement_name(p->placement);
        j["psi"] = field_to(p->psi);
    } else if (const auto* p = std::get_if<ProcessMsbm>(&process)) {
        j["type"] = "msbm";
        json barriers = json::array();
        for (const auto& bar : p->barriers)
            barriers.push_back(json{{"position", bar.position}, {"beta", bar.beta}});
        j["barriers"] = barriers;
    } else if (const auto* p = std::get_if<ProcessReflected>(&process)) {
        j["type"] = "reflected";
        j["a"] = p->a;
        j["b"] = p->b;
    } else if (const auto* p = std::get_if<ProcessLadder>(&process)) {
        j["type"] = "ladder";
        j["psi"] = field_to(p->psi);
        j["half_count"] = p->half_count;
        j["schedule"] = schedule_name(p->schedule);
        if (p->schedule == LadderSchedule::Geometric)
            j["geometric_ratio"] = p->geometric_ratio;
        j["half_width"] = p->half_width;
        j["band_rule"] = band_rule_name(p->band_rule);
    }
    return j;
}

ProcessSpec process_from(const json& j, const std::string& path) {
    const json& type = require(j, "type", path);
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "unconstrained") return ProcessUnconstrained{};
    if (t == "bgc") {
        ProcessBgc p;
        const json& placement = require(j, "placement", path);
        p.placement = placement_from(placement.get<std::string>(), path + ".placement");
        p.psi = field_from(require(j, "psi", path), path + ".psi");
        return p;
    }
    if (t == "msbm") {
        ProcessMsbm p;
        const json& barriers = require(j, "barriers", path);
        if (!barriers.is_array()) fail(path + ".barriers", "expected an array");
        for (std::size_t i = 0; i < barriers.size(); ++i) {
            const std::string bp = path + ".barriers[" + std::to_string(i) + "]";
            p.barriers.push_back(BarrierSpec{
                require_number(barriers[i], "position", bp),
                require_number(barriers[i], "beta", bp)});
        }
        return p;
    }
    if (t == "reflected") {
        ProcessReflected p;
        p.a = require_number(j, "a", path);
        p.b = require_number(j, "b", path);
        return p;
    }
    if (t == "ladder") {
        ProcessLadder p;
        p.psi = field_from(require(j, "psi", path), path + ".psi");
        const json& hc = require(j, "half_count", path);
        if (!hc.is_number_integer()) fail(path + ".half_count", "expected an integer");
        p.half_count = hc.get<int>();
        p.schedule = schedule_from(require(j, "schedule", path).get<std::string>(),
                                   path + ".schedule");
        p.geometric_ratio = optional_number(j, "geometric_ratio", 0.5);
        p.half_width = require_number(j, "half_width", path);
        if (auto it = j.find("band_rule"); it != j.end())
            p.band_rule = band_rule_from(it->get<std::string>(), path + ".band_rule");
        return p;
    }
    fail(path + ".type", "unknown process type '" + t + "'");
}

}  // namespace

std::string field_to_json(const CoefficientField& field) {
    return field_to(field).dump();
}

CoefficientField field_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("field: ") + e.what());
    }
    return field_from(j, "field");
}

std::string ladder_to_json(const BarrierLadder& ladder) {
    json j;
    j["psi"] = field_to(ladder.psi);
    j["half_count"] = ladder.half_count;
    j["schedule"] = schedule_name(ladder.schedule);
    if (ladder.schedule == LadderSchedule::Geometric)
        j["geometric_ratio"] = ladder.geometric_ratio;
    j["positions"] = ladder.positions;
    j["betas"] = ladder.betas;
    return j.dump(2) + "\n";
}

BarrierLadder ladder_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("ladder: ") + e.what());
    }
    const std::string path = "ladder";
    const CoefficientField psi = field_from(require(j, "psi", path), path + ".psi");
    const json& hc = require(j, "half_count", path);
    if (!hc.is_number_integer()) fail(path + ".half_count", "expected an integer");
    const LadderSchedule schedule = schedule_from(
        require(j, "schedule", path).get<std::string>(), path + ".schedule");
    const double ratio = optional_number(j, "geometric_ratio", 0.5);
    // positions/betas are regenerated from the declared shape so a ladder
    // file can never carry an inconsistent geometry
    BarrierLadder ladder;
    const json& positions = require(j, "positions", path);
    if (!positions.is_array()) fail(path + ".positions", "expected an array");
    const double half_width =
        positions.empty() ? 1.0 : positions.back().get<double>();
    ladder = build_ladder(psi, half_width, hc.get<int>(), schedule, ratio);
    return ladder;
}

std::string barrier_estimate_to_json(const HiddenBarrierEstimate& estimate) {
    json j;
    if (estimate.diverged) {
        j["lower"] = nullptr;
        j["upper"] = nullptr;
        j["kappa"] = nullptr;
    } else {
        j["lower"] = estimate.lower;
        j["upper"] = estimate.upper;
        j["kappa"] = estimate.kappa;
    }
    j["stability"] = estimate.stability;
    j["diverged"] = estimate.diverged;
    return j.dump(2) + "\n";
}

std::string config_to_json(const ExperimentConfig& config) {
    json j;
    j["process"] = process_to(config.process);
    j["mu"] = config.mu;
    j["sigma"] = config.sigma;
    j["x0"] = config.x0;
    j["increment_mode"] = mode_name(config.increment_mode);
    j["n_paths"] = config.n_paths;
    j["n_steps"] = config.n_steps;
    j["horizon"] = config.horizon;
    j["master_seed"] = config.master_seed;
    j["histogram_bins"] = config.histogram_bins;
    j["workers"] = config.workers;
    json outputs;
    if (config.outputs.paths_csv) outputs["paths_csv"] = *config.outputs.paths_csv;
    if (config.outputs.terminal_csv)
        outputs["terminal_csv"] = *config.outputs.terminal_csv;
    if (config.outputs.histogram_csv)
        outputs["histogram_csv"] = *config.outputs.histogram_csv;
    if (config.outputs.density_svg)
        outputs["density_svg"] = *config.outputs.density_svg;
    if (config.outputs.barrier_estimate_json)
        outputs["barrier_estimate_json"] = *config.outputs.barrier_estimate_json;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");

    ExperimentConfig c;
    c.process = process_from(require(j, "process", "config"), "config.process");
    c.mu = require_number(j, "mu", "config");
    c.sigma = require_number(j, "sigma", "config");
    c.x0 = optional_number(j, "x0", 0.0);
    c.increment_mode = mode_from(
        require(j, "increment_mode", "config").get<std::string>(),
        "config.increment_mode");
    const json& paths = require(j, "n_paths", "config");
    if (!paths.is_number_integer()) fail("config.n_paths", "expected an integer");
    c.n_paths = paths.get<long>();
    const json& steps = require(j, "n_steps", "config");
    if (!steps.is_number_integer()) fail("config.n_steps", "expected an integer");
    c.n_steps = steps.get<long>();
    c.horizon = require_number(j, "horizon", "config");
    const json& seed = require(j, "master_seed", "config");
    if (!seed.is_number_integer()) fail("config.master_seed", "expected an integer");
    c.master_seed = seed.get<std::uint64_t>();
    c.histogram_bins =
        static_cast<int>(optional_number(j, "histogram_bins", 101));
    c.workers = static_cast<int>(optional_number(j, "workers", 0));

    if (auto it = j.find("outputs"); it != j.end()) {
        if (!it->is_object()) fail("config.outputs", "expected an object");
        auto get = [&](const char* key) -> std::optional<std::string> {
            auto o = it->find(key);
            if (o == it->end()) return std::nullopt;
            if (!o->is_string()) fail(std::string("config.outputs.") + key,
                                      "expected a string");
            return o->get<std::string>();
        };
        c.outputs.paths_csv = get("paths_csv");
        c.outputs.terminal_csv = get("terminal_csv");
        c.outputs.histogram_csv = get("histogram_csv");
        c.outputs.density_svg = get("density_svg");
        c.outputs.barrier_estimate_json = get("barrier_estimate_json");
    }
    return c;
}

ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

CoefficientField field_from_shorthand(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    auto num = [&](std::size_t i) {
        try {
            return std::stod(parts.at(i));
        } catch (const std::exception&) {
            throw ConfigError("psi: bad number in '" + text + "'");
        }
    };
    try {
        if (parts[0] == "constant" && parts.size() == 2)
            return CoefficientField::constant(num(1));
        if (parts[0] == "linear" && parts.size() == 3)
            return CoefficientField::linear(num(1), num(2));
        if (parts[0] == "quadratic" && parts.size() == 2)
            return CoefficientField::quadratic(num(1));
        if (parts[0] == "asymptotic" && parts.size() == 3)
            return CoefficientField::asymptotic_constant(num(1), num(2));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("psi: ") + e.what());
    }
    throw ConfigError(
        "psi: expected constant:<v>, linear:<a>:<b>, quadratic:<scale> or "
        "asymptotic:<limit>:<rate>, got '" + text + "'");
}

}  // namespace bgcsp
