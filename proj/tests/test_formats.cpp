#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgcsp/csv.hpp"
#include "bgcsp/errors.hpp"
#include "bgcsp/json_io.hpp"
#include "bgcsp/sde.hpp"
#include "bgcsp/skew.hpp"
#include "bgcsp/svg.hpp"

using namespace bgcsp;

TEST_CASE("path csv carries full precision and LF endings") {
    SdeSpec spec;
    spec.drift = CoefficientField::constant(0.0);
    spec.diffusion = CoefficientField::constant(1.0);
    const PathRecord rec = simulate_path(spec, 3, 0.3, SplitMix64(1));
    std::ostringstream out;
    rec.write_csv(out);
    const std::string text = out.str();
    CHECK(text.rfind("t,x\n", 0) == 0);
    CHECK(text.find("\r") == std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);

    // a value printed with 17 significant digits parses back exactly
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);
    std::getline(in, line);  // first step
    const double parsed = std::stod(line.substr(line.find(',') + 1));
    CHECK(parsed == rec.values[1]);
}

TEST_CASE("format_double round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789012345678, -0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("ledger and regulator csv headers") {
    MsbmSpec spec;
    spec.mu = 0.0;
    spec.sigma = 1.0;
    spec.barriers = {{-1.0, -0.5}, {1.0, 0.5}};
    spec.x0 = 0.0;
    const auto res = simulate_msbm(spec, IncrementMode::GaussianScaled, 5, 1.0,
                                   SplitMix64(2), SplitMix64(3), true);
    std::ostringstream ledger;
    write_ledger_csv(ledger, res.path, spec, res.ledger_series);
    CHECK(ledger.str().rfind("t,L_x1,L_x2\n", 0) == 0);

    const auto refl = simulate_reflected(0.0, 1.0, -1.0, 1.0, 0.0,
                                         IncrementMode::GaussianScaled, 5, 1.0,
                                         SplitMix64(4));
    std::ostringstream reg;
    write_regulators_csv(reg, refl.path, refl.regulators);
    const std::string text = reg.str();
    CHECK(text.rfind("t,A,B\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}

TEST_CASE("vector-valued path csv names coordinates") {
    SdeSpecNd nd;
    nd.dimension = 2;
    nd.wiener_dimension = 1;
    nd.drift = {CoefficientField::constant(0.0), CoefficientField::constant(0.0)};
    nd.diffusion = {CoefficientField::constant(1.0), CoefficientField::constant(1.0)};
    nd.bgc = {std::nullopt, std::nullopt};
    nd.x0 = {0.0, 1.0};
    const PathRecord rec = simulate_multidim(nd, 2, 1.0, SplitMix64(5));
    std::ostringstream out;
    rec.write_csv(out);
    CHECK(out.str().rfind("t,x1,x2\n", 0) == 0);
}

TEST_CASE("coefficient fields round-trip through json") {
    const auto fields = {
        CoefficientField::constant(2.5),
        CoefficientField::linear(1.0, -2.0),
        CoefficientField::quadratic(10.0),
        CoefficientField::asymptotic_constant(3.0, 0.5),
        CoefficientField::tabulated({{-1.0, 0.5}, {0.0, 1.0}, {2.0, 0.25}}),
        CoefficientField::quadratic(10.0).with_time_profile(
            {{0.0, 1.0}, {100.0, 2.0}}),
    };
    for (const auto& field : fields) {
        const CoefficientField parsed = field_from_json(field_to_json(field));
        CHECK(parsed == field);
    }
    CHECK_THROWS_AS(field_from_json(R"({"kind":"mystery"})"), ConfigError);
    CHECK_THROWS_AS(field_from_json(R"({"kind":"quadratic","scale":0})"),
                    ConfigError);
}

TEST_CASE("psi shorthand") {
    CHECK(field_from_shorthand("quadratic:10").quadratic_scale() == 10.0);
    CHECK(field_from_shorthand("constant:1.5").constant_value() == 1.5);
    CHECK(field_from_shorthand("linear:2:1").linear_b() == 1.0);
    CHECK(field_from_shorthand("asymptotic:1:2").asymptotic_rate() == 2.0);
    CHECK_THROWS_AS(field_from_shorthand("cubic:3"), ConfigError);
    CHECK_THROWS_AS(field_from_shorthand("quadratic:abc"), ConfigError);
}

TEST_CASE("barrier estimate json uses nulls once diverged") {
    HiddenBarrierEstimate est;
    est.lower = -10.0;
    est.upper = 10.0;
    est.kappa = 10.0;
    est.stability = 0.25;
    est.diverged = false;
    const std::string text = barrier_estimate_to_json(est);
    CHECK(text.find("\"lower\": -10.0") != std::string::npos);
    CHECK(text.find("\"diverged\": false") != std::string::npos);

    est.diverged = true;
    const std::string netted = barrier_estimate_to_json(est);
    CHECK(netted.find("\"lower\": null") != std::string::npos);
    CHECK(netted.find("\"kappa\": null") != std::string::npos);
    CHECK(netted.find("\"diverged\": true") != std::string::npos);
}

TEST_CASE("density svg is well formed") {
    const auto edges = uniform_edges(-10.0, 10.0, 11);
    const std::vector<double> values = {-9.0, -3.0, 0.0, 0.5, 4.0, 9.5};
    const Histogram h = make_histogram(values, edges);
    std::ostringstream out;
    write_density_svg(out, h, "test density");
    const std::string svg = out.str();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("test density") != std::string::npos);
}
