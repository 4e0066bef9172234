#pragma once

#include <string>

#include "bgcsp/coefficients.hpp"
#include "bgcsp/ensemble.hpp"
#include "bgcsp/ladder.hpp"

namespace bgcsp {

// JSON forms of the configurable objects. Serialization is canonical
// (sorted keys, minimal spelling), so serialize(parse(text)) is a fixed
// point for any accepted input.
//
// Coefficient fields:
//   {"kind":"constant","value":1.0}
//   {"kind":"linear","a":1.0,"b":0.0}
//   {"kind":"quadratic","scale":10.0}
//   {"kind":"asymptotic_constant","limit":1.0,"rate":2.0}
//   {"kind":"tabulated","knots":[[x,y],...]}
// plus an optional "time_profile":[[t,s],...] on any kind.

std::string field_to_json(const CoefficientField& field);
CoefficientField field_from_json(const std::string& text);

std::string ladder_to_json(const BarrierLadder& ladder);
BarrierLadder ladder_from_json(const std::string& text);

// {"lower":..,"upper":..,"kappa":..,"stability":..,"diverged":bool};
// numeric fields are null when the estimate diverged.
std::string barrier_estimate_to_json(const HiddenBarrierEstimate& estimate);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);

// Parses a psi descriptor of the short command-line form
// "quadratic:10", "constant:1", "linear:a:b", "asymptotic:limit:rate".
CoefficientField field_from_shorthand(const std::string& text);

}  // namespace bgcsp
