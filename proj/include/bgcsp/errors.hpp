#pragma once

#include <stdexcept>
#include <string>

namespace bgcsp {

// Invalid experiment configuration; messages carry dotted field paths
// (e.g. "process.psi.scale: must be nonzero").
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite state encountered during simulation.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, long path, long step)
        : std::runtime_error(what), path_index(path), step_index(step) {}
    long path_index;
    long step_index;
};

}  // namespace bgcsp
