#pragma once

// Scenario runner behind the command-line tool. Every scenario produces
// verification rows comparing a closed form with an independent computation.

#include "qfock/fock.hpp"
#include "qfock/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfock {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Sweep {
    double start;
    double stop;
    int points;  // >= 2

    double at(int i) const { return start + (stop - start) * i / (points - 1); }
};

struct ScenarioConfig {
    std::string scenario;
    std::optional<int> n_max;
    cplx gamma{2.0, 0.0};
    cplx gamma2{3.0, 0.0};
    double phi = 0.0;
    double phi2 = 0.0;
    std::optional<Sweep> sweep;
    int n = 4;
    std::optional<int> points;  // per-scenario default when unset
    std::optional<double> gammasq;
    std::string state = "coherent";
    std::optional<double> omega;
    std::optional<double> volume;
    std::optional<double> tol;
    std::string format = "csv";
    std::string out;
};

const std::vector<std::string>& scenario_names();

/// "re+imi", "re-imi", "imi", "re", or polar "r@theta". Throws ConfigError.
cplx parse_complex(const std::string& text);

/// "start:stop:points". Throws ConfigError.
Sweep parse_sweep(const std::string& text);

/// Canonical text form of a complex value, round-trippable through parse_complex.
std::string format_complex(cplx z);

/// Throws ConfigError for invalid configurations.
void validate(const ScenarioConfig& cfg);

/// Runs one scenario. Invalid inputs raise ConfigError (or a library error
/// for parameters the physics rejects); verification failures are reported
/// in the result, not thrown.
RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace qfock
