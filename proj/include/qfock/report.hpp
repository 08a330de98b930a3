#pragma once

// Verification rows and their CSV / JSON serialization.

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfock {

struct Row {
    std::string quantity;    // what is compared
    std::string param_name;  // name of the varied input ("" when none)
    double param = 0.0;      // value of the varied input
    double analytic = 0.0;   // closed form or reference path
    double numeric = 0.0;    // computed value
    double deviation = 0.0;  // |numeric - analytic|
    double tolerance = 0.0;
    bool pass = false;       // deviation < tolerance
};

struct RunResult {
    std::string scenario;
    nlohmann::ordered_json config;
    std::vector<Row> rows;
    std::map<std::string, double> info;  // report-only values, not verified
    double max_deviation = 0.0;
    bool pass = true;
};

/// Fills deviation and pass. A row passes only when deviation < tolerance.
Row make_row(std::string quantity, std::string param_name, double param, double analytic,
             double numeric, double tolerance);

/// Applies an override tolerance to every row when given, then recomputes
/// pass flags, max_deviation and the overall verdict.
void finalize(RunResult& r, const double* tolerance_override);

/// Header plus one line per row; 17 significant digits; '.' decimal separator.
std::string to_csv(const RunResult& r);

/// {scenario, config, rows, info, max_deviation, pass}.
std::string to_json(const RunResult& r);

/// %.17g in the C locale.
std::string format_double(double v);

}  // namespace qfock
