#include "qfock/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qfock {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Row make_row(std::string quantity, std::string param_name, double param, double analytic,
             double numeric, double tolerance) {
    Row r;
    r.quantity = std::move(quantity);
    r.param_name = std::move(param_name);
    r.param = param;
    r.analytic = analytic;
    r.numeric = numeric;
    r.deviation = std::abs(numeric - analytic);
    r.tolerance = tolerance;
    r.pass = r.deviation < r.tolerance;
    return r;
}

void finalize(RunResult& r, const double* tolerance_override) {
    r.max_deviation = 0.0;
    r.pass = true;
    for (Row& row : r.rows) {
        if (tolerance_override != nullptr) {
            row.tolerance = *tolerance_override;
        }
        // NaN deviations fail: the comparison is false.
        row.pass = row.deviation < row.tolerance;
        r.max_deviation = std::max(r.max_deviation, row.deviation);
        r.pass = r.pass && row.pass;
    }
}

std::string to_csv(const RunResult& r) {
    std::ostringstream os;
    os << "index,quantity,param_name,param,analytic,numeric,deviation,tolerance,pass\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const Row& row = r.rows[i];
        os << i << ',' << row.quantity << ',' << row.param_name << ',' << format_double(row.param)
           << ',' << format_double(row.analytic) << ',' << format_double(row.numeric) << ','
           << format_double(row.deviation) << ',' << format_double(row.tolerance) << ','
           << (row.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_json(const RunResult& r) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario;
    j["config"] = r.config;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Row& row : r.rows) {
        nlohmann::ordered_json o;
        o["quantity"] = row.quantity;
        o["param_name"] = row.param_name;
        o["param"] = row.param;
        o["analytic"] = row.analytic;
        o["numeric"] = row.numeric;
        o["deviation"] = row.deviation;
        o["tolerance"] = row.tolerance;
        o["pass"] = row.pass;
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    nlohmann::ordered_json info = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.info) {
        info[k] = v;
    }
    j["info"] = std::move(info);
    j["max_deviation"] = r.max_deviation;
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

}  // namespace qfock
