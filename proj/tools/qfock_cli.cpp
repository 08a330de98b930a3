// Command-line front end: runs one verification scenario and writes its rows
// as CSV or JSON.
//
// Exit codes: 0 all rows pass, 1 invalid configuration or library error,
// 2 at least one verification row failed.

#include "qfock/scenario.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using qfock::ConfigError;
using qfock::ScenarioConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;

struct RawFlags {
    std::string scenario;
    int nmax = 0;
    std::string gamma;
    std::string gamma2;
    double phi = 0.0;
    double phi2 = 0.0;
    std::string sweep;
    std::string format;
    std::string out;
    double omega = 0.0;
    double volume = 0.0;
    double tol = 0.0;
    int n = 0;
    int points = 0;
    double gammasq = 0.0;
    std::string state;
    std::string config;
};

// Value of a JSON config key: numbers and strings are both accepted for
// complex parameters and sweeps.
std::string json_text(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number()) {
        return qfock::format_double(v.get<double>());
    }
    throw ConfigError("config key '" + key + "' must be a string or number");
}

template <typename T>
T json_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) {
        throw ConfigError("config key '" + key + "' must be a number");
    }
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) {
            throw ConfigError("config key '" + key + "' must be an integer");
        }
    }
    return v.get<T>();
}

void apply_config_file(const std::string& path, ScenarioConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "scenario") {
            cfg.scenario = json_text(v, key);
        } else if (key == "nmax") {
            cfg.n_max = json_number<int>(v, key);
        } else if (key == "gamma") {
            cfg.gamma = qfock::parse_complex(json_text(v, key));
        } else if (key == "gamma2") {
            cfg.gamma2 = qfock::parse_complex(json_text(v, key));
        } else if (key == "phi") {
            cfg.phi = json_number<double>(v, key);
        } else if (key == "phi2") {
            cfg.phi2 = json_number<double>(v, key);
        } else if (key == "sweep") {
            cfg.sweep = qfock::parse_sweep(json_text(v, key));
        } else if (key == "format") {
            cfg.format = json_text(v, key);
        } else if (key == "out") {
            cfg.out = json_text(v, key);
        } else if (key == "omega") {
            cfg.omega = json_number<double>(v, key);
        } else if (key == "volume") {
            cfg.volume = json_number<double>(v, key);
        } else if (key == "tol") {
            cfg.tol = json_number<double>(v, key);
        } else if (key == "n") {
            cfg.n = json_number<int>(v, key);
        } else if (key == "points") {
            cfg.points = json_number<int>(v, key);
        } else if (key == "gammasq") {
            cfg.gammasq = json_number<double>(v, key);
        } else if (key == "state") {
            cfg.state = json_text(v, key);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

std::string join_names() {
    std::string s;
    for (const auto& n : qfock::scenario_names()) {
        s += (s.empty() ? "" : ", ") + n;
    }
    return s;
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    f << text;
    if (!f) {
        throw ConfigError("failed writing '" + path + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-optics verification runner. Scenarios: " + join_names()};
    RawFlags f;
    bool list = false;
    auto* o_scenario = app.add_option("scenario,--scenario", f.scenario, "scenario to run");
    auto* o_nmax = app.add_option("--nmax", f.nmax, "Fock truncation n_max");
    auto* o_gamma = app.add_option("--gamma", f.gamma, "signal amplitude (re+imi or r@theta)");
    auto* o_gamma2 = app.add_option("--gamma2", f.gamma2, "second / local-oscillator amplitude");
    auto* o_phi = app.add_option("--phi", f.phi, "phase (rad)");
    auto* o_phi2 = app.add_option("--phi2", f.phi2, "local-oscillator phase (rad)");
    auto* o_sweep = app.add_option("--sweep", f.sweep, "start:stop:points sweep of the varied parameter");
    auto* o_format = app.add_option("--format", f.format, "csv or json");
    auto* o_out = app.add_option("--out", f.out, "output file (default stdout)");
    auto* o_omega = app.add_option("--omega", f.omega, "angular frequency (rad/s), with --volume");
    auto* o_volume = app.add_option("--volume", f.volume, "mode volume (m^3), with --omega");
    auto* o_tol = app.add_option("--tol", f.tol, "override every row tolerance");
    auto* o_n = app.add_option("--n", f.n, "photon number");
    auto* o_points = app.add_option("--points", f.points, "grid or sweep points");
    auto* o_gammasq = app.add_option("--gammasq", f.gammasq, "|gamma|^2 for phase-variance");
    auto* o_state = app.add_option("--state", f.state, "coherent, number or vacuum");
    app.add_option("--config", f.config, "JSON file with the same keys as the flags");
    app.add_flag("--list", list, "print scenario names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (list) {
        for (const auto& n : qfock::scenario_names()) {
            std::cout << n << '\n';
        }
        return kExitOk;
    }

    try {
        ScenarioConfig cfg;
        if (!f.config.empty()) {
            apply_config_file(f.config, cfg);
        }
        // Flags override the config file.
        if (o_scenario->count()) cfg.scenario = f.scenario;
        if (o_nmax->count()) cfg.n_max = f.nmax;
        if (o_gamma->count()) cfg.gamma = qfock::parse_complex(f.gamma);
        if (o_gamma2->count()) cfg.gamma2 = qfock::parse_complex(f.gamma2);
        if (o_phi->count()) cfg.phi = f.phi;
        if (o_phi2->count()) cfg.phi2 = f.phi2;
        if (o_sweep->count()) cfg.sweep = qfock::parse_sweep(f.sweep);
        if (o_format->count()) cfg.format = f.format;
        if (o_out->count()) cfg.out = f.out;
        if (o_omega->count()) cfg.omega = f.omega;
        if (o_volume->count()) cfg.volume = f.volume;
        if (o_tol->count()) cfg.tol = f.tol;
        if (o_n->count()) cfg.n = f.n;
        if (o_points->count()) cfg.points = f.points;
        if (o_gammasq->count()) cfg.gammasq = f.gammasq;
        if (o_state->count()) cfg.state = f.state;

        if (cfg.scenario.empty()) {
            throw ConfigError("no scenario given; choose one of: " + join_names());
        }

        const qfock::RunResult r = qfock::run_scenario(cfg);
        const std::string text = cfg.format == "json" ? qfock::to_json(r) : qfock::to_csv(r);

        std::string path = cfg.out;
        if (path.empty()) {
            if (const char* dir = std::getenv("QFOCK_OUT_DIR"); dir && *dir) {
                std::filesystem::create_directories(dir);
                path = (std::filesystem::path(dir) / (cfg.scenario + "." + cfg.format)).string();
            }
        }
        if (path.empty()) {
            std::cout << text;
            std::cout.flush();
        } else {
            write_output(path, text);
        }
        if (!r.pass) {
            std::cerr << "verification failed: max deviation " << qfock::format_double(r.max_deviation)
                      << '\n';
            return kExitVerify;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
