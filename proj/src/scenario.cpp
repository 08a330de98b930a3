#include "qfock/scenario.hpp"

#include "qfock/detect.hpp"
#include "qfock/network.hpp"
#include "qfock/ops.hpp"
#include "qfock/phase.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <regex>
#include <sstream>

namespace qfock {

namespace {

using RowList = std::vector<Row>;

constexpr int kDefaultSplitterN = 12;
constexpr int kDefaultDistPoints = 64;
constexpr int kDefaultSweepPoints = 9;

ModeScale mode_scale(const ScenarioConfig& cfg) {
    if (cfg.omega && cfg.volume) {
        return ModeScale::physical(*cfg.omega, *cfg.volume);
    }
    return ModeScale();
}

// Evaluates fn(i) for i in [0, count) in parallel and concatenates the rows
// in index order. The first exception (by index) is rethrown.
RowList ordered_rows(int count, const std::function<RowList(int)>& fn) {
    std::vector<RowList> parts(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        try {
            parts[static_cast<std::size_t>(i)] = fn(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    RowList out;
    for (auto& p : parts) {
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    }
    return out;
}

std::vector<double> sweep_values(const ScenarioConfig& cfg, double default_start,
                                 double default_stop, int default_points) {
    Sweep s = cfg.sweep.value_or(Sweep{default_start, default_stop, default_points});
    std::vector<double> v(static_cast<std::size_t>(s.points));
    for (int i = 0; i < s.points; ++i) {
        v[static_cast<std::size_t>(i)] = s.at(i);
    }
    return v;
}

FockState signal_state(const ScenarioConfig& cfg, int min_n_max) {
    if (cfg.state == "coherent") {
        const int n = std::max(cfg.n_max.value_or(auto_truncation(cfg.gamma)), min_n_max);
        return coherent_state(cfg.gamma, n);
    }
    if (cfg.state == "number") {
        return number_state(cfg.n, std::max(cfg.n_max.value_or(cfg.n), std::max(cfg.n, min_n_max)));
    }
    if (cfg.state == "vacuum") {
        return number_state(0, std::max(cfg.n_max.value_or(0), min_n_max));
    }
    throw ConfigError("unknown state '" + cfg.state + "' (expected coherent, number or vacuum)");
}

double max_abs(const Mat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const Vec& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- scenarios

RunResult coherent_stats(const ScenarioConfig& cfg) {
    RunResult r;
    const double theta = std::arg(cfg.gamma);
    std::vector<double> xs;
    if (cfg.sweep) {
        xs = sweep_values(cfg, 0, 0, 2);
    } else {
        xs = {std::norm(cfg.gamma)};
    }
    for (double x : xs) {
        if (x < 0.0) {
            throw ConfigError("coherent-stats: |gamma|^2 sweep values must be non-negative");
        }
    }
    r.rows = ordered_rows(static_cast<int>(xs.size()), [&](int i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const cplx g = std::polar(std::sqrt(x), theta);
        const int n = cfg.n_max.value_or(std::max(auto_truncation(g), auto_truncation(cfg.gamma2)));
        const FockState s = coherent_state(g, n);
        const FockState s2 = coherent_state(cfg.gamma2, n);
        const Operator num = number(n);
        RowList rows;
        rows.push_back(make_row("mean_n", "gammasq", x, x, expect(num, s).real(), 1e-9));
        rows.push_back(make_row("var_n", "gammasq", x, x, variance(num, s), 1e-9));
        rows.push_back(make_row("vacuum_probability", "gammasq", x, std::exp(-x), std::norm(s.amp(0)),
                                1e-12));
        rows.push_back(make_row("overlap", "gammasq", x, std::exp(-std::norm(g - cfg.gamma2)),
                                std::norm(inner(s, s2)), 1e-9));
        return rows;
    });
    return r;
}

RunResult phase_dist(const ScenarioConfig& cfg) {
    RunResult r;
    const FockState s = signal_state(cfg, 0);
    const int points = cfg.points.value_or(kDefaultDistPoints);
    if (points < PhaseGrid::kMinPoints) {
        throw ConfigError("phase-dist: --points must be at least 16");
    }
    const double lo = cfg.state == "coherent" ? std::arg(cfg.gamma) - kPi : 0.0;
    const PhaseGrid grid(lo, points);
    const PhaseDistribution dist = phase_distribution(s, grid);
    const Vec& c = s.amps();
    for (int j = 0; j < points; ++j) {
        const double phi = grid.at(j);
        double ref;
        if (cfg.state == "coherent") {
            // Double sum over (m, n), independent of the kernel's single sum.
            cplx acc(0.0, 0.0);
            for (int m = 0; m < s.dim(); ++m) {
                for (int n = 0; n < s.dim(); ++n) {
                    acc += std::conj(c(m)) * c(n) * std::polar(1.0, (m - n) * phi);
                }
            }
            ref = acc.real() / kTwoPi;
        } else {
            ref = 1.0 / kTwoPi;
        }
        r.rows.push_back(make_row("density", "phi", phi, ref, dist.density[static_cast<std::size_t>(j)],
                                  1e-12));
    }
    const PhaseDistribution fine = phase_distribution(s, PhaseGrid(lo, kDefaultPhasePoints));
    r.rows.push_back(make_row("integral", "points", kDefaultPhasePoints, 1.0, fine.integral(), 1e-8));
    return r;
}

RunResult phase_variance(const ScenarioConfig& cfg) {
    RunResult r;
    std::vector<double> xs;
    if (cfg.gammasq) {
        xs = {*cfg.gammasq};
    } else {
        xs = sweep_values(cfg, 0.0, 5.0, 11);
    }
    for (double x : xs) {
        if (x < 0.0) {
            throw ConfigError("phase-variance: |gamma|^2 must be non-negative");
        }
    }
    r.rows = ordered_rows(static_cast<int>(xs.size()), [&](int i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double g = std::sqrt(x);
        const FockState s = coherent_state(cplx(g, 0.0));
        const PhaseMoments pm = phase_moments(s, 0.0);
        RowList rows;
        rows.push_back(make_row("variance", "gammasq", x, phase_variance_series(g), pm.variance, 1e-6));
        rows.push_back(make_row("mean", "gammasq", x, 0.0, pm.mean, 1e-8));
        return rows;
    });
    return r;
}

RunResult trig(const ScenarioConfig& cfg) {
    RunResult r;
    if (cfg.n < 1) {
        throw ConfigError("trig-estimators: --n must be >= 1 (the estimators are undefined on vacuum)");
    }
    if (std::abs(cfg.gamma) == 0.0) {
        throw ConfigError("trig-estimators: --gamma must be non-zero");
    }
    {
        const int n = cfg.n;
        const TrigEstimates t = trig_estimators(number_state(n, n + 2));
        const double c2 = (n + 0.5) / (2.0 * n);
        r.rows.push_back(make_row("number_cos", "n", n, 0.0, t.cos, 1e-10));
        r.rows.push_back(make_row("number_sin", "n", n, 0.0, t.sin, 1e-10));
        r.rows.push_back(make_row("number_cos2", "n", n, c2, t.cos2, 1e-10));
        r.rows.push_back(make_row("number_sin2", "n", n, c2, t.sin2, 1e-10));
    }
    {
        const cplx g = cfg.gamma;
        const double th = std::arg(g);
        const double extra = 1.0 / (4.0 * std::norm(g));
        const TrigEstimates t = trig_estimators(coherent_state(g));
        const double ab = std::abs(g);
        r.rows.push_back(make_row("coherent_cos", "abs_gamma", ab, std::cos(th), t.cos, 1e-10));
        r.rows.push_back(make_row("coherent_sin", "abs_gamma", ab, std::sin(th), t.sin, 1e-10));
        r.rows.push_back(make_row("coherent_cos2", "abs_gamma", ab,
                                  std::cos(th) * std::cos(th) + extra, t.cos2, 1e-10));
        r.rows.push_back(make_row("coherent_sin2", "abs_gamma", ab,
                                  std::sin(th) * std::sin(th) + extra, t.sin2, 1e-10));
        r.rows.push_back(make_row("coherent_var_cos", "abs_gamma", ab, extra, t.var_cos(), 1e-8));
        r.rows.push_back(make_row("coherent_var_sin", "abs_gamma", ab, extra, t.var_sin(), 1e-8));
    }
    const int big = cfg.n_max.value_or(10000);
    if (big < 1) {
        throw ConfigError("trig-estimators: --nmax must be >= 1");
    }
    const std::vector<double> phis = {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0};
    const double ratio0 = phase_state_cos_ratio(0.0, big, PhaseNorm::raw);
    for (double phi : phis) {
        const TrigEstimates t = trig_estimators(phase_state(phi, big, PhaseNorm::raw));
        const double c2 = std::cos(phi) * std::cos(phi);
        r.rows.push_back(make_row("phase_state_cos2", "phi", phi, c2, t.cos2, 0.01 * c2));
        r.rows.push_back(make_row("phase_state_cos_proportional", "phi", phi, ratio0 * std::cos(phi),
                                  t.cos, 1e-10));
    }
    r.info["cos_ratio_raw"] = ratio0;
    r.info["cos_ratio_unit"] = phase_state_cos_ratio(0.0, big, PhaseNorm::unit);
    r.info["phase_state_n_max"] = big;
    return r;
}

RunResult pathology(const ScenarioConfig& cfg) {
    RunResult r;
    const int n = cfg.n_max.value_or(40);
    if (n < 4) {
        throw ConfigError("pathology: --nmax must be >= 4");
    }
    const ShiftOps e = shift_ops(n);
    const Operator id = identity(n);
    const Operator a = annihilation(n);
    const Operator num = number(n);
    Operator sqrt_n = Operator::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        sqrt_n(k, k) = std::sqrt(static_cast<double>(k));
    }
    const Operator pp = e.e_plus * e.e_minus;
    const Operator mp = e.e_minus * e.e_plus;
    Operator proj0 = id;
    proj0(0, 0) = 0.0;
    r.rows.push_back(make_row("eplus_eminus_identity_block", "n_max", n, 0.0,
                              max_abs(Mat(Mat(pp - id).topLeftCorner(n, n))), 1e-15));
    r.rows.push_back(make_row("eplus_eminus_corner", "n_max", n, 0.0, std::abs(pp(n, n)), 1e-15));
    r.rows.push_back(make_row("eminus_eplus_projector", "n_max", n, 0.0, max_abs(Mat(mp - proj0)),
                              1e-15));
    const Operator a_polar = e.e_plus * sqrt_n;
    r.rows.push_back(make_row("a_polar_decomposition", "n_max", n, 0.0, max_abs(Mat(a - a_polar)),
                              1e-15));
    r.rows.push_back(make_row("adag_a_number", "n_max", n, 0.0,
                              max_abs_lower_half(a_polar.adjoint() * a_polar - num), 1e-13));
    r.rows.push_back(make_row("a_adag_number_plus_one", "n_max", n, 0.0,
                              max_abs_lower_half(a_polar * a_polar.adjoint() - num - id), 1e-13));
    for (PhaseRange range : {PhaseRange::zero_2pi, PhaseRange::pm_pi}) {
        const std::string tag = range == PhaseRange::zero_2pi ? "zero_2pi" : "pm_pi";
        const Operator ph = phase_operator(n, range);
        r.rows.push_back(make_row("phase_op_hermiticity_" + tag, "n_max", n, 0.0,
                                  max_abs(Mat(ph - ph.adjoint())), 1e-15));
        const Operator comm = commutator(num, ph);
        // Deterministic probe states: low number states and a coherent state.
        std::vector<Vec> probes;
        for (int k = 0; k < 3; ++k) {
            probes.push_back(number_state(k, n).amps());
        }
        probes.push_back(coherent_state(cplx(1.0, 0.5), n).amps());
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const Vec& psi = probes[p];
            const Vec lhs = comm * psi - cplx(0.0, 1.0) * psi;
            r.rows.push_back(make_row("commutator_residual_" + tag, "probe", static_cast<double>(p), 0.0,
                                      max_abs(Vec(lhs - phase_commutator_residual(psi, range))),
                                      1e-10));
        }
    }
    {
        const double phi = cfg.phi;
        Vec raw(n + 1);
        for (int k = 0; k <= n; ++k) {
            raw(k) = std::polar(1.0 / std::sqrt(kTwoPi), k * phi);
        }
        const Vec applied = phase_operator(n, PhaseRange::zero_2pi) * raw;
        r.rows.push_back(make_row("phase_op_defect_closed_form", "phi", phi, 0.0,
                                  max_abs(Vec(applied - phase_operator_defect(phi, n))), 1e-10));
        r.info["phase_op_eigen_defect"] = max_abs(Vec(applied - phi * raw));

        const FockState ps = phase_state(phi, n, PhaseNorm::unit);
        const Vec up = e.e_plus * ps.amps() - std::polar(1.0, phi) * ps.amps();
        r.rows.push_back(make_row("eplus_phase_state_defect", "phi", phi, 1.0 / std::sqrt(n + 1.0),
                                  up.norm(), 1e-12));
        Vec expected_minus = ps.amps();
        expected_minus(0) = 0.0;
        expected_minus *= std::polar(1.0, -phi);
        r.rows.push_back(make_row("eminus_phase_state_vacuum_defect", "phi", phi, 0.0,
                                  max_abs(Vec(e.e_minus * ps.amps() - expected_minus)), 1e-15));
    }
    return r;
}

RunResult homodyne(const ScenarioConfig& cfg) {
    RunResult r;
    const ModeScale ms = mode_scale(cfg);
    const double s2 = ms.scale() * ms.scale();
    const FockState sig = signal_state(cfg, 0);
    std::vector<double> phis;
    if (cfg.sweep) {
        phis = sweep_values(cfg, 0, 0, 2);
    } else {
        phis = {cfg.phi2};
    }
    r.rows = ordered_rows(static_cast<int>(phis.size()), [&](int i) {
        const double p2 = phis[static_cast<std::size_t>(i)];
        const HomodyneReport h = homodyne_noise(sig, cfg.gamma2, p2, ms);
        const double tol_mean = 1e-8 * ms.scale() * std::max(1.0, std::abs(h.closed_mean) / ms.scale());
        const double tol_sec = 1e-8 * s2 * std::max(1.0, std::abs(h.closed_second_moment) / s2);
        RowList rows;
        rows.push_back(make_row("mean", "phi2", p2, h.closed_mean, h.mean, tol_mean));
        rows.push_back(make_row("second_moment", "phi2", p2, h.closed_second_moment, h.second_moment,
                                tol_sec));
        if (cfg.state == "vacuum") {
            rows.push_back(make_row("vacuum_noise_floor", "phi2", p2, s2 * std::norm(cfg.gamma2),
                                    h.second_moment, tol_sec));
        }
        return rows;
    });
    return r;
}

RunResult quadrature(const ScenarioConfig& cfg) {
    RunResult r;
    const ModeScale ms = mode_scale(cfg);
    const double s = ms.scale();
    const double rs = std::sqrt(s);
    {
        const cplx g = cfg.gamma;
        const FockState cs = coherent_state(g, std::max(cfg.n_max.value_or(0), 2 * auto_truncation(g)));
        const QuadratureStats q = quadrature_stats(cs, ms);
        const double ab = std::abs(g);
        r.rows.push_back(make_row("coherent_mean_q", "abs_gamma", ab, 2.0 * rs * g.real(), q.mean_q, 1e-8 * rs));
        r.rows.push_back(make_row("coherent_mean_p", "abs_gamma", ab, 2.0 * rs * g.imag(), q.mean_p, 1e-8 * rs));
        r.rows.push_back(make_row("coherent_delta_q", "abs_gamma", ab, rs, q.delta_q, 1e-8 * rs));
        r.rows.push_back(make_row("coherent_delta_p", "abs_gamma", ab, rs, q.delta_p, 1e-8 * rs));
        r.rows.push_back(make_row("coherent_product", "abs_gamma", ab, s, q.product, 1e-8 * s));
    }
    if (cfg.n < 0) {
        throw ConfigError("quadrature: --n must be non-negative");
    }
    for (int k = 0; k <= cfg.n; ++k) {
        const FockState ns = number_state(k, std::max(cfg.n_max.value_or(0), 4 * k + 8));
        const QuadratureStats q = quadrature_stats(ns, ms);
        const double v = (2.0 * k + 1.0) * s;
        r.rows.push_back(make_row("number_delta_q_sq", "n", k, v, q.delta_q * q.delta_q, 1e-10 * v));
        r.rows.push_back(make_row("number_delta_p_sq", "n", k, v, q.delta_p * q.delta_p, 1e-10 * v));
        r.rows.push_back(make_row("number_product", "n", k, v, q.product, 1e-10 * v));
    }
    return r;
}

RunResult mz_sweep(const ScenarioConfig& cfg) {
    RunResult r;
    if (cfg.n < 0) {
        throw ConfigError("mz-sweep: --n must be non-negative");
    }
    const ModeScale ms = mode_scale(cfg);
    const double s = ms.scale();
    const std::vector<double> phis = sweep_values(cfg, 0.0, kTwoPi, cfg.points.value_or(kDefaultSweepPoints));
    const int n = cfg.n;
    r.rows = ordered_rows(static_cast<int>(phis.size()), [&](int i) {
        const double phi = phis[static_cast<std::size_t>(i)];
        const FockState in = number_state(n, n);
        const G1Report g = g1_mz(in, phi, ms);
        const double sh = std::sin(0.5 * phi);
        const double ch = std::cos(0.5 * phi);
        const double tol = 1e-10 * s * std::max(1.0, static_cast<double>(n));
        const MZConfig mz{SplitterCoeffs::fifty_fifty(), SplitterCoeffs::fifty_fifty(), phi};
        const double path_dev = max_abs(Mat(mz_split_number(n, mz, n).amps() -
                                            mz_split_number_two_stage(n, mz, n).amps()));
        RowList rows;
        rows.push_back(make_row("port3", "phi", phi, s * n * sh * sh, g.port3, tol));
        rows.push_back(make_row("port4", "phi", phi, s * n * ch * ch, g.port4, tol));
        rows.push_back(make_row("port_sum", "phi", phi, s * n, g.port3 + g.port4, tol));
        rows.push_back(make_row("difference", "phi", phi, s * n * std::cos(phi), g.difference, tol));
        rows.push_back(make_row("two_stage_path", "phi", phi, 0.0, path_dev, 1e-10));
        return rows;
    });
    return r;
}

RunResult g2(const ScenarioConfig& cfg) {
    RunResult r;
    const ModeScale ms = mode_scale(cfg);
    const double s2 = ms.scale() * ms.scale();
    const SplitterCoeffs sc = SplitterCoeffs::fifty_fifty();
    const double rt = std::norm(sc.rho()) * std::norm(sc.tau());
    if (cfg.state == "coherent") {
        const FockState s = coherent_state(cfg.gamma, cfg.n_max.value_or(auto_truncation(cfg.gamma)));
        const G2Report g = g2_splitter(s, sc, ms);
        const double ab = std::abs(cfg.gamma);
        const double g4 = std::pow(std::norm(cfg.gamma), 2);
        if (!g.g2) {
            throw ConfigError("g2: normalized g2 undefined for |gamma| = 0");
        }
        r.rows.push_back(make_row("g2", "abs_gamma", ab, 1.0, *g.g2, 1e-10));
        r.rows.push_back(make_row("factorial_moment", "abs_gamma", ab, g4, g.factorial_moment,
                                  1e-10 * std::max(1.0, g4)));
        r.rows.push_back(make_row("correlation", "abs_gamma", ab, s2 * rt * g4, g.correlation,
                                  1e-10 * s2 * std::max(1.0, g4)));
    } else if (cfg.state == "number") {
        if (cfg.n < 1) {
            throw ConfigError("g2: --n must be >= 1 for a number state");
        }
        const int n = cfg.n;
        const G2Report g = g2_splitter(number_state(n, n), sc, ms);
        const double fm = static_cast<double>(n) * (n - 1);
        r.rows.push_back(make_row("g2", "n", n, (n - 1.0) / n, *g.g2, 1e-10));
        r.rows.push_back(make_row("correlation", "n", n, s2 * rt * fm, g.correlation,
                                  1e-10 * s2 * std::max(1.0, fm)));
    } else {
        throw ConfigError("g2: --state must be coherent or number");
    }
    return r;
}

RunResult splitter(const ScenarioConfig& cfg) {
    RunResult r;
    const int total = cfg.n > 0 ? cfg.n : kDefaultSplitterN;
    const SplitterCoeffs sc = SplitterCoeffs::fifty_fifty();
    for (int t = 0; t <= total; ++t) {
        for (int n1 = 0; n1 <= t; ++n1) {
            const int n2 = t - n1;
            const TwoModeState out = split_joint_number(n1, n2, sc, t);
            double off = 0.0;
            for (int m = 0; m <= t; ++m) {
                for (int k = 0; k <= t; ++k) {
                    if (m + k != t) {
                        off += std::norm(out.amp(m, k));
                    }
                }
            }
            const double p = n1 * 100 + n2;  // encodes (n1, n2)
            r.rows.push_back(make_row("joint_norm", "n1_x100_plus_n2", p, 1.0, out.norm_squared(), 1e-10));
            r.rows.push_back(make_row("joint_photon_conservation", "n1_x100_plus_n2", p, 0.0, off, 1e-15));
        }
    }
    r.rows.push_back(make_row("hong_ou_mandel_amplitude", "n", 1, 0.0,
                              std::abs(split_joint_number(1, 1, sc, 2).amp(1, 1)), 1e-14));
    {
        const cplx g = cfg.gamma;
        const int n = cfg.n_max.value_or(auto_truncation(g));
        const TwoModeState out = split_state(coherent_state(g, n), sc);
        const TwoModeState prod = tensor(coherent_state(sc.rho() * g, n, TruncationPolicy::allow_tail),
                                         coherent_state(sc.tau() * g, n, TruncationPolicy::allow_tail));
        r.rows.push_back(make_row("coherent_purity", "abs_gamma", std::abs(g), 1.0,
                                  reduced_purity(out, Subsystem::left), 1e-9));
        r.rows.push_back(make_row("coherent_factorization", "abs_gamma", std::abs(g), 0.0,
                                  max_abs(Mat(out.amps() - prod.amps())), 1e-9));
    }
    for (int n = 0; n <= 30; ++n) {
        const EntanglementReport e = entanglement_check(n, sc);
        r.rows.push_back(make_row("mean_port3", "n", n, e.closed_mean3, e.mean3, 1e-10));
        r.rows.push_back(make_row("mean_port4", "n", n, e.closed_mean4, e.mean4, 1e-10));
        r.rows.push_back(make_row("coincidence_moment", "n", n, e.closed_product, e.mean_product, 1e-10));
        r.rows.push_back(make_row("coincidence_brute_force", "n", n, e.closed_product, e.brute_product, 1e-10));
    }
    return r;
}

RunResult identities(const ScenarioConfig& cfg) {
    RunResult r;
    const cplx g = cfg.gamma;
    const int n = cfg.n_max.value_or(std::max(60, static_cast<int>(std::ceil(std::norm(g) + 10 * std::abs(g) + 20))));
    if (!translation_fits(g, n)) {
        throw ConfigError("identities: --nmax too small for --gamma (need |g|^2 + 10|g| + 20 <= nmax)");
    }
    const double ab = std::abs(g);
    const CbhReport cbh = cbh_check(g, n, 1e-7);
    r.rows.push_back(make_row("cbh_lower_half", "abs_gamma", ab, 0.0, cbh.max_deviation, 1e-7));
    const Operator t = translation(g, n);
    const Vec vac = number_state(0, n).amps();
    r.rows.push_back(make_row("translation_vacuum", "abs_gamma", ab, 0.0,
                              max_abs(Vec(t * vac - coherent_state(g, n).amps())), 1e-9));
    const Operator a = annihilation(n);
    // Checked on the lower-half columns whose translated state keeps amplitude
    // below 1e-10 on the top two levels, where a and a^dag see the basis edge.
    int block = 0;
    while (block <= lower_half_limit(n) &&
           t.col(block).tail(2).cwiseAbs().maxCoeff() < 1e-10) {
        ++block;
    }
    const Mat shift = t.adjoint() * a * t - a - g * identity(n);
    r.rows.push_back(make_row("translation_shift", "abs_gamma", ab, 0.0,
                              block > 0 ? max_abs(Mat(shift.topLeftCorner(block, block))) : 0.0, 1e-8));
    r.info["translation_shift_block"] = block;
    r.rows.push_back(make_row("translation_unitarity", "abs_gamma", ab, 0.0,
                              max_abs_lower_half(t.adjoint() * t - identity(n)), 1e-8));
    for (int k = 0; k <= 30; ++k) {
        for (int power : {1, 2}) {
            const BinomialMoment b1 = binomial_moment(k, 1.0, 1.0, power);
            const double ref = power == 1 ? std::ldexp(static_cast<double>(k), k - 1)
                                          : std::ldexp(static_cast<double>(k) * (k + 1), k - 2);
            const std::string tag = power == 1 ? "binomial_first" : "binomial_second";
            r.rows.push_back(make_row(tag + "_unit_weights", "n", k, ref, b1.brute,
                                      1e-12 * std::max(1.0, ref)));
            const BinomialMoment b = binomial_moment(k, 0.3, 0.7, power);
            r.rows.push_back(make_row(tag, "n", k, b.closed, b.brute, 1e-10 * std::max(1.0, b.closed)));
        }
    }
    const std::vector<double> phis = sweep_values(cfg, 0.0, kTwoPi, cfg.points.value_or(kDefaultSweepPoints));
    const SplitterCoeffs s2 = SplitterCoeffs::symmetric(cplx(std::cos(0.3), 0.0), cplx(0.0, std::sin(0.3)));
    for (double phi : phis) {
        const MZCompoundTable tab = mz_compound_table({SplitterCoeffs::fifty_fifty(), s2, phi});
        r.rows.push_back(make_row("compound_reciprocity", "phi", phi, 0.0, tab.reciprocity_residual, 1e-12));
        r.rows.push_back(make_row("compound_magnitudes", "phi", phi, 0.0, tab.magnitude_residual, 1e-12));
        r.rows.push_back(make_row("compound_unitarity", "phi", phi, 0.0, tab.unitarity_residual, 1e-12));
        r.rows.push_back(make_row("compound_phase_relation", "phi", phi, 0.0, tab.phase_residual, 1e-12));
    }
    return r;
}

nlohmann::ordered_json config_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["scenario"] = cfg.scenario;
    if (cfg.n_max) {
        j["nmax"] = *cfg.n_max;
    }
    j["gamma"] = format_complex(cfg.gamma);
    j["gamma2"] = format_complex(cfg.gamma2);
    j["phi"] = cfg.phi;
    j["phi2"] = cfg.phi2;
    if (cfg.sweep) {
        j["sweep"] = format_double(cfg.sweep->start) + ":" + format_double(cfg.sweep->stop) + ":" +
                     std::to_string(cfg.sweep->points);
    }
    j["n"] = cfg.n;
    if (cfg.points) {
        j["points"] = *cfg.points;
    }
    if (cfg.gammasq) {
        j["gammasq"] = *cfg.gammasq;
    }
    j["state"] = cfg.state;
    if (cfg.omega) {
        j["omega"] = *cfg.omega;
    }
    if (cfg.volume) {
        j["volume"] = *cfg.volume;
    }
    if (cfg.tol) {
        j["tol"] = *cfg.tol;
    }
    j["format"] = cfg.format;
    return j;
}

const std::string kNumber = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "coherent-stats", "phase-dist", "phase-variance", "trig-estimators",
        "pathology",      "homodyne",   "quadrature",     "mz-sweep",
        "g2",             "splitter",   "identities"};
    return names;
}

cplx parse_complex(const std::string& text) {
    static const std::regex polar("^\\s*([+-]?" + kNumber + ")\\s*@\\s*([+-]?" + kNumber + ")\\s*$");
    static const std::regex rect("^\\s*([+-]?" + kNumber + ")?\\s*(?:([+-])\\s*(" + kNumber +
                                 ")?\\s*i)?\\s*$");
    static const std::regex imag("^\\s*([+-]?)\\s*(" + kNumber + ")?\\s*i\\s*$");
    std::smatch m;
    cplx z;
    if (std::regex_match(text, m, polar)) {
        const double rr = std::stod(m[1].str());
        if (rr < 0.0) {
            throw ConfigError("complex '" + text + "': polar magnitude must be non-negative");
        }
        z = std::polar(rr, std::stod(m[2].str()));
    } else if (std::regex_match(text, m, imag)) {
        const double v = m[2].matched ? std::stod(m[2].str()) : 1.0;
        z = cplx(0.0, m[1].str() == "-" ? -v : v);
    } else if (std::regex_match(text, m, rect) && (m[1].matched || m[2].matched)) {
        const double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
        double im = 0.0;
        if (m[2].matched) {
            im = m[3].matched ? std::stod(m[3].str()) : 1.0;
            if (m[2].str() == "-") {
                im = -im;
            }
        }
        z = cplx(re, im);
    } else {
        throw ConfigError("cannot parse complex value '" + text + "' (use re+imi or r@theta)");
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ConfigError("complex value '" + text + "' is not finite");
    }
    return z;
}

std::string format_complex(cplx z) {
    std::string im = format_double(std::abs(z.imag()));
    return format_double(z.real()) + (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

Sweep parse_sweep(const std::string& text) {
    static const std::regex re("^\\s*([+-]?" + kNumber + ")\\s*:\\s*([+-]?" + kNumber +
                               ")\\s*:\\s*(\\d+)\\s*$");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw ConfigError("cannot parse sweep '" + text + "' (use start:stop:points)");
    }
    Sweep s{std::stod(m[1].str()), std::stod(m[2].str()), std::stoi(m[3].str())};
    if (s.points < 2) {
        throw ConfigError("sweep needs at least 2 points");
    }
    if (!std::isfinite(s.start) || !std::isfinite(s.stop)) {
        throw ConfigError("sweep bounds must be finite");
    }
    return s;
}

void validate(const ScenarioConfig& cfg) {
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
        throw ConfigError("unknown scenario '" + cfg.scenario + "'");
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("--format must be csv or json");
    }
    if (cfg.n_max && *cfg.n_max < 0) {
        throw ConfigError("--nmax must be non-negative");
    }
    if (cfg.n_max && *cfg.n_max > 20000) {
        throw ConfigError("--nmax must be at most 20000");
    }
    if (cfg.n < 0 || cfg.n > 170) {
        throw ConfigError("--n must be in [0, 170]");
    }
    if (cfg.points && (*cfg.points < 2 || *cfg.points > 1000000)) {
        throw ConfigError("--points must be in [2, 1000000]");
    }
    if (cfg.sweep && (cfg.sweep->points < 2 || cfg.sweep->points > 100000)) {
        throw ConfigError("sweep points must be in [2, 100000]");
    }
    if (!std::isfinite(cfg.phi) || !std::isfinite(cfg.phi2)) {
        throw ConfigError("--phi and --phi2 must be finite");
    }
    if (cfg.gammasq && !(*cfg.gammasq >= 0.0 && std::isfinite(*cfg.gammasq))) {
        throw ConfigError("--gammasq must be finite and non-negative");
    }
    if (cfg.omega.has_value() != cfg.volume.has_value()) {
        throw ConfigError("--omega and --volume must be given together");
    }
    if (cfg.omega && !(*cfg.omega > 0.0 && *cfg.volume > 0.0)) {
        throw ConfigError("--omega and --volume must be positive");
    }
    if (cfg.tol && !(*cfg.tol >= 0.0)) {
        throw ConfigError("--tol must be non-negative");
    }
    if (cfg.state != "coherent" && cfg.state != "number" && cfg.state != "vacuum") {
        throw ConfigError("--state must be coherent, number or vacuum");
    }
}

RunResult run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    RunResult r;
    const std::string& name = cfg.scenario;
    if (name == "coherent-stats") {
        r = coherent_stats(cfg);
    } else if (name == "phase-dist") {
        r = phase_dist(cfg);
    } else if (name == "phase-variance") {
        r = phase_variance(cfg);
    } else if (name == "trig-estimators") {
        r = trig(cfg);
    } else if (name == "pathology") {
        r = pathology(cfg);
    } else if (name == "homodyne") {
        r = homodyne(cfg);
    } else if (name == "quadrature") {
        r = quadrature(cfg);
    } else if (name == "mz-sweep") {
        r = mz_sweep(cfg);
    } else if (name == "g2") {
        r = g2(cfg);
    } else if (name == "splitter") {
        r = splitter(cfg);
    } else {
        r = identities(cfg);
    }
    r.scenario = name;
    r.config = config_json(cfg);
    finalize(r, cfg.tol ? &*cfg.tol : nullptr);
    return r;
}

}  // namespace qfock
