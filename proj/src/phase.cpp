#include "qfock/phase.hpp"

#include <cmath>
#include <sstream>

namespace qfock {

namespace {

double state_norm2(const FockState& s, const char* who) {
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) {
        throw DomainError(std::string(who) + ": zero state");
    }
    return n2;
}

}  // namespace

PhaseGrid::PhaseGrid(double lo, int points) : lo_(lo), points_(points) {
    if (!std::isfinite(lo)) {
        throw DomainError("PhaseGrid: lo must be finite");
    }
    if (points < kMinPoints) {
        throw DomainError("PhaseGrid: need at least " + std::to_string(kMinPoints) + " points");
    }
}

double PhaseDistribution::integral() const {
    double sum = 0.0;
    for (double p : density) {
        sum += p;
    }
    return sum * grid.spacing();
}

PhaseDistribution phase_distribution(const FockState& s, const PhaseGrid& grid, Exec exec) {
    const double n2 = state_norm2(s, "phase_distribution");
    std::vector<double> density = kernels::phase_density(s.amps(), grid.lo(), grid.points(), exec);
    if (n2 != 1.0) {
        for (double& p : density) {
            p /= n2;
        }
    }
    return {grid, std::move(density)};
}

PhaseMoments phase_moments(const FockState& s, double center, int points) {
    if (points < PhaseGrid::kMinPoints || points % 2 != 0) {
        throw DomainError("phase_moments: points must be even and >= 16");
    }
    const double n2 = state_norm2(s, "phase_moments");
    const double lo = center - kPi;
    const std::vector<double> p = kernels::phase_density(s.amps(), lo, points, Exec::parallel);
    const double h = kTwoPi / points;
    double m1 = 0.0;
    double m2 = 0.0;
    for (int j = 0; j <= points; ++j) {
        // Node `points` is lo + 2 pi, where the density repeats node 0.
        const double pj = p[static_cast<std::size_t>(j == points ? 0 : j)] / n2;
        const double w = (j == 0 || j == points) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        const double u = -kPi + h * j;
        m1 += w * u * pj;
        m2 += w * u * u * pj;
    }
    m1 *= h / 3.0;
    m2 *= h / 3.0;
    return {center + m1, m2 - m1 * m1};
}

double phase_variance_series(double abs_gamma, int k_max) {
    if (!(abs_gamma >= 0.0) || !std::isfinite(abs_gamma)) {
        throw DomainError("phase_variance_series: |gamma| must be finite and non-negative");
    }
    const double base = kPi * kPi / 3.0;
    if (abs_gamma == 0.0) {
        return base;
    }
    const double g2 = abs_gamma * abs_gamma;
    const double log_g = std::log(abs_gamma);
    const double log_pref = std::log(4.0) - g2;
    double sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        double inner = 0.0;
        for (int n = 0; 2 * n <= k - 1; ++n) {
            const int j = k - 2 * n;
            const double log_mag = log_pref + k * log_g -
                                   0.5 * (std::lgamma(k - n + 1.0) + std::lgamma(n + 1.0)) -
                                   2.0 * std::log(static_cast<double>(j));
            inner += std::exp(log_mag);
        }
        const double term = (k % 2 == 0 ? 1.0 : -1.0) * inner;
        sum += term;
        if (k > 2.0 * g2 + 2.0 && std::abs(term) < 1e-12) {
            return base + sum;
        }
    }
    std::ostringstream msg;
    msg << "phase_variance_series: not converged by k_max = " << k_max;
    throw ConvergenceError(msg.str());
}

TrigEstimates trig_estimators(const FockState& s) {
    const Vec& psi = s.amps();
    const double n2 = s.norm_convention() == NormConvention::raw
                          ? 1.0
                          : state_norm2(s, "trig_estimators");
    const Vec down = lower(psi);
    const Vec up = raise(psi);
    const double mean_n = down.squaredNorm() / n2;
    if (!(mean_n > 0.0)) {
        throw DomainError("trig_estimators: <n> = 0, the estimator normalizer is undefined");
    }
    const Vec x = up + down;                         // (a^dag + a) psi
    const Vec y = cplx(0.0, 1.0) * (up - down);      // i (a^dag - a) psi
    const double denom = 2.0 * std::sqrt(mean_n);
    TrigEstimates t{};
    t.mean_n = mean_n;
    t.cos = psi.dot(x).real() / n2 / denom;
    t.sin = psi.dot(y).real() / n2 / denom;
    t.cos2 = x.squaredNorm() / n2 / (denom * denom);
    t.sin2 = y.squaredNorm() / n2 / (denom * denom);
    return t;
}

double phase_state_cos_ratio(double phi, int n_max, PhaseNorm convention) {
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) {
        throw DomainError("phase_state_cos_ratio: cos(phi) is zero");
    }
    return trig_estimators(phase_state(phi, n_max, convention)).cos / c;
}

Operator phase_operator(int n_max, PhaseRange range) {
    if (n_max < 0) {
        throw DomainError("phase_operator: n_max must be non-negative");
    }
    const int d = n_max + 1;
    Operator m = Operator::Zero(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            if (r == c) {
                m(r, c) = range == PhaseRange::zero_2pi ? kPi : 0.0;
                continue;
            }
            const int diff = c - r;
            double v = 1.0 / diff;
            if (range == PhaseRange::pm_pi && (diff % 2 != 0)) {
                v = -v;
            }
            m(r, c) = cplx(0.0, v);
        }
    }
    return m;
}

Vec phase_commutator_residual(const Vec& psi, PhaseRange range) {
    const Eigen::Index d = psi.size();
    Vec out(d);
    if (range == PhaseRange::zero_2pi) {
        const cplx total = psi.sum();
        out.setConstant(cplx(0.0, -1.0) * total);
        return out;
    }
    cplx alternating(0.0, 0.0);
    for (Eigen::Index n = 0; n < d; ++n) {
        alternating += (n % 2 == 0 ? 1.0 : -1.0) * psi(n);
    }
    for (Eigen::Index m = 0; m < d; ++m) {
        out(m) = cplx(0.0, -1.0) * (m % 2 == 0 ? 1.0 : -1.0) * alternating;
    }
    return out;
}

Vec phase_operator_defect(double phi, int n_max) {
    if (n_max < 0) {
        throw DomainError("phase_operator_defect: n_max must be non-negative");
    }
    const double pref = 1.0 / std::sqrt(kTwoPi);
    Vec out(n_max + 1);
    for (int m = 0; m <= n_max; ++m) {
        cplx partial(0.0, 0.0);
        for (int j = -m; j <= n_max - m; ++j) {
            if (j != 0) {
                partial += std::polar(1.0, j * phi) / static_cast<double>(j);
            }
        }
        out(m) = pref * std::polar(1.0, m * phi) * (kPi + cplx(0.0, 1.0) * partial);
    }
    return out;
}

ShiftOps shift_ops(int n_max) {
    if (n_max < 0) {
        throw DomainError("shift_ops: n_max must be non-negative");
    }
    Operator plus = Operator::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n < n_max; ++n) {
        plus(n, n + 1) = 1.0;
    }
    Operator minus = plus.transpose();
    return {std::move(plus), std::move(minus)};
}

FockState number_shift_phase(const FockState& s, double phi0) {
    Vec v = s.amps();
    for (int n = 0; n < s.dim(); ++n) {
        v(n) *= std::polar(1.0, n * phi0);
    }
    return FockState(std::move(v), s.norm_convention(), s.tail_mass());
}

cplx dirichlet_kernel(double dphi, int n_terms) {
    if (n_terms < 1) {
        throw DomainError("dirichlet_kernel: N must be >= 1");
    }
    cplx acc(0.0, 0.0);
    for (int n = 0; n <= n_terms; ++n) {
        acc += std::polar(1.0, n * dphi);
    }
    return acc / kTwoPi;
}

double dirichlet_peak_term(double x, int n_terms) {
    if (n_terms < 1) {
        throw DomainError("dirichlet_peak_term: N must be >= 1");
    }
    const double half = std::sin(0.5 * x);
    if (std::abs(half) < 1e-300) {
        return n_terms + 1.0;
    }
    return std::sin((n_terms + 1.0) * x) / (2.0 * half);
}

EfieldCoefficient efield_expect_phase_state(int n_max, const ModeScale& ms) {
    if (n_max < 1) {
        throw DomainError("efield_expect_phase_state: n_max must be >= 1");
    }
    double sum = 0.0;
    for (int m = 1; m <= n_max; ++m) {
        sum += std::sqrt(static_cast<double>(m));
    }
    const double growth = sum / ((2.0 / 3.0) * std::pow(static_cast<double>(n_max), 1.5));
    return {sum, std::sqrt(ms.scale()) * sum / kPi, growth};
}

}  // namespace qfock
