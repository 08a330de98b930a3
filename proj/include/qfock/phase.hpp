#pragma once

// Phase eigenstates, phase distributions and moments, the cos/sin phase
// estimators, and the matrices that exhibit the failure of a Hermitian phase
// operator on the number basis.

#include "qfock/kernels.hpp"
#include "qfock/ops.hpp"

#include <vector>

namespace qfock {

/// M uniformly spaced angles lo + 2 pi j / M, j = 0..M-1.
class PhaseGrid {
public:
    static constexpr int kMinPoints = 16;
    PhaseGrid(double lo, int points);

    double lo() const { return lo_; }
    int points() const { return points_; }
    double spacing() const { return kTwoPi / points_; }
    double at(int j) const { return lo_ + kTwoPi * static_cast<double>(j) / points_; }

private:
    double lo_;
    int points_;
};

inline constexpr int kDefaultPhasePoints = 2048;

struct PhaseDistribution {
    PhaseGrid grid;
    std::vector<double> density;

    /// Periodic trapezoid rule over one period.
    double integral() const;
};

/// P(phi) = (2 pi)^-1 |sum_n c_n e^{-i n phi}|^2 / <s|s>.
PhaseDistribution phase_distribution(const FockState& s, const PhaseGrid& grid,
                                     Exec exec = Exec::parallel);

struct PhaseMoments {
    double mean;
    double variance;
};

/// Mean and variance of phi over (center - pi, center + pi] by composite
/// Simpson on a closed grid of `points` + 1 nodes (points even).
PhaseMoments phase_moments(const FockState& s, double center, int points = kDefaultPhasePoints);

/// Coherent-state phase variance from the (k, n) reindexed series
/// pi^2/3 + 4 e^{-|g|^2} sum_k sum_{n <= (k-1)/2} (-|g|)^k / ((k-2n)^2 sqrt((k-n)! n!)).
/// Stops once past the peak with |term| < 1e-12; throws ConvergenceError if
/// that does not happen by k_max.
double phase_variance_series(double abs_gamma, int k_max = 4000);

struct TrigEstimates {
    double cos;
    double sin;
    double cos2;
    double sin2;
    double mean_n;

    double var_cos() const { return cos2 - cos * cos; }
    double var_sin() const { return sin2 - sin * sin; }
};

/// Expectations of (a^dag + a)/(2 <n>^{1/2}), i(a^dag - a)/(2 <n>^{1/2}) and
/// their squares. Raw-convention states use unnormalized brackets throughout,
/// unit-convention states are normalized. Throws DomainError when <n> = 0.
/// Runs in O(n_max) without forming matrices.
TrigEstimates trig_estimators(const FockState& s);

/// <cos phi> / cos(phi) for the truncated phase state. Throws DomainError
/// when |cos phi| < 1e-12.
double phase_state_cos_ratio(double phi, int n_max, PhaseNorm convention);

enum class PhaseRange { zero_2pi, pm_pi };

/// zero_2pi: diagonal pi, (m, n) entry i/(n - m).
/// pm_pi: diagonal 0, (m, n) entry i(-1)^(n-m)/(n - m).
Operator phase_operator(int n_max, PhaseRange range);

/// Closed form of [n, phi] psi - i psi on the truncated basis:
/// zero_2pi: -i (sum_n c_n) on every component;
/// pm_pi:    -i (-1)^m sum_n (-1)^n c_n.
Vec phase_commutator_residual(const Vec& psi, PhaseRange range);

/// Closed form of (phi_op psi)_m for psi_n = (2 pi)^{-1/2} e^{i n phi}, zero_2pi range:
/// (2 pi)^{-1/2} e^{i m phi} [pi + i sum_{j=-m, j != 0}^{n_max - m} e^{i j phi} / j].
Vec phase_operator_defect(double phi, int n_max);

struct ShiftOps {
    Operator e_plus;   // sum_n |n><n+1|
    Operator e_minus;  // sum_n |n+1><n|
};

ShiftOps shift_ops(int n_max);

/// Applies e^{i phi0 n}: c_n -> c_n e^{i n phi0}.
FockState number_shift_phase(const FockState& s, double phi0);

/// (2 pi)^-1 sum_{n=0}^{N} e^{i n dphi}. Throws DomainError for N < 1.
cplx dirichlet_kernel(double dphi, int n_terms);

/// Real peak term sin((N+1) x) / (2 sin(x/2)) of the kernel's closed form,
/// with its limit N + 1 at x = 0.
double dirichlet_peak_term(double x, int n_terms);

struct EfieldCoefficient {
    double sum_sqrt;      // sum_{m=1}^{n_max} sqrt(m)
    double coefficient;   // sqrt(s) sum_sqrt / pi
    double growth_ratio;  // sum_sqrt / ((2/3) n_max^{3/2})
};

/// Amplitude of the sinusoidal field expectation on the truncated phase
/// state; grows without bound with n_max.
EfieldCoefficient efield_expect_phase_state(int n_max, const ModeScale& ms = {});

}  // namespace qfock
