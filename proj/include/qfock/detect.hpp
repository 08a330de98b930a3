#pragma once

// Classical and quantum balanced-homodyne signals, quadrature noise, photon
// counting, and first/second-order coherence through splitters.
//
// Quantum outputs are in units of the mode scale s (ModeScale::scale()).
// Two-mode homodyne states are tensor(signal, local oscillator) with the
// signal on mode 1.

#include "qfock/network.hpp"
#include "qfock/ops.hpp"

#include <optional>
#include <string>

namespace qfock {

struct ClassicalField {
    double amp;    // |E| >= 0
    double phase;  // phi
    double omega;  // angular frequency
};

struct ClassicalSignal {
    double s1;
    double s2;
    double s;           // s1 - s2
    double s_expanded;  // s from the expanded form with the 2 omega terms
    double s_filtered;  // |E1||E2| sin((w2 - w1) t - phi2 + phi1)
};

/// Balanced detector outputs for signal field f1 and local oscillator f2.
ClassicalSignal classical_signal(const ClassicalField& f1, const ClassicalField& f2, double t);

/// Classical field whose quadratures match the coherent-state expectations:
/// |E| = 2 sqrt(s) |gamma|, phase = arg(gamma).
ClassicalField field_from_coherent(cplx gamma, double omega, const ModeScale& ms = {});

/// Ratio of the filtered classical signal to the quantum mean for matched
/// fields. The detector proportionality constant is not fixed by the model,
/// so this is a configuration value.
inline constexpr double kDefaultHomodyneCalibration = 2.0;

struct HomodyneReport {
    double mean;           // <s> from the two-mode operator
    double second_moment;  // <s^2> from the two-mode operator
    double variance;       // second_moment - mean^2, clamped at 0 above -1e-12
    double closed_mean;           // single-mode closed form
    double closed_second_moment;  // single-mode closed form
    int joint_n_max;              // truncation used for the two-mode state
    std::string units;            // power of the mode scale
};

/// Local oscillator |beta>, beta = gamma2 e^{i phi2}. Mean
/// -s |beta| [sin(phi_b) <a + a^dag> + cos(phi_b) <i(a - a^dag)>], phi_b = arg(beta),
/// computed from the single-mode form and from the two-mode difference
/// operator s (i a1^dag a2 - i a2^dag a1).
double homodyne_mean(const FockState& s, cplx gamma2, double phi2, const ModeScale& ms = {});

/// Second moment and variance. Closed form:
/// s^2 <n> + s^2 |beta|^2 [sin^2 <X^2> + cos^2 <Y^2> + sin(2 phi_b) <i(a a - a^dag a^dag)>],
/// X = a + a^dag, Y = i(a^dag - a).
HomodyneReport homodyne_noise(const FockState& s, cplx gamma2, double phi2,
                              const ModeScale& ms = {});

/// Closed-form homodyne mean for a coherent signal, valid at any |gamma1|
/// without building matrices: 2 s |beta| |gamma1| sin(arg gamma1 - arg beta).
double homodyne_mean_coherent(cplx gamma1, cplx gamma2, double phi2, const ModeScale& ms = {});

struct QuadratureStats {
    double mean_q;
    double mean_p;
    double delta_q;
    double delta_p;
    double product;
};

/// Means and standard deviations of E_q and E_p. Throws TruncationError if
/// the state puts more than 1e-8 probability in the top quarter of its basis.
QuadratureStats quadrature_stats(const FockState& s, const ModeScale& ms = {});

enum class RateUnits { mode, physical };

/// mode: <n>; physical: (hbar omega c / V) <n>, which needs omega and volume.
double counting_rate(const FockState& s, const ModeScale& ms = {},
                     RateUnits units = RateUnits::mode);

struct G1Report {
    double port3;
    double port4;
    double difference;  // port4 - port3
    double closed_port3;
    double closed_port4;
    double closed_difference;
};

/// Mach-Zehnder with two (1/sqrt 2, i/sqrt 2) splitters and internal phase phi.
G1Report g1_mz(const FockState& s, double phi, const ModeScale& ms = {});

struct G2Report {
    double correlation;         // s^2 <n3 n4> on the split state
    double closed_correlation;  // s^2 |rho|^2 |tau|^2 <n(n-1)>
    double mean_n;
    double factorial_moment;    // <n(n-1)>
    std::optional<double> g2;   // <n(n-1)> / <n>^2 when <n> > 0
};

G2Report g2_splitter(const FockState& s, const SplitterCoeffs& sc, const ModeScale& ms = {});

/// Kronecker product, first factor on mode 1.
Mat kron(const Mat& a, const Mat& b);

struct PortOperators {
    Mat d1;  // (s/2)(n1 + n2 + i a1^dag a2 - i a2^dag a1)
    Mat d2;  // (s/2)(n1 + n2 - i a1^dag a2 + i a2^dag a1)
};

/// Detector operators on the joint (n_max+1)^2 space.
PortOperators port_operators(int n_max, const ModeScale& ms = {});

}  // namespace qfock
