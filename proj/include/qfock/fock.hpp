#pragma once

// Truncated single- and two-mode Fock-space states.
//
// A FockState holds amplitudes c_0..c_{n_max} over the number basis |0>..|n_max>.
// A TwoModeState holds c_{m,n} over |m>_a |n>_b with both modes truncated at
// the same n_max. Both are immutable after construction.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qfock {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Physical constants (CODATA 2018, SI).
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kEpsilon0 = 8.8541878128e-12;
inline constexpr double kSpeedOfLight = 299792458.0;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The requested truncation cannot hold the state (or operator identity) to
// the required accuracy.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Principal argument in (-pi, pi].
double principal_arg(cplx z);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double radians);

enum class NormConvention { unit, raw };

class FockState {
public:
    /// Validates finiteness; for NormConvention::unit also checks |sum|c|^2 - 1| <= 1e-12.
    FockState(Vec amps, NormConvention convention, double tail_mass = 0.0);

    int n_max() const { return static_cast<int>(amps_.size()) - 1; }
    int dim() const { return static_cast<int>(amps_.size()); }
    const Vec& amps() const { return amps_; }
    cplx amp(int n) const { return amps_(n); }
    NormConvention norm_convention() const { return convention_; }
    /// Probability mass sum_{n > n_max} |c_n|^2 discarded by truncation
    /// (before renormalization). Zero for states that are exact in the basis.
    double tail_mass() const { return tail_mass_; }
    double norm_squared() const { return amps_.squaredNorm(); }

    /// Mass carried by indices strictly above `index`.
    double mass_above(int index) const;

    /// Same amplitudes embedded in a larger basis (zero padded).
    FockState padded(int n_max) const;

private:
    Vec amps_;
    NormConvention convention_;
    double tail_mass_;
};

class TwoModeState {
public:
    explicit TwoModeState(Mat amps);

    int n_max() const { return static_cast<int>(amps_.rows()) - 1; }
    int dim() const { return static_cast<int>(amps_.rows()); }
    const Mat& amps() const { return amps_; }
    cplx amp(int m, int n) const { return amps_(m, n); }
    double norm_squared() const { return amps_.squaredNorm(); }

    /// Row-major flattening, index = m * dim + n, matching kron(A, B) with A on
    /// the first mode.
    Vec flattened() const;

private:
    Mat amps_;
};

/// Physical prefactor s = hbar*omega / (2 eps0 V). All field expectations are
/// expressed in powers of this unit.
class ModeScale {
public:
    /// Dimensionless unit scale (s = 1).
    ModeScale() = default;
    /// Throws DomainError unless scale > 0. When both omega and volume are
    /// given they must reproduce `scale` within 1e-12 relative.
    explicit ModeScale(double scale, std::optional<double> omega = std::nullopt,
                       std::optional<double> volume = std::nullopt);

    static ModeScale physical(double omega, double volume);

    double scale() const { return scale_; }
    std::optional<double> omega() const { return omega_; }
    std::optional<double> volume() const { return volume_; }
    bool is_physical() const { return omega_.has_value() && volume_.has_value(); }

private:
    double scale_ = 1.0;
    std::optional<double> omega_;
    std::optional<double> volume_;
};

/// Smallest n_max whose Poisson tail for |gamma|^2 photons is negligible:
/// ceil(|gamma|^2 + 10|gamma| + 20).
int auto_truncation(cplx gamma);

/// Tail-mass ceiling accepted by coherent_state in strict mode.
inline constexpr double kCoherentTailLimit = 1e-10;

enum class TruncationPolicy { strict, allow_tail };

FockState number_state(int n, int n_max);

/// Glauber coherent state renormalized over |0>..|n_max>; the discarded
/// Poisson tail is recorded as tail_mass(). In strict mode a tail above
/// kCoherentTailLimit throws TruncationError.
FockState coherent_state(cplx gamma, int n_max, TruncationPolicy policy = TruncationPolicy::strict);
FockState coherent_state(cplx gamma);

enum class PhaseNorm {
    raw,   // c_n = e^{i n phi} / sqrt(2 pi (n_max+1)), total norm^2 = 1/(2 pi)
    unit   // c_n = e^{i n phi} / sqrt(n_max+1)
};

FockState phase_state(double phi, int n_max, PhaseNorm convention);

cplx inner(const FockState& a, const FockState& b);

TwoModeState tensor(const FockState& a, const FockState& b);

enum class Subsystem { left, right };

/// Tr(rho^2) of the reduced density matrix of the chosen mode, after
/// normalizing the joint state.
double reduced_purity(const TwoModeState& s, Subsystem which);

std::string to_string(NormConvention c);

}  // namespace qfock
