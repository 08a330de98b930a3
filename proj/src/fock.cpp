#include "qfock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfock {

namespace {

constexpr double kUnitNormTol = 1e-12;

bool all_finite(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
            return false;
        }
    }
    return true;
}

// log|c_n| for the untruncated coherent state.
double coherent_log_magnitude(double abs_gamma, int n) {
    if (abs_gamma == 0.0) {
        return n == 0 ? 0.0 : -INFINITY;
    }
    return -0.5 * abs_gamma * abs_gamma + n * std::log(abs_gamma) - 0.5 * std::lgamma(n + 1.0);
}

}  // namespace

double principal_arg(cplx z) {
    double a = std::arg(z);
    return a <= -kPi ? a + kTwoPi : a;
}

double wrap_angle(double radians) {
    double r = std::remainder(radians, kTwoPi);
    return r <= -kPi ? r + kTwoPi : r;
}

FockState::FockState(Vec amps, NormConvention convention, double tail_mass)
    : amps_(std::move(amps)), convention_(convention), tail_mass_(tail_mass) {
    if (amps_.size() == 0) {
        throw DimensionError("FockState: empty amplitude vector");
    }
    if (!all_finite(amps_)) {
        throw DomainError("FockState: non-finite amplitude");
    }
    if (convention_ == NormConvention::unit) {
        double dev = std::abs(amps_.squaredNorm() - 1.0);
        if (dev > kUnitNormTol) {
            std::ostringstream msg;
            msg << "FockState: unit-norm state has |norm^2 - 1| = " << dev;
            throw DomainError(msg.str());
        }
    }
}

double FockState::mass_above(int index) const {
    double mass = 0.0;
    for (int n = std::max(index + 1, 0); n < dim(); ++n) {
        mass += std::norm(amps_(n));
    }
    return mass;
}

FockState FockState::padded(int new_n_max) const {
    if (new_n_max < n_max()) {
        throw DimensionError("FockState::padded: cannot shrink the basis");
    }
    Vec v = Vec::Zero(new_n_max + 1);
    v.head(dim()) = amps_;
    return FockState(std::move(v), convention_, tail_mass_);
}

TwoModeState::TwoModeState(Mat amps) : amps_(std::move(amps)) {
    if (amps_.rows() == 0 || amps_.rows() != amps_.cols()) {
        throw DimensionError("TwoModeState: amplitude matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        cplx z = amps_.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DomainError("TwoModeState: non-finite amplitude");
        }
    }
}

Vec TwoModeState::flattened() const {
    const int d = dim();
    Vec v(d * d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            v(m * d + n) = amps_(m, n);
        }
    }
    return v;
}

ModeScale::ModeScale(double scale, std::optional<double> omega, std::optional<double> volume)
    : scale_(scale), omega_(omega), volume_(volume) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
        throw DomainError("ModeScale: scale must be positive and finite");
    }
    if (omega_ && !(*omega_ > 0.0)) {
        throw DomainError("ModeScale: omega must be positive");
    }
    if (volume_ && !(*volume_ > 0.0)) {
        throw DomainError("ModeScale: volume must be positive");
    }
    if (omega_ && volume_) {
        double expected = kHbar * *omega_ / (2.0 * kEpsilon0 * *volume_);
        if (std::abs(expected - scale_) > 1e-12 * expected) {
            throw DomainError("ModeScale: scale inconsistent with omega and volume");
        }
    }
}

ModeScale ModeScale::physical(double omega, double volume) {
    if (!(omega > 0.0) || !(volume > 0.0)) {
        throw DomainError("ModeScale::physical: omega and volume must be positive");
    }
    return ModeScale(kHbar * omega / (2.0 * kEpsilon0 * volume), omega, volume);
}

int auto_truncation(cplx gamma) {
    double a = std::abs(gamma);
    return static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0));
}

FockState number_state(int n, int n_max) {
    if (n_max < 0) {
        throw DomainError("number_state: n_max must be non-negative");
    }
    if (n < 0 || n > n_max) {
        throw DomainError("number_state: n = " + std::to_string(n) + " outside [0, " +
                          std::to_string(n_max) + "]");
    }
    Vec v = Vec::Zero(n_max + 1);
    v(n) = 1.0;
    return FockState(std::move(v), NormConvention::unit);
}

FockState coherent_state(cplx gamma, int n_max, TruncationPolicy policy) {
    if (n_max < 0) {
        throw DomainError("coherent_state: n_max must be non-negative");
    }
    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
        throw DomainError("coherent_state: gamma must be finite");
    }
    const double r = std::abs(gamma);
    const double theta = std::arg(gamma);

    // Amplitudes in log space so that large |gamma| does not underflow e^{-|gamma|^2/2}.
    Vec v(n_max + 1);
    double kept = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double mag = std::exp(coherent_log_magnitude(r, n));
        v(n) = std::polar(mag, n * theta);
        kept += mag * mag;
    }

    // Tail mass summed directly; terms decay monotonically past the Poisson peak.
    double tail = 0.0;
    if (r > 0.0) {
        const double peak = r * r;
        for (int n = n_max + 1;; ++n) {
            double term = std::exp(2.0 * coherent_log_magnitude(r, n));
            tail += term;
            if (n > peak && (term < 1e-300 || term < 1e-18 * tail)) {
                break;
            }
        }
    }

    if (policy == TruncationPolicy::strict && tail > kCoherentTailLimit) {
        std::ostringstream msg;
        msg << "coherent_state: truncation n_max = " << n_max << " discards tail mass " << tail
            << " (limit " << kCoherentTailLimit << "); use n_max >= " << auto_truncation(gamma);
        throw TruncationError(msg.str());
    }
    if (!(kept > 0.0)) {
        throw TruncationError("coherent_state: no probability mass inside the truncated basis");
    }
    v /= std::sqrt(kept);
    return FockState(std::move(v), NormConvention::unit, tail);
}

FockState coherent_state(cplx gamma) {
    return coherent_state(gamma, auto_truncation(gamma));
}

FockState phase_state(double phi, int n_max, PhaseNorm convention) {
    if (n_max < 0) {
        throw DomainError("phase_state: n_max must be non-negative");
    }
    if (!std::isfinite(phi)) {
        throw DomainError("phase_state: phi must be finite");
    }
    const double norm = convention == PhaseNorm::raw
                            ? 1.0 / std::sqrt(kTwoPi * (n_max + 1.0))
                            : 1.0 / std::sqrt(n_max + 1.0);
    Vec v(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        v(n) = std::polar(norm, n * phi);
    }
    return FockState(std::move(v), convention == PhaseNorm::raw ? NormConvention::raw
                                                                      : NormConvention::unit);
}

cplx inner(const FockState& a, const FockState& b) {
    if (a.n_max() != b.n_max()) {
        throw DimensionError("inner: truncations differ");
    }
    return a.amps().dot(b.amps());  // Eigen's dot conjugates the left operand
}

TwoModeState tensor(const FockState& a, const FockState& b) {
    if (a.n_max() != b.n_max()) {
        throw DimensionError("tensor: truncations differ");
    }
    return TwoModeState(a.amps() * b.amps().transpose());
}

double reduced_purity(const TwoModeState& s, Subsystem which) {
    const double norm2 = s.norm_squared();
    if (!(norm2 > 0.0)) {
        throw DomainError("reduced_purity: zero state");
    }
    const Mat& c = s.amps();
    Mat rho = which == Subsystem::left ? Mat(c * c.adjoint()) : Mat(c.transpose() * c.conjugate());
    rho /= norm2;
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    return rho.squaredNorm();
}

std::string to_string(NormConvention c) {
    return c == NormConvention::unit ? "unit" : "raw";
}

}  // namespace qfock
