#include "qfock/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef QFOCK_HAVE_OPENMP
#include <omp.h>
#endif

namespace qfock::kernels {

namespace {

double density_at(const Vec& amps, double phi) {
    cplx acc(0.0, 0.0);
    for (Eigen::Index n = 0; n < amps.size(); ++n) {
        acc += amps(n) * std::polar(1.0, -static_cast<double>(n) * phi);
    }
    return std::norm(acc) / kTwoPi;
}

double grid_point(double lo, int points, int j) {
    return lo + kTwoPi * static_cast<double>(j) / static_cast<double>(points);
}

// rho^k and tau^k for k = 0..d-1, by binary exponentiation so that each entry
// is independent of the table length.
std::vector<cplx> power_table(cplx z, int d) {
    std::vector<cplx> t(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        t[static_cast<std::size_t>(k)] = ipow(z, k);
    }
    return t;
}

void split_column(const Vec& amps, const std::vector<cplx>& rp, const std::vector<cplx>& tp, int n,
                  Mat& out) {
    const cplx c = amps(n);
    double binom = 1.0;  // C(n, m), updated by the ratio (n - m) / (m + 1)
    for (int m = 0; m <= n; ++m) {
        out(m, n - m) = c * std::sqrt(binom) * rp[static_cast<std::size_t>(m)] *
                        tp[static_cast<std::size_t>(n - m)];
        binom = binom * (n - m) / (m + 1);
        if (binom < 9.0e15) {
            binom = std::round(binom);
        }
    }
}

void check_split_size(Eigen::Index d) {
    if (d - 1 > kMaxBinomialN) {
        throw DomainError("split_amplitudes: n_max exceeds " + std::to_string(kMaxBinomialN));
    }
}

void check_points(int points) {
    if (points < 1) {
        throw DomainError("phase_density: points must be positive");
    }
}

}  // namespace

bool openmp_enabled() {
#ifdef QFOCK_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef QFOCK_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0.0;
    }
    if (n > kMaxBinomialN) {
        throw DomainError("binomial: n exceeds " + std::to_string(kMaxBinomialN));
    }
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c < 9.0e15 ? std::round(c) : c;  // exact integers below 2^53
}

double sqrt_binomial(int n, int k) {
    return std::sqrt(binomial(n, k));
}

cplx ipow(cplx z, int k) {
    if (k < 0) {
        throw DomainError("ipow: negative exponent");
    }
    cplx result(1.0, 0.0);
    cplx base = z;
    while (k > 0) {
        if (k & 1) {
            result *= base;
        }
        base *= base;
        k >>= 1;
    }
    return result;
}

namespace serial {

std::vector<double> phase_density(const Vec& amps, double lo, int points) {
    check_points(points);
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) {
        out[static_cast<std::size_t>(j)] = density_at(amps, grid_point(lo, points, j));
    }
    return out;
}

Mat split_amplitudes(const Vec& amps, cplx rho, cplx tau) {
    check_split_size(amps.size());
    const int d = static_cast<int>(amps.size());
    Mat out = Mat::Zero(d, d);
    const auto rp = power_table(rho, d);
    const auto tp = power_table(tau, d);
    for (int n = 0; n < d; ++n) {
        split_column(amps, rp, tp, n, out);
    }
    return out;
}

}  // namespace serial

namespace omp {

std::vector<double> phase_density(const Vec& amps, double lo, int points) {
    check_points(points);
    std::vector<double> out(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < points; ++j) {
        out[static_cast<std::size_t>(j)] = density_at(amps, grid_point(lo, points, j));
    }
    return out;
}

Mat split_amplitudes(const Vec& amps, cplx rho, cplx tau) {
    check_split_size(amps.size());
    const int d = static_cast<int>(amps.size());
    Mat out = Mat::Zero(d, d);
    const auto rp = power_table(rho, d);
    const auto tp = power_table(tau, d);
    // Input n writes only the anti-diagonal m + k = n, so iterations are disjoint.
#pragma omp parallel for schedule(dynamic, 4)
    for (int n = 0; n < d; ++n) {
        split_column(amps, rp, tp, n, out);
    }
    return out;
}

}  // namespace omp

}  // namespace qfock::kernels
