#pragma once

// Hot loops with a serial reference and an OpenMP version. Both versions run
// the same per-element arithmetic, so their results are bitwise identical.

#include "qfock/fock.hpp"

#include <vector>

namespace qfock {

enum class Exec { serial, parallel };

namespace kernels {

/// True when the library was compiled with OpenMP.
bool openmp_enabled();
int max_threads();

namespace serial {

/// (2 pi)^-1 |sum_n c_n e^{-i n phi_j}|^2 at phi_j = lo + 2 pi j / points.
std::vector<double> phase_density(const Vec& amps, double lo, int points);

/// out(m, n - m) = c_n sqrt(C(n, m)) rho^m tau^(n - m).
Mat split_amplitudes(const Vec& amps, cplx rho, cplx tau);

}  // namespace serial

namespace omp {

std::vector<double> phase_density(const Vec& amps, double lo, int points);
Mat split_amplitudes(const Vec& amps, cplx rho, cplx tau);

}  // namespace omp

inline std::vector<double> phase_density(const Vec& amps, double lo, int points, Exec exec) {
    return exec == Exec::parallel ? omp::phase_density(amps, lo, points)
                                  : serial::phase_density(amps, lo, points);
}

inline Mat split_amplitudes(const Vec& amps, cplx rho, cplx tau, Exec exec) {
    return exec == Exec::parallel ? omp::split_amplitudes(amps, rho, tau)
                                  : serial::split_amplitudes(amps, rho, tau);
}

/// sqrt(C(n, k)) by accumulated ratios. Throws DomainError for n > kMaxBinomialN.
inline constexpr int kMaxBinomialN = 1000;
double sqrt_binomial(int n, int k);
double binomial(int n, int k);

/// z^k with 0^0 = 1.
cplx ipow(cplx z, int k);

}  // namespace kernels
}  // namespace qfock
