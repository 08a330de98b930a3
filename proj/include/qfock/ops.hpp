#pragma once

// Operator matrices on a truncated number basis, matrix exponential, and the
// operator-identity checks used to validate them.
//
// Matrices use row = output index: (A psi)_m = sum_n A(m, n) psi_n.

#include "qfock/fock.hpp"

namespace qfock {

using Operator = Mat;

Operator annihilation(int n_max);
Operator creation(int n_max);
Operator number(int n_max);
Operator identity(int n_max);

/// hbar*omega*(n + 1/2). Throws DomainError when ms has no omega.
Operator hamiltonian(int n_max, const ModeScale& ms);

/// sqrt(s) (a^dag + a).
Operator quadrature_q(int n_max, const ModeScale& ms = {});
/// i sqrt(s) (a^dag - a).
Operator quadrature_p(int n_max, const ModeScale& ms = {});

/// AB - BA. Throws DimensionError on shape mismatch.
Operator commutator(const Operator& a, const Operator& b);

inline constexpr double kMatExpTol = 1e-12;

/// e^A by scaling and squaring around a truncated Taylor core. The series is
/// summed until the next term is below tol relative to the partial sum; throws
/// ConvergenceError if that does not happen within the term budget.
Operator mat_exp(const Operator& a, double tol = kMatExpTol);

/// Smallest truncation for which translation(gamma, .) is accepted:
/// |gamma|^2 + 10|gamma| + 20 <= n_max.
bool translation_fits(cplx gamma, int n_max);

/// T(gamma) = exp(gamma a^dag - conj(gamma) a). Throws TruncationError when
/// translation_fits is false.
Operator translation(cplx gamma, int n_max);

/// Largest index of the lower half-basis used for truncation-sensitive
/// identities: floor(n_max / 2).
int lower_half_limit(int n_max);

/// max |M(i, j)| over i, j <= lower_half_limit(n_max).
double max_abs_lower_half(const Operator& m);

struct CbhReport {
    double max_deviation;
    double tol;
    bool pass;
};

/// With A = gamma a^dag and B = -conj(gamma) a, compares e^A e^B against
/// e^{A + B + [A, B]/2} on the lower half-basis.
CbhReport cbh_check(cplx gamma, int n_max, double tol);

/// <s|A|s> / <s|s>.
cplx expect(const Operator& a, const FockState& s);

/// <s|A|s> without normalization; used for raw-convention states.
cplx bracket(const Operator& a, const FockState& s);

/// <A^2> - <A>^2 for Hermitian A. Throws DomainError otherwise.
double variance(const Operator& a, const FockState& s);

/// max|M - M^dag| <= tol * max(1, max|M|).
bool is_hermitian(const Operator& m, double tol = 1e-12);

/// a psi and a^dag psi in O(n) without forming matrices. raise drops the
/// component pushed above n_max, matching creation(n_max).
Vec lower(const Vec& psi);
Vec raise(const Vec& psi);

}  // namespace qfock
