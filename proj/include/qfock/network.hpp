#pragma once

// Lossless beam splitters acting on number states, Mach-Zehnder compound
// coefficients, and the photon-statistics identities of a split number state.
//
// Port convention: inputs 1, 2; outputs 3, 4. Creation operators transform as
// a1^dag = rho a3^dag + tau a4^dag and a2^dag = tau' a3^dag + rho' a4^dag
// (tau' = tau, rho' = rho for a symmetric splitter). A TwoModeState from this
// module holds amplitudes over |m>_3 |k>_4.

#include "qfock/kernels.hpp"

namespace qfock {

class SplitterCoeffs {
public:
    /// |rho|^2 + |tau|^2 = 1 and arg(rho) - arg(tau) = +-pi/2, both within 1e-12.
    static SplitterCoeffs symmetric(cplx rho, cplx tau);
    /// Only |rho|^2 + |tau|^2 = 1; no phase rule. Not accepted by Mach-Zehnder helpers.
    static SplitterCoeffs lossless(cplx rho, cplx tau);
    /// Port-1 pair (rho, tau) and port-2 pair (rho', tau') with |rho| = |rho'|,
    /// |tau| = |tau'| and arg(rho) + arg(rho') = arg(tau) + arg(tau') +- pi.
    static SplitterCoeffs asymmetric(cplx rho, cplx tau, cplx rho_p, cplx tau_p);
    /// (1/sqrt 2, i/sqrt 2).
    static SplitterCoeffs fifty_fifty();

    cplx rho() const { return rho_; }
    cplx tau() const { return tau_; }
    cplx rho_p() const { return rho_p_; }
    cplx tau_p() const { return tau_p_; }
    bool is_symmetric() const { return symmetric_; }
    bool is_asymmetric() const { return asymmetric_; }

private:
    SplitterCoeffs(cplx rho, cplx tau, cplx rho_p, cplx tau_p, bool symmetric, bool asymmetric)
        : rho_(rho), tau_(tau), rho_p_(rho_p), tau_p_(tau_p), symmetric_(symmetric),
          asymmetric_(asymmetric) {}

    cplx rho_;
    cplx tau_;
    cplx rho_p_;
    cplx tau_p_;
    bool symmetric_;
    bool asymmetric_;
};

struct MZConfig {
    SplitterCoeffs s1;
    SplitterCoeffs s2;
    double phi;  // extra phase on the arm transmitted by the first splitter
};

/// Output of |n1>_1 |n2>_2 over |m>_3 |n1 + n2 - m>_4 in a basis truncated at
/// n_max. Throws TruncationError when n1 + n2 > n_max.
TwoModeState split_joint_number(int n1, int n2, const SplitterCoeffs& sc, int n_max);

/// |psi>_1 |0>_2 -> sum_n c_n sum_m sqrt(C(n, m)) rho^m tau^(n-m) |m>_3 |n-m>_4.
/// Uses the port-1 pair only. The output keeps the input truncation.
TwoModeState split_state(const FockState& s, const SplitterCoeffs& sc, Exec exec = Exec::parallel);

/// Diagonal expectations over a two-mode state (normalized).
double expect_n3(const TwoModeState& s);
double expect_n4(const TwoModeState& s);
double expect_n3n4(const TwoModeState& s);

struct EntanglementReport {
    double mean3;        // <m>_3 from the split state
    double mean4;        // <n - m>_4
    double mean_product; // <m (n - m)>
    double product_gap;  // <m><n - m> - <m (n - m)>
    double closed_mean3;        // n |rho|^2
    double closed_mean4;        // n |tau|^2
    double closed_product;      // n (n - 1) |rho|^2 |tau|^2
    double closed_gap;          // n |rho|^2 |tau|^2
    double brute_product;       // sum_m m (n - m) C(n, m) |rho|^2m |tau|^2(n-m)
};

EntanglementReport entanglement_check(int n, const SplitterCoeffs& sc);

struct BinomialMoment {
    double closed;
    double brute;
};

/// power 1: sum_m m C(n,m) x^m y^(n-m) = n x (x + y)^(n-1);
/// power 2: sum_m m^2 C(n,m) x^m y^(n-m) = n x (x+y)^(n-1) + n(n-1) x^2 (x+y)^(n-2).
BinomialMoment binomial_moment(int n, double x, double y, int power);

/// rho = rho1 rho2 + tau1 tau2 e^{i phi}, tau = rho1 tau2 + tau1 rho2 e^{i phi}.
/// Both splitters must be symmetric.
SplitterCoeffs mz_effective(const MZConfig& cfg);

struct MZCompoundTable {
    cplx rho13, rho24, rho31, rho42;
    cplx tau14, tau23, tau32, tau41;
    double reciprocity_residual;  // max of |rho13 - rho31|, |rho24 - rho42|, |tau14 - tau41|, |tau23 - tau32|
    double magnitude_residual;    // max of ||rho13| - |rho24||, ||tau14| - |tau23||
    double unitarity_residual;    // ||rho13|^2 + |tau14|^2 - 1|
    double phase_residual;        // |rho13 conj(tau14) + conj(rho24) tau23|
};

/// Compound coefficients for entry through each of the four ports. Throws
/// DomainError unless both splitters are symmetric.
MZCompoundTable mz_compound_table(const MZConfig& cfg);

/// split_state(number_state(n, n_max), mz_effective(cfg)).
TwoModeState mz_split_number(int n, const MZConfig& cfg, int n_max);

/// Same output built stage by stage: the first splitter sends m photons to
/// input 1 and n - m (phase shifted) to input 2 of the second splitter, which
/// is applied with split_joint_number.
TwoModeState mz_split_number_two_stage(int n, const MZConfig& cfg, int n_max);

}  // namespace qfock
