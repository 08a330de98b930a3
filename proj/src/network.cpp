#include "qfock/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qfock {

namespace {

constexpr double kCoeffTol = 1e-12;

using kernels::binomial;
using kernels::ipow;
using kernels::sqrt_binomial;

void require_unit_pair(cplx rho, cplx tau, const char* who) {
    if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag()) || !std::isfinite(tau.real()) ||
        !std::isfinite(tau.imag())) {
        throw DomainError(std::string(who) + ": coefficients must be finite");
    }
    const double dev = std::abs(std::norm(rho) + std::norm(tau) - 1.0);
    if (dev > kCoeffTol) {
        std::ostringstream msg;
        msg << who << ": |rho|^2 + |tau|^2 deviates from 1 by " << dev;
        throw DomainError(msg.str());
    }
}

void require_symmetric(const MZConfig& cfg, const char* who) {
    if (!cfg.s1.is_symmetric() || !cfg.s2.is_symmetric()) {
        throw DomainError(std::string(who) + ": both splitters must be symmetric");
    }
    if (!std::isfinite(cfg.phi)) {
        throw DomainError(std::string(who) + ": phi must be finite");
    }
}

double diag_moment(const TwoModeState& s, int p3, int p4) {
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) {
        throw DomainError("two-mode expectation: zero state");
    }
    double acc = 0.0;
    for (int m = 0; m < s.dim(); ++m) {
        for (int k = 0; k < s.dim(); ++k) {
            const double w = std::norm(s.amp(m, k));
            if (w != 0.0) {
                acc += w * std::pow(m, p3) * std::pow(k, p4);
            }
        }
    }
    return acc / n2;
}

}  // namespace

SplitterCoeffs SplitterCoeffs::symmetric(cplx rho, cplx tau) {
    require_unit_pair(rho, tau, "SplitterCoeffs::symmetric");
    // arg(rho) - arg(tau) = +-pi/2  <=>  Re(rho conj(tau)) = 0.
    const double re = (rho * std::conj(tau)).real();
    if (std::abs(re) > kCoeffTol) {
        std::ostringstream msg;
        msg << "SplitterCoeffs::symmetric: phase difference is not +-pi/2 (Re(rho tau*) = " << re
            << ")";
        throw DomainError(msg.str());
    }
    return SplitterCoeffs(rho, tau, rho, tau, true, false);
}

SplitterCoeffs SplitterCoeffs::lossless(cplx rho, cplx tau) {
    require_unit_pair(rho, tau, "SplitterCoeffs::lossless");
    const bool sym = std::abs((rho * std::conj(tau)).real()) <= kCoeffTol;
    return SplitterCoeffs(rho, tau, rho, tau, sym, false);
}

SplitterCoeffs SplitterCoeffs::asymmetric(cplx rho, cplx tau, cplx rho_p, cplx tau_p) {
    require_unit_pair(rho, tau, "SplitterCoeffs::asymmetric");
    require_unit_pair(rho_p, tau_p, "SplitterCoeffs::asymmetric (primed)");
    if (std::abs(std::abs(rho) - std::abs(rho_p)) > kCoeffTol ||
        std::abs(std::abs(tau) - std::abs(tau_p)) > kCoeffTol) {
        throw DomainError("SplitterCoeffs::asymmetric: |rho| = |rho'| and |tau| = |tau'| required");
    }
    // arg(rho) + arg(rho') - arg(tau) - arg(tau') = +-pi  <=>  rho rho' conj(tau tau') < 0.
    const cplx z = rho * rho_p * std::conj(tau * tau_p);
    if (std::abs(z) > kCoeffTol && (std::abs(z.imag()) > kCoeffTol || z.real() > 0.0)) {
        throw DomainError("SplitterCoeffs::asymmetric: phase sum rule violated");
    }
    return SplitterCoeffs(rho, tau, rho_p, tau_p, false, true);
}

SplitterCoeffs SplitterCoeffs::fifty_fifty() {
    const double h = 1.0 / std::sqrt(2.0);
    return symmetric(cplx(h, 0.0), cplx(0.0, h));
}

TwoModeState split_joint_number(int n1, int n2, const SplitterCoeffs& sc, int n_max) {
    if (n1 < 0 || n2 < 0) {
        throw DomainError("split_joint_number: photon numbers must be non-negative");
    }
    const int total = n1 + n2;
    if (total > n_max) {
        throw TruncationError("split_joint_number: n1 + n2 exceeds n_max");
    }
    const cplx rho = sc.rho();
    const cplx tau = sc.tau();
    const cplx rho_p = sc.rho_p();
    const cplx tau_p = sc.tau_p();
    Mat out = Mat::Zero(n_max + 1, n_max + 1);
    for (int m1 = 0; m1 <= n1; ++m1) {
        for (int m2 = 0; m2 <= n2; ++m2) {
            const int m = m1 + m2;
            // sqrt(n1! n2! m! (N-m)!) / (m1! m2! (n1-m1)! (n2-m2)!) as a product of binomials.
            const double coeff = std::sqrt(binomial(n1, m1) * binomial(n2, m2) * binomial(m, m1) *
                                           binomial(total - m, n1 - m1));
            cplx phase;
            if (sc.is_asymmetric()) {
                phase = ipow(rho, m1) * ipow(rho_p, n2 - m2) * ipow(tau, n1 - m1) * ipow(tau_p, m2);
            } else {
                phase = ipow(rho, n2 + m1 - m2) * ipow(tau, n1 - m1 + m2);
            }
            out(m, total - m) += coeff * phase;
        }
    }
    return TwoModeState(std::move(out));
}

TwoModeState split_state(const FockState& s, const SplitterCoeffs& sc, Exec exec) {
    if (s.n_max() > kernels::kMaxBinomialN) {
        throw TruncationError("split_state: n_max exceeds the binomial range");
    }
    return TwoModeState(kernels::split_amplitudes(s.amps(), sc.rho(), sc.tau(), exec));
}

double expect_n3(const TwoModeState& s) {
    return diag_moment(s, 1, 0);
}

double expect_n4(const TwoModeState& s) {
    return diag_moment(s, 0, 1);
}

double expect_n3n4(const TwoModeState& s) {
    return diag_moment(s, 1, 1);
}

EntanglementReport entanglement_check(int n, const SplitterCoeffs& sc) {
    if (n < 0) {
        throw DomainError("entanglement_check: n must be non-negative");
    }
    const TwoModeState out = split_state(number_state(n, n), sc, Exec::serial);
    const double r2 = std::norm(sc.rho());
    const double t2 = std::norm(sc.tau());
    EntanglementReport rep{};
    rep.mean3 = expect_n3(out);
    rep.mean4 = expect_n4(out);
    rep.mean_product = expect_n3n4(out);
    rep.product_gap = rep.mean3 * rep.mean4 - rep.mean_product;
    rep.closed_mean3 = n * r2;
    rep.closed_mean4 = n * t2;
    rep.closed_product = static_cast<double>(n) * (n - 1) * r2 * t2;
    rep.closed_gap = n * r2 * t2;
    double brute = 0.0;
    for (int m = 0; m <= n; ++m) {
        brute += static_cast<double>(m) * (n - m) * binomial(n, m) * std::pow(r2, m) *
                 std::pow(t2, n - m);
    }
    rep.brute_product = brute;
    return rep;
}

BinomialMoment binomial_moment(int n, double x, double y, int power) {
    if (n < 0) {
        throw DomainError("binomial_moment: n must be non-negative");
    }
    if (power != 1 && power != 2) {
        throw DomainError("binomial_moment: power must be 1 or 2");
    }
    double brute = 0.0;
    for (int m = 0; m <= n; ++m) {
        brute += std::pow(static_cast<double>(m), power) * binomial(n, m) * std::pow(x, m) *
                 std::pow(y, n - m);
    }
    double closed = 0.0;
    if (n >= 1) {
        closed = n * x * std::pow(x + y, n - 1);
        if (power == 2 && n >= 2) {
            closed += static_cast<double>(n) * (n - 1) * x * x * std::pow(x + y, n - 2);
        }
    }
    return {closed, brute};
}

SplitterCoeffs mz_effective(const MZConfig& cfg) {
    require_symmetric(cfg, "mz_effective");
    const cplx e = std::polar(1.0, cfg.phi);
    const cplx rho = cfg.s1.rho() * cfg.s2.rho() + cfg.s1.tau() * cfg.s2.tau() * e;
    const cplx tau = cfg.s1.rho() * cfg.s2.tau() + cfg.s1.tau() * cfg.s2.rho() * e;
    return SplitterCoeffs::lossless(rho, tau);
}

MZCompoundTable mz_compound_table(const MZConfig& cfg) {
    require_symmetric(cfg, "mz_compound_table");
    const cplx r1 = cfg.s1.rho();
    const cplx t1 = cfg.s1.tau();
    const cplx r2 = cfg.s2.rho();
    const cplx t2 = cfg.s2.tau();
    const cplx e = std::polar(1.0, cfg.phi);
    MZCompoundTable t{};
    t.rho13 = r1 * r2 + t1 * t2 * e;
    t.rho24 = r1 * r2 * e + t1 * t2;
    t.rho31 = r2 * r1 + t2 * t1 * e;
    t.rho42 = r2 * r1 * e + t2 * t1;
    t.tau14 = r1 * t2 + t1 * r2 * e;
    t.tau23 = r1 * t2 * e + t1 * r2;
    t.tau32 = r2 * t1 + t2 * r1 * e;
    t.tau41 = r2 * t1 * e + t2 * r1;
    t.reciprocity_residual = std::max({std::abs(t.rho13 - t.rho31), std::abs(t.rho24 - t.rho42),
                                       std::abs(t.tau14 - t.tau41), std::abs(t.tau23 - t.tau32)});
    t.magnitude_residual = std::max(std::abs(std::abs(t.rho13) - std::abs(t.rho24)),
                                    std::abs(std::abs(t.tau14) - std::abs(t.tau23)));
    t.unitarity_residual = std::abs(std::norm(t.rho13) + std::norm(t.tau14) - 1.0);
    t.phase_residual = std::abs(t.rho13 * std::conj(t.tau14) + std::conj(t.rho24) * t.tau23);
    return t;
}

TwoModeState mz_split_number(int n, const MZConfig& cfg, int n_max) {
    return split_state(number_state(n, n_max), mz_effective(cfg), Exec::serial);
}

TwoModeState mz_split_number_two_stage(int n, const MZConfig& cfg, int n_max) {
    require_symmetric(cfg, "mz_split_number_two_stage");
    if (n < 0 || n > n_max) {
        throw DomainError("mz_split_number_two_stage: n outside [0, n_max]");
    }
    const cplx r1 = cfg.s1.rho();
    const cplx t1 = cfg.s1.tau() * std::polar(1.0, cfg.phi);
    Mat out = Mat::Zero(n_max + 1, n_max + 1);
    for (int m = 0; m <= n; ++m) {
        const cplx first = sqrt_binomial(n, m) * ipow(r1, m) * ipow(t1, n - m);
        out += first * split_joint_number(m, n - m, cfg.s2, n_max).amps();
    }
    return TwoModeState(std::move(out));
}

}  // namespace qfock
