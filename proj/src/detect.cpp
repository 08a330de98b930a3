#include "qfock/detect.hpp"

#include <algorithm>
#include <cmath>

namespace qfock {

namespace {

struct JointSetup {
    Vec signal;  // padded signal amplitudes
    cplx beta;
    Mat joint;   // c_{m,n}, signal on rows
    int n_max;
};

JointSetup make_joint(const FockState& s, cplx gamma2, double phi2) {
    if (!std::isfinite(gamma2.real()) || !std::isfinite(gamma2.imag()) || !std::isfinite(phi2)) {
        throw DomainError("homodyne: local oscillator parameters must be finite");
    }
    const cplx beta = gamma2 * std::polar(1.0, phi2);
    // Two levels of headroom so that D^2 never touches the top of the signal basis.
    const int n = std::max(s.n_max() + 2, auto_truncation(beta) + 2);
    const FockState lo = coherent_state(beta, n);
    const double n2 = s.norm_squared();
    if (!(n2 > 0.0)) {
        throw DomainError("homodyne: zero signal state");
    }
    Vec sig = s.padded(n).amps() / std::sqrt(n2);
    Mat joint = sig * lo.amps().transpose();
    return {std::move(sig), beta, std::move(joint), n};
}

// s (i a1^dag a2 - i a2^dag a1) applied to C: mode-1 operators act as X C,
// mode-2 operators as C Y^T.
Mat apply_difference(const Mat& c, const Mat& a, double scale) {
    const Mat ad = a.adjoint();
    return cplx(0.0, scale) * (ad * c * a.transpose() - a * c * ad.transpose());
}

double frob_inner_real(const Mat& x, const Mat& y) {
    return (x.conjugate().cwiseProduct(y)).sum().real();
}

struct SignalMoments {
    double n;
    double x, y;     // <X>, <Y>
    double x2, y2;   // <X^2>, <Y^2>
    double cross;    // <i(a a - a^dag a^dag)>
};

SignalMoments signal_moments(const Vec& psi) {
    const Vec down = lower(psi);
    const Vec up = raise(psi);
    const Vec xv = up + down;
    const Vec yv = cplx(0.0, 1.0) * (up - down);
    const Vec aa = lower(down);
    const Vec adad = raise(up);
    SignalMoments m{};
    m.n = down.squaredNorm();
    m.x = psi.dot(xv).real();
    m.y = psi.dot(yv).real();
    m.x2 = xv.squaredNorm();
    m.y2 = yv.squaredNorm();
    m.cross = (cplx(0.0, 1.0) * psi.dot(aa - adad)).real();
    return m;
}

double closed_mean(const SignalMoments& m, cplx beta, double scale) {
    const double phi = std::arg(beta);
    const double b = std::abs(beta);
    return -scale * b * (std::sin(phi) * m.x - std::cos(phi) * m.y);
}

double closed_second(const SignalMoments& m, cplx beta, double scale) {
    const double phi = std::arg(beta);
    const double b2 = std::norm(beta);
    const double sn = std::sin(phi);
    const double cs = std::cos(phi);
    return scale * scale *
           (m.n + b2 * (sn * sn * m.x2 + cs * cs * m.y2 + std::sin(2.0 * phi) * m.cross));
}

}  // namespace

ClassicalSignal classical_signal(const ClassicalField& f1, const ClassicalField& f2, double t) {
    if (f1.amp < 0.0 || f2.amp < 0.0) {
        throw DomainError("classical_signal: field amplitudes must be non-negative");
    }
    const double p1 = f1.omega * t - f1.phase;
    const double p2 = f2.omega * t - f2.phase;
    ClassicalSignal out{};
    const double d1 = f1.amp * std::cos(p1) + f2.amp * std::sin(p2);
    const double d2 = f1.amp * std::sin(p1) + f2.amp * std::cos(p2);
    out.s1 = 0.5 * d1 * d1;
    out.s2 = 0.5 * d2 * d2;
    out.s = out.s1 - out.s2;
    out.s_filtered = f1.amp * f2.amp *
                     std::sin((f2.omega - f1.omega) * t - f2.phase + f1.phase);
    out.s_expanded = 0.5 * f1.amp * f1.amp * std::cos(2.0 * p1) -
                     0.5 * f2.amp * f2.amp * std::cos(2.0 * p2) + out.s_filtered;
    return out;
}

ClassicalField field_from_coherent(cplx gamma, double omega, const ModeScale& ms) {
    return {2.0 * std::sqrt(ms.scale()) * std::abs(gamma), std::arg(gamma), omega};
}

double homodyne_mean(const FockState& s, cplx gamma2, double phi2, const ModeScale& ms) {
    return homodyne_noise(s, gamma2, phi2, ms).mean;
}

HomodyneReport homodyne_noise(const FockState& s, cplx gamma2, double phi2, const ModeScale& ms) {
    const JointSetup j = make_joint(s, gamma2, phi2);
    const double scale = ms.scale();
    const Mat a = annihilation(j.n_max);
    const Mat dc = apply_difference(j.joint, a, scale);
    HomodyneReport rep{};
    rep.mean = frob_inner_real(j.joint, dc);
    rep.second_moment = dc.squaredNorm();  // D is Hermitian, so <D^2> = ||D psi||^2
    const double var = rep.second_moment - rep.mean * rep.mean;
    rep.variance = var < 0.0 && var >= -1e-12 ? 0.0 : var;
    const SignalMoments m = signal_moments(j.signal);
    rep.closed_mean = closed_mean(m, j.beta, scale);
    rep.closed_second_moment = closed_second(m, j.beta, scale);
    rep.joint_n_max = j.n_max;
    rep.units = ms.is_physical() ? "(V/m)^4" : "s^2";
    return rep;
}

double homodyne_mean_coherent(cplx gamma1, cplx gamma2, double phi2, const ModeScale& ms) {
    const cplx beta = gamma2 * std::polar(1.0, phi2);
    SignalMoments m{};
    m.x = 2.0 * gamma1.real();
    m.y = 2.0 * gamma1.imag();
    return closed_mean(m, beta, ms.scale());
}

QuadratureStats quadrature_stats(const FockState& s, const ModeScale& ms) {
    const int n_max = s.n_max();
    const int top_start = n_max - (n_max + 1) / 4;  // indices above this form the top quarter
    const double top = s.mass_above(top_start) / s.norm_squared();
    if (top > 1e-8) {
        throw TruncationError("quadrature_stats: state occupies the top quarter of the basis");
    }
    const Operator q = quadrature_q(n_max, ms);
    const Operator p = quadrature_p(n_max, ms);
    QuadratureStats st{};
    st.mean_q = expect(q, s).real();
    st.mean_p = expect(p, s).real();
    st.delta_q = std::sqrt(std::max(0.0, variance(q, s)));
    st.delta_p = std::sqrt(std::max(0.0, variance(p, s)));
    st.product = st.delta_q * st.delta_p;
    return st;
}

double counting_rate(const FockState& s, const ModeScale& ms, RateUnits units) {
    const double mean_n = expect(number(s.n_max()), s).real();
    if (units == RateUnits::mode) {
        return mean_n;
    }
    if (!ms.is_physical()) {
        throw DomainError("counting_rate: physical units need omega and volume");
    }
    return kHbar * *ms.omega() * kSpeedOfLight / *ms.volume() * mean_n;
}

G1Report g1_mz(const FockState& s, double phi, const ModeScale& ms) {
    const MZConfig cfg{SplitterCoeffs::fifty_fifty(), SplitterCoeffs::fifty_fifty(), phi};
    const TwoModeState out = split_state(s, mz_effective(cfg), Exec::serial);
    const double scale = ms.scale();
    const double mean_n = expect(number(s.n_max()), s).real();
    G1Report r{};
    r.port3 = scale * expect_n3(out);
    r.port4 = scale * expect_n4(out);
    r.difference = r.port4 - r.port3;
    const double sh = std::sin(0.5 * phi);
    const double ch = std::cos(0.5 * phi);
    r.closed_port3 = scale * mean_n * sh * sh;
    r.closed_port4 = scale * mean_n * ch * ch;
    r.closed_difference = scale * mean_n * std::cos(phi);
    return r;
}

G2Report g2_splitter(const FockState& s, const SplitterCoeffs& sc, const ModeScale& ms) {
    const TwoModeState out = split_state(s, sc, Exec::serial);
    const double scale = ms.scale();
    const double n2 = s.norm_squared();
    double mean_n = 0.0;
    double fact = 0.0;
    for (int n = 0; n < s.dim(); ++n) {
        const double w = std::norm(s.amp(n)) / n2;
        mean_n += w * n;
        fact += w * n * (n - 1.0);
    }
    G2Report r{};
    r.correlation = scale * scale * expect_n3n4(out);
    r.closed_correlation = scale * scale * std::norm(sc.rho()) * std::norm(sc.tau()) * fact;
    r.mean_n = mean_n;
    r.factorial_moment = fact;
    if (mean_n > 0.0) {
        r.g2 = fact / (mean_n * mean_n);
    }
    return r;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

PortOperators port_operators(int n_max, const ModeScale& ms) {
    const Mat a = annihilation(n_max);
    const Mat ad = a.adjoint();
    const Mat id = identity(n_max);
    const Mat n1 = kron(ad * a, id);
    const Mat n2 = kron(id, ad * a);
    const Mat a1d_a2 = kron(ad, a);
    const Mat a2d_a1 = kron(a, ad);
    const cplx i(0.0, 1.0);
    const double half = 0.5 * ms.scale();
    return {half * (n1 + n2 + i * a1d_a2 - i * a2d_a1), half * (n1 + n2 - i * a1d_a2 + i * a2d_a1)};
}

}  // namespace qfock
