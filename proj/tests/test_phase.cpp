#include "qfock/phase.hpp"

#include <fftw3.h>
#include <gtest/gtest.h>

#include <random>

using namespace qfock;

namespace {
// Frozen 40-digit values of the coherent-state phase variance.
constexpr double kOracleVariance[][2] = {{0.0, 3.2898681336964528729},
                                         {0.5, 1.0705545532986317341},
                                         {1.0, 0.58757523127719079813},
                                         {2.0, 0.23942884063675567047},
                                         {5.0, 0.059558676471612744102}};
}  // namespace

TEST(Phase, GridGeometry) {
    const PhaseGrid g(-kPi, 16);
    EXPECT_DOUBLE_EQ(g.spacing(), kTwoPi / 16);
    EXPECT_DOUBLE_EQ(g.at(8), 0.0);
    EXPECT_THROW(PhaseGrid(0.0, 15), DomainError);
}

TEST(Phase, DistributionMatchesFftwOracle) {
    // P(phi_j) for lo = 0 is |DFT(c)_j|^2 / (2 pi) with FFTW's e^{-2 pi i jn/M} sign.
    const int m = 256;
    const FockState s = coherent_state(std::polar(2.5, 1.1));
    fftw_complex* in = fftw_alloc_complex(m);
    fftw_complex* out = fftw_alloc_complex(m);
    fftw_plan plan = fftw_plan_dft_1d(m, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    for (int j = 0; j < m; ++j) {
        in[j][0] = j < s.dim() ? s.amp(j).real() : 0.0;
        in[j][1] = j < s.dim() ? s.amp(j).imag() : 0.0;
    }
    fftw_execute(plan);
    const PhaseDistribution d = phase_distribution(s, PhaseGrid(0.0, m));
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
        const double ref = (out[j][0] * out[j][0] + out[j][1] * out[j][1]) / kTwoPi;
        worst = std::max(worst, std::abs(d.density[static_cast<std::size_t>(j)] - ref));
    }
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
    EXPECT_LT(worst, 1e-13);
    EXPECT_NEAR(d.integral(), 1.0, 1e-13);
}

TEST(Phase, NumberStatesAreFlat) {
    for (int n = 0; n < 5; ++n) {
        const PhaseDistribution d = phase_distribution(number_state(n, 6), PhaseGrid(0.3, 64));
        for (double p : d.density) {
            EXPECT_NEAR(p, 1.0 / kTwoPi, 1e-15);
        }
    }
}

TEST(Phase, DistributionSerialAndParallelBitwiseEqual) {
    const FockState s = coherent_state(cplx(3.0, -1.0));
    const PhaseGrid g(-1.0, 1000);
    EXPECT_EQ(phase_distribution(s, g, Exec::serial).density, phase_distribution(s, g, Exec::parallel).density);
}

TEST(Phase, MomentsReproduceOracle) {
    for (const auto& row : kOracleVariance) {
        const double g = std::sqrt(row[0]);
        const PhaseMoments pm = phase_moments(coherent_state(cplx(g, 0.0)), 0.0);
        EXPECT_NEAR(pm.variance, row[1], 1e-8) << "|g|^2 = " << row[0];
        EXPECT_NEAR(pm.mean, 0.0, 1e-12);
    }
}

TEST(Phase, SeriesReproducesOracle) {
    for (const auto& row : kOracleVariance) {
        EXPECT_NEAR(phase_variance_series(std::sqrt(row[0])), row[1], 1e-9) << "|g|^2 = " << row[0];
    }
}

TEST(Phase, SeriesConvergenceBudget) {
    EXPECT_THROW(phase_variance_series(3.0, 5), ConvergenceError);
}

TEST(Phase, MeanFollowsCoherentPhase) {
    const double th = 2.0;
    const PhaseMoments pm = phase_moments(coherent_state(std::polar(std::sqrt(2.0), th)), th);
    EXPECT_NEAR(pm.mean, th, 1e-12);
    EXPECT_NEAR(pm.variance, kOracleVariance[3][1], 1e-8);
}

TEST(Phase, TrigEstimatorsNumberState) {
    for (int n = 1; n < 8; ++n) {
        const TrigEstimates t = trig_estimators(number_state(n, n + 1));
        EXPECT_NEAR(t.cos, 0.0, 1e-15);
        EXPECT_NEAR(t.sin, 0.0, 1e-15);
        EXPECT_NEAR(t.cos2, (2.0 * n + 1.0) / (4.0 * n), 1e-14);
        EXPECT_NEAR(t.sin2, (2.0 * n + 1.0) / (4.0 * n), 1e-14);
    }
    EXPECT_THROW(trig_estimators(number_state(0, 3)), DomainError);
}

TEST(Phase, TrigEstimatorsCoherentProperty) {
    std::mt19937 rng(21u);
    std::uniform_real_distribution<double> r(0.5, 4.0), th(-kPi, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx g = std::polar(r(rng), th(rng));
        const TrigEstimates t = trig_estimators(coherent_state(g));
        const double extra = 0.25 / std::norm(g);
        EXPECT_NEAR(t.cos, std::cos(std::arg(g)), 1e-10);
        EXPECT_NEAR(t.sin, std::sin(std::arg(g)), 1e-10);
        EXPECT_NEAR(t.var_cos(), extra, 1e-10);
        EXPECT_NEAR(t.var_sin(), extra, 1e-10);
    }
}

TEST(Phase, PhaseStateCosRatioConverges) {
    const double r3 = phase_state_cos_ratio(0.0, 1000, PhaseNorm::raw);
    const double r4 = phase_state_cos_ratio(0.0, 10000, PhaseNorm::raw);
    EXPECT_NEAR(r3, r4, 1e-2);
    EXPECT_NEAR(phase_state_cos_ratio(0.7, 500, PhaseNorm::unit),
                phase_state_cos_ratio(0.0, 500, PhaseNorm::unit), 1e-12);
    EXPECT_THROW(phase_state_cos_ratio(kPi / 2, 10, PhaseNorm::unit), DomainError);
}

TEST(Phase, PhaseOperatorEntries) {
    const Operator p = phase_operator(4, PhaseRange::zero_2pi);
    EXPECT_DOUBLE_EQ(p(0, 0).real(), kPi);
    EXPECT_EQ(p(0, 2), cplx(0.0, 0.5));
    const Operator q = phase_operator(4, PhaseRange::pm_pi);
    EXPECT_EQ(q(1, 1), cplx(0.0, 0.0));
    EXPECT_EQ(q(0, 1), cplx(0.0, -1.0));
    EXPECT_TRUE(is_hermitian(p));
    EXPECT_TRUE(is_hermitian(q));
}

TEST(Phase, CommutatorResidualClosedForm) {
    std::mt19937 rng(8u);
    std::normal_distribution<double> g;
    const int n = 25;
    for (PhaseRange range : {PhaseRange::zero_2pi, PhaseRange::pm_pi}) {
        const Operator comm = commutator(number(n), phase_operator(n, range));
        for (int trial = 0; trial < 5; ++trial) {
            Vec psi(n + 1);
            for (int k = 0; k <= n; ++k) psi(k) = cplx(g(rng), g(rng));
            const Vec lhs = comm * psi - cplx(0.0, 1.0) * psi;
            EXPECT_LT((lhs - phase_commutator_residual(psi, range)).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(Phase, PhaseOperatorDefectClosedForm) {
    const int n = 30;
    for (double phi : {0.0, 0.9, 3.5}) {
        Vec raw(n + 1);
        for (int k = 0; k <= n; ++k) raw(k) = std::polar(1.0 / std::sqrt(kTwoPi), k * phi);
        const Vec applied = phase_operator(n, PhaseRange::zero_2pi) * raw;
        EXPECT_LT((applied - phase_operator_defect(phi, n)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Phase, ShiftOperatorIdentities) {
    const int n = 10;
    const ShiftOps e = shift_ops(n);
    const Mat pp = e.e_plus * e.e_minus;
    const Mat mp = e.e_minus * e.e_plus;
    EXPECT_EQ((pp.topLeftCorner(n, n) - Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(pp(n, n), cplx(0.0, 0.0));
    Mat proj = Mat::Identity(n + 1, n + 1);
    proj(0, 0) = 0.0;
    EXPECT_EQ((mp - proj).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Phase, NumberShiftPhaseRotatesDistribution) {
    const FockState s = coherent_state(cplx(1.5, 0.0));
    const FockState t = number_shift_phase(s, 0.7);
    const PhaseMoments pm = phase_moments(t, 0.7);
    EXPECT_NEAR(pm.mean, 0.7, 1e-12);
}

TEST(Phase, DirichletKernel) {
    EXPECT_NEAR(dirichlet_kernel(0.0, 9).real(), 10.0 / kTwoPi, 1e-14);
    EXPECT_DOUBLE_EQ(dirichlet_peak_term(0.0, 9), 10.0);
    const double x = 0.37;
    EXPECT_NEAR(dirichlet_peak_term(x, 9), std::sin(10 * x) / (2 * std::sin(x / 2)), 1e-14);
    // Real part of the kernel: (2 pi)^-1 [1/2 + sin((N+1/2)x)/(2 sin(x/2))].
    EXPECT_NEAR(dirichlet_kernel(x, 9).real(),
                (0.5 + std::sin(9.5 * x) / (2 * std::sin(x / 2))) / kTwoPi, 1e-14);
    EXPECT_THROW(dirichlet_kernel(0.1, 0), DomainError);
}

TEST(Phase, EfieldCoefficientGrows) {
    const EfieldCoefficient a = efield_expect_phase_state(100);
    const EfieldCoefficient b = efield_expect_phase_state(10000);
    EXPECT_GT(b.coefficient, 100 * a.coefficient);
    EXPECT_NEAR(b.growth_ratio, 1.0, 1e-2);
    EXPECT_NEAR(a.coefficient, a.sum_sqrt / kPi, 1e-12);
}
