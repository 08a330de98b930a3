#include "qfock/network.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qfock;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
SplitterCoeffs sym(double theta, double chi) {
    return SplitterCoeffs::symmetric(std::polar(std::cos(theta), chi), std::polar(std::sin(theta), chi + kPi / 2));
}
}  // namespace

TEST(Network, SplitterValidation) {
    EXPECT_NO_THROW(SplitterCoeffs::fifty_fifty());
    EXPECT_THROW(SplitterCoeffs::symmetric(0.6, 0.8), DomainError);  // no pi/2 phase
    EXPECT_THROW(SplitterCoeffs::lossless(0.6, 0.7), DomainError);
    EXPECT_FALSE(SplitterCoeffs::lossless(0.6, 0.8).is_symmetric());
    EXPECT_TRUE(SplitterCoeffs::lossless(0.6, cplx(0.0, 0.8)).is_symmetric());
    // rho rho' conj(tau tau') must be a negative real.
    EXPECT_NO_THROW(SplitterCoeffs::asymmetric(0.6, 0.8, -0.6, 0.8));
    EXPECT_THROW(SplitterCoeffs::asymmetric(0.6, 0.8, 0.6, 0.8), DomainError);
    EXPECT_TRUE(SplitterCoeffs::asymmetric(0.6, 0.8, -0.6, 0.8).is_asymmetric());
}

TEST(Network, SingleInputSplitsBinomially) {
    const TwoModeState out = split_joint_number(3, 0, SplitterCoeffs::fifty_fifty(), 3);
    EXPECT_NEAR(std::norm(out.amp(0, 3)), 0.125, 1e-15);
    EXPECT_NEAR(std::norm(out.amp(1, 2)), 0.375, 1e-15);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-14);
}

TEST(Network, HongOuMandel) {
    const TwoModeState out = split_joint_number(1, 1, SplitterCoeffs::fifty_fifty(), 2);
    EXPECT_LT(std::abs(out.amp(1, 1)), 1e-15);
    EXPECT_NEAR(std::norm(out.amp(2, 0)), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(out.amp(0, 2)), 0.5, 1e-15);
}

TEST(Network, JointNormAndConservationProperty) {
    std::mt19937 rng(31u);
    std::uniform_real_distribution<double> u(0.05, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const SplitterCoeffs sc = sym(u(rng), u(rng));
        for (int n1 = 0; n1 <= 6; ++n1) {
            for (int n2 = 0; n2 <= 6; ++n2) {
                const TwoModeState out = split_joint_number(n1, n2, sc, 12);
                EXPECT_NEAR(out.norm_squared(), 1.0, 1e-12);
                for (int m = 0; m <= 12; ++m) {
                    for (int k = 0; k <= 12; ++k) {
                        if (m + k != n1 + n2) {
                            EXPECT_EQ(out.amp(m, k), cplx(0.0, 0.0));
                        }
                    }
                }
            }
        }
    }
    EXPECT_THROW(split_joint_number(3, 3, SplitterCoeffs::fifty_fifty(), 5), TruncationError);
}

TEST(Network, AsymmetricSplitterIsUnitary) {
    const SplitterCoeffs sc = SplitterCoeffs::asymmetric(std::polar(0.6, 0.3), std::polar(0.8, -0.2),
                                                         std::polar(0.6, 0.5 + kPi), std::polar(0.8, 1.0));
    for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2)
            EXPECT_NEAR(split_joint_number(n1, n2, sc, 8).norm_squared(), 1.0, 1e-12);
    // Orthogonal inputs stay orthogonal.
    const Vec a = split_joint_number(2, 1, sc, 3).flattened();
    const Vec b = split_joint_number(1, 2, sc, 3).flattened();
    EXPECT_LT(std::abs(a.dot(b)), 1e-14);
}

TEST(Network, CoherentInputFactorizes) {
    const cplx g(1.2, -0.4);
    const SplitterCoeffs sc = sym(0.7, 0.2);
    const TwoModeState out = split_state(coherent_state(g, 40), sc);
    EXPECT_NEAR(reduced_purity(out, Subsystem::left), 1.0, 1e-10);
    const TwoModeState prod = tensor(coherent_state(sc.rho() * g, 40), coherent_state(sc.tau() * g, 40));
    EXPECT_LT(max_abs(Mat(out.amps() - prod.amps())), 1e-10);
}

TEST(Network, SplitStateSerialParallelBitwise) {
    const FockState s = coherent_state(cplx(2.0, 1.0));
    const SplitterCoeffs sc = SplitterCoeffs::fifty_fifty();
    EXPECT_TRUE((split_state(s, sc, Exec::serial).amps().array() ==
                 split_state(s, sc, Exec::parallel).amps().array()).all());
}

TEST(Network, NumberStateEntanglement) {
    const TwoModeState out = split_state(number_state(2, 2), SplitterCoeffs::fifty_fifty());
    EXPECT_NEAR(reduced_purity(out, Subsystem::left), 0.375, 1e-14);
    EXPECT_NEAR(expect_n3(out), 1.0, 1e-14);
    EXPECT_NEAR(expect_n4(out), 1.0, 1e-14);
    EXPECT_NEAR(expect_n3n4(out), 0.5, 1e-14);
}

TEST(Network, EntanglementClosedForms) {
    for (const SplitterCoeffs& sc : {SplitterCoeffs::fifty_fifty(), sym(0.3, 1.0)}) {
        for (int n = 0; n <= 30; ++n) {
            const EntanglementReport e = entanglement_check(n, sc);
            EXPECT_NEAR(e.mean3, e.closed_mean3, 1e-10);
            EXPECT_NEAR(e.mean4, e.closed_mean4, 1e-10);
            EXPECT_NEAR(e.mean_product, e.closed_product, 1e-10);
            EXPECT_NEAR(e.brute_product, e.closed_product, 1e-10);
            EXPECT_NEAR(e.product_gap, e.closed_gap, 1e-10);
        }
    }
}

TEST(Network, BinomialMoments) {
    // Frozen: sum_m m^2 C(5,m) 0.3^m 0.7^(5-m) = 5*0.3 + 20*0.09 = 3.3.
    const BinomialMoment b = binomial_moment(5, 0.3, 0.7, 2);
    EXPECT_NEAR(b.closed, 3.3, 1e-14);
    EXPECT_NEAR(b.brute, 3.3, 1e-14);
    EXPECT_NEAR(binomial_moment(10, 2.0, 1.0, 1).brute, 10 * 2.0 * std::pow(3.0, 9), 1e-6);
    EXPECT_THROW(binomial_moment(3, 0.5, 0.5, 3), DomainError);
}

TEST(Network, FiftyFiftyMachZehnderClosedForm) {
    for (double phi : {0.0, 0.5, 2.0, kPi, 5.0}) {
        const SplitterCoeffs e = mz_effective({SplitterCoeffs::fifty_fifty(), SplitterCoeffs::fifty_fifty(), phi});
        EXPECT_LT(std::abs(e.rho() - std::polar(std::sin(phi / 2), (phi - kPi) / 2)), 1e-14);
        EXPECT_LT(std::abs(e.tau() - std::polar(std::cos(phi / 2), (phi + kPi) / 2)), 1e-14);
    }
}

TEST(Network, MachZehnderPathsAgree) {
    const MZConfig cfg{sym(0.4, 0.1), sym(1.1, -0.7), 1.9};
    for (int n = 0; n <= 6; ++n) {
        EXPECT_LT(max_abs(Mat(mz_split_number(n, cfg, n).amps() - mz_split_number_two_stage(n, cfg, n).amps())),
                  1e-12);
    }
}

TEST(Network, CompoundTableIdentities) {
    for (double phi : {0.0, 1.0, 3.0, 6.0}) {
        const MZCompoundTable t = mz_compound_table({sym(0.2, 0.5), sym(0.9, -1.0), phi});
        EXPECT_LT(t.reciprocity_residual, 1e-13);
        EXPECT_LT(t.magnitude_residual, 1e-13);
        EXPECT_LT(t.unitarity_residual, 1e-13);
        EXPECT_LT(t.phase_residual, 1e-13);
    }
}

TEST(Network, MachZehnderNeedsSymmetricSplitters) {
    const SplitterCoeffs ls = SplitterCoeffs::lossless(0.6, 0.8);
    EXPECT_THROW(mz_effective({ls, SplitterCoeffs::fifty_fifty(), 0.0}), DomainError);
    EXPECT_THROW(mz_compound_table({SplitterCoeffs::fifty_fifty(), ls, 0.0}), DomainError);
}
