#include "qfock/ops.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <gtest/gtest.h>

#include <random>

using namespace qfock;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Ops, LadderMatrixElements) {
    const Operator a = annihilation(4);
    const Operator ad = creation(4);
    EXPECT_DOUBLE_EQ(a(2, 3).real(), std::sqrt(3.0));
    EXPECT_DOUBLE_EQ(ad(3, 2).real(), std::sqrt(3.0));
    EXPECT_EQ(max_abs(Mat(ad - a.adjoint())), 0.0);
    EXPECT_LT(max_abs(Mat(ad * a - number(4))), 1e-14);
}

TEST(Ops, CanonicalCommutatorBreaksOnlyAtEdge) {
    const int n = 12;
    const Operator c = commutator(annihilation(n), creation(n));
    EXPECT_LT(max_abs(Mat(c.topLeftCorner(n, n) - Mat::Identity(n, n))), 1e-14);
    EXPECT_NEAR(c(n, n).real(), -static_cast<double>(n), 1e-12);
}

TEST(Ops, CommutatorShapeMismatch) {
    EXPECT_THROW(commutator(identity(2), identity(3)), DimensionError);
}

TEST(Ops, LowerRaiseMatchMatrices) {
    std::mt19937 rng(3u);
    std::normal_distribution<double> g;
    Vec v(9);
    for (int k = 0; k < 9; ++k) v(k) = cplx(g(rng), g(rng));
    EXPECT_LT(max_abs(Mat(lower(v) - annihilation(8) * v)), 1e-14);
    EXPECT_LT(max_abs(Mat(raise(v) - creation(8) * v)), 1e-14);
}

TEST(Ops, QuadraturesAreHermitian) {
    const ModeScale ms(2.5);
    EXPECT_TRUE(is_hermitian(quadrature_q(10, ms)));
    EXPECT_TRUE(is_hermitian(quadrature_p(10, ms)));
    EXPECT_FALSE(is_hermitian(annihilation(10)));
    EXPECT_NEAR(quadrature_q(3, ms)(0, 1).real(), std::sqrt(2.5), 1e-15);
}

TEST(Ops, HamiltonianNeedsOmega) {
    EXPECT_THROW(hamiltonian(3, ModeScale()), DomainError);
    const ModeScale ms = ModeScale::physical(1.0e15, 1.0e-9);
    EXPECT_NEAR(hamiltonian(3, ms)(2, 2).real(), kHbar * 1.0e15 * 2.5, 1e-30);
}

TEST(Ops, ExpectAndVariance) {
    const FockState s = number_state(3, 6);
    EXPECT_NEAR(expect(number(6), s).real(), 3.0, 0.0);
    EXPECT_NEAR(variance(number(6), s), 0.0, 1e-15);
    EXPECT_NEAR(variance(quadrature_q(6), s), 7.0, 1e-13);
    EXPECT_THROW(variance(annihilation(6), s), DomainError);
    const FockState raw = phase_state(0.0, 4, PhaseNorm::raw);
    EXPECT_NEAR(bracket(identity(4), raw).real(), 1.0 / kTwoPi, 1e-15);
    EXPECT_NEAR(expect(identity(4), raw).real(), 1.0, 1e-15);
}

TEST(Ops, MatExpAgainstEigenOracle) {
    std::mt19937 rng(5u);
    std::normal_distribution<double> g;
    for (double scale : {0.1, 1.0, 5.0, 20.0}) {
        Mat a(6, 6);
        for (int i = 0; i < 36; ++i) a.data()[i] = scale * cplx(g(rng), g(rng));
        const Mat ours = mat_exp(a);
        const Mat ref = a.exp();
        EXPECT_LT(max_abs(Mat(ours - ref)) / max_abs(ref), 1e-11) << "scale " << scale;
    }
}

TEST(Ops, MatExpKnownValues) {
    Mat z = Mat::Zero(3, 3);
    EXPECT_LT(max_abs(Mat(mat_exp(z) - Mat::Identity(3, 3))), 1e-16);
    Mat rot(2, 2);
    rot << 0.0, -1.0, 1.0, 0.0;
    const Mat r = mat_exp(rot * 0.7);
    EXPECT_NEAR(r(0, 0).real(), std::cos(0.7), 1e-15);
    EXPECT_NEAR(r(1, 0).real(), std::sin(0.7), 1e-15);
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = NAN;
    EXPECT_THROW(mat_exp(bad), DomainError);
    EXPECT_THROW(mat_exp(Mat::Identity(2, 2) * cplx(800.0, 0.0)), ConvergenceError);
}

TEST(Ops, TranslationOfVacuumIsCoherent) {
    const cplx g(0.8, -0.6);
    const int n = 40;
    const Vec v = translation(g, n) * number_state(0, n).amps();
    EXPECT_LT((v - coherent_state(g, n).amps()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Ops, TranslationGuard) {
    EXPECT_TRUE(translation_fits(cplx(1.0, 0.0), 31));
    EXPECT_FALSE(translation_fits(cplx(1.0, 0.0), 30));
    EXPECT_THROW(translation(cplx(3.0, 0.0), 40), TruncationError);
}

TEST(Ops, TranslationIsUnitaryOnLowerHalf) {
    const int n = 60;
    const Operator t = translation(std::polar(1.5, 0.4), n);
    EXPECT_LT(max_abs_lower_half(t.adjoint() * t - identity(n)), 1e-10);
    EXPECT_EQ(lower_half_limit(n), 30);
}

TEST(Ops, CbhIdentity) {
    for (cplx g : {cplx(0.3, 0.0), cplx(0.0, 1.0), std::polar(1.5, -2.2)}) {
        const CbhReport r = cbh_check(g, 60, 1e-7);
        EXPECT_TRUE(r.pass) << r.max_deviation;
    }
}
