#include "qfock/kernels.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qfock;
using namespace qfock::kernels;

namespace {
Vec random_amps(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Vec v(n);
    for (int k = 0; k < n; ++k) v(k) = cplx(g(rng), g(rng));
    return v.normalized();
}
}  // namespace

TEST(Kernels, BinomialValues) {
    EXPECT_EQ(binomial(10, 3), 120.0);
    EXPECT_EQ(binomial(52, 5), 2598960.0);
    EXPECT_NEAR(binomial(60, 30) / 1.1826458156486142e17, 1.0, 1e-14);
    EXPECT_EQ(binomial(5, 7), 0.0);
    EXPECT_EQ(binomial(5, -1), 0.0);
    EXPECT_THROW(binomial(kMaxBinomialN + 1, 2), DomainError);
    EXPECT_DOUBLE_EQ(sqrt_binomial(4, 2), std::sqrt(6.0));
}

TEST(Kernels, BinomialPascalProperty) {
    for (int n = 1; n < 50; ++n) {
        for (int k = 1; k < n; ++k) {
            EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

TEST(Kernels, IntegerPower) {
    EXPECT_EQ(ipow(cplx(0.0, 0.0), 0), cplx(1.0, 0.0));
    EXPECT_EQ(ipow(cplx(0.0, 1.0), 3), cplx(0.0, -1.0));
    EXPECT_NEAR(std::abs(ipow(std::polar(1.0, 0.1), 40) - std::polar(1.0, 4.0)), 0.0, 1e-14);
    EXPECT_THROW(ipow(cplx(1.0, 0.0), -1), DomainError);
}

TEST(Kernels, PhaseDensitySerialOmpBitwise) {
    for (int n : {1, 17, 200}) {
        const Vec a = random_amps(n, 100u + n);
        EXPECT_EQ(serial::phase_density(a, -2.0, 777), omp::phase_density(a, -2.0, 777));
    }
}

TEST(Kernels, SplitSerialOmpBitwise) {
    for (int n : {1, 33, 300}) {
        const Vec a = random_amps(n, 7u + n);
        const Mat s = serial::split_amplitudes(a, std::polar(0.6, 0.2), std::polar(0.8, 0.2 + kPi / 2));
        const Mat o = omp::split_amplitudes(a, std::polar(0.6, 0.2), std::polar(0.8, 0.2 + kPi / 2));
        EXPECT_TRUE((s.array() == o.array()).all());
    }
}

TEST(Kernels, SplitMatchesDirectFormula) {
    const Vec a = random_amps(12, 5u);
    const cplx r(std::sqrt(0.3), 0.0), t(0.0, std::sqrt(0.7));
    const Mat m = split_amplitudes(a, r, t, Exec::parallel);
    for (int n = 0; n < 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const cplx ref = a(n) * std::sqrt(binomial(n, k)) * std::pow(r, k) * std::pow(t, n - k);
            EXPECT_LT(std::abs(m(k, n - k) - ref), 1e-14);
        }
    }
    EXPECT_NEAR(m.squaredNorm(), 1.0, 1e-13);
}

TEST(Kernels, SplitSizeGuard) {
    EXPECT_THROW(serial::split_amplitudes(Vec::Zero(kMaxBinomialN + 2), 1.0, 0.0), DomainError);
}

TEST(Kernels, PhaseDensityRejectsEmptyGrid) {
    EXPECT_THROW(serial::phase_density(Vec::Ones(2), 0.0, 0), DomainError);
}

TEST(Kernels, ThreadQuery) {
    EXPECT_GE(max_threads(), 1);
#ifdef QFOCK_HAVE_OPENMP
    EXPECT_TRUE(openmp_enabled());
#endif
}
