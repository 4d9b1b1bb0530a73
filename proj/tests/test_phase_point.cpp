#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bargwig/phase_point.hpp"

using namespace bargwig;

TEST(PhasePoint, OriginMapsToOrigin) {
    EXPECT_EQ(z_from_qp(0.0, 0.0, BasisParams(2.5, 0.3)), std::complex<double>(0.0));
    const auto [q, p] = qp_from_z(0.0, BasisParams(0.4));
    EXPECT_EQ(q, 0.0);
    EXPECT_EQ(p, 0.0);
}

TEST(PhasePoint, UnitPoint) {
    const BasisParams unit(1.0, 1.0);
    const auto z = z_from_qp(1.0, 1.0, unit);
    EXPECT_DOUBLE_EQ(z.real(), 1.0 / std::numbers::sqrt2);
    EXPECT_DOUBLE_EQ(z.imag(), 1.0 / std::numbers::sqrt2);
    const auto [q, p] = qp_from_z(std::complex<double>(1.0, 1.0) / std::numbers::sqrt2, unit);
    EXPECT_NEAR(q, 1.0, 1e-15);
    EXPECT_NEAR(p, 1.0, 1e-15);
}

TEST(PhasePoint, WidthScaling) {
    const double q = 0.8, p = -1.7;
    const auto z2 = z_from_qp(q, p, BasisParams(2.0));
    EXPECT_DOUBLE_EQ(z2.real(), q / 2.0 / std::numbers::sqrt2);
    EXPECT_DOUBLE_EQ(z2.imag(), 2.0 * p / std::numbers::sqrt2);
}

TEST(PhasePoint, RejectsInvalidBasis) {
    EXPECT_THROW(BasisParams(0.0), InvalidArgument);
    EXPECT_THROW(BasisParams(-1.0), InvalidArgument);
    EXPECT_THROW(BasisParams(1.0, 0.0), InvalidArgument);
}

TEST(PhasePoint, RoundTripAndModulus) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coord(-100.0, 100.0), width(0.1, 10.0), action(0.5, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double q = coord(rng), p = coord(rng);
        const BasisParams basis(width(rng), action(rng));
        const PhasePoint pt(q, p, basis);
        const auto [q2, p2] = qp_from_z(pt.z(), basis);
        EXPECT_LE(std::abs(q2 - q), 1e-14 * std::max(1.0, std::abs(q)));
        EXPECT_LE(std::abs(p2 - p), 1e-14 * std::max(1.0, std::abs(p)));
        const double b = basis.b(), h = basis.hbar();
        const double modulus = 0.5 * (q * q / (b * b) + b * b * p * p / (h * h));
        EXPECT_LE(std::abs(std::norm(pt.z()) - modulus), 1e-14 * modulus);
    }
}

TEST(PhasePoint, FromZKeepsLabel) {
    const BasisParams basis(1.7, 0.5);
    const std::complex<double> z(0.3, -2.2);
    const auto pt = PhasePoint::from_z(z, basis);
    EXPECT_EQ(pt.z(), z);
    EXPECT_NEAR(pt.q(), std::numbers::sqrt2 * 1.7 * 0.3, 1e-15);
}

TEST(Wirtinger, UnitBasis) {
    const auto wc = wirtinger_coefficients(BasisParams(1.0, 1.0));
    EXPECT_DOUBLE_EQ(wc.q_coeff, 1.0 / std::numbers::sqrt2);
    EXPECT_DOUBLE_EQ(wc.p_coeff, 1.0 / std::numbers::sqrt2);
    // d/dz of a function with gradient (1, 0) and (0, 1)
    EXPECT_EQ(wc.d_dz(1.0, 0.0), std::complex<double>(1.0 / std::numbers::sqrt2, 0.0));
    EXPECT_EQ(wc.d_dz(0.0, 1.0), std::complex<double>(0.0, -1.0 / std::numbers::sqrt2));
    EXPECT_EQ(wc.d_dzbar(0.0, 1.0), std::complex<double>(0.0, 1.0 / std::numbers::sqrt2));
}

TEST(Wirtinger, ScalingConsistency) {
    for (double b : {0.1, 0.9, 3.0}) {
        const auto wc = wirtinger_coefficients(BasisParams(b));
        EXPECT_NEAR(wc.q_coeff * std::numbers::sqrt2 / b, 1.0, 1e-15);
    }
}

TEST(Wirtinger, DerivativeOfZItself) {
    // z as a function of (q, p) has dz/dq = 1/(b sqrt2), dz/dp = i b/(hbar sqrt2);
    // applying the coefficients must give dz/dz = 1 and dz/dz* = 0.
    const BasisParams basis(1.3, 0.7);
    const auto wc = wirtinger_coefficients(basis);
    const double dq = 1.0 / (basis.b() * std::numbers::sqrt2);
    const double dp_im = basis.b() / (basis.hbar() * std::numbers::sqrt2);
    // Real and imaginary parts of z are handled separately since the
    // coefficients act on real functions.
    const auto dz_re = wc.d_dz(dq, 0.0);
    const auto dz_im = wc.d_dz(0.0, dp_im);
    const auto dzz = dz_re + std::complex<double>(0.0, 1.0) * dz_im;
    EXPECT_NEAR(dzz.real(), 1.0, 1e-15);
    EXPECT_NEAR(dzz.imag(), 0.0, 1e-15);
    const auto dzb = wc.d_dzbar(dq, 0.0) + std::complex<double>(0.0, 1.0) * wc.d_dzbar(0.0, dp_im);
    EXPECT_NEAR(std::abs(dzb), 0.0, 1e-15);
}
