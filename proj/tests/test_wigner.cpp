#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bargwig/oracles.hpp"
#include "bargwig/quadrature.hpp"
#include "bargwig/wigner.hpp"

using namespace bargwig;
using cd = std::complex<double>;

namespace {

const BasisParams kUnit(1.0, 1.0);
const double kInvPi = 1.0 / std::numbers::pi;

std::vector<StateSpec> catalog() {
    const double r = 1.0 / std::sqrt(2.0);
    return {
        StateSpec::fock(0),
        StateSpec::fock(1),
        StateSpec::fock(2),
        StateSpec::fock(5),
        StateSpec::fock(8),
        StateSpec::coherent({0.7, -0.4}),
        StateSpec::coherent({-1.0, 1.0}),
        StateSpec::superposition({{r, Fock{0}}, {cd(0.0, r), Fock{1}}}),
        StateSpec::superposition({{1.0, Fock{1}}, {cd(0.5, -0.5), Fock{4}}, {0.3, Fock{7}}}, true),
        StateSpec::superposition({{1.0, Coherent{{1.2, 0.3}, {}}}, {1.0, Coherent{{-1.2, -0.3}, {}}}}, true),
    };
}

double exact_factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

TEST(BuildF, OrderZeroIsOne) {
    for (cd z : {cd(0.0), cd(1.0, 2.0)}) {
        const auto F = build_F(z, 0, KernelVariant::standard);
        ASSERT_EQ(F.size(), 1);
        EXPECT_EQ(F(0, 0), cd(1.0));
    }
    EXPECT_EQ(build_F(cd(0.5, 0.5), 0, KernelVariant::scaled)(0, 0), cd(1.0));
}

TEST(BuildF, EntryOneOne) {
    const cd z(0.8, -1.1);
    const auto F = build_F(z, 3, KernelVariant::standard);
    EXPECT_NEAR(std::abs(F(1, 1) - (std::norm(z) - 1.0)), 0.0, 1e-15);
    EXPECT_NEAR(F(1, 1).real(), -laguerre(1, std::norm(z)), 1e-15);
}

TEST(BuildF, OriginIsDiagonal) {
    const auto F = build_F(0.0, 6, KernelVariant::standard);
    for (int n = 0; n <= 6; ++n) {
        for (int j = 0; j <= 6; ++j) {
            if (n == j) {
                EXPECT_DOUBLE_EQ(F(n, n).real(), (n % 2 == 0 ? 1.0 : -1.0) / exact_factorial(n));
            } else {
                EXPECT_EQ(F(n, j), cd(0.0));
            }
        }
    }
}

TEST(BuildF, ScaledRejectsOrigin) {
    EXPECT_THROW(build_F(0.0, 3, KernelVariant::scaled), InvalidArgument);
    EXPECT_THROW(build_F(0.3, -1, KernelVariant::standard), InvalidArgument);
}

TEST(BuildF, HermitianAndSymmetric) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const cd z(c(rng), c(rng));
        const auto F = build_F(z, 20, KernelVariant::standard);
        const auto S = build_F(z, 20, KernelVariant::scaled);
        for (int n = 0; n <= 20; ++n) {
            for (int j = 0; j <= 20; ++j) {
                EXPECT_LE(std::abs(F(j, n) - std::conj(F(n, j))), 1e-14 * std::max(1.0, std::abs(F(n, j))));
                EXPECT_EQ(S(n, j), S(j, n));
                EXPECT_EQ(S(n, j).imag(), 0.0);
            }
        }
    }
}

// F_nn = (-1)^n L_n(|z|^2) / n!, with the 1/(n! j!) normalization that makes
// the quadratic form reproduce the Fock closed form.
TEST(BuildF, DiagonalIsLaguerreOverFactorial) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> c(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const cd z(c(rng), c(rng));
        const auto F = build_F(z, 20, KernelVariant::standard);
        for (int n = 0; n <= 20; ++n) {
            const double expected = (n % 2 == 0 ? 1.0 : -1.0) * laguerre(n, std::norm(z)) / exact_factorial(n);
            double scale = 0.0;
            for (int s = 0; s <= n; ++s) scale += normalized_kernel_coefficient(n, n, s) * std::pow(std::norm(z), n - s);
            EXPECT_LE(std::abs(F(n, n) - expected), 1e-12 * scale) << n;
        }
    }
}

// The unnormalized kernel (standard 2F0 without 1/(n! j!)) only agrees with
// the closed form for N <= 1.
TEST(BuildF, UnnormalizedKernelFailsForFockTwo) {
    const cd z(0.3, 0.4);
    const auto v = derivative_tower(StateSpec::fock(2), z, 2).values;
    KernelMatrix G(z, 2, KernelVariant::standard);
    for (int n = 0; n <= 2; ++n)
        for (int j = 0; j <= 2; ++j) G(n, j) = g_kernel(n, j, z);
    const double unnormalized = std::exp(-2.0 * std::norm(z)) * quadratic_form(v, G).real() * kInvPi;
    const double closed = wigner_closed_fock(2, z, kUnit);
    EXPECT_GT(std::abs(unnormalized - closed), 0.1);
    EXPECT_NEAR(wigner_series(StateSpec::fock(2), z, {}, SeriesVariant::standard, kUnit), closed, 1e-15);
}

TEST(WignerSeries, VacuumAndFockOnePeaks) {
    EXPECT_NEAR(wigner_series(StateSpec::fock(0), 0.0, {}, SeriesVariant::standard, kUnit), kInvPi, 1e-15);
    EXPECT_NEAR(wigner_series(StateSpec::fock(1), 0.0, {}, SeriesVariant::standard, kUnit), -kInvPi, 1e-15);
    const BasisParams heavy(1.0, 2.5);
    EXPECT_NEAR(wigner_series(StateSpec::fock(0), 0.0, {}, SeriesVariant::standard, heavy), kInvPi / 2.5, 1e-15);
}

TEST(WignerSeries, MatchesFockClosedForm) {
    for (int n = 0; n <= 8; ++n) {
        for (double q = -3.0; q <= 3.0; q += 0.5) {
            for (double p = -3.0; p <= 3.0; p += 0.5) {
                const cd z = z_from_qp(q, p, kUnit);
                if (std::abs(z) > 3.0) continue;
                const double closed = wigner_closed_fock(n, z, kUnit);
                const double series = wigner_series(StateSpec::fock(n), z, {}, SeriesVariant::automatic, kUnit);
                EXPECT_LE(std::abs(series - closed), 1e-10 * std::abs(closed) + 1e-16) << n << " " << z;
            }
        }
    }
}

TEST(WignerSeries, MatchesCoherentClosedForm) {
    const std::vector<cd> labels = {cd(0.0), cd(0.7, -0.4), cd(-1.0, 1.0), cd(1.5, 0.0)};
    for (const auto& u : labels) {
        for (double b : {0.7, 1.0, 1.8}) {
            const BasisParams basis(b);
            const auto state = StateSpec::coherent(u);
            for (cd z : {cd(0.0), cd(0.5, 0.5), cd(-1.0, 2.0), cd(3.0, -1.0)}) {
                const double closed = wigner_closed(state, z, basis);
                const double series = wigner_series(state, z, {}, SeriesVariant::automatic, basis);
                EXPECT_LE(std::abs(series - closed), 1e-12) << u << " " << z;
            }
        }
    }
}

TEST(WignerSeries, ScaledVariantRejectsOrigin) {
    EXPECT_THROW(wigner_series(StateSpec::fock(1), 0.0, {}, SeriesVariant::scaled, kUnit), InvalidArgument);
}

TEST(WignerSeries, RejectsCrossWidthCoherent) {
    EXPECT_THROW(wigner_series(StateSpec::coherent(0.5, 1.5), 0.1, {}, SeriesVariant::standard, kUnit),
                 InvalidArgument);
}

TEST(WignerSeries, AutomaticSelectsScaledAwayFromOrigin) {
    const auto s = StateSpec::fock(3);
    EXPECT_EQ(wigner_series_detailed(s, cd(1.0, 1.0), {}, SeriesVariant::automatic, kUnit).variant,
              KernelVariant::standard);
    EXPECT_EQ(wigner_series_detailed(s, cd(2.0, 1.0), {}, SeriesVariant::automatic, kUnit).variant,
              KernelVariant::scaled);
}

TEST(WignerSeries, RealnessAcrossCatalog) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> radius(0.0, 4.0), angle(0.0, 2.0 * std::numbers::pi);
    for (const auto& state : catalog()) {
        for (int i = 0; i < 500; ++i) {
            const cd z = std::polar(radius(rng), angle(rng));
            const int order = choose_truncation(state, z, {});
            const auto v = derivative_tower(state, z, order).values;
            const auto form = quadratic_form(v, build_F(z, order, KernelVariant::standard));
            EXPECT_LE(std::abs(form.imag()), 1e-10 * std::max(1.0, std::abs(form)));
        }
    }
}

TEST(WignerSeries, VariantAgreementOnAnnulus) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> radius(0.5, 4.0), angle(0.0, 2.0 * std::numbers::pi);
    for (const auto& state : catalog()) {
        for (int i = 0; i < 200; ++i) {
            const cd z = std::polar(radius(rng), angle(rng));
            const double a = wigner_series(state, z, {}, SeriesVariant::standard, kUnit);
            const double b = wigner_series(state, z, {}, SeriesVariant::scaled, kUnit);
            EXPECT_LE(std::abs(a - b), 1e-9 * std::max(std::abs(a), std::abs(b))) << z;
        }
    }
}

TEST(WignerSeries, FockDependsOnlyOnModulus) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> radius(0.0, 3.0), angle(0.0, 2.0 * std::numbers::pi);
    for (int n = 0; n <= 8; ++n) {
        for (int i = 0; i < 30; ++i) {
            const double r = radius(rng);
            const double a = wigner_series(StateSpec::fock(n), std::polar(r, angle(rng)), {}, SeriesVariant::standard, kUnit);
            const double b = wigner_series(StateSpec::fock(n), std::polar(r, angle(rng)), {}, SeriesVariant::standard, kUnit);
            EXPECT_LE(std::abs(a - b), 1e-11 * std::max(kInvPi, std::abs(a)));
        }
    }
}

TEST(WignerSeries, BoundedByOneOverPiHbar) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (const auto& state : catalog()) {
        for (int i = 0; i < 200; ++i) {
            const double w = wigner_series(state, cd(c(rng), c(rng)), {}, SeriesVariant::automatic, kUnit);
            EXPECT_LE(std::abs(w), kInvPi + 1e-9);
        }
    }
}

TEST(Truncation, ExactDegrees) {
    EXPECT_EQ(choose_truncation(StateSpec::fock(5), cd(1.0, 1.0), {}), 5);
    const auto s = StateSpec::superposition({{0.5, Fock{0}}, {0.5, Fock{1}}, {0.5, Fock{2}}, {0.5, Fock{3}}});
    EXPECT_EQ(choose_truncation(s, cd(0.2, 0.1), {}), 3);
    TruncationPolicy exact;
    exact.mode = TruncationMode::exact_degree;
    EXPECT_THROW(choose_truncation(StateSpec::coherent(1.0), 1.0, exact), InvalidArgument);
}

TEST(Truncation, AdaptiveCoherentRegression) {
    const auto s = StateSpec::coherent(1.0);
    const int order = choose_truncation(s, 1.0, {});
    EXPECT_EQ(order, 19);
    EXPECT_LE(order, 40);
    // The oracle fixes what "converged" means at this point.
    const double series = wigner_series(s, 1.0, {}, SeriesVariant::standard, kUnit);
    const double oracle = wigner_phase_integral(s, 1.0, kUnit);
    EXPECT_NEAR(series, oracle, 1e-9);
}

TEST(Truncation, CapRaisesConvergenceError) {
    TruncationPolicy tight;
    tight.max_order = 3;
    try {
        choose_truncation(StateSpec::coherent({1.5, 0.0}), cd(2.0, 0.0), tight);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.estimate(), tight.tail_tolerance);
    }
    TruncationPolicy bad;
    bad.max_order = 0;
    EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(ClosedForms, FockValues) {
    EXPECT_DOUBLE_EQ(wigner_closed_fock(0, 0.0, kUnit), kInvPi);
    EXPECT_NEAR(wigner_closed_fock(1, std::polar(0.5, 0.3), kUnit), 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(wigner_closed_fock(2, 0.0, kUnit), kInvPi);
}

TEST(ClosedForms, GaussianValues) {
    EXPECT_DOUBLE_EQ(wigner_closed_coherent_gaussian(0.7, -0.4, 1.5, 0.7, -0.4, 1.0), kInvPi);
    EXPECT_NEAR(wigner_closed_coherent_gaussian(0.7, -0.4, 1.5, 2.2, -0.4, 1.0), std::exp(-1.0) * kInvPi, 1e-16);
    // Unit mass over the plane.
    const auto rule = gauss_legendre(200).scaled(12.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            s += rule.weights[i] * rule.weights[k] *
                 wigner_closed_coherent_gaussian(0.7, -0.4, 1.5, rule.nodes[i], rule.nodes[k], 1.0);
        }
    }
    EXPECT_NEAR(s, 1.0, 1e-8);
}

TEST(ClosedForms, CrossWidthReducesWhenWidthsMatch) {
    const cd u(0.4, -0.9);
    for (cd z : {cd(0.0), cd(1.0, 0.3), cd(-2.0, 0.5)}) {
        const double expected = std::exp(-2.0 * std::norm(z - u)) * kInvPi;
        EXPECT_NEAR(wigner_closed_coherent_crossb(u, 1.3, z, BasisParams(1.3)), expected, 1e-15);
    }
}

TEST(ClosedForms, CrossWidthMatchesGaussian) {
    const double Q = 0.7, P = -0.4, B = 1.5;
    const cd u = coherent_label(Q, P, B, 1.0);
    for (int i = 0; i <= 10; ++i) {
        for (int k = 0; k <= 10; ++k) {
            const double q = -2.0 + 0.4 * i, p = -2.0 + 0.4 * k;
            const double gauss = wigner_closed_coherent_gaussian(Q, P, B, q, p, 1.0);
            const double cross = wigner_closed_coherent_crossb(u, B, z_from_qp(q, p, kUnit), kUnit);
            EXPECT_LE(std::abs(cross - gauss), 1e-10 * gauss);
        }
    }
}

// The exponent as typeset carries (B^2 - b^2)/(Bb) on (zU + z*U*); with that
// sign the two closed forms disagree whenever B != b.
TEST(ClosedForms, PrintedCrossWidthSignDisagrees) {
    const double Q = 0.7, P = -0.4, B = 1.5, b = 1.0;
    const cd u = coherent_label(Q, P, B, 1.0);
    const cd z = z_from_qp(1.0, 1.0, kUnit);
    const double corrected = crossb_exponent(u, B, z, b);
    const double flip = 2.0 * (B * B - b * b) / (B * b) * (z * u + std::conj(z) * std::conj(u)).real();
    const double printed = std::exp(corrected + flip) * kInvPi;
    const double gauss = wigner_closed_coherent_gaussian(Q, P, B, 1.0, 1.0, 1.0);
    EXPECT_GT(std::abs(printed - gauss), 1e-3 * gauss);
    EXPECT_LE(std::abs(std::exp(corrected) * kInvPi - gauss), 1e-12);
}

TEST(ClosedForms, BasisIndependence) {
    const double Q = 0.7, P = -0.4, B = 1.5;
    const cd u = coherent_label(Q, P, B, 1.0);
    const BasisParams b1(1.0), b2(2.0);
    const double w1 = wigner_closed_coherent_crossb(u, B, z_from_qp(1.0, 1.0, b1), b1);
    const double w2 = wigner_closed_coherent_crossb(u, B, z_from_qp(1.0, 1.0, b2), b2);
    EXPECT_NEAR(w1, w2, 1e-12);
}

TEST(ClosedForms, DispatchRejectsSuperposition) {
    const auto s = StateSpec::superposition({{1.0, Fock{0}}, {1.0, Fock{2}}}, true);
    EXPECT_THROW(wigner_closed(s, 0.1, kUnit), InvalidArgument);
}
