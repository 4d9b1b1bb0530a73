#pragma once

// Scalar special functions: factorials, Laguerre polynomials, the terminating
// 2F0 series and its z-weighted polynomial form, oscillator eigenfunctions.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "bargwig/summation.hpp"

namespace bargwig {

using complex = std::complex<double>;

namespace detail {

inline constexpr int kLogFactorialTable = 256;
// Integer-arithmetic threshold for the 2F0 coefficients; above it we go
// through log space.
inline constexpr int kExactCoefficientOrder = 20;

inline const std::array<double, kLogFactorialTable>& log_factorial_table() {
    static const std::array<double, kLogFactorialTable> table = [] {
        std::array<double, kLogFactorialTable> t{};
        NeumaierSum acc;
        t[0] = 0.0;
        for (int k = 1; k < kLogFactorialTable; ++k) {
            acc.add(std::log(static_cast<double>(k)));
            t[k] = acc.value();
        }
        return t;
    }();
    return table;
}

// k! as a double; exact for k <= 22.
inline double factorial(int k) {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table[static_cast<std::size_t>(k)];
}

inline std::uint64_t binomial_u64(int n, int k) {
    std::uint64_t r = 1;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

// Integer power by repeated squaring. std::pow(complex, int) goes through
// log() and is wrong at the origin.
inline complex ipow(complex base, int e) {
    complex result{1.0, 0.0};
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

}  // namespace detail

/// ln(n!). Tabulated up to n = 255, lgamma beyond.
inline double log_factorial(int n) {
    if (n < detail::kLogFactorialTable) return detail::log_factorial_table()[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// Laguerre polynomial L_n(x) by upward three-term recurrence.
inline double laguerre(int n, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// |(-n)_s (-j)_s / s!| = n! j! / (s! (n-s)! (j-s)!).
inline double hyp2f0_coefficient(int n, int j, int s) {
    if (n <= detail::kExactCoefficientOrder && j <= detail::kExactCoefficientOrder) {
        const std::uint64_t c = detail::binomial_u64(n, s) * detail::binomial_u64(j, s);
        return static_cast<double>(c) * detail::factorial(s);
    }
    return std::exp(log_factorial(n) + log_factorial(j) - log_factorial(s) - log_factorial(n - s) -
                    log_factorial(j - s));
}

/// 1 / (s! (n-s)! (j-s)!), the coefficient of the normalized kernel.
inline double normalized_kernel_coefficient(int n, int j, int s) {
    if (n <= detail::kExactCoefficientOrder && j <= detail::kExactCoefficientOrder) {
        return 1.0 / (detail::factorial(s) * detail::factorial(n - s) * detail::factorial(j - s));
    }
    return std::exp(-log_factorial(s) - log_factorial(n - s) - log_factorial(j - s));
}

/// Terminating 2F0(-n, -j; ; x) = sum_{s=0}^{min(n,j)} (-n)_s (-j)_s x^s / s!.
inline double hyp2f0_terminating(int n, int j, double x) {
    const int top = std::min(n, j);
    NeumaierSum acc;
    double xs = 1.0;
    for (int s = 0; s <= top; ++s) {
        acc.add(hyp2f0_coefficient(n, j, s) * xs);
        xs *= x;
    }
    return acc.value();
}

/// G(n, j, z) = conj(z)^n z^j 2F0(-n, -j, -1/|z|^2), evaluated as the
/// polynomial sum_s (-1)^s n! j! / (s! (n-s)! (j-s)!) conj(z)^(n-s) z^(j-s).
/// Regular at z = 0.
inline complex g_kernel(int n, int j, complex z) {
    const int top = std::min(n, j);
    const complex zc = std::conj(z);
    ComplexNeumaierSum acc;
    for (int s = 0; s <= top; ++s) {
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * hyp2f0_coefficient(n, j, s) * (detail::ipow(zc, n - s) * detail::ipow(z, j - s)));
    }
    return acc.value();
}

/// G(n, j, z) / (n! j!), computed directly so that large orders do not
/// overflow. This is the entry that enters the quadratic form.
inline complex normalized_kernel(int n, int j, complex z) {
    const int top = std::min(n, j);
    const complex zc = std::conj(z);
    ComplexNeumaierSum acc;
    for (int s = 0; s <= top; ++s) {
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * normalized_kernel_coefficient(n, j, s) * (detail::ipow(zc, n - s) * detail::ipow(z, j - s)));
    }
    return acc.value();
}

/// Normalized oscillator eigenfunction psi_n(y) = (2^n n! sqrt(pi))^{-1/2} H_n(y) e^{-y^2/2},
/// by recurrence on the normalized functions.
inline double hermite_psi(int n, double y) {
    const double psi0 = std::exp(-0.5 * y * y) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0) return psi0;
    double prev = psi0;
    double cur = std::numbers::sqrt2 * y * psi0;
    for (int k = 1; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace bargwig
