#pragma once

// Non-integral evaluation of the Wigner function as a Hermitian quadratic
// form in the Bargmann derivatives,
//
//   W(z) = exp(-2|z|^2) / (pi hbar) * sum_{n,j} conj(V_n) F_{n,j} V_j,
//   V_n  = d^n f / dz^n,
//   F_{n,j} = conj(z)^n z^j 2F0(-n, -j, -1/|z|^2) / (n! j!),
//
// and the closed forms used to validate it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "bargwig/error.hpp"
#include "bargwig/phase_point.hpp"
#include "bargwig/special.hpp"
#include "bargwig/states.hpp"
#include "bargwig/summation.hpp"

namespace bargwig {

enum class KernelVariant {
    standard,  ///< F with the z powers folded in; regular at z = 0
    scaled,    ///< real-symmetric 2F0 part only; pairs with V~_n = z^n f^(n)
};

/// Scaled variant is used above this |z| when the caller asks for automatic
/// selection.
inline constexpr double kScaledVariantThreshold = 2.0;

enum class SeriesVariant { standard, scaled, automatic };

/// Truncated kernel matrix, (order+1) x (order+1), row-major.
class KernelMatrix {
public:
    KernelMatrix(complex z, int order, KernelVariant variant)
        : z_(z), order_(order), variant_(variant),
          entries_(static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(order + 1)) {}

    [[nodiscard]] complex z() const noexcept { return z_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int size() const noexcept { return order_ + 1; }
    [[nodiscard]] KernelVariant variant() const noexcept { return variant_; }

    [[nodiscard]] complex operator()(int n, int j) const { return entries_[index(n, j)]; }
    complex& operator()(int n, int j) { return entries_[index(n, j)]; }

private:
    [[nodiscard]] std::size_t index(int n, int j) const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(j);
    }

    complex z_;
    int order_;
    KernelVariant variant_;
    std::vector<complex> entries_;
};

namespace detail {

inline std::vector<complex> powers(complex z, int top) {
    std::vector<complex> out(static_cast<std::size_t>(top) + 1);
    out[0] = 1.0;
    for (int k = 1; k <= top; ++k) out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] * z;
    return out;
}

// F_{n,j} for n <= j from power tables.
inline complex standard_entry(int n, int j, const std::vector<complex>& zp, const std::vector<complex>& zcp) {
    ComplexNeumaierSum acc;
    for (int s = 0; s <= n; ++s) {
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * normalized_kernel_coefficient(n, j, s) * zcp[static_cast<std::size_t>(n - s)] *
                zp[static_cast<std::size_t>(j - s)]);
    }
    return acc.value();
}

inline double scaled_entry(int n, int j, double x) {
    NeumaierSum acc;
    double xs = 1.0;
    for (int s = 0; s <= std::min(n, j); ++s) {
        acc.add(normalized_kernel_coefficient(n, j, s) * xs);
        xs *= x;
    }
    return acc.value();
}

}  // namespace detail

/// Builds F (standard) or F~ (scaled) truncated at `order`.
inline KernelMatrix build_F(complex z, int order, KernelVariant variant) {
    if (order < 0) throw InvalidArgument("truncation order must be non-negative");
    KernelMatrix F(z, order, variant);
    if (variant == KernelVariant::standard) {
        const auto zp = detail::powers(z, order);
        const auto zcp = detail::powers(std::conj(z), order);
        for (int n = 0; n <= order; ++n) {
            for (int j = n; j <= order; ++j) {
                const complex e = detail::standard_entry(n, j, zp, zcp);
                F(n, j) = e;
                F(j, n) = std::conj(e);
            }
        }
        return F;
    }
    if (z == complex{}) throw InvalidArgument("scaled variant singular at origin");
    const double x = -1.0 / std::norm(z);
    for (int n = 0; n <= order; ++n) {
        for (int j = n; j <= order; ++j) {
            const double e = detail::scaled_entry(n, j, x);
            F(n, j) = e;
            F(j, n) = e;
        }
    }
    return F;
}

// ---------------------------------------------------------------------------
// Truncation

enum class TruncationMode { exact_degree, adaptive };

struct TruncationPolicy {
    TruncationMode mode = TruncationMode::adaptive;
    int max_order = 64;
    /// Bound on the omitted tail, in units of 1/(pi hbar).
    double tail_tolerance = 1e-12;

    void validate() const {
        if (max_order < 1) throw InvalidArgument("max_order must be at least 1");
        if (!(tail_tolerance > 0.0)) throw InvalidArgument("tail_tolerance must be positive");
    }
};

/// Truncation order for the quadratic form at z.
///
/// Polynomial Bargmann functions return their degree. Otherwise rows are
/// added one at a time; row n contributes
///   c_n = |V_n| (|F_nn| |V_n| + 2 sum_{j<n} |F_nj| |V_j|)
/// and the tail past n is bounded by a geometric series whose ratio is taken
/// over two steps (c_n can vanish on alternate rows, e.g. for cat states).
inline int choose_truncation(const StateSpec& state, complex z, const TruncationPolicy& policy) {
    policy.validate();
    if (const auto degree = state.exact_degree()) return *degree;
    if (policy.mode == TruncationMode::exact_degree) {
        throw InvalidArgument("state has no exact degree; use adaptive truncation");
    }
    const int cap = policy.max_order;
    const auto tower = derivative_tower(state, z, cap);
    const auto zp = detail::powers(z, cap);
    const auto zcp = detail::powers(std::conj(z), cap);
    const double damping = std::exp(-2.0 * std::norm(z));

    std::vector<double> vabs(static_cast<std::size_t>(cap) + 1);
    for (int n = 0; n <= cap; ++n) vabs[static_cast<std::size_t>(n)] = std::abs(tower.values[static_cast<std::size_t>(n)]);

    std::vector<double> window;  // m_n = max(c_n, c_{n-1})
    double prev_c = 0.0;
    double tail = 0.0;
    for (int n = 0; n <= cap; ++n) {
        double row = 0.0;
        if (vabs[static_cast<std::size_t>(n)] != 0.0) {
            for (int j = 0; j < n; ++j) {
                row += 2.0 * std::abs(detail::standard_entry(j, n, zp, zcp)) * vabs[static_cast<std::size_t>(j)];
            }
            row += std::abs(detail::standard_entry(n, n, zp, zcp)) * vabs[static_cast<std::size_t>(n)];
        }
        const double c = vabs[static_cast<std::size_t>(n)] * row;
        window.push_back(std::max(c, prev_c));
        prev_c = c;
        if (n < 2) continue;
        const double m_now = window[static_cast<std::size_t>(n)];
        const double m_before = window[static_cast<std::size_t>(n - 2)];
        if (m_now == 0.0 && m_before == 0.0) return n;
        if (m_now >= m_before) {
            tail = damping * m_now;
            continue;
        }
        const double ratio = m_now / m_before;
        tail = damping * 2.0 * m_now * ratio / (1.0 - ratio);
        if (tail < policy.tail_tolerance) return n;
    }
    throw ConvergenceError("adaptive truncation did not reach tail tolerance " +
                               std::to_string(policy.tail_tolerance) + " by order " + std::to_string(cap) +
                               " (tail estimate " + std::to_string(tail) + ")",
                           tail, policy.tail_tolerance);
}

// ---------------------------------------------------------------------------
// Series evaluation

struct SeriesResult {
    double value;             ///< W at the point
    int order;                ///< truncation order K
    KernelVariant variant;    ///< kernel actually used
    double imag_residual;     ///< |Im V^dagger F V|, before it is discarded
};

/// sum_{n,j} conj(v_n) F_{n,j} v_j accumulated along anti-diagonals n + j = s.
inline complex quadratic_form(const std::vector<complex>& v, const KernelMatrix& F) {
    const int top = F.order();
    ComplexNeumaierSum acc;
    for (int s = 0; s <= 2 * top; ++s) {
        for (int n = std::max(0, s - top); n <= std::min(s, top); ++n) {
            const int j = s - n;
            acc.add(std::conj(v[static_cast<std::size_t>(n)]) * F(n, j) * v[static_cast<std::size_t>(j)]);
        }
    }
    return acc.value();
}

inline SeriesResult wigner_series_detailed(const StateSpec& state, complex z, const TruncationPolicy& policy,
                                           SeriesVariant variant, const BasisParams& basis) {
    require_basis_width(state, basis);
    KernelVariant kernel = KernelVariant::standard;
    if (variant == SeriesVariant::scaled ||
        (variant == SeriesVariant::automatic && std::abs(z) > kScaledVariantThreshold)) {
        kernel = KernelVariant::scaled;
    }
    if (kernel == KernelVariant::scaled && z == complex{}) {
        throw InvalidArgument("scaled variant singular at origin");
    }

    const int order = choose_truncation(state, z, policy);
    auto v = derivative_tower(state, z, order).values;
    if (kernel == KernelVariant::scaled) {
        complex zn{1.0, 0.0};
        for (auto& entry : v) {
            entry *= zn;
            zn *= z;
        }
    }
    const KernelMatrix F = build_F(z, order, kernel);
    const complex form = quadratic_form(v, F);

    const double imag = std::abs(form.imag());
    if (imag > 1e-10 * std::max(1.0, std::abs(form.real()))) {
        throw NumericalError("quadratic form has imaginary residual " + std::to_string(imag) + " against real part " +
                             std::to_string(form.real()));
    }
    const double value = std::exp(-2.0 * std::norm(z)) * form.real() / (std::numbers::pi * basis.hbar());
    return {value, order, kernel, imag};
}

inline double wigner_series(const StateSpec& state, complex z, const TruncationPolicy& policy,
                            SeriesVariant variant, const BasisParams& basis) {
    return wigner_series_detailed(state, z, policy, variant, basis).value;
}

// ---------------------------------------------------------------------------
// Closed forms

/// (-1)^N exp(-2|z|^2) L_N(4|z|^2) / (pi hbar).
inline double wigner_closed_fock(int n, complex z, const BasisParams& basis) {
    if (n < 0) throw InvalidArgument("Fock number must be non-negative");
    const double r2 = std::norm(z);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-2.0 * r2) * laguerre(n, 4.0 * r2) / (std::numbers::pi * basis.hbar());
}

/// Wigner function of a coherent state of width B centered at (Q, P).
inline double wigner_closed_coherent_gaussian(double Q, double P, double B, double q, double p, double hbar) {
    if (!(B > 0.0)) throw InvalidArgument("coherent-state width must be positive");
    const double dq = (q - Q) / B;
    const double dp = B * (p - P) / hbar;
    return std::exp(-dq * dq - dp * dp) / (std::numbers::pi * hbar);
}

/// Label U of the coherent state of width B centered at (Q, P).
inline complex coherent_label(double Q, double P, double B, double hbar) {
    return complex(Q / B, B * P / hbar) / std::numbers::sqrt2;
}

/// Center (Q, P) of the coherent state with label U and width B.
inline std::pair<double, double> coherent_center(complex u, double B, double hbar) {
    return {std::numbers::sqrt2 * B * u.real(), std::numbers::sqrt2 * hbar * u.imag() / B};
}

/// Exponent of the coherent-state Wigner function written in the label z of
/// a basis of width b, for a state of width B and label U.
inline double crossb_exponent(complex u, double B, complex z, double b) {
    const double B2 = B * B;
    const double b2 = b * b;
    const complex zc = std::conj(z);
    const complex uc = std::conj(u);
    const complex e = (B2 * B2 - b2 * b2) / (2.0 * B2 * b2) * (z * z + zc * zc) -
                      (B2 * B2 + b2 * b2) / (B2 * b2) * (zc * z) + (b2 - B2) / (B * b) * (z * u + zc * uc) +
                      (B2 + b2) / (B * b) * (z * uc + zc * u) - 2.0 * std::norm(u);
    return e.real();
}

inline double wigner_closed_coherent_crossb(complex u, double B, complex z, const BasisParams& basis) {
    if (!(B > 0.0)) throw InvalidArgument("coherent-state width must be positive");
    return std::exp(crossb_exponent(u, B, z, basis.b())) / (std::numbers::pi * basis.hbar());
}

/// Closed form for the states that have one (Fock and coherent states).
inline double wigner_closed(const StateSpec& state, complex z, const BasisParams& basis) {
    if (const auto* f = std::get_if<Fock>(&state.variant())) return wigner_closed_fock(f->n, z, basis);
    if (const auto* c = std::get_if<Coherent>(&state.variant())) {
        return wigner_closed_coherent_crossb(c->label, c->width.value_or(basis.b()), z, basis);
    }
    throw InvalidArgument("no closed form for superposition states");
}

}  // namespace bargwig
