#pragma once

// Coordinate algebra between phase space (q, p) and the coherent-state label
// sqrt(2) z = q/b + i b p / hbar.

#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "bargwig/error.hpp"

namespace bargwig {

/// Coherent-state basis: width b (b = sqrt(2) Delta q) and hbar.
class BasisParams {
public:
    BasisParams() = default;
    BasisParams(double b, double hbar = 1.0) : b_(b), hbar_(hbar) {
        if (!(b > 0.0)) throw InvalidArgument("basis width b must be positive, got " + std::to_string(b));
        if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive, got " + std::to_string(hbar));
    }

    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }

    friend bool operator==(const BasisParams&, const BasisParams&) = default;

private:
    double b_ = 1.0;
    double hbar_ = 1.0;
};

inline std::complex<double> z_from_qp(double q, double p, const BasisParams& basis) {
    return std::complex<double>(q / basis.b(), basis.b() * p / basis.hbar()) / std::numbers::sqrt2;
}

inline std::pair<double, double> qp_from_z(std::complex<double> z, const BasisParams& basis) {
    return {std::numbers::sqrt2 * basis.b() * z.real(), std::numbers::sqrt2 * basis.hbar() * z.imag() / basis.b()};
}

/// A point in phase space together with the basis it is labelled in. The
/// complex label is computed once, at construction.
class PhasePoint {
public:
    PhasePoint(double q, double p, const BasisParams& basis)
        : q_(q), p_(p), basis_(basis), z_(z_from_qp(q, p, basis)) {}

    static PhasePoint from_z(std::complex<double> z, const BasisParams& basis) {
        const auto [q, p] = qp_from_z(z, basis);
        return PhasePoint(q, p, z, basis);
    }

    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] const BasisParams& basis() const noexcept { return basis_; }
    [[nodiscard]] std::complex<double> z() const noexcept { return z_; }

private:
    PhasePoint(double q, double p, std::complex<double> z, const BasisParams& basis)
        : q_(q), p_(p), basis_(basis), z_(z) {}

    double q_;
    double p_;
    BasisParams basis_;
    std::complex<double> z_;
};

/// Wirtinger derivatives in terms of the phase-space gradient:
///   d/dz  = q_coeff d/dq - i p_coeff d/dp
///   d/dz* = q_coeff d/dq + i p_coeff d/dp
/// with q_coeff = b/sqrt2 and p_coeff = hbar/(b sqrt2).
struct WirtingerCoefficients {
    double q_coeff;
    double p_coeff;

    [[nodiscard]] std::complex<double> d_dz(double df_dq, double df_dp) const {
        return {q_coeff * df_dq, -p_coeff * df_dp};
    }
    [[nodiscard]] std::complex<double> d_dzbar(double df_dq, double df_dp) const {
        return {q_coeff * df_dq, p_coeff * df_dp};
    }
};

inline WirtingerCoefficients wirtinger_coefficients(const BasisParams& basis) {
    return {basis.b() / std::numbers::sqrt2, basis.hbar() / (basis.b() * std::numbers::sqrt2)};
}

}  // namespace bargwig
