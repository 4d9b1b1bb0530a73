#pragma once

// The basis width b drops out of W, so the explicit b-dependence at fixed
// (z, z*) is tied to the phase-space gradient:
//
//   b dW/db |_z = z* dW/dz + z dW/dz* = q dW/dq - p dW/dp.
//
// Checked here on the coherent-state family written in a basis of another
// width, the one family with a closed form carrying explicit b-dependence.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <json.hpp>

#include "bargwig/phase_point.hpp"
#include "bargwig/wigner.hpp"

namespace bargwig {

/// Below this the central-difference residual is rounding noise.
inline constexpr double kIdentityResidualFloor = 1e-10;

struct IdentityReport {
    PhasePoint point;
    double step;
    double lhs;              ///< b dW/db at fixed z, central difference
    double rhs_z;            ///< z* dW/dz + z dW/dz*
    double rhs_qp;           ///< q dW/dq - p dW/dp
    double rhs_directional;  ///< sqrt(q^2+p^2) n.grad W, n parallel to (q, -p)
    double residual_z;
    double residual_qp;
    double residual_directional;
    double lhs_half_step;       ///< lhs recomputed with step / 2
    double residual_half_step;  ///< max residual with step / 2
    double tolerance;
    bool passed;
    std::string diagnostic;

    [[nodiscard]] double max_residual() const { return std::max({residual_z, residual_qp, residual_directional}); }
};

/// Analytic phase-space gradient of the coherent-state Gaussian.
struct Gradient {
    double value;
    double d_dq;
    double d_dp;
};

inline Gradient coherent_gradient(double Q, double P, double B, double q, double p, double hbar) {
    const double w = wigner_closed_coherent_gaussian(Q, P, B, q, p, hbar);
    return {w, -2.0 * (q - Q) / (B * B) * w, -2.0 * B * B * (p - P) / (hbar * hbar) * w};
}

/// Checks the identity at `point` for the coherent state (U, B). The left
/// side differentiates the cross-width closed form in b with z held fixed;
/// the right sides use the analytic gradient.
inline IdentityReport check_identity_crossb(complex u, double B, const PhasePoint& point, double step) {
    if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
    const double b = point.basis().b();
    const double hbar = point.basis().hbar();
    if (!(step < b)) throw InvalidArgument("finite-difference step must be smaller than b");
    const complex z = point.z();

    const auto lhs_at = [&](double h) {
        const double up = wigner_closed_coherent_crossb(u, B, z, BasisParams(b + h, hbar));
        const double down = wigner_closed_coherent_crossb(u, B, z, BasisParams(b - h, hbar));
        return b * (up - down) / (2.0 * h);
    };

    const auto [Q, P] = coherent_center(u, B, hbar);
    const double q = point.q();
    const double p = point.p();
    const Gradient g = coherent_gradient(Q, P, B, q, p, hbar);

    const auto wc = wirtinger_coefficients(point.basis());
    const double rhs_z = (std::conj(z) * wc.d_dz(g.d_dq, g.d_dp) + z * wc.d_dzbar(g.d_dq, g.d_dp)).real();
    const double rhs_qp = q * g.d_dq - p * g.d_dp;
    double rhs_dir = 0.0;
    if (const double r = std::hypot(q, p); r > 0.0) {
        const double nq = q / r;
        const double np = -p / r;
        rhs_dir = r * (nq * g.d_dq + np * g.d_dp);
    }

    IdentityReport rep{point, step, lhs_at(step), rhs_z, rhs_qp, rhs_dir, 0, 0, 0, 0, 0, 0, false, {}};
    rep.residual_z = std::abs(rep.lhs - rhs_z);
    rep.residual_qp = std::abs(rep.lhs - rhs_qp);
    rep.residual_directional = std::abs(rep.lhs - rhs_dir);
    rep.lhs_half_step = lhs_at(0.5 * step);
    rep.residual_half_step = std::max(
        {std::abs(rep.lhs_half_step - rhs_z), std::abs(rep.lhs_half_step - rhs_qp),
         std::abs(rep.lhs_half_step - rhs_dir)});
    rep.tolerance = 1e-6 * std::max(std::abs(rep.lhs), 1.0 / (std::numbers::pi * hbar));
    rep.passed = rep.max_residual() <= rep.tolerance;
    if (rep.max_residual() > kIdentityResidualFloor && !(rep.residual_half_step < rep.max_residual())) {
        rep.diagnostic = "residual not improved by halving the step; step too large or too small";
    }
    return rep;
}

/// |W_1 - W_2| for the same physical (q, p) seen through bases b1 and b2.
inline double check_b_independence(double Q, double P, double B, double q, double p, double b1, double b2,
                                   double hbar = 1.0) {
    const complex u = coherent_label(Q, P, B, hbar);
    const BasisParams basis1(b1, hbar);
    const BasisParams basis2(b2, hbar);
    const double w1 = wigner_closed_coherent_crossb(u, B, z_from_qp(q, p, basis1), basis1);
    const double w2 = wigner_closed_coherent_crossb(u, B, z_from_qp(q, p, basis2), basis2);
    return std::abs(w1 - w2);
}

inline nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j = {
        {"q", r.point.q()},
        {"p", r.point.p()},
        {"b", r.point.basis().b()},
        {"step", r.step},
        {"lhs", r.lhs},
        {"rhs_z", r.rhs_z},
        {"rhs_qp", r.rhs_qp},
        {"rhs_directional", r.rhs_directional},
        {"residuals", {{"z", r.residual_z}, {"qp", r.residual_qp}, {"directional", r.residual_directional}}},
        {"residual_half_step", r.residual_half_step},
        {"tolerance", r.tolerance},
        {"passed", r.passed},
    };
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

}  // namespace bargwig
