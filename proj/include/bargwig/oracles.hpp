#pragma once

// Integral representations of W, used as independent references for the
// series engine: the configuration-space integral over <q+y/2|psi><psi|q-y/2>
// and the phase-space integral over f*(z+w/2) f(z-w/2). Also the
// distributional checks (marginals, normalization) on sampled grids.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bargwig/error.hpp"
#include "bargwig/grid.hpp"
#include "bargwig/phase_point.hpp"
#include "bargwig/quadrature.hpp"
#include "bargwig/states.hpp"
#include "bargwig/summation.hpp"

namespace bargwig {

enum class QuadratureKind { gauss_legendre, tanh_sinh };

struct QuadratureSpec {
    QuadratureKind rule = QuadratureKind::gauss_legendre;
    int nodes = 257;
    /// Integration cutoff in units of the (dimensionless) integration variable.
    double halfwidth = 12.0;
    /// Re-evaluate with twice the nodes and fail if the two estimates differ
    /// by more than 10 * tolerance.
    bool self_check = true;
    double tolerance = 1e-9;

    static QuadratureSpec config_default() { return {}; }
    static QuadratureSpec phase_default() {
        QuadratureSpec s;
        s.halfwidth = 12.0;
        return s;
    }

    void validate() const {
        if (nodes < 32) throw InvalidArgument("quadrature needs at least 32 nodes");
        if (!(halfwidth > 0.0)) throw InvalidArgument("quadrature halfwidth must be positive");
        if (!(tolerance > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
    }
};

inline QuadratureRule make_rule(QuadratureKind kind, int nodes) {
    return kind == QuadratureKind::gauss_legendre ? gauss_legendre(nodes) : tanh_sinh(nodes);
}

namespace detail {

template <typename Integral>
double with_self_check(const QuadratureSpec& quad, Integral&& integral, const char* what) {
    quad.validate();
    const double coarse = integral(quad.nodes);
    if (!quad.self_check) return coarse;
    const double fine = integral(2 * quad.nodes);
    if (std::abs(fine - coarse) > 10.0 * quad.tolerance) {
        throw ConvergenceError(std::string(what) + " not converged: " + std::to_string(coarse) + " with " +
                                   std::to_string(quad.nodes) + " nodes vs " + std::to_string(fine) + " with " +
                                   std::to_string(2 * quad.nodes),
                               fine, coarse);
    }
    return fine;
}

}  // namespace detail

/// W(q, p) = 1/(2 pi hbar) int dy <q+y/2|psi> <psi|q-y/2> exp(-i p y / hbar),
/// over y in [-H s, H s] with s the larger of b and the state's own width.
inline double wigner_config_integral(const StateSpec& state, double q, double p, const BasisParams& basis,
                                     const QuadratureSpec& quad = QuadratureSpec::config_default()) {
    const double scale = std::max(basis.b(), state.coherent_width().value_or(basis.b()));
    const auto integral = [&](int nodes) {
        const auto rule = make_rule(quad.rule, nodes).scaled(quad.halfwidth * scale);
        ComplexNeumaierSum acc;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double y = rule.nodes[k];
            const complex ket = position_wavefunction(state, q + 0.5 * y, basis);
            const complex bra = std::conj(position_wavefunction(state, q - 0.5 * y, basis));
            acc.add(rule.weights[k] * ket * bra * std::polar(1.0, -p * y / basis.hbar()));
        }
        const complex w = acc.value() / (2.0 * std::numbers::pi * basis.hbar());
        if (std::abs(w.imag()) * std::numbers::pi * basis.hbar() > 1e-8) {
            throw NumericalError("configuration integral has imaginary residual " + std::to_string(w.imag()));
        }
        return w.real();
    };
    return detail::with_self_check(quad, integral, "configuration-space integral");
}

/// W(z) = exp(-|z|^2)/(4 pi hbar) int d^2w/pi f*(z+w/2) f(z-w/2)
///        exp(-|w|^2/4 + (conj(z) w - z conj(w))/2),
/// with w = u + i v over [-H, H]^2 and d^2w = du dv.
inline double wigner_phase_integral(const StateSpec& state, complex z, const BasisParams& basis,
                                    const QuadratureSpec& quad = QuadratureSpec::phase_default()) {
    require_basis_width(state, basis);
    const auto integral = [&](int nodes) {
        const auto rule = make_rule(quad.rule, nodes).scaled(quad.halfwidth);
        const std::size_t m = rule.nodes.size();
        // exp(-u^2/4 - i Im(z) u) and exp(-v^2/4 + i Re(z) v): the Gaussian and
        // the phase i Im(conj(z) w) both separate in u and v.
        std::vector<complex> along_u(m);
        std::vector<complex> along_v(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double x = rule.nodes[k];
            along_u[k] = rule.weights[k] * std::exp(-0.25 * x * x) * std::polar(1.0, -z.imag() * x);
            along_v[k] = rule.weights[k] * std::exp(-0.25 * x * x) * std::polar(1.0, z.real() * x);
        }
        ComplexNeumaierSum acc;
        for (std::size_t a = 0; a < m; ++a) {
            complex row{};
            for (std::size_t c = 0; c < m; ++c) {
                const complex half_w = 0.5 * complex(rule.nodes[a], rule.nodes[c]);
                row += std::conj(bargmann(state, z + half_w)) * bargmann(state, z - half_w) * along_v[c];
            }
            acc.add(along_u[a] * row);
        }
        const complex w = acc.value() * std::exp(-std::norm(z)) / (4.0 * std::numbers::pi * basis.hbar()) /
                          std::numbers::pi;
        if (std::abs(w.imag()) * std::numbers::pi * basis.hbar() > 1e-7) {
            throw NumericalError("phase-space integral has imaginary residual " + std::to_string(w.imag()));
        }
        return w.real();
    };
    return detail::with_self_check(quad, integral, "phase-space integral");
}

// ---------------------------------------------------------------------------
// Distributional checks

struct Marginal {
    std::vector<double> q;
    std::vector<double> density;
    std::optional<std::string> warning;
};

namespace detail {

inline double trapezoid(const std::vector<double>& f, double h) {
    NeumaierSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
        acc.add(w * f[i]);
    }
    return acc.value() * h;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

/// Position density: W integrated over p at every q sample (trapezoid rule).
inline Marginal marginal_position(const WignerGrid& grid) {
    grid.q_axis.validate("q");
    grid.p_axis.validate("p");
    Marginal out;
    const double peak = detail::max_abs(grid.values);
    double edge = 0.0;
    std::vector<double> column(static_cast<std::size_t>(grid.p_axis.count));
    for (int iq = 0; iq < grid.q_axis.count; ++iq) {
        for (int ip = 0; ip < grid.p_axis.count; ++ip) column[static_cast<std::size_t>(ip)] = grid.at(iq, ip);
        edge = std::max({edge, std::abs(column.front()), std::abs(column.back())});
        out.q.push_back(grid.q_axis[iq]);
        out.density.push_back(detail::trapezoid(column, grid.p_axis.step()));
    }
    if (edge > 1e-6 * peak) {
        out.warning = "grid too narrow in p: boundary |W| = " + std::to_string(edge) + " vs peak " +
                      std::to_string(peak);
    }
    return out;
}

/// Trapezoid estimate of the integral of W over the grid.
inline double normalization(const WignerGrid& grid) {
    const auto m = marginal_position(grid);
    return detail::trapezoid(m.density, grid.q_axis.step());
}

}  // namespace bargwig
