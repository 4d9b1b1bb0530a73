#pragma once

// Fixed-node quadrature rules on [-1, 1].

#include <cmath>
#include <numbers>
#include <vector>

#include "bargwig/error.hpp"

namespace bargwig {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    /// Affine map of the rule onto [-halfwidth, halfwidth].
    [[nodiscard]] QuadratureRule scaled(double halfwidth) const {
        QuadratureRule r = *this;
        for (auto& x : r.nodes) x *= halfwidth;
        for (auto& w : r.weights) w *= halfwidth;
        return r;
    }
};

/// Gauss-Legendre nodes and weights via Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

/// Tanh-sinh (double exponential) rule with n equally spaced abscissae in
/// t on [-3, 3].
inline QuadratureRule tanh_sinh(int n) {
    if (n < 3) throw InvalidArgument("tanh-sinh rule needs at least three nodes");
    constexpr double t_max = 3.0;
    const double h = 2.0 * t_max / (n - 1);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(n));
    rule.weights.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = -t_max + k * h;
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        const double ch = std::cosh(u);
        rule.nodes.push_back(std::tanh(u));
        rule.weights.push_back(h * 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch));
    }
    return rule;
}

}  // namespace bargwig
