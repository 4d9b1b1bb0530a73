#pragma once

// Validation suites run by `bargwig check`. Each check compares two
// independent routes to W and reports the worst residual.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "bargwig/evaluate.hpp"
#include "bargwig/geometry.hpp"
#include "bargwig/oracles.hpp"
#include "bargwig/state_json.hpp"
#include "bargwig/wigner.hpp"

namespace bargwig {

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    nlohmann::json details = nlohmann::json::object();
};

inline nlohmann::json to_json(const CheckResult& c) {
    return {{"name", c.name},
            {"passed", c.passed},
            {"max_residual", c.max_residual},
            {"tolerance", c.tolerance},
            {"details", c.details}};
}

namespace detail {

inline CheckResult finish(std::string name, double residual, double tol, nlohmann::json details = nlohmann::json::object()) {
    return {std::move(name), residual <= tol, residual, tol, std::move(details)};
}

inline double relative_error(double got, double ref) {
    return std::abs(got - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

}  // namespace detail

/// Series vs the Laguerre closed form, Fock 0..8, 21x21 grid on [-3, 3]^2.
/// Relative error.
inline CheckResult check_fock_closed_form(std::optional<double> tol = {}) {
    const BasisParams basis(1.0);
    double worst = 0.0;
    nlohmann::json per_n = nlohmann::json::object();
    for (int n = 0; n <= 8; ++n) {
        const auto state = StateSpec::fock(n);
        double worst_n = 0.0;
        for (int i = 0; i < 21; ++i) {
            for (int k = 0; k < 21; ++k) {
                const complex z = z_from_qp(-3.0 + 0.3 * i, -3.0 + 0.3 * k, basis);
                const double got = wigner_series(state, z, {}, SeriesVariant::automatic, basis);
                worst_n = std::max(worst_n, detail::relative_error(got, wigner_closed_fock(n, z, basis)));
            }
        }
        per_n[std::to_string(n)] = worst_n;
        worst = std::max(worst, worst_n);
    }
    return detail::finish("fock-closed-form", worst, tol.value_or(1e-10), {{"max_relative_error_by_n", per_n}});
}

/// Polynomial states of degree <= 8 used for the variant comparison.
inline std::vector<StateSpec> polynomial_catalog() {
    std::vector<StateSpec> out;
    for (int n = 0; n <= 8; ++n) out.push_back(StateSpec::fock(n));
    out.push_back(StateSpec::superposition({{1.0, Fock{0}}, {complex(0.0, 1.0), Fock{1}}}, true));
    out.push_back(StateSpec::superposition({{1.0, Fock{2}}, {complex(0.6, -0.3), Fock{5}}, {0.5, Fock{8}}}, true));
    return out;
}

/// Standard vs scaled kernels on 200 seeded points with 0.5 <= |z| <= 4.
/// Relative error.
inline CheckResult check_variant_agreement(std::optional<double> tol = {}) {
    const BasisParams basis(1.0);
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> r2(0.25, 16.0), angle(0.0, 2.0 * std::numbers::pi);
    const auto states = polynomial_catalog();
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const complex z = std::polar(std::sqrt(r2(rng)), angle(rng));
        for (const auto& s : states) {
            const double a = wigner_series(s, z, {}, SeriesVariant::standard, basis);
            const double b = wigner_series(s, z, {}, SeriesVariant::scaled, basis);
            worst = std::max(worst, detail::relative_error(b, a));
        }
    }
    return detail::finish("variant-agreement", worst, tol.value_or(1e-9), {{"points", 200}});
}

/// Fock(1) at the origin equals -1/pi by every method.
inline CheckResult check_negativity_witness(std::optional<double> tol = {}) {
    const BasisParams basis(1.0);
    const auto state = StateSpec::fock(1);
    nlohmann::json values = nlohmann::json::object();
    double worst = 0.0;
    for (Method m : {Method::series, Method::config_integral, Method::phase_integral, Method::closed}) {
        const double w = evaluate_point(state, 0.0, 0.0, basis, m).value;
        values[to_string(m)] = w;
        worst = std::max(worst, std::abs(w + 1.0 / std::numbers::pi));
    }
    return detail::finish("negativity-witness", worst, tol.value_or(1e-12), {{"values", values}});
}

/// States probed against the integral oracles.
inline std::vector<std::pair<std::string, StateSpec>> oracle_catalog() {
    std::vector<std::pair<std::string, StateSpec>> out;
    for (int n = 0; n <= 4; ++n) out.emplace_back("fock(" + std::to_string(n) + ")", StateSpec::fock(n));
    out.emplace_back("coherent(0.7-0.4i)", StateSpec::coherent({0.7, -0.4}));
    out.emplace_back("coherent(-1.2+0.9i)", StateSpec::coherent({-1.2, 0.9}));
    const complex u(1.0, 0.5);
    out.emplace_back("cat(1+0.5i)",
                     StateSpec::superposition({{1.0, Coherent{u, {}}}, {1.0, Coherent{-u, {}}}}, true));
    return out;
}

/// Both quadrature oracles vs the series on a 7x7 probe grid over [-3, 3]^2.
/// Absolute error in units of 1/(pi hbar).
inline CheckResult check_oracle_concordance(std::optional<double> tol = {}) {
    const BasisParams basis(1.0);
    const Axis axis{-3.0, 3.0, 7};
    nlohmann::json per_state = nlohmann::json::object();
    double worst = 0.0;
    for (const auto& [label, state] : oracle_catalog()) {
        const auto series = evaluate_grid(state, axis, axis, basis, Method::series);
        const auto config = evaluate_grid(state, axis, axis, basis, Method::config_integral);
        const auto phase = evaluate_grid(state, axis, axis, basis, Method::phase_integral);
        double dc = 0.0;
        double dp = 0.0;
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            dc = std::max(dc, std::abs(config.values[i] - series.values[i]) * std::numbers::pi);
            dp = std::max(dp, std::abs(phase.values[i] - series.values[i]) * std::numbers::pi);
        }
        per_state[label] = {{"config_integral", dc}, {"phase_integral", dp}};
        worst = std::max({worst, dc, dp});
    }
    return detail::finish("oracle-concordance", worst, tol.value_or(1e-6), {{"states", per_state}});
}

/// Normalization and position marginal on a 201x201 grid spanning six widths
/// each way. Reports the worse of the two residuals.
inline CheckResult check_marginals(std::optional<double> tol = {}) {
    const BasisParams basis(1.0);
    std::vector<std::pair<std::string, StateSpec>> states;
    for (int n = 0; n <= 3; ++n) states.emplace_back("fock(" + std::to_string(n) + ")", StateSpec::fock(n));
    states.emplace_back("coherent(0.7-0.4i)", StateSpec::coherent({0.7, -0.4}));
    const double qw = 6.0 * basis.b();
    const double pw = 6.0 * basis.hbar() / basis.b();
    const Axis q_axis{-qw, qw, 201};
    const Axis p_axis{-pw, pw, 201};
    nlohmann::json per_state = nlohmann::json::object();
    double worst = 0.0;
    for (const auto& [label, state] : states) {
        const auto grid = evaluate_grid(state, q_axis, p_axis, basis, Method::series);
        const auto m = marginal_position(grid);
        const double norm_err = std::abs(detail::trapezoid(m.density, q_axis.step()) - 1.0);
        double marg_err = 0.0;
        for (std::size_t i = 0; i < m.q.size(); ++i) {
            marg_err = std::max(marg_err, std::abs(m.density[i] - std::norm(position_wavefunction(state, m.q[i], basis))));
        }
        per_state[label] = {{"normalization_error", norm_err}, {"marginal_error", marg_err}};
        worst = std::max({worst, norm_err, marg_err});
    }
    return detail::finish("marginals-normalization", worst, tol.value_or(1e-6), {{"states", per_state}});
}

/// Identity scan over a 5x5x3 (q, p, b) lattice for (Q, P, B) = (0.7, -0.4, 1.5).
/// Residual relative to max(|lhs|, 1/(pi hbar)); also requires second-order
/// shrinkage of the residual when the b-step halves.
inline CheckResult check_identity_scan(std::optional<double> tol = {}) {
    const double Q = 0.7, P = -0.4, B = 1.5, hbar = 1.0, step = 1e-4;
    const complex u = coherent_label(Q, P, B, hbar);
    double worst = 0.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    int points = 0;
    for (double b : {0.8, 1.5, 2.5}) {
        const BasisParams basis(b, hbar);
        for (int i = 0; i < 5; ++i) {
            for (int k = 0; k < 5; ++k) {
                const PhasePoint pt(-2.0 + i, -2.0 + k, basis);
                const auto rep = check_identity_crossb(u, B, pt, step);
                const double scale = std::max(std::abs(rep.lhs), 1.0 / (std::numbers::pi * hbar));
                worst = std::max(worst, rep.max_residual() / scale);
                if (rep.max_residual() > 10.0 * kIdentityResidualFloor) {
                    min_ratio = std::min(min_ratio, rep.max_residual() / rep.residual_half_step);
                }
                ++points;
            }
        }
    }
    const double limit = tol.value_or(1e-6);
    CheckResult r = detail::finish("geometric-identity", worst, limit,
                                   {{"points", points}, {"step", step}, {"min_halving_ratio", min_ratio}});
    // Central differences: halving the step should cut the error by ~4.
    if (std::isfinite(min_ratio) && min_ratio < 3.0) r.passed = false;
    return r;
}

/// Same physical point through two bases, 100 seeded (q, p, b1, b2) draws.
inline CheckResult check_b_independence_scan(std::optional<double> tol = {}) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-3.0, 3.0), width(0.5, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double q = coord(rng), p = coord(rng), b1 = width(rng), b2 = width(rng);
        worst = std::max(worst, check_b_independence(0.7, -0.4, 1.5, q, p, b1, b2));
    }
    return detail::finish("b-independence", worst, tol.value_or(1e-11), {{"points", 100}});
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"all", "series", "oracles", "geometry"};
    return names;
}

/// Runs a suite and returns {"suite", "passed", "checks": [...]}.
inline nlohmann::json run_suite(const std::string& suite, std::optional<double> tol = {}) {
    using Check = std::function<CheckResult(std::optional<double>)>;
    std::vector<Check> checks;
    const bool all = suite == "all";
    if (all || suite == "series") {
        checks.insert(checks.end(), {check_fock_closed_form, check_variant_agreement, check_negativity_witness});
    }
    if (all || suite == "oracles") checks.insert(checks.end(), {check_oracle_concordance, check_marginals});
    if (all || suite == "geometry") checks.insert(checks.end(), {check_identity_scan, check_b_independence_scan});
    if (checks.empty()) throw InvalidArgument("unknown suite \"" + suite + "\"");

    nlohmann::json report = {{"suite", suite}, {"checks", nlohmann::json::array()}};
    bool passed = true;
    for (const auto& c : checks) {
        const auto r = c(tol);
        passed = passed && r.passed;
        report["checks"].push_back(to_json(r));
    }
    report["passed"] = passed;
    return report;
}

}  // namespace bargwig
