#pragma once

// Method dispatch and parallel grid evaluation.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "bargwig/error.hpp"
#include "bargwig/grid.hpp"
#include "bargwig/oracles.hpp"
#include "bargwig/phase_point.hpp"
#include "bargwig/states.hpp"
#include "bargwig/wigner.hpp"

namespace bargwig {

enum class Method { series, series_scaled, config_integral, phase_integral, closed };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::series_scaled: return "series-scaled";
        case Method::config_integral: return "config-integral";
        case Method::phase_integral: return "phase-integral";
        case Method::closed: return "closed";
    }
    return "?";
}

inline Method parse_method(const std::string& name) {
    for (Method m : {Method::series, Method::series_scaled, Method::config_integral, Method::phase_integral,
                     Method::closed}) {
        if (name == to_string(m)) return m;
    }
    throw InvalidArgument("unknown method \"" + name + "\"");
}

struct EvalOptions {
    TruncationPolicy truncation;
    QuadratureSpec config_quadrature = QuadratureSpec::config_default();
    QuadratureSpec phase_quadrature = QuadratureSpec::phase_default();

    /// Applies a single user tolerance to the series tail and both oracles.
    void set_tolerance(double tol) {
        if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
        truncation.tail_tolerance = tol;
        config_quadrature.tolerance = tol;
        phase_quadrature.tolerance = tol;
    }
};

struct PointValue {
    double value;
    int order;  ///< series truncation order, -1 otherwise
};

/// Rejects method/state combinations that cannot be evaluated at any point.
inline void check_method_applicable(const StateSpec& state, Method method, const BasisParams& basis) {
    if (method == Method::closed && state.is_superposition()) {
        throw InvalidArgument("method closed has no closed form for superposition states");
    }
    if (method != Method::closed && method != Method::config_integral) require_basis_width(state, basis);
}

inline PointValue evaluate_point(const StateSpec& state, double q, double p, const BasisParams& basis, Method method,
                                 const EvalOptions& options = {}) {
    const complex z = z_from_qp(q, p, basis);
    switch (method) {
        case Method::series: {
            const auto r = wigner_series_detailed(state, z, options.truncation, SeriesVariant::automatic, basis);
            return {r.value, r.order};
        }
        case Method::series_scaled: {
            const auto r = wigner_series_detailed(state, z, options.truncation, SeriesVariant::scaled, basis);
            return {r.value, r.order};
        }
        case Method::config_integral:
            return {wigner_config_integral(state, q, p, basis, options.config_quadrature), -1};
        case Method::phase_integral:
            return {wigner_phase_integral(state, z, basis, options.phase_quadrature), -1};
        case Method::closed:
            return {wigner_closed(state, z, basis), -1};
    }
    throw InvalidArgument("unknown method");
}

/// Worker count: BARGWIG_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("BARGWIG_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on the worker pool. If any call throws,
/// the exception from the smallest index is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, unsigned workers = worker_count()) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::size_t failure_index = count;
    std::exception_ptr failure;
    const auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (i < failure_index) {
                    failure_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

/// Evaluates W on the (q, p) lattice. Values are stored row-major by q, so
/// the result does not depend on scheduling.
inline WignerGrid evaluate_grid(const StateSpec& state, const Axis& q_axis, const Axis& p_axis,
                                const BasisParams& basis, Method method, const EvalOptions& options = {}) {
    q_axis.validate("q");
    p_axis.validate("p");
    check_method_applicable(state, method, basis);

    WignerGrid grid;
    grid.q_axis = q_axis;
    grid.p_axis = p_axis;
    const std::size_t np = static_cast<std::size_t>(p_axis.count);
    const std::size_t total = static_cast<std::size_t>(q_axis.count) * np;
    grid.values.assign(total, 0.0);
    std::vector<int> orders(total, -1);

    parallel_for(total, [&](std::size_t i) {
        const double q = q_axis[static_cast<int>(i / np)];
        const double p = p_axis[static_cast<int>(i % np)];
        const auto r = evaluate_point(state, q, p, basis, method, options);
        grid.values[i] = r.value;
        orders[i] = r.order;
    });

    grid.metadata.b = basis.b();
    grid.metadata.hbar = basis.hbar();
    grid.metadata.method = to_string(method);
    grid.metadata.truncation_order = *std::max_element(orders.begin(), orders.end());
    return grid;
}

}  // namespace bargwig
