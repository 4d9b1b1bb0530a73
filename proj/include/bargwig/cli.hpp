#pragma once

// Command-line front end. Exit codes: 0 success, 1 check failure or
// numerical failure, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bargwig/checks.hpp"
#include "bargwig/error.hpp"
#include "bargwig/evaluate.hpp"
#include "bargwig/grid_io.hpp"
#include "bargwig/state_json.hpp"
#include "bargwig/version.hpp"

namespace bargwig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names = {"series", "series-scaled", "config-integral", "phase-integral",
                                                   "closed"};
    return names;
}

namespace detail {

/// Writes to `path`, or to `fallback` when path is empty or "-".
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty() || path == "-") {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidArgument("cannot open output file " + path);
    write(file);
    if (!file) throw Error("failed writing " + path);
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct EvalArgs {
    std::string state_path;
    double qmin = -3.0, qmax = 3.0, pmin = -3.0, pmax = 3.0;
    int nq = 61, np = 61;
    double b = 1.0, hbar = 1.0;
    std::string method = "series";
    std::optional<double> tol;
    std::string out;
    std::string format = "csv";
    bool normalize = false;
    bool no_meta = false;
};

struct CheckArgs {
    std::string suite = "all";
    std::optional<double> tol;
    std::string out;
};

struct BenchArgs {
    std::string state_path;
    int grid_size = 101;
    double extent = 3.0;
    std::string methods = "series,phase-integral";
    int repeat = 3;
    std::optional<double> rmin, rmax;
    double b = 1.0, hbar = 1.0;
    std::optional<double> tol;
    std::string out;
    std::string format = "json";
    bool normalize = false;
};

inline int run_eval(const EvalArgs& a, std::ostream& out) {
    const auto state = load_state(a.state_path, a.normalize);
    const BasisParams basis(a.b, a.hbar);
    EvalOptions options;
    if (a.tol) options.set_tolerance(*a.tol);
    auto grid = evaluate_grid(state, Axis{a.qmin, a.qmax, a.nq}, Axis{a.pmin, a.pmax, a.np}, basis,
                              parse_method(a.method), options);
    grid.metadata.state = state_to_json(state);
    grid.metadata.version = kVersion;
    if (!a.no_meta) grid.metadata.timestamp = utc_timestamp();

    emit(a.out, out, [&](std::ostream& os) {
        if (a.format == "csv") {
            write_csv(os, grid);
        } else {
            os << grid_to_json(grid, !a.no_meta).dump(2) << '\n';
        }
    });
    return kExitOk;
}

inline int run_check(const CheckArgs& a, std::ostream& out) {
    const auto report = run_suite(a.suite, a.tol);
    emit(a.out, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    return report.at("passed").get<bool>() ? kExitOk : kExitFailure;
}

inline int run_bench(const BenchArgs& a, std::ostream& out) {
    if (a.repeat < 3) throw InvalidArgument("--repeat must be at least 3");
    if (a.grid_size < 2) throw InvalidArgument("--grid-size must be at least 2");
    const auto state = load_state(a.state_path, a.normalize);
    const BasisParams basis(a.b, a.hbar);
    EvalOptions options;
    if (a.tol) options.set_tolerance(*a.tol);

    std::vector<Method> methods;
    for (const auto& name : split_commas(a.methods)) methods.push_back(parse_method(name));
    if (methods.empty()) throw InvalidArgument("--methods is empty");
    for (Method m : methods) check_method_applicable(state, m, basis);

    // Sample points: the square lattice, optionally cut to an annulus in |z|.
    const Axis axis{-a.extent, a.extent, a.grid_size};
    axis.validate("bench");
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < a.grid_size; ++i) {
        for (int k = 0; k < a.grid_size; ++k) {
            const double r = std::abs(z_from_qp(axis[i], axis[k], basis));
            if (a.rmin && r < *a.rmin) continue;
            if (a.rmax && r > *a.rmax) continue;
            points.emplace_back(axis[i], axis[k]);
        }
    }
    if (points.empty()) throw InvalidArgument("no sample points inside the requested annulus");

    const auto evaluate_all = [&](Method m) {
        std::vector<double> values(points.size());
        parallel_for(points.size(), [&](std::size_t i) {
            values[i] = evaluate_point(state, points[i].first, points[i].second, basis, m, options).value;
        });
        return values;
    };
    const auto reference = evaluate_all(Method::series);

    nlohmann::json rows = nlohmann::json::array();
    for (Method m : methods) {
        std::vector<double> times;
        std::vector<double> values;
        for (int r = 0; r < a.repeat; ++r) {
            const auto start = std::chrono::steady_clock::now();
            values = evaluate_all(m);
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        double deviation = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) deviation = std::max(deviation, std::abs(values[i] - reference[i]));
        const double med = median(times);
        rows.push_back({{"method", to_string(m)},
                        {"median_seconds", med},
                        {"per_point_seconds", med / static_cast<double>(points.size())},
                        {"max_deviation_from_series", deviation}});
    }

    emit(a.out, out, [&](std::ostream& os) {
        if (a.format == "csv") {
            os << "method,median_seconds,per_point_seconds,max_deviation_from_series\n";
            for (const auto& r : rows) {
                os << r["method"].get<std::string>() << ',' << format_double(r["median_seconds"].get<double>()) << ','
                   << format_double(r["per_point_seconds"].get<double>()) << ','
                   << format_double(r["max_deviation_from_series"].get<double>()) << '\n';
            }
        } else {
            const nlohmann::json report = {{"state", state_to_json(state)},
                                           {"points", points.size()},
                                           {"repeat", a.repeat},
                                           {"threads", worker_count()},
                                           {"methods", rows}};
            os << report.dump(2) << '\n';
        }
    });
    return kExitOk;
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wigner functions from Bargmann representations", "bargwig"};
    app.set_version_flag("--version", std::string("bargwig ") + kVersion);
    app.require_subcommand(1);

    detail::EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate W on a (q, p) grid");
    eval->add_option("--state", ev.state_path, "State JSON file")->required();
    eval->add_option("--qmin", ev.qmin, "Lower q bound")->capture_default_str();
    eval->add_option("--qmax", ev.qmax, "Upper q bound")->capture_default_str();
    eval->add_option("--nq", ev.nq, "Number of q samples")->capture_default_str();
    eval->add_option("--pmin", ev.pmin, "Lower p bound")->capture_default_str();
    eval->add_option("--pmax", ev.pmax, "Upper p bound")->capture_default_str();
    eval->add_option("--np", ev.np, "Number of p samples")->capture_default_str();
    eval->add_option("--b", ev.b, "Basis width b")->capture_default_str();
    eval->add_option("--hbar", ev.hbar, "Planck constant")->capture_default_str();
    eval->add_option("--method", ev.method, "Evaluation method")
        ->check(CLI::IsMember(method_names()))
        ->capture_default_str();
    eval->add_option("--tol", ev.tol, "Series tail / quadrature tolerance");
    eval->add_option("--out", ev.out, "Output file (default stdout)");
    eval->add_option("--format", ev.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    eval->add_flag("--normalize", ev.normalize, "Rescale superposition coefficients to unit norm");
    eval->add_flag("--no-meta", ev.no_meta, "Omit the timestamp from JSON output");

    detail::CheckArgs ck;
    auto* check = app.add_subcommand("check", "Run validation suites");
    check->add_option("--suite", ck.suite, "Suite to run")
        ->check(CLI::IsMember(suite_names()))
        ->capture_default_str();
    check->add_option("--tol", ck.tol, "Override every check tolerance");
    check->add_option("--out", ck.out, "Report file (default stdout)");

    detail::BenchArgs bn;
    auto* bench = app.add_subcommand("bench", "Time evaluation methods");
    bench->add_option("--state", bn.state_path, "State JSON file")->required();
    bench->add_option("--grid-size", bn.grid_size, "Samples per axis")->capture_default_str();
    bench->add_option("--extent", bn.extent, "Grid covers [-extent, extent] in q and p")->capture_default_str();
    bench->add_option("--methods", bn.methods, "Comma-separated methods")->capture_default_str();
    bench->add_option("--repeat", bn.repeat, "Timing repeats (at least 3)")->capture_default_str();
    bench->add_option("--rmin", bn.rmin, "Keep points with |z| >= rmin");
    bench->add_option("--rmax", bn.rmax, "Keep points with |z| <= rmax");
    bench->add_option("--b", bn.b, "Basis width b")->capture_default_str();
    bench->add_option("--hbar", bn.hbar, "Planck constant")->capture_default_str();
    bench->add_option("--tol", bn.tol, "Series tail / quadrature tolerance");
    bench->add_option("--out", bn.out, "Output file (default stdout)");
    bench->add_option("--format", bn.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    bench->add_flag("--normalize", bn.normalize, "Rescale superposition coefficients to unit norm");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) return detail::run_eval(ev, out);
        if (*check) return detail::run_check(ck, out);
        if (*bench) return detail::run_bench(bn, out);
    } catch (const InvalidArgument& e) {
        err << "bargwig: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "bargwig: error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace bargwig::cli
