#pragma once

// CSV and JSON serialization of WignerGrid.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <string>

#include <json.hpp>

#include "bargwig/grid.hpp"
#include "bargwig/version.hpp"

namespace bargwig {

/// %.17g: round-trips every double.
inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// UTC time as ISO 8601, second resolution.
inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Header "# bargwig v<version>", then "q,p,W" and one row per sample in
/// row-major order. No time-dependent content.
inline void write_csv(std::ostream& out, const WignerGrid& grid) {
    out << "# bargwig v" << kVersion << "\n";
    out << "q,p,W\n";
    for (int iq = 0; iq < grid.q_axis.count; ++iq) {
        const std::string q = format_double(grid.q_axis[iq]);
        for (int ip = 0; ip < grid.p_axis.count; ++ip) {
            out << q << ',' << format_double(grid.p_axis[ip]) << ',' << format_double(grid.at(iq, ip)) << '\n';
        }
    }
}

inline nlohmann::json axis_to_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

/// Full grid. With include_meta false the timestamp is left out so that the
/// output is reproducible.
inline nlohmann::json grid_to_json(const WignerGrid& grid, bool include_meta = true) {
    nlohmann::json meta = {
        {"state", grid.metadata.state},
        {"b", grid.metadata.b},
        {"hbar", grid.metadata.hbar},
        {"method", grid.metadata.method},
        {"truncation_order", grid.metadata.truncation_order},
        {"version", grid.metadata.version.empty() ? std::string(kVersion) : grid.metadata.version},
    };
    if (include_meta) meta["timestamp"] = grid.metadata.timestamp;
    return {
        {"q_axis", axis_to_json(grid.q_axis)},
        {"p_axis", axis_to_json(grid.p_axis)},
        {"values", grid.values},
        {"metadata", meta},
    };
}

}  // namespace bargwig
