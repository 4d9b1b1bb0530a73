#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "bargwig/error.hpp"

namespace bargwig {

/// Uniformly spaced samples min, ..., max.
struct Axis {
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    void validate(const char* name) const {
        if (count < 2) throw InvalidArgument(std::string(name) + " axis needs at least two samples");
        if (!(max > min)) throw InvalidArgument(std::string(name) + " axis needs max > min");
    }

    [[nodiscard]] double step() const { return (max - min) / (count - 1); }
    [[nodiscard]] double operator[](int i) const {
        return i == count - 1 ? max : min + i * step();
    }
};

struct GridMetadata {
    nlohmann::json state;
    double b = 1.0;
    double hbar = 1.0;
    std::string method;
    /// Largest series truncation order used over the grid; -1 for methods
    /// that do not truncate.
    int truncation_order = -1;
    std::string timestamp;
    std::string version;
};

/// W sampled on a rectangular (q, p) lattice. values[iq * p_axis.count + ip].
struct WignerGrid {
    Axis q_axis;
    Axis p_axis;
    std::vector<double> values;
    GridMetadata metadata;

    [[nodiscard]] double at(int iq, int ip) const {
        return values[static_cast<std::size_t>(iq) * static_cast<std::size_t>(p_axis.count) +
                      static_cast<std::size_t>(ip)];
    }
};

}  // namespace bargwig
