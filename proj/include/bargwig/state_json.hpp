#pragma once

// JSON form of StateSpec:
//   {"type":"fock","n":3}
//   {"type":"coherent","re":0.7,"im":-0.4}            optional "width": B
//   {"type":"superposition","terms":[{"coeff":{"re":..,"im":..},"state":{...}}, ...]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bargwig/error.hpp"
#include "bargwig/states.hpp"

namespace bargwig {

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("state JSON is missing \"") + key + "\"");
    return j.at(key);
}

inline double require_number(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) throw InvalidArgument(std::string("state JSON field \"") + key + "\" must be a number");
    return v.get<double>();
}

inline PureState pure_state_from_json(const nlohmann::json& j) {
    const auto& type = require(j, "type");
    if (!type.is_string()) throw InvalidArgument("state JSON field \"type\" must be a string");
    const auto t = type.get<std::string>();
    if (t == "fock") {
        const auto& n = require(j, "n");
        if (!n.is_number_integer() || n.get<long long>() < 0) {
            throw InvalidArgument("Fock \"n\" must be a non-negative integer");
        }
        return Fock{n.get<int>()};
    }
    if (t == "coherent") {
        Coherent c{{require_number(j, "re"), require_number(j, "im")}, std::nullopt};
        if (j.contains("width")) {
            c.width = require_number(j, "width");
            if (!(*c.width > 0.0)) throw InvalidArgument("coherent \"width\" must be positive");
        }
        return c;
    }
    if (t == "superposition") throw InvalidArgument("superpositions cannot be nested");
    throw InvalidArgument("unknown state type \"" + t + "\"");
}

inline nlohmann::json pure_state_to_json(const PureState& s) {
    if (const auto* f = std::get_if<Fock>(&s)) return {{"type", "fock"}, {"n", f->n}};
    const auto& c = std::get<Coherent>(s);
    nlohmann::json j = {{"type", "coherent"}, {"re", c.label.real()}, {"im", c.label.imag()}};
    if (c.width) j["width"] = *c.width;
    return j;
}

}  // namespace detail

inline StateSpec state_from_json(const nlohmann::json& j, bool normalize = false) {
    const auto& type = detail::require(j, "type");
    if (type.is_string() && type.get<std::string>() == "superposition") {
        const auto& terms = detail::require(j, "terms");
        if (!terms.is_array()) throw InvalidArgument("superposition \"terms\" must be an array");
        std::vector<Term> out;
        for (const auto& t : terms) {
            const auto& coeff = detail::require(t, "coeff");
            out.push_back({{detail::require_number(coeff, "re"), detail::require_number(coeff, "im")},
                           detail::pure_state_from_json(detail::require(t, "state"))});
        }
        return StateSpec::superposition(std::move(out), normalize);
    }
    const auto s = detail::pure_state_from_json(j);
    if (const auto* f = std::get_if<Fock>(&s)) return StateSpec::fock(f->n);
    const auto& c = std::get<Coherent>(s);
    return StateSpec::coherent(c.label, c.width);
}

inline nlohmann::json state_to_json(const StateSpec& state) {
    if (const auto* s = std::get_if<Superposition>(&state.variant())) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : s->terms) {
            terms.push_back({{"coeff", {{"re", t.coeff.real()}, {"im", t.coeff.imag()}}},
                             {"state", detail::pure_state_to_json(t.state)}});
        }
        return {{"type", "superposition"}, {"terms", terms}};
    }
    return std::visit(
        [](const auto& s) -> nlohmann::json {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Superposition>) {
                return {};
            } else {
                return detail::pure_state_to_json(PureState{s});
            }
        },
        state.variant());
}

inline StateSpec load_state(const std::string& path, bool normalize = false) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read state file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("state file " + path + " is not valid JSON: " + e.what());
    }
    return state_from_json(j, normalize);
}

}  // namespace bargwig
