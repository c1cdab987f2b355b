#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "semio/coordination/index.hpp"
#include "semio/error.hpp"
#include "semio/mixture/fit.hpp"

namespace semio::io {

using nlohmann::json;

// --- fit report --------------------------------------------------------------
// {"components":[{"c":..,"b":..,"nu":..}],"M":..,"log_likelihood":..,
//  "chi_square":..,"dof":..,"r":..,"slope":..}

inline json fit_report_to_json(const mixture::FitReport& report) {
    json comps = json::array();
    for (const auto& wc : report.mixture.components())
        comps.push_back({{"c", wc.c}, {"b", wc.component.b}, {"nu", wc.component.nu}});
    return json{{"components", std::move(comps)},
                {"M", report.mixture.order()},
                {"log_likelihood", report.log_likelihood},
                {"chi_square", report.chi_square},
                {"dof", report.degrees_of_freedom},
                {"r", report.loglog_r},
                {"slope", report.loglog_slope}};
}

struct ParsedFitReport {
    mixture::LomaxMixture mixture;
    double log_likelihood;
    double chi_square;
    std::size_t degrees_of_freedom;
    double r;
    double slope;
};

inline ParsedFitReport fit_report_from_json(const json& j) {
    try {
        std::vector<mixture::WeightedComponent> comps;
        for (const auto& c : j.at("components"))
            comps.push_back({c.at("c").get<double>(),
                             {c.at("b").get<double>(), c.at("nu").get<double>()}});
        mixture::LomaxMixture mix(std::move(comps));
        if (j.at("M").get<std::size_t>() != mix.order())
            throw data_error("fit json: M does not match the component list");
        return {std::move(mix),
                j.at("log_likelihood").get<double>(),
                j.at("chi_square").get<double>(),
                j.at("dof").get<std::size_t>(),
                j.at("r").get<double>(),
                j.at("slope").get<double>()};
    } catch (const json::exception& e) {
        throw data_error(std::string("fit json: ") + e.what());
    }
}

// --- sign index and sessions --------------------------------------------------
// index: {"sign_id":["state_id",...],...}; sessions: [["sign_id",...],...]

inline json sign_index_to_json(const coordination::SignIndex& index) {
    json j = json::object();
    for (const auto& [sign, states] : index.signs) j[sign] = states;
    return j;
}

inline coordination::SignIndex sign_index_from_json(const json& j) {
    if (!j.is_object()) throw data_error("index json: expected an object");
    coordination::SignIndex index;
    try {
        for (const auto& [sign, states] : j.items())
            index.add(sign, states.get<std::vector<std::string>>());
    } catch (const json::exception& e) {
        throw data_error(std::string("index json: ") + e.what());
    }
    return index;
}

inline json sessions_to_json(const std::vector<coordination::Session>& sessions) {
    json j = json::array();
    for (const auto& s : sessions) j.push_back(s);
    return j;
}

inline std::vector<coordination::Session> sessions_from_json(const json& j) {
    if (!j.is_array()) throw data_error("sessions json: expected an array");
    try {
        return j.get<std::vector<coordination::Session>>();
    } catch (const json::exception& e) {
        throw data_error(std::string("sessions json: ") + e.what());
    }
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw data_error(what + ": malformed json");
    return j;
}

}  // namespace semio::io
