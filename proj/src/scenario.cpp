#include "sdn5g/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdn5g/error.hpp"

namespace sdn5g {

namespace {

using nlohmann::json;

// Three macro cells: eNB1-eNB2 400 m apart and heavily loaded, eNB3 500 m
// from eNB1 and lightly loaded. One vehicular UE drives from eNB1 to eNB2.
constexpr std::string_view kThreeCell = R"({
  "name": "three-cell",
  "duration_s": 20,
  "tick_ms": 100,
  "seed": 1,
  "pathloss": {"exponent": 3.5, "reference_loss_db": 38.57, "reference_distance_m": 1,
               "shadowing_sigma_db": 8},
  "policy": {"kind": "distributed-a3", "hysteresis_db": 3, "time_to_trigger_ms": 256,
             "similarity_window_db": 3, "l3_filter_k": 4},
  "cells": [
    {"name": "eNB1", "x": 0,   "y": 0,   "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 20, "background_demand_bps": 1e6},
    {"name": "eNB2", "x": 400, "y": 0,   "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 20, "background_demand_bps": 1e6},
    {"name": "eNB3", "x": 0,   "y": 500, "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 2,  "background_demand_bps": 1e6}
  ],
  "ues": [
    {"x": 20, "y": 0, "vx": 20, "vy": 0, "demand_bps": 2e6}
  ]
}
)";

// Same deployment with a seeded fleet of vehicular UEs leaving eNB1 towards
// eNB2, fanned out up to 45 degrees so part of it crosses the eNB2/eNB3 border.
constexpr std::string_view kThreeCellFleet = R"({
  "name": "three-cell-fleet",
  "duration_s": 20,
  "tick_ms": 100,
  "seed": 1,
  "pathloss": {"exponent": 3.5, "reference_loss_db": 38.57, "reference_distance_m": 1,
               "shadowing_sigma_db": 8},
  "policy": {"kind": "distributed-a3", "hysteresis_db": 3, "time_to_trigger_ms": 256,
             "similarity_window_db": 3, "l3_filter_k": 4},
  "cells": [
    {"name": "eNB1", "x": 0,   "y": 0,   "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 20, "background_demand_bps": 1e6},
    {"name": "eNB2", "x": 400, "y": 0,   "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 20, "background_demand_bps": 1e6},
    {"name": "eNB3", "x": 0,   "y": 500, "tx_power_dbm": 46, "bandwidth_hz": 5e6,
     "background_ues": 2,  "background_demand_bps": 1e6}
  ],
  "ues": [],
  "fleet": {"count": 10, "center_x": 50, "center_y": 100, "radius_m": 50, "speed_mps": 20,
            "heading_min_deg": 0, "heading_max_deg": 45, "demand_bps": 2e6}
}
)";

[[noreturn]] void schema(const std::string& field, const std::string& what) {
    throw ConfigError(ConfigError::Kind::Schema, field, "schema error at '" + field + "': " + what);
}

[[noreturn]] void out_of_range(const std::string& field, const std::string& what) {
    throw ConfigError(ConfigError::Kind::Range, field, "range error at '" + field + "': " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) schema(where, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) schema(where.empty() ? k : where + "." + k, "unknown key");
}

std::string path_of(const std::string& where, const char* key) {
    return where.empty() ? std::string(key) : where + "." + key;
}

double number(const json& obj, const std::string& where, const char* key, double fallback,
              bool required = false) {
    if (!obj.contains(key)) {
        if (required) schema(path_of(where, key), "missing required key");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) schema(path_of(where, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) out_of_range(path_of(where, key), "must be finite");
    return d;
}

double positive(const json& obj, const std::string& where, const char* key, double fallback,
                bool required = false) {
    const double d = number(obj, where, key, fallback, required);
    if (!(d > 0)) out_of_range(path_of(where, key), "must be positive");
    return d;
}

double non_negative(const json& obj, const std::string& where, const char* key, double fallback,
                    bool required = false) {
    const double d = number(obj, where, key, fallback, required);
    if (d < 0) out_of_range(path_of(where, key), "must be non-negative");
    return d;
}

std::uint64_t unsigned_int(const json& obj, const std::string& where, const char* key,
                           std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) out_of_range(path_of(where, key), "must be non-negative");
    schema(path_of(where, key), "expected an integer");
}

std::string text_field(const json& obj, const std::string& where, const char* key,
                   std::string fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) schema(path_of(where, key), "missing required key");
        return fallback;
    }
    if (!obj.at(key).is_string()) schema(path_of(where, key), "expected a string");
    return obj.at(key).get<std::string>();
}

} // namespace

Scenario parse_scenario_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        schema("<document>", text.find_first_not_of(" \t\r\n") == std::string_view::npos
                                 ? std::string("empty document")
                                 : std::string("malformed JSON: ") + e.what());
    }
    only_keys(doc, "",
              {"name", "duration_s", "tick_ms", "seed", "pathloss", "radio", "policy", "cells",
               "ues", "fleet"});

    Scenario s;
    s.name = text_field(doc, "", "name", "unnamed");
    s.duration_s = positive(doc, "", "duration_s", s.duration_s);
    s.tick_ms = positive(doc, "", "tick_ms", s.tick_ms);
    s.seed = unsigned_int(doc, "", "seed", s.seed);

    if (doc.contains("pathloss")) {
        const json& p = doc["pathloss"];
        only_keys(p, "pathloss",
                  {"exponent", "reference_loss_db", "reference_distance_m", "shadowing_sigma_db",
                   "seed"});
        s.pathloss.exponent = positive(p, "pathloss", "exponent", s.pathloss.exponent);
        s.pathloss.reference_loss_db =
            number(p, "pathloss", "reference_loss_db", s.pathloss.reference_loss_db);
        s.pathloss.reference_distance_m =
            positive(p, "pathloss", "reference_distance_m", s.pathloss.reference_distance_m);
        s.pathloss.shadowing_sigma_db =
            non_negative(p, "pathloss", "shadowing_sigma_db", s.pathloss.shadowing_sigma_db);
        s.pathloss.seed = unsigned_int(p, "pathloss", "seed", s.pathloss.seed);
    }
    if (doc.contains("radio")) {
        const json& r = doc["radio"];
        only_keys(r, "radio",
                  {"thermal_noise_dbm_per_hz", "noise_figure_db", "reference_efficiency",
                   "efficiency_cap", "background_radius_m"});
        s.radio.thermal_noise_dbm_per_hz =
            number(r, "radio", "thermal_noise_dbm_per_hz", s.radio.thermal_noise_dbm_per_hz);
        s.radio.noise_figure_db = number(r, "radio", "noise_figure_db", s.radio.noise_figure_db);
        s.radio.reference_efficiency =
            positive(r, "radio", "reference_efficiency", s.radio.reference_efficiency);
        s.radio.efficiency_cap = positive(r, "radio", "efficiency_cap", s.radio.efficiency_cap);
        s.radio.background_radius_m =
            non_negative(r, "radio", "background_radius_m", s.radio.background_radius_m);
    }
    if (doc.contains("policy")) {
        const json& p = doc["policy"];
        only_keys(p, "policy",
                  {"kind", "hysteresis_db", "time_to_trigger_ms", "similarity_window_db",
                   "l3_filter_k"});
        const std::string kind = text_field(p, "policy", "kind", "distributed-a3");
        auto parsed = parse_policy(kind);
        if (!parsed) out_of_range("policy.kind", "unknown policy '" + kind + "'");
        s.policy.kind = *parsed;
        s.policy.hysteresis_db = non_negative(p, "policy", "hysteresis_db", s.policy.hysteresis_db);
        s.policy.time_to_trigger_ms =
            non_negative(p, "policy", "time_to_trigger_ms", s.policy.time_to_trigger_ms);
        s.policy.similarity_window_db =
            non_negative(p, "policy", "similarity_window_db", s.policy.similarity_window_db);
        s.policy.l3_filter_k = non_negative(p, "policy", "l3_filter_k", s.policy.l3_filter_k);
    }

    if (!doc.contains("cells")) schema("cells", "missing required key");
    if (!doc["cells"].is_array()) schema("cells", "expected an array");
    if (doc["cells"].empty()) out_of_range("cells", "at least one cell required");
    for (std::size_t i = 0; i < doc["cells"].size(); ++i) {
        const json& c = doc["cells"][i];
        const std::string w = "cells[" + std::to_string(i) + "]";
        only_keys(c, w,
                  {"name", "x", "y", "tx_power_dbm", "bandwidth_hz", "background_ues",
                   "background_demand_bps"});
        CellConfig cell;
        cell.name = text_field(c, w, "name", "cell" + std::to_string(i + 1));
        cell.position = {number(c, w, "x", 0, true), number(c, w, "y", 0, true)};
        cell.tx_power_dbm = number(c, w, "tx_power_dbm", cell.tx_power_dbm);
        cell.bandwidth_hz = positive(c, w, "bandwidth_hz", cell.bandwidth_hz);
        cell.background_ues =
            static_cast<std::uint32_t>(unsigned_int(c, w, "background_ues", 0));
        cell.background_demand_bps =
            non_negative(c, w, "background_demand_bps", cell.background_demand_bps);
        s.cells.push_back(std::move(cell));
    }

    if (doc.contains("ues")) {
        if (!doc["ues"].is_array()) schema("ues", "expected an array");
        for (std::size_t i = 0; i < doc["ues"].size(); ++i) {
            const json& u = doc["ues"][i];
            const std::string w = "ues[" + std::to_string(i) + "]";
            only_keys(u, w, {"x", "y", "vx", "vy", "demand_bps"});
            UeSpec spec;
            spec.start = {number(u, w, "x", 0, true), number(u, w, "y", 0, true)};
            spec.velocity = {number(u, w, "vx", 0), number(u, w, "vy", 0)};
            spec.demand_bps = non_negative(u, w, "demand_bps", spec.demand_bps);
            s.ues.push_back(spec);
        }
    }

    if (doc.contains("fleet")) {
        const json& f = doc["fleet"];
        only_keys(f, "fleet",
                  {"count", "center_x", "center_y", "radius_m", "speed_mps", "heading_min_deg",
                   "heading_max_deg", "demand_bps"});
        FleetSpec fleet;
        fleet.count = static_cast<std::uint32_t>(unsigned_int(f, "fleet", "count", 0));
        fleet.center = {number(f, "fleet", "center_x", 0), number(f, "fleet", "center_y", 0)};
        fleet.radius_m = non_negative(f, "fleet", "radius_m", 0);
        fleet.speed_mps = non_negative(f, "fleet", "speed_mps", fleet.speed_mps);
        fleet.heading_min_deg = number(f, "fleet", "heading_min_deg", 0);
        fleet.heading_max_deg = number(f, "fleet", "heading_max_deg", fleet.heading_min_deg);
        if (fleet.heading_max_deg < fleet.heading_min_deg)
            out_of_range("fleet.heading_max_deg", "must be >= heading_min_deg");
        fleet.demand_bps = non_negative(f, "fleet", "demand_bps", fleet.demand_bps);
        s.fleet = fleet;
    }

    validate(s);
    return s;
}

Scenario parse_scenario(const std::string& path_or_name) {
    if (auto text = bundled_scenario(path_or_name)) return parse_scenario_text(*text);
    std::ifstream in(path_or_name, std::ios::binary);
    if (!in)
        throw ConfigError(ConfigError::Kind::MissingFile, path_or_name,
                          "scenario file not found: " + path_or_name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::optional<std::string_view> bundled_scenario(std::string_view name) {
    if (name == "three-cell") return kThreeCell;
    if (name == "three-cell-fleet") return kThreeCellFleet;
    return std::nullopt;
}

std::vector<std::string_view> bundled_scenario_names() { return {"three-cell", "three-cell-fleet"}; }

std::string scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json doc;
    doc["name"] = s.name;
    doc["duration_s"] = s.duration_s;
    doc["tick_ms"] = s.tick_ms;
    doc["seed"] = s.seed;
    doc["pathloss"] = {{"exponent", s.pathloss.exponent},
                       {"reference_loss_db", s.pathloss.reference_loss_db},
                       {"reference_distance_m", s.pathloss.reference_distance_m},
                       {"shadowing_sigma_db", s.pathloss.shadowing_sigma_db},
                       {"seed", s.pathloss.seed}};
    doc["radio"] = {{"thermal_noise_dbm_per_hz", s.radio.thermal_noise_dbm_per_hz},
                    {"noise_figure_db", s.radio.noise_figure_db},
                    {"reference_efficiency", s.radio.reference_efficiency},
                    {"efficiency_cap", s.radio.efficiency_cap},
                    {"background_radius_m", s.radio.background_radius_m}};
    doc["policy"] = {{"kind", policy_name(s.policy.kind)},
                     {"hysteresis_db", s.policy.hysteresis_db},
                     {"time_to_trigger_ms", s.policy.time_to_trigger_ms},
                     {"similarity_window_db", s.policy.similarity_window_db},
                     {"l3_filter_k", s.policy.l3_filter_k}};
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : s.cells)
        cells.push_back({{"name", c.name},
                         {"x", c.position.x},
                         {"y", c.position.y},
                         {"tx_power_dbm", c.tx_power_dbm},
                         {"bandwidth_hz", c.bandwidth_hz},
                         {"background_ues", c.background_ues},
                         {"background_demand_bps", c.background_demand_bps}});
    doc["cells"] = std::move(cells);
    auto ues = nlohmann::ordered_json::array();
    for (const auto& u : s.ues)
        ues.push_back({{"x", u.start.x},
                       {"y", u.start.y},
                       {"vx", u.velocity.x},
                       {"vy", u.velocity.y},
                       {"demand_bps", u.demand_bps}});
    doc["ues"] = std::move(ues);
    if (s.fleet) {
        const auto& f = *s.fleet;
        doc["fleet"] = {{"count", f.count},
                        {"center_x", f.center.x},
                        {"center_y", f.center.y},
                        {"radius_m", f.radius_m},
                        {"speed_mps", f.speed_mps},
                        {"heading_min_deg", f.heading_min_deg},
                        {"heading_max_deg", f.heading_max_deg},
                        {"demand_bps", f.demand_bps}};
    }
    return doc.dump(2) + "\n";
}

} // namespace sdn5g
