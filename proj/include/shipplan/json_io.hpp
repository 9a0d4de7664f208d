#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "shipplan/types.hpp"

namespace shipplan {

constexpr int kSchemaVersion = 1;

using nlohmann::json;

// ---- serialization ---------------------------------------------------------

inline json to_json(const TransportMode& m) {
    json j;
    j["class"] = to_string(m.cls);
    if (m.cls == ModeClass::Fcl) j["container_index"] = m.container_index;
    return j;
}

inline json to_json(const Edge& e) {
    json j;
    j["origin"] = e.origin;
    j["dest"] = e.dest;
    j["mode"] = to_json(e.mode);
    j["transit_weeks"] = e.transit_weeks;
    if (e.capacity_kg) j["capacity_kg"] = *e.capacity_kg;
    if (const auto* c = std::get_if<PerKgCost>(&e.cost)) {
        j["cost"] = {{"kind", "per_kg"}, {"rate_cents_per_kg", c->rate_cents_per_kg}};
    } else if (const auto* c = std::get_if<LclCost>(&e.cost)) {
        j["cost"] = {{"kind", "lcl"},
                     {"bunker_cents", c->bunker_cents},
                     {"rate_cents_per_cbm", c->rate_cents_per_cbm}};
    } else if (const auto* c = std::get_if<FclCost>(&e.cost)) {
        j["cost"] = {{"kind", "fcl"},
                     {"fixed_cost_cents", c->fixed_cost_cents},
                     {"variable_cents_per_order", c->variable_cents_per_order}};
    }
    return j;
}

inline json to_json(const Instance& inst) {
    json j;
    j["schema_version"] = kSchemaVersion;
    if (inst.manifest) {
        j["manifest"] = {{"generator_version", inst.manifest->generator_version},
                         {"seed", inst.manifest->seed},
                         {"scenario", inst.manifest->scenario}};
    }
    j["horizon_weeks"] = inst.horizon_weeks;
    j["dwell_limit_weeks"] = inst.dwell_limit_weeks;
    j["booking_lead_weeks"] = inst.booking_lead_weeks;
    j["bookings_per_port_week"] = inst.bookings_per_port_week;
    json locs = json::array();
    for (const auto& l : inst.network.locations)
        locs.push_back({{"id", l.id}, {"kind", to_string(l.kind)}, {"label", l.label}});
    json edges = json::array();
    for (const auto& e : inst.network.edges) edges.push_back(to_json(e));
    j["network"] = {{"locations", locs}, {"edges", edges}};
    json orders = json::array();
    for (const auto& p : inst.orders) {
        orders.push_back({{"id", p.id},
                          {"origin", p.origin},
                          {"destination", p.destination},
                          {"gross_weight_kg", p.gross_weight_kg},
                          {"volume_cbm_e4", p.volume_cbm_e4},
                          {"air_charge_weight_kg_e4", p.air_charge_weight_kg_e4},
                          {"ready_week", p.ready_week},
                          {"earliest_week", p.earliest_week},
                          {"latest_week", p.latest_week}});
    }
    j["orders"] = orders;
    return j;
}

inline json to_json(const Leg& leg) {
    json j;
    j["origin"] = leg.origin;
    j["dest"] = leg.dest;
    j["mode"] = to_json(leg.mode);
    j["depart_week"] = leg.depart_week;
    return j;
}

inline json to_json(const ShipmentPlan& plan) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json routes = json::object();
    for (const auto& [id, legs] : plan.routes) {
        json arr = json::array();
        for (const auto& leg : legs) arr.push_back(to_json(leg));
        routes[id] = arr;
    }
    j["routes"] = routes;
    json bookings = json::array();
    for (const auto& b : plan.bookings)
        bookings.push_back({{"origin", b.origin},
                            {"dest", b.dest},
                            {"container_index", b.container_index},
                            {"depart_week", b.depart_week}});
    j["bookings"] = bookings;
    return j;
}

inline json to_json(const CostBreakdown& c) {
    return {{"fcl_fixed_cents", c.fcl_fixed_cents},
            {"fcl_variable_cents", c.fcl_variable_cents},
            {"lcl_cents", c.lcl_cents},
            {"air_cents", c.air_cents},
            {"ground_cents", c.ground_cents},
            {"penalty_cents", c.penalty_cents},
            {"total_cents", c.total_cents}};
}

inline json to_json(const ValidationReport& r) {
    json arr = json::array();
    for (const auto& v : r.violations)
        arr.push_back({{"family", to_string(v.family)},
                       {"order", v.order_id},
                       {"edge", v.edge},
                       {"week", v.week},
                       {"detail", v.detail}});
    return {{"schema_version", kSchemaVersion}, {"violations", arr}};
}

// ---- deserialization -------------------------------------------------------

inline ModeClass mode_class_from_string(const std::string& s) {
    if (s == "ground") return ModeClass::Ground;
    if (s == "air") return ModeClass::Air;
    if (s == "lcl") return ModeClass::Lcl;
    if (s == "fcl") return ModeClass::Fcl;
    throw structural_error("unknown mode class: " + s);
}

inline LocationKind location_kind_from_string(const std::string& s) {
    if (s == "supply") return LocationKind::Supply;
    if (s == "in_transit") return LocationKind::InTransit;
    if (s == "demand") return LocationKind::Demand;
    throw structural_error("unknown location kind: " + s);
}

inline TransportMode mode_from_json(const json& j) {
    TransportMode m;
    m.cls = mode_class_from_string(j.at("class").get<std::string>());
    if (m.cls == ModeClass::Fcl) m.container_index = j.at("container_index").get<int>();
    return m;
}

inline Edge edge_from_json(const json& j) {
    Edge e;
    e.origin = j.at("origin").get<std::string>();
    e.dest = j.at("dest").get<std::string>();
    e.mode = mode_from_json(j.at("mode"));
    e.transit_weeks = j.at("transit_weeks").get<int>();
    if (j.contains("capacity_kg")) e.capacity_kg = j.at("capacity_kg").get<int64_t>();
    const json& c = j.at("cost");
    std::string kind = c.at("kind").get<std::string>();
    if (kind == "per_kg")
        e.cost = PerKgCost{c.at("rate_cents_per_kg").get<int64_t>()};
    else if (kind == "lcl")
        e.cost = LclCost{c.at("bunker_cents").get<int64_t>(),
                         c.at("rate_cents_per_cbm").get<int64_t>()};
    else if (kind == "fcl")
        e.cost = FclCost{c.at("fixed_cost_cents").get<int64_t>(),
                         c.at("variable_cents_per_order").get<int64_t>()};
    else
        throw structural_error("unknown cost kind: " + kind);
    return e;
}

inline void check_schema_version(const json& j, const char* what) {
    if (!j.is_object() || !j.contains("schema_version"))
        throw structural_error(std::string(what) + ": missing schema_version");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw structural_error(std::string(what) + ": unsupported schema_version");
}

inline Instance instance_from_json(const json& j) {
    try {
        check_schema_version(j, "instance");
        Instance inst;
        inst.horizon_weeks = j.at("horizon_weeks").get<int>();
        inst.dwell_limit_weeks = j.at("dwell_limit_weeks").get<int>();
        inst.booking_lead_weeks = j.at("booking_lead_weeks").get<int>();
        inst.bookings_per_port_week = j.at("bookings_per_port_week").get<int>();
        if (j.contains("manifest")) {
            const json& m = j.at("manifest");
            inst.manifest = Manifest{m.at("generator_version").get<std::string>(),
                                     m.at("seed").get<uint64_t>(),
                                     m.at("scenario").get<std::string>()};
        }
        for (const auto& l : j.at("network").at("locations"))
            inst.network.locations.push_back({l.at("id").get<std::string>(),
                                              location_kind_from_string(l.at("kind").get<std::string>()),
                                              l.at("label").get<std::string>()});
        for (const auto& e : j.at("network").at("edges"))
            inst.network.edges.push_back(edge_from_json(e));
        for (const auto& o : j.at("orders")) {
            ProductOrder p;
            p.id = o.at("id").get<std::string>();
            p.origin = o.at("origin").get<std::string>();
            p.destination = o.at("destination").get<std::string>();
            p.gross_weight_kg = o.at("gross_weight_kg").get<int64_t>();
            p.volume_cbm_e4 = o.at("volume_cbm_e4").get<int64_t>();
            p.air_charge_weight_kg_e4 = o.at("air_charge_weight_kg_e4").get<int64_t>();
            p.ready_week = o.at("ready_week").get<int>();
            p.earliest_week = o.at("earliest_week").get<int>();
            p.latest_week = o.at("latest_week").get<int>();
            inst.orders.push_back(std::move(p));
        }
        return inst;
    } catch (const json::exception& ex) {
        throw structural_error(std::string("malformed instance JSON: ") + ex.what());
    }
}

inline ShipmentPlan plan_from_json(const json& j) {
    try {
        check_schema_version(j, "plan");
        ShipmentPlan plan;
        for (const auto& [id, arr] : j.at("routes").items()) {
            std::vector<Leg> legs;
            for (const auto& lj : arr) {
                Leg leg;
                leg.origin = lj.at("origin").get<std::string>();
                leg.dest = lj.at("dest").get<std::string>();
                leg.mode = mode_from_json(lj.at("mode"));
                leg.depart_week = lj.at("depart_week").get<int>();
                legs.push_back(std::move(leg));
            }
            plan.routes[id] = std::move(legs);
        }
        for (const auto& bj : j.at("bookings"))
            plan.bookings.push_back({bj.at("origin").get<std::string>(),
                                     bj.at("dest").get<std::string>(),
                                     bj.at("container_index").get<int>(),
                                     bj.at("depart_week").get<int>()});
        return plan;
    } catch (const json::exception& ex) {
        throw structural_error(std::string("malformed plan JSON: ") + ex.what());
    }
}

// ---- files -----------------------------------------------------------------

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw structural_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw structural_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw structural_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw structural_error(std::string(what) + ": invalid JSON");
    return j;
}

inline Instance load_instance(const std::string& path) {
    return instance_from_json(parse_json_text(read_text_file(path), "instance"));
}

inline ShipmentPlan load_plan(const std::string& path) {
    return plan_from_json(parse_json_text(read_text_file(path), "plan"));
}

// FNV-1a 64 over raw bytes; used to tie reports to their input files.
inline std::string digest_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

// ---- CSV rows --------------------------------------------------------------

inline std::string cost_csv_header() {
    return "fcl_fixed_cents,fcl_variable_cents,lcl_cents,air_cents,ground_cents,"
           "penalty_cents,total_cents";
}

inline std::string to_csv_row(const CostBreakdown& c) {
    std::ostringstream ss;
    ss << c.fcl_fixed_cents << ',' << c.fcl_variable_cents << ',' << c.lcl_cents << ','
       << c.air_cents << ',' << c.ground_cents << ',' << c.penalty_cents << ',' << c.total_cents;
    return ss.str();
}

inline std::string validation_csv_header() { return "family,order,edge,week,detail"; }

inline std::string to_csv_row(const Violation& v) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\"\"";
            else out += c;
        }
        return out + "\"";
    };
    std::ostringstream ss;
    ss << to_string(v.family) << ',' << v.order_id << ',' << quote(v.edge) << ',' << v.week << ','
       << quote(v.detail);
    return ss.str();
}

}  // namespace shipplan
