#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "shipplan/json_io.hpp"
#include "shipplan/types.hpp"
#include "shipplan/version.hpp"

namespace shipplan {

// One solver run over one instance, as written next to every plan artifact.
struct RunReport {
    std::string instance_digest;
    std::string scenario;
    std::string solver;  // "heuristic" or "oracle"
    CostBreakdown cost;
    int bookings{0};
    int orders_fcl{0};
    int orders_lcl{0};
    int orders_air{0};
    int orders_unserved{0};
    int64_t wall_clock_ms{0};
    std::optional<double> heuristic_error;  // present when a reference cost is known
};

inline void classify_modes(const Instance& inst, const ShipmentPlan& plan, RunReport& rep) {
    rep.bookings = int(plan.bookings.size());
    rep.orders_fcl = rep.orders_lcl = rep.orders_air = rep.orders_unserved = 0;
    for (const auto& p : inst.orders) {
        auto it = plan.routes.find(p.id);
        if (it == plan.routes.end() || it->second.empty()) {
            rep.orders_unserved++;
            continue;
        }
        bool fcl = false, lcl = false;
        for (const auto& leg : it->second) {
            fcl |= leg.mode.cls == ModeClass::Fcl;
            lcl |= leg.mode.cls == ModeClass::Lcl;
        }
        if (fcl) rep.orders_fcl++;
        else if (lcl) rep.orders_lcl++;
        else rep.orders_air++;
    }
}

inline json to_json(const RunReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["instance_digest"] = r.instance_digest;
    j["scenario"] = r.scenario;
    j["solver"] = r.solver;
    j["cost"] = to_json(r.cost);
    j["bookings"] = r.bookings;
    j["orders_by_mode"] = {{"fcl", r.orders_fcl},
                           {"lcl", r.orders_lcl},
                           {"air", r.orders_air},
                           {"unserved", r.orders_unserved}};
    j["wall_clock_ms"] = r.wall_clock_ms;
    if (r.heuristic_error) j["heuristic_error"] = *r.heuristic_error;
    return j;
}

inline std::string run_report_csv_header() {
    return "solver,scenario,total_cents,bookings,fcl_fixed_cents,fcl_variable_cents,lcl_cents,"
           "air_cents,ground_cents,penalty_cents,orders_fcl,orders_lcl,orders_air,"
           "orders_unserved,wall_clock_ms,heuristic_error";
}

inline std::string to_csv_row(const RunReport& r) {
    std::ostringstream ss;
    ss << r.solver << ',' << r.scenario << ',' << r.cost.total_cents << ',' << r.bookings << ','
       << r.cost.fcl_fixed_cents << ',' << r.cost.fcl_variable_cents << ',' << r.cost.lcl_cents
       << ',' << r.cost.air_cents << ',' << r.cost.ground_cents << ',' << r.cost.penalty_cents
       << ',' << r.orders_fcl << ',' << r.orders_lcl << ',' << r.orders_air << ','
       << r.orders_unserved << ',' << r.wall_clock_ms << ',';
    if (r.heuristic_error) ss << *r.heuristic_error;
    return ss.str();
}

}  // namespace shipplan
