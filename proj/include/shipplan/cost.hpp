#pragma once

#include <optional>
#include <set>

#include "shipplan/index.hpp"
#include "shipplan/types.hpp"

namespace shipplan {

// Round-half-up division for nonnegative fixed-point products.
inline int64_t div_round_e4(int64_t numerator) {
    return (numerator + 5000) / 10000;
}

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Cost of moving one order over one edge, in cents. Air uses the chargeable
// weight, ground the gross weight, LCL is bunker plus a volumetric rate.
// For FCL this is the per-order variable cost only; the fixed container
// charge is accounted per booking, not per leg.
inline int64_t leg_cost_cents(const Edge& edge, const ProductOrder& p) {
    switch (edge.mode.cls) {
        case ModeClass::Ground:
            return std::get<PerKgCost>(edge.cost).rate_cents_per_kg * p.gross_weight_kg;
        case ModeClass::Air:
            return div_round_e4(std::get<PerKgCost>(edge.cost).rate_cents_per_kg *
                                p.air_charge_weight_kg_e4);
        case ModeClass::Lcl: {
            const auto& c = std::get<LclCost>(edge.cost);
            return c.bunker_cents + div_round_e4(c.rate_cents_per_cbm * p.volume_cbm_e4);
        }
        case ModeClass::Fcl:
            return std::get<FclCost>(edge.cost).variable_cents_per_order;
    }
    return 0;
}

// Objective decomposition of a structurally valid plan. Every FCL leg must
// be covered by a booking (the fixed charge has nowhere to go otherwise).
inline CostBreakdown plan_cost(const Instance& inst, const ShipmentPlan& plan) {
    InstanceIndex ix(inst);
    CostBreakdown b;

    std::set<Booking> seen;
    for (const auto& bk : plan.bookings) {
        const Edge& lane = ix.resolve(bk);
        if (!seen.insert(bk).second) continue;  // duplicates charged once; validator flags them
        b.fcl_fixed_cents += std::get<FclCost>(lane.cost).fixed_cost_cents;
    }

    for (const auto& [order_id, legs] : plan.routes) {
        const ProductOrder& p = ix.order(order_id);
        for (const Leg& leg : legs) {
            const Edge& e = ix.resolve(leg);
            int64_t c = leg_cost_cents(e, p);
            switch (e.mode.cls) {
                case ModeClass::Ground: b.ground_cents += c; break;
                case ModeClass::Air: b.air_cents += c; break;
                case ModeClass::Lcl: b.lcl_cents += c; break;
                case ModeClass::Fcl: {
                    Booking needed{leg.origin, leg.dest, leg.mode.container_index, leg.depart_week};
                    if (!seen.count(needed))
                        throw structural_error("order " + order_id + " rides unbooked container " +
                                               describe_lane(leg.origin, leg.dest,
                                                             leg.mode.container_index) +
                                               " at week " + std::to_string(leg.depart_week));
                    b.fcl_variable_cents += c;
                    break;
                }
            }
        }
    }
    return finalize(b);
}

// Arrival week of an order under a plan: departure plus transit of the last
// leg. Empty when the order is not routed.
inline std::optional<int> arrival_week(const Instance& inst, const ShipmentPlan& plan,
                                       const std::string& order_id) {
    auto it = plan.routes.find(order_id);
    if (it == plan.routes.end() || it->second.empty()) return std::nullopt;
    InstanceIndex ix(inst);
    const Leg& last = it->second.back();
    return last.depart_week + ix.resolve(last).transit_weeks;
}

// Relative cost increase of a solution against a reference objective.
inline double heuristic_error(int64_t cost_heur_cents, int64_t cost_ref_cents) {
    if (cost_ref_cents <= 0)
        throw config_error("heuristic_error undefined for nonpositive reference cost");
    return double(cost_heur_cents - cost_ref_cents) / double(cost_ref_cents);
}

}  // namespace shipplan
