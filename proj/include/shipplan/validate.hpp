#pragma once

#include <map>
#include <set>
#include <string>

#include "shipplan/index.hpp"
#include "shipplan/types.hpp"

namespace shipplan {

// Checks a plan against every operational constraint of the instance and
// reports all violations found (empty report == feasible). Dangling
// references are structural errors and throw instead of being reported.
inline ValidationReport validate_plan(const Instance& inst, const ShipmentPlan& plan) {
    InstanceIndex ix(inst);
    ValidationReport rep;
    auto flag = [&rep](ViolationFamily f, std::string order, std::string edge, int week,
                       std::string detail) {
        rep.violations.push_back({f, std::move(order), std::move(edge), week, std::move(detail)});
    };

    const int horizon = inst.horizon_weeks;
    const int rho = inst.dwell_limit_weeks;
    const int upsilon = inst.booking_lead_weeks;
    const int lambda = inst.bookings_per_port_week;

    // Bookings: lead time, horizon, duplicates, per-port-week cap.
    std::set<Booking> booked;
    std::map<std::pair<std::string, int>, int> per_port_week;
    for (const Booking& bk : plan.bookings) {
        ix.resolve(bk);
        std::string lane = describe_lane(bk.origin, bk.dest, bk.container_index);
        if (!booked.insert(bk).second) {
            flag(ViolationFamily::BookingDuplicate, "", lane, bk.depart_week,
                 "container slot booked twice in the same week");
            continue;
        }
        if (bk.depart_week < upsilon)
            flag(ViolationFamily::BookingLead, "", lane, bk.depart_week,
                 "booking departs before the " + std::to_string(upsilon) + "-week lead cutoff");
        if (bk.depart_week < 0 || bk.depart_week >= horizon)
            flag(ViolationFamily::Horizon, "", lane, bk.depart_week,
                 "booking outside the planning horizon");
        per_port_week[{bk.origin, bk.depart_week}]++;
    }
    for (const auto& [key, count] : per_port_week) {
        if (count > lambda)
            flag(ViolationFamily::PortCap, "", key.first, key.second,
                 std::to_string(count) + " bookings at one port-week, cap is " +
                     std::to_string(lambda));
    }

    // Per-order route checks plus FCL load accumulation.
    std::map<Booking, int64_t> lane_load;
    for (const auto& [order_id, legs] : plan.routes) {
        const ProductOrder& p = ix.order(order_id);
        if (legs.empty()) continue;  // counted as unrouted below

        if (legs.front().origin != p.origin)
            flag(ViolationFamily::Chaining, order_id, legs.front().origin, legs.front().depart_week,
                 "first leg does not start at the order origin");
        if (legs.back().dest != p.destination)
            flag(ViolationFamily::Chaining, order_id, legs.back().dest, -1,
                 "last leg does not end at the order destination");
        if (legs.front().depart_week < p.ready_week)
            flag(ViolationFamily::Availability, order_id, legs.front().origin,
                 legs.front().depart_week,
                 "departs before ready week " + std::to_string(p.ready_week));

        int prev_arrival = -1;
        for (size_t i = 0; i < legs.size(); ++i) {
            const Leg& leg = legs[i];
            const Edge& e = ix.resolve(leg);
            if (leg.depart_week < 0 || leg.depart_week >= horizon)
                flag(ViolationFamily::Horizon, order_id, describe(e), leg.depart_week,
                     "departure outside the planning horizon");
            if (i > 0) {
                if (leg.origin != legs[i - 1].dest)
                    flag(ViolationFamily::Chaining, order_id, describe(e), leg.depart_week,
                         "leg origin does not match previous destination");
                int dwell = leg.depart_week - prev_arrival;
                if (dwell < 0)
                    flag(ViolationFamily::Chaining, order_id, describe(e), leg.depart_week,
                         "departs before arriving");
                else if (dwell > rho)
                    flag(ViolationFamily::Dwell, order_id, leg.origin, leg.depart_week,
                         std::to_string(dwell) + " idle weeks at " + leg.origin + ", limit " +
                             std::to_string(rho));
            }
            if (e.mode.cls == ModeClass::Fcl) {
                Booking needed{leg.origin, leg.dest, leg.mode.container_index, leg.depart_week};
                if (!booked.count(needed))
                    flag(ViolationFamily::BookingMissing, order_id,
                         describe_lane(leg.origin, leg.dest, leg.mode.container_index),
                         leg.depart_week, "FCL leg with no matching booking");
                lane_load[needed] += p.gross_weight_kg;
            }
            prev_arrival = leg.depart_week + e.transit_weeks;
        }

        if (prev_arrival < p.earliest_week || prev_arrival > p.latest_week)
            flag(ViolationFamily::Deadline, order_id, p.destination, prev_arrival,
                 "arrival " + std::to_string(prev_arrival) + " outside [" +
                     std::to_string(p.earliest_week) + ", " + std::to_string(p.latest_week) + "]");
    }

    for (const auto& [slot, load] : lane_load) {
        const Edge& lane = ix.resolve(slot);
        if (load > *lane.capacity_kg)
            flag(ViolationFamily::Capacity, "",
                 describe_lane(slot.origin, slot.dest, slot.container_index), slot.depart_week,
                 std::to_string(load) + " kg loaded, capacity " +
                     std::to_string(*lane.capacity_kg) + " kg");
    }

    for (const auto& p : inst.orders) {
        auto it = plan.routes.find(p.id);
        if (it == plan.routes.end() || it->second.empty())
            flag(ViolationFamily::Unrouted, p.id, "", -1, "order has no route in the plan");
    }

    return rep;
}

}  // namespace shipplan
