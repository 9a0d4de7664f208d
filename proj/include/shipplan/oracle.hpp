#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shipplan/cost.hpp"
#include "shipplan/index.hpp"
#include "shipplan/types.hpp"

namespace shipplan {

// Brute-force exact planner for desk-scale instances. Enumerates every
// feasible (route, timing, container-slot) choice per order, then searches
// the cross product depth-first with incumbent pruning. Serves as ground
// truth for the heuristic and the validator.

struct OracleLimits {
    int max_orders{6};
    int max_weeks{14};
    int max_fcl_slots{3};
};

struct EnumCaps {
    int max_legs{3};
};

struct RoutingOption {
    std::string order_id;
    std::vector<Leg> legs;
    ModeClass main_mode{ModeClass::Air};  // class of the ocean/air segment
    int64_t cost_cents{0};                // leg costs only, fixed charges excluded
    std::optional<Booking> booking;       // implied booking for FCL options
};

namespace oracle_detail {

inline void enumerate_paths(const Instance& inst, const std::string& at,
                            const std::string& target, int legs_left,
                            std::vector<const Edge*>& stack, std::set<std::string>& visited,
                            const std::vector<const Edge*>& pool,
                            std::vector<std::vector<const Edge*>>& out) {
    if (at == target) {
        if (!stack.empty()) out.push_back(stack);
        return;
    }
    if (legs_left == 0) return;
    for (const Edge* e : pool) {
        if (e->origin != at || visited.count(e->dest)) continue;
        stack.push_back(e);
        visited.insert(e->dest);
        enumerate_paths(inst, e->dest, target, legs_left - 1, stack, visited, pool, out);
        visited.erase(e->dest);
        stack.pop_back();
    }
}

inline void enumerate_timings(const Instance& inst, const ProductOrder& p,
                              const std::vector<const Edge*>& path, size_t leg,
                              int earliest_depart, std::vector<int>& departs,
                              std::vector<std::vector<int>>& out) {
    int remaining = 0;
    for (size_t i = leg; i < path.size(); ++i) remaining += path[i]->transit_weeks;
    int lo = earliest_depart;
    if (path[leg]->mode.cls == ModeClass::Fcl) lo = std::max(lo, inst.booking_lead_weeks);
    // Departing later than this cannot arrive by the late deadline; interior
    // legs are further capped by the dwell window at their stop.
    int hi = std::min(inst.horizon_weeks - 1, p.latest_week - remaining);
    if (leg > 0) hi = std::min(hi, earliest_depart + inst.dwell_limit_weeks);
    for (int t = lo; t <= hi; ++t) {
        departs.push_back(t);
        if (leg + 1 == path.size()) {
            int arrival = t + path[leg]->transit_weeks;
            if (arrival >= p.earliest_week && arrival <= p.latest_week) out.push_back(departs);
        } else {
            int arr = t + path[leg]->transit_weeks;
            enumerate_timings(inst, p, path, leg + 1, arr, departs, out);
        }
        departs.pop_back();
    }
}

}  // namespace oracle_detail

// Every feasible routing for one order: air and LCL paths plus each FCL
// container slot, crossed with all departure-week and dwell combinations.
// An empty result means the order cannot be served within its windows.
inline std::vector<RoutingOption> enumerate_options(const Instance& inst, const ProductOrder& p,
                                                    EnumCaps caps = {}) {
    InstanceIndex ix(inst);
    std::vector<RoutingOption> options;

    struct Family {
        ModeClass main;
        std::vector<const Edge*> pool;
        const Edge* lane;  // FCL families only
    };
    std::vector<Family> families;
    {
        Family air{ModeClass::Air, {}, nullptr};
        Family lcl{ModeClass::Lcl, {}, nullptr};
        for (const auto& e : inst.network.edges) {
            if (e.mode.cls == ModeClass::Air) air.pool.push_back(&e);
            if (e.mode.cls == ModeClass::Ground || e.mode.cls == ModeClass::Lcl)
                lcl.pool.push_back(&e);
        }
        families.push_back(std::move(air));
        families.push_back(std::move(lcl));
        for (const Edge* lane : ix.fcl_lanes()) {
            Family f{ModeClass::Fcl, {}, lane};
            for (const auto& e : inst.network.edges)
                if (e.mode.cls == ModeClass::Ground || &e == lane) f.pool.push_back(&e);
            families.push_back(std::move(f));
        }
    }

    for (const auto& fam : families) {
        std::vector<std::vector<const Edge*>> paths;
        std::vector<const Edge*> stack;
        std::set<std::string> visited{p.origin};
        oracle_detail::enumerate_paths(inst, p.origin, p.destination, caps.max_legs, stack,
                                       visited, fam.pool, paths);
        for (const auto& path : paths) {
            // A path in an FCL family must actually ride the lane.
            if (fam.main == ModeClass::Fcl &&
                std::find(path.begin(), path.end(), fam.lane) == path.end())
                continue;
            std::vector<std::vector<int>> timings;
            std::vector<int> departs;
            oracle_detail::enumerate_timings(inst, p, path, 0, p.ready_week, departs, timings);
            int slots = fam.main == ModeClass::Fcl ? inst.bookings_per_port_week : 1;
            for (const auto& timing : timings) {
                for (int slot = 1; slot <= slots; ++slot) {
                    RoutingOption opt;
                    opt.order_id = p.id;
                    opt.main_mode = fam.main;
                    for (size_t i = 0; i < path.size(); ++i) {
                        TransportMode m = path[i]->mode;
                        if (m.cls == ModeClass::Fcl) m.container_index = slot;
                        opt.legs.push_back({path[i]->origin, path[i]->dest, m, timing[i]});
                        opt.cost_cents += leg_cost_cents(*path[i], p);
                        if (m.cls == ModeClass::Fcl)
                            opt.booking = Booking{path[i]->origin, path[i]->dest, slot, timing[i]};
                    }
                    options.push_back(std::move(opt));
                }
            }
        }
    }
    return options;
}

struct OracleResult {
    ShipmentPlan plan;
    CostBreakdown cost;
    std::vector<std::string> unservable;
};

inline bool within_limits(const Instance& inst, const OracleLimits& lim = {}) {
    return int(inst.orders.size()) <= lim.max_orders && inst.horizon_weeks <= lim.max_weeks &&
           inst.bookings_per_port_week <= lim.max_fcl_slots;
}

namespace oracle_detail {

struct Reduced {
    const ProductOrder* order;
    std::vector<RoutingOption> options;  // cheapest per interaction signature, cost-sorted
};

struct LaneInfo {
    int64_t fixed_cents;
    int64_t capacity_kg;
};

struct SearchState {
    const Instance* inst;
    std::vector<Reduced>* per_order;
    std::map<std::pair<std::string, std::string>, LaneInfo> lanes;
    std::vector<int64_t> suffix_min;
    std::map<Booking, int64_t> slot_load;             // booked slot -> kg used
    std::map<std::pair<std::string, int>, int> port_used;
    std::vector<int> choice;
    std::vector<int> best_choice;
    int64_t best_cost{std::numeric_limits<int64_t>::max()};
    const LaneInfo& lane(const Booking& b) const { return lanes.at({b.origin, b.dest}); }
};

inline void search(SearchState& st, size_t k, int64_t cost_so_far) {
    auto& orders = *st.per_order;
    if (k == orders.size()) {
        if (cost_so_far < st.best_cost) {
            st.best_cost = cost_so_far;
            st.best_choice = st.choice;
        }
        return;
    }
    const auto& opts = orders[k].options;
    for (size_t oi = 0; oi < opts.size(); ++oi) {
        const RoutingOption& opt = opts[oi];
        int64_t marginal = opt.cost_cents;
        bool opens = false;
        if (opt.booking) {
            const Booking& b = *opt.booking;
            auto it = st.slot_load.find(b);
            if (it == st.slot_load.end()) {
                // Slots on a lane are interchangeable: only the next unused
                // index may be opened, which collapses symmetric branches.
                int used_here = 0;
                for (int s = 1; s < b.container_index; ++s)
                    if (st.slot_load.count(Booking{b.origin, b.dest, s, b.depart_week}))
                        used_here++;
                if (used_here != b.container_index - 1) continue;
                auto pu = st.port_used.find({b.origin, b.depart_week});
                int port_count = pu == st.port_used.end() ? 0 : pu->second;
                if (port_count >= st.inst->bookings_per_port_week) continue;
                opens = true;
                marginal += st.lane(b).fixed_cents;
            } else {
                if (it->second + orders[k].order->gross_weight_kg > st.lane(b).capacity_kg)
                    continue;
            }
        }
        if (cost_so_far + marginal + st.suffix_min[k + 1] >= st.best_cost) continue;

        if (opt.booking) {
            st.slot_load[*opt.booking] += orders[k].order->gross_weight_kg;
            if (opens) st.port_used[{opt.booking->origin, opt.booking->depart_week}]++;
        }
        st.choice[k] = int(oi);
        search(st, k + 1, cost_so_far + marginal);
        if (opt.booking) {
            auto it = st.slot_load.find(*opt.booking);
            it->second -= orders[k].order->gross_weight_kg;
            if (opens) {
                st.slot_load.erase(it);
                st.port_used[{opt.booking->origin, opt.booking->depart_week}]--;
            }
        }
    }
}

}  // namespace oracle_detail

// Globally minimum-cost plan over the full option cross product, subject to
// shared FCL capacity, booking uniqueness, lead time, and port caps.
// Orders with no feasible option at all are excluded and reported, mirroring
// how the business handles hopeless orders outside the planning model.
inline OracleResult solve_exact(const Instance& inst, OracleLimits lim = {}) {
    if (!within_limits(inst, lim))
        throw limit_error("instance exceeds exact-search limits (" +
                          std::to_string(lim.max_orders) + " orders, " +
                          std::to_string(lim.max_weeks) + " weeks, " +
                          std::to_string(lim.max_fcl_slots) + " container slots)");
    InstanceIndex ix(inst);

    OracleResult res;
    std::vector<oracle_detail::Reduced> per_order;
    for (const auto& p : inst.orders) {
        std::vector<RoutingOption> all = enumerate_options(inst, p);
        if (all.empty()) {
            res.unservable.push_back(p.id);
            continue;
        }
        // Options interact only through their implied booking; keep the
        // cheapest per signature. The cheapest non-FCL option also dominates
        // any FCL option whose leg cost alone is no better.
        std::optional<RoutingOption> fallback;
        std::map<Booking, RoutingOption> per_slot;
        for (auto& opt : all) {
            if (!opt.booking) {
                if (!fallback || opt.cost_cents < fallback->cost_cents) fallback = opt;
            } else {
                auto it = per_slot.find(*opt.booking);
                if (it == per_slot.end())
                    per_slot.emplace(*opt.booking, opt);
                else if (opt.cost_cents < it->second.cost_cents)
                    it->second = opt;
            }
        }
        oracle_detail::Reduced red{&p, {}};
        if (fallback) red.options.push_back(std::move(*fallback));
        for (auto& [slot, opt] : per_slot) {
            if (fallback && opt.cost_cents >= fallback->cost_cents) continue;
            red.options.push_back(std::move(opt));
        }
        std::stable_sort(red.options.begin(), red.options.end(),
                         [](const RoutingOption& a, const RoutingOption& b) {
                             return a.cost_cents < b.cost_cents;
                         });
        per_order.push_back(std::move(red));
    }

    // Heaviest orders first: they constrain container capacity the most.
    std::stable_sort(per_order.begin(), per_order.end(),
                     [](const oracle_detail::Reduced& a, const oracle_detail::Reduced& b) {
                         if (a.order->gross_weight_kg != b.order->gross_weight_kg)
                             return a.order->gross_weight_kg > b.order->gross_weight_kg;
                         return a.order->id < b.order->id;
                     });

    oracle_detail::SearchState st;
    st.inst = &inst;
    st.per_order = &per_order;
    for (const Edge* lane : ix.fcl_lanes())
        st.lanes[{lane->origin, lane->dest}] =
            {std::get<FclCost>(lane->cost).fixed_cost_cents, *lane->capacity_kg};
    st.choice.assign(per_order.size(), -1);
    st.suffix_min.assign(per_order.size() + 1, 0);
    for (size_t k = per_order.size(); k-- > 0;) {
        int64_t mn = std::numeric_limits<int64_t>::max();
        for (const auto& o : per_order[k].options) mn = std::min(mn, o.cost_cents);
        st.suffix_min[k] = st.suffix_min[k + 1] + mn;
    }
    oracle_detail::search(st, 0, 0);

    if (st.best_cost == std::numeric_limits<int64_t>::max() && !per_order.empty())
        throw structural_error("no jointly feasible assignment for serviceable orders");

    std::set<Booking> bookings;
    for (size_t k = 0; k < per_order.size(); ++k) {
        const RoutingOption& opt = per_order[k].options[size_t(st.best_choice[k])];
        res.plan.routes[per_order[k].order->id] = opt.legs;
        if (opt.booking) bookings.insert(*opt.booking);
    }
    res.plan.bookings.assign(bookings.begin(), bookings.end());
    res.cost = plan_cost(inst, res.plan);
    return res;
}

}  // namespace shipplan
