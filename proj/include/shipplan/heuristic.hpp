#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "shipplan/cost.hpp"
#include "shipplan/dijkstra.hpp"
#include "shipplan/index.hpp"
#include "shipplan/knapsack.hpp"
#include "shipplan/types.hpp"
#include "shipplan/validate.hpp"

namespace shipplan {

// Knapsack-based rolling-horizon planner: per-product mode windows and
// cheapest-route costs up front, then a forward sweep over booking weeks
// that opens FCL containers when the consolidated savings beat the fixed
// charge, with a one-week-at-a-time postponement look-ahead. Whatever is
// left ships by the cheaper of LCL and air.

struct WeekInterval {
    int lo{0};
    int hi{-1};
    bool empty() const { return lo > hi; }
    bool contains(int w) const { return w >= lo && w <= hi; }
    bool operator==(const WeekInterval&) const = default;
};

struct TimeRanges {
    WeekInterval air;
    WeekInterval lcl;
    WeekInterval fcl;
};

// Feasible departure windows per mode, before horizon clipping. Air is the
// window of the (single) air departure; LCL/FCL are windows of the ocean
// departure, with lower bounds covering the ground feeder leg, the port
// dwell allowance, and (FCL only) the booking lead time.
inline TimeRanges time_ranges(const Instance& inst, const ProductOrder& p) {
    UniformTransit tt = uniform_transit_times(inst);
    const int rho = inst.dwell_limit_weeks;
    TimeRanges r;
    r.air = {std::max(p.ready_week, p.earliest_week - tt.air), p.latest_week - tt.air};
    r.lcl = {std::max(p.ready_week + tt.ground, p.earliest_week - tt.ocean - tt.ground - rho),
             p.latest_week - tt.ocean - tt.ground};
    r.fcl = {std::max(r.lcl.lo, inst.booking_lead_weeks), r.lcl.hi};
    return r;
}

// Assigns departure weeks along a path so the first ocean leg (or the first
// leg, for all-air paths) departs at `anchor`. Early-deadline slack becomes
// dwell at the stops after that leg, latest stop first. Returns nothing when
// availability, dwell, deadline, booking-lead, or horizon limits cannot hold.
inline std::optional<std::vector<Leg>> schedule_route(const Instance& inst,
                                                      const ProductOrder& p,
                                                      const std::vector<const Edge*>& path,
                                                      int anchor, int fcl_slot = 1) {
    if (path.empty()) return std::nullopt;
    const int n = int(path.size());
    int main_leg = 0;
    for (int i = 0; i < n; ++i) {
        if (path[size_t(i)]->mode.cls == ModeClass::Lcl ||
            path[size_t(i)]->mode.cls == ModeClass::Fcl) {
            main_leg = i;
            break;
        }
    }

    std::vector<int> depart(size_t(n), 0);
    depart[size_t(main_leg)] = anchor;
    for (int i = main_leg - 1; i >= 0; --i)
        depart[size_t(i)] = depart[size_t(i + 1)] - path[size_t(i)]->transit_weeks;
    if (depart[0] < p.ready_week) return std::nullopt;

    int arr = anchor + path[size_t(main_leg)]->transit_weeks;
    for (int i = main_leg + 1; i < n; ++i) {
        depart[size_t(i)] = arr;
        arr += path[size_t(i)]->transit_weeks;
    }
    int needed_dwell = std::max(0, p.earliest_week - arr);
    for (int i = n - 1; i > main_leg && needed_dwell > 0; --i) {
        int add = std::min(needed_dwell, inst.dwell_limit_weeks);
        for (int j = i; j < n; ++j) depart[size_t(j)] += add;
        arr += add;
        needed_dwell -= add;
    }
    if (needed_dwell > 0) return std::nullopt;
    if (arr < p.earliest_week || arr > p.latest_week) return std::nullopt;

    std::vector<Leg> legs;
    for (int i = 0; i < n; ++i) {
        const Edge& e = *path[size_t(i)];
        if (depart[size_t(i)] < 0 || depart[size_t(i)] >= inst.horizon_weeks) return std::nullopt;
        if (e.mode.cls == ModeClass::Fcl && depart[size_t(i)] < inst.booking_lead_weeks)
            return std::nullopt;
        TransportMode m = e.mode;
        if (m.cls == ModeClass::Fcl) m.container_index = fcl_slot;
        legs.push_back({e.origin, e.dest, m, depart[size_t(i)]});
    }
    return legs;
}

// Cheapest single-mode routing costs for one order, one induced network per
// mode family. FCL costs exclude the fixed container charge.
struct RouteCosts {
    std::optional<int64_t> air_cents;
    std::optional<int64_t> lcl_cents;
    std::vector<std::optional<int64_t>> fcl_cents_by_lane;
    std::vector<const Edge*> air_path;
    std::vector<const Edge*> lcl_path;
    std::vector<std::vector<const Edge*>> fcl_path_by_lane;
};

namespace detail {

inline std::map<std::string, int> node_index(const Network& net) {
    std::map<std::string, int> ix;
    for (const auto& l : net.locations) ix.emplace(l.id, int(ix.size()));
    return ix;
}

struct InducedQuery {
    const Instance& inst;
    const std::map<std::string, int>& nodes;

    // family: edges admitted into the induced network. Returns cost and path.
    template <typename Pred>
    std::pair<std::optional<int64_t>, std::vector<const Edge*>> cheapest(
        const ProductOrder& p, Pred admit) const {
        CostGraph g(int(nodes.size()));
        for (const auto& e : inst.network.edges) {
            if (!admit(e)) continue;
            g.add_arc(nodes.at(e.origin), nodes.at(e.dest), leg_cost_cents(e, p),
                      int(&e - inst.network.edges.data()));
        }
        ShortestPath sp = dijkstra(g, nodes.at(p.origin), nodes.at(p.destination));
        if (!sp.reachable()) return {std::nullopt, {}};
        std::vector<const Edge*> path;
        for (int tag : sp.arc_tags) path.push_back(&inst.network.edges[size_t(tag)]);
        return {sp.cost, std::move(path)};
    }
};

}  // namespace detail

inline RouteCosts route_costs(const Instance& inst, const ProductOrder& p) {
    InstanceIndex ix(inst);
    auto nodes = detail::node_index(inst.network);
    detail::InducedQuery q{inst, nodes};
    auto lanes = ix.fcl_lanes();

    RouteCosts rc;
    std::tie(rc.air_cents, rc.air_path) =
        q.cheapest(p, [](const Edge& e) { return e.mode.cls == ModeClass::Air; });
    std::tie(rc.lcl_cents, rc.lcl_path) = q.cheapest(p, [](const Edge& e) {
        return e.mode.cls == ModeClass::Ground || e.mode.cls == ModeClass::Lcl;
    });
    for (const Edge* lane : lanes) {
        auto [cost, path] = q.cheapest(p, [lane](const Edge& e) {
            return e.mode.cls == ModeClass::Ground || &e == lane;
        });
        rc.fcl_cents_by_lane.push_back(cost);
        rc.fcl_path_by_lane.push_back(std::move(path));
    }
    return rc;
}

// Consolidation value of an order for one FCL lane, in whole dollars:
// floor of (cheapest non-FCL alternative minus the FCL routing cost).
// Empty when the order has no LCL and no air alternative.
inline std::optional<int64_t> item_value_dollars(const RouteCosts& rc, size_t lane_index) {
    if (!rc.fcl_cents_by_lane.at(lane_index)) return std::nullopt;
    std::optional<int64_t> alt;
    if (rc.lcl_cents) alt = *rc.lcl_cents;
    if (rc.air_cents && (!alt || *rc.air_cents < *alt)) alt = *rc.air_cents;
    if (!alt) return std::nullopt;
    return floor_div(*alt - *rc.fcl_cents_by_lane.at(lane_index), 100);
}

struct HeuristicOptions {
    int threads{1};
    bool fallback_latest{true};  // fallback departures at the latest feasible week
};

struct CommitRecord {
    std::string lane_origin;
    std::string lane_dest;
    int container_slot{1};
    int depart_week{0};
    std::vector<std::string> order_ids;
    int64_t value_dollars{0};  // knapsack objective of the committing iteration
};

struct HeuristicResult {
    ShipmentPlan plan;
    CostBreakdown cost;
    std::vector<std::string> unservable;
    std::vector<CommitRecord> commits;
};

namespace detail {

struct PreparedOrder {
    const ProductOrder* order{nullptr};
    RouteCosts costs;
    WeekInterval air_usable, lcl_usable, fcl_usable;  // horizon-clipped windows
    std::vector<int64_t> lane_value;                  // dollars; <1 means ineligible
};

// Clips a departure window to the anchors the scheduler actually accepts.
inline WeekInterval usable_window(const Instance& inst, const ProductOrder& p,
                                  const std::vector<const Edge*>& path, WeekInterval window) {
    WeekInterval w{std::max(window.lo, 0), std::min(window.hi, inst.horizon_weeks - 1)};
    if (path.empty() || w.empty()) return {0, -1};
    int lo = w.hi + 1, hi = w.lo - 1;
    for (int u = w.lo; u <= w.hi; ++u) {
        if (schedule_route(inst, p, path, u)) {
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
    }
    return {lo, hi};
}

struct LaneState {
    const Edge* edge;
    int64_t fixed_cents;
};

struct WeekCandidate {
    bool found{false};
    int lane{-1};
    int slot{1};
    int week{0};
    std::vector<int> picked;         // indices into prepared orders
    int64_t knap_value_dollars{0};
    int64_t adjusted_cents{0};       // o*100 - fixed - lookahead exclusions
};

}  // namespace detail

// The full planner. Deterministic for a given instance: fixed lane, order,
// and week iteration orders; ties on container choice break toward the
// lexicographically first (origin, dest, slot).
inline HeuristicResult solve_heuristic(const Instance& inst, HeuristicOptions opt = {}) {
    InstanceIndex ix(inst);
    UniformTransit tt = uniform_transit_times(inst);
    const int horizon = inst.horizon_weeks;
    const int lambda = inst.bookings_per_port_week;
    auto lanes = ix.fcl_lanes();
    const int n_lanes = int(lanes.size());

    // Order ids drive every per-order iteration.
    std::vector<const ProductOrder*> orders;
    for (const auto& p : inst.orders) orders.push_back(&p);
    std::sort(orders.begin(), orders.end(),
              [](const ProductOrder* a, const ProductOrder* b) { return a->id < b->id; });
    const int n = int(orders.size());

    std::vector<detail::PreparedOrder> prep;
    prep.resize(size_t(n));
    auto prepare = [&](int from, int to) {
        for (int i = from; i < to; ++i) {
            detail::PreparedOrder& po = prep[size_t(i)];
            po.order = orders[size_t(i)];
            po.costs = route_costs(inst, *po.order);
            TimeRanges ranges = time_ranges(inst, *po.order);
            po.air_usable = detail::usable_window(inst, *po.order, po.costs.air_path, ranges.air);
            po.lcl_usable = detail::usable_window(inst, *po.order, po.costs.lcl_path, ranges.lcl);
            // All lanes share uniform transit times, so one lane's scheduler
            // window is every lane's window.
            WeekInterval fcl{0, -1};
            for (int li = 0; li < n_lanes && fcl.empty(); ++li)
                fcl = detail::usable_window(inst, *po.order, po.costs.fcl_path_by_lane[size_t(li)],
                                            ranges.fcl);
            po.fcl_usable = fcl;
            po.lane_value.assign(size_t(n_lanes), 0);
            for (int li = 0; li < n_lanes; ++li) {
                auto v = item_value_dollars(po.costs, size_t(li));
                po.lane_value[size_t(li)] = v.value_or(0);
            }
        }
    };
    if (opt.threads > 1 && n > 1) {
        int workers = std::min(opt.threads, n);
        std::vector<std::thread> pool;
        int chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(prepare, std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
        for (auto& t : pool) t.join();
    } else {
        prepare(0, n);
    }

    std::vector<detail::LaneState> lane_state;
    for (const Edge* lane : lanes)
        lane_state.push_back({lane, std::get<FclCost>(lane->cost).fixed_cost_cents});

    std::vector<bool> committed(size_t(n), false);
    std::set<std::tuple<int, int, int>> booked;           // (lane, slot, week)
    std::map<std::pair<std::string, int>, int> port_used; // (port, week) -> bookings

    auto free_slot = [&](int lane, int week) -> int {
        if (port_used[{lane_state[size_t(lane)].edge->origin, week}] >= lambda) return 0;
        for (int k = 1; k <= lambda; ++k)
            if (!booked.count({lane, k, week})) return k;
        return 0;
    };

    KnapsackSolver solver;

    // Best container decision for one week. `base` carries the week-t'
    // candidate during the postponement look-ahead: orders it selected that a
    // later-week knapsack leaves behind are charged against that week's value.
    auto evaluate_week = [&](int week, const std::vector<int>* base_sel,
                             int base_lane) -> detail::WeekCandidate {
        detail::WeekCandidate best;
        for (int li = 0; li < n_lanes; ++li) {
            int slot = free_slot(li, week);
            if (slot == 0) continue;
            std::vector<KnapsackSolver::Item> items;
            std::vector<int> item_order;
            for (int i = 0; i < n; ++i) {
                const detail::PreparedOrder& po = prep[size_t(i)];
                if (committed[size_t(i)] || !po.fcl_usable.contains(week)) continue;
                if (!po.costs.fcl_cents_by_lane[size_t(li)] || po.lane_value[size_t(li)] < 1)
                    continue;
                // lanes can differ in path shape, so confirm this one schedules
                if (!schedule_route(inst, *po.order, po.costs.fcl_path_by_lane[size_t(li)], week))
                    continue;
                items.push_back({po.order->gross_weight_kg, po.lane_value[size_t(li)]});
                item_order.push_back(i);
            }
            if (items.empty()) continue;
            int64_t capacity = *lane_state[size_t(li)].edge->capacity_kg;
            KnapsackPick pick = solver.solve(items, capacity);
            if (pick.selected.empty()) continue;
            int64_t adjusted = pick.value * 100 - lane_state[size_t(li)].fixed_cents;
            if (base_sel) {
                std::set<int> now;
                for (int s : pick.selected) now.insert(item_order[size_t(s)]);
                for (int i : *base_sel)
                    if (!now.count(i)) adjusted -= prep[size_t(i)].lane_value[size_t(base_lane)] * 100;
            }
            if (!best.found || adjusted > best.adjusted_cents) {
                best.found = true;
                best.lane = li;
                best.slot = slot;
                best.week = week;
                best.picked.clear();
                for (int s : pick.selected) best.picked.push_back(item_order[size_t(s)]);
                best.knap_value_dollars = pick.value;
                best.adjusted_cents = adjusted;
            }
        }
        return best;
    };

    std::vector<CommitRecord> commits;
    ShipmentPlan plan;

    const int sweep_hi = horizon - tt.ocean - tt.ground;
    for (int week = inst.booking_lead_weeks; week <= sweep_hi && n_lanes > 0; ++week) {
        for (;;) {
            detail::WeekCandidate here = evaluate_week(week, nullptr, -1);
            if (!here.found || here.adjusted_cents <= 0) break;

            // Postponement: march forward while the adjusted value strictly
            // improves; the first non-improvement settles the booking week.
            detail::WeekCandidate chosen = here;
            int64_t prev = here.adjusted_cents;
            for (int u = week + 1; u <= sweep_hi; ++u) {
                detail::WeekCandidate later = evaluate_week(u, &here.picked, here.lane);
                if (!later.found || later.adjusted_cents <= prev) break;
                prev = later.adjusted_cents;
                chosen = later;
            }

            const detail::LaneState& ls = lane_state[size_t(chosen.lane)];
            booked.insert({chosen.lane, chosen.slot, chosen.week});
            port_used[{ls.edge->origin, chosen.week}]++;
            plan.bookings.push_back(
                {ls.edge->origin, ls.edge->dest, chosen.slot, chosen.week});

            CommitRecord rec{ls.edge->origin, ls.edge->dest, chosen.slot, chosen.week, {},
                             chosen.knap_value_dollars};
            for (int i : chosen.picked) {
                committed[size_t(i)] = true;
                const detail::PreparedOrder& po = prep[size_t(i)];
                auto legs = schedule_route(inst, *po.order,
                                           po.costs.fcl_path_by_lane[size_t(chosen.lane)],
                                           chosen.week, chosen.slot);
                if (!legs)
                    throw structural_error("internal: committed order lost its schedule");
                plan.routes[po.order->id] = std::move(*legs);
                rec.order_ids.push_back(po.order->id);
            }
            commits.push_back(std::move(rec));
        }
    }

    // Whatever was not consolidated ships by the cheaper feasible fallback;
    // cost ties go to LCL.
    std::vector<std::string> unservable;
    for (int i = 0; i < n; ++i) {
        if (committed[size_t(i)]) continue;
        const detail::PreparedOrder& po = prep[size_t(i)];
        bool lcl_ok = po.costs.lcl_cents && !po.lcl_usable.empty();
        bool air_ok = po.costs.air_cents && !po.air_usable.empty();
        bool use_lcl;
        if (lcl_ok && air_ok)
            use_lcl = *po.costs.lcl_cents <= *po.costs.air_cents;
        else if (lcl_ok || air_ok)
            use_lcl = lcl_ok;
        else {
            unservable.push_back(po.order->id);
            continue;
        }
        const auto& path = use_lcl ? po.costs.lcl_path : po.costs.air_path;
        const auto& window = use_lcl ? po.lcl_usable : po.air_usable;
        int anchor = opt.fallback_latest ? window.hi : window.lo;
        auto legs = schedule_route(inst, *po.order, path, anchor);
        if (!legs) throw structural_error("internal: fallback schedule failed");
        plan.routes[po.order->id] = std::move(*legs);
    }

    std::sort(plan.bookings.begin(), plan.bookings.end());

    HeuristicResult result;
    result.plan = std::move(plan);
    result.cost = plan_cost(inst, result.plan);
    result.unservable = std::move(unservable);
    result.commits = std::move(commits);
    return result;
}

}  // namespace shipplan
