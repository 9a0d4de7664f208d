#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "shipplan/types.hpp"

namespace shipplan {

// Lookup tables over an Instance. Building one also performs the structural
// checks shared by every consumer: ids resolve, kinds are consistent, FCL
// lanes are unique per port pair and carry finite capacity.
class InstanceIndex {
  public:
    explicit InstanceIndex(const Instance& inst) : inst_(inst) {
        for (const auto& loc : inst.network.locations) {
            if (!locations_.emplace(loc.id, &loc).second)
                throw structural_error("duplicate location id: " + loc.id);
        }
        for (const auto& e : inst.network.edges) {
            require_location(e.origin, "edge origin");
            require_location(e.dest, "edge dest");
            if (e.transit_weeks < 0)
                throw structural_error("negative transit on " + describe(e));
            if (e.mode.cls == ModeClass::Fcl) {
                if (e.mode.container_index != 1)
                    throw structural_error(
                        "static network FCL lanes use container_index 1; slots are "
                        "materialized at booking time: " + describe(e));
                if (!e.capacity_kg || *e.capacity_kg <= 0)
                    throw structural_error("FCL lane without finite capacity: " + describe(e));
                if (!fcl_by_pair_.emplace(pair_key(e.origin, e.dest), &e).second)
                    throw structural_error("duplicate FCL lane for pair " + e.origin + "->" + e.dest);
            } else if (e.mode.container_index != 0) {
                throw structural_error("container_index on non-FCL edge: " + describe(e));
            } else if (e.capacity_kg) {
                throw structural_error("only FCL lanes carry a capacity: " + describe(e));
            }
            edges_[edge_key(e.origin, e.dest, e.mode.cls)] = &e;
        }
        for (const auto& p : inst.orders) {
            if (!orders_.emplace(p.id, &p).second)
                throw structural_error("duplicate order id: " + p.id);
            const Location* o = find_location(p.origin);
            const Location* d = find_location(p.destination);
            if (!o || o->kind != LocationKind::Supply)
                throw structural_error("order " + p.id + ": origin is not a supply node");
            if (!d || d->kind != LocationKind::Demand)
                throw structural_error("order " + p.id + ": destination is not a demand node");
            if (p.gross_weight_kg <= 0)
                throw structural_error("order " + p.id + ": nonpositive weight");
            if (p.air_charge_weight_kg_e4 < p.gross_weight_kg * 10000)
                throw structural_error("order " + p.id + ": chargeable weight below gross weight");
            if (p.earliest_week > p.latest_week || p.ready_week > p.latest_week)
                throw structural_error("order " + p.id + ": inconsistent deadlines");
        }
        if (inst.horizon_weeks <= inst.booking_lead_weeks)
            throw structural_error("horizon must exceed the booking lead time");
        if (inst.dwell_limit_weeks < 0 || inst.booking_lead_weeks < 0 ||
            inst.bookings_per_port_week < 1)
            throw structural_error("invalid instance parameters (rho/upsilon/lambda)");
    }

    const Instance& instance() const { return inst_; }

    const Location* find_location(const std::string& id) const {
        auto it = locations_.find(id);
        return it == locations_.end() ? nullptr : it->second;
    }

    const ProductOrder* find_order(const std::string& id) const {
        auto it = orders_.find(id);
        return it == orders_.end() ? nullptr : it->second;
    }

    const ProductOrder& order(const std::string& id) const {
        const ProductOrder* p = find_order(id);
        if (!p) throw structural_error("unknown order id: " + id);
        return *p;
    }

    // Non-FCL edge lookup by endpoints and class.
    const Edge* find_edge(const std::string& origin, const std::string& dest, ModeClass cls) const {
        auto it = edges_.find(edge_key(origin, dest, cls));
        return it == edges_.end() ? nullptr : it->second;
    }

    // FCL lane parameters for a pair; plan legs/bookings reference slot
    // indices 1..lambda on top of this single static edge.
    const Edge* find_fcl_lane(const std::string& origin, const std::string& dest) const {
        auto it = fcl_by_pair_.find(pair_key(origin, dest));
        return it == fcl_by_pair_.end() ? nullptr : it->second;
    }

    // Resolves the static edge behind a plan leg; throws on dangling refs.
    const Edge& resolve(const Leg& leg) const {
        if (leg.mode.cls == ModeClass::Fcl) {
            const Edge* e = find_fcl_lane(leg.origin, leg.dest);
            if (!e) throw structural_error("no FCL lane " + leg.origin + "->" + leg.dest);
            if (leg.mode.container_index < 1 ||
                leg.mode.container_index > inst_.bookings_per_port_week)
                throw structural_error("container index out of range on " +
                                       describe_lane(leg.origin, leg.dest, leg.mode.container_index));
            return *e;
        }
        const Edge* e = find_edge(leg.origin, leg.dest, leg.mode.cls);
        if (!e)
            throw structural_error("no " + std::string(to_string(leg.mode.cls)) + " edge " +
                                   leg.origin + "->" + leg.dest);
        return *e;
    }

    const Edge& resolve(const Booking& b) const {
        const Edge* e = find_fcl_lane(b.origin, b.dest);
        if (!e) throw structural_error("booking on unknown FCL lane " + b.origin + "->" + b.dest);
        if (b.container_index < 1 || b.container_index > inst_.bookings_per_port_week)
            throw structural_error("container index out of range on " +
                                   describe_lane(b.origin, b.dest, b.container_index));
        return *e;
    }

    std::vector<const Edge*> fcl_lanes() const {
        std::vector<const Edge*> v;
        for (const auto& [k, e] : fcl_by_pair_) v.push_back(e);
        return v;  // sorted by (origin, dest) via map key
    }

    std::vector<const Edge*> edges_from(const std::string& origin) const {
        std::vector<const Edge*> v;
        for (const auto& e : inst_.network.edges)
            if (e.origin == origin) v.push_back(&e);
        return v;
    }

  private:
    static std::string pair_key(const std::string& a, const std::string& b) { return a + "\x1f" + b; }
    static std::string edge_key(const std::string& a, const std::string& b, ModeClass c) {
        return a + "\x1f" + b + "\x1f" + to_string(c);
    }
    void require_location(const std::string& id, const char* what) const {
        if (!locations_.count(id))
            throw structural_error(std::string(what) + " references unknown location: " + id);
    }

    const Instance& inst_;
    std::map<std::string, const Location*> locations_;
    std::map<std::string, const ProductOrder*> orders_;
    std::map<std::string, const Edge*> edges_;
    std::map<std::string, const Edge*> fcl_by_pair_;
};

// Uniform per-mode transit times, required by the heuristic's time-range
// formulas. Throws config_error when a mode has mixed transit times.
struct UniformTransit {
    int ground{0};
    int ocean{0};
    int air{0};
};

inline UniformTransit uniform_transit_times(const Instance& inst) {
    std::optional<int> g, o, a;
    auto merge = [](std::optional<int>& slot, int v, const char* mode) {
        if (slot && *slot != v)
            throw config_error(std::string("non-uniform ") + mode +
                               " transit times; per-edge time ranges are not supported");
        slot = v;
    };
    for (const auto& e : inst.network.edges) {
        switch (e.mode.cls) {
            case ModeClass::Ground: merge(g, e.transit_weeks, "ground"); break;
            case ModeClass::Air: merge(a, e.transit_weeks, "air"); break;
            case ModeClass::Lcl:
            case ModeClass::Fcl: merge(o, e.transit_weeks, "ocean"); break;
        }
    }
    return {g.value_or(0), o.value_or(0), a.value_or(0)};
}

}  // namespace shipplan
