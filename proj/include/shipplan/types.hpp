#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Core domain types for multi-period, multi-commodity shipment planning.
//
// Conventions used throughout the library:
//   - money is int64 cents
//   - weights are integer kilograms
//   - volumes are integer ten-thousandths of a CBM (suffix _e4)
//   - weeks are 0-based indices into the planning horizon [0, horizon_weeks)

namespace shipplan {

// Structural problems (dangling ids, malformed files) are exceptions,
// distinct from constraint violations which are reported as data.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied configuration (CLI flags, variant combos, generator config).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A capability refusal: the request is well-formed but outside supported limits.
struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LocationKind { Supply, InTransit, Demand };

struct Location {
    std::string id;
    LocationKind kind{LocationKind::Supply};
    std::string label;
};

enum class ModeClass { Ground, Air, Lcl, Fcl };

// container_index numbers parallel FCL slots between the same port pair;
// it is >= 1 exactly when cls == Fcl and 0 otherwise.
struct TransportMode {
    ModeClass cls{ModeClass::Ground};
    int container_index{0};

    bool operator==(const TransportMode&) const = default;
};

inline TransportMode ground_mode() { return {ModeClass::Ground, 0}; }
inline TransportMode air_mode() { return {ModeClass::Air, 0}; }
inline TransportMode lcl_mode() { return {ModeClass::Lcl, 0}; }
inline TransportMode fcl_mode(int k) { return {ModeClass::Fcl, k}; }

struct PerKgCost {
    int64_t rate_cents_per_kg{0};
    bool operator==(const PerKgCost&) const = default;
};

struct LclCost {
    int64_t bunker_cents{0};
    int64_t rate_cents_per_cbm{0};
    bool operator==(const LclCost&) const = default;
};

struct FclCost {
    int64_t fixed_cost_cents{0};
    int64_t variable_cents_per_order{0};
    bool operator==(const FclCost&) const = default;
};

using CostSpec = std::variant<PerKgCost, LclCost, FclCost>;

// A directed connection. capacity_kg is empty for uncapacitated edges
// (LCL, air and ground lanes); FCL lanes always carry a finite capacity.
struct Edge {
    std::string origin;
    std::string dest;
    TransportMode mode;
    int transit_weeks{0};
    std::optional<int64_t> capacity_kg;
    CostSpec cost{PerKgCost{}};
};

struct Network {
    std::vector<Location> locations;
    std::vector<Edge> edges;
};

// One purchase-order line. earliest/latest are the delivery window;
// ready_week is when the goods can leave the supplier.
struct ProductOrder {
    std::string id;
    std::string origin;
    std::string destination;
    int64_t gross_weight_kg{0};
    int64_t volume_cbm_e4{0};
    int64_t air_charge_weight_kg_e4{0};
    int ready_week{0};
    int earliest_week{0};
    int latest_week{0};
};

// Provenance stamp carried by generated instances.
struct Manifest {
    std::string generator_version;
    uint64_t seed{0};
    std::string scenario;

    bool operator==(const Manifest&) const = default;
};

struct Instance {
    Network network;
    std::vector<ProductOrder> orders;
    int horizon_weeks{0};
    int dwell_limit_weeks{0};     // rho: max idle weeks at an in-transit node
    int booking_lead_weeks{0};    // upsilon: min advance weeks for an FCL booking
    int bookings_per_port_week{1};// lambda: max FCL bookings per port per week
    std::optional<Manifest> manifest;
};

// One reserved FCL container slot: the lane (origin, dest, container_index)
// departing at depart_week.
struct Booking {
    std::string origin;
    std::string dest;
    int container_index{1};
    int depart_week{0};

    bool operator==(const Booking&) const = default;
    auto operator<=>(const Booking&) const = default;
};

struct Leg {
    std::string origin;
    std::string dest;
    TransportMode mode;
    int depart_week{0};
};

struct ShipmentPlan {
    std::map<std::string, std::vector<Leg>> routes;  // order id -> leg chain
    std::vector<Booking> bookings;
};

struct CostBreakdown {
    int64_t fcl_fixed_cents{0};
    int64_t fcl_variable_cents{0};
    int64_t lcl_cents{0};
    int64_t air_cents{0};
    int64_t ground_cents{0};
    int64_t penalty_cents{0};
    int64_t total_cents{0};

    bool operator==(const CostBreakdown&) const = default;
};

inline CostBreakdown finalize(CostBreakdown b) {
    b.total_cents = b.fcl_fixed_cents + b.fcl_variable_cents + b.lcl_cents +
                    b.air_cents + b.ground_cents + b.penalty_cents;
    return b;
}

enum class ViolationFamily {
    Capacity,         // per-(lane, week) FCL weight over capacity
    BookingMissing,   // FCL leg with no matching booking
    BookingDuplicate, // same (lane, week) booked twice
    BookingLead,      // booking departs before the lead-time cutoff
    PortCap,          // more bookings at a port-week than allowed
    Availability,     // departure before the order is ready
    Dwell,            // idle time at an in-transit node over the limit
    Deadline,         // arrival outside [earliest, latest]
    Chaining,         // legs do not form an origin->destination chain
    Horizon,          // departure outside the planning horizon
    Unrouted,         // order present in the instance but not in the plan
};

struct Violation {
    ViolationFamily family{ViolationFamily::Chaining};
    std::string order_id; // empty when not order-specific
    std::string edge;     // "SHA->BAL[fcl#2]" style, empty when not edge-specific
    int week{-1};         // -1 when not week-specific
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline const char* to_string(ViolationFamily f) {
    switch (f) {
        case ViolationFamily::Capacity: return "capacity";
        case ViolationFamily::BookingMissing: return "booking_missing";
        case ViolationFamily::BookingDuplicate: return "booking_duplicate";
        case ViolationFamily::BookingLead: return "booking_lead";
        case ViolationFamily::PortCap: return "port_cap";
        case ViolationFamily::Availability: return "availability";
        case ViolationFamily::Dwell: return "dwell";
        case ViolationFamily::Deadline: return "deadline";
        case ViolationFamily::Chaining: return "chaining";
        case ViolationFamily::Horizon: return "horizon";
        case ViolationFamily::Unrouted: return "unrouted";
    }
    return "?";
}

inline const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::Ground: return "ground";
        case ModeClass::Air: return "air";
        case ModeClass::Lcl: return "lcl";
        case ModeClass::Fcl: return "fcl";
    }
    return "?";
}

inline const char* to_string(LocationKind k) {
    switch (k) {
        case LocationKind::Supply: return "supply";
        case LocationKind::InTransit: return "in_transit";
        case LocationKind::Demand: return "demand";
    }
    return "?";
}

inline std::string describe(const Edge& e) {
    std::string s = e.origin + "->" + e.dest + "[" + to_string(e.mode.cls);
    if (e.mode.cls == ModeClass::Fcl) s += "#" + std::to_string(e.mode.container_index);
    return s + "]";
}

inline std::string describe_lane(const std::string& origin, const std::string& dest, int k) {
    return origin + "->" + dest + "[fcl#" + std::to_string(k) + "]";
}

}  // namespace shipplan
