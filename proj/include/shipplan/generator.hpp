#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "shipplan/rng.hpp"
#include "shipplan/types.hpp"
#include "shipplan/version.hpp"

namespace shipplan {

enum class Scenario { Baseline, PortClosure, NoFcl };

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Baseline: return "baseline";
        case Scenario::PortClosure: return "port-closure";
        case Scenario::NoFcl: return "no-fcl";
    }
    return "?";
}

inline Scenario scenario_from_string(const std::string& s) {
    if (s == "baseline") return Scenario::Baseline;
    if (s == "port-closure") return Scenario::PortClosure;
    if (s == "no-fcl") return Scenario::NoFcl;
    throw config_error("unknown scenario: " + s);
}

struct GenConfig {
    uint64_t seed{1};
    int n_products{50};
    int horizon_months{6};  // 6 -> 26 weeks, 12 -> 52 weeks
    int n_destinations{1};
    Scenario scenario{Scenario::Baseline};
    int dwell_limit_weeks{2};
    int booking_lead_weeks{4};
    int bookings_per_port_week{2};
};

namespace gen {

// Network constants. Rates that vary are sampled per edge; everything else
// is a flat tariff.
constexpr int kGroundWeeks = 2;
constexpr int kOceanWeeks = 7;
constexpr int kAirWeeks = 2;
constexpr int64_t kFclCapacityKg = 20000;
constexpr int64_t kFclFixedCents = 1253800;      // $12,538 per container
constexpr int64_t kLclBunkerCents = 116000;      // $1,160 per consignment
constexpr int64_t kAirCentsPerKg = 1323;         // $13.23/kg chargeable
constexpr int64_t kGroundRateLoCents = 10, kGroundRateHiCents = 50;       // $/kg in cents
constexpr int64_t kLclRateLoCents = 70000, kLclRateHiCents = 90000;       // $/CBM in cents

inline const std::vector<Location>& china_ports() {
    static const std::vector<Location> v = {
        {"SHA", LocationKind::InTransit, "Shanghai Port"},
        {"QIN", LocationKind::InTransit, "Qingdao Port"},
    };
    return v;
}

inline const std::vector<Location>& us_ports() {
    static const std::vector<Location> v = {
        {"BAL", LocationKind::InTransit, "Baltimore Port"},
        {"CHS", LocationKind::InTransit, "Charleston Port"},
        {"NEW", LocationKind::InTransit, "Newark Port"},
        {"SAV", LocationKind::InTransit, "Savannah Port"},
    };
    return v;
}

inline const std::vector<Location>& destination_cities() {
    static const std::vector<Location> v = {
        {"GRE", LocationKind::Demand, "Greenville"},
        {"BAN", LocationKind::Demand, "Bangor"},
        {"ATL", LocationKind::Demand, "Atlanta"},
        {"SCH", LocationKind::Demand, "Schenectady"},
    };
    return v;
}

inline Location origin_node() { return {"CNO", LocationKind::Supply, "China Inland Origin"}; }

}  // namespace gen

// Gross weight in kg: bimodal uniform, light parts dominate.
inline int64_t sample_gross_weight(SplitMix64& rng) {
    bool light = rng.bernoulli(0.63);
    double v = rng.uniform_real(0.0, 1.0);
    double kg = light ? 50.0 + v * 450.0 : 500.0 + v * 4500.0;
    return llround(kg);
}

// Volume in 1e-4 CBM: gross weight in tons times a mixture coefficient.
inline int64_t sample_volume(SplitMix64& rng, int64_t gross_weight_kg) {
    double u = rng.uniform_real(0.0, 1.0);
    double v = rng.uniform_real(0.0, 1.0);
    double lo, hi;
    if (u < 0.125)      { lo = 0.5; hi = 1.5; }
    else if (u < 0.800) { lo = 1.5; hi = 3.0; }
    else if (u < 0.900) { lo = 3.0; hi = 4.5; }
    else if (u < 0.925) { lo = 4.5; hi = 6.0; }
    else                { lo = 6.0; hi = 7.5; }
    double coeff = lo + v * (hi - lo);
    // coeff * (kg/1000) CBM, in 1e-4 CBM units
    return llround(coeff * double(gross_weight_kg) * 10.0);
}

// Chargeable air weight in 1e-4 kg. Dense cargo ships at gross weight;
// when volume exceeds 3 CBM per ton a volumetric multiplier applies.
inline int64_t air_charge_weight_e4(int64_t gross_weight_kg, int64_t volume_cbm_e4) {
    // ratio = volume / tons >= 3  <=>  volume_e4 >= 30 * kg, exactly in integers
    bool volumetric = volume_cbm_e4 >= 30 * gross_weight_kg;
    return gross_weight_kg * (volumetric ? 12121 : 10000);
}

struct OrderTiming {
    int ready_week;
    int earliest_week;
    int latest_week;
};

// Ready week lands in the first 35% of the horizon; the delivery window
// opens 11+ weeks later and spans exactly two weeks.
inline OrderTiming sample_timing(SplitMix64& rng, int horizon_weeks) {
    if (horizon_weeks < 15)
        throw config_error("timing rules need a horizon of at least 15 weeks");
    int ready_hi = int(0.35 * horizon_weeks);  // exclusive
    int ready = int(rng.uniform_int(0, ready_hi - 1));
    double branch = rng.uniform_real(0.0, 1.0);
    int gap_hi = horizon_weeks - 2 - ready;
    // Draw unconditionally so the per-order draw count stays fixed.
    int wide_gap = int(rng.uniform_int(13, std::max(13, gap_hi)));
    int earliest;
    if (branch < 0.075)
        earliest = ready + 11;
    else if (branch < 0.475)
        earliest = ready + 12;
    else if (gap_hi < 13)
        earliest = std::min(ready + 13, horizon_weeks - 2);  // degenerate late-ready case
    else
        earliest = ready + wide_gap;
    return {ready, earliest, earliest + 2};
}

// Full port-pair network for the given scenario. Rates are drawn for the
// complete baseline edge set first and scenario filtering happens after,
// so the surviving edges carry identical rates across scenarios of one seed.
inline Network build_network(Scenario scenario, int n_destinations, SplitMix64& rng) {
    if (n_destinations < 1 || n_destinations > 3)
        throw config_error("n_destinations must be 1, 2, or 3");

    Network net;
    net.locations.push_back(gen::origin_node());
    for (const auto& l : gen::china_ports()) net.locations.push_back(l);
    for (const auto& l : gen::us_ports()) net.locations.push_back(l);
    std::vector<Location> dests(gen::destination_cities().begin(),
                                gen::destination_cities().begin() + n_destinations);
    for (const auto& l : dests) net.locations.push_back(l);

    auto ground_rate = [&rng] {
        return PerKgCost{rng.uniform_int(gen::kGroundRateLoCents, gen::kGroundRateHiCents)};
    };

    std::vector<Edge> edges;
    for (const auto& cp : gen::china_ports())
        edges.push_back({"CNO", cp.id, ground_mode(), gen::kGroundWeeks, std::nullopt, ground_rate()});
    for (const auto& cp : gen::china_ports()) {
        for (const auto& up : gen::us_ports()) {
            edges.push_back({cp.id, up.id, fcl_mode(1), gen::kOceanWeeks, gen::kFclCapacityKg,
                             FclCost{gen::kFclFixedCents, 0}});
            edges.push_back({cp.id, up.id, lcl_mode(), gen::kOceanWeeks, std::nullopt,
                             LclCost{gen::kLclBunkerCents,
                                     rng.uniform_int(gen::kLclRateLoCents, gen::kLclRateHiCents)}});
        }
    }
    for (const auto& up : gen::us_ports())
        for (const auto& d : dests)
            edges.push_back({up.id, d.id, ground_mode(), gen::kGroundWeeks, std::nullopt, ground_rate()});
    for (const auto& d : dests)
        edges.push_back({"CNO", d.id, air_mode(), gen::kAirWeeks, std::nullopt,
                         PerKgCost{gen::kAirCentsPerKg}});

    for (const auto& e : edges) {
        if (scenario == Scenario::PortClosure && (e.origin == "SHA" || e.dest == "SHA")) continue;
        if (scenario == Scenario::NoFcl && e.mode.cls == ModeClass::Fcl) continue;
        net.edges.push_back(e);
    }
    return net;
}

// Deterministic synthetic instance: same config, same bytes.
inline Instance generate(const GenConfig& cfg) {
    if (cfg.n_products < 1) throw config_error("n_products must be positive");
    if (cfg.horizon_months != 6 && cfg.horizon_months != 12)
        throw config_error("horizon_months must be 6 or 12");
    if (cfg.dwell_limit_weeks < 0 || cfg.booking_lead_weeks < 0 || cfg.bookings_per_port_week < 1)
        throw config_error("invalid dwell/booking-lead/port-cap parameters");

    int horizon = cfg.horizon_months == 6 ? 26 : 52;

    SplitMix64 weights = stream(cfg.seed, stream_tag::weights);
    SplitMix64 volumes = stream(cfg.seed, stream_tag::volumes);
    SplitMix64 timing = stream(cfg.seed, stream_tag::timing);
    SplitMix64 dest_rng = stream(cfg.seed, stream_tag::destinations);
    SplitMix64 net_rng = stream(cfg.seed, stream_tag::network);

    Instance inst;
    inst.network = build_network(cfg.scenario, cfg.n_destinations, net_rng);
    inst.horizon_weeks = horizon;
    inst.dwell_limit_weeks = cfg.dwell_limit_weeks;
    inst.booking_lead_weeks = cfg.booking_lead_weeks;
    inst.bookings_per_port_week = cfg.bookings_per_port_week;
    inst.manifest = Manifest{kToolVersion, cfg.seed, to_string(cfg.scenario)};

    const auto& cities = gen::destination_cities();
    for (int i = 0; i < cfg.n_products; ++i) {
        ProductOrder p;
        char buf[16];
        std::snprintf(buf, sizeof buf, "P%04d", i + 1);
        p.id = buf;
        p.origin = "CNO";
        p.destination = cities[size_t(dest_rng.uniform_int(0, cfg.n_destinations - 1))].id;
        p.gross_weight_kg = sample_gross_weight(weights);
        p.volume_cbm_e4 = sample_volume(volumes, p.gross_weight_kg);
        p.air_charge_weight_kg_e4 = air_charge_weight_e4(p.gross_weight_kg, p.volume_cbm_e4);
        OrderTiming t = sample_timing(timing, horizon);
        p.ready_week = t.ready_week;
        p.earliest_week = t.earliest_week;
        p.latest_week = t.latest_week;
        inst.orders.push_back(std::move(p));
    }
    return inst;
}

}  // namespace shipplan
