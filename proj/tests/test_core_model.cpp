#include <catch2/catch_amalgamated.hpp>

#include "shipplan/shipplan.hpp"
#include "testgen.hpp"

using namespace shipplan;
using testgen::mini_instance;
using testgen::mini_order;
using testgen::MiniNet;

TEST_CASE("empty plan over zero orders is feasible") {
    Instance inst = mini_instance(MiniNet{}, {});
    ShipmentPlan plan;
    CHECK(validate_plan(inst, plan).ok());
}

TEST_CASE("FCL booking before the lead cutoff is flagged") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    ShipmentPlan plan;
    plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 1},
                         {"SHA", "BAL", fcl_mode(1), 3},
                         {"BAL", "GRE", ground_mode(), 10}};
    plan.bookings = {{"SHA", "BAL", 1, 3}};
    ValidationReport rep = validate_plan(inst, plan);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].family == ViolationFamily::BookingLead);
    CHECK(rep.violations[0].week == 3);
}

TEST_CASE("validator reports each violated family") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 5, 11, 13)});

    SECTION("departure before ready week") {
        ShipmentPlan plan;
        plan.routes["P1"] = {{"CNO", "GRE", air_mode(), 4}};
        auto rep = validate_plan(inst, plan);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.violations[0].family == ViolationFamily::Availability);
    }
    SECTION("arrival outside the delivery window") {
        ShipmentPlan plan;
        plan.routes["P1"] = {{"CNO", "GRE", air_mode(), 5}};  // arrives week 7 < 11
        auto rep = validate_plan(inst, plan);
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].family == ViolationFamily::Deadline);
    }
    SECTION("dwell over the limit") {
        ShipmentPlan plan;
        plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 5},
                             {"SHA", "BAL", lcl_mode(), 10},  // 3 idle weeks, rho = 2
                             {"BAL", "GRE", ground_mode(), 17}};
        auto rep = validate_plan(inst, plan);
        bool has_dwell = false;
        for (const auto& v : rep.violations) has_dwell |= v.family == ViolationFamily::Dwell;
        CHECK(has_dwell);
    }
    SECTION("broken chaining") {
        ShipmentPlan plan;
        plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 5},
                             {"BAL", "GRE", ground_mode(), 9}};
        auto rep = validate_plan(inst, plan);
        bool has_chain = false;
        for (const auto& v : rep.violations) has_chain |= v.family == ViolationFamily::Chaining;
        CHECK(has_chain);
    }
    SECTION("unrouted order") {
        ShipmentPlan plan;
        auto rep = validate_plan(inst, plan);
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].family == ViolationFamily::Unrouted);
        CHECK(rep.violations[0].order_id == "P1");
    }
    SECTION("dangling references are structural, not violations") {
        ShipmentPlan plan;
        plan.routes["P1"] = {{"CNO", "NOPE", ground_mode(), 5}};
        CHECK_THROWS_AS(validate_plan(inst, plan), structural_error);
        ShipmentPlan plan2;
        plan2.routes["GHOST"] = {{"CNO", "GRE", air_mode(), 5}};
        CHECK_THROWS_AS(validate_plan(inst, plan2), structural_error);
    }
}

TEST_CASE("capacity and port caps are enforced per week") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 15000, 150000, 0, 11, 13),
                                              mini_order("P2", 15000, 150000, 0, 11, 13)},
                                  16, 2, 4, 1);
    ShipmentPlan plan;
    for (const char* id : {"P1", "P2"})
        plan.routes[id] = {{"CNO", "SHA", ground_mode(), 2},
                           {"SHA", "BAL", fcl_mode(1), 4},
                           {"BAL", "GRE", ground_mode(), 11}};
    plan.bookings = {{"SHA", "BAL", 1, 4}};
    auto rep = validate_plan(inst, plan);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].family == ViolationFamily::Capacity);

    SECTION("slot indices beyond lambda do not resolve") {
        ShipmentPlan p2 = plan;
        p2.routes["P2"][1].mode = fcl_mode(2);
        p2.bookings.push_back({"SHA", "BAL", 2, 4});
        CHECK_THROWS_AS(validate_plan(inst, p2), structural_error);
    }
}

TEST_CASE("port booking cap counts across lanes sharing a port") {
    SplitMix64 rng(7);
    Instance inst;
    inst.network = build_network(Scenario::Baseline, 1, rng);
    inst.orders = {};
    inst.horizon_weeks = 16;
    inst.dwell_limit_weeks = 2;
    inst.booking_lead_weeks = 4;
    inst.bookings_per_port_week = 1;
    ShipmentPlan plan;
    plan.bookings = {{"SHA", "BAL", 1, 5}, {"SHA", "CHS", 1, 5}};
    auto rep = validate_plan(inst, plan);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].family == ViolationFamily::PortCap);
    CHECK(rep.violations[0].edge == "SHA");
    CHECK(rep.violations[0].week == 5);
}

TEST_CASE("instance structure is checked on load") {
    Instance good = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    CHECK_NOTHROW(InstanceIndex{good});

    SECTION("capacity on a non-FCL edge") {
        Instance bad = good;
        for (auto& e : bad.network.edges)
            if (e.mode.cls == ModeClass::Lcl) e.capacity_kg = 5000;
        CHECK_THROWS_AS(InstanceIndex{bad}, structural_error);
    }
    SECTION("chargeable weight below gross weight") {
        Instance bad = good;
        bad.orders[0].air_charge_weight_kg_e4 = bad.orders[0].gross_weight_kg * 9000;
        CHECK_THROWS_AS(InstanceIndex{bad}, structural_error);
    }
    SECTION("horizon must clear the booking lead") {
        Instance bad = good;
        bad.horizon_weeks = bad.booking_lead_weeks;
        CHECK_THROWS_AS(InstanceIndex{bad}, structural_error);
    }
    SECTION("inconsistent deadlines") {
        Instance bad = good;
        bad.orders[0].earliest_week = 14;
        bad.orders[0].latest_week = 12;
        CHECK_THROWS_AS(InstanceIndex{bad}, structural_error);
    }
}

TEST_CASE("duplicate bookings are flagged once") {
    Instance inst = mini_instance(MiniNet{}, {});
    ShipmentPlan plan;
    plan.bookings = {{"SHA", "BAL", 1, 5}, {"SHA", "BAL", 1, 5}};
    auto rep = validate_plan(inst, plan);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].family == ViolationFamily::BookingDuplicate);
}

TEST_CASE("air shipment cost matches the flat per-kg tariff") {
    // 10 kg at $13.23/kg is $132.30 exactly
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 10, 200, 0, 11, 13)});
    ShipmentPlan plan;
    plan.routes["P1"] = {{"CNO", "GRE", air_mode(), 9}};
    CostBreakdown cost = plan_cost(inst, plan);
    CHECK(cost.air_cents == 13230);
    CHECK(cost.total_cents == 13230);
}

TEST_CASE("zero-leg plan for zero orders costs nothing") {
    Instance inst = mini_instance(MiniNet{}, {});
    CostBreakdown cost = plan_cost(inst, ShipmentPlan{});
    CHECK(cost == CostBreakdown{});
}

TEST_CASE("LCL consignment cost is bunker plus volumetric rate") {
    // $1,160 bunker + $800/CBM * 2.5 CBM = $3,160.00
    MiniNet net;
    net.lcl_bunker_cents = 116000;
    net.lcl_rate_cents = 80000;
    net.ground_rate_cents = 0;
    net.ground_rate_us_cents = 0;
    Instance inst = mini_instance(net, {mini_order("P1", 1000, 25000, 0, 11, 13)});
    ShipmentPlan plan;
    plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 0},
                         {"SHA", "BAL", lcl_mode(), 2},
                         {"BAL", "GRE", ground_mode(), 9}};
    CostBreakdown cost = plan_cost(inst, plan);
    CHECK(cost.lcl_cents == 316000);
    CHECK(cost.ground_cents == 0);
    CHECK(cost.total_cents == 316000);
}

TEST_CASE("FCL leg without a booking has no fixed charge to attribute") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    ShipmentPlan plan;
    plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 2},
                         {"SHA", "BAL", fcl_mode(1), 4},
                         {"BAL", "GRE", ground_mode(), 11}};
    CHECK_THROWS_AS(plan_cost(inst, plan), structural_error);
}

TEST_CASE("arrival week is last departure plus transit") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 100, 2000, 0, 4, 20),
                                              mini_order("P2", 100, 2000, 0, 4, 20)});
    ShipmentPlan plan;
    plan.routes["P1"] = {{"CNO", "SHA", ground_mode(), 3}, {"SHA", "BAL", lcl_mode(), 5},
                         {"BAL", "GRE", ground_mode(), 12}};
    CHECK(arrival_week(inst, plan, "P1") == 14);

    plan.routes["P2"] = {{"CNO", "GRE", air_mode(), 2}};
    CHECK(arrival_week(inst, plan, "P2") == 4);
    CHECK_FALSE(arrival_week(inst, plan, "P3").has_value());

    SECTION("three-leg chain with dwell") {
        ShipmentPlan chain;
        chain.routes["P1"] = {{"CNO", "SHA", ground_mode(), 0},
                              {"SHA", "BAL", fcl_mode(1), 2},
                              {"BAL", "GRE", ground_mode(), 9}};
        chain.bookings = {{"SHA", "BAL", 1, 2}};
        CHECK(arrival_week(inst, chain, "P1") == 11);
    }
}

TEST_CASE("relative cost error") {
    CHECK(heuristic_error(110, 100) == Catch::Approx(0.10));
    CHECK(heuristic_error(100, 100) == 0.0);
    CHECK_THROWS_AS(heuristic_error(100, 0), config_error);
}

TEST_CASE("cost accounting is additive and id-permutation invariant") {
    Instance inst = testgen::desk_instance(99, 4, 14);
    HeuristicResult res = solve_heuristic(inst);

    // additivity: total equals the sum over per-order singleton plans plus
    // the per-booking fixed charges
    int64_t legs_total = 0;
    for (const auto& [id, legs] : res.plan.routes) {
        ShipmentPlan solo;
        solo.routes[id] = legs;
        solo.bookings = res.plan.bookings;  // bookings shared, fixed cost excluded below
        CostBreakdown c = plan_cost(inst, solo);
        legs_total += c.total_cents - c.fcl_fixed_cents;
    }
    CostBreakdown full = plan_cost(inst, res.plan);
    InstanceIndex ix(inst);
    int64_t fixed_total = 0;
    for (const auto& b : res.plan.bookings)
        fixed_total += std::get<FclCost>(ix.resolve(b).cost).fixed_cost_cents;
    CHECK(full.total_cents == legs_total + fixed_total);

    // renaming every order consistently leaves the total unchanged
    Instance renamed = inst;
    ShipmentPlan rplan = res.plan;
    for (auto& p : renamed.orders) p.id = "Q" + p.id;
    std::map<std::string, std::vector<Leg>> routes;
    for (auto& [id, legs] : rplan.routes) routes["Q" + id] = legs;
    rplan.routes = std::move(routes);
    CHECK(plan_cost(renamed, rplan).total_cents == full.total_cents);
}

TEST_CASE("feasible plans arrive inside every delivery window") {
    for (uint64_t seed : {11u, 12u, 13u, 14u}) {
        Instance inst = testgen::desk_instance(seed, 5, 13);
        HeuristicResult res = solve_heuristic(inst);
        Instance served = testgen::without_orders(inst, res.unservable);
        REQUIRE(validate_plan(served, res.plan).ok());
        for (const auto& p : served.orders) {
            auto arr = arrival_week(served, res.plan, p.id);
            REQUIRE(arr.has_value());
            CHECK(*arr >= p.earliest_week);
            CHECK(*arr <= p.latest_week);
        }
    }
}
