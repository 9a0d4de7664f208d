#include <catch2/catch_amalgamated.hpp>

#include "shipplan/shipplan.hpp"
#include "testgen.hpp"

using namespace shipplan;
using testgen::mini_instance;
using testgen::mini_order;
using testgen::MiniNet;

TEST_CASE("mode departure windows") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    TimeRanges r = time_ranges(inst, inst.orders[0]);
    CHECK(r.air == WeekInterval{9, 11});
    CHECK(r.lcl == WeekInterval{2, 4});
    CHECK(r.fcl == WeekInterval{4, 4});
}

TEST_CASE("window can be empty") {
    // ready too late for any ocean departure to make the late deadline
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 8, 11, 13)});
    TimeRanges r = time_ranges(inst, inst.orders[0]);
    CHECK(r.lcl.empty());   // lo = 8 + 2 > hi = 4
    CHECK(r.fcl.empty());
    CHECK_FALSE(r.air.empty());
}

TEST_CASE("non-uniform transit times are a configuration error") {
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    inst.network.edges.push_back(
        {"BAL", "GRE", air_mode(), 3, std::nullopt, PerKgCost{1323}});
    CHECK_THROWS_AS(time_ranges(inst, inst.orders[0]), config_error);
}

TEST_CASE("induced-network routing costs") {
    MiniNet net;
    net.ground_rate_cents = 10;     // $100 on a 1000 kg order
    net.ground_rate_us_cents = 8;   // $80
    Instance inst = mini_instance(net, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    RouteCosts rc = route_costs(inst, inst.orders[0]);
    REQUIRE(rc.fcl_cents_by_lane.size() == 1);
    REQUIRE(rc.fcl_cents_by_lane[0].has_value());
    CHECK(*rc.fcl_cents_by_lane[0] == 18000);  // $100 + $0 + $80
    REQUIRE(rc.air_cents.has_value());
    CHECK(*rc.air_cents == 1323 * 1000);
    REQUIRE(rc.lcl_cents.has_value());
    CHECK(*rc.lcl_cents == 10 * 1000 + 116000 + 80000 * 2 + 8 * 1000);
    CHECK(rc.fcl_path_by_lane[0].size() == 3);

    // stored paths re-price to the stored costs
    auto path_cost = [&](const std::vector<const Edge*>& path) {
        int64_t sum = 0;
        for (const Edge* e : path) sum += leg_cost_cents(*e, inst.orders[0]);
        return sum;
    };
    CHECK(path_cost(rc.lcl_path) == *rc.lcl_cents);
    CHECK(path_cost(rc.air_path) == *rc.air_cents);
    CHECK(path_cost(rc.fcl_path_by_lane[0]) == *rc.fcl_cents_by_lane[0]);
}

TEST_CASE("no-FCL scenario leaves the consolidation map empty") {
    MiniNet net;
    net.with_fcl = false;
    Instance inst = mini_instance(net, {mini_order("P1", 1000, 20000, 0, 11, 13)});
    RouteCosts rc = route_costs(inst, inst.orders[0]);
    CHECK(rc.fcl_cents_by_lane.empty());
}

TEST_CASE("route costs agree with exhaustive option enumeration") {
    for (uint64_t seed : {31, 32, 33}) {
        Instance inst = testgen::desk_instance(seed, 3, 14);
        for (const auto& p : inst.orders) {
            RouteCosts rc = route_costs(inst, p);
            auto options = enumerate_options(inst, p);
            std::optional<int64_t> air, lcl, fcl;
            for (const auto& o : options) {
                auto& slot = o.main_mode == ModeClass::Air   ? air
                             : o.main_mode == ModeClass::Lcl ? lcl
                                                             : fcl;
                if (!slot || o.cost_cents < *slot) slot = o.cost_cents;
            }
            if (air) CHECK(*rc.air_cents == *air);
            if (lcl) CHECK(*rc.lcl_cents == *lcl);
            if (fcl) {
                int64_t best_lane = std::numeric_limits<int64_t>::max();
                for (const auto& c : rc.fcl_cents_by_lane)
                    if (c) best_lane = std::min(best_lane, *c);
                CHECK(best_lane == *fcl);
            }
        }
    }
}

TEST_CASE("consolidation item value") {
    RouteCosts rc;
    rc.lcl_cents = 50000;        // $500.00
    rc.air_cents = 70000;        // $700.00
    rc.fcl_cents_by_lane = {18000};  // $180.00
    CHECK(item_value_dollars(rc, 0) == 320);

    rc.lcl_cents = 18050;  // $180.50: floor(0.50) = 0, caller excludes
    CHECK(item_value_dollars(rc, 0) == 0);

    rc.lcl_cents = 18000;  // min(L, A) == F
    CHECK(item_value_dollars(rc, 0) == 0);

    rc.lcl_cents.reset();
    rc.air_cents.reset();
    CHECK_FALSE(item_value_dollars(rc, 0).has_value());
}

TEST_CASE("a container below its fixed cost is never opened") {
    MiniNet net;
    net.ground_rate_cents = 0;
    net.ground_rate_us_cents = 0;
    net.lcl_rate_cents = 50000;
    net.air_rate_cents = 100000;
    // LCL alternative = $1,160 + $50/CBM * 22.755 CBM = $12,537.50, so the
    // item is worth $12,537 against a $12,538 fixed charge.
    Instance inst = mini_instance(net, {mini_order("P1", 20000, 227550, 0, 11, 13)});
    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.plan.bookings.empty());
    CHECK(res.commits.empty());
    REQUIRE(res.plan.routes.count("P1"));
    bool lcl = false;
    for (const auto& leg : res.plan.routes["P1"]) lcl |= leg.mode.cls == ModeClass::Lcl;
    CHECK(lcl);
    CHECK(res.cost.total_cents == 1253750);
}

TEST_CASE("a container above its fixed cost is opened") {
    MiniNet net;
    net.ground_rate_cents = 0;
    net.ground_rate_us_cents = 0;
    net.lcl_rate_cents = 50000;
    net.air_rate_cents = 100000;
    Instance inst = mini_instance(net, {mini_order("P1", 20000, 230000, 0, 11, 13)});
    HeuristicResult res = solve_heuristic(inst);
    REQUIRE(res.plan.bookings.size() == 1);
    CHECK(res.plan.bookings[0].depart_week >= inst.booking_lead_weeks);
    CHECK(res.cost.fcl_fixed_cents == 1253800);
    CHECK(res.cost.lcl_cents == 0);
    CHECK(validate_plan(inst, res.plan).ok());
}

TEST_CASE("postponement defers a booking when a later week collects more value") {
    MiniNet net;
    net.ground_rate_cents = 0;
    net.ground_rate_us_cents = 0;
    net.lcl_rate_cents = 50000;
    // A alone already justifies a container at week 4; B becomes eligible at
    // week 5 and adds enough value that waiting one week wins.
    Instance inst = mini_instance(net,
                                  {mini_order("A", 1000, 240000, 0, 13, 15),    // LCL $13,160
                                   mini_order("B", 1000, 130000, 3, 13, 15)},   // LCL $7,660
                                  16);
    HeuristicResult res = solve_heuristic(inst);
    REQUIRE(res.commits.size() == 1);
    CHECK(res.commits[0].depart_week == 5);
    CHECK(res.commits[0].order_ids == std::vector<std::string>{"A", "B"});
    CHECK(res.commits[0].value_dollars == 13160 + 7660);
    REQUIRE(res.plan.bookings.size() == 1);
    CHECK(res.plan.bookings[0].depart_week == 5);
    CHECK(validate_plan(inst, res.plan).ok());
}

TEST_CASE("multi-hop feeder chains schedule and validate") {
    // two ground hops before the ocean leg; the formula window is wider than
    // what the scheduler accepts, so the usable window is clipped
    Network net;
    net.locations = {{"CNO", LocationKind::Supply, "Origin"},
                     {"HUB", LocationKind::InTransit, "Inland Hub"},
                     {"SHA", LocationKind::InTransit, "Shanghai Port"},
                     {"BAL", LocationKind::InTransit, "Baltimore Port"},
                     {"GRE", LocationKind::Demand, "Greenville"}};
    net.edges = {
        {"CNO", "HUB", ground_mode(), 2, std::nullopt, PerKgCost{10}},
        {"HUB", "SHA", ground_mode(), 2, std::nullopt, PerKgCost{10}},
        {"SHA", "BAL", lcl_mode(), 7, std::nullopt, LclCost{116000, 80000}},
        {"BAL", "GRE", ground_mode(), 2, std::nullopt, PerKgCost{10}},
    };
    Instance inst;
    inst.network = net;
    inst.orders = {mini_order("P1", 500, 10000, 0, 13, 15)};
    inst.horizon_weeks = 16;
    inst.dwell_limit_weeks = 2;
    inst.booking_lead_weeks = 4;
    inst.bookings_per_port_week = 2;

    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.unservable.empty());
    REQUIRE(res.plan.routes.count("P1"));
    CHECK(res.plan.routes["P1"].size() == 4);
    CHECK(validate_plan(inst, res.plan).ok());
}

TEST_CASE("no-FCL fallback ships every order at its cheapest feasible mode") {
    Instance inst = testgen::desk_instance(41, 5, 14, Scenario::NoFcl);
    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.plan.bookings.empty());
    Instance served = testgen::without_orders(inst, res.unservable);
    CHECK(validate_plan(served, res.plan).ok());
    int64_t expected = 0;
    for (const auto& p : served.orders) {
        RouteCosts rc = route_costs(inst, p);
        TimeRanges r = time_ranges(inst, p);
        std::optional<int64_t> best;
        if (rc.lcl_cents && !r.lcl.empty()) best = *rc.lcl_cents;
        if (rc.air_cents && !r.air.empty() && (!best || *rc.air_cents < *best))
            best = *rc.air_cents;
        REQUIRE(best.has_value());
        expected += *best;
    }
    CHECK(res.cost.total_cents == expected);
}

TEST_CASE("heuristic plans validate and are never below the exact optimum") {
    for (uint64_t seed : {51, 52, 53, 54, 55}) {
        Instance inst = testgen::desk_instance(seed, 5, 13);
        HeuristicResult heur = solve_heuristic(inst);
        OracleResult exact = solve_exact(inst);
        Instance served = testgen::without_orders(inst, heur.unservable);
        REQUIRE(validate_plan(served, heur.plan).ok());
        CHECK(heur.unservable == exact.unservable);
        CHECK(heur.cost.total_cents >= exact.cost.total_cents);
    }
}

TEST_CASE("booking rules hold on generated instances") {
    GenConfig cfg;
    cfg.seed = 61;
    cfg.n_products = 120;
    cfg.horizon_months = 6;
    Instance inst = generate(cfg);
    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.unservable.empty());
    REQUIRE(validate_plan(inst, res.plan).ok());

    std::set<Booking> seen;
    std::map<std::pair<std::string, int>, int> per_port;
    for (const auto& b : res.plan.bookings) {
        CHECK(b.depart_week >= cfg.booking_lead_weeks);
        CHECK(seen.insert(b).second);
        per_port[{b.origin, b.depart_week}]++;
    }
    for (const auto& [key, count] : per_port) CHECK(count <= cfg.bookings_per_port_week);

    // commit predicate: consolidated value beats the fixed charge
    for (const auto& c : res.commits) {
        CHECK(c.value_dollars * 100 > shipplan::gen::kFclFixedCents);
        CHECK(!c.order_ids.empty());
    }
}

TEST_CASE("identical instance, identical plan, any thread count") {
    GenConfig cfg;
    cfg.seed = 62;
    cfg.n_products = 60;
    Instance inst = generate(cfg);
    HeuristicOptions one, four;
    one.threads = 1;
    four.threads = 4;
    HeuristicResult a = solve_heuristic(inst, one);
    HeuristicResult b = solve_heuristic(inst, four);
    HeuristicResult c = solve_heuristic(inst, one);
    CHECK(dump_canonical(to_json(a.plan)) == dump_canonical(to_json(b.plan)));
    CHECK(dump_canonical(to_json(a.plan)) == dump_canonical(to_json(c.plan)));
    CHECK(a.cost == b.cost);
}

TEST_CASE("fallback departures move to the earliest week on request") {
    MiniNet net;
    net.with_fcl = false;
    Instance inst = mini_instance(net, {mini_order("P1", 200, 4000, 0, 11, 13)});
    HeuristicOptions latest, earliest;
    earliest.fallback_latest = false;
    HeuristicResult a = solve_heuristic(inst, latest);
    HeuristicResult b = solve_heuristic(inst, earliest);
    REQUIRE(validate_plan(inst, a.plan).ok());
    REQUIRE(validate_plan(inst, b.plan).ok());
    CHECK(a.cost.total_cents == b.cost.total_cents);  // rates are week-independent
    CHECK(b.plan.routes["P1"].front().depart_week < a.plan.routes["P1"].front().depart_week);
}

TEST_CASE("orders with no feasible window are reported, not planned") {
    // ready week 13 leaves no departure that can reach the window in a
    // 14-week horizon
    Instance inst = mini_instance(MiniNet{}, {mini_order("P1", 500, 10000, 13, 24, 26),
                                              mini_order("P2", 500, 10000, 0, 11, 13)});
    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.unservable == std::vector<std::string>{"P1"});
    CHECK(res.plan.routes.count("P1") == 0);
    CHECK(res.plan.routes.count("P2") == 1);
    Instance served = testgen::without_orders(inst, res.unservable);
    CHECK(validate_plan(served, res.plan).ok());
}

TEST_CASE("ocean windows stay open even without dwell allowance") {
    // every generated deadline gap is at least 11 weeks against a 9-week
    // ground-ocean-ground chain, so a zero dwell limit still leaves a
    // nonempty ocean window for every order
    GenConfig cfg;
    cfg.seed = 85;
    cfg.n_products = 100;
    cfg.dwell_limit_weeks = 0;
    Instance inst = generate(cfg);
    for (const auto& p : inst.orders) {
        TimeRanges r = time_ranges(inst, p);
        CHECK_FALSE(r.lcl.empty());
        CHECK_FALSE(r.air.empty());
    }
    HeuristicResult res = solve_heuristic(inst);
    CHECK(res.unservable.empty());
    CHECK(validate_plan(inst, res.plan).ok());
}

TEST_CASE("removing consolidation never reduces the heuristic cost") {
    for (uint64_t seed : {71, 72, 73}) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.n_products = 50;
        Instance base = generate(cfg);
        cfg.scenario = Scenario::NoFcl;
        Instance nofcl = generate(cfg);
        int64_t with = solve_heuristic(base).cost.total_cents;
        int64_t without = solve_heuristic(nofcl).cost.total_cents;
        CHECK(with <= without);
    }
}
