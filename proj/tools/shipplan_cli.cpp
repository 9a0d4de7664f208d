// shipplan command line: generate instances, solve them, compare solvers,
// run scenario suites, and export MILP files.
//
// Exit codes: 0 success, 2 bad input or configuration, 3 capability refusal
// (an instance outside the exact solver's limits).

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shipplan/shipplan.hpp"

namespace {

using namespace shipplan;

int64_t elapsed_ms(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - from)
        .count();
}

struct GenFlags {
    GenConfig cfg;
    std::string config_path;
    std::string out;
};

GenConfig merge_config(const CLI::App* cmd, const GenFlags& flags) {
    GenConfig cfg = flags.cfg;
    if (!flags.config_path.empty()) {
        json j = parse_json_text(read_text_file(flags.config_path), "config");
        GenConfig base;
        base.seed = j.value("seed", base.seed);
        base.n_products = j.value("products", base.n_products);
        base.horizon_months = j.value("months", base.horizon_months);
        base.n_destinations = j.value("destinations", base.n_destinations);
        if (j.contains("scenario")) base.scenario = scenario_from_string(j.at("scenario"));
        base.dwell_limit_weeks = j.value("dwell_limit", base.dwell_limit_weeks);
        base.booking_lead_weeks = j.value("booking_lead", base.booking_lead_weeks);
        base.bookings_per_port_week = j.value("port_cap", base.bookings_per_port_week);
        // explicit flags win over the config file
        if (!cmd->count("--seed")) cfg.seed = base.seed;
        if (!cmd->count("--products")) cfg.n_products = base.n_products;
        if (!cmd->count("--months")) cfg.horizon_months = base.horizon_months;
        if (!cmd->count("--destinations")) cfg.n_destinations = base.n_destinations;
        if (!cmd->count("--scenario")) cfg.scenario = base.scenario;
        if (!cmd->count("--dwell-limit")) cfg.dwell_limit_weeks = base.dwell_limit_weeks;
        if (!cmd->count("--booking-lead")) cfg.booking_lead_weeks = base.booking_lead_weeks;
        if (!cmd->count("--port-cap")) cfg.bookings_per_port_week = base.bookings_per_port_week;
    }
    return cfg;
}

void add_gen_flags(CLI::App* cmd, GenFlags& flags, bool with_scenario) {
    cmd->add_option("--seed", flags.cfg.seed, "generator seed");
    cmd->add_option("--products", flags.cfg.n_products, "number of purchase-order lines");
    cmd->add_option("--months", flags.cfg.horizon_months, "planning horizon in months (6 or 12)");
    cmd->add_option("--destinations", flags.cfg.n_destinations, "number of destinations (1-3)");
    if (with_scenario)
        cmd->add_option_function<std::string>(
               "--scenario",
               [&flags](const std::string& s) { flags.cfg.scenario = scenario_from_string(s); },
               "baseline | port-closure | no-fcl")
            ->default_str("baseline");
    cmd->add_option("--dwell-limit", flags.cfg.dwell_limit_weeks, "max idle weeks at a port");
    cmd->add_option("--booking-lead", flags.cfg.booking_lead_weeks, "FCL booking lead weeks");
    cmd->add_option("--port-cap", flags.cfg.bookings_per_port_week,
                    "max FCL bookings per port per week");
    cmd->add_option("--config", flags.config_path, "JSON config file (flags override)");
}

std::string scenario_of(const Instance& inst) {
    return inst.manifest ? inst.manifest->scenario : "unknown";
}

RunReport run_heuristic(const Instance& inst, const std::string& digest, int threads,
                        HeuristicResult* result_out) {
    auto t0 = std::chrono::steady_clock::now();
    HeuristicOptions opt;
    opt.threads = threads;
    HeuristicResult res = solve_heuristic(inst, opt);
    RunReport rep;
    rep.wall_clock_ms = elapsed_ms(t0);
    rep.instance_digest = digest;
    rep.scenario = scenario_of(inst);
    rep.solver = "heuristic";
    rep.cost = res.cost;
    classify_modes(inst, res.plan, rep);
    if (result_out) *result_out = std::move(res);
    return rep;
}

RunReport run_oracle(const Instance& inst, const std::string& digest, OracleResult* result_out) {
    auto t0 = std::chrono::steady_clock::now();
    OracleResult res = solve_exact(inst);
    RunReport rep;
    rep.wall_clock_ms = elapsed_ms(t0);
    rep.instance_digest = digest;
    rep.scenario = scenario_of(inst);
    rep.solver = "oracle";
    rep.cost = res.cost;
    classify_modes(inst, res.plan, rep);
    if (result_out) *result_out = std::move(res);
    return rep;
}

json plan_artifact(const ShipmentPlan& plan, const std::string& digest,
                   const std::vector<std::string>& unservable) {
    json j = to_json(plan);
    j["tool_version"] = kToolVersion;
    j["instance_digest"] = digest;
    j["unservable"] = unservable;
    return j;
}

int cmd_gen(const CLI::App* cmd, const GenFlags& flags) {
    GenConfig cfg = merge_config(cmd, flags);
    Instance inst = generate(cfg);
    InstanceIndex check(inst);  // structural sanity before anything is written
    write_text_file(flags.out, dump_canonical(to_json(inst)));
    std::cout << "wrote " << flags.out << " (" << inst.orders.size() << " orders, "
              << inst.horizon_weeks << " weeks, scenario " << to_string(cfg.scenario) << ")\n";
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& solver,
              const std::string& out_plan, const std::string& out_report, int threads,
              bool fallback_earliest) {
    std::string bytes = read_text_file(instance_path);
    std::string digest = digest_hex(bytes);
    Instance inst = instance_from_json(parse_json_text(bytes, "instance"));

    ShipmentPlan plan;
    std::vector<std::string> unservable;
    RunReport rep;
    if (solver == "heuristic") {
        HeuristicResult res;
        HeuristicOptions opt;
        opt.threads = threads;
        opt.fallback_latest = !fallback_earliest;
        auto t0 = std::chrono::steady_clock::now();
        res = solve_heuristic(inst, opt);
        rep.wall_clock_ms = elapsed_ms(t0);
        rep.solver = "heuristic";
        plan = std::move(res.plan);
        unservable = std::move(res.unservable);
        rep.cost = res.cost;
    } else if (solver == "oracle") {
        OracleResult res;
        auto t0 = std::chrono::steady_clock::now();
        res = solve_exact(inst);
        rep.wall_clock_ms = elapsed_ms(t0);
        rep.solver = "oracle";
        plan = std::move(res.plan);
        unservable = std::move(res.unservable);
        rep.cost = res.cost;
    } else {
        throw config_error("unknown solver: " + solver);
    }
    rep.instance_digest = digest;
    rep.scenario = scenario_of(inst);
    classify_modes(inst, plan, rep);

    if (!out_plan.empty())
        write_text_file(out_plan, dump_canonical(plan_artifact(plan, digest, unservable)));
    if (!out_report.empty()) write_text_file(out_report, dump_canonical(to_json(rep)));
    std::cout << rep.solver << " total: " << rep.cost.total_cents << " cents, bookings: "
              << rep.bookings << ", wall clock: " << rep.wall_clock_ms << " ms\n";
    if (!unservable.empty()) {
        std::cout << "unservable orders:";
        for (const auto& id : unservable) std::cout << " " << id;
        std::cout << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& instance_path, const std::string& out_csv, int threads) {
    std::string bytes = read_text_file(instance_path);
    std::string digest = digest_hex(bytes);
    Instance inst = instance_from_json(parse_json_text(bytes, "instance"));

    HeuristicResult heur;
    RunReport hrep = run_heuristic(inst, digest, threads, &heur);
    std::string csv = run_report_csv_header() + "\n";
    if (within_limits(inst)) {
        OracleResult oracle;
        RunReport orep = run_oracle(inst, digest, &oracle);
        hrep.heuristic_error = heuristic_error(heur.cost.total_cents, oracle.cost.total_cents);
        csv += to_csv_row(hrep) + "\n";
        csv += to_csv_row(orep) + "\n";
    } else {
        csv += to_csv_row(hrep) + "\n";
    }
    if (!out_csv.empty()) write_text_file(out_csv, csv);
    std::cout << csv;
    return 0;
}

int cmd_scenario_suite(const CLI::App* cmd, const GenFlags& flags, const std::string& out_csv,
                       int threads) {
    GenConfig base = merge_config(cmd, flags);
    std::string csv = run_report_csv_header() + ",cost_increase_pct\n";
    std::map<std::string, int64_t> heur_base, oracle_base;
    for (Scenario sc : {Scenario::Baseline, Scenario::PortClosure, Scenario::NoFcl}) {
        GenConfig cfg = base;
        cfg.scenario = sc;
        Instance inst = generate(cfg);
        std::string digest = digest_hex(dump_canonical(to_json(inst)));

        RunReport hrep = run_heuristic(inst, digest, threads, nullptr);
        if (sc == Scenario::Baseline) heur_base["h"] = hrep.cost.total_cents;
        double inc = heur_base.count("h") && heur_base["h"] > 0
                         ? 100.0 * double(hrep.cost.total_cents - heur_base["h"]) /
                               double(heur_base["h"])
                         : 0.0;
        csv += to_csv_row(hrep) + "," + std::to_string(inc) + "\n";

        if (within_limits(inst)) {
            RunReport orep = run_oracle(inst, digest, nullptr);
            if (sc == Scenario::Baseline) oracle_base["o"] = orep.cost.total_cents;
            double oinc = oracle_base.count("o") && oracle_base["o"] > 0
                              ? 100.0 * double(orep.cost.total_cents - oracle_base["o"]) /
                                    double(oracle_base["o"])
                              : 0.0;
            csv += to_csv_row(orep) + "," + std::to_string(oinc) + "\n";
        }
    }
    if (!out_csv.empty()) write_text_file(out_csv, csv);
    std::cout << csv;
    return 0;
}

struct ExportFlags {
    std::string instance_path;
    std::string format{"lp"};
    std::string out;
    std::string deadline{"strict"};
    std::string in_transit{"inventory"};
    bool symmetry{false};
    double gamma{0.0};
    double kappa{0.0};
    int64_t big_m{0};
    int64_t penalty_weight{1};
    std::string name_map_path;
    std::string mip_start_plan;
    std::string mip_start_out;
};

int cmd_export(const CLI::App* cmd, const ExportFlags& f) {
    Instance inst = load_instance(f.instance_path);
    VariantConfig variant;
    if (f.deadline == "strict") variant.deadline_mode = DeadlineMode::Strict;
    else if (f.deadline == "penalized") variant.deadline_mode = DeadlineMode::Penalized;
    else if (f.deadline == "service-level") variant.deadline_mode = DeadlineMode::ServiceLevel;
    else throw config_error("unknown deadline mode: " + f.deadline);
    if (f.in_transit == "inventory") variant.in_transit_mode = InTransitMode::Inventory;
    else if (f.in_transit == "original") variant.in_transit_mode = InTransitMode::Original;
    else throw config_error("unknown in-transit mode: " + f.in_transit);
    variant.symmetry_breaking = f.symmetry;
    if (cmd->count("--gamma")) variant.gamma = f.gamma;
    if (cmd->count("--kappa")) variant.kappa = f.kappa;
    if (cmd->count("--big-m")) variant.big_m = f.big_m;
    variant.penalty_weight_cents = f.penalty_weight;

    ModelDescription model = build_model(inst, variant);

    std::ostringstream sink;
    NameMap map;
    if (f.format == "lp") {
        write_lp(model, sink);
    } else if (f.format == "mps") {
        map = write_mps(model, sink);
    } else {
        throw config_error("unknown format: " + f.format);
    }
    write_text_file(f.out, sink.str());
    std::cout << "wrote " << f.out << " (" << model.variables.size() << " variables, "
              << model.constraints.size() << " rows)\n";
    for (const auto& note : model.notes) std::cout << "note: " << note << "\n";

    if (!map.empty() || !f.name_map_path.empty()) {
        std::string path = f.name_map_path.empty() ? f.out + ".names.csv" : f.name_map_path;
        write_text_file(path, name_map_csv(map));
        std::cout << "wrote " << path << " (" << map.size() << " mangled names)\n";
    }

    if (!f.mip_start_plan.empty()) {
        ShipmentPlan plan = load_plan(f.mip_start_plan);
        std::ostringstream start;
        write_mip_start(inst, variant, model, plan, start);
        std::string path = f.mip_start_out.empty() ? f.out + ".mst" : f.mip_start_out;
        write_text_file(path, start.str());
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shipment planning toolkit: consolidation-aware inbound freight planning"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    GenFlags gen_flags;
    add_gen_flags(gen, gen_flags, true);
    gen->add_option("--out", gen_flags.out, "output instance JSON")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance");
    std::string solve_instance, solve_solver{"heuristic"}, solve_out_plan, solve_out_report;
    int solve_threads = 1;
    bool solve_fallback_earliest = false;
    solve->add_option("instance", solve_instance, "instance JSON")->required();
    solve->add_option("--solver", solve_solver, "heuristic | oracle");
    solve->add_option("--out-plan", solve_out_plan, "plan JSON output");
    solve->add_option("--out-report", solve_out_report, "run report JSON output");
    solve->add_option("--threads", solve_threads, "worker threads (heuristic; output identical)");
    solve->add_flag("--fallback-earliest", solve_fallback_earliest,
                    "depart fallback shipments at the earliest feasible week");

    // compare
    auto* compare = app.add_subcommand("compare", "heuristic vs exact comparison table");
    std::string compare_instance, compare_out;
    int compare_threads = 1;
    compare->add_option("instance", compare_instance, "instance JSON")->required();
    compare->add_option("--out", compare_out, "CSV output path");
    compare->add_option("--threads", compare_threads, "worker threads");

    // scenario-suite
    auto* suite = app.add_subcommand("scenario-suite",
                                     "solve one order book under all three scenarios");
    GenFlags suite_flags;
    add_gen_flags(suite, suite_flags, false);
    std::string suite_out;
    int suite_threads = 1;
    suite->add_option("--out", suite_out, "CSV output path");
    suite->add_option("--threads", suite_threads, "worker threads");

    // export
    auto* exp = app.add_subcommand("export", "write the MILP model for an instance");
    ExportFlags ef;
    exp->add_option("instance", ef.instance_path, "instance JSON")->required();
    exp->add_option("--format", ef.format, "lp | mps");
    exp->add_option("--out", ef.out, "model file output")->required();
    exp->add_option("--deadline", ef.deadline, "strict | penalized | service-level");
    exp->add_option("--in-transit", ef.in_transit, "inventory | original");
    exp->add_flag("--symmetry", ef.symmetry, "add container symmetry-breaking rows");
    exp->add_option("--gamma", ef.gamma, "service level: max lateness weeks per order");
    exp->add_option("--kappa", ef.kappa, "service level: max fraction of late orders");
    exp->add_option("--big-m", ef.big_m, "big-M for arrival linking");
    exp->add_option("--penalty-weight", ef.penalty_weight,
                    "objective cents per deadline-violation week");
    exp->add_option("--name-map", ef.name_map_path, "mangled-name sidecar CSV path");
    exp->add_option("--mip-start", ef.mip_start_plan, "plan JSON to convert to a MIP start");
    exp->add_option("--mip-start-out", ef.mip_start_out, "MIP start output path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen, gen_flags);
        if (solve->parsed())
            return cmd_solve(solve_instance, solve_solver, solve_out_plan, solve_out_report,
                             solve_threads, solve_fallback_earliest);
        if (compare->parsed()) return cmd_compare(compare_instance, compare_out, compare_threads);
        if (suite->parsed()) return cmd_scenario_suite(suite, suite_flags, suite_out, suite_threads);
        if (exp->parsed()) return cmd_export(exp, ef);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const shipplan::limit_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const shipplan::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const shipplan::structural_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
