#pragma once

#include <algorithm>
#include <cmath>
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

// Solver-neutral assembly of the shipment-planning integer program and its
// variants: strict / penalized / service-level deadlines, two in-transit
// formulations, and optional container symmetry breaking.

enum class DeadlineMode { Strict, Penalized, ServiceLevel };
enum class InTransitMode { Original, Inventory };

struct VariantConfig {
    DeadlineMode deadline_mode{DeadlineMode::Strict};
    InTransitMode in_transit_mode{InTransitMode::Inventory};
    bool symmetry_breaking{false};
    std::optional<int64_t> big_m;        // default: horizon + max transit + 1
    std::optional<double> gamma;         // service level: lateness cap per order
    std::optional<double> kappa;         // service level: violating fraction cap
    int64_t penalty_weight_cents{1};     // objective weight per violation week
};

enum class VarKind { Binary, Integer, Continuous };
enum class RowSense { LE, GE, EQ };

struct Variable {
    std::string name;
    VarKind kind{VarKind::Continuous};
    double lb{0.0};
    double ub{0.0};
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
    RowSense sense{RowSense::LE};
    double rhs{0.0};
};

struct ModelDescription {
    std::string name{"shipplan"};
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<std::pair<int, double>> objective;  // minimized
    std::vector<std::string> notes;                 // e.g. orders left out of the model

    int var_index(const std::string& vname) const {
        auto it = by_name_.find(vname);
        return it == by_name_.end() ? -1 : it->second;
    }
    int add_variable(Variable v) {
        int idx = int(variables.size());
        if (!by_name_.emplace(v.name, idx).second)
            throw structural_error("duplicate variable name: " + v.name);
        variables.push_back(std::move(v));
        return idx;
    }
    void rebuild_name_index() {
        by_name_.clear();
        for (int i = 0; i < int(variables.size()); ++i)
            if (!by_name_.emplace(variables[size_t(i)].name, i).second)
                throw structural_error("duplicate variable name: " + variables[size_t(i)].name);
    }

  private:
    std::map<std::string, int> by_name_;
};

// Same content up to ordering: variables and rows are compared by name,
// terms as (variable name, coefficient) maps.
inline bool model_equal(const ModelDescription& a, const ModelDescription& b) {
    if (a.name != b.name) return false;
    auto var_map = [](const ModelDescription& m) {
        std::map<std::string, std::tuple<VarKind, double, double>> out;
        for (const auto& v : m.variables) out[v.name] = {v.kind, v.lb, v.ub};
        return out;
    };
    if (var_map(a) != var_map(b)) return false;
    auto row_map = [](const ModelDescription& m) {
        std::map<std::string, std::tuple<std::map<std::string, double>, RowSense, double>> out;
        for (const auto& c : m.constraints) {
            std::map<std::string, double> terms;
            for (auto [vi, coef] : c.terms) terms[m.variables[size_t(vi)].name] += coef;
            out[c.name] = {std::move(terms), c.sense, c.rhs};
        }
        return out;
    };
    if (row_map(a) != row_map(b)) return false;
    auto obj_map = [](const ModelDescription& m) {
        std::map<std::string, double> out;
        for (auto [vi, coef] : m.objective)
            if (coef != 0.0) out[m.variables[size_t(vi)].name] += coef;
        return out;
    };
    return obj_map(a) == obj_map(b);
}

namespace milp_detail {

inline std::string mode_key(ModeClass cls, int slot) {
    switch (cls) {
        case ModeClass::Ground: return "G";
        case ModeClass::Air: return "A";
        case ModeClass::Lcl: return "L";
        case ModeClass::Fcl: return "F" + std::to_string(slot);
    }
    return "?";
}

inline std::string wk(int t) { return "t" + std::to_string(t); }

// Per-order reachability bounds used for variable elision.
struct OrderReach {
    std::map<std::string, int> earliest_at;  // earliest possible departure week per node
    std::map<std::string, int> min_to_dest;  // min transit to destination
    std::map<std::string, int> max_to_dest;  // max transit + dwell slack to destination
};

inline OrderReach order_reach(const Instance& inst, const InstanceIndex& ix,
                              const ProductOrder& p) {
    OrderReach r;
    r.earliest_at[p.origin] = p.ready_week;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& e : inst.network.edges) {
            auto it = r.earliest_at.find(e.origin);
            if (it == r.earliest_at.end()) continue;
            int cand = it->second + e.transit_weeks;
            auto jt = r.earliest_at.find(e.dest);
            if (jt == r.earliest_at.end() || cand < jt->second) {
                r.earliest_at[e.dest] = cand;
                changed = true;
            }
        }
    }
    r.min_to_dest[p.destination] = 0;
    r.max_to_dest[p.destination] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& e : inst.network.edges) {
            auto jt = r.min_to_dest.find(e.dest);
            if (jt != r.min_to_dest.end()) {
                int cand = e.transit_weeks + jt->second;
                auto it = r.min_to_dest.find(e.origin);
                if (it == r.min_to_dest.end() || cand < it->second) {
                    r.min_to_dest[e.origin] = cand;
                    changed = true;
                }
            }
            auto kt = r.max_to_dest.find(e.dest);
            if (kt != r.max_to_dest.end()) {
                const Location* loc = ix.find_location(e.origin);
                int dwell =
                    loc->kind == LocationKind::InTransit ? inst.dwell_limit_weeks : 0;
                int cand = dwell + e.transit_weeks + kt->second;
                auto it = r.max_to_dest.find(e.origin);
                if (it == r.max_to_dest.end() || cand > it->second) {
                    r.max_to_dest[e.origin] = cand;
                    changed = true;
                }
            }
        }
    }
    return r;
}

struct XVar {
    int var;
    const ProductOrder* order;
    const Edge* edge;
    int slot;  // container slot for FCL, 0 otherwise
    int t;
};

}  // namespace milp_detail

inline std::string x_name(const std::string& order_id, const Edge& e, int slot, int t) {
    return "x_" + order_id + "_" + e.origin + "_" + e.dest + "_" +
           milp_detail::mode_key(e.mode.cls, slot) + "_" + milp_detail::wk(t);
}

inline std::string z_name(const std::string& origin, const std::string& dest, int slot, int t) {
    return "z_" + origin + "_" + dest + "_F" + std::to_string(slot) + "_" + milp_detail::wk(t);
}

inline std::string arrival_var_name(const std::string& order_id) { return "arr_" + order_id; }
inline std::string early_pen_name(const std::string& order_id) { return "pe_" + order_id; }
inline std::string late_pen_name(const std::string& order_id) { return "pl_" + order_id; }
inline std::string indicator_name(const std::string& order_id) { return "ind_" + order_id; }
inline std::string inventory_var_name(const std::string& order_id, const std::string& node,
                                      int t) {
    return "r_" + order_id + "_" + node + "_" + milp_detail::wk(t);
}

inline ModelDescription build_model(const Instance& inst, const VariantConfig& variant) {
    InstanceIndex ix(inst);
    const int horizon = inst.horizon_weeks;
    const int rho = inst.dwell_limit_weeks;
    const int upsilon = inst.booking_lead_weeks;
    const int lambda = inst.bookings_per_port_week;

    int max_tau = 0;
    for (const auto& e : inst.network.edges) max_tau = std::max(max_tau, e.transit_weeks);
    int64_t big_m = variant.big_m.value_or(int64_t(horizon) + max_tau + 1);
    if (big_m < int64_t(horizon) + max_tau)
        throw config_error("big_m must be at least horizon + max transit");
    if (variant.deadline_mode == DeadlineMode::ServiceLevel) {
        if (!variant.gamma || *variant.gamma <= 0)
            throw config_error("service-level mode requires gamma > 0");
        if (!variant.kappa || *variant.kappa <= 0 || *variant.kappa > 1)
            throw config_error("service-level mode requires kappa in (0, 1]");
    }
    const bool strict = variant.deadline_mode == DeadlineMode::Strict;
    const double arrival_ub = double(horizon - 1 + max_tau);

    ModelDescription model;

    // z: one binary per container slot and week; the booking lead pins the
    // first upsilon weeks to zero through the upper bound.
    auto lanes = ix.fcl_lanes();
    for (const Edge* lane : lanes) {
        for (int k = 1; k <= lambda; ++k) {
            for (int t = 0; t < horizon; ++t) {
                Variable v;
                v.name = z_name(lane->origin, lane->dest, k, t);
                v.kind = VarKind::Binary;
                v.ub = t < upsilon ? 0.0 : 1.0;
                int vi = model.add_variable(v);
                model.objective.push_back(
                    {vi, double(std::get<FclCost>(lane->cost).fixed_cost_cents)});
            }
        }
    }

    // x: per (order, edge, slot, week), elided when the week cannot belong to
    // any feasible schedule. Orders with no edge into their destination left
    // are dropped from the model and noted, as the business routes them by
    // other means.
    std::vector<milp_detail::XVar> xvars;
    std::vector<const ProductOrder*> modeled;
    for (const auto& p : inst.orders) {
        auto reach = milp_detail::order_reach(inst, ix, p);
        struct XCandidate {
            const Edge* edge;
            int slot;
            int t;
        };
        std::vector<XCandidate> cands;
        bool reaches_dest = false;
        for (const auto& e : inst.network.edges) {
            const Location* origin_loc = ix.find_location(e.origin);
            if (origin_loc->kind == LocationKind::Supply && e.origin != p.origin) continue;
            auto eat = reach.earliest_at.find(e.origin);
            auto mtd = reach.min_to_dest.find(e.dest);
            if (eat == reach.earliest_at.end() || mtd == reach.min_to_dest.end()) continue;
            int t_lo = std::max(0, eat->second);
            int t_hi = horizon - 1;
            if (e.mode.cls == ModeClass::Fcl) t_lo = std::max(t_lo, upsilon);
            if (strict) {
                t_hi = std::min(t_hi, p.latest_week - e.transit_weeks - mtd->second);
                int slack = reach.max_to_dest.at(e.dest);
                t_lo = std::max(t_lo, p.earliest_week - e.transit_weeks - slack);
            }
            if (t_lo > t_hi) continue;
            int slots = e.mode.cls == ModeClass::Fcl ? lambda : 0;
            for (int t = t_lo; t <= t_hi; ++t) {
                if (slots == 0) {
                    cands.push_back({&e, 0, t});
                } else {
                    for (int k = 1; k <= slots; ++k) cands.push_back({&e, k, t});
                }
                if (e.dest == p.destination) reaches_dest = true;
            }
        }
        if (!reaches_dest) {
            model.notes.push_back("order " + p.id + " has no feasible routing; left out");
            continue;
        }
        modeled.push_back(&p);
        for (const auto& s : cands) {
            Variable v;
            v.name = x_name(p.id, *s.edge, s.slot, s.t);
            v.kind = VarKind::Binary;
            v.ub = 1.0;
            int vi = model.add_variable(v);
            model.objective.push_back({vi, double(leg_cost_cents(*s.edge, p))});
            xvars.push_back({vi, &p, s.edge, s.slot, s.t});
        }
    }

    // arrival variables and deadline handling
    for (const ProductOrder* p : modeled) {
        Variable v;
        v.name = arrival_var_name(p->id);
        v.kind = VarKind::Integer;
        if (strict) {
            v.lb = double(p->earliest_week);
            v.ub = double(p->latest_week);
        } else {
            v.lb = 0.0;
            v.ub = arrival_ub;
        }
        model.add_variable(v);
        if (!strict) {
            Variable pe{early_pen_name(p->id), VarKind::Integer, 0.0, arrival_ub};
            Variable pl{late_pen_name(p->id), VarKind::Integer, 0.0, arrival_ub};
            int pei = model.add_variable(pe);
            int pli = model.add_variable(pl);
            model.objective.push_back({pei, double(variant.penalty_weight_cents)});
            model.objective.push_back({pli, double(variant.penalty_weight_cents)});
            if (variant.deadline_mode == DeadlineMode::ServiceLevel)
                model.add_variable({indicator_name(p->id), VarKind::Binary, 0.0, 1.0});
        }
    }

    // inventory variables (Inventory in-transit mode)
    std::set<std::pair<std::string, std::string>> touched;  // (order, node) with r vars
    if (variant.in_transit_mode == InTransitMode::Inventory) {
        for (const ProductOrder* p : modeled) {
            auto reach = milp_detail::order_reach(inst, ix, *p);
            for (const auto& loc : inst.network.locations) {
                if (loc.kind != LocationKind::InTransit) continue;
                auto eat = reach.earliest_at.find(loc.id);
                if (eat == reach.earliest_at.end()) continue;
                bool any = false;
                for (int t = std::max(0, eat->second); t < horizon; ++t) {
                    // r_ipt: product p sits at node loc at the end of week t
                    model.add_variable(
                        {inventory_var_name(p->id, loc.id, t), VarKind::Binary, 0.0, 1.0});
                    any = true;
                }
                if (any) touched.insert({p->id, loc.id});
            }
        }
    }

    auto add_row = [&model](std::string name, RowSense sense, double rhs) -> Constraint& {
        model.constraints.push_back({std::move(name), {}, sense, rhs});
        return model.constraints.back();
    };

    // capacity rows per (container slot, week) that any order can ride
    {
        std::map<std::string, std::vector<std::pair<int, double>>> by_slot_week;
        std::map<std::string, const Edge*> slot_edge;
        for (const auto& xv : xvars) {
            if (xv.edge->mode.cls != ModeClass::Fcl) continue;
            std::string key = xv.edge->origin + "_" + xv.edge->dest + "_F" +
                              std::to_string(xv.slot) + "_" + milp_detail::wk(xv.t);
            by_slot_week[key].push_back({xv.var, double(xv.order->gross_weight_kg)});
            slot_edge[key] = xv.edge;
        }
        for (auto& [key, terms] : by_slot_week) {
            Constraint& row = add_row("cap_" + key, RowSense::LE,
                                      double(*slot_edge[key]->capacity_kg));
            row.terms = std::move(terms);
        }
    }

    // per-order variable buckets keyed by node and week, shared by the
    // conservation and in-transit row families
    struct Buckets {
        std::map<std::string, std::map<int, std::vector<int>>> out_at;       // node, depart week
        std::map<std::string, std::map<int, std::vector<int>>> in_arriving;  // node, arrival week
        std::vector<int> from_origin, into_dest;
    };
    std::map<const ProductOrder*, Buckets> buckets;
    for (const auto& xv : xvars) {
        Buckets& b = buckets[xv.order];
        b.out_at[xv.edge->origin][xv.t].push_back(xv.var);
        b.in_arriving[xv.edge->dest][xv.t + xv.edge->transit_weeks].push_back(xv.var);
        if (xv.edge->origin == xv.order->origin) b.from_origin.push_back(xv.var);
        if (xv.edge->dest == xv.order->destination) b.into_dest.push_back(xv.var);
    }

    // supply and demand conservation per order
    for (const ProductOrder* p : modeled) {
        const Buckets& b = buckets[p];
        Constraint& sup = add_row("sup_" + p->id, RowSense::LE, 1.0);
        for (int vi : b.from_origin) sup.terms.push_back({vi, 1.0});
        Constraint& dem = add_row("dem_" + p->id, RowSense::EQ, 1.0);
        for (int vi : b.into_dest) dem.terms.push_back({vi, 1.0});
    }

    auto collect = [](const std::map<int, std::vector<int>>& by_week, int lo, int hi,
                      double coef, std::vector<std::pair<int, double>>& into) {
        for (auto it = by_week.lower_bound(lo); it != by_week.end() && it->first <= hi; ++it)
            for (int vi : it->second) into.push_back({vi, coef});
    };

    // in-transit behavior
    if (variant.in_transit_mode == InTransitMode::Inventory) {
        // inventory balance: outflow(t) + r(t) = r(t-1) + inflow arriving at t
        for (const ProductOrder* p : modeled) {
            const Buckets& b = buckets[p];
            for (const auto& loc : inst.network.locations) {
                if (!touched.count({p->id, loc.id})) continue;
                auto out_it = b.out_at.find(loc.id);
                auto in_it = b.in_arriving.find(loc.id);
                for (int t = 0; t < horizon; ++t) {
                    std::vector<std::pair<int, double>> terms;
                    if (out_it != b.out_at.end()) collect(out_it->second, t, t, 1.0, terms);
                    if (in_it != b.in_arriving.end()) collect(in_it->second, t, t, -1.0, terms);
                    int r_now = model.var_index(inventory_var_name(p->id, loc.id, t));
                    int r_prev = model.var_index(inventory_var_name(p->id, loc.id, t - 1));
                    if (r_now >= 0) terms.push_back({r_now, 1.0});
                    if (r_prev >= 0) terms.push_back({r_prev, -1.0});
                    if (terms.empty()) continue;
                    Constraint& row =
                        add_row("inv_" + p->id + "_" + loc.id + "_" + milp_detail::wk(t),
                                RowSense::EQ, 0.0);
                    row.terms = std::move(terms);
                }
                // total dwell at the node stays within rho
                std::vector<std::pair<int, double>> dwell_terms;
                for (int t = 0; t < horizon; ++t) {
                    int r = model.var_index(inventory_var_name(p->id, loc.id, t));
                    if (r >= 0) dwell_terms.push_back({r, 1.0});
                }
                Constraint& row =
                    add_row("dwl_" + p->id + "_" + loc.id, RowSense::LE, double(rho));
                row.terms = std::move(dwell_terms);
            }
        }
    } else {
        // departure window, arrival window, and node balance rows
        for (const ProductOrder* p : modeled) {
            const Buckets& b = buckets[p];
            for (const auto& loc : inst.network.locations) {
                if (loc.kind != LocationKind::InTransit) continue;
                auto out_it = b.out_at.find(loc.id);
                auto in_it = b.in_arriving.find(loc.id);
                bool touches = out_it != b.out_at.end() || in_it != b.in_arriving.end();
                if (!touches) continue;
                for (int t = 0; t < horizon; ++t) {
                    std::vector<std::pair<int, double>> out_t, arrive_t;
                    if (out_it != b.out_at.end()) collect(out_it->second, t, t, 1.0, out_t);
                    if (in_it != b.in_arriving.end()) collect(in_it->second, t, t, 1.0, arrive_t);
                    if (!out_t.empty()) {
                        // departing at t requires an arrival within the dwell window
                        Constraint& row =
                            add_row("itd_" + p->id + "_" + loc.id + "_" + milp_detail::wk(t),
                                    RowSense::LE, 0.0);
                        row.terms = std::move(out_t);
                        if (in_it != b.in_arriving.end())
                            collect(in_it->second, t - rho, t, -1.0, row.terms);
                    }
                    if (!arrive_t.empty()) {
                        // arriving at t requires a departure within the dwell window
                        Constraint& row =
                            add_row("ita_" + p->id + "_" + loc.id + "_" + milp_detail::wk(t),
                                    RowSense::LE, 0.0);
                        row.terms = std::move(arrive_t);
                        if (out_it != b.out_at.end())
                            collect(out_it->second, t, t + rho, -1.0, row.terms);
                    }
                }
                Constraint& row = add_row("itb_" + p->id + "_" + loc.id, RowSense::EQ, 0.0);
                if (in_it != b.in_arriving.end())
                    collect(in_it->second, 0, horizon + 1000, 1.0, row.terms);
                if (out_it != b.out_at.end())
                    collect(out_it->second, 0, horizon + 1000, -1.0, row.terms);
            }
        }
    }

    // FCL usage links x to z
    for (const auto& xv : xvars) {
        if (xv.edge->mode.cls != ModeClass::Fcl) continue;
        int z = model.var_index(z_name(xv.edge->origin, xv.edge->dest, xv.slot, xv.t));
        Constraint& row = add_row("use_" + xv.order->id + "_" + xv.edge->origin + "_" +
                                      xv.edge->dest + "_F" + std::to_string(xv.slot) + "_" +
                                      milp_detail::wk(xv.t),
                                  RowSense::LE, 0.0);
        row.terms = {{xv.var, 1.0}, {z, -1.0}};
    }

    // port booking cap per (port, week)
    for (const auto& loc : inst.network.locations) {
        if (loc.kind != LocationKind::InTransit) continue;
        for (int t = 0; t < horizon; ++t) {
            std::vector<std::pair<int, double>> terms;
            for (const Edge* lane : lanes) {
                if (lane->origin != loc.id) continue;
                for (int k = 1; k <= lambda; ++k)
                    terms.push_back({model.var_index(z_name(lane->origin, lane->dest, k, t)), 1.0});
            }
            if (terms.empty()) continue;
            Constraint& row =
                add_row("pcap_" + loc.id + "_" + milp_detail::wk(t), RowSense::LE, double(lambda));
            row.terms = std::move(terms);
        }
    }

    // arrival-time linking on edges into the destination
    for (const auto& xv : xvars) {
        if (xv.edge->dest != xv.order->destination) continue;
        int arr = model.var_index(arrival_var_name(xv.order->id));
        double t_arr = double(xv.t + xv.edge->transit_weeks);
        std::string stem = xv.order->id + "_" + xv.edge->origin + "_" + xv.edge->dest + "_" +
                           milp_detail::mode_key(xv.edge->mode.cls, xv.slot) + "_" +
                           milp_detail::wk(xv.t);
        Constraint& lo = add_row("arl_" + stem, RowSense::LE, 0.0);
        lo.terms = {{xv.var, t_arr}, {arr, -1.0}};
        Constraint& hi = add_row("aru_" + stem, RowSense::LE, t_arr + double(big_m));
        hi.terms = {{arr, 1.0}, {xv.var, double(big_m)}};
    }

    // relaxed deadline rows
    if (!strict) {
        for (const ProductOrder* p : modeled) {
            int arr = model.var_index(arrival_var_name(p->id));
            int pe = model.var_index(early_pen_name(p->id));
            int pl = model.var_index(late_pen_name(p->id));
            Constraint& early = add_row("dle_" + p->id, RowSense::GE, double(p->earliest_week));
            early.terms = {{arr, 1.0}, {pe, 1.0}};
            Constraint& late = add_row("dll_" + p->id, RowSense::LE, double(p->latest_week));
            late.terms = {{arr, 1.0}, {pl, -1.0}};
        }
        if (variant.deadline_mode == DeadlineMode::ServiceLevel) {
            std::vector<std::pair<int, double>> total;
            for (const ProductOrder* p : modeled) {
                int pl = model.var_index(late_pen_name(p->id));
                int ind = model.var_index(indicator_name(p->id));
                Constraint& row = add_row("svc_" + p->id, RowSense::LE, 0.0);
                row.terms = {{pl, 1.0}, {ind, -*variant.gamma}};
                total.push_back({ind, 1.0});
            }
            Constraint& row = add_row("svctot", RowSense::LE,
                                      *variant.kappa * double(inst.orders.size()));
            row.terms = std::move(total);
        }
    }

    // container symmetry: lower slot indices book first
    if (variant.symmetry_breaking) {
        for (const Edge* lane : lanes) {
            for (int k = 1; k < lambda; ++k) {
                for (int t = 0; t < horizon; ++t) {
                    Constraint& row =
                        add_row("sym_" + lane->origin + "_" + lane->dest + "_F" +
                                    std::to_string(k) + "_" + milp_detail::wk(t),
                                RowSense::GE, 0.0);
                    row.terms = {{model.var_index(z_name(lane->origin, lane->dest, k, t)), 1.0},
                                 {model.var_index(z_name(lane->origin, lane->dest, k + 1, t)),
                                  -1.0}};
                }
            }
        }
    }

    return model;
}

// ---- assignments -----------------------------------------------------------

struct PlanAssignment {
    std::map<std::string, double> values;
    std::optional<std::string> missing;  // first plan variable absent from the model
};

// Maps a plan onto the model's variables. Unset variables are implicitly
// zero. When the plan needs a variable the model elided, `missing` is set
// and the assignment is unusable.
inline PlanAssignment plan_to_assignment(const Instance& inst, const VariantConfig& variant,
                                         const ModelDescription& model,
                                         const ShipmentPlan& plan) {
    InstanceIndex ix(inst);
    PlanAssignment out;
    auto put = [&](const std::string& name, double v) {
        if (model.var_index(name) < 0) {
            if (!out.missing) out.missing = name;
            return;
        }
        out.values[name] = v;
    };

    for (const auto& b : plan.bookings)
        put(z_name(b.origin, b.dest, b.container_index, b.depart_week), 1.0);

    for (const auto& [order_id, legs] : plan.routes) {
        const ProductOrder& p = ix.order(order_id);
        int prev_arrival = -1;
        for (size_t i = 0; i < legs.size(); ++i) {
            const Edge& e = ix.resolve(legs[i]);
            put(x_name(order_id, e, legs[i].mode.container_index, legs[i].depart_week), 1.0);
            if (i > 0 && variant.in_transit_mode == InTransitMode::Inventory) {
                for (int t = prev_arrival; t < legs[i].depart_week; ++t)
                    put(inventory_var_name(order_id, legs[i].origin, t), 1.0);
            }
            prev_arrival = legs[i].depart_week + e.transit_weeks;
        }
        if (legs.empty()) continue;
        put(arrival_var_name(order_id), double(prev_arrival));
        if (variant.deadline_mode != DeadlineMode::Strict) {
            double early = std::max(0, p.earliest_week - prev_arrival);
            double late = std::max(0, prev_arrival - p.latest_week);
            put(early_pen_name(order_id), early);
            put(late_pen_name(order_id), late);
            if (variant.deadline_mode == DeadlineMode::ServiceLevel)
                put(indicator_name(order_id), late > 0 ? 1.0 : 0.0);
        }
    }
    return out;
}

struct ModelCheck {
    std::vector<std::string> violated_rows;
    std::vector<std::string> violated_bounds;
    bool ok() const { return violated_rows.empty() && violated_bounds.empty(); }
};

inline ModelCheck evaluate_assignment(const ModelDescription& model,
                                      const std::map<std::string, double>& values) {
    constexpr double eps = 1e-6;
    ModelCheck check;
    std::vector<double> x(model.variables.size(), 0.0);
    for (const auto& [name, v] : values) {
        int vi = model.var_index(name);
        if (vi < 0) {
            check.violated_bounds.push_back("unknown variable " + name);
            continue;
        }
        x[size_t(vi)] = v;
    }
    for (size_t i = 0; i < model.variables.size(); ++i) {
        const Variable& v = model.variables[i];
        if (x[i] < v.lb - eps || x[i] > v.ub + eps) {
            check.violated_bounds.push_back(v.name);
            continue;
        }
        if (v.kind != VarKind::Continuous && std::abs(x[i] - std::round(x[i])) > eps)
            check.violated_bounds.push_back(v.name);
    }
    for (const auto& row : model.constraints) {
        double lhs = 0.0;
        for (auto [vi, coef] : row.terms) lhs += coef * x[size_t(vi)];
        bool ok = true;
        switch (row.sense) {
            case RowSense::LE: ok = lhs <= row.rhs + eps; break;
            case RowSense::GE: ok = lhs >= row.rhs - eps; break;
            case RowSense::EQ: ok = std::abs(lhs - row.rhs) <= eps; break;
        }
        if (!ok) check.violated_rows.push_back(row.name);
    }
    return check;
}

// Objective value of an assignment, in objective units (cents).
inline double assignment_objective(const ModelDescription& model,
                                   const std::map<std::string, double>& values) {
    double total = 0.0;
    for (auto [vi, coef] : model.objective) {
        auto it = values.find(model.variables[size_t(vi)].name);
        if (it != values.end()) total += coef * it->second;
    }
    return total;
}

}  // namespace shipplan
