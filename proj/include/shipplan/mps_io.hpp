#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shipplan/milp.hpp"
#include "shipplan/types.hpp"

namespace shipplan {

// Writers and parsers for CPLEX-style LP text and fixed-format MPS, plus the
// MIP-start exporter. The accepted grammar subset is documented in
// docs/formats.md; both writers round-trip through the matching parser.

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return "0";
}

// ---- LP format --------------------------------------------------------------

inline void write_lp(const ModelDescription& model, std::ostream& out) {
    out << "\\ Problem: " << model.name << "\n";
    for (const auto& note : model.notes) out << "\\ note: " << note << "\n";
    out << "Minimize\n obj:";
    {
        std::map<int, double> obj;
        for (auto [vi, coef] : model.objective) obj[vi] += coef;
        int width = 0;
        for (auto [vi, coef] : obj) {
            if (coef == 0.0) continue;
            std::string term = std::string(coef < 0 ? " - " : " + ") +
                               format_number(std::abs(coef)) + " " +
                               model.variables[size_t(vi)].name;
            out << term;
            if ((width += int(term.size())) > 180) {
                out << "\n  ";
                width = 0;
            }
        }
    }
    out << "\nSubject To\n";
    for (const auto& row : model.constraints) {
        out << " " << row.name << ":";
        int width = 0;
        for (auto [vi, coef] : row.terms) {
            std::string term = std::string(coef < 0 ? " - " : " + ") +
                               format_number(std::abs(coef)) + " " +
                               model.variables[size_t(vi)].name;
            out << term;
            if ((width += int(term.size())) > 180) {
                out << "\n  ";
                width = 0;
            }
        }
        switch (row.sense) {
            case RowSense::LE: out << " <= "; break;
            case RowSense::GE: out << " >= "; break;
            case RowSense::EQ: out << " = "; break;
        }
        out << format_number(row.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : model.variables)
        out << " " << format_number(v.lb) << " <= " << v.name << " <= " << format_number(v.ub)
            << "\n";
    std::string binaries, generals;
    for (const auto& v : model.variables) {
        if (v.kind == VarKind::Binary) binaries += " " + v.name;
        if (v.kind == VarKind::Integer) generals += " " + v.name;
    }
    if (!binaries.empty()) out << "Binaries\n" << binaries << "\n";
    if (!generals.empty()) out << "Generals\n" << generals << "\n";
    out << "End\n";
}

namespace lp_detail {

struct Tokens {
    std::vector<std::string> toks;
    size_t pos{0};

    bool done() const { return pos >= toks.size(); }
    const std::string& peek() const {
        static const std::string empty;
        return done() ? empty : toks[pos];
    }
    std::string next() { return done() ? std::string() : toks[pos++]; }
};

inline bool is_number(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end && *end == '\0';
}

inline bool ikeyword(const std::string& tok, const char* kw) {
    if (tok.size() != std::strlen(kw)) return false;
    for (size_t i = 0; i < tok.size(); ++i)
        if (std::tolower((unsigned char)tok[i]) != std::tolower((unsigned char)kw[i]))
            return false;
    return true;
}

}  // namespace lp_detail

inline ModelDescription parse_lp(std::istream& in) {
    using namespace lp_detail;
    Tokens tk;
    for (std::string line; std::getline(in, line);) {
        size_t bs = line.find('\\');  // comment to end of line
        if (bs != std::string::npos) line.resize(bs);
        std::istringstream ls(line);
        for (std::string t; ls >> t;) tk.toks.push_back(t);
    }

    ModelDescription model;
    model.name = "shipplan";
    auto var_of = [&model](const std::string& name) {
        int vi = model.var_index(name);
        if (vi >= 0) return vi;
        return model.add_variable(
            {name, VarKind::Continuous, 0.0, std::numeric_limits<double>::infinity()});
    };

    if (!ikeyword(tk.next(), "Minimize")) throw structural_error("LP: expected Minimize");

    // objective terms run until "Subject"
    {
        std::string label = tk.next();  // "obj:"
        if (label.empty() || label.back() != ':') throw structural_error("LP: expected obj:");
        double sign = 1.0;
        std::optional<double> coef;
        while (!tk.done() && !ikeyword(tk.peek(), "Subject")) {
            std::string t = tk.next();
            if (t == "+") { sign = 1.0; continue; }
            if (t == "-") { sign = -sign; continue; }
            if (is_number(t)) { coef = std::strtod(t.c_str(), nullptr); continue; }
            model.objective.push_back({var_of(t), sign * coef.value_or(1.0)});
            sign = 1.0;
            coef.reset();
        }
    }
    if (!ikeyword(tk.next(), "Subject") || !ikeyword(tk.next(), "To"))
        throw structural_error("LP: expected Subject To");

    auto is_section = [](const std::string& t) {
        return ikeyword(t, "Bounds") || ikeyword(t, "Binaries") || ikeyword(t, "Binary") ||
               ikeyword(t, "Generals") || ikeyword(t, "General") || ikeyword(t, "End");
    };

    while (!tk.done() && !is_section(tk.peek())) {
        std::string label = tk.next();
        if (label.empty() || label.back() != ':')
            throw structural_error("LP: expected a row label, got " + label);
        Constraint row;
        row.name = label.substr(0, label.size() - 1);
        double sign = 1.0;
        std::optional<double> coef;
        for (;;) {
            if (tk.done()) throw structural_error("LP: row " + row.name + " has no sense");
            std::string t = tk.next();
            if (t == "+") { sign = 1.0; continue; }
            if (t == "-") { sign = -sign; continue; }
            if (t == "<=" || t == "<") { row.sense = RowSense::LE; break; }
            if (t == ">=" || t == ">") { row.sense = RowSense::GE; break; }
            if (t == "=") { row.sense = RowSense::EQ; break; }
            if (is_number(t)) { coef = std::strtod(t.c_str(), nullptr); continue; }
            row.terms.push_back({var_of(t), sign * coef.value_or(1.0)});
            sign = 1.0;
            coef.reset();
        }
        std::string rhs = tk.next();
        if (!is_number(rhs)) throw structural_error("LP: bad rhs in row " + row.name);
        row.rhs = std::strtod(rhs.c_str(), nullptr);
        model.constraints.push_back(std::move(row));
    }

    while (!tk.done()) {
        std::string section = tk.next();
        if (ikeyword(section, "End")) break;
        if (ikeyword(section, "Bounds")) {
            while (!tk.done() && !is_section(tk.peek())) {
                // forms: "lo <= name <= hi" | "name free" | "name = v"
                std::string first = tk.next();
                if (is_number(first)) {
                    double lo = std::strtod(first.c_str(), nullptr);
                    if (tk.next() != "<=") throw structural_error("LP: bad bounds line");
                    int vi = var_of(tk.next());
                    if (tk.next() != "<=") throw structural_error("LP: bad bounds line");
                    std::string hi = tk.next();
                    model.variables[size_t(vi)].lb = lo;
                    model.variables[size_t(vi)].ub = std::strtod(hi.c_str(), nullptr);
                } else {
                    int vi = var_of(first);
                    std::string op = tk.next();
                    if (ikeyword(op, "free")) {
                        model.variables[size_t(vi)].lb =
                            -std::numeric_limits<double>::infinity();
                        model.variables[size_t(vi)].ub =
                            std::numeric_limits<double>::infinity();
                    } else if (op == "=") {
                        double v = std::strtod(tk.next().c_str(), nullptr);
                        model.variables[size_t(vi)].lb = v;
                        model.variables[size_t(vi)].ub = v;
                    } else if (op == "<=") {
                        model.variables[size_t(vi)].ub =
                            std::strtod(tk.next().c_str(), nullptr);
                    } else {
                        throw structural_error("LP: bad bounds line near " + first);
                    }
                }
            }
        } else if (ikeyword(section, "Binaries") || ikeyword(section, "Binary")) {
            while (!tk.done() && !is_section(tk.peek())) {
                int vi = var_of(tk.next());
                model.variables[size_t(vi)].kind = VarKind::Binary;
            }
        } else if (ikeyword(section, "Generals") || ikeyword(section, "General")) {
            while (!tk.done() && !is_section(tk.peek())) {
                int vi = var_of(tk.next());
                model.variables[size_t(vi)].kind = VarKind::Integer;
            }
        } else {
            throw structural_error("LP: unexpected section " + section);
        }
    }
    return model;
}

// ---- fixed-format MPS --------------------------------------------------------

struct NameMapEntry {
    std::string kind;  // "row" or "col"
    std::string original;
    std::string mangled;
};

using NameMap = std::vector<NameMapEntry>;

inline std::string name_map_csv(const NameMap& map) {
    std::string out = "kind,original,mangled\n";
    for (const auto& e : map) out += e.kind + "," + e.original + "," + e.mangled + "\n";
    return out;
}

namespace mps_detail {

// Fixed-format fields start at columns 2, 5, 15, 25, 40, 50 (1-based).
inline void put_field(std::string& line, size_t col_1based, const std::string& text) {
    size_t at = col_1based - 1;
    if (line.size() < at) line.resize(at, ' ');
    line += text;
    line += ' ';
}

inline std::string field_line(const std::string& f1, const std::string& f2,
                              const std::string& f3 = "", const std::string& f4 = "",
                              const std::string& f5 = "", const std::string& f6 = "") {
    std::string line;
    if (!f1.empty()) put_field(line, 2, f1);
    if (!f2.empty()) put_field(line, 5, f2);
    if (!f3.empty()) put_field(line, 15, f3);
    if (!f4.empty()) put_field(line, 25, f4);
    if (!f5.empty()) put_field(line, 40, f5);
    if (!f6.empty()) put_field(line, 50, f6);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
}

}  // namespace mps_detail

// Names longer than the 8 characters fixed MPS allows are replaced with
// C0000001/R0000001 style tokens; the substitutions come back in the map.
inline NameMap write_mps(const ModelDescription& model, std::ostream& out) {
    using mps_detail::field_line;
    NameMap map;
    std::map<std::string, std::string> row_name, col_name;
    int next_col = 0, next_row = 0;
    auto col_of = [&](const std::string& name) {
        auto it = col_name.find(name);
        if (it != col_name.end()) return it->second;
        std::string m = name;
        if (name.size() > 8) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "C%07d", ++next_col);
            m = buf;
            map.push_back({"col", name, m});
        }
        col_name[name] = m;
        return m;
    };
    auto row_of = [&](const std::string& name) {
        auto it = row_name.find(name);
        if (it != row_name.end()) return it->second;
        std::string m = name;
        if (name.size() > 8) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "R%07d", ++next_row);
            m = buf;
            map.push_back({"row", name, m});
        }
        row_name[name] = m;
        return m;
    };

    out << "* " << model.name << " (fixed MPS)\n";
    for (const auto& note : model.notes) out << "* note: " << note << "\n";
    out << "NAME          " << model.name << "\n";
    out << "OBJSENSE\n    MINIMIZE\n";
    out << "ROWS\n";
    out << field_line("N", "OBJ") << "\n";
    for (const auto& row : model.constraints) {
        const char* s = row.sense == RowSense::LE ? "L" : row.sense == RowSense::GE ? "G" : "E";
        out << field_line(s, row_of(row.name)) << "\n";
    }

    // column entries grouped per variable, in declaration order
    std::map<int, double> obj;
    for (auto [vi, coef] : model.objective) obj[vi] += coef;
    std::vector<std::vector<std::pair<std::string, double>>> col_entries(model.variables.size());
    for (int vi = 0; vi < int(model.variables.size()); ++vi) {
        auto it = obj.find(vi);
        if (it != obj.end() && it->second != 0.0)
            col_entries[size_t(vi)].push_back({"OBJ", it->second});
    }
    for (const auto& row : model.constraints) {
        std::map<int, double> folded;
        for (auto [vi, coef] : row.terms) folded[vi] += coef;
        for (auto [vi, coef] : folded)
            col_entries[size_t(vi)].push_back({row_of(row.name), coef});
    }

    out << "COLUMNS\n";
    bool in_integer = false;
    int marker = 0;
    for (int vi = 0; vi < int(model.variables.size()); ++vi) {
        const Variable& v = model.variables[size_t(vi)];
        bool integral = v.kind != VarKind::Continuous;
        if (integral != in_integer) {
            char mname[16];
            std::snprintf(mname, sizeof mname, "MARK%04d", marker++);
            out << field_line("", mname, "'MARKER'", integral ? "'INTORG'" : "'INTEND'") << "\n";
            in_integer = integral;
        }
        std::string col = col_of(v.name);
        if (col_entries[size_t(vi)].empty()) {
            // keep the column visible so parsers recover every variable
            out << field_line("", col, "OBJ", "0") << "\n";
            continue;
        }
        for (const auto& [row, coef] : col_entries[size_t(vi)])
            out << field_line("", col, row, format_number(coef)) << "\n";
    }
    if (in_integer) {
        char mname[16];
        std::snprintf(mname, sizeof mname, "MARK%04d", marker++);
        out << field_line("", mname, "'MARKER'", "'INTEND'") << "\n";
    }

    out << "RHS\n";
    for (const auto& row : model.constraints)
        if (row.rhs != 0.0)
            out << field_line("", "RHS1", row_name.at(row.name), format_number(row.rhs)) << "\n";

    out << "BOUNDS\n";
    for (const auto& v : model.variables) {
        const std::string& col = col_name.at(v.name);
        if (v.kind == VarKind::Binary) {
            // BV first, then overrides so tightened binaries survive parsing
            out << field_line("BV", "BND1", col) << "\n";
            if (v.lb != 0.0) out << field_line("LO", "BND1", col, format_number(v.lb)) << "\n";
            if (v.ub != 1.0) out << field_line("UP", "BND1", col, format_number(v.ub)) << "\n";
        } else if (v.kind == VarKind::Integer) {
            out << field_line("LI", "BND1", col, format_number(v.lb)) << "\n";
            out << field_line("UI", "BND1", col, format_number(v.ub)) << "\n";
        } else {
            out << field_line("LO", "BND1", col, format_number(v.lb)) << "\n";
            out << field_line("UP", "BND1", col, format_number(v.ub)) << "\n";
        }
    }
    out << "ENDATA\n";
    return map;
}

inline ModelDescription parse_mps(std::istream& in) {
    ModelDescription model;
    std::string section;
    std::string obj_row = "OBJ";
    bool in_integer = false;
    std::map<std::string, int> row_index;

    auto var_of = [&](const std::string& name, bool integral) {
        int vi = model.var_index(name);
        if (vi >= 0) return vi;
        return model.add_variable({name, integral ? VarKind::Integer : VarKind::Continuous, 0.0,
                                   std::numeric_limits<double>::infinity()});
    };

    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '*') continue;
        if (!std::isspace((unsigned char)line[0])) {
            std::istringstream ls(line);
            ls >> section;
            if (section == "NAME") {
                std::string rest;
                if (ls >> rest) model.name = rest;
            }
            if (section == "ENDATA") break;
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> f;
        for (std::string t; ls >> t;) f.push_back(t);
        if (f.empty()) continue;

        if (section == "OBJSENSE") {
            if (!lp_detail::ikeyword(f[0], "MINIMIZE") && !lp_detail::ikeyword(f[0], "MIN"))
                throw structural_error("MPS: only minimization is supported");
        } else if (section == "ROWS") {
            if (f.size() < 2) throw structural_error("MPS: bad ROWS line");
            if (f[0] == "N") {
                obj_row = f[1];
            } else {
                RowSense s = f[0] == "L"   ? RowSense::LE
                             : f[0] == "G" ? RowSense::GE
                                           : RowSense::EQ;
                if (f[0] != "L" && f[0] != "G" && f[0] != "E")
                    throw structural_error("MPS: unknown row sense " + f[0]);
                row_index[f[1]] = int(model.constraints.size());
                model.constraints.push_back({f[1], {}, s, 0.0});
            }
        } else if (section == "COLUMNS") {
            if (f.size() >= 3 && f[1] == "'MARKER'") {
                if (f[2] == "'INTORG'") in_integer = true;
                else if (f[2] == "'INTEND'") in_integer = false;
                continue;
            }
            if (f.size() < 3) throw structural_error("MPS: bad COLUMNS line");
            int vi = var_of(f[0], in_integer);
            for (size_t i = 1; i + 1 < f.size(); i += 2) {
                double coef = std::strtod(f[i + 1].c_str(), nullptr);
                if (f[i] == obj_row) {
                    if (coef != 0.0) model.objective.push_back({vi, coef});
                } else {
                    auto it = row_index.find(f[i]);
                    if (it == row_index.end())
                        throw structural_error("MPS: unknown row " + f[i]);
                    model.constraints[size_t(it->second)].terms.push_back({vi, coef});
                }
            }
        } else if (section == "RHS") {
            if (f.size() < 3) throw structural_error("MPS: bad RHS line");
            for (size_t i = 1; i + 1 < f.size(); i += 2) {
                auto it = row_index.find(f[i]);
                if (it == row_index.end()) throw structural_error("MPS: unknown rhs row " + f[i]);
                model.constraints[size_t(it->second)].rhs =
                    std::strtod(f[i + 1].c_str(), nullptr);
            }
        } else if (section == "BOUNDS") {
            if (f.size() < 3) throw structural_error("MPS: bad BOUNDS line");
            const std::string& type = f[0];
            int vi = var_of(f[2], false);
            Variable& v = model.variables[size_t(vi)];
            double val = f.size() > 3 ? std::strtod(f[3].c_str(), nullptr) : 0.0;
            if (type == "BV") {
                v.kind = VarKind::Binary;
                v.lb = 0.0;
                v.ub = 1.0;
            } else if (type == "LI") {
                v.kind = VarKind::Integer;
                v.lb = val;
            } else if (type == "UI") {
                v.kind = VarKind::Integer;
                v.ub = val;
            } else if (type == "LO") {
                v.lb = val;
            } else if (type == "UP") {
                v.ub = val;
            } else if (type == "FX") {
                v.lb = v.ub = val;
            } else if (type == "FR") {
                v.lb = -std::numeric_limits<double>::infinity();
                v.ub = std::numeric_limits<double>::infinity();
            } else {
                throw structural_error("MPS: unsupported bound type " + type);
            }
        } else if (section == "RANGES") {
            throw structural_error("MPS: RANGES section is not supported");
        }
    }
    return model;
}

// Restores original names after a mangled MPS file has been parsed back.
inline void apply_name_map(ModelDescription& model, const NameMap& map) {
    std::map<std::string, std::string> cols, rows;
    for (const auto& e : map)
        (e.kind == "col" ? cols : rows)[e.mangled] = e.original;
    for (auto& v : model.variables) {
        auto it = cols.find(v.name);
        if (it != cols.end()) v.name = it->second;
    }
    for (auto& c : model.constraints) {
        auto it = rows.find(c.name);
        if (it != rows.end()) c.name = it->second;
    }
    model.rebuild_name_index();
}

// ---- MIP start ---------------------------------------------------------------

// Emits "name value" pairs for a feasible plan, with the objective value in a
// leading comment. Every emitted assignment is checked against the model rows
// first; an infeasible plan is refused with the violated rows listed.
inline void write_mip_start(const Instance& inst, const VariantConfig& variant,
                            const ModelDescription& model, const ShipmentPlan& plan,
                            std::ostream& out) {
    PlanAssignment a = plan_to_assignment(inst, variant, model, plan);
    if (a.missing)
        throw config_error("plan uses decisions the model does not represent: " + *a.missing);
    ModelCheck check = evaluate_assignment(model, a.values);
    if (!check.ok()) {
        std::string msg = "plan violates model rows:";
        for (const auto& r : check.violated_rows) msg += " " + r;
        for (const auto& b : check.violated_bounds) msg += " bound:" + b;
        throw config_error(msg);
    }
    out << "* objective " << format_number(assignment_objective(model, a.values)) << "\n";
    for (const auto& [name, value] : a.values)
        out << name << " " << format_number(value) << "\n";
}

}  // namespace shipplan
