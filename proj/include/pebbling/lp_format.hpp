#pragma once

#include <ostream>
#include <sstream>
#include <string>

#include "pebbling/milp.hpp"

namespace pebbling {

namespace detail {

inline void write_terms(std::ostream& out,
                        const std::vector<std::pair<int, std::int64_t>>& terms,
                        const std::vector<MilpVariable>& vars) {
    bool first = true;
    for (const auto& [idx, coeff] : terms) {
        if (coeff == 0)
            continue;
        std::int64_t mag = coeff < 0 ? -coeff : coeff;
        if (first) {
            if (coeff < 0)
                out << "- ";
            first = false;
        } else {
            out << (coeff < 0 ? " - " : " + ");
        }
        if (mag != 1)
            out << mag << " ";
        out << vars[idx].name;
    }
    if (first)
        out << "0 " << vars[0].name;
}

} // namespace detail

/// CPLEX-style LP text, bit-exact for a given model: Minimize, Subject To,
/// Bounds for the continuous weights, Binaries, End.
inline void write_lp(const MilpModel& m, std::ostream& out) {
    out << "\\ tree strategy model\n";
    out << "\\ graph=" << m.graph->name() << " n=" << m.graph->order()
        << " arcs=" << m.arc_count() << " root=" << m.graph->label(m.root)
        << " variant=" << (m.params.variant == Variant::STS ? "STS" : "TS")
        << " T=" << m.params.strategies << " ell=" << m.params.ell << "\n";
    out << "Minimize\n " << m.objective_name << ": ";
    detail::write_terms(out, m.objective, m.vars);
    out << "\nSubject To\n";
    for (const auto& c : m.constraints) {
        out << " " << c.name << ": ";
        detail::write_terms(out, c.terms, m.vars);
        switch (c.sense) {
        case Sense::LE: out << " <= "; break;
        case Sense::GE: out << " >= "; break;
        case Sense::EQ: out << " = "; break;
        }
        out << c.rhs << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : m.vars)
        if (!v.binary)
            out << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
    out << "Binaries\n";
    for (const auto& v : m.vars)
        if (v.binary)
            out << " " << v.name << "\n";
    out << "End\n";
}

inline std::string emit_lp(const MilpModel& m) {
    std::ostringstream os;
    write_lp(m, os);
    return os.str();
}

} // namespace pebbling
