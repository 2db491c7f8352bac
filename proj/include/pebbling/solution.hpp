#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/milp.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

enum class SolutionStatus { Optimal, Feasible, Infeasible, Unknown };

/// Solver output in "name value" lines. Binaries are snapped to {0,1} within
/// 0.3 or refused; continuous values keep their text until rationalization.
/// Variables absent from the file count as zero.
struct SolutionAssignment {
    std::vector<int> binary;                // per variable index; 0/1
    std::vector<std::string> value_token;   // raw token, "0" when absent
    std::optional<std::string> objective_token;
    SolutionStatus status = SolutionStatus::Unknown;
};

inline SolutionAssignment parse_solution(const MilpModel& m, const std::string& text) {
    SolutionAssignment sol;
    sol.binary.assign(m.vars.size(), 0);
    sol.value_token.assign(m.vars.size(), "0");
    std::vector<char> seen(m.vars.size(), 0);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#')
            continue;
        if (name == "objective") {
            std::string tok;
            if (!(ls >> tok))
                throw ParseError("solution: bad objective line");
            sol.objective_token = tok;
            continue;
        }
        if (name == "status") {
            std::string word;
            if (!(ls >> word))
                throw ParseError("solution: bad status line");
            if (word == "optimal")
                sol.status = SolutionStatus::Optimal;
            else if (word == "feasible")
                sol.status = SolutionStatus::Feasible;
            else if (word == "infeasible")
                sol.status = SolutionStatus::Infeasible;
            else if (word == "unknown")
                sol.status = SolutionStatus::Unknown;
            else
                throw ParseError("solution: unknown status '" + word + "'");
            continue;
        }
        std::string tok, extra;
        if (!(ls >> tok) || (ls >> extra))
            throw ParseError("solution: malformed line '" + line + "'");
        auto it = m.var_index.find(name);
        if (it == m.var_index.end())
            throw ParseError("solution: unknown variable '" + name + "'");
        int idx = it->second;
        if (seen[idx])
            throw ParseError("solution: duplicate assignment for '" + name + "'");
        seen[idx] = 1;
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0' || !std::isfinite(v))
            throw ParseError("solution: bad value '" + tok + "' for '" + name + "'");
        if (m.vars[idx].binary) {
            if (std::fabs(v) <= 0.3)
                sol.binary[idx] = 0;
            else if (std::fabs(v - 1.0) <= 0.3)
                sol.binary[idx] = 1;
            else
                throw ParseError("solution: binary '" + name + "' = " + tok +
                                 " outside the snap tolerance");
        } else {
            if (v < -1e-9)
                throw ParseError("solution: negative weight '" + tok + "' for '" + name + "'");
            sol.value_token[idx] = tok;
        }
    }
    return sol;
}

/// Turns a snapped assignment into strategies and refuses anything that does
/// not certify: stray arcs, weights over the cap, or validation failures are
/// reported with the offending entity, never repaired. Zero-weight vertices
/// carry no certificate content and are dropped before validation. Symmetric
/// models are expanded to the full strategy count.
inline CertificateBundle extract_strategies(const MilpModel& m, const SolutionAssignment& sol,
                                            int max_exponent = 6) {
    const Graph& g = *m.graph;
    const int n = g.order();
    int effective_exp = std::min(max_exponent, m.params.ell - 1);
    if (effective_exp < 0)
        effective_exp = 0;
    const Dyadic cap(std::int64_t{1} << (m.params.ell - 1), 0);

    CertificateBundle bundle;
    bundle.graph = m.graph;
    bundle.root = m.root;
    for (int t = 0; t < m.blocks(); ++t) {
        TreeStrategy s;
        s.graph = m.graph;
        s.root = m.root;
        std::vector<char> member(n, 0);
        for (int v = 0; v < n; ++v)
            member[v] = (char)sol.binary[m.y_index(t, v)];
        for (int v = 0; v < n; ++v) {
            if (!member[v])
                continue;
            Dyadic w = rationalize(sol.value_token[m.z_index(t, v)], effective_exp);
            if (w > cap)
                throw ExtractionError("strategy " + std::to_string(t + 1) + ": weight " +
                                      w.str() + " on " + g.label(v) + " exceeds 2^(ell-1)");
            if (!w.is_zero())
                s.weight[v] = w;
        }
        for (int a = 0; a < m.arc_count(); ++a) {
            if (!sol.binary[m.x_index(t, a)])
                continue;
            auto [i, j] = m.arcs.arcs[a];
            if (!member[j])
                throw ExtractionError("strategy " + std::to_string(t + 1) + ": arc (" +
                                      g.label(i) + "," + g.label(j) +
                                      ") points at a vertex outside the tree");
            if (!s.weight.count(j))
                continue; // arc into the zero-weight fringe
            if (s.parent.count(j))
                throw ExtractionError("strategy " + std::to_string(t + 1) + ": vertex " +
                                      g.label(j) + " has two incoming arcs");
            s.parent[j] = i;
        }
        Validation v = validate_strategy(s);
        if (!v.ok())
            throw ExtractionError("strategy " + std::to_string(t + 1) +
                                  " does not validate: " + v.summary());
        bundle.strategies.push_back(std::move(s));
    }
    if (m.params.variant == Variant::STS)
        bundle = expand_symmetric(bundle);
    covering_bound(bundle); // coverage must hold; throws otherwise
    return bundle;
}

} // namespace pebbling
