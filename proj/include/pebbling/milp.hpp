#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

enum class Variant { TS, STS };

struct ModelParams {
    int strategies = 8; // T: certificate count after any symmetric expansion
    int ell = 16;       // upper bound on tree depth; big-M constant is 2^ell
    Variant variant = Variant::TS;
};

enum class Sense { LE, GE, EQ };

struct MilpVariable {
    std::string name;
    bool binary = false;
    std::int64_t lower = 0;
    std::int64_t upper = 1;
};

struct MilpConstraint {
    std::string name;
    std::vector<std::pair<int, std::int64_t>> terms; // (variable index, coefficient)
    Sense sense = Sense::LE;
    std::int64_t rhs = 0;
};

/// Variable names keep only alphanumerics and underscores; runs of anything
/// else collapse to one underscore.
inline std::string sanitize_label(const std::string& label) {
    std::string out;
    bool pending = false;
    for (char c : label) {
        if (std::isalnum((unsigned char)c) || c == '_') {
            if (pending && !out.empty())
                out += '_';
            pending = false;
            out += c;
        } else {
            pending = true;
        }
    }
    return out;
}

/// Tree-strategy model over the bidirected graph: per strategy block, binary
/// arc pickers x, binary memberships y, and continuous weights z. Strategy
/// blocks are laid out strategy-major (all of block t before block t+1).
struct MilpModel {
    GraphRef graph;
    int root = -1;
    ModelParams params;
    ArcGraph arcs;
    std::vector<int> mirror; // STS only: vertex -> coordinate-swapped vertex
    std::vector<MilpVariable> vars;
    std::unordered_map<std::string, int> var_index;
    std::vector<MilpConstraint> constraints;
    std::vector<std::pair<int, std::int64_t>> objective; // minimize
    std::string objective_name = "obj";

    int blocks() const {
        return params.variant == Variant::STS ? params.strategies / 2 : params.strategies;
    }
    int arc_count() const { return (int)arcs.arcs.size(); }
    int block_stride() const { return arc_count() + 2 * graph->order(); }
    int x_index(int t, int arc) const { return t * block_stride() + arc; }
    int y_index(int t, int v) const { return t * block_stride() + arc_count() + v; }
    int z_index(int t, int v) const {
        return t * block_stride() + arc_count() + graph->order() + v;
    }
};

namespace detail {

inline void add_variable(MilpModel& m, const std::string& name, bool binary,
                         std::int64_t lower, std::int64_t upper) {
    if (!m.var_index.emplace(name, (int)m.vars.size()).second)
        throw Error("model: variable name collision after sanitization: '" + name + "'");
    m.vars.push_back({name, binary, lower, upper});
}

inline MilpModel build_model_common(GraphRef g, const std::string& root_label, ModelParams p) {
    g->require_connected();
    if (p.strategies < 1)
        throw Error("model: strategy count must be >= 1");
    if (p.ell < 1 || p.ell > 40)
        throw Error("model: ell must be in [1, 40]");
    MilpModel m;
    m.graph = g;
    m.root = g->index_of(root_label);
    m.params = p;
    m.arcs = bidirect(g);

    std::vector<std::string> clean(g->order());
    std::unordered_map<std::string, int> collision;
    for (int v = 0; v < g->order(); ++v) {
        clean[v] = sanitize_label(g->label(v));
        auto [it, fresh] = collision.emplace(clean[v], v);
        if (!fresh)
            throw Error("model: labels '" + g->label(it->second) + "' and '" + g->label(v) +
                        "' collide after sanitization");
    }

    const std::int64_t zcap = std::int64_t{1} << (p.ell - 1);
    for (int t = 1; t <= m.blocks(); ++t) {
        for (const auto& [i, j] : m.arcs.arcs)
            add_variable(m, "x_" + std::to_string(t) + "_" + clean[i] + "_" + clean[j], true, 0,
                         1);
        for (int v = 0; v < g->order(); ++v)
            add_variable(m, "y_" + std::to_string(t) + "_" + clean[v], true, 0, 1);
        for (int v = 0; v < g->order(); ++v)
            add_variable(m, "z_" + std::to_string(t) + "_" + clean[v], false, 0, zcap);
    }
    return m;
}

/// Constraint groups shared by both variants, in the printed order of the
/// formulation: membership equalities, root-child rows, then (added by the
/// caller) coverage, then big-M doubling, weight links, and root exclusion.
inline void add_structure_rows(MilpModel& m, const char* tag) {
    const Graph& g = *m.graph;
    const int n = g.order();
    const std::int64_t big = std::int64_t{1} << m.params.ell;
    const std::int64_t zcap = std::int64_t{1} << (m.params.ell - 1);
    std::string p(tag);

    for (int t = 0; t < m.blocks(); ++t)
        for (int v = 0; v < n; ++v) {
            MilpConstraint c;
            c.name = "c" + p + "b_" + std::to_string(t + 1) + "_" +
                     sanitize_label(g.label(v));
            for (int a = 0; a < m.arc_count(); ++a)
                if (m.arcs.arcs[a].second == v)
                    c.terms.emplace_back(m.x_index(t, a), 1);
            c.terms.emplace_back(m.y_index(t, v), -1);
            c.sense = Sense::EQ;
            c.rhs = 0;
            m.constraints.push_back(std::move(c));
        }
    for (int t = 0; t < m.blocks(); ++t) {
        MilpConstraint c;
        c.name = "c" + p + "c_" + std::to_string(t + 1);
        for (int w : g.neighbors(m.root))
            c.terms.emplace_back(m.y_index(t, w), 1);
        c.sense = Sense::GE;
        c.rhs = 1;
        m.constraints.push_back(std::move(c));
    }
    // coverage rows are variant-specific; the caller inserts them before c*e
    for (int t = 0; t < m.blocks(); ++t)
        for (int a = 0; a < m.arc_count(); ++a) {
            auto [i, j] = m.arcs.arcs[a];
            if (i == m.root || j == m.root)
                continue;
            MilpConstraint c;
            c.name = "c" + p + "e_" + std::to_string(t + 1) + "_" + sanitize_label(g.label(i)) +
                     "_" + sanitize_label(g.label(j));
            c.terms.emplace_back(m.z_index(t, i), 1);
            c.terms.emplace_back(m.z_index(t, j), -2);
            c.terms.emplace_back(m.x_index(t, a), -big);
            c.sense = Sense::GE;
            c.rhs = -big;
            m.constraints.push_back(std::move(c));
        }
    for (int t = 0; t < m.blocks(); ++t)
        for (int v = 0; v < n; ++v) {
            MilpConstraint c;
            c.name = "c" + p + "f_" + std::to_string(t + 1) + "_" +
                     sanitize_label(g.label(v));
            c.terms.emplace_back(m.z_index(t, v), 1);
            c.terms.emplace_back(m.y_index(t, v), -zcap);
            c.sense = Sense::LE;
            c.rhs = 0;
            m.constraints.push_back(std::move(c));
        }
    for (int t = 0; t < m.blocks(); ++t) {
        MilpConstraint c;
        c.name = "c" + p + "g_" + std::to_string(t + 1);
        c.terms.emplace_back(m.y_index(t, m.root), 1);
        c.sense = Sense::EQ;
        c.rhs = 0;
        m.constraints.push_back(std::move(c));
    }
}

} // namespace detail

/// TS formulation: T strategy blocks, objective sums all weights, coverage
/// gives every non-root vertex total weight at least T.
inline MilpModel build_ts_model(GraphRef g, const std::string& root_label, ModelParams p) {
    if (p.variant != Variant::TS)
        throw Error("build_ts_model: params.variant must be TS");
    MilpModel m = detail::build_model_common(g, root_label, p);
    for (int t = 0; t < m.blocks(); ++t)
        for (int v = 0; v < g->order(); ++v)
            m.objective.emplace_back(m.z_index(t, v), 1);
    detail::add_structure_rows(m, "5");
    // insert coverage rows after the c5c block, keeping the printed order
    std::vector<MilpConstraint> coverage;
    for (int v = 0; v < g->order(); ++v) {
        if (v == m.root)
            continue;
        MilpConstraint c;
        c.name = "c5d_" + sanitize_label(g->label(v));
        for (int t = 0; t < m.blocks(); ++t)
            c.terms.emplace_back(m.z_index(t, v), 1);
        c.sense = Sense::GE;
        c.rhs = p.strategies;
        coverage.push_back(std::move(c));
    }
    std::size_t after_c = (std::size_t)m.blocks() * g->order() + m.blocks();
    m.constraints.insert(m.constraints.begin() + after_c,
                         std::make_move_iterator(coverage.begin()),
                         std::make_move_iterator(coverage.end()));
    return m;
}

/// STS formulation on a self-product: T/2 blocks stand for symmetric pairs.
/// Objective and coverage count each vertex together with its mirror, so the
/// reported objective equals the total weight of the expanded bundle.
inline MilpModel build_sts_model(GraphRef gg, const std::string& root_label, ModelParams p) {
    if (p.variant != Variant::STS)
        throw Error("build_sts_model: params.variant must be STS");
    if (p.strategies % 2 != 0)
        throw Error("build_sts_model: T must be even");
    if (!is_self_product(*gg))
        throw Error("build_sts_model: graph is not a self-product");
    MilpModel m = detail::build_model_common(gg, root_label, p);
    m.mirror.resize(gg->order());
    for (int v = 0; v < gg->order(); ++v)
        m.mirror[v] = gg->index_of(mirror_label(gg->label(v)));
    // sum of z_i + z_{i'} over all vertices doubles every coefficient
    for (int t = 0; t < m.blocks(); ++t)
        for (int v = 0; v < gg->order(); ++v)
            m.objective.emplace_back(m.z_index(t, v), 2);
    detail::add_structure_rows(m, "9");
    std::vector<MilpConstraint> coverage;
    for (int v = 0; v < gg->order(); ++v) {
        if (v == m.root)
            continue;
        MilpConstraint c;
        c.name = "c9d_" + sanitize_label(gg->label(v));
        for (int t = 0; t < m.blocks(); ++t) {
            if (m.mirror[v] == v) {
                c.terms.emplace_back(m.z_index(t, v), 2);
            } else {
                c.terms.emplace_back(m.z_index(t, v), 1);
                c.terms.emplace_back(m.z_index(t, m.mirror[v]), 1);
            }
        }
        c.sense = Sense::GE;
        c.rhs = p.strategies;
        coverage.push_back(std::move(c));
    }
    std::size_t after_c = (std::size_t)m.blocks() * gg->order() + m.blocks();
    m.constraints.insert(m.constraints.begin() + after_c,
                         std::make_move_iterator(coverage.begin()),
                         std::make_move_iterator(coverage.end()));
    return m;
}

/// As-built model sizes next to the closed-form predictions
/// T(2n+m) variables, of which T(n+m) binary and Tn continuous, and
/// T(2m+2n+1)+n constraints (per block for the symmetric variant).
struct ModelStats {
    int n = 0;
    int arc_count = 0;
    int strategies = 0;
    int blocks = 0;
    std::size_t variable_count = 0;
    std::size_t binary_count = 0;
    std::size_t continuous_count = 0;
    std::size_t constraint_count = 0;
    std::size_t formula_variables = 0;
    std::size_t formula_binary = 0;
    std::size_t formula_continuous = 0;
    std::size_t formula_constraints = 0;
};

inline ModelStats model_stats(const MilpModel& m) {
    ModelStats s;
    s.n = m.graph->order();
    s.arc_count = m.arc_count();
    s.strategies = m.params.strategies;
    s.blocks = m.blocks();
    s.variable_count = m.vars.size();
    for (const auto& v : m.vars)
        (v.binary ? s.binary_count : s.continuous_count)++;
    s.constraint_count = m.constraints.size();
    std::size_t T = (std::size_t)s.blocks, n = (std::size_t)s.n, arcs = (std::size_t)s.arc_count;
    s.formula_variables = T * (2 * n + arcs);
    s.formula_binary = T * (n + arcs);
    s.formula_continuous = T * n;
    s.formula_constraints = T * (2 * arcs + 2 * n + 1) + n;
    return s;
}

} // namespace pebbling
