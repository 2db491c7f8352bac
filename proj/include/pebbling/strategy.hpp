#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pebbling/configuration.hpp"
#include "pebbling/dyadic.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

/// Rooted subtree of a graph with a dyadic weight on every tree vertex.
/// Vertices outside the tree implicitly weigh zero; the root weighs zero.
struct TreeStrategy {
    GraphRef graph;
    int root = -1;
    std::map<int, int> parent;    // tree vertex -> its parent (root has none)
    std::map<int, Dyadic> weight; // tree vertex -> weight

    const std::string& root_label() const { return graph->label(root); }
    Dyadic weight_of(int v) const {
        auto it = weight.find(v);
        return it == weight.end() ? Dyadic() : it->second;
    }
    Dyadic total_weight() const {
        Dyadic t;
        for (const auto& [v, w] : weight)
            t += w;
        return t;
    }
};

struct Violation {
    std::string code;
    std::string detail;
};

struct Validation {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const {
        std::string s;
        for (const auto& v : violations)
            s += (s.empty() ? "" : "; ") + v.code + ": " + v.detail;
        return s;
    }
};

/// Checks, in order: tree edges exist in the graph; the parent map is a tree
/// rooted at the root; the root has at least one child; the weight map covers
/// exactly the tree vertices; doubling w(parent) >= 2 w(child) for children
/// whose parent is not the root; positive weights.
inline Validation validate_strategy(const TreeStrategy& s) {
    Validation out;
    const Graph& g = *s.graph;
    auto bad = [&](const std::string& code, const std::string& detail) {
        out.violations.push_back({code, detail});
    };
    if (s.root < 0 || s.root >= g.order()) {
        bad("root", "root index out of range");
        return out;
    }
    if (s.parent.count(s.root))
        bad("root", "root has a parent entry");
    for (const auto& [child, par] : s.parent) {
        if (child < 0 || child >= g.order() || par < 0 || par >= g.order()) {
            bad("vertex", "tree vertex index out of range");
            continue;
        }
        if (!g.has_edge(par, child))
            bad("edge", "(" + g.label(par) + "," + g.label(child) + ") is not a graph edge");
    }
    // every tree vertex must reach the root through tree vertices
    for (const auto& [child, par] : s.parent) {
        (void)par;
        std::set<int> seen;
        int u = child;
        while (u != s.root) {
            if (!seen.insert(u).second) {
                bad("acyclic", "parent chain from " + g.label(child) + " cycles");
                break;
            }
            auto it = s.parent.find(u);
            if (it == s.parent.end()) {
                bad("rooted", "parent chain from " + g.label(child) + " leaves the tree at " +
                                  g.label(u));
                break;
            }
            u = it->second;
        }
    }
    bool root_has_child = false;
    for (const auto& [child, par] : s.parent)
        if (par == s.root && child != s.root)
            root_has_child = true;
    if (!root_has_child)
        bad("root-child", "root " + g.label(s.root) + " has no child");
    for (const auto& [v, w] : s.weight) {
        (void)w;
        if (!s.parent.count(v))
            bad("weight-domain", g.label(v) + " weighted but not a tree vertex");
    }
    for (const auto& [child, par] : s.parent) {
        if (!s.weight.count(child)) {
            bad("weight-domain", "tree vertex " + g.label(child) + " has no weight");
            continue;
        }
        if (par != s.root && s.weight.count(par)) {
            const Dyadic& wc = s.weight.at(child);
            const Dyadic& wp = s.weight.at(par);
            if (wp < wc.doubled())
                bad("doubling", "w(" + g.label(par) + ")=" + wp.str() + " < 2*w(" +
                                    g.label(child) + ")=" + wc.str());
        }
    }
    for (const auto& [v, w] : s.weight)
        if (w.is_zero())
            bad("positive", "tree vertex " + g.label(v) + " has zero weight");
    return out;
}

struct CertificateBundle {
    GraphRef graph;
    int root = -1;
    std::vector<TreeStrategy> strategies;
};

struct CertificateReport {
    Dyadic K;
    Dyadic total_weight;
    std::int64_t bound = 0;
    std::map<int, Dyadic> per_vertex_sums;
    std::vector<int> min_vertices; // vertices attaining K, in vertex order
};

/// Exact covering computation: per-vertex sums over all strategies, K their
/// minimum, and bound = floor(total / K) + 1.
inline CertificateReport covering_bound(const CertificateBundle& bundle) {
    const Graph& g = *bundle.graph;
    g.require_connected();
    if (bundle.strategies.empty())
        throw Error("covering_bound: empty bundle");
    for (std::size_t t = 0; t < bundle.strategies.size(); ++t) {
        const TreeStrategy& s = bundle.strategies[t];
        if (s.graph.get() != bundle.graph.get() && s.graph->labels() != g.labels())
            throw Error("covering_bound: strategy " + std::to_string(t + 1) +
                        " built on a different graph");
        if (s.root != bundle.root)
            throw Error("covering_bound: strategy " + std::to_string(t + 1) +
                        " rooted at " + s.root_label() + ", bundle rooted at " +
                        g.label(bundle.root));
        Validation v = validate_strategy(s);
        if (!v.ok())
            throw Error("covering_bound: strategy " + std::to_string(t + 1) +
                        " invalid (" + v.summary() + ")");
    }
    CertificateReport rep;
    for (int v = 0; v < g.order(); ++v)
        if (v != bundle.root)
            rep.per_vertex_sums[v] = Dyadic();
    for (const TreeStrategy& s : bundle.strategies)
        for (const auto& [v, w] : s.weight)
            rep.per_vertex_sums[v] += w;
    std::vector<std::string> uncovered;
    for (const auto& [v, sum] : rep.per_vertex_sums)
        if (sum.is_zero())
            uncovered.push_back(g.label(v));
    if (!uncovered.empty()) {
        std::string list;
        for (const auto& l : uncovered)
            list += (list.empty() ? "" : " ") + l;
        throw Error("covering_bound: uncovered vertices: " + list);
    }
    bool first = true;
    for (const auto& [v, sum] : rep.per_vertex_sums) {
        (void)v;
        if (first || sum < rep.K) {
            rep.K = sum;
            first = false;
        }
        rep.total_weight += sum;
    }
    for (const auto& [v, sum] : rep.per_vertex_sums)
        if (sum == rep.K)
            rep.min_vertices.push_back(v);
    rep.bound = Dyadic::floor_div(rep.total_weight, rep.K) + 1;
    return rep;
}

/// Weight-function inequality, exactly: w . C <= w . 1. Every configuration
/// that cannot reach the root satisfies it.
inline bool wfl_holds(const TreeStrategy& s, const Configuration& c) {
    if (c.graph()->labels() != s.graph->labels())
        throw Error("wfl_holds: configuration on a different graph");
    // compare at a common exponent with wide accumulators
    int e = 0;
    for (const auto& [v, w] : s.weight)
        e = std::max(e, w.exponent());
    __int128 lhs = 0, rhs = 0;
    for (const auto& [v, w] : s.weight) {
        __int128 scaled = (__int128)w.numerator() << (e - w.exponent());
        lhs += scaled * c.count(v);
        rhs += scaled;
    }
    return lhs <= rhs;
}

/// Coordinate-swapped strategy on a self-product graph. Weights carry over,
/// the root moves to its mirror; validity is preserved.
inline TreeStrategy symmetric_mirror(const TreeStrategy& s) {
    const Graph& g = *s.graph;
    auto mirror_index = [&](int v) {
        std::string m = mirror_label(g.label(v));
        if (!g.has_vertex(m))
            throw Error("symmetric_mirror: graph is not a self-product (missing " + m + ")");
        return g.index_of(m);
    };
    TreeStrategy out;
    out.graph = s.graph;
    out.root = mirror_index(s.root);
    for (const auto& [child, par] : s.parent)
        out.parent[mirror_index(child)] = mirror_index(par);
    for (const auto& [v, w] : s.weight)
        out.weight[mirror_index(v)] = w;
    return out;
}

/// Appends the mirror of every strategy, in order. Requires a diagonal root
/// so the mirrored strategies stay rooted at the same vertex.
inline CertificateBundle expand_symmetric(const CertificateBundle& half) {
    CertificateBundle out = half;
    if (half.strategies.empty())
        return out;
    const Graph& g = *half.graph;
    ProductVertex r = parse_product_vertex(g.label(half.root));
    if (r.left != r.right)
        throw Error("expand_symmetric: root " + g.label(half.root) + " is not diagonal");
    for (const TreeStrategy& s : half.strategies)
        out.strategies.push_back(symmetric_mirror(s));
    return out;
}

} // namespace pebbling
