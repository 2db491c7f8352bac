#pragma once

#include <cstdlib>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {
namespace detail {

using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline std::vector<std::string> v_labels(int n) {
    std::vector<std::string> v;
    v.reserve(n);
    for (int i = 1; i <= n; ++i)
        v.push_back("v" + std::to_string(i));
    return v;
}

// The four non-isomorphic Lemke graphs on eight vertices, transcribed once.
// One edge per line so a transcription slip stays auditable.
inline const EdgeList& lemke_edges() {
    static const EdgeList e = {
        {"v8", "v5"},
        {"v8", "v7"},
        {"v8", "v6"},
        {"v7", "v3"},
        {"v7", "v4"},
        {"v6", "v3"},
        {"v6", "v4"},
        {"v5", "v3"},
        {"v5", "v4"},
        {"v4", "v2"},
        {"v3", "v1"},
        {"v2", "v1"},
        {"v8", "v4"},
    };
    return e;
}

inline const EdgeList& lemke2_edges() {
    static const EdgeList e = {
        {"v1", "v2"},
        {"v1", "v3"},
        {"v2", "v3"},
        {"v2", "v4"},
        {"v3", "v6"},
        {"v3", "v5"},
        {"v4", "v5"},
        {"v3", "v7"},
        {"v4", "v8"},
        {"v5", "v8"},
        {"v6", "v8"},
        {"v7", "v8"},
    };
    return e;
}

inline const EdgeList& lemke3_edges() {
    static const EdgeList e = {
        {"v1", "v2"},
        {"v1", "v3"},
        {"v2", "v4"},
        {"v3", "v6"},
        {"v3", "v5"},
        {"v4", "v5"},
        {"v4", "v7"},
        {"v5", "v6"},
        {"v6", "v7"},
        {"v3", "v7"},
        {"v4", "v8"},
        {"v5", "v8"},
        {"v6", "v8"},
        {"v7", "v8"},
    };
    return e;
}

// Maximal Lemke graph: the base edge set plus four chords, including the
// v5-v7 chord drawn bent around v6.
inline const EdgeList& lemke4_edges() {
    static EdgeList e = [] {
        EdgeList x = lemke_edges();
        x.push_back({"v2", "v3"});
        x.push_back({"v5", "v6"});
        x.push_back({"v6", "v7"});
        x.push_back({"v5", "v7"});
        return x;
    }();
    return e;
}

// Fourth weak Bruhat graph on 24 vertices, 36 edges.
inline const EdgeList& bruhat4_edges() {
    static const EdgeList e = {
        {"v1", "v2"},   {"v2", "v4"},   {"v4", "v3"},   {"v3", "v1"},
        {"v3", "v21"},  {"v4", "v24"},  {"v2", "v8"},   {"v1", "v5"},
        {"v5", "v6"},   {"v6", "v7"},   {"v7", "v8"},   {"v8", "v12"},
        {"v12", "v20"}, {"v20", "v24"}, {"v24", "v23"}, {"v23", "v22"},
        {"v22", "v21"}, {"v21", "v17"}, {"v17", "v9"},  {"v9", "v5"},
        {"v9", "v10"},  {"v6", "v10"},  {"v10", "v13"}, {"v7", "v11"},
        {"v11", "v12"}, {"v23", "v19"}, {"v19", "v20"}, {"v18", "v17"},
        {"v22", "v18"}, {"v18", "v15"}, {"v19", "v16"}, {"v11", "v14"},
        {"v13", "v15"}, {"v13", "v14"}, {"v14", "v16"}, {"v16", "v15"},
    };
    return e;
}

inline bool parse_family(const std::string& key, const std::string& prefix, long& k) {
    if (key.rfind(prefix, 0) != 0)
        return false;
    std::string rest = key.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
        return false;
    k = std::strtol(rest.c_str(), nullptr, 10);
    return true;
}

} // namespace detail

/// Named graphs: lemke, lemke2, lemke3, lemke4, bruhat4, and the parametric
/// families path_k (k>=1), cycle_k (k>=3), complete_k (k>=1), hypercube_d (d>=0).
inline Graph catalog(const std::string& key) {
    using namespace detail;
    if (key == "lemke")
        return Graph("lemke", v_labels(8), lemke_edges());
    if (key == "lemke2")
        return Graph("lemke2", v_labels(8), lemke2_edges());
    if (key == "lemke3")
        return Graph("lemke3", v_labels(8), lemke3_edges());
    if (key == "lemke4")
        return Graph("lemke4", v_labels(8), lemke4_edges());
    if (key == "bruhat4")
        return Graph("bruhat4", v_labels(24), bruhat4_edges());
    long k = 0;
    if (parse_family(key, "path_", k)) {
        if (k < 1)
            throw Error("catalog: path_k needs k >= 1");
        EdgeList e;
        for (long i = 1; i < k; ++i)
            e.push_back({"v" + std::to_string(i), "v" + std::to_string(i + 1)});
        return Graph(key, v_labels((int)k), e);
    }
    if (parse_family(key, "cycle_", k)) {
        if (k < 3)
            throw Error("catalog: cycle_k needs k >= 3");
        EdgeList e;
        for (long i = 1; i <= k; ++i)
            e.push_back({"v" + std::to_string(i), "v" + std::to_string(i % k + 1)});
        return Graph(key, v_labels((int)k), e);
    }
    if (parse_family(key, "complete_", k)) {
        if (k < 1)
            throw Error("catalog: complete_k needs k >= 1");
        EdgeList e;
        for (long i = 1; i <= k; ++i)
            for (long j = i + 1; j <= k; ++j)
                e.push_back({"v" + std::to_string(i), "v" + std::to_string(j)});
        return Graph(key, v_labels((int)k), e);
    }
    if (parse_family(key, "hypercube_", k)) {
        if (k < 0 || k > 20)
            throw Error("catalog: hypercube_d needs 0 <= d <= 20");
        if (k == 0)
            return Graph(key, {"0"}, {});
        std::vector<std::string> labels;
        for (long i = 0; i < (1L << k); ++i) {
            std::string s;
            for (long b = k - 1; b >= 0; --b)
                s += ((i >> b) & 1) ? '1' : '0';
            labels.push_back(s);
        }
        EdgeList e;
        for (long i = 0; i < (1L << k); ++i)
            for (long b = 0; b < k; ++b) {
                long j = i ^ (1L << b);
                if (i < j)
                    e.push_back({labels[i], labels[j]});
            }
        return Graph(key, std::move(labels), e);
    }
    throw Error("catalog: unknown key '" + key + "'");
}

/// Resolves a graph argument: a catalog key, "<key>-square" for the Cartesian
/// square of a catalog graph, or a path to a graph text file.
inline Graph resolve_graph_spec(const std::string& spec) {
    const std::string suffix = "-square";
    if (spec.size() > suffix.size() &&
        spec.compare(spec.size() - suffix.size(), suffix.size(), suffix) == 0) {
        Graph base = catalog(spec.substr(0, spec.size() - suffix.size()));
        Graph sq = cartesian_product(base, base);
        return Graph(spec, sq.labels(), [&] {
            std::vector<std::pair<std::string, std::string>> es;
            for (const auto& [i, j] : sq.edges())
                es.emplace_back(sq.label(i), sq.label(j));
            return es;
        }());
    }
    try {
        return catalog(spec);
    } catch (const Error&) {
        std::ifstream in(spec);
        if (!in)
            throw Error("graph spec '" + spec + "': not a catalog key and no such file");
        return read_graph_text(in);
    }
}

} // namespace pebbling
