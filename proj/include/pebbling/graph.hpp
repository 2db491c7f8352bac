#pragma once

#include <algorithm>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pebbling/error.hpp"

namespace pebbling {

/// Immutable labeled undirected simple graph. Vertex order is construction
/// order and fixes every downstream iteration order (BFS queues, arc lists,
/// product row-major), so all outputs are deterministic.
class Graph {
public:
    Graph(std::string name, std::vector<std::string> labels,
          const std::vector<std::pair<std::string, std::string>>& edge_list)
        : name_(std::move(name)), labels_(std::move(labels)) {
        index_.reserve(labels_.size());
        for (int i = 0; i < (int)labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw Error("duplicate vertex label '" + labels_[i] + "'");
        }
        adj_.resize(labels_.size());
        std::set<std::pair<int, int>> seen;
        for (const auto& [a, b] : edge_list) {
            int i = index_of(a), j = index_of(b);
            if (i == j)
                throw Error("self-loop at '" + a + "'");
            auto canon = std::minmax(i, j);
            if (!seen.insert(canon).second)
                continue; // duplicate edge, keep first
            edges_.push_back(canon);
            adj_[i].push_back(j);
            adj_[j].push_back(i);
        }
        for (auto& nbrs : adj_)
            std::sort(nbrs.begin(), nbrs.end());
        connected_ = compute_connected();
    }

    const std::string& name() const { return name_; }
    int order() const { return (int)labels_.size(); }
    int edge_count() const { return (int)edges_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(i); }
    bool has_vertex(const std::string& l) const { return index_.count(l) != 0; }
    int index_of(const std::string& l) const {
        auto it = index_.find(l);
        if (it == index_.end())
            throw Error("unknown vertex '" + l + "' in graph '" + name_ + "'");
        return it->second;
    }
    const std::vector<int>& neighbors(int i) const { return adj_.at(i); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int i, int j) const {
        const auto& n = adj_.at(i);
        return std::binary_search(n.begin(), n.end(), j);
    }
    bool connected() const { return connected_; }
    void require_connected() const {
        if (!connected_)
            throw Error("graph '" + name_ + "' is disconnected");
    }

private:
    bool compute_connected() const {
        if (labels_.empty())
            return true;
        std::vector<char> seen(labels_.size(), 0);
        std::vector<int> queue{0};
        seen[0] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (int w : adj_[queue[h]])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    bool connected_ = true;
};

using GraphRef = std::shared_ptr<const Graph>;

inline Graph build_graph(const std::string& name, std::vector<std::string> labels,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    return Graph(name, std::move(labels), edges);
}

/// BFS levels from src; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> d(g.order(), -1);
    d.at(src) = 0;
    std::vector<int> queue{src};
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (int w : g.neighbors(u))
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                queue.push_back(w);
            }
    }
    return d;
}

inline int dist(const Graph& g, const std::string& u, const std::string& v) {
    int i = g.index_of(u), j = g.index_of(v);
    int d = bfs_distances(g, i)[j];
    if (d < 0)
        throw Error("no path between '" + u + "' and '" + v + "'");
    return d;
}

inline int eccentricity(const Graph& g, const std::string& u) {
    g.require_connected();
    auto d = bfs_distances(g, g.index_of(u));
    return *std::max_element(d.begin(), d.end());
}

inline int diameter(const Graph& g) {
    g.require_connected();
    int best = 0;
    for (int i = 0; i < g.order(); ++i) {
        auto d = bfs_distances(g, i);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

// ---------------------------------------------------------------------------
// Cartesian products and coordinate mirroring

struct ProductVertex {
    std::string left, right;
    std::string render() const { return "(" + left + "," + right + ")"; }
    ProductVertex mirrored() const { return {right, left}; }
};

/// Parses "(left,right)", splitting at the top-level comma so nested product
/// labels survive.
inline ProductVertex parse_product_vertex(const std::string& label) {
    if (label.size() < 5 || label.front() != '(' || label.back() != ')')
        throw Error("not a product vertex label: '" + label + "'");
    int depth = 0;
    for (std::size_t i = 1; i + 1 < label.size(); ++i) {
        char c = label[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (c == ',' && depth == 0) {
            ProductVertex pv{label.substr(1, i - 1), label.substr(i + 1, label.size() - i - 2)};
            if (pv.left.empty() || pv.right.empty())
                break;
            return pv;
        }
    }
    throw Error("not a product vertex label: '" + label + "'");
}

inline ProductVertex mirror_vertex(const ProductVertex& pv) { return pv.mirrored(); }

inline std::string mirror_label(const std::string& label) {
    return parse_product_vertex(label).mirrored().render();
}

/// Vertices are all pairs in row-major (left-index, right-index) order;
/// edges change exactly one coordinate along an edge of that factor.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    std::vector<std::string> labels;
    labels.reserve((std::size_t)g.order() * h.order());
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < h.order(); ++b)
            labels.push_back(ProductVertex{g.label(a), h.label(b)}.render());
    std::vector<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < g.order(); ++a)
        for (const auto& [b, d] : h.edges())
            edges.emplace_back(ProductVertex{g.label(a), h.label(b)}.render(),
                               ProductVertex{g.label(a), h.label(d)}.render());
    for (const auto& [a, c] : g.edges())
        for (int b = 0; b < h.order(); ++b)
            edges.emplace_back(ProductVertex{g.label(a), h.label(b)}.render(),
                               ProductVertex{g.label(c), h.label(b)}.render());
    return Graph(g.name() + "x" + h.name(), std::move(labels), edges);
}

/// True when every vertex label is a product pair whose mirror is also a
/// vertex, i.e. the graph can host coordinate-swapped strategies.
inline bool is_self_product(const Graph& g) {
    for (const auto& l : g.labels()) {
        try {
            if (!g.has_vertex(mirror_label(l)))
                return false;
        } catch (const Error&) {
            return false;
        }
    }
    return g.order() > 0;
}

// ---------------------------------------------------------------------------
// Bidirected view used by the MILP builders

/// Directed double cover of a graph: each undirected edge {i,j} contributes
/// the arcs (i,j) and (j,i), ordered by edge order then orientation.
struct ArcGraph {
    GraphRef base;
    std::vector<std::pair<int, int>> arcs;
};

inline ArcGraph bidirect(GraphRef g) {
    ArcGraph a;
    a.base = g;
    a.arcs.reserve(2 * g->edges().size());
    for (const auto& [i, j] : g->edges()) {
        a.arcs.emplace_back(i, j);
        a.arcs.emplace_back(j, i);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Line-oriented graph text format

inline void write_graph_text(const Graph& g, std::ostream& out) {
    out << "graph " << g.name() << "\n";
    for (const auto& l : g.labels())
        out << "v " << l << "\n";
    for (const auto& [i, j] : g.edges())
        out << "e " << g.label(i) << " " << g.label(j) << "\n";
    out << "end\n";
}

inline std::string graph_to_text(const Graph& g) {
    std::ostringstream os;
    write_graph_text(g, os);
    return os.str();
}

inline Graph read_graph_text(std::istream& in) {
    std::string line, name;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> edges;
    bool header = false, done = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#')
            continue;
        if (done)
            throw ParseError("graph format: content after 'end'");
        if (tok == "graph") {
            if (header || !(ls >> name))
                throw ParseError("graph format: bad header");
            header = true;
        } else if (tok == "v") {
            std::string l;
            if (!header || !(ls >> l))
                throw ParseError("graph format: bad vertex line");
            labels.push_back(l);
        } else if (tok == "e") {
            std::string a, b;
            if (!header || !(ls >> a >> b))
                throw ParseError("graph format: bad edge line");
            edges.emplace_back(a, b);
        } else if (tok == "end") {
            done = true;
        } else {
            throw ParseError("graph format: unknown token '" + tok + "'");
        }
    }
    if (!header || !done)
        throw ParseError("graph format: missing header or terminator");
    return Graph(name, std::move(labels), edges);
}

inline Graph graph_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_graph_text(is);
}

} // namespace pebbling
