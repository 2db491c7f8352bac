#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/dyadic.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

/// Parsed certificate file; weight tokens stay raw so exact and decimal
/// entries can take different import paths.
struct CertificateFile {
    struct Edge {
        std::string parent, child, weight;
    };
    struct Tree {
        int index = 0;
        std::vector<Edge> edges;
    };
    std::string graph_spec;
    std::string root_label;
    int declared_trees = 0;
    std::vector<Tree> trees;
};

inline CertificateFile read_certificate_text(std::istream& in) {
    CertificateFile cf;
    std::string line;
    bool header = false, have_graph = false, have_root = false, have_count = false, done = false;
    bool in_tree = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#')
            continue;
        if (done)
            throw ParseError("certificate: content after 'end'");
        if (tok == "certificate") {
            std::string version;
            if (!(ls >> version) || version != "v1")
                throw ParseError("certificate: expected 'certificate v1'");
            header = true;
        } else if (!header) {
            throw ParseError("certificate: missing 'certificate v1' header");
        } else if (tok == "graph") {
            if (!(ls >> cf.graph_spec))
                throw ParseError("certificate: bad graph line");
            have_graph = true;
        } else if (tok == "root") {
            if (!(ls >> cf.root_label))
                throw ParseError("certificate: bad root line");
            have_root = true;
        } else if (tok == "trees") {
            if (!(ls >> cf.declared_trees) || cf.declared_trees < 0)
                throw ParseError("certificate: bad trees line");
            have_count = true;
        } else if (tok == "tree") {
            int idx;
            if (in_tree || !(ls >> idx))
                throw ParseError("certificate: bad tree line");
            if (idx != (int)cf.trees.size() + 1)
                throw ParseError("certificate: tree indices must run 1.." +
                                 std::to_string(cf.declared_trees) + " in order");
            cf.trees.push_back({idx, {}});
            in_tree = true;
        } else if (tok == "edge") {
            CertificateFile::Edge e;
            if (!in_tree || !(ls >> e.parent >> e.child >> e.weight))
                throw ParseError("certificate: bad edge line");
            cf.trees.back().edges.push_back(e);
        } else if (tok == "endtree") {
            if (!in_tree)
                throw ParseError("certificate: endtree outside a tree");
            in_tree = false;
        } else if (tok == "end") {
            if (in_tree)
                throw ParseError("certificate: unterminated tree");
            done = true;
        } else {
            throw ParseError("certificate: unknown token '" + tok + "'");
        }
    }
    if (!header || !done || !have_graph || !have_root || !have_count)
        throw ParseError("certificate: incomplete file");
    if ((int)cf.trees.size() != cf.declared_trees)
        throw ParseError("certificate: declared " + std::to_string(cf.declared_trees) +
                         " trees, found " + std::to_string(cf.trees.size()));
    return cf;
}

inline CertificateFile certificate_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_certificate_text(is);
}

namespace detail {

inline bool is_decimal_token(const std::string& token) {
    return token.find('.') != std::string::npos;
}

template <typename WeightFn>
CertificateBundle bundle_from_file(const CertificateFile& cf, GraphRef g, WeightFn&& to_weight) {
    CertificateBundle bundle;
    bundle.graph = g;
    bundle.root = g->index_of(cf.root_label);
    for (const auto& tree : cf.trees) {
        TreeStrategy s;
        s.graph = g;
        s.root = bundle.root;
        for (const auto& e : tree.edges) {
            int child = g->index_of(e.child);
            int parent = g->index_of(e.parent);
            if (s.parent.count(child))
                throw ParseError("certificate: tree " + std::to_string(tree.index) +
                                 " gives two parents to " + e.child);
            s.parent[child] = parent;
            s.weight[child] = to_weight(tree.index, e);
        }
        bundle.strategies.push_back(std::move(s));
    }
    return bundle;
}

} // namespace detail

/// Exact import: every weight must already be a dyadic token ("11/8" or an
/// integer). Decimal entries are refused; they go through the conversion path.
inline CertificateBundle bundle_from_certificate(const CertificateFile& cf, GraphRef g) {
    return detail::bundle_from_file(cf, g, [](int tree, const CertificateFile::Edge& e) {
        if (detail::is_decimal_token(e.weight))
            throw ParseError("certificate: tree " + std::to_string(tree) + " weight '" +
                             e.weight + "' is decimal; convert it to exact form first");
        return parse_dyadic(e.weight);
    });
}

/// Conversion import: decimals are replaced by the nearest dyadic with
/// exponent <= max_exponent; exact tokens pass through unchanged.
inline CertificateBundle bundle_from_certificate_rationalized(const CertificateFile& cf,
                                                              GraphRef g, int max_exponent) {
    return detail::bundle_from_file(cf, g, [&](int, const CertificateFile::Edge& e) {
        if (detail::is_decimal_token(e.weight))
            return rationalize(e.weight, max_exponent);
        return parse_dyadic(e.weight);
    });
}

/// Canonical exact serialization: edges in vertex order per tree, weights as
/// numerator/denominator. Bit-stable for a given bundle.
inline void write_certificate_text(const CertificateBundle& bundle, const std::string& graph_spec,
                                   std::ostream& out) {
    const Graph& g = *bundle.graph;
    out << "certificate v1\n";
    out << "graph " << graph_spec << "\n";
    out << "root " << g.label(bundle.root) << "\n";
    out << "trees " << bundle.strategies.size() << "\n";
    for (std::size_t t = 0; t < bundle.strategies.size(); ++t) {
        const TreeStrategy& s = bundle.strategies[t];
        out << "tree " << (t + 1) << "\n";
        for (const auto& [child, parent] : s.parent)
            out << "edge " << g.label(parent) << " " << g.label(child) << " "
                << s.weight_of(child).str() << "\n";
        out << "endtree\n";
    }
    out << "end\n";
}

inline std::string certificate_to_text(const CertificateBundle& bundle,
                                       const std::string& graph_spec) {
    std::ostringstream os;
    write_certificate_text(bundle, graph_spec, os);
    return os.str();
}

/// Itemizes what stops a converted bundle from validating: one line per
/// failing tree with its violations.
inline std::vector<std::string> conversion_issues(const CertificateBundle& bundle) {
    std::vector<std::string> issues;
    for (std::size_t t = 0; t < bundle.strategies.size(); ++t) {
        Validation v = validate_strategy(bundle.strategies[t]);
        if (!v.ok())
            issues.push_back("tree " + std::to_string(t + 1) + ": " + v.summary());
    }
    return issues;
}

} // namespace pebbling
