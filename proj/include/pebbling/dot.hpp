#pragma once

#include <sstream>
#include <string>

#include "pebbling/strategy.hpp"

namespace pebbling {

/// One DOT digraph per strategy: nodes carry the vertex label and its weight,
/// the root is highlighted, arcs run parent -> child. Output is deterministic.
inline std::string strategy_to_dot(const TreeStrategy& s, int index) {
    const Graph& g = *s.graph;
    std::ostringstream out;
    out << "digraph strategy_" << index << " {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=ellipse];\n";
    out << "  \"" << g.label(s.root) << "\" [label=\"" << g.label(s.root)
        << "\\nroot\", style=filled, fillcolor=lightgrey, penwidth=2];\n";
    for (const auto& [child, w] : s.weight)
        out << "  \"" << g.label(child) << "\" [label=\"" << g.label(child) << "\\n" << w.str()
            << "\"];\n";
    for (const auto& [child, parent] : s.parent)
        out << "  \"" << g.label(parent) << "\" -> \"" << g.label(child) << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace pebbling
