#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

/// Pebble counts per vertex, stored in graph vertex order. Omitted vertices
/// have count zero.
class Configuration {
public:
    explicit Configuration(GraphRef g) : graph_(std::move(g)), counts_(graph_->order(), 0) {}
    Configuration(GraphRef g, std::vector<std::int64_t> counts)
        : graph_(std::move(g)), counts_(std::move(counts)) {
        if ((int)counts_.size() != graph_->order())
            throw Error("configuration: count vector size mismatch");
        for (auto c : counts_)
            if (c < 0)
                throw Error("configuration: negative pebble count");
    }
    Configuration(GraphRef g, const std::map<std::string, std::int64_t>& by_label)
        : graph_(std::move(g)), counts_(graph_->order(), 0) {
        for (const auto& [label, c] : by_label) {
            if (c < 0)
                throw Error("configuration: negative pebble count");
            counts_[graph_->index_of(label)] = c;
        }
    }

    const GraphRef& graph() const { return graph_; }
    std::int64_t count(int i) const { return counts_.at(i); }
    std::int64_t count(const std::string& label) const { return counts_.at(graph_->index_of(label)); }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t size() const {
        return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
    }

private:
    GraphRef graph_;
    std::vector<std::int64_t> counts_;
};

inline void write_config_text(const Configuration& c, std::ostream& out) {
    out << "config\n";
    for (int i = 0; i < c.graph()->order(); ++i)
        if (c.count(i) > 0)
            out << "p " << c.graph()->label(i) << " " << c.count(i) << "\n";
    out << "end\n";
}

inline Configuration read_config_text(GraphRef g, std::istream& in) {
    std::map<std::string, std::int64_t> pebbles;
    std::string line;
    bool header = false, done = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#')
            continue;
        if (done)
            throw ParseError("config format: content after 'end'");
        if (tok == "config") {
            header = true;
        } else if (tok == "p") {
            std::string label;
            std::int64_t n = 0;
            if (!header || !(ls >> label >> n))
                throw ParseError("config format: bad pebble line");
            pebbles[label] += n;
        } else if (tok == "end") {
            done = true;
        } else {
            throw ParseError("config format: unknown token '" + tok + "'");
        }
    }
    if (!header || !done)
        throw ParseError("config format: missing header or terminator");
    return Configuration(std::move(g), pebbles);
}

} // namespace pebbling
