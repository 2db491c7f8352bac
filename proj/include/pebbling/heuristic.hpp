#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pebbling/milp.hpp"
#include "pebbling/strategy.hpp"

namespace pebbling {

/// Solver-free bundle generator: T randomized breadth-first spanning trees,
/// weights 2^(ell - depth) halving per level. Always validates and covers;
/// makes no optimality claim. Same seed, same bundle.
inline CertificateBundle heuristic_generate(GraphRef g, const std::string& root_label,
                                            ModelParams p, std::uint64_t seed) {
    g->require_connected();
    if (p.strategies < 1)
        throw Error("heuristic: strategy count must be >= 1");
    int ecc = eccentricity(*g, root_label);
    if (p.ell < ecc)
        throw Error("heuristic: coverage unrepairable, ell=" + std::to_string(p.ell) +
                    " but eccentricity of " + root_label + " is " + std::to_string(ecc));
    int root = g->index_of(root_label);
    std::mt19937_64 rng(seed);
    auto shuffled = [&](std::vector<int> v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[rng() % i]);
        return v;
    };

    CertificateBundle bundle;
    bundle.graph = g;
    bundle.root = root;
    for (int t = 0; t < p.strategies; ++t) {
        TreeStrategy s;
        s.graph = g;
        s.root = root;
        std::vector<int> depth(g->order(), -1);
        depth[root] = 0;
        std::vector<int> queue{root};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int w : shuffled(g->neighbors(u))) {
                if (depth[w] >= 0)
                    continue;
                depth[w] = depth[u] + 1;
                s.parent[w] = u;
                s.weight[w] = Dyadic(std::int64_t{1} << (p.ell - depth[w]), 0);
                queue.push_back(w);
            }
        }
        bundle.strategies.push_back(std::move(s));
    }
    return bundle;
}

} // namespace pebbling
