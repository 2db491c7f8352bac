#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pebbling/configuration.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

struct OracleOptions {
    std::int64_t state_budget = 10'000'000; // visited states per top-level query
};

struct OracleReport {
    std::string root;
    std::int64_t max_unsolvable_size = 0;
    Configuration witness;
    std::int64_t rooted_pebbling_number = 0;
};

namespace detail {

struct ConfigHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= (std::size_t)x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Depth-first solvability search for one root. The memo table lives for one
/// top-level query and every entry records a configuration fully explored
/// without reaching the root.
class SolvabilitySearch {
public:
    SolvabilitySearch(const Graph& g, int root, std::int64_t budget)
        : graph_(g), root_(root), budget_(budget), dist_(bfs_distances(g, root)) {
        g.require_connected();
        max_dist_ = *std::max_element(dist_.begin(), dist_.end());
        targets_.resize(g.order());
        for (int v = 0; v < g.order(); ++v) {
            targets_[v] = g.neighbors(v);
            // root-directed moves first, then lateral/away, ties by vertex order
            std::stable_sort(targets_[v].begin(), targets_[v].end(),
                             [&](int a, int b) { return dist_[a] < dist_[b]; });
        }
    }

    // the failed-state memo persists for this object's lifetime, i.e. one
    // top-level query
    bool solvable(const std::vector<std::int64_t>& counts) { return search(counts); }

    /// Cheap exact verdicts that skip the search entirely.
    std::optional<bool> fast_verdict(const std::vector<std::int64_t>& counts) const {
        if (counts[root_] >= 1)
            return true;
        // any single vertex can push a pebble home along a shortest path
        for (int v = 0; v < graph_.order(); ++v)
            if (dist_[v] < 62 && counts[v] >= (std::int64_t{1} << dist_[v]))
                return true;
        // potential bound: sum c(v)/2^dist < 1 means no move sequence reaches r
        if (max_dist_ <= 40) {
            __int128 pot = 0;
            for (int v = 0; v < graph_.order(); ++v)
                pot += (__int128)counts[v] << (max_dist_ - dist_[v]);
            if (pot < ((__int128)1 << max_dist_))
                return false;
        }
        return std::nullopt;
    }

    std::int64_t states_visited() const { return states_; }

private:
    bool search(const std::vector<std::int64_t>& counts) {
        if (auto v = fast_verdict(counts))
            return *v;
        if (failed_.count(counts))
            return false;
        if (++states_ > budget_)
            throw CapExceeded("oracle: state budget exceeded (" + std::to_string(budget_) +
                              " visited states)");
        std::vector<std::int64_t> next(counts);
        for (int v = 0; v < graph_.order(); ++v) {
            if (counts[v] < 2)
                continue;
            for (int w : targets_[v]) {
                next[v] -= 2;
                next[w] += 1;
                bool ok = search(next);
                next[v] += 2;
                next[w] -= 1;
                if (ok)
                    return true;
            }
        }
        failed_.insert(counts);
        return false;
    }

    const Graph& graph_;
    int root_;
    std::int64_t budget_;
    std::int64_t states_ = 0;
    std::vector<int> dist_;
    int max_dist_ = 0;
    std::vector<std::vector<int>> targets_;
    std::unordered_set<std::vector<std::int64_t>, ConfigHash> failed_;
};

/// Calls fn for every count vector of total k, in non-increasing
/// lexicographic order under the graph's vertex order. Position zero_at is
/// pinned to zero: a pebble on the root solves trivially, so the scans only
/// ever need root-free configurations. fn returns false to stop early; the
/// walk reports whether it ran to completion.
template <typename Fn>
inline bool for_each_config_of_size(int n, std::int64_t k, int zero_at, Fn&& fn) {
    std::vector<std::int64_t> counts(n, 0);
    std::function<bool(int, std::int64_t)> rec = [&](int pos, std::int64_t rem) {
        if (pos == n - 1) {
            if (pos == zero_at)
                return rem == 0 ? fn(counts) : true;
            counts[pos] = rem;
            bool go = fn(counts);
            counts[pos] = 0;
            return go;
        }
        if (pos == zero_at)
            return rec(pos + 1, rem);
        for (std::int64_t c = rem; c >= 0; --c) {
            counts[pos] = c;
            if (!rec(pos + 1, rem - c)) {
                counts[pos] = 0;
                return false;
            }
        }
        counts[pos] = 0;
        return true;
    };
    if (n == 0)
        return true;
    return rec(0, k);
}

inline bool pointwise_le(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

/// Bounded caches of known verdicts; dominance makes them exact shortcuts
/// (below an unsolvable configuration everything is unsolvable, above a
/// solvable one everything is solvable).
class VerdictCache {
public:
    bool known_unsolvable(const std::vector<std::int64_t>& c) const {
        for (const auto& u : unsolvable_)
            if (pointwise_le(c, u))
                return true;
        return false;
    }
    bool known_solvable(const std::vector<std::int64_t>& c) const {
        for (const auto& s : solvable_)
            if (pointwise_le(s, c))
                return true;
        return false;
    }
    void add(const std::vector<std::int64_t>& c, bool is_solvable) {
        auto& side = is_solvable ? solvable_ : unsolvable_;
        side.push_back(c);
        if (side.size() > 128)
            side.pop_front();
    }

private:
    std::deque<std::vector<std::int64_t>> solvable_, unsolvable_;
};

} // namespace detail

/// True iff some sequence of pebbling moves places a pebble on the root.
inline bool is_solvable(const Graph& g, const std::string& root, const Configuration& c,
                        OracleOptions opts = {}) {
    detail::SolvabilitySearch s(g, g.index_of(root), opts.state_budget);
    return s.solvable(c.counts());
}

/// Largest k <= size_cap carrying an r-unsolvable configuration, with the
/// enumeration-first witness. Throws CapExceeded when size_cap itself still
/// admits an unsolvable configuration, so the scan is inconclusive.
inline OracleReport max_unsolvable(GraphRef g, const std::string& root, std::int64_t size_cap,
                                   OracleOptions opts = {}) {
    g->require_connected();
    if (size_cap < 1)
        throw Error("oracle: size_cap must be >= 1");
    int r = g->index_of(root);
    detail::SolvabilitySearch search(*g, r, opts.state_budget);
    detail::VerdictCache cache;
    std::int64_t enumerated = 0;
    std::optional<std::vector<std::int64_t>> witness;
    for (std::int64_t k = 1; k <= size_cap; ++k) {
        std::optional<std::vector<std::int64_t>> found;
        detail::for_each_config_of_size(g->order(), k, r, [&](const std::vector<std::int64_t>& c) {
            if (++enumerated + search.states_visited() > opts.state_budget)
                throw CapExceeded("oracle: state budget exceeded while enumerating size " +
                                  std::to_string(k));
            bool verdict;
            if (auto fast = search.fast_verdict(c))
                verdict = *fast;
            else if (cache.known_unsolvable(c))
                verdict = false;
            else if (cache.known_solvable(c))
                verdict = true;
            else {
                verdict = search.solvable(c);
                cache.add(c, verdict);
            }
            if (!verdict) {
                found = c;
                return false;
            }
            return true;
        });
        if (!found) {
            OracleReport rep{root, k - 1,
                             witness ? Configuration(g, *witness) : Configuration(g),
                             k};
            return rep;
        }
        if (k == size_cap)
            throw CapExceeded("oracle: unsolvable configuration still exists at size cap " +
                              std::to_string(size_cap) + "; bound search inconclusive");
        witness = found;
    }
    throw Error("oracle: scan fell through"); // loop always returns or throws
}

inline std::int64_t default_size_cap(const Graph& g, const std::string& root) {
    int e = eccentricity(g, root);
    if (e > 40)
        throw CapExceeded("oracle: eccentricity too large for enumeration");
    return (std::int64_t{1} << e) + g.order();
}

inline OracleReport rooted_pebbling_report(GraphRef g, const std::string& root,
                                           OracleOptions opts = {}) {
    return max_unsolvable(g, root, default_size_cap(*g, root), opts);
}

inline std::int64_t rooted_pebbling_number(GraphRef g, const std::string& root,
                                           OracleOptions opts = {}) {
    return rooted_pebbling_report(g, root, opts).rooted_pebbling_number;
}

inline std::int64_t pebbling_number(GraphRef g, OracleOptions opts = {}) {
    g->require_connected();
    std::int64_t best = 0;
    for (const auto& l : g->labels())
        best = std::max(best, rooted_pebbling_number(g, l, opts));
    return best;
}

/// Drives fn over every r-unsolvable configuration of size 1..max_size, in
/// enumeration order. Exact; used by the weight-function harness.
template <typename Fn>
inline void for_each_unsolvable(GraphRef g, const std::string& root, std::int64_t max_size,
                                Fn&& fn, OracleOptions opts = {}) {
    g->require_connected();
    int r = g->index_of(root);
    detail::SolvabilitySearch search(*g, r, opts.state_budget);
    detail::VerdictCache cache;
    for (std::int64_t k = 1; k <= max_size; ++k) {
        detail::for_each_config_of_size(g->order(), k, r, [&](const std::vector<std::int64_t>& c) {
            bool verdict;
            if (auto fast = search.fast_verdict(c))
                verdict = *fast;
            else if (cache.known_unsolvable(c))
                verdict = false;
            else if (cache.known_solvable(c))
                verdict = true;
            else {
                verdict = search.solvable(c);
                cache.add(c, verdict);
            }
            if (!verdict)
                fn(Configuration(g, c));
            return true;
        });
    }
}

} // namespace pebbling
