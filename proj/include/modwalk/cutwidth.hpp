#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace modwalk {

namespace detail {

// Underlying undirected simple graph: self-loops dropped, antiparallel pairs merged.
inline std::vector<std::pair<Vertex, Vertex>> undirected_edges(const DirectedGraph& g) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) continue;
        seen.insert({std::min(e.source, e.target), std::max(e.source, e.target)});
    }
    return {seen.begin(), seen.end()};
}

}  // namespace detail

// Width of the ordering: max over the n-1 prefix cuts of the number of
// underlying undirected edges crossing the cut.
inline std::size_t cutwidth_of_order(const DirectedGraph& g, const std::vector<Vertex>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n) throw ValidationError("ordering does not list every vertex exactly once");
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || pos[order[i]] != n)
            throw ValidationError("ordering does not list every vertex exactly once");
        pos[order[i]] = i;
    }
    // diff[i] accumulates edges crossing the cut between positions i and i+1.
    std::vector<long> diff(n + 1, 0);
    for (auto [u, v] : detail::undirected_edges(g)) {
        auto [a, b] = std::minmax(pos[u], pos[v]);
        diff[a] += 1;
        diff[b] -= 1;
    }
    std::size_t best = 0;
    long running = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        running += diff[i];
        best = std::max(best, static_cast<std::size_t>(running));
    }
    return best;
}

inline constexpr std::size_t kExactCutwidthMaxVertices = 10;

struct CutwidthResult {
    std::size_t width = 0;
    std::vector<Vertex> order;
};

// Minimum cutwidth over all orderings, by dynamic programming over the
// vertex set placed first.
inline CutwidthResult exact_cutwidth_with_order(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > kExactCutwidthMaxVertices)
        throw CapacityError("exact cutwidth supports at most " + std::to_string(kExactCutwidthMaxVertices) +
                            " vertices, got " + std::to_string(n));
    if (n == 0) return {};
    const auto edges = detail::undirected_edges(g);
    const std::uint32_t full = (1u << n) - 1;

    std::vector<std::size_t> cut(full + 1, 0);
    for (std::uint32_t s = 0; s <= full; ++s)
        for (auto [u, v] : edges)
            if (((s >> u) & 1u) != ((s >> v) & 1u)) ++cut[s];

    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(full + 1, inf);
    std::vector<Vertex> last(full + 1, 0);
    best[0] = 0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        const std::size_t here = (s == full) ? 0 : cut[s];
        for (Vertex v = 0; v < n; ++v) {
            if (!((s >> v) & 1u)) continue;
            const std::size_t cand = std::max(best[s & ~(1u << v)], here);
            if (cand < best[s]) {
                best[s] = cand;
                last[s] = v;
            }
        }
    }

    CutwidthResult result;
    result.width = best[full];
    for (std::uint32_t s = full; s != 0; s &= ~(1u << last[s])) result.order.push_back(last[s]);
    std::reverse(result.order.begin(), result.order.end());
    return result;
}

inline std::size_t exact_cutwidth(const DirectedGraph& g) { return exact_cutwidth_with_order(g).width; }

}  // namespace modwalk
