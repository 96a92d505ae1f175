#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "residues.hpp"
#include "walk.hpp"

namespace modwalk {

enum class LengthMode { Unit, EdgeLengths };

namespace detail {

inline std::uint32_t step_length(const DirectedGraph& g, EdgeId id, LengthMode mode, std::uint32_t q) {
    return mode == LengthMode::Unit ? 1 % q : static_cast<std::uint32_t>(g.length(id) % q);
}

}  // namespace detail

// For every vertex v, the set of remainders mod q of source->v walks. Plain
// BFS over the vertex x remainder product graph.
inline std::vector<ResidueSet> modular_reachability(const DirectedGraph& g, Vertex source, std::uint32_t q,
                                                    LengthMode mode = LengthMode::Unit) {
    check_modulus(q);
    if (source >= g.vertex_count()) throw ValidationError("source is not a vertex");
    std::vector<ResidueSet> reach(g.vertex_count());
    std::deque<std::pair<Vertex, std::uint32_t>> queue;
    reach[source].set(0);
    queue.emplace_back(source, 0);
    while (!queue.empty()) {
        auto [v, r] = queue.front();
        queue.pop_front();
        for (EdgeId id : g.out_edges(v)) {
            const Vertex w = g.edge(id).target;
            const std::uint32_t r2 = (r + detail::step_length(g, id, mode, q)) % q;
            if (!reach[w].test(r2)) {
                reach[w].set(r2);
                queue.emplace_back(w, r2);
            }
        }
    }
    return reach;
}

// A minimum-length s->t walk whose length is r mod q, if any exists.
inline std::optional<Walk> shortest_modular_walk(const DirectedGraph& g, Vertex s, Vertex t, std::uint32_t r,
                                                 std::uint32_t q) {
    check_modulus(q);
    if (r >= q) throw ValidationError("remainder must be below the modulus");
    if (s >= g.vertex_count() || t >= g.vertex_count()) throw ValidationError("endpoint is not a vertex");

    const std::size_t states = g.vertex_count() * q;
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(states, none);  // state index of predecessor
    std::vector<EdgeId> via(states, 0);
    std::vector<bool> seen(states, false);
    auto idx = [q](Vertex v, std::uint32_t rem) { return static_cast<std::size_t>(v) * q + rem; };

    std::deque<std::size_t> queue{idx(s, 0)};
    seen[idx(s, 0)] = true;
    while (!queue.empty() && !seen[idx(t, r)]) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const Vertex v = static_cast<Vertex>(cur / q);
        const std::uint32_t rem = static_cast<std::uint32_t>(cur % q);
        for (EdgeId id : g.out_edges(v)) {
            const std::size_t nxt = idx(g.edge(id).target, (rem + 1) % q);
            if (seen[nxt]) continue;
            seen[nxt] = true;
            parent[nxt] = cur;
            via[nxt] = id;
            queue.push_back(nxt);
        }
    }
    if (!seen[idx(t, r)]) return std::nullopt;

    std::vector<EdgeId> steps;
    for (std::size_t cur = idx(t, r); cur != idx(s, 0); cur = parent[cur]) steps.push_back(via[cur]);
    std::reverse(steps.begin(), steps.end());
    return Walk(g, s, std::move(steps));
}

}  // namespace modwalk
