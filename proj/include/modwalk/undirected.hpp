#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "graph.hpp"
#include "residues.hpp"

namespace modwalk {

// Simple undirected graph; edge {u, v} is stored with u < v, sorted.
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    UndirectedGraph(std::size_t vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count) {
        for (Edge& e : edges) {
            if (e.source >= vertex_count || e.target >= vertex_count)
                throw ValidationError("edge " + to_string(e) + " has an endpoint outside the vertex range");
            if (e.is_loop()) throw ValidationError("undirected self-loops are not supported");
            if (e.source > e.target) std::swap(e.source, e.target);
        }
        std::sort(edges.begin(), edges.end());
        if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end())
            throw ValidationError("duplicate edge " + to_string(*it));
        edges_ = std::move(edges);
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
};

// Remainders mod q of source->v walks in (V, set), edges usable both ways.
inline std::vector<ResidueSet> undirected_modular_reachability(const UndirectedGraph& g, const EdgeSet& set,
                                                               Vertex source, std::uint32_t q) {
    check_modulus(q);
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (EdgeId id : set) {
        adj[g.edge(id).source].push_back(g.edge(id).target);
        adj[g.edge(id).target].push_back(g.edge(id).source);
    }
    std::vector<ResidueSet> reach(g.vertex_count());
    std::deque<std::pair<Vertex, std::uint32_t>> queue{{source, 0}};
    reach[source].set(0);
    while (!queue.empty()) {
        auto [v, r] = queue.front();
        queue.pop_front();
        const std::uint32_t r2 = (r + 1) % q;
        for (Vertex w : adj[v])
            if (!reach[w].test(r2)) {
                reach[w].set(r2);
                queue.emplace_back(w, r2);
            }
    }
    return reach;
}

}  // namespace modwalk
