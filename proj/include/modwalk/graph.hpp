#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace modwalk {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::uint64_t;

struct Edge {
    Vertex source = 0;
    Vertex target = 0;

    bool is_loop() const noexcept { return source == target; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted, duplicate-free list of edge ids of one graph.
using EdgeSet = std::vector<EdgeId>;

enum class CostMode { EdgeCount, EdgeCosts };

inline std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.source) + "," + std::to_string(e.target) + ")";
}

// Simple directed graph on vertices 0..n-1. Self-loops are allowed, parallel
// edges are not. Edges are kept sorted by (source, target); an EdgeId is the
// position in that order. Optional per-edge cost and length annotations.
class DirectedGraph {
public:
    DirectedGraph() = default;

    explicit DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges = {},
                           std::vector<Weight> costs = {}, std::vector<Weight> lengths = {})
        : vertex_count_(vertex_count) {
        if (!costs.empty() && costs.size() != edges.size())
            throw ValidationError("cost list does not match edge list");
        if (!lengths.empty() && lengths.size() != edges.size())
            throw ValidationError("length list does not match edge list");
        for (const Edge& e : edges) {
            if (e.source >= vertex_count || e.target >= vertex_count)
                throw ValidationError("edge " + to_string(e) + " has an endpoint outside 0.." +
                                      std::to_string(vertex_count == 0 ? 0 : vertex_count - 1));
        }

        std::vector<std::size_t> perm(edges.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::sort(perm.begin(), perm.end(),
                  [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
        edges_.reserve(edges.size());
        for (std::size_t i : perm) {
            if (!edges_.empty() && edges_.back() == edges[i])
                throw ValidationError("duplicate edge " + to_string(edges[i]));
            edges_.push_back(edges[i]);
            if (!costs.empty()) costs_.push_back(costs[i]);
            if (!lengths.empty()) lengths_.push_back(lengths[i]);
        }

        out_.assign(vertex_count, {});
        in_.assign(vertex_count, {});
        for (EdgeId id = 0; id < edges_.size(); ++id) {
            out_[edges_[id].source].push_back(id);
            in_[edges_[id].target].push_back(id);
        }
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId id) const { return edges_.at(id); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const EdgeId> out_edges(Vertex v) const { return out_.at(v); }
    std::span<const EdgeId> in_edges(Vertex v) const { return in_.at(v); }

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const {
        const Edge key{u, v};
        auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
        if (it == edges_.end() || *it != key) return std::nullopt;
        return static_cast<EdgeId>(it - edges_.begin());
    }

    bool has_edge(Vertex u, Vertex v) const { return find_edge(u, v).has_value(); }

    bool has_costs() const noexcept { return !costs_.empty(); }
    bool has_lengths() const noexcept { return !lengths_.empty(); }

    // Edge cost; an unannotated graph has unit costs.
    Weight cost(EdgeId id) const { return costs_.empty() ? Weight{1} : costs_.at(id); }
    Weight length(EdgeId id) const { return lengths_.empty() ? Weight{1} : lengths_.at(id); }

    std::span<const Weight> costs() const noexcept { return costs_; }
    std::span<const Weight> lengths() const noexcept { return lengths_; }

    Weight cost_of(std::span<const EdgeId> set, CostMode mode) const {
        if (mode == CostMode::EdgeCount) return set.size();
        Weight total = 0;
        for (EdgeId id : set) total += cost(id);
        return total;
    }

    // The graph (V, set) with annotations carried over.
    DirectedGraph subgraph(std::span<const EdgeId> set) const {
        std::vector<Edge> es;
        std::vector<Weight> cs, ls;
        for (EdgeId id : set) {
            es.push_back(edge(id));
            if (has_costs()) cs.push_back(costs_[id]);
            if (has_lengths()) ls.push_back(lengths_[id]);
        }
        return DirectedGraph(vertex_count_, std::move(es), std::move(cs), std::move(ls));
    }

    // Maps the edge ids of a subgraph() result back to ids of this graph.
    EdgeSet lift(const DirectedGraph& sub, std::span<const EdgeId> sub_ids) const {
        EdgeSet out;
        for (EdgeId id : sub_ids) out.push_back(*find_edge(sub.edge(id).source, sub.edge(id).target));
        std::sort(out.begin(), out.end());
        return out;
    }

    EdgeSet all_edges() const {
        EdgeSet ids(edges_.size());
        std::iota(ids.begin(), ids.end(), EdgeId{0});
        return ids;
    }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ && a.costs_ == b.costs_ &&
               a.lengths_ == b.lengths_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<Weight> costs_;
    std::vector<Weight> lengths_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
};

inline EdgeSet normalize(EdgeSet set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

inline EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const EdgeSet& sub, const EdgeSet& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace modwalk
