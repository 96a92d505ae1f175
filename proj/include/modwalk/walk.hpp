#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "graph.hpp"

namespace modwalk {

// A walk w[1..l] in a graph. Positions follow the usual 1-based convention:
// step(i) is w[i], slice(i, j) is w[i:j] with both ends included. An empty
// walk is anchored at a vertex so its source and target are defined.
//
// The walk refers to its graph without owning it.
class Walk {
public:
    Walk(const DirectedGraph& g, Vertex anchor) : graph_(&g), anchor_(anchor) {
        if (anchor >= g.vertex_count()) throw ValidationError("walk anchor is not a vertex");
    }

    Walk(const DirectedGraph& g, Vertex anchor, std::vector<EdgeId> steps)
        : graph_(&g), anchor_(anchor), steps_(std::move(steps)) {
        if (anchor >= g.vertex_count()) throw ValidationError("walk anchor is not a vertex");
        Vertex at = anchor;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            if (steps_[i] >= g.edge_count()) throw ValidationError("walk step is not an edge");
            const Edge& e = g.edge(steps_[i]);
            if (e.source != at)
                throw ValidationError("walk step " + std::to_string(i + 1) + " " + to_string(e) +
                                      " does not start where the previous step ended");
            at = e.target;
        }
    }

    // Builds the walk visiting v0 v1 ... vl; every consecutive pair must be an edge.
    static Walk from_vertices(const DirectedGraph& g, std::span<const Vertex> seq) {
        if (seq.empty()) throw ValidationError("a walk needs at least one vertex");
        std::vector<EdgeId> steps;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            auto id = g.find_edge(seq[i], seq[i + 1]);
            if (!id)
                throw ValidationError("walk uses " + to_string(Edge{seq[i], seq[i + 1]}) +
                                      " which is not an edge");
            steps.push_back(*id);
        }
        return Walk(g, seq.front(), std::move(steps));
    }

    const DirectedGraph& graph() const noexcept { return *graph_; }
    std::size_t size() const noexcept { return steps_.size(); }
    bool empty() const noexcept { return steps_.empty(); }

    std::span<const EdgeId> steps() const noexcept { return steps_; }

    EdgeId step_id(std::size_t i) const { return steps_.at(i - 1); }
    const Edge& step(std::size_t i) const { return graph_->edge(step_id(i)); }

    Vertex source() const noexcept { return anchor_; }
    Vertex target() const { return steps_.empty() ? anchor_ : graph_->edge(steps_.back()).target; }

    // v0 v1 ... vl
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out{anchor_};
        for (EdgeId id : steps_) out.push_back(graph_->edge(id).target);
        return out;
    }

    // Vertex reached after i steps (0 <= i <= l).
    Vertex vertex_at(std::size_t i) const {
        if (i > steps_.size()) throw std::out_of_range("walk position out of range");
        return i == 0 ? anchor_ : graph_->edge(steps_[i - 1]).target;
    }

    // w[i:j]; empty (anchored at the vertex before w[i]) when j < i.
    Walk slice(std::size_t i, std::size_t j) const {
        if (i == 0 || i > steps_.size() + 1 || j > steps_.size())
            throw std::out_of_range("walk slice out of range");
        const Vertex start = vertex_at(i - 1);
        if (j < i) return Walk(*graph_, start);
        return Walk(*graph_, start, std::vector<EdgeId>(steps_.begin() + (i - 1), steps_.begin() + j));
    }

    Walk concat(const Walk& next) const {
        if (next.graph_ != graph_) throw PreconditionError("walks belong to different graphs");
        if (next.source() != target()) throw ValidationError("walks do not meet");
        std::vector<EdgeId> steps = steps_;
        steps.insert(steps.end(), next.steps_.begin(), next.steps_.end());
        return Walk(*graph_, anchor_, std::move(steps));
    }

    // E_w as a sorted id set.
    EdgeSet edge_set() const { return normalize(steps_); }

    // Total length under the graph's edge lengths (unit when unannotated).
    Weight weighted_length() const {
        Weight total = 0;
        for (EdgeId id : steps_) total += graph_->length(id);
        return total;
    }

    friend bool operator==(const Walk& a, const Walk& b) {
        return a.graph_ == b.graph_ && a.anchor_ == b.anchor_ && a.steps_ == b.steps_;
    }

private:
    const DirectedGraph* graph_;
    Vertex anchor_;
    std::vector<EdgeId> steps_;
};

// Inclusive 1-based range of walk positions, w[first:last].
struct Range {
    std::size_t first = 1;
    std::size_t last = 0;

    std::size_t length() const noexcept { return last >= first ? last - first + 1 : 0; }
    bool contains(std::size_t i) const noexcept { return first <= i && i <= last; }

    friend bool operator==(const Range&, const Range&) = default;
};

// flags[i] (1-based, flags[0] unused) is true iff w[i] is the first
// occurrence of its edge.
inline std::vector<bool> first_visited_flags(const Walk& w) {
    std::vector<bool> flags(w.size() + 1, false);
    std::vector<bool> seen(w.graph().edge_count(), false);
    for (std::size_t i = 1; i <= w.size(); ++i) {
        const EdgeId id = w.step_id(i);
        flags[i] = !seen[id];
        seen[id] = true;
    }
    return flags;
}

// fresh[i] (1-based) is true iff the target of w[i] appears for the first
// time at w[i]: it is neither the walk's source nor the target of an earlier
// step.
inline std::vector<bool> fresh_target_flags(const Walk& w) {
    std::vector<bool> fresh(w.size() + 1, false);
    std::vector<bool> seen(w.graph().vertex_count(), false);
    seen[w.source()] = true;
    for (std::size_t i = 1; i <= w.size(); ++i) {
        const Vertex t = w.step(i).target;
        fresh[i] = !seen[t];
        seen[t] = true;
    }
    return fresh;
}

// G_{w,i} relabelled densely. Local vertex k is original[k]; locals are
// numbered in order of first appearance along the walk, so local 0 is the
// walk's source.
struct SpannedGraph {
    DirectedGraph graph;
    std::vector<Vertex> original;

    Vertex local(Vertex v) const {
        auto it = std::find(original.begin(), original.end(), v);
        if (it == original.end()) throw ValidationError("vertex is not in the spanned graph");
        return static_cast<Vertex>(it - original.begin());
    }
};

// The graph spanned by w[:prefix_len]; prefix 0 gives the lone source vertex.
inline SpannedGraph spanned_subgraph(const Walk& w, std::size_t prefix_len) {
    if (prefix_len > w.size())
        throw std::out_of_range("prefix length " + std::to_string(prefix_len) + " exceeds walk length " +
                                std::to_string(w.size()));
    const DirectedGraph& g = w.graph();
    std::vector<Vertex> original{w.source()};
    std::vector<Vertex> local_of(g.vertex_count(), static_cast<Vertex>(-1));
    local_of[w.source()] = 0;
    auto intern = [&](Vertex v) {
        if (local_of[v] == static_cast<Vertex>(-1)) {
            local_of[v] = static_cast<Vertex>(original.size());
            original.push_back(v);
        }
        return local_of[v];
    };

    std::vector<Edge> edges;
    std::vector<Weight> costs, lengths;
    std::vector<bool> seen(g.edge_count(), false);
    for (std::size_t i = 1; i <= prefix_len; ++i) {
        const EdgeId id = w.step_id(i);
        const Edge& e = g.edge(id);
        const Vertex a = intern(e.source);
        const Vertex b = intern(e.target);
        if (seen[id]) continue;
        seen[id] = true;
        edges.push_back({a, b});
        if (g.has_costs()) costs.push_back(g.cost(id));
        if (g.has_lengths()) lengths.push_back(g.length(id));
    }
    const std::size_t n = original.size();
    return {DirectedGraph(n, std::move(edges), std::move(costs), std::move(lengths)), std::move(original)};
}

}  // namespace modwalk
