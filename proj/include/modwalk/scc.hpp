#pragma once

#include <algorithm>
#include <vector>

#include "graph.hpp"

namespace modwalk {

// Strongly connected components listed in a topological order of the
// condensation (a component precedes every component it can reach).
struct SccChain {
    std::vector<std::vector<Vertex>> components;
    std::vector<std::size_t> component_of;

    std::size_t size() const noexcept { return components.size(); }
};

inline SccChain scc_chain(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> found;  // sinks first
    std::size_t counter = 0;

    struct Frame {
        Vertex v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            auto outs = g.out_edges(f.v);
            if (f.next < outs.size()) {
                const Vertex w = g.edge(outs[f.next++]).target;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const Vertex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                found.push_back(std::move(comp));
            }
        }
    }

    SccChain chain;
    chain.components.assign(found.rbegin(), found.rend());
    chain.component_of.assign(n, 0);
    for (std::size_t c = 0; c < chain.components.size(); ++c)
        for (Vertex v : chain.components[c]) chain.component_of[v] = c;
    return chain;
}

inline std::vector<bool> reachable_from(const DirectedGraph& g, Vertex source) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<Vertex> todo{source};
    seen[source] = true;
    while (!todo.empty()) {
        const Vertex v = todo.back();
        todo.pop_back();
        for (EdgeId id : g.out_edges(v)) {
            const Vertex w = g.edge(id).target;
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        }
    }
    return seen;
}

// Strong connectivity of (covered vertices of `set`, set). The empty set is
// strongly connected.
inline bool strongly_connected_on_covered(const DirectedGraph& g, const EdgeSet& set) {
    if (set.empty()) return true;
    const DirectedGraph sub = g.subgraph(set);
    std::vector<bool> covered(g.vertex_count(), false);
    for (EdgeId id : set) {
        covered[g.edge(id).source] = true;
        covered[g.edge(id).target] = true;
    }
    const SccChain chain = scc_chain(sub);
    std::size_t comp = static_cast<std::size_t>(-1);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (!covered[v]) continue;
        if (comp == static_cast<std::size_t>(-1)) comp = chain.component_of[v];
        else if (chain.component_of[v] != comp) return false;
    }
    return true;
}

}  // namespace modwalk
