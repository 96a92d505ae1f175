#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "residues.hpp"
#include "walk.hpp"

namespace modwalk {

// Witnesses attached to a segment that ends at a segment end k.
struct SegmentDetour {
    std::size_t first_index = 0;  // j: first-visited step where the detour starts
    Walk detour;                  // w[j:k], from u to y
    Walk shortcut;                // u -> y inside G_{w,j-1}
    Walk back_path;               // y -> u, a subwalk of w[:j-1]
    std::uint32_t delta = 0;      // (|detour| - |shortcut|) mod q
};

struct Segment {
    Range range;
    std::optional<SegmentDetour> detour;  // absent only for a final remainder segment
};

struct SegmentDecomposition {
    Walk walk;
    std::uint32_t q = 1;
    std::vector<Segment> segments;

    std::size_t count() const noexcept { return segments.size(); }
};

namespace detail {

// Vertices reachable from u using the edges w[1..prefix].
inline std::vector<bool> prefix_reach(const Walk& w, std::size_t prefix, Vertex u) {
    const DirectedGraph& g = w.graph();
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    std::vector<bool> used(g.edge_count(), false);
    for (std::size_t i = 1; i <= prefix; ++i) {
        const EdgeId id = w.step_id(i);
        if (used[id]) continue;
        used[id] = true;
        adj[g.edge(id).source].push_back(g.edge(id).target);
    }
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<Vertex> todo{u};
    seen[u] = true;
    while (!todo.empty()) {
        const Vertex v = todo.back();
        todo.pop_back();
        for (Vertex x : adj[v])
            if (!seen[x]) {
                seen[x] = true;
                todo.push_back(x);
            }
    }
    return seen;
}

// Shortest u -> y path (edge count) using the edges w[1..prefix]; BFS visits
// out-edges in ascending edge-id order, so the result is deterministic.
inline Walk prefix_shortest_path(const Walk& w, std::size_t prefix, Vertex u, Vertex y) {
    const DirectedGraph& g = w.graph();
    std::vector<bool> allowed(g.edge_count(), false);
    for (std::size_t i = 1; i <= prefix; ++i) allowed[w.step_id(i)] = true;
    constexpr EdgeId none = static_cast<EdgeId>(-1);
    std::vector<EdgeId> via(g.vertex_count(), none);
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<Vertex> queue{u};
    seen[u] = true;
    while (!queue.empty() && !seen[y]) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (EdgeId id : g.out_edges(v)) {
            if (!allowed[id]) continue;
            const Vertex x = g.edge(id).target;
            if (seen[x]) continue;
            seen[x] = true;
            via[x] = id;
            queue.push_back(x);
        }
    }
    if (!seen[y]) throw PreconditionError("no path inside the walk prefix");
    std::vector<EdgeId> steps;
    for (Vertex v = y; v != u; v = g.edge(via[v]).source) steps.push_back(via[v]);
    std::reverse(steps.begin(), steps.end());
    return Walk(g, u, std::move(steps));
}

inline std::uint32_t mod_difference(std::size_t a, std::size_t b, std::uint32_t q) {
    const std::uint64_t qa = a % q, qb = b % q;
    return static_cast<std::uint32_t>((qa + q - qb) % q);
}

}  // namespace detail

// Left-to-right greedy segment decomposition. Each segment ends at the least k
// admitting a first-visited w[j] = (u, v) with lambda < j <= k and a u -> y
// path in G_{w,j-1}, y being the target of w[k]; the least such j is used.
inline SegmentDecomposition segment_decomposition(const Walk& w, std::uint32_t q) {
    check_modulus(q);
    if (w.empty()) throw ValidationError("segment decomposition needs a non-empty walk");
    const std::size_t len = w.size();
    const auto first = first_visited_flags(w);

    // reach[j]: vertices reachable from the source of w[j] in G_{w,j-1}.
    std::vector<std::optional<std::vector<bool>>> reach(len + 1);
    auto reach_of = [&](std::size_t j) -> const std::vector<bool>& {
        if (!reach[j]) reach[j] = detail::prefix_reach(w, j - 1, w.step(j).source);
        return *reach[j];
    };

    SegmentDecomposition dec{w, q, {}};
    std::size_t lambda = 0;
    while (lambda < len) {
        std::optional<std::pair<std::size_t, std::size_t>> end;  // (k, j)
        for (std::size_t k = lambda + 1; k <= len && !end; ++k) {
            const Vertex y = w.step(k).target;
            for (std::size_t j = lambda + 1; j <= k; ++j) {
                if (first[j] && reach_of(j)[y]) {
                    end = std::make_pair(k, j);
                    break;
                }
            }
        }
        if (!end) {
            dec.segments.push_back({{lambda + 1, len}, std::nullopt});
            break;
        }
        const auto [k, j] = *end;
        const Vertex u = w.step(j).source;
        const Vertex y = w.step(k).target;
        SegmentDetour d{j, w.slice(j, k), detail::prefix_shortest_path(w, j - 1, u, y), Walk(w.graph(), y), 0};
        if (u != y) {
            const EdgeId last_edge = d.shortcut.steps().back();
            std::size_t jp = j - 1;
            while (w.step_id(jp) != last_edge) --jp;
            d.back_path = w.slice(jp + 1, j - 1);
        }
        d.delta = detail::mod_difference(d.detour.size(), d.shortcut.size(), q);
        dec.segments.push_back({{lambda + 1, k}, std::move(d)});
        lambda = k;
    }
    return dec;
}

// Delta_q(w, sigma) for a 1-based segment index that is not the last.
inline std::uint32_t achievable_difference(const SegmentDecomposition& dec, std::size_t sigma) {
    if (sigma == 0 || sigma > dec.count()) throw std::out_of_range("segment index out of range");
    if (sigma == dec.count())
        throw PreconditionError("the last segment has no achievable difference");
    return dec.segments[sigma - 1].detour->delta;
}

// Subgroup of Z_q generated by the differences of segments 1..sigma;
// sigma = 0 gives {0}.
inline ResidueSet achievable_subgroup(const SegmentDecomposition& dec, std::size_t sigma) {
    if (sigma >= dec.count()) throw std::out_of_range("subgroup index must be below the segment count");
    std::vector<std::uint32_t> gens;
    for (std::size_t s = 1; s <= sigma; ++s) gens.push_back(achievable_difference(dec, s));
    return generated_subgroup(gens, dec.q);
}

// Replaces det_sigma by p_sigma and appends (back_path X)^q at the end of the
// segment, where `copies` of the X are det_sigma and the rest p_sigma. The
// result has length |w| + (copies - 1) * Delta mod q, and for copies >= 1 it
// uses exactly the edges of w.
inline Walk rewrite_detour(const SegmentDecomposition& dec, std::size_t sigma, std::uint32_t copies) {
    if (sigma == 0 || sigma > dec.count()) throw std::out_of_range("segment index out of range");
    const Segment& seg = dec.segments[sigma - 1];
    if (!seg.detour) throw PreconditionError("segment has no detour");
    if (copies > dec.q) throw PreconditionError("copies must not exceed q");
    const Walk& w = dec.walk;
    const SegmentDetour& d = *seg.detour;
    const std::size_t k = seg.range.last;

    Walk out = w.slice(1, d.first_index - 1).concat(d.shortcut);
    for (std::uint32_t c = 0; c < dec.q; ++c) {
        out = out.concat(d.back_path);
        out = out.concat(c < copies ? d.detour : d.shortcut);
    }
    return out.concat(w.slice(k + 1, w.size()));
}

}  // namespace modwalk
