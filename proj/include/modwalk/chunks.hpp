#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "cutwidth.hpp"
#include "walk.hpp"

namespace modwalk {

enum class ChunkKind { Normal, Cycle, Tadpole };

inline std::string_view to_string(ChunkKind k) {
    switch (k) {
        case ChunkKind::Normal: return "normal";
        case ChunkKind::Cycle: return "cycle";
        case ChunkKind::Tadpole: return "tadpole";
    }
    return "?";
}

struct Chunk {
    Range range;
    ChunkKind kind = ChunkKind::Normal;
};

// Maximal runs of first-visited steps whose intermediate vertices are fresh.
// Positions between chunks are revisited steps.
struct ChunkDecomposition {
    Walk walk;
    std::vector<Chunk> chunks;
};

inline ChunkDecomposition chunk_decomposition(const Walk& w) {
    if (w.empty()) throw ValidationError("chunk decomposition needs a non-empty walk");
    const auto first = first_visited_flags(w);
    const auto fresh = fresh_target_flags(w);

    ChunkDecomposition out{w, {}};
    for (std::size_t i = 1; i <= w.size(); ++i) {
        if (!first[i]) continue;
        const bool extends = !out.chunks.empty() && out.chunks.back().range.last == i - 1 && fresh[i - 1];
        if (extends) out.chunks.back().range.last = i;
        else out.chunks.push_back({{i, i}, ChunkKind::Normal});
    }

    for (Chunk& c : out.chunks) {
        const Vertex head = w.step(c.range.first).source;
        const Vertex tail = w.step(c.range.last).target;
        if (head == tail) {
            c.kind = ChunkKind::Cycle;
            continue;
        }
        for (std::size_t i = c.range.first; i < c.range.last; ++i) {
            if (w.step(i).target == tail) {
                c.kind = ChunkKind::Tadpole;
                break;
            }
        }
    }
    return out;
}

// The vertex ordering built chunk by chunk: tadpoles append their
// intermediates, cycles insert theirs right after the cycle's vertex, a
// final chunk ending at a fresh vertex appends intermediates and that vertex,
// and any other normal chunk from u to v places its intermediates
// monotonically right after whichever of u, v comes first.
inline std::vector<Vertex> chunk_vertex_order(const Walk& w) {
    std::vector<Vertex> order{w.source()};
    if (w.empty()) return order;
    const ChunkDecomposition dec = chunk_decomposition(w);

    auto position = [&](Vertex v) {
        return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
    };
    auto insert_after = [&](std::size_t pos, const std::vector<Vertex>& seq) {
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos + 1), seq.begin(), seq.end());
    };

    for (const Chunk& c : dec.chunks) {
        const Vertex u = w.step(c.range.first).source;
        const Vertex v = w.step(c.range.last).target;
        std::vector<Vertex> mids;
        for (std::size_t i = c.range.first; i < c.range.last; ++i) mids.push_back(w.step(i).target);

        switch (c.kind) {
            case ChunkKind::Tadpole:
                order.insert(order.end(), mids.begin(), mids.end());
                break;
            case ChunkKind::Cycle:
                insert_after(position(u), mids);
                break;
            case ChunkKind::Normal: {
                const std::size_t pv = position(v);
                if (pv == order.size()) {
                    mids.push_back(v);
                    order.insert(order.end(), mids.begin(), mids.end());
                    break;
                }
                const std::size_t pu = position(u);
                if (pu < pv) {
                    insert_after(pu, mids);
                } else {
                    std::reverse(mids.begin(), mids.end());
                    insert_after(pv, mids);
                }
                break;
            }
        }
    }
    return order;
}

// Cutwidth of G_w along chunk_vertex_order(w).
inline std::size_t chunk_order_cutwidth(const Walk& w) {
    const SpannedGraph spanned = spanned_subgraph(w, w.size());
    std::vector<Vertex> local;
    for (Vertex v : chunk_vertex_order(w)) local.push_back(spanned.local(v));
    return cutwidth_of_order(spanned.graph, local);
}

}  // namespace modwalk
