#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <modwalk/modwalk.hpp>

namespace modwalk::testing {

inline std::string data_path(const std::string& name) { return std::string(MODWALK_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name));
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Instance fig1() { return parse_instance(read_data("fig1.txt")); }

inline std::vector<Vertex> fig2_sequence() { return parse_vertex_sequence(read_data("fig2_walk.txt")); }

// Random walk of the given length on a fresh random graph with n vertices.
// The graph is built so that every step has somewhere to go.
struct RandomWalk {
    DirectedGraph graph;
    std::vector<Vertex> sequence;
};

inline RandomWalk random_walk(std::mt19937_64& rng, std::size_t n, std::size_t length) {
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Vertex> seq{pick(rng)};
    std::set<Edge> used;
    for (std::size_t i = 0; i < length; ++i) {
        Vertex next;
        // Reuse known edges often so the walk revisits structure.
        std::vector<Vertex> known;
        for (const Edge& e : used)
            if (e.source == seq.back()) known.push_back(e.target);
        if (!known.empty() && coin(rng) < 0.5)
            next = known[std::uniform_int_distribution<std::size_t>(0, known.size() - 1)(rng)];
        else
            next = pick(rng);
        used.insert({seq.back(), next});
        seq.push_back(next);
    }
    return {DirectedGraph(n, std::vector<Edge>(used.begin(), used.end())), seq};
}

inline EdgeSet edges_of(const DirectedGraph& g, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    EdgeSet out;
    for (auto [u, v] : pairs) out.push_back(*g.find_edge(u, v));
    return normalize(std::move(out));
}

inline std::vector<std::uint32_t> mask_members(ResidueMask m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < 64; ++r)
        if (m >> r & 1) out.push_back(r);
    return out;
}

// Replays a random Introduce/Forget path from the empty configuration and
// compares rho with modular reachability in the accumulated edge set after
// every step: equality when `exact`, inclusion otherwise. With `fresh_only`
// a forgotten vertex is never introduced again. Returns the first mismatch.
inline std::optional<std::string> replay_mismatch(std::uint64_t seed, bool fresh_only, bool exact) {
    std::mt19937_64 rng(seed);
    GeneratorParams gp;
    gp.vertices = 3 + seed % 4;
    gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 4 + seed % 9);
    const Instance inst = random_instance(seed, gp);
    const DirectedGraph& g = inst.graph;
    const std::uint32_t q = 2 + seed % 5;
    const std::size_t omega = 3 + seed % 3;
    const std::size_t steps = 1 + seed % 12;

    Configuration c;
    EdgeSet accumulated;
    std::vector<bool> forgotten(g.vertex_count(), false);
    for (std::size_t step = 0; step < steps; ++step) {
        std::vector<Vertex> options;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (!c.contains(v) && !(fresh_only && forgotten[v])) options.push_back(v);
        const bool can_introduce = !options.empty() && c.size() < omega;
        if (!can_introduce && c.empty()) break;
        if (can_introduce && (c.empty() || rng() % 3 != 0)) {
            const Vertex v = options[rng() % options.size()];
            EdgeSet picked;
            for (EdgeId id : introducible_edges(c, v, g))
                if (rng() % 2) picked.push_back(id);
            const Transition t = introduce(c, v, picked, g, q, omega);
            if (t.cost != picked.size()) return "seed " + std::to_string(seed) + ": introduce cost mismatch";
            c = t.next;
            accumulated = set_union(accumulated, picked);
        } else {
            const Vertex v = c.domain()[rng() % c.size()];
            c = forget(c, v);
            forgotten[v] = true;
        }
        const DirectedGraph gi = g.subgraph(accumulated);
        for (Vertex u : c.domain()) {
            const auto reach = modular_reachability(gi, u, q);
            for (Vertex v : c.domain()) {
                ResidueMask want = 0;
                for (std::uint32_t r = 0; r < q; ++r)
                    if (reach[v].test(r)) want |= ResidueMask{1} << r;
                const ResidueMask got = c.rho(u, v);
                if (exact ? got != want : (got & ~want) != 0)
                    return "seed " + std::to_string(seed) + " step " + std::to_string(step) + ": rho(" +
                           std::to_string(u) + "," + std::to_string(v) + ") disagrees with reachability";
            }
        }
    }
    return std::nullopt;
}

}  // namespace modwalk::testing
