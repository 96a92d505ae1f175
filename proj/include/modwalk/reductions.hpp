#pragma once

#include <array>
#include <string>
#include <vector>

#include "solver.hpp"
#include "undirected.hpp"

namespace modwalk {

// What a transformed edge stands for. Carrier edges decide decoding: a source
// edge is selected iff all of its carrier edges are in the solution.
enum class Role : std::uint8_t {
    EdgePath,         // subdivision of a source edge (carrier)
    EdgeLink,         // u_out -> v_in copy of a source edge (carrier)
    TerminalCycle,    // cycle attached to a terminal
    VertexPath,       // path replacing a source vertex
    GadgetConnector,  // non-path edge of an undirected-edge gadget
};

inline std::string_view to_string(Role r) {
    switch (r) {
        case Role::EdgePath: return "edge-path";
        case Role::EdgeLink: return "edge-link";
        case Role::TerminalCycle: return "terminal-cycle";
        case Role::VertexPath: return "vertex-path";
        case Role::GadgetConnector: return "gadget-connector";
    }
    return "?";
}

struct EdgeOrigin {
    Role role;
    std::uint32_t owner;  // source edge, source vertex or terminal index
    std::uint32_t index;  // position inside the gadget

    friend bool operator==(const EdgeOrigin&, const EdgeOrigin&) = default;
};

struct ReductionArtifact {
    DirectedGraph transformed;
    RequirementSpec spec;
    std::vector<std::string> vertex_names;
    std::vector<EdgeOrigin> origin;    // indexed by transformed edge id
    std::vector<Weight> vertex_costs;  // only for reductions that produce vertex costs
    std::size_t source_edge_count = 0;
};

namespace detail {

class ArtifactBuilder {
public:
    Vertex vertex(std::string name) {
        names_.push_back(std::move(name));
        return static_cast<Vertex>(names_.size() - 1);
    }

    void edge(Vertex u, Vertex v, EdgeOrigin o, Weight cost = 1) {
        edges_.push_back({u, v});
        origins_.push_back(o);
        costs_.push_back(cost);
    }

    // A path of `len` edges from u to v through fresh vertices named
    // prefix + (index + name_offset); edge i gets origin {role, owner, i}.
    void path(Vertex u, Vertex v, std::size_t len, Role role, std::uint32_t owner, const std::string& prefix,
              Weight first_cost = 1, Weight other_cost = 1, std::size_t name_offset = 0) {
        Vertex at = u;
        for (std::size_t i = 0; i < len; ++i) {
            const Vertex next = i + 1 == len ? v : vertex(prefix + std::to_string(i + 1 + name_offset));
            edge(at, next, {role, owner, static_cast<std::uint32_t>(i)}, i == 0 ? first_cost : other_cost);
            at = next;
        }
    }

    ReductionArtifact finish(RequirementSpec spec, std::size_t source_edges, bool keep_costs) {
        const std::size_t n = names_.size();
        DirectedGraph g(n, edges_, keep_costs ? costs_ : std::vector<Weight>{});
        std::vector<EdgeOrigin> by_id(edges_.size(), EdgeOrigin{Role::EdgePath, 0, 0});
        for (std::size_t i = 0; i < edges_.size(); ++i) by_id[*g.find_edge(edges_[i].source, edges_[i].target)] = origins_[i];
        return {std::move(g), std::move(spec), std::move(names_), std::move(by_id), {}, source_edges};
    }

private:
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
    std::vector<EdgeOrigin> origins_;
    std::vector<Weight> costs_;
};

inline std::string edge_prefix(EdgeId e) { return "e" + std::to_string(e) + "."; }

}  // namespace detail

// Source edges whose carrier edges are all present in the transformed solution.
inline EdgeSet decode(const ReductionArtifact& a, const EdgeSet& solution) {
    std::vector<std::size_t> total(a.source_edge_count, 0), present(a.source_edge_count, 0);
    std::vector<bool> in(a.transformed.edge_count(), false);
    for (EdgeId id : solution) in.at(id) = true;
    for (EdgeId id = 0; id < a.origin.size(); ++id) {
        const EdgeOrigin& o = a.origin[id];
        if (o.role != Role::EdgePath && o.role != Role::EdgeLink) continue;
        ++total[o.owner];
        if (in[id]) ++present[o.owner];
    }
    EdgeSet out;
    for (EdgeId e = 0; e < a.source_edge_count; ++e)
        if (total[e] > 0 && present[e] == total[e]) out.push_back(e);
    return out;
}

inline constexpr std::array<std::uint32_t, 8> kFirstPrimes{2, 3, 5, 7, 11, 13, 17, 19};

inline std::uint64_t primorial(std::size_t k) {
    if (k == 0) throw ValidationError("primorial needs k >= 1");
    if (k > kFirstPrimes.size()) throw CapacityError("primorial is limited to k <= 8");
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= kFirstPrimes[i];
    return p;
}

// Strongly connected subgraph -> EWM. Every edge becomes a q-edge path,
// q = p_k#, and terminal i gets a fresh cycle of q / p_i edges. The walk is
// v_1 -> v_1 with remainder 1.
inline ReductionArtifact scss_to_ewm(const DirectedGraph& g, const std::vector<Vertex>& terminals) {
    const std::size_t k = terminals.size();
    if (k == 0) throw ValidationError("at least one terminal is required");
    if (k > 4) throw CapacityError("scss_to_ewm supports at most 4 terminals");
    for (Vertex v : terminals)
        if (v >= g.vertex_count()) throw ValidationError("terminal is not a vertex");
    const std::uint64_t q = primorial(k);

    detail::ArtifactBuilder b;
    for (Vertex v = 0; v < g.vertex_count(); ++v) b.vertex("v" + std::to_string(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        b.path(g.edge(e).source, g.edge(e).target, q, Role::EdgePath, e, detail::edge_prefix(e) + "p");
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t len = q / kFirstPrimes[i];
        b.path(terminals[i], terminals[i], len, Role::TerminalCycle, static_cast<std::uint32_t>(i),
               "t" + std::to_string(i + 1) + ".c");
    }
    return b.finish(RequirementSpec::ewm(terminals[0], terminals[0], 1, static_cast<std::uint32_t>(q)),
                    g.edge_count(), false);
}

// Edge lengths -> unit lengths: edge e becomes a path of (m+1)q + (len(e) mod q) edges.
inline ReductionArtifact lengths_to_unit(const DirectedGraph& g, const RequirementSpec& spec) {
    if (spec.k() != 1) throw ValidationError("lengths_to_unit takes a single requirement");
    spec.check_vertices(g);
    const Requirement& p = spec.pairs()[0];
    const std::uint64_t q = p.modulus;
    const std::uint64_t m = g.edge_count();

    detail::ArtifactBuilder b;
    for (Vertex v = 0; v < g.vertex_count(); ++v) b.vertex("v" + std::to_string(v));
    for (EdgeId e = 0; e < m; ++e)
        b.path(g.edge(e).source, g.edge(e).target, (m + 1) * q + g.length(e) % q, Role::EdgePath, e,
               detail::edge_prefix(e) + "p");
    return b.finish(spec, m, false);
}

// Vertex costs -> edge costs: vertex v becomes a q-edge path v.in -> v.out whose
// first edge carries the vertex cost; edge (u, v) becomes u.out -> v.in at cost 0.
// Requirements move to (s.in, t.out).
inline ReductionArtifact vertex_costs_to_edge_costs(const DirectedGraph& g, const std::vector<Weight>& vertex_costs,
                                                    const RequirementSpec& spec) {
    if (vertex_costs.size() != g.vertex_count()) throw ValidationError("one cost per vertex is required");
    spec.check_vertices(g);
    const std::uint64_t q = spec.q();
    const std::size_t n = g.vertex_count();

    detail::ArtifactBuilder b;
    std::vector<Vertex> out_of(n);
    for (Vertex v = 0; v < n; ++v) b.vertex("v" + std::to_string(v) + ".in");
    for (Vertex v = 0; v < n; ++v) {
        out_of[v] = b.vertex("v" + std::to_string(v) + ".out");
        b.path(v, out_of[v], q, Role::VertexPath, v, "v" + std::to_string(v) + ".p", vertex_costs[v], 0);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        b.edge(out_of[g.edge(e).source], g.edge(e).target, {Role::EdgeLink, e, 0}, 0);

    std::vector<Requirement> pairs;
    for (const Requirement& p : spec.pairs()) pairs.push_back({p.source, out_of[p.target], p.remainder, p.modulus});
    return b.finish(RequirementSpec(std::move(pairs)), g.edge_count(), true);
}

// Edge costs -> vertex costs: edge e becomes a (q+1)-edge path whose first
// inner vertex costs cost(e); all other vertices cost 0.
inline ReductionArtifact edge_costs_to_vertex_costs(const DirectedGraph& g, const RequirementSpec& spec) {
    spec.check_vertices(g);
    const std::uint64_t q = spec.q();

    detail::ArtifactBuilder b;
    for (Vertex v = 0; v < g.vertex_count(); ++v) b.vertex("v" + std::to_string(v));
    std::vector<std::pair<std::size_t, Weight>> costly;  // (vertex, cost)
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const std::size_t first_inner = g.vertex_count() + e * q;
        costly.emplace_back(first_inner, g.cost(e));
        b.path(g.edge(e).source, g.edge(e).target, q + 1, Role::EdgePath, e, detail::edge_prefix(e) + "x");
    }
    ReductionArtifact a = b.finish(spec, g.edge_count(), false);
    a.vertex_costs.assign(a.transformed.vertex_count(), 0);
    for (auto [v, c] : costly) a.vertex_costs[v] = c;
    return a;
}

// Undirected walk requirements only depend on parity or nothing at all.
struct UndirectedModulus {
    bool drop = false;  // s = t and r = 0: the empty walk suffices
    std::uint32_t remainder = 0;
    std::uint32_t modulus = 1;

    friend bool operator==(const UndirectedModulus&, const UndirectedModulus&) = default;
};

inline UndirectedModulus reduce_undirected_modulus(Vertex s, Vertex t, std::uint32_t r, std::uint32_t q) {
    if (q == 0) throw ValidationError("modulus must be positive");
    if (r >= q) throw ValidationError("remainder must be below the modulus");
    if (s == t && r == 0) return {true, 0, 1};
    if (q % 2 == 0) return {false, r % 2, 2};
    return {false, 0, 1};
}

// Undirected -> directed. Edge {u, v} (u < v) becomes an 8m-edge path
// w_1 .. w_{8m+1}, edges u -> w_1 and w_{8m+1} -> u, and two-edge connectors
// v -> w' -> w_1 and w_{8m+1} -> w'' -> v.
inline ReductionArtifact undirected_to_directed(const UndirectedGraph& ug, Vertex s, Vertex t, std::uint32_t r,
                                                std::uint32_t q) {
    if (q != 1 && q != 2) throw PreconditionError("reduce the modulus to 1 or 2 first");
    if (r >= q) throw ValidationError("remainder must be below the modulus");
    if (s >= ug.vertex_count() || t >= ug.vertex_count()) throw ValidationError("endpoint is not a vertex");
    const std::size_t m = ug.edge_count();
    const std::size_t len = 8 * m;

    detail::ArtifactBuilder b;
    for (Vertex v = 0; v < ug.vertex_count(); ++v) b.vertex("v" + std::to_string(v));
    for (EdgeId e = 0; e < m; ++e) {
        const Vertex u = ug.edge(e).source, v = ug.edge(e).target;
        const std::string pre = detail::edge_prefix(e);
        const Vertex first = b.vertex(pre + "w1");
        const Vertex last = b.vertex(pre + "w" + std::to_string(len + 1));
        b.path(first, last, len, Role::EdgePath, e, pre + "w", 1, 1, 1);
        const Vertex in = b.vertex(pre + "w'");
        const Vertex out = b.vertex(pre + "w''");
        const std::array<std::pair<Vertex, Vertex>, 6> links{
            {{u, first}, {last, u}, {v, in}, {in, first}, {last, out}, {out, v}}};
        for (std::uint32_t i = 0; i < links.size(); ++i)
            b.edge(links[i].first, links[i].second, {Role::GadgetConnector, e, i});
    }
    return b.finish(RequirementSpec::ewm(s, t, r, q), m, false);
}

// Path edges of fully kept gadgets (m') and every other kept edge (m'').
struct GadgetAccounting {
    std::size_t full_paths = 0;
    std::size_t other_edges = 0;
};

inline GadgetAccounting gadget_accounting(const ReductionArtifact& a, const EdgeSet& solution) {
    const std::size_t full = decode(a, solution).size();
    const std::size_t path_len = 8 * a.source_edge_count;
    return {full, solution.size() - full * path_len};
}

}  // namespace modwalk
