#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "reachability.hpp"
#include "scc.hpp"
#include "solver.hpp"
#include "undirected.hpp"

namespace modwalk {

inline constexpr std::size_t kOracleMaxEdges = 20;

struct OracleResult {
    Weight cost = 0;
    EdgeSet edges;

    friend bool operator==(const OracleResult&, const OracleResult&) = default;
};

inline bool feasible(const DirectedGraph& g, const EdgeSet& edges, const RequirementSpec& spec,
                     LengthMode lengths = LengthMode::Unit) {
    const DirectedGraph sub = g.subgraph(edges);
    for (const Requirement& p : spec.pairs())
        if (!modular_reachability(sub, p.source, p.modulus, lengths)[p.target].test(p.remainder)) return false;
    return true;
}

namespace detail {

// Minimum-cost subset of {0..m-1} satisfying `ok`. Count mode scans subsets by
// size in lexicographic order and stops at the first hit; cost mode scans all
// subsets and keeps the cheapest, ties going to the lexicographically
// smallest id list.
template <class Ok, class Cost>
std::optional<OracleResult> minimum_subset(std::size_t m, Ok ok, Cost cost_of, CostMode mode, bool monotone) {
    if (m > kOracleMaxEdges)
        throw CapacityError("brute force is limited to " + std::to_string(kOracleMaxEdges) + " edges, got " +
                            std::to_string(m));
    EdgeSet all(m);
    for (EdgeId i = 0; i < m; ++i) all[i] = i;
    if (monotone && !ok(all)) return std::nullopt;

    if (mode == CostMode::EdgeCount) {
        for (std::size_t size = 0; size <= m; ++size) {
            std::vector<EdgeId> pick(size);
            for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<EdgeId>(i);
            while (true) {
                if (ok(pick)) return OracleResult{size, pick};
                std::size_t i = size;
                while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        return std::nullopt;
    }

    std::optional<OracleResult> best;
    EdgeSet set;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        set.clear();
        for (EdgeId i = 0; i < m; ++i)
            if (mask >> i & 1) set.push_back(i);
        const Weight c = cost_of(set);
        if (best && (c > best->cost || (c == best->cost && set >= best->edges))) continue;
        if (ok(set)) best = OracleResult{c, set};
    }
    return best;
}

}  // namespace detail

inline std::optional<OracleResult> brute_force_dsnm(const DirectedGraph& g, const RequirementSpec& spec,
                                                    CostMode mode = CostMode::EdgeCount,
                                                    LengthMode lengths = LengthMode::Unit) {
    spec.check_vertices(g);
    return detail::minimum_subset(
        g.edge_count(), [&](const EdgeSet& s) { return feasible(g, s, spec, lengths); },
        [&](const EdgeSet& s) { return g.cost_of(s, mode); }, mode, true);
}

inline std::optional<OracleResult> brute_force_ewm(const DirectedGraph& g, Vertex s, Vertex t, std::uint32_t r,
                                                   std::uint32_t q, CostMode mode = CostMode::EdgeCount,
                                                   LengthMode lengths = LengthMode::Unit) {
    return brute_force_dsnm(g, RequirementSpec::ewm(s, t, r, q), mode, lengths);
}

// Smallest strongly connected edge set touching every terminal.
inline std::optional<OracleResult> brute_force_scss(const DirectedGraph& g, const std::vector<Vertex>& terminals) {
    for (Vertex v : terminals)
        if (v >= g.vertex_count()) throw ValidationError("terminal is not a vertex");
    auto ok = [&](const EdgeSet& s) {
        std::vector<bool> touched(g.vertex_count(), false);
        for (EdgeId id : s) touched[g.edge(id).source] = touched[g.edge(id).target] = true;
        for (Vertex v : terminals)
            if (!touched[v]) return false;
        return strongly_connected_on_covered(g, s);
    };
    return detail::minimum_subset(
        g.edge_count(), ok, [](const EdgeSet& s) { return Weight{s.size()}; }, CostMode::EdgeCount, false);
}

inline std::optional<OracleResult> brute_force_scssm(const DirectedGraph& g, const RequirementSpec& spec,
                                                     CostMode mode = CostMode::EdgeCount) {
    spec.check_vertices(g);
    return detail::minimum_subset(
        g.edge_count(), [&](const EdgeSet& s) { return feasible(g, s, spec) && strongly_connected_on_covered(g, s); },
        [&](const EdgeSet& s) { return g.cost_of(s, mode); }, mode, false);
}

inline std::optional<OracleResult> brute_force_undirected_ewm(const UndirectedGraph& g, Vertex s, Vertex t,
                                                              std::uint32_t r, std::uint32_t q) {
    if (s >= g.vertex_count() || t >= g.vertex_count()) throw ValidationError("endpoint is not a vertex");
    if (r >= q) throw ValidationError("remainder must be below the modulus");
    return detail::minimum_subset(
        g.edge_count(), [&](const EdgeSet& set) { return undirected_modular_reachability(g, set, s, q)[t].test(r); },
        [](const EdgeSet& set) { return Weight{set.size()}; }, CostMode::EdgeCount, true);
}

// Vertex-cost variant: a solution pays for every vertex it covers, terminals
// included.
inline std::optional<OracleResult> brute_force_vertex_cost_dsnm(const DirectedGraph& g,
                                                                const std::vector<Weight>& vertex_costs,
                                                                const RequirementSpec& spec) {
    if (vertex_costs.size() != g.vertex_count()) throw ValidationError("one cost per vertex is required");
    spec.check_vertices(g);
    const auto terms = spec.terminals();
    auto cost = [&](const EdgeSet& s) {
        std::vector<bool> covered(g.vertex_count(), false);
        for (Vertex v : terms) covered[v] = true;
        for (EdgeId id : s) covered[g.edge(id).source] = covered[g.edge(id).target] = true;
        Weight c = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (covered[v]) c += vertex_costs[v];
        return c;
    };
    return detail::minimum_subset(
        g.edge_count(), [&](const EdgeSet& s) { return feasible(g, s, spec); }, cost, CostMode::EdgeCosts, true);
}

// Exact minimum for instances beyond the brute-force guard. Maximal chains of
// non-terminal vertices with one in-edge and one out-edge are contracted into
// weighted edges (a minimal solution uses a chain entirely or not at all), and
// the contracted instance is solved by include/exclude branch and bound.
namespace detail {

struct ChainEdge {
    Vertex source;
    Vertex target;
    Weight length;
    Weight cost;
    EdgeSet originals;
};

inline std::vector<ChainEdge> contract_chains(const DirectedGraph& g, const std::vector<Vertex>& terminals,
                                              CostMode mode, LengthMode lengths) {
    std::vector<bool> inner(g.vertex_count(), false);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.in_edges(v).size() != 1 || g.out_edges(v).size() != 1) continue;
        if (g.edge(g.in_edges(v)[0]).is_loop()) continue;
        inner[v] = true;
    }
    for (Vertex v : terminals) inner[v] = false;

    std::vector<ChainEdge> out;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        if (inner[g.edge(id).source]) continue;
        ChainEdge c{g.edge(id).source, g.edge(id).source, 0, 0, {}};
        EdgeId at = id;
        while (true) {
            c.originals.push_back(at);
            c.length += lengths == LengthMode::Unit ? 1 : g.length(at);
            c.cost += mode == CostMode::EdgeCount ? 1 : g.cost(at);
            const Vertex next = g.edge(at).target;
            if (!inner[next]) {
                c.target = next;
                break;
            }
            at = g.out_edges(next)[0];
        }
        c.originals = normalize(std::move(c.originals));
        out.push_back(std::move(c));
    }
    return out;
}

class ChainSearch {
public:
    ChainSearch(std::size_t n, std::vector<ChainEdge> edges, const RequirementSpec& spec, std::size_t budget)
        : n_(n), edges_(std::move(edges)), spec_(spec), budget_(budget), state_(edges_.size(), Undecided) {}

    std::optional<std::pair<Weight, std::vector<std::size_t>>> run() {
        std::vector<bool> all(edges_.size(), true);
        if (!feasible(all)) return std::nullopt;
        // Greedy minimal solution as the first upper bound.
        std::vector<bool> keep = all;
        for (std::size_t i = edges_.size(); i-- > 0;) {
            keep[i] = false;
            if (!feasible(keep)) keep[i] = true;
        }
        record(keep);
        branch(0, 0);
        return std::make_pair(best_cost_, best_);
    }

private:
    enum State : std::uint8_t { Undecided, In, Out };

    bool feasible(const std::vector<bool>& allowed) const {
        for (const Requirement& p : spec_.pairs())
            if (!reach(allowed, p.source, p.modulus)[p.target].test(p.remainder)) return false;
        return true;
    }

    std::vector<ResidueSet> reach(const std::vector<bool>& allowed, Vertex s, std::uint32_t q) const {
        std::vector<std::vector<std::size_t>> adj(n_);
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (allowed[i]) adj[edges_[i].source].push_back(i);
        std::vector<ResidueSet> r(n_);
        std::deque<std::pair<Vertex, std::uint32_t>> queue{{s, 0}};
        r[s].set(0);
        while (!queue.empty()) {
            auto [v, x] = queue.front();
            queue.pop_front();
            for (std::size_t i : adj[v]) {
                const Vertex w = edges_[i].target;
                const auto x2 = static_cast<std::uint32_t>((x + edges_[i].length) % q);
                if (!r[w].test(x2)) {
                    r[w].set(x2);
                    queue.emplace_back(w, x2);
                }
            }
        }
        return r;
    }

    // Cheapest s -> t path where chosen edges are free: every completion
    // contains such a path for every requirement.
    Weight path_bound() const {
        Weight bound = 0;
        for (const Requirement& p : spec_.pairs()) {
            std::vector<Weight> dist(n_, std::numeric_limits<Weight>::max());
            std::vector<bool> done(n_, false);
            dist[p.source] = 0;
            for (std::size_t round = 0; round < n_; ++round) {
                Vertex v = 0;
                Weight dv = std::numeric_limits<Weight>::max();
                for (Vertex x = 0; x < n_; ++x)
                    if (!done[x] && dist[x] < dv) dv = dist[x], v = x;
                if (dv == std::numeric_limits<Weight>::max()) break;
                done[v] = true;
                for (std::size_t i = 0; i < edges_.size(); ++i) {
                    if (state_[i] == Out || edges_[i].source != v) continue;
                    const Weight w = state_[i] == In ? 0 : edges_[i].cost;
                    dist[edges_[i].target] = std::min(dist[edges_[i].target], dv + w);
                }
            }
            bound = std::max(bound, dist[p.target]);
        }
        return bound;
    }

    void record(const std::vector<bool>& chosen) {
        Weight c = 0;
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < chosen.size(); ++i)
            if (chosen[i]) c += edges_[i].cost, ids.push_back(i);
        if (c >= best_cost_) return;
        best_cost_ = c;
        best_ = std::move(ids);
    }

    void branch(std::size_t i, Weight cost) {
        if (++nodes_ > budget_) throw CapacityError("exact oracle exceeded its node budget");
        if (cost >= best_cost_) return;
        std::vector<bool> chosen(edges_.size()), open(edges_.size());
        for (std::size_t j = 0; j < edges_.size(); ++j) {
            chosen[j] = state_[j] == In;
            open[j] = state_[j] != Out;
        }
        if (feasible(chosen)) {
            record(chosen);
            return;
        }
        if (i == edges_.size() || !feasible(open)) return;
        if (cost + path_bound() >= best_cost_) return;

        state_[i] = Out;
        branch(i + 1, cost);
        state_[i] = In;
        branch(i + 1, cost + edges_[i].cost);
        state_[i] = Undecided;
    }

    std::size_t n_;
    std::vector<ChainEdge> edges_;
    const RequirementSpec& spec_;
    std::size_t budget_;
    std::vector<State> state_;
    std::size_t nodes_ = 0;
    Weight best_cost_ = std::numeric_limits<Weight>::max();
    std::vector<std::size_t> best_;
};

}  // namespace detail

inline std::optional<OracleResult> exact_dsnm(const DirectedGraph& g, const RequirementSpec& spec,
                                              CostMode mode = CostMode::EdgeCount,
                                              LengthMode lengths = LengthMode::Unit,
                                              std::size_t node_budget = 50'000'000) {
    spec.check_vertices(g);
    for (const Requirement& p : spec.pairs()) check_modulus(p.modulus);
    auto chains = detail::contract_chains(g, spec.terminals(), mode, lengths);
    std::vector<detail::ChainEdge> copy = chains;
    auto found = detail::ChainSearch(g.vertex_count(), std::move(copy), spec, node_budget).run();
    if (!found) return std::nullopt;
    EdgeSet edges;
    for (std::size_t i : found->second) edges = set_union(edges, chains[i].originals);
    const Weight cost = g.cost_of(edges, mode);
    if (cost != found->first) throw std::logic_error("contracted and expanded costs disagree");
    return OracleResult{cost, edges};
}

inline std::optional<OracleResult> exact_ewm(const DirectedGraph& g, Vertex s, Vertex t, std::uint32_t r,
                                             std::uint32_t q, CostMode mode = CostMode::EdgeCount,
                                             LengthMode lengths = LengthMode::Unit) {
    return exact_dsnm(g, RequirementSpec::ewm(s, t, r, q), mode, lengths);
}

}  // namespace modwalk
