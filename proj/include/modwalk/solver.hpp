#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <queue>
#include <thread>
#include <unordered_map>
#include <vector>

#include "configuration.hpp"
#include "reachability.hpp"

namespace modwalk {

struct Requirement {
    Vertex source = 0;
    Vertex target = 0;
    std::uint32_t remainder = 0;
    std::uint32_t modulus = 1;

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

// k >= 1 walk requirements; k = 1 is plain EWM.
class RequirementSpec {
public:
    explicit RequirementSpec(std::vector<Requirement> pairs) : pairs_(std::move(pairs)) {
        if (pairs_.empty()) throw ValidationError("a specification needs at least one requirement");
        for (const Requirement& p : pairs_) {
            if (p.modulus == 0) throw ValidationError("modulus must be positive");
            if (p.remainder >= p.modulus)
                throw ValidationError("remainder " + std::to_string(p.remainder) + " is not below modulus " +
                                      std::to_string(p.modulus));
        }
    }

    static RequirementSpec ewm(Vertex s, Vertex t, std::uint32_t r, std::uint32_t q) {
        return RequirementSpec({{s, t, r, q}});
    }

    const std::vector<Requirement>& pairs() const noexcept { return pairs_; }
    std::size_t k() const noexcept { return pairs_.size(); }

    std::uint64_t q() const {
        std::vector<std::uint32_t> mods;
        for (const Requirement& p : pairs_) mods.push_back(p.modulus);
        return lcm_of(mods);
    }

    std::vector<Vertex> terminals() const {
        std::vector<Vertex> t;
        for (const Requirement& p : pairs_) {
            t.push_back(p.source);
            t.push_back(p.target);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
    }

    void check_vertices(const DirectedGraph& g) const {
        for (const Requirement& p : pairs_)
            if (p.source >= g.vertex_count() || p.target >= g.vertex_count())
                throw ValidationError("requirement endpoint is not a vertex of the graph");
    }

    friend bool operator==(const RequirementSpec&, const RequirementSpec&) = default;

private:
    std::vector<Requirement> pairs_;
};

inline std::size_t ceil_log2(std::uint64_t q) {
    std::size_t b = 0;
    while ((std::uint64_t{1} << b) < q) ++b;
    return b;
}

inline std::size_t default_omega(const RequirementSpec& spec) {
    const std::size_t lg = ceil_log2(spec.q());
    const std::size_t k = spec.k();
    if (k == 1) return 6 + 3 * lg;
    return (2 * k + 1) + 12 * k + 3 * lg;
}

inline bool is_final(const Configuration& c, const RequirementSpec& spec) {
    for (const Requirement& p : spec.pairs()) {
        if (!c.contains(p.source) || !c.contains(p.target)) return false;
        ResidueMask m = c.rho(p.source, p.target);
        bool ok = false;
        while (m && !ok) {
            const std::uint64_t r = static_cast<std::uint64_t>(__builtin_ctzll(m));
            ok = r % p.modulus == p.remainder;
            m &= m - 1;
        }
        if (!ok) return false;
    }
    return true;
}

struct SolverParams {
    std::size_t omega = 0;  // 0 selects default_omega
    CostMode cost_mode = CostMode::EdgeCount;
    std::size_t state_budget = 10'000'000;
    unsigned threads = 1;
    bool exhaustive = false;  // explore every Forget/Introduce move instead of the canonical subset
};

struct SolveStats {
    std::size_t expanded_states = 0;
    std::size_t generated_states = 0;
    std::size_t omega_used = 0;
    double wall_ms = 0;
};

struct Solution {
    EdgeSet edges;
    Weight cost = 0;
    std::vector<Walk> witnesses;
};

// One shortest modular walk per requirement, on the original graph's ids.
inline std::vector<Walk> extract_witnesses(const EdgeSet& edges, const RequirementSpec& spec,
                                           const DirectedGraph& g) {
    const DirectedGraph sub = g.subgraph(edges);
    std::vector<Walk> out;
    for (const Requirement& p : spec.pairs()) {
        auto w = shortest_modular_walk(sub, p.source, p.target, p.remainder, p.modulus);
        if (!w) throw PreconditionError("edge set does not satisfy the requirement");
        std::vector<EdgeId> steps;
        for (EdgeId id : w->steps()) steps.push_back(*g.find_edge(sub.edge(id).source, sub.edge(id).target));
        out.emplace_back(g, p.source, std::move(steps));
    }
    return out;
}

namespace detail {

// All subsets of `items` ordered by size, then lexicographically.
inline std::vector<EdgeSet> subsets_by_size(const EdgeSet& items) {
    std::vector<EdgeSet> out;
    const std::size_t n = items.size();
    for (std::size_t size = 0; size <= n; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            EdgeSet s;
            for (std::size_t i : pick) s.push_back(items[i]);
            out.push_back(std::move(s));
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

struct SearchNode {
    Weight dist = 0;
    const Configuration* parent = nullptr;
    EdgeSet label;
    bool settled = false;
};

struct Successor {
    Configuration next;
    Weight cost = 0;
    EdgeSet label;
};

}  // namespace detail

namespace detail {

inline std::vector<bool> reaching(const DirectedGraph& g, Vertex target) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<Vertex> todo{target};
    seen[target] = true;
    while (!todo.empty()) {
        const Vertex v = todo.back();
        todo.pop_back();
        for (EdgeId id : g.in_edges(v))
            if (!seen[g.edge(id).source]) {
                seen[g.edge(id).source] = true;
                todo.push_back(g.edge(id).source);
            }
    }
    return seen;
}

// Edges on some s_i -> t_i walk. Dropping the others from a feasible set
// keeps it feasible, so they never appear in a minimal solution.
inline EdgeSet relevant_edges(const DirectedGraph& g, const RequirementSpec& spec) {
    std::vector<bool> keep(g.edge_count(), false);
    for (const Requirement& p : spec.pairs()) {
        std::vector<bool> from(g.vertex_count(), false);
        std::vector<Vertex> todo{p.source};
        from[p.source] = true;
        while (!todo.empty()) {
            const Vertex v = todo.back();
            todo.pop_back();
            for (EdgeId id : g.out_edges(v))
                if (!from[g.edge(id).target]) {
                    from[g.edge(id).target] = true;
                    todo.push_back(g.edge(id).target);
                }
        }
        const auto to = reaching(g, p.target);
        for (EdgeId id = 0; id < g.edge_count(); ++id)
            if (from[g.edge(id).source] && to[g.edge(id).target]) keep[id] = true;
    }
    EdgeSet out;
    for (EdgeId id = 0; id < g.edge_count(); ++id)
        if (keep[id]) out.push_back(id);
    return out;
}

// Uniform-cost search on h. Unless exhaustive, moves follow a canonical form:
// vertices are introduced while the domain has room, non-terminals are
// forgotten only once it is full, terminals are never forgotten, and only
// terminals may be introduced without edges. Every solution whose vertices
// and terminals fit in the domain is reached by such a path (grow each
// component outward from one of its terminals).
inline std::optional<EdgeSet> configuration_search(const DirectedGraph& h, const RequirementSpec& spec,
                                                   std::uint32_t q, std::size_t omega, const SolverParams& params,
                                                   SolveStats& stats) {
    const auto terms = spec.terminals();
    auto is_terminal = [&](Vertex v) { return std::binary_search(terms.begin(), terms.end(), v); };
    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < h.vertex_count(); ++v)
        if (params.exhaustive || !h.out_edges(v).empty() || !h.in_edges(v).empty() || is_terminal(v))
            candidates.push_back(v);

    std::unordered_map<Configuration, SearchNode, ConfigurationHash> nodes;
    using Entry = std::tuple<Weight, std::size_t, const Configuration*>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    std::size_t sequence = 0;
    frontier.emplace(0, sequence++, &nodes.try_emplace(Configuration{}).first->first);

    auto expand = [&](const Configuration& c) {
        std::vector<Successor> out;
        if (params.exhaustive) {
            for (Vertex v : c.domain()) out.push_back({forget(c, v), 0, {}});
            if (c.size() >= omega) return out;
        } else if (c.size() >= omega) {
            for (Vertex v : c.domain())
                if (!is_terminal(v)) out.push_back({forget(c, v), 0, {}});
            return out;
        }
        const std::size_t base = out.size();
        struct Job {
            Vertex v;
            EdgeSet picked;
        };
        std::vector<Job> jobs;
        for (Vertex v : candidates) {
            if (c.contains(v)) continue;
            const bool bare = params.exhaustive || is_terminal(v);
            for (EdgeSet& s : subsets_by_size(introducible_edges(c, v, h)))
                if (bare || !s.empty()) jobs.push_back({v, std::move(s)});
        }
        out.resize(base + jobs.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                auto t = introduce(c, jobs[i].v, jobs[i].picked, h, q, omega, params.cost_mode);
                out[base + i] = {std::move(t.next), t.cost, std::move(jobs[i].picked)};
            }
        };
        const unsigned threads = std::max(1u, params.threads);
        if (threads == 1 || jobs.size() < 64) {
            work(0, jobs.size());
        } else {
            std::vector<std::jthread> pool;
            const std::size_t chunk = (jobs.size() + threads - 1) / threads;
            for (std::size_t lo = 0; lo < jobs.size(); lo += chunk)
                pool.emplace_back(work, lo, std::min(jobs.size(), lo + chunk));
        }
        return out;
    };

    while (!frontier.empty()) {
        auto [d, seq, cptr] = frontier.top();
        frontier.pop();
        SearchNode& node = nodes.at(*cptr);
        if (node.settled || d != node.dist) continue;
        node.settled = true;

        if (is_final(*cptr, spec)) {
            EdgeSet edges;
            for (const Configuration* at = cptr; at; at = nodes.at(*at).parent)
                edges = set_union(edges, nodes.at(*at).label);
            const Weight cost = h.cost_of(edges, params.cost_mode);
            if (cost != d)
                throw std::logic_error("search path pays " + std::to_string(d) + " but its edge set costs " +
                                       std::to_string(cost));
            stats.generated_states = nodes.size();
            return edges;
        }

        if (++stats.expanded_states > params.state_budget)
            throw CapacityError("state budget of " + std::to_string(params.state_budget) + " exhausted");
        for (Successor& s : expand(*cptr)) {
            const Weight nd = d + s.cost;
            auto [it, inserted] = nodes.try_emplace(std::move(s.next));
            SearchNode& n = it->second;
            if (!inserted && (n.settled || n.dist <= nd)) continue;
            n.dist = nd;
            n.parent = cptr;
            n.label = std::move(s.label);
            frontier.emplace(nd, sequence++, &it->first);
        }
    }
    stats.generated_states = nodes.size();
    return std::nullopt;
}

}  // namespace detail

// Minimum-cost edge set satisfying every requirement, found as a shortest
// path in the configuration graph from the empty configuration to a final
// one. Returns nullopt when no edge set satisfies the specification.
inline std::optional<Solution> solve(const DirectedGraph& g, const RequirementSpec& spec,
                                     const SolverParams& params = {}, SolveStats* stats_out = nullptr) {
    const auto started = std::chrono::steady_clock::now();
    spec.check_vertices(g);
    const std::uint64_t q64 = spec.q();
    detail::check_solver_modulus(q64);
    const std::size_t omega = params.omega == 0 ? default_omega(spec) : params.omega;
    if (omega < 2 * spec.k() + 1)
        throw PreconditionError("omega must be at least 2k+1 = " + std::to_string(2 * spec.k() + 1));

    SolveStats stats;
    stats.omega_used = omega;
    auto finish = [&](std::optional<Solution> result) {
        stats.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        if (stats_out) *stats_out = stats;
        return result;
    };

    for (const Requirement& p : spec.pairs())
        if (!modular_reachability(g, p.source, p.modulus)[p.target].test(p.remainder)) return finish(std::nullopt);

    const EdgeSet relevant = params.exhaustive ? g.all_edges() : detail::relevant_edges(g, spec);
    const DirectedGraph h = g.subgraph(relevant);
    auto found = detail::configuration_search(h, spec, static_cast<std::uint32_t>(q64), omega, params, stats);
    if (!found) return finish(std::nullopt);
    EdgeSet edges = g.lift(h, *found);
    const Weight cost = g.cost_of(edges, params.cost_mode);
    return finish(Solution{edges, cost, extract_witnesses(edges, spec, g)});
}

}  // namespace modwalk
