#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "residues.hpp"

namespace modwalk {

// Remainder sets inside configurations are single 64-bit words.
inline constexpr std::uint32_t kSolverMaxModulus = 64;

using ResidueMask = std::uint64_t;

namespace detail {

inline ResidueMask full_mask(std::uint32_t q) { return q == 64 ? ~ResidueMask{0} : (ResidueMask{1} << q) - 1; }

inline ResidueMask rotate_mask(ResidueMask x, std::uint32_t shift, std::uint32_t q) {
    shift %= q;
    if (shift == 0) return x;
    return ((x << shift) | (x >> (q - shift))) & full_mask(q);
}

inline ResidueMask sumset_mask(ResidueMask x, ResidueMask y, std::uint32_t q) {
    ResidueMask out = 0;
    while (x) {
        const int r = __builtin_ctzll(x);
        out |= rotate_mask(y, static_cast<std::uint32_t>(r), q);
        x &= x - 1;
    }
    return out;
}

inline void check_solver_modulus(std::uint64_t q) {
    if (q == 0) throw ValidationError("modulus must be positive");
    if (q > kSolverMaxModulus)
        throw CapacityError("solver supports moduli up to " + std::to_string(kSolverMaxModulus) + ", got " +
                            std::to_string(q));
}

}  // namespace detail

// A configuration (D, rho): a sorted vertex set D and, for each ordered pair
// of D, a set of remainders mod q. Equality and hashing are structural.
class Configuration {
public:
    Configuration() = default;

    Configuration(std::vector<Vertex> domain, std::vector<ResidueMask> rho)
        : domain_(std::move(domain)), rho_(std::move(rho)) {
        if (!std::is_sorted(domain_.begin(), domain_.end()) ||
            std::adjacent_find(domain_.begin(), domain_.end()) != domain_.end())
            throw ValidationError("configuration domain must be sorted and duplicate-free");
        if (rho_.size() != domain_.size() * domain_.size())
            throw ValidationError("configuration rho has the wrong shape");
    }

    std::span<const Vertex> domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return domain_.size(); }
    bool empty() const noexcept { return domain_.empty(); }

    bool contains(Vertex v) const { return std::binary_search(domain_.begin(), domain_.end(), v); }

    std::size_t index_of(Vertex v) const {
        auto it = std::lower_bound(domain_.begin(), domain_.end(), v);
        if (it == domain_.end() || *it != v)
            throw PreconditionError("vertex " + std::to_string(v) + " is not in the domain");
        return static_cast<std::size_t>(it - domain_.begin());
    }

    // rho over domain indices
    ResidueMask at(std::size_t a, std::size_t b) const { return rho_[a * domain_.size() + b]; }
    ResidueMask& at(std::size_t a, std::size_t b) { return rho_[a * domain_.size() + b]; }

    // rho over vertices
    ResidueMask rho(Vertex u, Vertex v) const { return at(index_of(u), index_of(v)); }

    std::span<const ResidueMask> raw_rho() const noexcept { return rho_; }

    friend bool operator==(const Configuration&, const Configuration&) = default;

    std::size_t hash() const noexcept {
        std::size_t h = domain_.size();
        auto mix = [&h](std::uint64_t x) {
            h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        for (Vertex v : domain_) mix(v);
        for (ResidueMask m : rho_) mix(m);
        return h;
    }

private:
    std::vector<Vertex> domain_;
    std::vector<ResidueMask> rho_;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const noexcept { return c.hash(); }
};

// Saturates rho under concatenation of internal walks, including the
// zero-length walk. For each source u, the reachable part of the product
// graph D x Z_q from (u, 0) is explored with a bit-parallel frontier.
inline Configuration closure(const Configuration& c, std::uint32_t q) {
    detail::check_solver_modulus(q);
    const std::size_t d = c.size();
    std::vector<ResidueMask> out(d * d, 0);
    std::vector<std::size_t> work;
    std::vector<ResidueMask> reach(d);
    for (std::size_t a = 0; a < d; ++a) {
        std::fill(reach.begin(), reach.end(), 0);
        reach[a] = 1;  // offset 0 at the start vertex
        work.assign(1, a);
        while (!work.empty()) {
            const std::size_t b = work.back();
            work.pop_back();
            for (std::size_t x = 0; x < d; ++x) {
                const ResidueMask step = c.at(b, x);
                if (!step) continue;
                const ResidueMask add = detail::sumset_mask(reach[b], step, q) & ~reach[x];
                if (add) {
                    reach[x] |= add;
                    work.push_back(x);
                }
            }
        }
        for (std::size_t x = 0; x < d; ++x) out[a * d + x] = reach[x];
    }
    return Configuration(std::vector<Vertex>(c.domain().begin(), c.domain().end()), std::move(out));
}

// E_{v,D'}: edges of g between v and a vertex of D' = D + {v}, including the
// self-loop on v if present.
inline EdgeSet introducible_edges(const Configuration& c, Vertex v, const DirectedGraph& g) {
    EdgeSet out;
    auto in_domain = [&](Vertex x) { return x == v || c.contains(x); };
    for (EdgeId id : g.out_edges(v))
        if (in_domain(g.edge(id).target)) out.push_back(id);
    for (EdgeId id : g.in_edges(v))
        if (g.edge(id).source != v && in_domain(g.edge(id).source)) out.push_back(id);
    return normalize(std::move(out));
}

struct Transition {
    Configuration next;
    Weight cost = 0;
};

// Introduce v with the picked edges; the result is closed.
inline Transition introduce(const Configuration& c, Vertex v, const EdgeSet& picked, const DirectedGraph& g,
                            std::uint32_t q, std::size_t omega, CostMode mode = CostMode::EdgeCount) {
    detail::check_solver_modulus(q);
    if (v >= g.vertex_count()) throw PreconditionError("introduced vertex is not in the graph");
    if (c.contains(v)) throw PreconditionError("vertex " + std::to_string(v) + " is already in the domain");
    if (c.size() >= omega) throw PreconditionError("domain is full");
    const EdgeSet allowed = introducible_edges(c, v, g);
    if (!is_subset(normalize(picked), allowed))
        throw PreconditionError("picked edges must join the introduced vertex to the new domain");

    std::vector<Vertex> dom(c.domain().begin(), c.domain().end());
    dom.insert(std::upper_bound(dom.begin(), dom.end(), v), v);
    const std::size_t d = dom.size();
    const std::size_t vi = static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), v) - dom.begin());
    auto old_index = [vi](std::size_t i) { return i < vi ? i : i - 1; };

    std::vector<ResidueMask> rho(d * d, 0);
    for (std::size_t a = 0; a < d; ++a) {
        if (a == vi) continue;
        for (std::size_t b = 0; b < d; ++b) {
            if (b == vi) continue;
            rho[a * d + b] = c.at(old_index(a), old_index(b));
        }
    }
    const ResidueMask one = ResidueMask{1} << (1 % q);
    auto idx = [&](Vertex x) {
        return static_cast<std::size_t>(std::lower_bound(dom.begin(), dom.end(), x) - dom.begin());
    };
    for (EdgeId id : picked) {
        const Edge& e = g.edge(id);
        rho[idx(e.source) * d + idx(e.target)] = one;
    }
    return {closure(Configuration(std::move(dom), std::move(rho)), q), g.cost_of(picked, mode)};
}

// Drop v from the domain and restrict rho; costs nothing.
inline Configuration forget(const Configuration& c, Vertex v) {
    const std::size_t vi = c.index_of(v);
    std::vector<Vertex> dom;
    for (Vertex x : c.domain())
        if (x != v) dom.push_back(x);
    const std::size_t d = c.size();
    std::vector<ResidueMask> rho;
    rho.reserve((d - 1) * (d - 1));
    for (std::size_t a = 0; a < d; ++a) {
        if (a == vi) continue;
        for (std::size_t b = 0; b < d; ++b)
            if (b != vi) rho.push_back(c.at(a, b));
    }
    return Configuration(std::move(dom), std::move(rho));
}

}  // namespace modwalk
