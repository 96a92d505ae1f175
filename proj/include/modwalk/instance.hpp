#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "solver.hpp"
#include "undirected.hpp"

namespace modwalk {

// A parsed instance file. Directed files fill `graph`, undirected files fill
// `undirected`; `vertex_costs` is empty unless the file has vcost lines.
struct Instance {
    bool directed = true;
    DirectedGraph graph;
    UndirectedGraph undirected;
    RequirementSpec spec = RequirementSpec::ewm(0, 0, 0, 1);
    std::vector<Weight> vertex_costs;

    std::size_t vertex_count() const { return directed ? graph.vertex_count() : undirected.vertex_count(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::uint64_t parse_number(std::string_view word, std::size_t line, std::string_view what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || ptr != word.data() + word.size())
        throw ParseError(line, "expected a non-negative integer for " + std::string(what) + ", got '" +
                                   std::string(word) + "'");
    return v;
}

}  // namespace detail

// Grammar (one item per line, '#' starts a comment):
//   <n> <m> directed|undirected
//   m edge lines  <u> <v> [cost=<c>] [len=<d>]
//   optional      vcost <v> <c>
//   ewm <s> <t> <r> <q>   or   dsnm <k> followed by k lines <s> <t> <r> <q>
inline Instance parse_instance(std::string_view text) {
    struct Line {
        std::size_t number;
        std::vector<std::string_view> words;
    };
    std::vector<Line> lines;
    {
        std::size_t number = 0, start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++number;
            std::string_view raw = text.substr(start, end - start);
            if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
            auto words = detail::split_words(raw);
            if (!words.empty()) lines.push_back({number, std::move(words)});
            start = end + 1;
        }
    }
    if (lines.empty()) throw ParseError(1, "empty instance");

    std::size_t at = 0;
    const Line& head = lines[at++];
    if (head.words.size() != 3) throw ParseError(head.number, "header must be '<n> <m> directed|undirected'");
    const std::uint64_t n = detail::parse_number(head.words[0], head.number, "vertex count");
    const std::uint64_t m = detail::parse_number(head.words[1], head.number, "edge count");
    Instance inst;
    if (head.words[2] == "directed") inst.directed = true;
    else if (head.words[2] == "undirected") inst.directed = false;
    else throw ParseError(head.number, "expected 'directed' or 'undirected', got '" + std::string(head.words[2]) + "'");

    auto vertex = [&](std::string_view w, std::size_t line) {
        const std::uint64_t v = detail::parse_number(w, line, "vertex");
        if (v >= n) throw ParseError(line, "vertex " + std::to_string(v) + " is out of range 0.." + std::to_string(n - 1));
        return static_cast<Vertex>(v);
    };

    std::vector<Edge> edges;
    std::vector<std::optional<Weight>> costs, lengths;
    std::set<Edge> seen;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (at == lines.size()) throw ParseError(lines.back().number, "expected " + std::to_string(m) + " edge lines");
        const Line& l = lines[at++];
        if (l.words.size() < 2 || l.words.size() > 4) throw ParseError(l.number, "edge line must be '<u> <v> [cost=c] [len=d]'");
        Edge e{vertex(l.words[0], l.number), vertex(l.words[1], l.number)};
        Edge key = e;
        if (!inst.directed) {
            if (e.is_loop()) throw ParseError(l.number, "undirected self-loops are not supported");
            if (key.source > key.target) std::swap(key.source, key.target);
        }
        if (!seen.insert(key).second) throw ParseError(l.number, "duplicate edge " + to_string(e));
        std::optional<Weight> cost, len;
        for (std::size_t w = 2; w < l.words.size(); ++w) {
            const std::string_view word = l.words[w];
            if (word.starts_with("cost=") && !cost) cost = detail::parse_number(word.substr(5), l.number, "cost");
            else if (word.starts_with("len=") && !len) len = detail::parse_number(word.substr(4), l.number, "length");
            else throw ParseError(l.number, "unexpected edge annotation '" + std::string(word) + "'");
        }
        if (!inst.directed && (cost || len)) throw ParseError(l.number, "undirected edges take no annotations");
        edges.push_back(e);
        costs.push_back(cost);
        lengths.push_back(len);
    }

    while (at < lines.size() && lines[at].words[0] == "vcost") {
        const Line& l = lines[at++];
        if (l.words.size() != 3) throw ParseError(l.number, "vcost line must be 'vcost <v> <c>'");
        if (inst.vertex_costs.empty()) inst.vertex_costs.assign(n, 0);
        inst.vertex_costs[vertex(l.words[1], l.number)] = detail::parse_number(l.words[2], l.number, "vertex cost");
    }

    if (at == lines.size()) throw ParseError(lines.back().number, "missing query line");
    auto requirement = [&](const Line& l, std::size_t first) {
        if (l.words.size() != first + 4) throw ParseError(l.number, "requirement must be '<s> <t> <r> <q>'");
        Requirement r{vertex(l.words[first], l.number), vertex(l.words[first + 1], l.number), 0, 1};
        const std::uint64_t rem = detail::parse_number(l.words[first + 2], l.number, "remainder");
        const std::uint64_t q = detail::parse_number(l.words[first + 3], l.number, "modulus");
        if (q == 0) throw ParseError(l.number, "modulus must be positive");
        if (q > kMaxModulus) throw ParseError(l.number, "modulus exceeds " + std::to_string(kMaxModulus));
        if (rem >= q) throw ParseError(l.number, "remainder " + std::to_string(rem) + " must be below modulus " + std::to_string(q));
        r.remainder = static_cast<std::uint32_t>(rem);
        r.modulus = static_cast<std::uint32_t>(q);
        return r;
    };
    const Line& query = lines[at++];
    std::vector<Requirement> pairs;
    if (query.words[0] == "ewm") {
        pairs.push_back(requirement(query, 1));
    } else if (query.words[0] == "dsnm") {
        if (query.words.size() != 2) throw ParseError(query.number, "expected 'dsnm <k>'");
        const std::uint64_t k = detail::parse_number(query.words[1], query.number, "k");
        if (k == 0) throw ParseError(query.number, "k must be positive");
        for (std::uint64_t i = 0; i < k; ++i) {
            if (at == lines.size()) throw ParseError(query.number, "expected " + std::to_string(k) + " requirement lines");
            pairs.push_back(requirement(lines[at++], 0));
        }
    } else {
        throw ParseError(query.number, "expected 'ewm' or 'dsnm', got '" + std::string(query.words[0]) + "'");
    }
    if (at != lines.size()) throw ParseError(lines[at].number, "unexpected trailing content");
    inst.spec = RequirementSpec(std::move(pairs));

    auto collect = [&](const std::vector<std::optional<Weight>>& xs) {
        bool any = false;
        for (const auto& x : xs) any = any || x.has_value();
        std::vector<Weight> out;
        if (any)
            for (const auto& x : xs) out.push_back(x.value_or(1));
        return out;
    };
    if (inst.directed) inst.graph = DirectedGraph(n, edges, collect(costs), collect(lengths));
    else inst.undirected = UndirectedGraph(n, edges);
    return inst;
}

// Canonical text: edges in id order, annotations only when present.
inline std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    if (inst.directed) {
        const DirectedGraph& g = inst.graph;
        out << g.vertex_count() << ' ' << g.edge_count() << " directed\n";
        for (EdgeId id = 0; id < g.edge_count(); ++id) {
            out << g.edge(id).source << ' ' << g.edge(id).target;
            if (g.has_costs()) out << " cost=" << g.cost(id);
            if (g.has_lengths()) out << " len=" << g.length(id);
            out << '\n';
        }
    } else {
        const UndirectedGraph& g = inst.undirected;
        out << g.vertex_count() << ' ' << g.edge_count() << " undirected\n";
        for (const Edge& e : g.edges()) out << e.source << ' ' << e.target << '\n';
    }
    for (Vertex v = 0; v < inst.vertex_costs.size(); ++v) out << "vcost " << v << ' ' << inst.vertex_costs[v] << '\n';
    const auto& pairs = inst.spec.pairs();
    if (pairs.size() == 1) {
        const Requirement& p = pairs[0];
        out << "ewm " << p.source << ' ' << p.target << ' ' << p.remainder << ' ' << p.modulus << '\n';
    } else {
        out << "dsnm " << pairs.size() << '\n';
        for (const Requirement& p : pairs)
            out << p.source << ' ' << p.target << ' ' << p.remainder << ' ' << p.modulus << '\n';
    }
    return out.str();
}

struct GeneratorParams {
    std::size_t vertices = 5;
    std::size_t edges = 8;
    std::size_t requirements = 1;
    std::uint32_t modulus = 2;  // EWM modulus; for k > 1 each q_i is drawn from 2..modulus
    bool directed = true;
    bool self_loops = true;
    Weight max_cost = 0;    // > 0 adds cost annotations in 1..max_cost
    Weight max_length = 0;  // > 0 adds length annotations in 0..max_length
};

// Deterministic for a given seed: mt19937_64 with rejection sampling of edges.
inline Instance random_instance(std::uint64_t seed, const GeneratorParams& p) {
    if (p.vertices == 0) throw ValidationError("need at least one vertex");
    if (p.modulus == 0 || p.modulus > kMaxModulus) throw ValidationError("modulus out of range");
    const std::size_t n = p.vertices;
    const std::size_t max_edges =
        p.directed ? n * (n - 1) + (p.self_loops ? n : 0) : n * (n - 1) / 2;
    if (p.edges > max_edges) throw ValidationError("too many edges for a simple graph on " + std::to_string(n) + " vertices");

    std::mt19937_64 rng(seed);
    auto below = [&](std::uint64_t bound) { return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng); };

    std::set<Edge> chosen;
    std::vector<Edge> edges;
    while (edges.size() < p.edges) {
        Edge e{static_cast<Vertex>(below(n)), static_cast<Vertex>(below(n))};
        if (e.is_loop() && (!p.directed || !p.self_loops)) continue;
        Edge key = e;
        if (!p.directed && key.source > key.target) std::swap(key.source, key.target);
        if (!chosen.insert(key).second) continue;
        edges.push_back(key);
    }
    std::vector<Weight> costs, lengths;
    if (p.max_cost > 0)
        for (std::size_t i = 0; i < edges.size(); ++i) costs.push_back(1 + below(p.max_cost));
    if (p.max_length > 0)
        for (std::size_t i = 0; i < edges.size(); ++i) lengths.push_back(below(p.max_length + 1));

    std::vector<Requirement> pairs;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, p.requirements); ++i) {
        const auto q = p.requirements > 1 ? static_cast<std::uint32_t>(2 + below(std::max<std::uint32_t>(p.modulus, 2) - 1))
                                          : p.modulus;
        pairs.push_back({static_cast<Vertex>(below(n)), static_cast<Vertex>(below(n)), static_cast<std::uint32_t>(below(q)), q});
    }

    Instance inst;
    inst.directed = p.directed;
    if (p.directed) inst.graph = DirectedGraph(n, edges, costs, lengths);
    else inst.undirected = UndirectedGraph(n, edges);
    inst.spec = RequirementSpec(std::move(pairs));
    return inst;
}

// Walk files list a vertex sequence separated by whitespace; '#' comments.
inline std::vector<Vertex> parse_vertex_sequence(std::string_view text) {
    std::vector<Vertex> seq;
    std::size_t number = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        for (auto w : detail::split_words(raw))
            seq.push_back(static_cast<Vertex>(detail::parse_number(w, number, "vertex")));
        start = end + 1;
    }
    if (seq.empty()) throw ParseError(1, "walk file lists no vertices");
    return seq;
}

// The graph made of the consecutive pairs of a vertex sequence.
inline DirectedGraph graph_of_sequence(const std::vector<Vertex>& seq) {
    Vertex top = 0;
    for (Vertex v : seq) top = std::max(top, v);
    std::set<Edge> es;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) es.insert({seq[i], seq[i + 1]});
    return DirectedGraph(static_cast<std::size_t>(top) + 1, std::vector<Edge>(es.begin(), es.end()));
}

}  // namespace modwalk
