#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace modwalk;
using namespace modwalk::testing;

namespace {

std::size_t name_index(const ReductionArtifact& a, const std::string& name) {
    auto it = std::find(a.vertex_names.begin(), a.vertex_names.end(), name);
    if (it == a.vertex_names.end()) throw std::runtime_error("no vertex named " + name);
    return static_cast<std::size_t>(it - a.vertex_names.begin());
}

// Source instance with m edges and at least two distinct terminals drawn from a seed.
struct ScssCase {
    DirectedGraph graph;
    std::vector<Vertex> terminals;
};

ScssCase scss_case(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 3 + seed % 2;
    GeneratorParams gp;
    gp.vertices = n;
    gp.edges = 3 + seed % 3;
    gp.self_loops = false;
    const Instance inst = random_instance(seed, gp);
    const Vertex a = static_cast<Vertex>(rng() % n);
    const Vertex b = static_cast<Vertex>((a + 1 + rng() % (n - 1)) % n);
    return {inst.graph, {a, b}};
}

}  // namespace

TEST(Primorial, Values) {
    EXPECT_EQ(primorial(1), 2u);
    EXPECT_EQ(primorial(2), 6u);
    EXPECT_EQ(primorial(3), 30u);
    EXPECT_EQ(primorial(4), 210u);
    EXPECT_EQ(primorial(8), 9699690u);
    EXPECT_THROW(primorial(9), CapacityError);
    EXPECT_THROW(primorial(0), ValidationError);
}

TEST(ScssToEwm, TriangleCostShape) {
    DirectedGraph tri(3, {{0, 1}, {1, 2}, {2, 0}});
    const ReductionArtifact a = scss_to_ewm(tri, {0, 2});
    EXPECT_EQ(a.spec, RequirementSpec::ewm(0, 0, 1, 6));
    EXPECT_EQ(a.transformed.edge_count(), 3u * 6 + 3 + 2);
    auto opt = exact_dsnm(a.transformed, a.spec);
    ASSERT_TRUE(opt);
    EXPECT_EQ(opt->cost, 23u);
    EXPECT_EQ(decode(a, opt->edges), tri.all_edges());
    EXPECT_EQ(brute_force_scss(tri, {0, 2})->cost, 3u);
    EXPECT_EQ(a.vertex_names[name_index(a, "e0.p1")], "e0.p1");
    EXPECT_NO_THROW(name_index(a, "t1.c2"));
    EXPECT_NO_THROW(name_index(a, "t2.c1"));
    EXPECT_THROW(scss_to_ewm(tri, {0, 1, 2, 0, 1}), CapacityError);
}

TEST(ScssToEwm, UnreachableTerminalStaysInfeasible) {
    DirectedGraph g(3, {{0, 1}, {1, 0}, {1, 2}});
    EXPECT_FALSE(brute_force_scss(g, {0, 2}));
    const ReductionArtifact a = scss_to_ewm(g, {0, 2});
    EXPECT_FALSE(exact_dsnm(a.transformed, a.spec));
}

TEST(ScssToEwm, SingleTerminalNeedsNoSourceEdges) {
    // With one distinct terminal its own attached cycle already closes an
    // admissible walk, so nothing of the source graph is decoded.
    DirectedGraph g(2, {{0, 0}, {0, 1}, {1, 0}});
    EXPECT_EQ(brute_force_scss(g, {0})->cost, 1u);
    for (const std::vector<Vertex>& ts : {std::vector<Vertex>{0}, std::vector<Vertex>{0, 0}}) {
        const ReductionArtifact a = scss_to_ewm(g, ts);
        auto opt = exact_dsnm(a.transformed, a.spec);
        ASSERT_TRUE(opt);
        EXPECT_TRUE(decode(a, opt->edges).empty());
    }
}

TEST(ScssToEwm, RandomRoundTrips) {
    int feasible_cases = 0;
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const ScssCase c = scss_case(100 + seed);
        const ReductionArtifact a = scss_to_ewm(c.graph, c.terminals);
        auto want = brute_force_scss(c.graph, c.terminals);
        auto got = exact_dsnm(a.transformed, a.spec);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (!got) continue;
        ++feasible_cases;
        const EdgeSet back = decode(a, got->edges);
        EXPECT_EQ(back.size(), want->cost) << "seed " << seed;
        EXPECT_EQ(got->cost, back.size() * 6 + 5) << "seed " << seed;
        EXPECT_TRUE(strongly_connected_on_covered(c.graph, back));
    }
    EXPECT_GT(feasible_cases, 0);
}

TEST(LengthsToUnit, Examples) {
    DirectedGraph one(2, {{0, 1}}, {}, {1});
    const ReductionArtifact a = lengths_to_unit(one, RequirementSpec::ewm(0, 1, 1, 2));
    EXPECT_EQ(a.transformed.edge_count(), 5u);
    EXPECT_FALSE(a.transformed.has_lengths());
    auto w = shortest_modular_walk(a.transformed, 0, 1, 1, 2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->size(), 5u);

    DirectedGraph two(2, {{0, 1}, {1, 0}}, {}, {1, 0});
    const ReductionArtifact b = lengths_to_unit(two, RequirementSpec::ewm(0, 1, 1, 2));
    auto opt = exact_dsnm(b.transformed, b.spec);
    ASSERT_TRUE(opt);
    EXPECT_EQ(decode(b, opt->edges), edges_of(two, {{0, 1}}));

    DirectedGraph full(2, {{0, 1}}, {}, {3});
    EXPECT_EQ(lengths_to_unit(full, RequirementSpec::ewm(0, 1, 0, 3)).transformed.edge_count(), 6u);
}

TEST(LengthsToUnit, RandomRoundTrips) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 4;
        gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 2 + seed % 6);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 3);
        gp.max_length = 5;
        const Instance inst = random_instance(200 + seed, gp);
        const ReductionArtifact a = lengths_to_unit(inst.graph, inst.spec);
        auto want = brute_force_dsnm(inst.graph, inst.spec, CostMode::EdgeCount, LengthMode::EdgeLengths);
        auto got = exact_dsnm(a.transformed, a.spec);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (!got) continue;
        const EdgeSet back = decode(a, got->edges);
        EXPECT_EQ(back.size(), want->cost) << "seed " << seed;
        EXPECT_TRUE(feasible(inst.graph, back, inst.spec, LengthMode::EdgeLengths));
        const std::uint64_t unit = (inst.graph.edge_count() + 1) * gp.modulus;
        EXPECT_EQ(got->cost / unit, back.size()) << "seed " << seed;
    }
}

TEST(VertexCostsToEdgeCosts, Examples) {
    DirectedGraph single(1);
    const ReductionArtifact a = vertex_costs_to_edge_costs(single, {3}, RequirementSpec::ewm(0, 0, 0, 2));
    ASSERT_EQ(a.transformed.edge_count(), 2u);
    std::vector<Weight> costs(a.transformed.costs().begin(), a.transformed.costs().end());
    std::sort(costs.begin(), costs.end());
    EXPECT_EQ(costs, (std::vector<Weight>{0, 3}));
    EXPECT_EQ(name_index(a, "v0.in"), 0u);
    EXPECT_NO_THROW(name_index(a, "v0.out"));
    EXPECT_NO_THROW(name_index(a, "v0.p1"));

    DirectedGraph path(3, {{0, 1}, {1, 2}});
    const ReductionArtifact b = vertex_costs_to_edge_costs(path, {0, 7, 0}, RequirementSpec::ewm(0, 2, 0, 2));
    auto opt = brute_force_dsnm(b.transformed, b.spec, CostMode::EdgeCosts);
    ASSERT_TRUE(opt);
    EXPECT_EQ(opt->cost, 7u);
    EXPECT_EQ(decode(b, opt->edges), path.all_edges());

    const ReductionArtifact z = vertex_costs_to_edge_costs(path, {0, 0, 0}, RequirementSpec::ewm(0, 2, 0, 2));
    for (Weight c : z.transformed.costs()) EXPECT_EQ(c, 0u);
}

TEST(VertexCostsToEdgeCosts, RandomRoundTrips) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 3;
        gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 2 + seed % 5);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 2);
        Instance inst = random_instance(300 + seed, gp);
        std::mt19937_64 rng(seed);
        std::vector<Weight> vc(gp.vertices);
        for (auto& c : vc) c = rng() % 5;
        const ReductionArtifact a = vertex_costs_to_edge_costs(inst.graph, vc, inst.spec);
        auto want = brute_force_vertex_cost_dsnm(inst.graph, vc, inst.spec);
        auto got = exact_dsnm(a.transformed, a.spec, CostMode::EdgeCosts);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (!got) continue;
        EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
        EXPECT_TRUE(feasible(inst.graph, decode(a, got->edges), inst.spec)) << "seed " << seed;
    }
}

TEST(EdgeCostsToVertexCosts, Examples) {
    DirectedGraph one(2, {{0, 1}}, {4});
    const ReductionArtifact a = edge_costs_to_vertex_costs(one, RequirementSpec::ewm(0, 1, 1, 2));
    EXPECT_EQ(a.transformed.edge_count(), 3u);
    ASSERT_EQ(a.vertex_costs.size(), a.transformed.vertex_count());
    EXPECT_EQ(std::accumulate(a.vertex_costs.begin(), a.vertex_costs.end(), Weight{0}), 4u);
    EXPECT_EQ(a.vertex_costs[name_index(a, "e0.x1")], 4u);
    auto opt = brute_force_vertex_cost_dsnm(a.transformed, a.vertex_costs, a.spec);
    ASSERT_TRUE(opt);
    EXPECT_EQ(opt->cost, 4u);

    DirectedGraph zero(2, {{0, 1}}, {0});
    const ReductionArtifact z = edge_costs_to_vertex_costs(zero, RequirementSpec::ewm(0, 1, 1, 2));
    for (Weight c : z.vertex_costs) EXPECT_EQ(c, 0u);
}

TEST(EdgeCostsToVertexCosts, RandomRoundTrips) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 3;
        gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 2 + seed % 4);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 2);
        gp.max_cost = 6;
        const Instance inst = random_instance(400 + seed, gp);
        const ReductionArtifact a = edge_costs_to_vertex_costs(inst.graph, inst.spec);
        auto want = brute_force_dsnm(inst.graph, inst.spec, CostMode::EdgeCosts);
        auto got = brute_force_vertex_cost_dsnm(a.transformed, a.vertex_costs, a.spec);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (!got) continue;
        EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
        EXPECT_EQ(inst.graph.cost_of(decode(a, got->edges), CostMode::EdgeCosts), want->cost) << "seed " << seed;
    }
}

TEST(ReduceUndirectedModulus, Examples) {
    EXPECT_EQ(reduce_undirected_modulus(0, 1, 3, 6), (UndirectedModulus{false, 1, 2}));
    EXPECT_EQ(reduce_undirected_modulus(0, 0, 0, 7), (UndirectedModulus{true, 0, 1}));
    EXPECT_EQ(reduce_undirected_modulus(0, 1, 2, 5), (UndirectedModulus{false, 0, 1}));
    EXPECT_THROW(reduce_undirected_modulus(0, 1, 5, 5), ValidationError);
}

TEST(ReduceUndirectedModulus, ClosedWalkWithNonzeroRemainderNeedsAnEdge) {
    // s = t with r != 0 reduces to a requirement the empty walk meets, yet
    // the original asks for a nonempty closed walk.
    const UndirectedGraph ug(2, {{0, 1}});
    const UndirectedModulus um = reduce_undirected_modulus(0, 0, 1, 3);
    EXPECT_EQ(um, (UndirectedModulus{false, 0, 1}));
    EXPECT_EQ(brute_force_undirected_ewm(ug, 0, 0, 1, 3)->cost, 1u);
    EXPECT_EQ(reduce_undirected_modulus(0, 0, 2, 4), (UndirectedModulus{false, 0, 2}));
    EXPECT_EQ(brute_force_undirected_ewm(ug, 0, 0, 2, 4)->cost, 1u);
}

TEST(UndirectedToDirected, Fig5DecodesToWholeGraph) {
    const Instance inst = parse_instance(read_data("fig5.txt"));
    ASSERT_FALSE(inst.directed);
    const Requirement& r = inst.spec.pairs()[0];
    const UndirectedModulus um = reduce_undirected_modulus(r.source, r.target, r.remainder, r.modulus);
    ASSERT_FALSE(um.drop);
    const ReductionArtifact a = undirected_to_directed(inst.undirected, r.source, r.target, um.remainder, um.modulus);
    const std::size_t m = inst.undirected.edge_count();
    EXPECT_EQ(a.transformed.edge_count(), m * (8 * m + 6));
    auto opt = exact_dsnm(a.transformed, a.spec);
    ASSERT_TRUE(opt);
    const EdgeSet back = decode(a, opt->edges);
    EXPECT_EQ(back.size(), 5u);
    const GadgetAccounting acc = gadget_accounting(a, opt->edges);
    EXPECT_EQ(acc.full_paths, 5u);
    EXPECT_LE(acc.other_edges, 6 * m);
    EXPECT_EQ(opt->cost, 8 * m * acc.full_paths + acc.other_edges);
    EXPECT_EQ(brute_force_undirected_ewm(inst.undirected, 0, 2, 1, 2)->cost, 5u);
}

TEST(UndirectedToDirected, SingleEdgeAndNames) {
    const UndirectedGraph ug(2, {{0, 1}});
    const ReductionArtifact a = undirected_to_directed(ug, 0, 1, 1, 2);
    EXPECT_EQ(a.transformed.edge_count(), 14u);
    for (const char* name : {"v0", "v1", "e0.w1", "e0.w9", "e0.w'", "e0.w''"}) EXPECT_NO_THROW(name_index(a, name));
    auto opt = exact_dsnm(a.transformed, a.spec);
    ASSERT_TRUE(opt);
    EXPECT_EQ(decode(a, opt->edges), EdgeSet{0});
    EXPECT_THROW(undirected_to_directed(ug, 0, 1, 1, 3), PreconditionError);
}

TEST(UndirectedToDirected, RandomRoundTrips) {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 4;
        gp.edges = std::min<std::size_t>(gp.vertices * (gp.vertices - 1) / 2, 1 + seed % 4);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 4);
        gp.directed = false;
        const Instance inst = random_instance(500 + seed, gp);
        const Requirement& r = inst.spec.pairs()[0];
        const UndirectedModulus um = reduce_undirected_modulus(r.source, r.target, r.remainder, r.modulus);
        auto want = brute_force_undirected_ewm(inst.undirected, r.source, r.target, r.remainder, r.modulus);
        if (um.drop) {
            ASSERT_TRUE(want);
            EXPECT_EQ(want->cost, 0u);
            continue;
        }
        if (r.source == r.target) continue;  // see ClosedWalkWithNonzeroRemainderNeedsAnEdge
        const ReductionArtifact a =
            undirected_to_directed(inst.undirected, r.source, r.target, um.remainder, um.modulus);
        auto got = exact_dsnm(a.transformed, a.spec);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        ++compared;
        if (!got) continue;
        const EdgeSet back = decode(a, got->edges);
        EXPECT_EQ(back.size(), want->cost) << "seed " << seed;
        EXPECT_TRUE(undirected_modular_reachability(inst.undirected, back, r.source, r.modulus)[r.target].test(r.remainder));
        EXPECT_LE(gadget_accounting(a, got->edges).other_edges, 6 * inst.undirected.edge_count());
    }
    EXPECT_GT(compared, 10);
}

TEST(Decode, CarriersMustBeComplete) {
    DirectedGraph tri(3, {{0, 1}, {1, 2}, {2, 0}});
    const ReductionArtifact a = scss_to_ewm(tri, {0, 1});
    EdgeSet partial;
    for (EdgeId id = 0; id < a.origin.size(); ++id)
        if (a.origin[id].role == Role::EdgePath && a.origin[id].owner == 1 && a.origin[id].index != 2)
            partial.push_back(id);
    EXPECT_TRUE(decode(a, partial).empty());
    for (EdgeId id = 0; id < a.origin.size(); ++id)
        if (a.origin[id].role == Role::EdgePath && a.origin[id].owner == 1 && a.origin[id].index == 2)
            partial.push_back(id);
    EXPECT_EQ(decode(a, normalize(partial)), EdgeSet{1});
    EXPECT_EQ(to_string(Role::GadgetConnector), "gadget-connector");
}
