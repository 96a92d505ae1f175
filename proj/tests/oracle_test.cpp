#include <gtest/gtest.h>

#include "support.hpp"

using namespace modwalk;
using namespace modwalk::testing;

TEST(Feasible, Examples) {
    DirectedGraph g(2, {{0, 1}});
    EXPECT_TRUE(feasible(g, {}, RequirementSpec::ewm(1, 1, 0, 4)));
    EXPECT_FALSE(feasible(g, {}, RequirementSpec::ewm(0, 1, 1, 2)));
    const Instance inst = fig1();
    const EdgeSet top = edges_of(inst.graph, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {5, 6}});
    EXPECT_TRUE(feasible(inst.graph, top, inst.spec));
    const EdgeSet bottom =
        edges_of(inst.graph, {{0, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}, {11, 12}, {12, 8}, {9, 6}});
    EXPECT_TRUE(feasible(inst.graph, bottom, inst.spec));
    EXPECT_FALSE(feasible(inst.graph, edges_of(inst.graph, {{0, 1}, {1, 2}}), inst.spec));
}

TEST(BruteForceEwm, Examples) {
    const Instance inst = fig1();
    auto r = brute_force_ewm(inst.graph, 0, 6, 1, 2);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 7u);
    EXPECT_TRUE(feasible(inst.graph, r->edges, inst.spec));

    DirectedGraph g(2, {{0, 1}});
    auto one = brute_force_ewm(g, 0, 1, 1, 2);
    ASSERT_TRUE(one);
    EXPECT_EQ(one->cost, 1u);
    EXPECT_FALSE(brute_force_ewm(g, 1, 0, 1, 2));
}

TEST(BruteForceEwm, GuardIsHardError) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = 0; v < 5; ++v)
            if (u != v) es.push_back({u, v});
    DirectedGraph g(5, es);
    ASSERT_EQ(g.edge_count(), 20u);
    EXPECT_NO_THROW(brute_force_ewm(g, 0, 1, 0, 1));
    DirectedGraph big(6, [] {
        std::vector<Edge> e;
        for (Vertex v = 0; v < 6; ++v)
            for (Vertex w = 0; w < 6; ++w)
                if (v != w && e.size() < 21) e.push_back({v, w});
        return e;
    }());
    EXPECT_THROW(brute_force_ewm(big, 0, 1, 0, 1), CapacityError);
}

TEST(BruteForceDsnm, Examples) {
    const Instance inst = fig1();
    EXPECT_EQ(brute_force_dsnm(inst.graph, inst.spec), brute_force_ewm(inst.graph, 0, 6, 1, 2));

    // Path 0-1-2-3-4: pairs (0,1) and (3,4) need disjoint pieces.
    DirectedGraph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    const RequirementSpec two({{0, 1, 1, 2}, {3, 4, 1, 2}});
    auto r = brute_force_dsnm(path, two);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 2u);
    EXPECT_EQ(r->edges, edges_of(path, {{0, 1}, {3, 4}}));

    EXPECT_FALSE(brute_force_dsnm(path, RequirementSpec({{0, 1, 1, 2}, {4, 0, 0, 1}})));
}

TEST(BruteForceDsnm, CostModeTieBreakIsLexicographic) {
    // Two routes 0->1->3 and 0->2->3 of equal cost.
    DirectedGraph g(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {2, 2, 2, 2});
    auto r = brute_force_dsnm(g, RequirementSpec::ewm(0, 3, 0, 2), CostMode::EdgeCosts);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 4u);
    EXPECT_EQ(r->edges, edges_of(g, {{0, 1}, {1, 3}}));
}

TEST(BruteForceScss, Examples) {
    DirectedGraph tri(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    auto r = brute_force_scss(tri, {0, 2});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 3u);
    EXPECT_EQ(r->edges, edges_of(tri, {{0, 1}, {1, 2}, {2, 0}}));

    DirectedGraph loop(2, {{0, 0}, {0, 1}});
    auto l = brute_force_scss(loop, {0});
    ASSERT_TRUE(l);
    EXPECT_EQ(l->cost, 1u);

    EXPECT_FALSE(brute_force_scss(tri, {0, 3}));
}

TEST(BruteForceScssm, Examples) {
    DirectedGraph tri(3, {{0, 1}, {1, 2}, {2, 0}});
    auto r = brute_force_scssm(tri, RequirementSpec::ewm(0, 2, 2, 3));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 3u);

    DirectedGraph path(2, {{0, 1}});
    EXPECT_FALSE(brute_force_scssm(path, RequirementSpec::ewm(0, 1, 1, 2)));

    auto empty = brute_force_scssm(DirectedGraph(1), RequirementSpec::ewm(0, 0, 0, 3));
    ASSERT_TRUE(empty);
    EXPECT_EQ(empty->cost, 0u);
}

TEST(BruteForceUndirected, ParityOnTriangle) {
    // s - a - t plus triangle a - b - c: an odd s-t walk needs the triangle.
    const UndirectedGraph ug(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 1}});
    auto r = brute_force_undirected_ewm(ug, 0, 2, 1, 2);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 5u);
    auto even = brute_force_undirected_ewm(ug, 0, 2, 0, 2);
    ASSERT_TRUE(even);
    EXPECT_EQ(even->cost, 2u);
}

TEST(BruteForceVertexCost, PaysCoveredVertices) {
    DirectedGraph g(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
    auto r = brute_force_vertex_cost_dsnm(g, {1, 5, 2, 1}, RequirementSpec::ewm(0, 3, 0, 2));
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 4u);
    EXPECT_EQ(r->edges, edges_of(g, {{0, 2}, {2, 3}}));
}

TEST(ExactDsnm, AgreesWithBruteForce) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 6;
        gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 2 + seed % 12);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 4);
        gp.requirements = 1 + seed % 2;
        if (seed % 3 == 0) gp.max_cost = 4;
        const Instance inst = random_instance(6000 + seed, gp);
        const CostMode mode = gp.max_cost ? CostMode::EdgeCosts : CostMode::EdgeCount;
        auto want = brute_force_dsnm(inst.graph, inst.spec, mode);
        auto got = exact_dsnm(inst.graph, inst.spec, mode);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (!got) continue;
        EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
        EXPECT_TRUE(feasible(inst.graph, got->edges, inst.spec));
    }
}

TEST(ExactDsnm, EdgeLengths) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GeneratorParams gp;
        gp.vertices = 2 + seed % 5;
        gp.edges = std::min<std::size_t>(gp.vertices * gp.vertices, 2 + seed % 9);
        gp.modulus = 2 + static_cast<std::uint32_t>(seed % 3);
        gp.max_length = 4;
        const Instance inst = random_instance(7000 + seed, gp);
        auto want = brute_force_dsnm(inst.graph, inst.spec, CostMode::EdgeCount, LengthMode::EdgeLengths);
        auto got = exact_dsnm(inst.graph, inst.spec, CostMode::EdgeCount, LengthMode::EdgeLengths);
        ASSERT_EQ(got.has_value(), want.has_value()) << "seed " << seed;
        if (got) {
            EXPECT_EQ(got->cost, want->cost) << "seed " << seed;
        }
    }
}

TEST(ExactDsnm, HandlesLongChains) {
    // A 60-edge cycle: far past the brute-force guard, one chain after contraction.
    std::vector<Edge> es;
    for (Vertex v = 0; v < 60; ++v) es.push_back({v, (v + 1) % 60});
    DirectedGraph g(60, es);
    // 30 + 60 = 90 = 6 mod 7: the walk has to go round once.
    auto r = exact_ewm(g, 0, 30, 6, 7);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->cost, 60u);
    EXPECT_EQ(exact_ewm(g, 0, 30, 2, 7)->cost, 30u);
    EXPECT_FALSE(exact_ewm(g, 0, 0, 1, 6));
}

TEST(Oracle, OptimalSolutionsHaveSmallCutwidth) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        GeneratorParams gp;
        gp.vertices = 3 + seed % 6;
        gp.edges = std::min<std::size_t>({20, gp.vertices * gp.vertices, 4 + seed % 14});
        gp.modulus = std::array<std::uint32_t, 3>{2, 4, 8}[seed % 3];
        const Instance inst = random_instance(8000 + seed, gp);
        auto r = brute_force_dsnm(inst.graph, inst.spec);
        if (!r) continue;
        const std::size_t bound = 3 + 3 * ceil_log2(gp.modulus);
        EXPECT_LE(exact_cutwidth(inst.graph.subgraph(r->edges)), bound) << "seed " << seed;
    }
}
