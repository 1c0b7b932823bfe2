#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qmet/construct.hpp"

using namespace qmet;

TEST_CASE("fragment realizations") {
    SUBCASE("s1 is one big true-twins class") {
        Graph g = build_fragment({SubgraphKind::S1, 5});
        TwinsStructure t = twins_structure(g);
        REQUIRE(t.true_twins_classes.size() == 1);
        CHECK(t.true_twins_classes[0].count() == 5);
        CHECK(qfi_upper_bound(g) == 25);
    }
    SUBCASE("s2 is a star: twins class of leaves") {
        Graph g = build_fragment({SubgraphKind::S2, 6});
        TwinsStructure t = twins_structure(g);
        CHECK(t.leaves.count() == 5);
        bool found = false;
        for (const auto& c : t.twins_classes)
            if (c.count() == 5) found = true;
        CHECK(found);
    }
    SUBCASE("s3 is K_{2,m}: twins classes of both sides") {
        Graph g = build_fragment({SubgraphKind::S3, 6}); // K_{2,4}
        TwinsStructure t = twins_structure(g);
        std::vector<std::size_t> sizes;
        for (const auto& c : t.twins_classes)
            if (c.count() >= 2) sizes.push_back(c.count());
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == std::vector<std::size_t>{2, 4});
        CHECK(t.leaves.none());
    }
    SUBCASE("s4 is edgeless") {
        Graph g = build_fragment({SubgraphKind::S4, 3});
        CHECK(g.edges().empty());
    }
    SUBCASE("size limits") {
        CHECK_THROWS_AS(build_fragment({SubgraphKind::S1, 1}), ValidationError);
        CHECK_THROWS_AS(build_fragment({SubgraphKind::S3, 3}), ValidationError);
        CHECK_THROWS_AS(build_fragment({SubgraphKind::S4, 0}), ValidationError);
    }
}

TEST_CASE("A-type composites") {
    SUBCASE("two stars bridged at their centers") {
        MetaGraph meta;
        meta.assignment = {{SubgraphKind::S2, 5}, {SubgraphKind::S2, 5}};
        meta.meta_edges = {{0, 1}};
        CompositeGraph c = build_a_type(meta);
        CHECK(c.graph.n() == 10);
        CHECK(c.graph.is_connected());
        CHECK(c.fragment_offset == std::vector<int>{0, 5});
        // centers are non-leaves, so the bridge is 0 -- 5 and the leaf twins
        // classes survive intact: bound is exactly additive
        CHECK(c.graph.has_edge(0, 5));
        CHECK(qfi_upper_bound(c.graph) ==
              qfi_upper_bound(build_fragment({SubgraphKind::S2, 5})) * 2);
    }
    SUBCASE("bound drop per bridge stays within 4 for small-class fragments") {
        for (auto kinds : {std::pair{SubgraphKind::S2, SubgraphKind::S3},
                           std::pair{SubgraphKind::S3, SubgraphKind::S3},
                           std::pair{SubgraphKind::S2, SubgraphKind::S2}}) {
            MetaGraph meta;
            meta.assignment = {{kinds.first, 5}, {kinds.second, 5}};
            meta.meta_edges = {{0, 1}};
            CompositeGraph c = build_a_type(meta);
            int64_t parts = qfi_upper_bound(build_fragment(meta.assignment[0])) +
                            qfi_upper_bound(build_fragment(meta.assignment[1]));
            CHECK(qfi_upper_bound(c.graph) >= parts - 4);
        }
    }
    SUBCASE("large complete fragments lose more than 4 per bridge") {
        // Bridging K5 -- K5 removes both ports from their size-5 true-twins
        // classes: 2*(C(5,2) - C(4,2)) = 8 lost on each side.
        MetaGraph meta;
        meta.assignment = {{SubgraphKind::S1, 5}, {SubgraphKind::S1, 5}};
        meta.meta_edges = {{0, 1}};
        CompositeGraph c = build_a_type(meta);
        CHECK(qfi_upper_bound(c.graph) == 34);
        CHECK(34 < 50 - 4);
    }
    SUBCASE("errors") {
        MetaGraph meta;
        meta.assignment = {{SubgraphKind::S2, 4}, {SubgraphKind::S2, 4}};
        CHECK_THROWS_AS(build_a_type(meta), ValidationError); // disconnected meta
        meta.meta_edges = {{0, 1}};
        meta.assignment[1].kind = SubgraphKind::S4;
        CHECK_THROWS_AS(build_a_type(meta), ValidationError); // s4 not allowed
        meta.assignment[1].kind = SubgraphKind::S2;
        meta.join_mode = JoinMode::FullJoin;
        CHECK_THROWS_AS(build_a_type(meta), ValidationError); // wrong mode
    }
}

TEST_CASE("B-type composites") {
    SUBCASE("four-fragment path under XZZX") {
        MetaGraph meta;
        meta.join_mode = JoinMode::FullJoin;
        meta.assignment = {{SubgraphKind::S1, 2},
                           {SubgraphKind::S3, 4},
                           {SubgraphKind::S2, 3},
                           {SubgraphKind::S1, 2}};
        meta.meta_edges = {{0, 1}, {1, 2}, {2, 3}};
        meta.meta_stabilizer = "XZZX";
        CompositeGraph c = build_b_type(meta);
        CHECK(c.graph.n() == 11);
        CHECK(c.graph.is_connected());
        CHECK(c.rule_warnings.empty());
        // full join: every cross pair of fragments 0 and 1 is an edge
        for (int i = 0; i < 2; ++i)
            for (int j = 2; j < 6; ++j) CHECK(c.graph.has_edge(i, j));
        CHECK_FALSE(c.graph.has_edge(0, 6)); // no meta-edge 0 -- 2
    }
    SUBCASE("four-fragment cycle under YZZY") {
        MetaGraph meta;
        meta.join_mode = JoinMode::FullJoin;
        meta.assignment = {{SubgraphKind::S2, 3},
                           {SubgraphKind::S3, 4},
                           {SubgraphKind::S2, 3},
                           {SubgraphKind::S4, 2}};
        meta.meta_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        meta.meta_stabilizer = "YZZY";
        CompositeGraph c = build_b_type(meta);
        CHECK(c.graph.is_connected());
        // (Y, s2) and (Y, s4) are unspecified cells: flagged, not fatal
        CHECK(c.rule_warnings.size() == 2);
    }
    SUBCASE("Y prohibits s1") {
        MetaGraph meta;
        meta.join_mode = JoinMode::FullJoin;
        meta.assignment = {{SubgraphKind::S1, 2},
                           {SubgraphKind::S3, 4},
                           {SubgraphKind::S3, 4},
                           {SubgraphKind::S1, 2}};
        meta.meta_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        meta.meta_stabilizer = "YZZY";
        CHECK_THROWS_AS(build_b_type(meta), ValidationError);
    }
    SUBCASE("letters must actually stabilize the meta graph state") {
        MetaGraph meta;
        meta.join_mode = JoinMode::FullJoin;
        meta.assignment = {{SubgraphKind::S1, 2},
                          {SubgraphKind::S1, 2},
                          {SubgraphKind::S1, 2},
                          {SubgraphKind::S1, 2}};
        meta.meta_edges = {{0, 1}, {1, 2}, {2, 3}};
        meta.meta_stabilizer = "XXXX";
        CHECK_THROWS_AS(build_b_type(meta), ValidationError);
        meta.meta_stabilizer = "XZZX"; // valid for the path
        CHECK_NOTHROW(build_b_type(meta));
    }
    SUBCASE("rank and shape errors") {
        MetaGraph meta;
        meta.join_mode = JoinMode::FullJoin;
        meta.assignment = {{SubgraphKind::S1, 2}, {SubgraphKind::S1, 2}};
        meta.meta_edges = {{0, 1}};
        CHECK_THROWS_AS(build_b_type(meta), ValidationError); // missing stabilizer
        meta.meta_stabilizer = "XI";
        CHECK_THROWS_AS(build_b_type(meta), ValidationError); // identity letter
        meta.meta_stabilizer = "XZZ";
        CHECK_THROWS_AS(build_b_type(meta), ValidationError); // wrong length
    }
}

TEST_CASE("scaling experiments") {
    SUBCASE("stars scale as N^2") {
        auto builder = [](int n) { return standard_graph(StandardGraph::Star, n); };
        ScalingResult r = scaling_experiment(builder, {6, 8, 10, 12, 14},
                                             SearchMode::Exhaustive);
        CHECK(r.exponent == doctest::Approx(2.0).epsilon(0.05));
        CHECK(r.bound_exponent == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("cycles scale linearly") {
        auto builder = [](int n) { return standard_graph(StandardGraph::Cycle, n); };
        ScalingResult r = scaling_experiment(builder, {6, 8, 10, 12, 14},
                                             SearchMode::Exhaustive);
        CHECK(r.bound_exponent == doctest::Approx(1.0).epsilon(0.01));
        CHECK(r.exponent > 0.7);
        CHECK(r.exponent < 1.3);
    }
    SUBCASE("cluster preset scales as N^(5/3)") {
        ScalingResult r =
            scaling_experiment(a_type_cluster, {27, 64, 125}, SearchMode::Greedy);
        CHECK(r.bound_exponent == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
        CHECK(std::abs(r.exponent - 5.0 / 3.0) < 0.15);
        for (const auto& pt : r.points) {
            double expect = std::pow(double(pt.n), 5.0 / 3.0);
            CHECK(double(pt.bound) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    SUBCASE("needs three distinct sizes") {
        auto builder = [](int n) { return standard_graph(StandardGraph::Star, n); };
        CHECK_THROWS_AS(scaling_experiment(builder, {6, 6, 8}, SearchMode::Exhaustive),
                        ValidationError);
    }
}

TEST_CASE("cluster preset shape") {
    Graph g = a_type_cluster(27);
    CHECK(g.n() == 27);
    CHECK(g.is_connected());
    CHECK(qfi_upper_bound(g) == 243); // 27^(5/3)
    CHECK_THROWS_AS(a_type_cluster(30), ValidationError);
}
