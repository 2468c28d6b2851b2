#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "tsurf/graph.hpp"

using namespace tsurf;

namespace {

// K4: four mutually adjacent vertices, the smallest trivalent graph with
// cycles. Triple order at v lists the other three vertices ascending.
SurfaceGraph make_k4() {
    SurfaceGraph g;
    g.kinds.assign(4, VertexKind::Node);
    g.kinds[0] = VertexKind::Root;
    g.triples = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    g.root = 0;
    return g;
}

int tree_depth_count(int depth) {
    // independent count: level sizes 1, 3, 6, 12, ...
    int total = 1, level = 3;
    for (int d = 1; d <= depth; ++d) {
        total += level;
        level *= 2;
    }
    return total;
}

}  // namespace

TEST_CASE("full ternary tree counts") {
    CHECK(build_full_ternary_tree(0).vertex_count() == 1);
    CHECK(build_full_ternary_tree(0).edges().empty());
    CHECK(build_full_ternary_tree(1).vertex_count() == 4);
    CHECK(build_full_ternary_tree(3).vertex_count() == 22);
    CHECK(tree_depth_count(3) == 22);
    for (int d = 0; d <= 12; ++d) {
        SurfaceGraph t = build_full_ternary_tree(d);
        CHECK(t.vertex_count() == 1 + 3 * ((1 << d) - 1));
        CHECK(t.vertex_count() == tree_depth_count(d));
        CHECK_NOTHROW(validate_graph(t, true));
    }
}

TEST_CASE("tree structure: root has 3 children, nodes parent + 2") {
    SurfaceGraph t = build_full_ternary_tree(3);
    CHECK(t.triple(0) == std::array<int, 3>{1, 2, 3});
    for (int v = 1; v < t.vertex_count(); ++v) {
        if (t.is_leaf(v)) continue;
        CHECK(t.triple(v)[2] < v);   // parent in slot 3
        CHECK(t.triple(v)[0] > v);   // children created later
    }
    // all leaves at distance == depth
    int leaves = 0;
    for (int v = 0; v < t.vertex_count(); ++v) leaves += t.is_leaf(v);
    CHECK(leaves == 12);
}

TEST_CASE("relabel permutes one triple") {
    SurfaceGraph g = make_k4();
    SurfaceGraph id = relabel(g, 0, {0, 1, 2});
    CHECK(id.triples == g.triples);

    SurfaceGraph swapped = relabel(g, 0, {1, 0, 2});
    CHECK(swapped.triple(0) == std::array<int, 3>{2, 1, 3});

    // cyclic applied three times is the identity
    SurfaceGraph c = g;
    for (int i = 0; i < 3; ++i) c = relabel(c, 1, {1, 2, 0});
    CHECK(c.triples == g.triples);

    // relabel then inverse is the identity
    SurfaceGraph once = relabel(g, 2, {2, 0, 1});
    SurfaceGraph back = relabel(once, 2, {1, 2, 0});
    CHECK(back.triples == g.triples);

    CHECK_THROWS_AS(relabel(g, 0, {0, 0, 2}), std::invalid_argument);
    SurfaceGraph t = build_full_ternary_tree(2);
    int leaf = -1;
    for (int v = 0; v < t.vertex_count(); ++v)
        if (t.is_leaf(v)) leaf = v;
    CHECK_THROWS_AS(relabel(t, leaf, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("unrolling a tree from its own root is the identity") {
    SurfaceGraph t = build_full_ternary_tree(3);
    CoveringMap c = unroll_covering(t, 0, 3);
    CHECK_NOTHROW(validate_covering(c));
    REQUIRE(c.source.vertex_count() == t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) CHECK(c.vertex_map[v] == v);
}

TEST_CASE("unrolling K4 reproduces the covering counts") {
    SurfaceGraph g = make_k4();
    CHECK_NOTHROW(validate_graph(g));
    CoveringMap c = unroll_covering(g, 0, 2);
    CHECK_NOTHROW(validate_covering(c));
    // level 1 hits each of x2, x3, x4 once; level 2 twice more
    CHECK(c.source.vertex_count() == 1 + 3 + 6);
    std::array<int, 4> hits{0, 0, 0, 0};
    for (int v = 0; v < c.source.vertex_count(); ++v) ++hits[c.vertex_map[v]];
    CHECK(hits == std::array<int, 4>{1, 3, 3, 3});

    // every tree edge maps onto a graph edge
    for (auto [a, b] : c.source.edges()) {
        int ga = c.vertex_map[a], gb = c.vertex_map[b];
        const auto& t = g.triple(ga);
        CHECK(std::count(t.begin(), t.end(), gb) >= 1);
    }
    CHECK_THROWS_AS(unroll_covering(build_full_ternary_tree(2), 4, 1), std::invalid_argument);
}

TEST_CASE("validate_graph catches broken invariants") {
    SurfaceGraph g = make_k4();
    g.triples[1] = {0, 2, 2};  // claims a double edge 1-2 that 2 does not have
    CHECK_THROWS_AS(validate_graph(g), std::invalid_argument);

    SurfaceGraph h = make_k4();
    h.triples[0] = {1, 2, 9};
    CHECK_THROWS_AS(validate_graph(h), std::invalid_argument);
}
