#include <doctest.h>

#include <numbers>
#include <sstream>

#include "tsurf/builder.hpp"
#include "tsurf/gallery.hpp"
#include "tsurf/io.hpp"

using namespace tsurf;

TEST_CASE("surface json round trip is canonical") {
    Immersion tube = chiral_cylinder({1.0, std::numbers::pi / 4, 0.5, 3, 6});
    const std::string once = surface_to_json(tube);
    Immersion back = surface_from_json(once);
    CHECK(surface_to_json(back) == once);
    REQUIRE(back.vertex_count() == tube.vertex_count());
    for (int v = 0; v < tube.vertex_count(); ++v) {
        CHECK(back.positions[v] == tube.positions[v]);  // bitwise via 17 digits
        CHECK(back.graph.kinds[v] == tube.graph.kinds[v]);
        CHECK(back.graph.triples[v] == tube.graph.triples[v]);
    }
    CHECK(back.metadata.at("model") == "chiral");
}

TEST_CASE("built surfaces round trip with their normal field") {
    BuildParams p;
    p.r = 1.0;
    p.k1 = BuildParams::constant(-1.0);
    p.k2 = BuildParams::constant(0.0);
    p.depth = 2;
    p.theta1 = -0.3;
    p.theta2 = 0.2;
    p.phi2 = 0.6;
    BuildResult res = build(p);
    REQUIRE(res.ok);
    Immersion back = surface_from_json(surface_to_json(res.immersion));
    CHECK(back.metadata.at("normals") == "propagated");
    for (int v = 0; v < back.vertex_count(); ++v) {
        REQUIRE(back.prescribed_normals[v].has_value());
        CHECK(*back.prescribed_normals[v] == *res.immersion.prescribed_normals[v]);
    }
}

TEST_CASE("schema violations name the vertex") {
    SUBCASE("two-edge non-leaf vertex") {
        // vertex 3 is a leaf referenced from both 0 and 1
        const char* text = R"({
          "format_version": "1", "root": 0,
          "vertices": [
            {"id": 0, "position": [0,0,0], "neighbors": [1,2,3]},
            {"id": 1, "position": [1,0,0], "neighbors": [0,2,3]},
            {"id": 2, "position": [0,1,0], "neighbors": [0,1,4]},
            {"id": 3, "position": [0,0,1]},
            {"id": 4, "position": [1,1,0]}
          ]})";
        CHECK_THROWS_WITH_AS(surface_from_json(text),
                             doctest::Contains("vertex 3"), DataError);
    }
    SUBCASE("non-unit prescribed normal") {
        const char* text = R"({
          "format_version": "1", "root": 0,
          "vertices": [
            {"id": 0, "position": [0,0,0], "neighbors": [1,2,3], "normal": [1.1, 0, 0]},
            {"id": 1, "position": [1,0,0]},
            {"id": 2, "position": [0,1,0]},
            {"id": 3, "position": [0,0,1]}
          ]})";
        CHECK_THROWS_WITH_AS(surface_from_json(text),
                             doctest::Contains("norm"), DataError);
    }
    SUBCASE("dangling neighbor id") {
        const char* text = R"({
          "format_version": "1", "root": 0,
          "vertices": [
            {"id": 0, "position": [0,0,0], "neighbors": [1,2,9]},
            {"id": 1, "position": [1,0,0]},
            {"id": 2, "position": [0,1,0]}
          ]})";
        CHECK_THROWS_AS(surface_from_json(text), DataError);
    }
    SUBCASE("duplicate id") {
        const char* text = R"({
          "format_version": "1", "root": 0,
          "vertices": [
            {"id": 0, "position": [0,0,0]},
            {"id": 0, "position": [1,0,0]}
          ]})";
        CHECK_THROWS_AS(surface_from_json(text), DataError);
    }
    SUBCASE("not json") { CHECK_THROWS_AS(surface_from_json("nope"), DataError); }
}

TEST_CASE("obj export carries one line record per undirected edge") {
    Immersion tor = cpc_torus({1.0, 3.0, 4});
    const std::string obj = surface_to_obj(tor);
    std::istringstream in(obj);
    std::string line;
    int vcount = 0, lcount = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++vcount;
        if (line.rfind("l ", 0) == 0) ++lcount;
    }
    CHECK(vcount == tor.vertex_count());
    CHECK(lcount == static_cast<int>(tor.graph.edges().size()));
}

TEST_CASE("analysis report aggregates derive from the per-vertex rows") {
    Immersion tube = chiral_cylinder({1.0, std::numbers::pi / 4, 0.5, 3, 6});
    AnalysisReport rep = analyze_surface(tube);
    CHECK(rep.curvature.size() == rep.principal.size());
    bool all1 = true, all2 = true;
    for (const auto& p : rep.principal) {
        all1 = all1 && p.is_principal1;
        all2 = all2 && p.is_principal2;
    }
    CHECK(rep.principal_k1 == all1);
    CHECK(rep.principal_k2 == all2);
    CHECK(rep.cpc1.vertices_checked == static_cast<int>(rep.principal.size()));

    const std::string json = report_to_json(rep, tube);
    CHECK(json.find("\"conditions\"") != std::string::npos);
    const std::string table = report_condition_table(rep, "chiral");
    CHECK(table.find("chiral") != std::string::npos);
    CHECK(table.find("yes") != std::string::npos);
}
