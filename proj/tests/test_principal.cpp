#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "test_helpers.hpp"
#include "tsurf/gallery.hpp"
#include "tsurf/principal.hpp"

using namespace tsurf;
using tsurf::testing::Rng;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("principal report on the round cylinder") {
    const double r = 1.0;
    Immersion tube = chiral_cylinder({r, kPi / 4, 0.5, 4, 6});
    Analyzer an(tube);
    for (int v = 0; v < tube.vertex_count(); ++v) {
        if (tube.graph.is_leaf(v)) continue;
        PrincipalReport p = principal_report(an, v);
        CHECK(p.residual1 < 1e-12);
        CHECK(p.residual2 < 1e-12);
        CHECK(p.is_principal1);
        CHECK(p.is_principal2);
        CHECK(p.k_along_v1 == doctest::Approx(-1.0 / r).epsilon(1e-12));
        CHECK(std::abs(p.k_along_v2) < 1e-12);
        CHECK(p.c_residual < 1e-12);
    }
}

TEST_CASE("principal report on the flat lattice") {
    Immersion flat = hexagonal_plane(1.0, 2);
    Analyzer an(flat);
    PrincipalReport p = principal_report(an, flat.graph.root);
    CHECK(p.residual1 == 0.0);
    CHECK(p.residual2 == 0.0);
    CHECK(p.k_along_v1 == 0.0);
    CHECK(p.k_along_v2 == 0.0);
    CHECK(p.is_principal1);
    CHECK(p.is_principal2);
}

TEST_CASE("corollary formula") {
    Immersion tube = chiral_cylinder({2.0, 0.7, 0.3, 3, 5});
    Analyzer an(tube);
    CHECK(corollary_k(an, tube.graph.root, 1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(corollary_k(an, tube.graph.root, 2)) < 1e-13);

    SUBCASE("independent of n(x1)") {
        Rng rng(3);
        auto cell = tsurf::testing::random_principal_cell(rng);
        const double k_ref = corollary_k(Analyzer(cell.imm), 0, 1);
        Immersion perturbed = cell.imm;
        perturbed.prescribed_normals[1] = rng.unit();  // arbitrary replacement
        CHECK(corollary_k(Analyzer(perturbed), 0, 1) == doctest::Approx(k_ref).epsilon(1e-15));
    }

    SUBCASE("matches the Weingarten eigenvalue attached to the direction") {
        Rng rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            auto cell = tsurf::testing::random_principal_cell(rng);
            Analyzer can(cell.imm);
            const double k1 = corollary_k(can, 0, 1);
            const double k2 = corollary_k(can, 0, 2);
            CHECK(k1 == doctest::Approx(cell.k1).epsilon(1e-12));
            CHECK(k2 == doctest::Approx(cell.k2).epsilon(1e-12));
            VertexCurvature c = can.analyze(0);
            if (c.complex_pair) continue;  // equal-k collisions only
            const double scale = std::max({1.0, std::abs(c.k1), std::abs(c.k2)});
            CHECK(std::min(std::abs(c.k1 - k1), std::abs(c.k2 - k1)) < 1e-9 * scale);
        }
    }

    SUBCASE("unit norm propagation identity") {
        Rng rng(8);
        for (int trial = 0; trial < 200; ++trial) {
            auto cell = tsurf::testing::random_principal_cell(rng);
            CHECK(std::abs((cell.n3 - cell.k1 * cell.v1).norm() - 1.0) < 1e-12);
            CHECK(std::abs((cell.n3 - cell.k2 * cell.v2).norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("parallel transformation") {
    const double r = 1.0;
    Immersion tube = chiral_cylinder({r, kPi / 4, 0.5, 4, 6});

    SUBCASE("t = 0 is the identity") {
        Immersion same = parallel_transform(tube, 0.0);
        for (int v = 0; v < tube.vertex_count(); ++v)
            CHECK((same.positions[v] - tube.positions[v]).norm() == 0.0);
    }

    SUBCASE("curvature transforms as k/(1 - t k)") {
        const double t = 0.5 * r;  // k1' = (-1/r)/(1 + 1/2) = -2/(3r)
        Immersion moved = parallel_transform(tube, t);
        Analyzer an(moved);
        for (int v = 0; v < moved.vertex_count(); ++v) {
            if (moved.graph.is_leaf(v)) continue;
            PrincipalReport p = principal_report(an, v);
            CHECK(p.is_principal1);
            CHECK(p.k_along_v1 == doctest::Approx(-2.0 / (3.0 * r)).epsilon(1e-10));
        }
    }

    SUBCASE("normals are preserved when beta3 = 0") {
        const double t = 0.25;
        Immersion moved = parallel_transform(tube, t);
        Analyzer orig(tube), an(moved);
        for (int v = 0; v < tube.vertex_count(); ++v) {
            if (tube.graph.is_leaf(v)) continue;
            CHECK((*an.geometric_normal(v) - *orig.geometric_normal(v)).norm() < 1e-12);
        }
    }

    SUBCASE("composition P(s) then P(t) equals P(s + t)") {
        Immersion ab = parallel_transform(parallel_transform(tube, 0.2), 0.3);
        Immersion once = parallel_transform(tube, 0.5);
        for (int v = 0; v < tube.vertex_count(); ++v)
            CHECK((ab.positions[v] - once.positions[v]).norm() < 1e-9);
    }

    SUBCASE("offsetting by the curvature radius merges the direction-1 pairs") {
        const double t = 1.0 / (-1.0 / r);  // 1/k1 = -r
        Immersion moved = parallel_transform(tube, t);
        for (int v = 0; v < tube.vertex_count(); ++v) {
            if (tube.graph.is_leaf(v)) continue;
            const auto& tr = tube.graph.triple(v);
            CHECK((moved.positions[tr[0]] - moved.positions[tr[2]]).norm() < 1e-12);
        }
    }
}

TEST_CASE("curvature sphere center") {
    const double r = 1.0;
    Immersion tube = chiral_cylinder({r, kPi / 4, 0.5, 4, 6});
    Analyzer an(tube);
    for (int v = 0; v < tube.vertex_count(); ++v) {
        if (tube.graph.is_leaf(v)) continue;
        SphereCenter c = curvature_sphere_center(an, v);
        CHECK(c.mismatch < 1e-12);
        // centers sit on the cylinder axis
        CHECK(std::hypot(c.p.x(), c.p.y()) < 1e-12);
    }

    SUBCASE("random principal cells agree from both endpoints") {
        Rng rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            auto cell = tsurf::testing::random_principal_cell(rng);
            if (std::abs(cell.k1) < 1e-6) continue;
            Analyzer can(cell.imm);
            SphereCenter c = curvature_sphere_center(can, 0);
            const double scale = 1.0 / std::abs(cell.k1) + cell.v1.norm();
            CHECK(c.mismatch < 1e-11 * scale);
        }
    }

    SUBCASE("flat and non-principal vertices are rejected") {
        Immersion flat = hexagonal_plane(1.0, 2);
        Analyzer fan(flat);
        CHECK_THROWS_AS(curvature_sphere_center(fan, flat.graph.root), std::invalid_argument);

        Rng rng(23);
        Immersion generic = tsurf::testing::random_generic_cell(rng);
        Analyzer gan(generic);
        if (!principal_report(gan, 0).is_principal1)
            CHECK_THROWS_AS(curvature_sphere_center(gan, 0), std::invalid_argument);
    }
}

TEST_CASE("single-vector reformulation matches the residual pair") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto cell = tsurf::testing::random_principal_cell(rng);
        PrincipalReport p = principal_report(cell.imm, 0);
        CHECK(p.is_principal1);
        CHECK(p.is_principal2);
        CHECK(p.c_residual < 1e-10);

        // breaking one normal breaks both characterizations
        Immersion broken = cell.imm;
        broken.prescribed_normals[1] = rng.unit();
        PrincipalReport q = principal_report(broken, 0);
        CHECK((q.is_principal1 && q.is_principal2) == (q.c_residual < 1e-8));
    }
}

TEST_CASE("degeneration classifier") {
    const double r = 1.0;
    Immersion tube = chiral_cylinder({r, kPi / 4, 0.5, 4, 6});

    SUBCASE("no offset: nothing merges") {
        DegenerationReport rep = classify_degeneration(tube, 0.0);
        CHECK(rep.kind == Degeneration::None);
        CHECK(rep.merged_vertices == 0);
        CHECK(rep.contraction == doctest::Approx(1.0));
    }
    SUBCASE("curvature-radius offset collapses to a chain") {
        DegenerationReport rep = classify_degeneration(tube, -r);
        CHECK(rep.kind == Degeneration::CurveLike);
        CHECK(rep.quotient_max_degree <= 2);
        CHECK(rep.merged_vertices > 0);
    }
    SUBCASE("generic offset does not merge") {
        DegenerationReport rep = classify_degeneration(tube, 0.37);
        CHECK(rep.kind == Degeneration::None);
    }
}

TEST_CASE("CPC verdicts") {
    const double r = 2.0;
    Immersion tube = chiral_cylinder({r, kPi / 4, 0.5, 4, 8});

    CPCVerdict v1 = cpc_verdict(tube, 1);
    CHECK(v1.pass);
    CHECK(v1.constant_value == doctest::Approx(-1.0 / r).epsilon(1e-12));
    CHECK(v1.max_deviation < 1e-12);

    CPCVerdict v2 = cpc_verdict(tube, 2);
    CHECK(v2.pass);
    CHECK(std::abs(v2.constant_value) < 1e-12);

    SUBCASE("perturbation breaks the verdict") {
        Rng rng(47);
        Immersion bent = tube;
        const double bond = tube.mean_edge_length();
        for (auto& p : bent.positions) p += 0.1 * bond * rng.unit();
        CPCVerdict bad = cpc_verdict(bent, 1);
        CHECK(!bad.pass);
    }

    SUBCASE("empty analyzable set is an error") {
        Immersion lonely;
        lonely.graph = build_full_ternary_tree(0);
        lonely.positions = {Vec3::Zero()};
        lonely.prescribed_normals = {std::nullopt};
        CHECK_THROWS_AS(cpc_verdict(lonely, 1), std::invalid_argument);
    }
}
