#pragma once

#include <optional>
#include <vector>

#include "tsurf/curvature.hpp"
#include "tsurf/immersion.hpp"

namespace tsurf {

/// Discrete principal-direction diagnostics at one vertex. Curvatures are
/// direction-tagged (the k attached to v_i through the Rodrigues relation
/// dn = -k v_i), computed by the closed formula 2<v_i, n(x3)> / |v_i|^2.
struct PrincipalReport {
    int vertex = -1;
    bool ok = false;
    double residual1 = 0.0;  // |dn + k1 v1| / (|v1||k1| + |dn|)
    double residual2 = 0.0;
    double k_along_v1 = 0.0;
    double k_along_v2 = 0.0;
    bool is_principal1 = false;
    bool is_principal2 = false;
    Vec3 c_vector = Vec3::Zero();  // single translation vector of the
    double c_residual = 0.0;       // three-equation reformulation
};

struct CPCVerdict {
    int direction = 1;
    double constant_value = 0.0;
    double max_deviation = 0.0;
    int vertices_checked = 0;
    bool pass = false;
};

enum class Degeneration { None, PointsMerge, CurveLike, SurfaceLike };

struct DegenerationReport {
    Degeneration kind = Degeneration::None;
    int cluster_count = 0;
    int merged_vertices = 0;      // vertices sharing a cluster with another
    double max_spread = 0.0;      // largest in-cluster point distance
    double contraction = 0.0;     // median |P(x1)-P(x3)| / |v1|
    int quotient_max_degree = 0;  // distinct-cluster neighbors of any cluster
    double merge_threshold = 0.0;
};

struct SphereCenter {
    Vec3 p = Vec3::Zero();  // midpoint of the two expressions
    Vec3 from_x1 = Vec3::Zero();
    Vec3 from_x3 = Vec3::Zero();
    double mismatch = 0.0;
};

PrincipalReport principal_report(const Analyzer& an, int x);
PrincipalReport principal_report(const Immersion& imm, int x, const Tolerances& tol = {});

/// 2<v_dir, n(x3)> / |v_dir|^2, direction in {1, 2}. Exact under the
/// principal hypothesis and independent of n(x1). Throws on zero tangent.
double corollary_k(const Analyzer& an, int x, int direction);

/// P(t, x) = pos(x) + t * n(x) at every vertex with an available normal.
/// The result keeps the graph; leaves inherit the source's analysis normal
/// as prescribed data, node normals are left to recomputation. Throws when
/// a normal is missing; rank violations downstream are reported as flags.
Immersion parallel_transform(const Immersion& imm, double t, const Tolerances& tol = {});

/// Center of the direction-1 curvature sphere. Requires the vertex to be
/// principal in direction 1 with |k1| above tol.zero; checks that the two
/// expressions p = pos(x_i) + n(x_i)/k1 (i = 1, 3) coincide.
SphereCenter curvature_sphere_center(const Analyzer& an, int x);

DegenerationReport classify_degeneration(const Immersion& imm, double t,
                                         const Tolerances& tol = {});

/// Aggregates principal reports over all analyzable vertices (or an explicit
/// subset). Pass requires every checked vertex principal in `direction` and
/// the direction-tagged curvature constant within tol.cpc.
CPCVerdict cpc_verdict(const Immersion& imm, int direction, const Tolerances& tol = {},
                       const std::vector<int>* subset = nullptr);

}  // namespace tsurf
