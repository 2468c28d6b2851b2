#pragma once

#include "tsurf/immersion.hpp"

namespace tsurf {

/// Screw-symmetric hexagonal tube: vertices on the cylinder of radius r,
/// exact radial normals, direction-tagged curvatures k1 = -1/r, k2 = 0 in
/// both discrete principal directions, constant bond length
/// d^2 = 2 r^2 (1 - cos theta) + h^2.
struct ChiralParams {
    double r = 1.0;      // cylinder radius
    double theta = 0.0;  // angular half-step, in (0, pi)
    double h = 0.0;      // axial half-step, nonzero
    int rings = 3;       // node rows
    int turns = 3;       // columns; wraps closed when theta/pi is rational
};

/// Hexagonal torus sampled on
/// f(u,v) = ((r1 cos u + r2) cos v, (r1 cos u + r2) sin v, r1 sin u),
/// rows u in {0, pi/2, pi, 3pi/2}, angles i*pi/N. Closed and trivalent.
/// Normals carry the tube-inward orientation -nu(u,v), under which the
/// direction-1 curvature is +1/r1 at every vertex.
struct TorusParams {
    double r1 = 1.0;  // tube radius
    double r2 = 3.0;  // core radius, r2 > r1
    int N = 4;        // angular resolution, N >= 2
};

/// Flat honeycomb patch in z = 0 with bond length `bond`; `depth` node
/// rings around the center. Zero-curvature reference model.
Immersion hexagonal_plane(double bond, int depth);

Immersion chiral_cylinder(const ChiralParams& params);

/// Equal-bond armchair tube: 2m vertices per ring, 2*levels rings, all on
/// the cylinder of radius r. The angular half-step and axial step solve the
/// equal-bond + equiangular-vertex system by damped Newton. Principal in
/// the axial (k2 = 0) direction only.
Immersion armchair_cylinder(double r, int m, int levels);

/// The two armchair cell parameters and solve diagnostics, exposed for
/// verification.
struct ArmchairCell {
    double eps = 0.0;   // pair angular half-span
    double axial = 0.0; // ring spacing
    double bond = 0.0;
    double residual = 0.0;
    int iterations = 0;
};
ArmchairCell solve_armchair_cell(double r, int m);

Immersion cpc_torus(const TorusParams& params);

/// The 60-vertex equal-edge polyhedron with position = rho * normal at
/// every vertex (k1 = k2 = -1/rho). Metadata records the ratio.
Immersion truncated_icosahedron(double rho);

}  // namespace tsurf
