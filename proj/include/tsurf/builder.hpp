#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsurf/immersion.hpp"
#include "tsurf/types.hpp"

namespace tsurf {

/// Prescriptions and seed data for the constant-bond-length constructor.
/// The seed gauge fixes pos(x0) = 0, pos(x3) = (0, 0, r) and puts n(x0)
/// into the xz-plane (phi1 = 0); theta2, phi2 orient n(x3). theta1 defaults
/// to 0, i.e. n(x0) orthogonal to the seed edge.
struct BuildParams {
    double r = 1.0;  // bond length
    std::function<double(int)> k1 = [](int) { return 0.0; };
    std::function<double(int)> k2 = [](int) { return 0.0; };
    double theta1 = 0.0;
    double phi1 = 0.0;
    double theta2 = 0.0;
    double phi2 = 0.0;
    int depth = 1;

    static std::function<double(int)> constant(double k) {
        return [k](int) { return k; };
    }
};

struct SeedFrame {
    Vec3 pos0 = Vec3::Zero();
    Vec3 pos3 = Vec3::Zero();
    Vec3 n0 = Vec3::Zero();
    Vec3 n3 = Vec3::Zero();
};

enum class CellStatus { Determined, Underdetermined, Degenerate, Failed };

/// One cell of the iteration: at `center` with its unit normal, the two new
/// neighbors around the already-placed `anchor` were solved on the circle
/// (plane through pos(anchor) normal to n(center)) cut from the bond sphere.
struct CellRecord {
    int center = -1;
    int anchor = -1;
    CellStatus status = CellStatus::Failed;
    double circle_radius = 0.0;
    double psi1 = 0.0;  // circle angles of the chosen children (anchor at 0)
    double psi2 = 0.0;
    int roots1 = 0;  // curvature-equation root count excluding the anchor
    int roots2 = 0;
    double k1 = 0.0;  // prescriptions applied at this cell
    double k2 = 0.0;
    double orientation = 0.0;  // sign of <v1 x v2, n(center)>
    std::string error;
};

struct SolvedCell {
    CellStatus status = CellStatus::Failed;
    Vec3 x1 = Vec3::Zero();
    Vec3 x2 = Vec3::Zero();
    Vec3 n1 = Vec3::Zero();
    Vec3 n2 = Vec3::Zero();
    CellRecord record;
};

struct BuildLog {
    BuildParams params;
    std::vector<CellRecord> cells;
    bool complete = false;
    std::string error;
};

struct BuildResult {
    Immersion immersion;
    BuildLog log;
    bool ok = false;
};

/// Seed placement (steps 1-2): positions of x0, x3 and their unit normals
/// from the spherical-angle parameters.
SeedFrame seed_frame(const BuildParams& params);

/// Step 3 at one cell. center/anchor carry position + unit normal; k1, k2
/// are the curvature values prescribed at the center. Root finding scans the
/// circle parameter densely and bisects sign changes; the anchor sits at
/// angle 0 and is excluded as the spurious root.
SolvedCell solve_adjacent(const Vec3& center_pos, const Vec3& center_normal,
                          const Vec3& anchor_pos, const Vec3& anchor_normal, double k1, double k2,
                          double r, const Tolerances& tol = {});

/// n(child) = n(anchor) - k * (pos(child) - pos(anchor)); unit by the
/// algebra of the curvature equation, asserted within 1e-12.
Vec3 propagate_normal(const Vec3& anchor_normal, double k, const Vec3& child_pos,
                      const Vec3& anchor_pos);

/// Full breadth-first build to params.depth over the full 3-ary tree
/// combinatorics (parent in slot e3 of every non-root cell). On solver
/// failure the partial immersion is returned with ok = false and the
/// offending cell recorded.
BuildResult build(const BuildParams& params, const Tolerances& tol = {});

/// Build from an explicit seed frame (same iteration, arbitrary gauge).
BuildResult build_from_seed(const BuildParams& params, const SeedFrame& seed,
                            const Tolerances& tol = {});

/// Canonical JSON rendering of a build log; bit-identical for identical
/// params (deterministic root finding, fixed formatting).
std::string build_log_json(const BuildLog& log);

}  // namespace tsurf
