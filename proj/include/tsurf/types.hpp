#pragma once

#include <Eigen/Dense>

namespace tsurf {

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Numeric thresholds used across the analysis modules. All values are
/// overridable (the CLI reads TSURF_* environment variables into this
/// struct; library callers pass it explicitly).
struct Tolerances {
    double rank_scale = 1e-10;  // rank test: eps = rank_scale * (mean edge length)^2
    double unit = 1e-9;         // prescribed normals must be unit within this
    double num = 1e-9;          // generic relative numeric tolerance
    double dir = 1e-8;          // principal-direction residual threshold
    double cpc = 1e-8;          // CPC constancy threshold
    double zero = 1e-12;        // |k| below this counts as a flat direction
    double merge_rel = 1e-6;    // point-merge threshold, relative to bond length
    double solve = 1e-10;       // constructor: max residual of cell constraints
};

}  // namespace tsurf
