#pragma once

#include <array>
#include <optional>

#include "tsurf/immersion.hpp"
#include "tsurf/types.hpp"

namespace tsurf {

enum class NormalSource { Geometric, Prescribed, Unavailable };

/// Which normal wins when both are available. Generators satisfy
/// geometric == prescribed, so the default applies everywhere except
/// constructor output, whose Rodrigues-propagated field is authoritative
/// (cell orientations alternate against the cross product there). Built
/// surfaces declare themselves via metadata["normals"] = "propagated".
enum class NormalPolicy { GeometricFirst, PrescribedFirst };

NormalPolicy default_normal_policy(const Immersion& imm);

/// Everything the discrete curvature theory produces at one vertex.
/// `ok` is false when a precondition failed; the flags say which.
struct VertexCurvature {
    int vertex = -1;
    bool ok = false;
    bool rank_deficient = false;   // tangent data below the rank threshold
    bool singular_I = false;       // first fundamental form not invertible
    bool missing_normals = false;  // some neighbor normal unavailable
    bool complex_pair = false;     // H^2 - 4K < 0, k1/k2 unavailable

    Vec3 v1 = Vec3::Zero();
    Vec3 v2 = Vec3::Zero();
    Vec3 n = Vec3::Zero();
    std::array<NormalSource, 3> neighbor_sources = {NormalSource::Unavailable,
                                                    NormalSource::Unavailable,
                                                    NormalSource::Unavailable};
    NormalSource own_source = NormalSource::Unavailable;

    Mat2 I = Mat2::Zero();
    Mat2 II = Mat2::Zero();
    Mat2 W = Mat2::Zero();  // Weingarten map I^{-1} II
    double H = 0.0;
    double K = 0.0;
    double k1 = 0.0;  // root with +sqrt; k1 >= k2 when the pair is real
    double k2 = 0.0;

    Vec3 dn = Vec3::Zero();   // n(x1) - n(x3)
    Vec3 dpn = Vec3::Zero();  // n(x2) - n(x3)
    std::array<double, 3> alpha = {0, 0, 0};  // dn  = a1 v1 + a2 v2 + a3 n
    std::array<double, 3> beta = {0, 0, 0};   // d'n = b1 v1 + b2 v2 + b3 n
};

/// Per-immersion analysis context: caches the edge-length scale and vertex
/// normals. All queries are const and safe to share between threads.
class Analyzer {
  public:
    explicit Analyzer(const Immersion& imm, const Tolerances& tol = {});
    Analyzer(const Immersion& imm, const Tolerances& tol, NormalPolicy policy);

    const Immersion& immersion() const { return *imm_; }
    const Tolerances& tolerances() const { return tol_; }
    double mean_edge() const { return mean_edge_; }
    double rank_eps() const { return rank_eps_; }

    /// (v1, v2) = (p(x1) - p(x3), p(x2) - p(x3)). Throws on leaves.
    std::pair<Vec3, Vec3> tangent_vectors(int x) const;

    /// Unit normal n = v1 x v2 / |v1 x v2| from the vertex's own geometry.
    /// Empty when the vertex is a leaf or rank-deficient.
    std::optional<Vec3> geometric_normal(int x) const;

    /// Normal used for analysis: geometric where available, else prescribed.
    std::optional<Vec3> normal(int x) const;
    NormalSource normal_source(int x) const;

    /// Full per-vertex record; never throws for non-leaf x, reports flags.
    VertexCurvature analyze(int x) const;

    /// Fundamental forms (I, II); throws std::invalid_argument when a
    /// neighbor normal is unavailable or x is a leaf.
    std::pair<Mat2, Mat2> fundamental_forms(int x) const;

    /// W = I^{-1} II; throws when I is singular at the det threshold.
    Mat2 weingarten(int x) const;

    /// (H, K, k1, k2); complex pairs throw (use analyze() for flags).
    std::array<double, 4> curvatures(int x) const;

    /// Coefficients of dn and d'n in the frame {v1, v2, n}.
    std::pair<std::array<double, 3>, std::array<double, 3>> decompose_normal_differences(
        int x) const;

  private:
    const Immersion* imm_;
    Tolerances tol_;
    NormalPolicy policy_;
    double mean_edge_;
    double rank_eps_;
    mutable std::vector<std::optional<std::optional<Vec3>>> normal_cache_;
};

/// Convenience single-call wrappers.
VertexCurvature analyze_vertex(const Immersion& imm, int x, const Tolerances& tol = {});
std::vector<VertexCurvature> analyze_all(const Immersion& imm, const Tolerances& tol = {});

}  // namespace tsurf
