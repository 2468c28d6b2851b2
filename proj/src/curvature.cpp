#include "tsurf/curvature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tsurf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

NormalPolicy default_normal_policy(const Immersion& imm) {
    auto it = imm.metadata.find("normals");
    return (it != imm.metadata.end() && it->second == "propagated")
               ? NormalPolicy::PrescribedFirst
               : NormalPolicy::GeometricFirst;
}

Analyzer::Analyzer(const Immersion& imm, const Tolerances& tol)
    : Analyzer(imm, tol, default_normal_policy(imm)) {}

Analyzer::Analyzer(const Immersion& imm, const Tolerances& tol, NormalPolicy policy)
    : imm_(&imm), tol_(tol), policy_(policy) {
    mean_edge_ = imm.mean_edge_length();
    const double scale = (mean_edge_ > 0.0) ? mean_edge_ : 1.0;
    rank_eps_ = tol.rank_scale * scale * scale;
    normal_cache_.resize(imm.vertex_count());
    for (int v = 0; v < imm.vertex_count(); ++v) {
        std::optional<Vec3> prescribed;
        if (v < static_cast<int>(imm.prescribed_normals.size()))
            prescribed = imm.prescribed_normals[v];
        std::optional<Vec3> n;
        if (policy_ == NormalPolicy::PrescribedFirst && prescribed)
            n = prescribed;
        else if ((n = geometric_normal(v)), !n)
            n = prescribed;
        normal_cache_[v] = n;
    }
}

std::pair<Vec3, Vec3> Analyzer::tangent_vectors(int x) const {
    const auto& t = imm_->graph.triple(x);  // throws on leaves
    const Vec3& p1 = imm_->positions[t[0]];
    const Vec3& p2 = imm_->positions[t[1]];
    const Vec3& p3 = imm_->positions[t[2]];
    return {p1 - p3, p2 - p3};
}

std::optional<Vec3> Analyzer::geometric_normal(int x) const {
    if (imm_->graph.is_leaf(x)) return std::nullopt;
    auto [v1, v2] = tangent_vectors(x);
    const Vec3 cross = v1.cross(v2);
    if (cross.norm() <= rank_eps_) return std::nullopt;
    return cross.normalized();
}

std::optional<Vec3> Analyzer::normal(int x) const {
    if (normal_cache_[x]) return *normal_cache_[x];
    return std::nullopt;
}

NormalSource Analyzer::normal_source(int x) const {
    const bool has_prescribed =
        x < static_cast<int>(imm_->prescribed_normals.size()) && imm_->prescribed_normals[x];
    if (policy_ == NormalPolicy::PrescribedFirst && has_prescribed)
        return NormalSource::Prescribed;
    if (!imm_->graph.is_leaf(x) && geometric_normal(x)) return NormalSource::Geometric;
    if (has_prescribed) return NormalSource::Prescribed;
    return NormalSource::Unavailable;
}

VertexCurvature Analyzer::analyze(int x) const {
    VertexCurvature r;
    r.vertex = x;
    const auto& t = imm_->graph.triple(x);
    const Vec3& px = imm_->positions[x];
    const Vec3 e1 = imm_->positions[t[0]] - px;
    const Vec3 e2 = imm_->positions[t[1]] - px;
    const Vec3 e3 = imm_->positions[t[2]] - px;
    r.v1 = imm_->positions[t[0]] - imm_->positions[t[2]];
    r.v2 = imm_->positions[t[1]] - imm_->positions[t[2]];

    const double pair_area =
        std::max({e1.cross(e2).norm(), e2.cross(e3).norm(), e3.cross(e1).norm()});
    const Vec3 cross = r.v1.cross(r.v2);
    if (pair_area <= rank_eps_ || cross.norm() <= rank_eps_) {
        r.rank_deficient = true;
        return r;
    }
    r.n = cross.normalized();
    r.own_source = NormalSource::Geometric;

    std::array<Vec3, 3> nn;
    for (int i = 0; i < 3; ++i) {
        auto ni = normal(t[i]);
        r.neighbor_sources[i] = normal_source(t[i]);
        if (!ni) {
            r.missing_normals = true;
            return r;
        }
        nn[i] = *ni;
    }
    r.dn = nn[0] - nn[2];
    r.dpn = nn[1] - nn[2];

    r.I << r.v1.dot(r.v1), r.v1.dot(r.v2), r.v2.dot(r.v1), r.v2.dot(r.v2);
    r.II << -r.v1.dot(r.dn), -r.v1.dot(r.dpn), -r.v2.dot(r.dn), -r.v2.dot(r.dpn);

    const double det = r.I.determinant();
    if (det <= tol_.num * r.I.squaredNorm()) {
        r.singular_I = true;
        return r;
    }
    Mat2 Iinv;
    Iinv << r.I(1, 1), -r.I(0, 1), -r.I(1, 0), r.I(0, 0);
    Iinv /= det;
    r.W = Iinv * r.II;
    r.H = r.W.trace();
    r.K = r.W.determinant();

    double disc = r.H * r.H - 4.0 * r.K;
    // near-umbilic round-off can push an exact zero slightly negative
    if (disc < 0.0 && -disc <= tol_.num * (r.H * r.H + 4.0 * std::abs(r.K)))
        disc = 0.0;
    if (disc < 0.0) {
        r.complex_pair = true;
        r.k1 = kNaN;
        r.k2 = kNaN;
    } else {
        const double s = std::sqrt(disc);
        r.k1 = 0.5 * (r.H + s);
        r.k2 = 0.5 * (r.H - s);
    }

    Mat3 frame;
    frame.col(0) = r.v1;
    frame.col(1) = r.v2;
    frame.col(2) = r.n;
    const Eigen::FullPivLU<Mat3> lu(frame);
    const Vec3 a = lu.solve(r.dn);
    const Vec3 b = lu.solve(r.dpn);
    r.alpha = {a[0], a[1], a[2]};
    r.beta = {b[0], b[1], b[2]};

    r.ok = true;
    return r;
}

std::pair<Mat2, Mat2> Analyzer::fundamental_forms(int x) const {
    VertexCurvature r = analyze(x);
    if (r.rank_deficient)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": rank-deficient tangent plane");
    if (r.missing_normals)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": neighbor normal unavailable");
    return {r.I, r.II};
}

Mat2 Analyzer::weingarten(int x) const {
    VertexCurvature r = analyze(x);
    if (r.rank_deficient)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": rank-deficient tangent plane");
    if (r.missing_normals)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": neighbor normal unavailable");
    if (r.singular_I)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": singular first fundamental form");
    return r.W;
}

std::array<double, 4> Analyzer::curvatures(int x) const {
    VertexCurvature r = analyze(x);
    if (!r.ok)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": curvature analysis failed");
    return {r.H, r.K, r.k1, r.k2};
}

std::pair<std::array<double, 3>, std::array<double, 3>> Analyzer::decompose_normal_differences(
    int x) const {
    VertexCurvature r = analyze(x);
    if (r.rank_deficient || r.missing_normals)
        throw std::invalid_argument("vertex " + std::to_string(x) +
                                    ": normal difference decomposition unavailable");
    return {r.alpha, r.beta};
}

VertexCurvature analyze_vertex(const Immersion& imm, int x, const Tolerances& tol) {
    return Analyzer(imm, tol).analyze(x);
}

std::vector<VertexCurvature> analyze_all(const Immersion& imm, const Tolerances& tol) {
    Analyzer an(imm, tol);
    std::vector<VertexCurvature> out;
    out.reserve(imm.vertex_count());
    for (int v = 0; v < imm.vertex_count(); ++v) {
        if (imm.graph.is_leaf(v)) continue;
        out.push_back(an.analyze(v));
    }
    return out;
}

}  // namespace tsurf
