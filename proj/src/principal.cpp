#include "tsurf/principal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsurf {

namespace {

// dn and k*v are dimensionless (unit-normal differences); below this the
// direction is flat to machine precision and the relation holds with k = 0
constexpr double kFlatDenominator = 1e-12;

double direction_residual(const Vec3& dn, double k, const Vec3& v) {
    const double denom = v.norm() * std::abs(k) + dn.norm();
    if (denom <= kFlatDenominator) return 0.0;
    return (dn + k * v).norm() / denom;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PrincipalReport principal_report(const Analyzer& an, int x) {
    PrincipalReport r;
    r.vertex = x;
    const Immersion& imm = an.immersion();
    const auto& t = imm.graph.triple(x);
    auto [v1, v2] = an.tangent_vectors(x);
    auto n1 = an.normal(t[0]);
    auto n2 = an.normal(t[1]);
    auto n3 = an.normal(t[2]);
    if (!n1 || !n2 || !n3)
        throw std::invalid_argument("vertex " + std::to_string(x) +
                                    ": neighbor normal unavailable");
    const Vec3 dn = *n1 - *n3;
    const Vec3 dpn = *n2 - *n3;
    const double tau = an.tolerances().dir;

    const double q1 = v1.squaredNorm();
    const double q2 = v2.squaredNorm();
    if (q1 == 0.0 || q2 == 0.0)
        throw std::invalid_argument("vertex " + std::to_string(x) + ": zero tangent vector");
    r.k_along_v1 = 2.0 * v1.dot(*n3) / q1;
    r.k_along_v2 = 2.0 * v2.dot(*n3) / q2;
    r.residual1 = direction_residual(dn, r.k_along_v1, v1);
    r.residual2 = direction_residual(dpn, r.k_along_v2, v2);
    r.is_principal1 = r.residual1 < tau;
    r.is_principal2 = r.residual2 < tau;

    // Single-vector reformulation: the three per-neighbor equations
    //   n(x1) = -k1 p(x1) - k2 p(x3) + c
    //   n(x2) = -k1 p(x3) - k2 p(x2) + c
    //   n(x3) = -k1 p(x3) - k2 p(x3) + c
    // fit by one c exactly iff both directions are principal.
    const Vec3& p1 = imm.positions[t[0]];
    const Vec3& p2 = imm.positions[t[1]];
    const Vec3& p3 = imm.positions[t[2]];
    const double k1 = r.k_along_v1, k2 = r.k_along_v2;
    const Vec3 c1 = *n1 + k1 * p1 + k2 * p3;
    const Vec3 c2 = *n2 + k1 * p3 + k2 * p2;
    const Vec3 c3 = *n3 + (k1 + k2) * p3;
    r.c_vector = (c1 + c2 + c3) / 3.0;
    const double d1 = v1.norm() * std::abs(k1) + dn.norm();
    const double d2 = v2.norm() * std::abs(k2) + dpn.norm();
    const double scale = std::max({d1, d2, kFlatDenominator});
    r.c_residual = std::max({(c1 - r.c_vector).norm(), (c2 - r.c_vector).norm(),
                             (c3 - r.c_vector).norm()}) /
                   scale;
    r.ok = true;
    return r;
}

PrincipalReport principal_report(const Immersion& imm, int x, const Tolerances& tol) {
    return principal_report(Analyzer(imm, tol), x);
}

double corollary_k(const Analyzer& an, int x, int direction) {
    if (direction != 1 && direction != 2) throw std::invalid_argument("direction must be 1 or 2");
    const auto& t = an.immersion().graph.triple(x);
    auto [v1, v2] = an.tangent_vectors(x);
    const Vec3 v = (direction == 1) ? v1 : v2;
    auto n3 = an.normal(t[2]);
    if (!n3) throw std::invalid_argument("vertex " + std::to_string(x) + ": n(x3) unavailable");
    const double q = v.squaredNorm();
    if (q == 0.0) throw std::invalid_argument("vertex " + std::to_string(x) + ": zero tangent vector");
    return 2.0 * v.dot(*n3) / q;
}

Immersion parallel_transform(const Immersion& imm, double t, const Tolerances& tol) {
    Analyzer an(imm, tol);
    const bool keep_field = default_normal_policy(imm) == NormalPolicy::PrescribedFirst;
    Immersion out;
    out.graph = imm.graph;
    out.metadata = imm.metadata;
    out.metadata["parallel_t"] = std::to_string(t);
    out.positions.resize(imm.vertex_count());
    out.prescribed_normals.resize(imm.vertex_count());
    for (int v = 0; v < imm.vertex_count(); ++v) {
        auto n = an.normal(v);
        if (!n)
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        ": no normal for parallel transformation");
        out.positions[v] = imm.positions[v] + t * (*n);
        // the source field stays prescribed at leaves; a propagated field is
        // carried whole (its cross products alternate in sign by design)
        if (keep_field || imm.graph.is_leaf(v)) out.prescribed_normals[v] = *n;
    }
    return out;
}

SphereCenter curvature_sphere_center(const Analyzer& an, int x) {
    const PrincipalReport rep = principal_report(an, x);
    if (!rep.is_principal1)
        throw std::invalid_argument("vertex " + std::to_string(x) +
                                    ": not principal in direction 1");
    const double k1 = rep.k_along_v1;
    if (std::abs(k1) <= an.tolerances().zero)
        throw std::invalid_argument("vertex " + std::to_string(x) +
                                    ": flat direction, center at infinity");
    const Immersion& imm = an.immersion();
    const auto& t = imm.graph.triple(x);
    const Vec3 n1 = *an.normal(t[0]);
    const Vec3 n3 = *an.normal(t[2]);
    SphereCenter c;
    c.from_x1 = imm.positions[t[0]] + n1 / k1;
    c.from_x3 = imm.positions[t[2]] + n3 / k1;
    c.p = 0.5 * (c.from_x1 + c.from_x3);
    c.mismatch = (c.from_x1 - c.from_x3).norm();
    const double scale = 1.0 / std::abs(k1) + (imm.positions[t[0]] - imm.positions[t[2]]).norm();
    if (c.mismatch > 1e3 * an.tolerances().num * scale)
        throw std::runtime_error("vertex " + std::to_string(x) +
                                 ": curvature sphere center expressions disagree by " +
                                 std::to_string(c.mismatch));
    return c;
}

DegenerationReport classify_degeneration(const Immersion& imm, double t, const Tolerances& tol) {
    const Immersion img = parallel_transform(imm, t, tol);
    DegenerationReport rep;
    const int n = imm.vertex_count();
    rep.merge_threshold = tol.merge_rel * imm.mean_edge_length();

    UnionFind uf(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if ((img.positions[a] - img.positions[b]).norm() < rep.merge_threshold) uf.merge(a, b);

    std::vector<int> cluster(n);
    std::vector<int> size;
    {
        std::vector<int> index(n, -1);
        for (int v = 0; v < n; ++v) {
            int root = uf.find(v);
            if (index[root] < 0) {
                index[root] = static_cast<int>(size.size());
                size.push_back(0);
            }
            cluster[v] = index[root];
            ++size[cluster[v]];
        }
    }
    rep.cluster_count = static_cast<int>(size.size());
    for (int v = 0; v < n; ++v)
        if (size[cluster[v]] > 1) ++rep.merged_vertices;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (cluster[a] == cluster[b])
                rep.max_spread =
                    std::max(rep.max_spread, (img.positions[a] - img.positions[b]).norm());

    std::vector<std::vector<int>> qadj(rep.cluster_count);
    for (auto [a, b] : imm.graph.edges()) {
        if (cluster[a] == cluster[b]) continue;
        qadj[cluster[a]].push_back(cluster[b]);
        qadj[cluster[b]].push_back(cluster[a]);
    }
    for (auto& nb : qadj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        rep.quotient_max_degree = std::max(rep.quotient_max_degree, static_cast<int>(nb.size()));
    }

    std::vector<double> ratios;
    for (int v = 0; v < n; ++v) {
        if (imm.graph.is_leaf(v)) continue;
        const auto& tr = imm.graph.triple(v);
        const double orig = (imm.positions[tr[0]] - imm.positions[tr[2]]).norm();
        if (orig <= rep.merge_threshold) continue;
        ratios.push_back((img.positions[tr[0]] - img.positions[tr[2]]).norm() / orig);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        rep.contraction = ratios[ratios.size() / 2];
    } else {
        rep.contraction = 1.0;
    }

    constexpr double kContracted = 0.75;  // v1-pair shrink marking a near-collapse
    constexpr double kSparse = 0.25;     // merged fraction below which mergers count as isolated
    const bool any_merge = rep.merged_vertices > 0;
    if (!any_merge) {
        rep.kind = (rep.contraction > kContracted) ? Degeneration::None : Degeneration::SurfaceLike;
    } else if (rep.quotient_max_degree <= 2) {
        rep.kind = Degeneration::CurveLike;
    } else if (rep.merged_vertices < kSparse * n && rep.contraction > kContracted) {
        rep.kind = Degeneration::PointsMerge;
    } else {
        rep.kind = Degeneration::SurfaceLike;
    }
    return rep;
}

CPCVerdict cpc_verdict(const Immersion& imm, int direction, const Tolerances& tol,
                       const std::vector<int>* subset) {
    if (direction != 1 && direction != 2) throw std::invalid_argument("direction must be 1 or 2");
    Analyzer an(imm, tol);
    std::vector<int> vertices;
    if (subset) {
        vertices = *subset;
    } else {
        for (int v = 0; v < imm.vertex_count(); ++v) {
            if (imm.graph.is_leaf(v)) continue;
            if (an.analyze(v).ok) vertices.push_back(v);
        }
    }
    if (vertices.empty()) throw std::invalid_argument("no analyzable vertices");

    CPCVerdict verdict;
    verdict.direction = direction;
    verdict.vertices_checked = static_cast<int>(vertices.size());
    bool all_principal = true;
    double sum = 0.0;
    std::vector<double> ks;
    for (int v : vertices) {
        const PrincipalReport rep = principal_report(an, v);
        const bool principal = (direction == 1) ? rep.is_principal1 : rep.is_principal2;
        all_principal = all_principal && principal;
        const double k = (direction == 1) ? rep.k_along_v1 : rep.k_along_v2;
        ks.push_back(k);
        sum += k;
    }
    verdict.constant_value = sum / static_cast<double>(ks.size());
    for (double k : ks)
        verdict.max_deviation = std::max(verdict.max_deviation, std::abs(k - verdict.constant_value));
    const double edge = imm.mean_edge_length();
    const double scale = std::max(std::abs(verdict.constant_value), edge > 0.0 ? 1.0 / edge : 1.0);
    verdict.pass = all_principal && verdict.max_deviation < tol.cpc * scale;
    return verdict;
}

}  // namespace tsurf
