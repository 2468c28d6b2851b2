#include "tsurf/builder.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "tsurf/graph.hpp"

namespace tsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanSamples = 4096;
constexpr double kBisectTol = 1e-12;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Circle through the anchor: plane with normal m through `a`, intersected
/// with the bond sphere around `c0`. The anchor fixes the angular origin.
struct Circle {
    Vec3 center;
    double radius = 0.0;
    Vec3 u;  // unit, points at the anchor (angle 0)
    Vec3 w;  // m x u
    Vec3 at(double psi) const { return center + radius * (std::cos(psi) * u + std::sin(psi) * w); }
};

std::optional<Circle> plane_sphere_circle(const Vec3& c0, const Vec3& m, const Vec3& a, double r) {
    const double s = (a - c0).dot(m);  // signed distance of the plane
    const double rho2 = r * r - s * s;
    if (rho2 <= 1e-24 * r * r) return std::nullopt;  // circle degenerates to a point
    Circle c;
    c.center = c0 + s * m;
    c.radius = std::sqrt(rho2);
    const Vec3 ua = a - c.center;
    if (ua.norm() <= 1e-12 * r) return std::nullopt;
    c.u = ua.normalized();
    c.w = m.cross(c.u);
    return c;
}

/// Curvature-equation residual on the circle, zero-free form:
/// g(psi) = k |p - a|^2 - 2 <p - a, n_a>. The anchor (psi = 0) is always a
/// root and never a valid child.
struct CurvatureEquation {
    const Circle* circle;
    Vec3 a;
    Vec3 na;
    double k;
    double operator()(double psi) const {
        const Vec3 v = circle->at(psi) - a;
        return k * v.squaredNorm() - 2.0 * v.dot(na);
    }
};

std::vector<double> find_roots(const CurvatureEquation& eq, double r, bool& underdetermined) {
    // dense angular scan + bisection; deterministic
    std::vector<double> roots;
    double max_abs = 0.0;
    std::vector<double> vals(kScanSamples + 1);
    for (int i = 0; i <= kScanSamples; ++i) {
        vals[i] = eq(2.0 * kPi * i / kScanSamples);
        max_abs = std::max(max_abs, std::abs(vals[i]));
    }
    const double scale = (std::abs(eq.k) * 4.0 + 4.0 / r) * r * r;  // rough equation magnitude
    if (max_abs < 1e-12 * scale) {
        underdetermined = true;
        return roots;
    }
    underdetermined = false;
    for (int i = 0; i < kScanSamples; ++i) {
        double lo = 2.0 * kPi * i / kScanSamples;
        double hi = 2.0 * kPi * (i + 1) / kScanSamples;
        double flo = vals[i], fhi = vals[i + 1];
        if (flo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if (flo * fhi > 0.0) continue;
        while (hi - lo > kBisectTol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = eq(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0)
                hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    // drop the anchor root and near-duplicates
    std::vector<double> out;
    for (double psi : roots) {
        const double wrapped = std::min(psi, 2.0 * kPi - psi);
        if (wrapped < 1e-6) continue;  // anchor
        bool dup = false;
        for (double q : out)
            if (std::abs(q - psi) < 1e-9) dup = true;
        if (!dup) out.push_back(psi);
    }
    return out;
}

}  // namespace

SeedFrame seed_frame(const BuildParams& p) {
    if (p.r <= 0.0) throw std::invalid_argument("bond length must be positive");
    SeedFrame s;
    s.pos0 = Vec3::Zero();
    s.pos3 = Vec3(0.0, 0.0, p.r);
    s.n0 = Vec3(std::cos(p.theta1) * std::cos(p.phi1), std::cos(p.theta1) * std::sin(p.phi1),
                std::sin(p.theta1));
    s.n3 = Vec3(std::cos(p.theta2) * std::cos(p.phi2), std::cos(p.theta2) * std::sin(p.phi2),
                std::sin(p.theta2));
    return s;
}

Vec3 propagate_normal(const Vec3& anchor_normal, double k, const Vec3& child_pos,
                      const Vec3& anchor_pos) {
    const Vec3 n = anchor_normal - k * (child_pos - anchor_pos);
    const double len = n.norm();
    if (std::abs(len - 1.0) > 1e-12)
        throw std::runtime_error("propagated normal lost unit norm (" + std::to_string(len) +
                                 "); upstream cell solve failed");
    return n / len;
}

SolvedCell solve_adjacent(const Vec3& center_pos, const Vec3& center_normal,
                          const Vec3& anchor_pos, const Vec3& anchor_normal, double k1, double k2,
                          double r, const Tolerances& tol) {
    SolvedCell cell;
    CellRecord& rec = cell.record;
    rec.k1 = k1;
    rec.k2 = k2;

    const Vec3 m = center_normal.normalized();
    auto circle = plane_sphere_circle(center_pos, m, anchor_pos, r);
    if (!circle) {
        rec.status = CellStatus::Failed;
        rec.error = "tangent circle degenerate: n(center) parallel to the anchor edge";
        cell.status = rec.status;
        return cell;
    }
    rec.circle_radius = circle->radius;

    const CurvatureEquation eq1{&*circle, anchor_pos, anchor_normal, k1};
    const CurvatureEquation eq2{&*circle, anchor_pos, anchor_normal, k2};
    bool flat1 = false, flat2 = false;
    std::vector<double> roots1 = find_roots(eq1, r, flat1);
    std::vector<double> roots2 = find_roots(eq2, r, flat2);
    rec.roots1 = static_cast<int>(roots1.size());
    rec.roots2 = static_cast<int>(roots2.size());

    double psi1 = 0.0, psi2 = 0.0;
    if (flat1 && flat2) {
        // whole circle admissible: keep the hexagonal dihedral pattern
        rec.status = CellStatus::Underdetermined;
        psi1 = 2.0 * kPi / 3.0;
        psi2 = -2.0 * kPi / 3.0 + 2.0 * kPi;
    } else if (!roots1.empty() && !roots2.empty() && !flat1 && !flat2) {
        // the curvature equation has exactly one non-anchor root; with more
        // (tangency split by round-off) take the smallest circle angle
        psi1 = roots1.front();
        psi2 = roots2.front();
        rec.status = CellStatus::Determined;
    } else if (flat1 || flat2) {
        // one equation degenerate: pick the determined root and complete the
        // free direction by the hexagonal rule relative to it
        rec.status = CellStatus::Underdetermined;
        if (flat1) {
            if (roots2.empty()) {
                rec.status = CellStatus::Failed;
                rec.error = "curvature equation for x2 has no real root";
                cell.status = rec.status;
                return cell;
            }
            psi2 = roots2.front();
            psi1 = psi2 + 2.0 * kPi / 3.0;
        } else {
            if (roots1.empty()) {
                rec.status = CellStatus::Failed;
                rec.error = "curvature equation for x1 has no real root";
                cell.status = rec.status;
                return cell;
            }
            psi1 = roots1.front();
            psi2 = psi1 - 2.0 * kPi / 3.0;
        }
    } else {
        rec.status = CellStatus::Failed;
        rec.error = roots1.empty() ? "curvature equation for x1 has no real root"
                                   : "curvature equation for x2 has no real root";
        cell.status = rec.status;
        return cell;
    }

    cell.x1 = circle->at(psi1);
    cell.x2 = circle->at(psi2);
    rec.psi1 = psi1;
    rec.psi2 = psi2;
    if ((cell.x1 - cell.x2).norm() < tol.solve * r) {
        rec.status = CellStatus::Degenerate;
        rec.error = "x1 and x2 branches coincide";
        cell.status = rec.status;
        return cell;
    }
    const Vec3 v1 = cell.x1 - anchor_pos;
    const Vec3 v2 = cell.x2 - anchor_pos;
    rec.orientation = (v1.cross(v2).dot(m) >= 0.0) ? 1.0 : -1.0;
    cell.n1 = propagate_normal(anchor_normal, k1, cell.x1, anchor_pos);
    cell.n2 = propagate_normal(anchor_normal, k2, cell.x2, anchor_pos);
    cell.status = rec.status;
    return cell;
}

BuildResult build_from_seed(const BuildParams& params, const SeedFrame& seed,
                            const Tolerances& tol) {
    if (params.depth < 1) throw std::invalid_argument("depth must be positive");
    BuildResult res;
    res.log.params = params;

    SurfaceGraph tree = build_full_ternary_tree(params.depth);
    const int n = tree.vertex_count();
    Immersion& imm = res.immersion;
    imm.graph = tree;
    imm.positions.assign(n, Vec3::Zero());
    imm.prescribed_normals.assign(n, std::nullopt);
    imm.metadata["model"] = "built";
    imm.metadata["r"] = fmt(params.r);
    imm.metadata["depth"] = std::to_string(params.depth);
    imm.metadata["normals"] = "propagated";

    std::vector<Vec3> normals(n, Vec3::Zero());
    std::vector<char> placed(n, 0);

    // seed edge: root (id 0) and its e3 neighbor
    const int x3 = tree.triple(0)[2];
    imm.positions[0] = seed.pos0;
    imm.positions[x3] = seed.pos3;
    normals[0] = seed.n0.normalized();
    normals[x3] = seed.n3.normalized();
    placed[0] = placed[x3] = 1;

    // breadth-first cells: (center, anchor); the root and its e3 neighbor
    // anchor each other, every other vertex anchors at its tree parent
    std::deque<std::pair<int, int>> queue;
    queue.emplace_back(0, x3);
    if (!tree.is_leaf(x3)) queue.emplace_back(x3, 0);

    bool failed = false;
    while (!queue.empty() && !failed) {
        auto [center, anchor] = queue.front();
        queue.pop_front();
        const auto& t = tree.triple(center);
        SolvedCell cell =
            solve_adjacent(imm.positions[center], normals[center], imm.positions[anchor],
                           normals[anchor], params.k1(center), params.k2(center), params.r, tol);
        cell.record.center = center;
        cell.record.anchor = anchor;
        res.log.cells.push_back(cell.record);
        if (cell.status == CellStatus::Failed || cell.status == CellStatus::Degenerate) {
            res.log.error = "cell at vertex " + std::to_string(center) + ": " + cell.record.error;
            failed = true;
            break;
        }
        const int c1 = t[0], c2 = t[1];
        imm.positions[c1] = cell.x1;
        imm.positions[c2] = cell.x2;
        normals[c1] = cell.n1;
        normals[c2] = cell.n2;
        placed[c1] = placed[c2] = 1;
        if (!tree.is_leaf(c1)) queue.emplace_back(c1, center);
        if (!tree.is_leaf(c2)) queue.emplace_back(c2, center);
    }

    for (int v = 0; v < n; ++v)
        if (placed[v]) imm.prescribed_normals[v] = normals[v];
    res.log.complete = !failed;
    res.ok = !failed;
    return res;
}

BuildResult build(const BuildParams& params, const Tolerances& tol) {
    return build_from_seed(params, seed_frame(params), tol);
}

std::string build_log_json(const BuildLog& log) {
    std::string s = "{\n";
    s += "  \"r\": " + fmt(log.params.r) + ",\n";
    s += "  \"depth\": " + std::to_string(log.params.depth) + ",\n";
    s += "  \"theta1\": " + fmt(log.params.theta1) + ",\n";
    s += "  \"phi1\": " + fmt(log.params.phi1) + ",\n";
    s += "  \"theta2\": " + fmt(log.params.theta2) + ",\n";
    s += "  \"phi2\": " + fmt(log.params.phi2) + ",\n";
    s += "  \"complete\": " + std::string(log.complete ? "true" : "false") + ",\n";
    s += "  \"error\": \"" + log.error + "\",\n";
    s += "  \"cells\": [\n";
    for (size_t i = 0; i < log.cells.size(); ++i) {
        const CellRecord& c = log.cells[i];
        const char* status = c.status == CellStatus::Determined      ? "determined"
                             : c.status == CellStatus::Underdetermined ? "underdetermined"
                             : c.status == CellStatus::Degenerate      ? "degenerate"
                                                                       : "failed";
        s += "    {\"center\": " + std::to_string(c.center) +
             ", \"anchor\": " + std::to_string(c.anchor) + ", \"status\": \"" + status +
             "\", \"circle_radius\": " + fmt(c.circle_radius) + ", \"psi1\": " + fmt(c.psi1) +
             ", \"psi2\": " + fmt(c.psi2) + ", \"roots1\": " + std::to_string(c.roots1) +
             ", \"roots2\": " + std::to_string(c.roots2) + ", \"k1\": " + fmt(c.k1) +
             ", \"k2\": " + fmt(c.k2) + ", \"orientation\": " + fmt(c.orientation) + ", \"error\": \"" + c.error + "\"}";
        s += (i + 1 < log.cells.size()) ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

}  // namespace tsurf
