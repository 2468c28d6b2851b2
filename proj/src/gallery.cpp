#include "tsurf/gallery.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tsurf {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Incrementally assembled node/leaf table: nodes are registered up front,
/// every dangling triple slot becomes a fresh leaf with a prescribed normal.
struct Assembler {
    Immersion imm;
    std::map<std::tuple<int, int, int>, int> node_ids;  // (type, i, j) -> id

    int node(int type, int i, int j, const Vec3& pos, const Vec3& normal) {
        const int id = imm.graph.add_node({-1, -1, -1});
        imm.positions.push_back(pos);
        imm.prescribed_normals.push_back(normal);
        node_ids[{type, i, j}] = id;
        return id;
    }

    int resolve(int type, int i, int j, const Vec3& pos, const Vec3& normal) {
        auto it = node_ids.find({type, i, j});
        if (it != node_ids.end()) return it->second;
        const int id = imm.graph.add_leaf();
        imm.positions.push_back(pos);
        imm.prescribed_normals.push_back(normal);
        return id;
    }
};

}  // namespace

Immersion hexagonal_plane(double bond, int depth) {
    if (bond <= 0.0) throw std::invalid_argument("bond must be positive");
    if (depth <= 0) throw std::invalid_argument("depth must be positive");
    const Vec3 a1(1.5 * bond, 0.5 * std::sqrt(3.0) * bond, 0.0);
    const Vec3 a2(1.5 * bond, -0.5 * std::sqrt(3.0) * bond, 0.0);
    const Vec3 off(bond, 0.0, 0.0);
    const Vec3 up(0.0, 0.0, 1.0);
    auto posA = [&](int i, int j) { return Vec3(i * a1 + j * a2); };
    auto posB = [&](int i, int j) { return Vec3(i * a1 + j * a2 + off); };

    Assembler as;
    const int d = depth;
    for (int i = -d; i <= d; ++i)
        for (int j = -d; j <= d; ++j) {
            as.node(0, i, j, posA(i, j), up);
            as.node(1, i, j, posB(i, j), up);
        }
    for (int i = -d; i <= d; ++i)
        for (int j = -d; j <= d; ++j) {
            const int a = as.node_ids[{0, i, j}];
            const std::array<int, 3> ta = {as.resolve(1, i, j, posB(i, j), up),
                                           as.resolve(1, i, j - 1, posB(i, j - 1), up),
                                           as.resolve(1, i - 1, j, posB(i - 1, j), up)};
            as.imm.graph.triples[a] = ta;
            const int b = as.node_ids[{1, i, j}];
            const std::array<int, 3> tb = {as.resolve(0, i, j, posA(i, j), up),
                                           as.resolve(0, i, j + 1, posA(i, j + 1), up),
                                           as.resolve(0, i + 1, j, posA(i + 1, j), up)};
            as.imm.graph.triples[b] = tb;
        }
    as.imm.graph.root = as.node_ids[{0, 0, 0}];
    as.imm.metadata["model"] = "hexplane";
    as.imm.metadata["bond"] = fmt(bond);
    return as.imm;
}

Immersion chiral_cylinder(const ChiralParams& p) {
    if (p.r <= 0.0) throw std::invalid_argument("r must be positive");
    if (!(p.theta > 0.0 && p.theta < kPi))
        throw std::invalid_argument("theta must lie in (0, pi): vertices collide otherwise");
    if (p.h == 0.0) throw std::invalid_argument("h must be nonzero");
    if (p.rings < 1 || p.turns < 1) throw std::invalid_argument("rings/turns must be positive");

    // A columns advance by 2*theta; the tube closes after m columns when
    // m * theta is a multiple of pi.
    int close_m = 0;
    for (int m = 1; m <= 4096; ++m) {
        const double k = m * p.theta / kPi;
        if (std::abs(k - std::round(k)) < 1e-9 && std::round(k) >= 1.0) {
            close_m = m;
            break;
        }
    }
    const bool closed = (close_m > 0 && p.turns >= close_m);
    const int cols = closed ? close_m : p.turns;
    const int rows = p.rings;

    const double h = std::abs(p.h);
    auto posA = [&](int i, int j) {
        const double a = 2.0 * i * p.theta;
        return Vec3(p.r * std::cos(a), p.r * std::sin(a), 2.0 * j * h);
    };
    auto posB = [&](int i, int j) {
        const double a = (2.0 * i + 1.0) * p.theta;
        return Vec3(p.r * std::cos(a), p.r * std::sin(a), (2.0 * j - 1.0) * h);
    };
    auto radial = [&](const Vec3& q) { return Vec3(q.x(), q.y(), 0.0).normalized(); };

    Assembler as;
    auto wrap = [&](int i) { return closed ? ((i % cols) + cols) % cols : i; };
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            as.node(0, i, j, posA(i, j), radial(posA(i, j)));
            as.node(1, i, j, posB(i, j), radial(posB(i, j)));
        }
    auto ref = [&](int type, int i, int j) {
        const Vec3 q = (type == 0) ? posA(i, j) : posB(i, j);
        const int iw = (j >= 0 && j < rows) ? wrap(i) : i;  // wrap only for node lookups
        return as.resolve(type, iw, j, q, radial(q));
    };
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i) {
            // v1 circumferential (k1-direction), v2 axial, normal outward
            const int a = as.node_ids[{0, i, j}];
            const std::array<int, 3> ta = {ref(1, i, j), ref(1, i - 1, j + 1), ref(1, i - 1, j)};
            as.imm.graph.triples[a] = ta;
            const int b = as.node_ids[{1, i, j}];
            const std::array<int, 3> tb = {ref(0, i, j), ref(0, i + 1, j - 1), ref(0, i + 1, j)};
            as.imm.graph.triples[b] = tb;
        }
    as.imm.graph.root = as.node_ids[{0, 0, 0}];
    const double bond2 = 2.0 * p.r * p.r * (1.0 - std::cos(p.theta)) + h * h;
    as.imm.metadata["model"] = "chiral";
    as.imm.metadata["r"] = fmt(p.r);
    as.imm.metadata["theta"] = fmt(p.theta);
    as.imm.metadata["h"] = fmt(h);
    as.imm.metadata["bond"] = fmt(std::sqrt(bond2));
    as.imm.metadata["closed"] = closed ? "true" : "false";
    as.imm.metadata["orientation"] = "outward";
    return as.imm;
}

ArmchairCell solve_armchair_cell(double r, int m) {
    if (r <= 0.0) throw std::invalid_argument("r must be positive");
    if (m < 3) throw std::invalid_argument("m must be at least 3");
    const double delta = 2.0 * kPi / m;

    // Representative cell at pair center angle 0: A at -eps, pair partner at
    // +eps, diagonal partners at -(delta/2 - eps), heights +-a.
    auto F = [&](double eps, double a, double& f1, double& f2) {
        const double g = 0.5 * delta - 2.0 * eps;
        const Vec3 A(r * std::cos(eps), -r * std::sin(eps), 0.0);
        const Vec3 B(r * std::cos(eps), r * std::sin(eps), 0.0);
        const double tu = 0.5 * delta - eps;  // diagonal target at angle -tu
        const Vec3 U(r * std::cos(tu), -r * std::sin(tu), a);
        const Vec3 D(r * std::cos(tu), -r * std::sin(tu), -a);
        const Vec3 ep = B - A, eu = U - A, ed = D - A;
        f1 = eu.squaredNorm() - ep.squaredNorm();
        f2 = ep.dot(eu) - eu.dot(ed);
        (void)g;
    };

    double eps = kPi / (3.0 * m);
    double a = std::sqrt(3.0) * r * eps;
    ArmchairCell cell;
    const double scale = r * r;
    for (int it = 0; it < 100; ++it) {
        double f1, f2;
        F(eps, a, f1, f2);
        cell.residual = std::max(std::abs(f1), std::abs(f2)) / scale;
        cell.iterations = it;
        if (cell.residual < 1e-13) break;
        const double de = 1e-7, da = 1e-7;
        double f1e, f2e, f1a, f2a, f1e2, f2e2, f1a2, f2a2;
        F(eps + de, a, f1e, f2e);
        F(eps - de, a, f1e2, f2e2);
        F(eps, a + da, f1a, f2a);
        F(eps, a - da, f1a2, f2a2);
        const double j11 = (f1e - f1e2) / (2 * de), j12 = (f1a - f1a2) / (2 * da);
        const double j21 = (f2e - f2e2) / (2 * de), j22 = (f2a - f2a2) / (2 * da);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-30) break;
        double se = (-f1 * j22 + f2 * j12) / det;
        double sa = (-j11 * f2 + j21 * f1) / det;
        // damp steps that would leave the feasible wedge
        double lambda = 1.0;
        while (lambda > 1e-6 &&
               (eps + lambda * se <= 0.0 || eps + lambda * se >= delta / 4.0 ||
                a + lambda * sa <= 0.0))
            lambda *= 0.5;
        eps += lambda * se;
        a += lambda * sa;
    }
    double f1, f2;
    F(eps, a, f1, f2);
    cell.residual = std::max(std::abs(f1), std::abs(f2)) / scale;
    if (cell.residual > 1e-12)
        throw std::runtime_error("armchair equal-bond system did not converge for m = " +
                                 std::to_string(m) + " (residual " + std::to_string(cell.residual) +
                                 ")");
    cell.eps = eps;
    cell.axial = a;
    cell.bond = 2.0 * r * std::sin(eps);
    return cell;
}

Immersion armchair_cylinder(double r, int m, int levels) {
    if (levels < 1) throw std::invalid_argument("levels must be positive");
    const ArmchairCell cell = solve_armchair_cell(r, m);
    const double delta = 2.0 * kPi / m;
    const int rows = 2 * levels;

    auto center = [&](int k, int j) { return j * delta + (((k % 2) + 2) % 2) * 0.5 * delta; };
    auto posA = [&](int k, int j) {
        const double ang = center(k, j) - cell.eps;
        return Vec3(r * std::cos(ang), r * std::sin(ang), k * cell.axial);
    };
    auto posB = [&](int k, int j) {
        const double ang = center(k, j) + cell.eps;
        return Vec3(r * std::cos(ang), r * std::sin(ang), k * cell.axial);
    };
    // diagonal partner column: A_{k,j} pairs with B_{k+-1, j-1+k%2},
    // B_{k,j} with A_{k+-1, j+k%2}
    auto jA = [&](int k, int j) { return j - 1 + (((k % 2) + 2) % 2); };
    auto jB = [&](int k, int j) { return j + (((k % 2) + 2) % 2); };

    // infinite-model unit normal, used both as node data and as the exact
    // prescribed normal at frontier leaves (tilted, horizontal)
    auto normalA = [&](int k, int j) {
        const Vec3 x1 = posB(k, j), x2 = posB(k + 1, jA(k, j)), x3 = posB(k - 1, jA(k, j));
        Vec3 n = (x1 - x3).cross(x2 - x3).normalized();
        const Vec3 p = posA(k, j);
        if (n.dot(Vec3(p.x(), p.y(), 0.0)) < 0.0) n = -n;
        return n;
    };
    auto normalB = [&](int k, int j) {
        const Vec3 x1 = posA(k, j), x2 = posA(k + 1, jB(k, j)), x3 = posA(k - 1, jB(k, j));
        Vec3 n = (x1 - x3).cross(x2 - x3).normalized();
        const Vec3 p = posB(k, j);
        if (n.dot(Vec3(p.x(), p.y(), 0.0)) < 0.0) n = -n;
        return n;
    };

    Assembler as;
    auto wrap = [&](int j) { return ((j % m) + m) % m; };
    for (int k = 0; k < rows; ++k)
        for (int j = 0; j < m; ++j) {
            as.node(0, j, k, posA(k, j), normalA(k, j));
            as.node(1, j, k, posB(k, j), normalB(k, j));
        }
    auto ref = [&](int type, int k, int j) {
        const Vec3 q = (type == 0) ? posA(k, j) : posB(k, j);
        const Vec3 n = (type == 0) ? normalA(k, j) : normalB(k, j);
        const int jw = (k >= 0 && k < rows) ? wrap(j) : j;
        return as.resolve(type, jw, k, q, n);
    };
    // orientation fixed by construction below; verified in the generator tests
    for (int k = 0; k < rows; ++k)
        for (int j = 0; j < m; ++j) {
            const int a = as.node_ids[{0, j, k}];
            const int ja = jA(k, j);
            const std::array<int, 3> ta = {ref(1, k, j), ref(1, k + 1, ja), ref(1, k - 1, ja)};
            as.imm.graph.triples[a] = ta;
            const int b = as.node_ids[{1, j, k}];
            const int jb = jB(k, j);
            const std::array<int, 3> tb = {ref(0, k, j), ref(0, k - 1, jb), ref(0, k + 1, jb)};
            as.imm.graph.triples[b] = tb;
        }
    as.imm.graph.root = as.node_ids[{0, 0, 0}];
    as.imm.metadata["model"] = "armchair";
    as.imm.metadata["r"] = fmt(r);
    as.imm.metadata["m"] = std::to_string(m);
    as.imm.metadata["bond"] = fmt(cell.bond);
    as.imm.metadata["orientation"] = "outward";
    return as.imm;
}

Immersion cpc_torus(const TorusParams& p) {
    if (!(p.r2 > p.r1 && p.r1 > 0.0)) throw std::invalid_argument("need r2 > r1 > 0");
    if (p.N < 2) throw std::invalid_argument("N must be at least 2 to close the torus");
    const int N = p.N;
    const double delta = kPi / N;
    auto f = [&](double u, double v) {
        return Vec3((p.r1 * std::cos(u) + p.r2) * std::cos(v),
                    (p.r1 * std::cos(u) + p.r2) * std::sin(v), p.r1 * std::sin(u));
    };
    auto nu = [&](double u, double v) {
        return Vec3(std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), std::sin(u));
    };

    // four rows, N vertices each: O (outer equator), T (top), I (inner), D
    // (bottom); ids O=i, T=N+i, I=2N+i, D=3N+i
    Immersion imm;
    imm.graph.kinds.assign(4 * N, VertexKind::Node);
    imm.graph.triples.assign(4 * N, {-1, -1, -1});
    imm.positions.resize(4 * N);
    imm.prescribed_normals.resize(4 * N);
    auto idO = [&](int i) { return ((i % N) + N) % N; };
    auto idT = [&](int i) { return N + ((i % N) + N) % N; };
    auto idI = [&](int i) { return 2 * N + ((i % N) + N) % N; };
    auto idD = [&](int i) { return 3 * N + ((i % N) + N) % N; };
    for (int i = 0; i < N; ++i) {
        const double ve = 2.0 * i * delta;        // equator rows
        const double vn = (2.0 * i + 1) * delta;  // node rows
        imm.positions[idO(i)] = f(0.0, ve);
        imm.positions[idT(i)] = f(0.5 * kPi, vn);
        imm.positions[idI(i)] = f(kPi, ve);
        imm.positions[idD(i)] = f(1.5 * kPi, vn);
        imm.prescribed_normals[idO(i)] = -nu(0.0, ve);
        imm.prescribed_normals[idT(i)] = -nu(0.5 * kPi, vn);
        imm.prescribed_normals[idI(i)] = -nu(kPi, ve);
        imm.prescribed_normals[idD(i)] = -nu(1.5 * kPi, vn);
        // v1 = tube diameter chord, v2 = row chord, all cells share the
        // vertex on both curvature circles in slot 3
        imm.graph.triples[idO(i)] = {idD(i), idT(i - 1), idT(i)};
        imm.graph.triples[idT(i)] = {idI(i), idO(i + 1), idO(i)};
        imm.graph.triples[idI(i)] = {idT(i), idD(i - 1), idD(i)};
        imm.graph.triples[idD(i)] = {idO(i), idI(i + 1), idI(i)};
    }
    imm.graph.root = 0;
    imm.metadata["model"] = "torus";
    imm.metadata["r1"] = fmt(p.r1);
    imm.metadata["r2"] = fmt(p.r2);
    imm.metadata["N"] = std::to_string(N);
    imm.metadata["orientation"] = "tube-inward";
    imm.metadata["normal_sign"] = "-1";
    return imm;
}

Immersion truncated_icosahedron(double rho) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    std::vector<Vec3> pts;
    auto add_even_perms = [&](double a, double b, double c) {
        pts.emplace_back(a, b, c);
        pts.emplace_back(c, a, b);
        pts.emplace_back(b, c, a);
    };
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) add_even_perms(0.0, s1 * 1.0, s2 * 3.0 * phi);
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1})
            for (int s3 : {-1, 1}) {
                add_even_perms(s1 * 1.0, s2 * (2.0 + phi), s3 * 2.0 * phi);
                add_even_perms(s1 * 2.0, s2 * (1.0 + 2.0 * phi), s3 * phi);
            }
    if (pts.size() != 60) throw std::logic_error("truncated icosahedron vertex count");

    const double circum = std::sqrt(10.0 + 9.0 * phi);  // |(0,1,3phi)|
    const double scale = rho / circum;

    Immersion imm;
    imm.graph.kinds.assign(60, VertexKind::Node);
    imm.graph.triples.assign(60, {-1, -1, -1});
    imm.positions.resize(60);
    imm.prescribed_normals.resize(60);
    for (int v = 0; v < 60; ++v) imm.positions[v] = scale * pts[v];

    // edges join vertices at distance 2 in the unscaled set
    for (int v = 0; v < 60; ++v) {
        std::array<int, 3> nb{-1, -1, -1};
        int found = 0;
        for (int w = 0; w < 60 && found < 3; ++w) {
            if (w == v) continue;
            if (std::abs((pts[v] - pts[w]).norm() - 2.0) < 1e-9) nb[found++] = w;
        }
        if (found != 3) throw std::logic_error("truncated icosahedron adjacency");
        Vec3 n = (pts[nb[0]] - pts[nb[2]]).cross(pts[nb[1]] - pts[nb[2]]);
        if (n.dot(pts[v]) < 0.0) std::swap(nb[0], nb[1]);  // outward orientation
        imm.graph.triples[v] = nb;
        imm.prescribed_normals[v] = imm.positions[v].normalized();
    }
    imm.graph.root = 0;
    imm.metadata["model"] = "trunc-icosa";
    imm.metadata["rho"] = fmt(rho);
    imm.metadata["bond"] = fmt(2.0 * scale);
    imm.metadata["orientation"] = "outward";
    return imm;
}

}  // namespace tsurf
