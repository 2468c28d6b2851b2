#include "tsurf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tsurf {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string vec(const Vec3& v) {
    return "[" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + "]";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << text;
}

}  // namespace

std::string surface_to_json(const Immersion& imm) {
    std::string s = "{\n  \"format_version\": \"1\",\n  \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : imm.metadata) {
        if (!first) s += ", ";
        s += "\"" + k + "\": \"" + v + "\"";
        first = false;
    }
    s += "},\n  \"root\": " + std::to_string(imm.graph.root) + ",\n  \"vertices\": [\n";
    for (int v = 0; v < imm.vertex_count(); ++v) {
        s += "    {\"id\": " + std::to_string(v) + ", \"position\": " + vec(imm.positions[v]);
        if (imm.graph.is_leaf(v)) {
            s += ", \"neighbors\": null";
        } else {
            const auto& t = imm.graph.triples[v];
            s += ", \"neighbors\": [" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " +
                 std::to_string(t[2]) + "]";
        }
        if (v < static_cast<int>(imm.prescribed_normals.size()) && imm.prescribed_normals[v])
            s += ", \"normal\": " + vec(*imm.prescribed_normals[v]);
        s += (v + 1 < imm.vertex_count()) ? "},\n" : "}\n";
    }
    s += "  ]\n}\n";
    return s;
}

Immersion surface_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw DataError("missing \"vertices\" array");

    Immersion imm;
    const auto& verts = j["vertices"];
    const int n = static_cast<int>(verts.size());
    imm.graph.kinds.assign(n, VertexKind::Leaf);
    imm.graph.triples.assign(n, {-1, -1, -1});
    imm.positions.assign(n, Vec3::Zero());
    imm.prescribed_normals.assign(n, std::nullopt);
    std::vector<bool> seen(n, false);
    for (const auto& rec : verts) {
        if (!rec.contains("id") || !rec["id"].is_number_integer())
            throw DataError("vertex record without integer id");
        const int id = rec["id"].get<int>();
        if (id < 0 || id >= n) throw DataError("vertex " + std::to_string(id) + ": id out of range (ids must be dense 0..n-1)");
        if (seen[id]) throw DataError("vertex " + std::to_string(id) + ": duplicate id");
        seen[id] = true;
        const auto& pos = rec.at("position");
        if (!pos.is_array() || pos.size() != 3)
            throw DataError("vertex " + std::to_string(id) + ": position must be [x, y, z]");
        imm.positions[id] = Vec3(pos[0].get<double>(), pos[1].get<double>(), pos[2].get<double>());
        if (rec.contains("neighbors") && !rec["neighbors"].is_null()) {
            const auto& nb = rec["neighbors"];
            if (!nb.is_array() || nb.size() != 3)
                throw DataError("vertex " + std::to_string(id) +
                                ": neighbors must be an ordered triple or null");
            imm.graph.kinds[id] = VertexKind::Node;
            imm.graph.triples[id] = {nb[0].get<int>(), nb[1].get<int>(), nb[2].get<int>()};
        }
        if (rec.contains("normal") && !rec["normal"].is_null()) {
            const auto& nr = rec["normal"];
            if (!nr.is_array() || nr.size() != 3)
                throw DataError("vertex " + std::to_string(id) + ": normal must be [x, y, z]");
            imm.prescribed_normals[id] =
                Vec3(nr[0].get<double>(), nr[1].get<double>(), nr[2].get<double>());
        }
    }
    imm.graph.root = j.value("root", 0);
    if (imm.graph.root >= 0 && imm.graph.root < n && imm.graph.kinds[imm.graph.root] == VertexKind::Node)
        imm.graph.kinds[imm.graph.root] = VertexKind::Root;
    if (j.contains("metadata"))
        for (const auto& [k, v] : j["metadata"].items())
            imm.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    try {
        validate_immersion(imm);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    return imm;
}

void write_surface(const Immersion& imm, const std::string& path) {
    spit(path, surface_to_json(imm));
}

Immersion read_surface(const std::string& path) { return surface_from_json(slurp(path)); }

std::string surface_to_obj(const Immersion& imm) {
    std::string s;
    for (int v = 0; v < imm.vertex_count(); ++v) {
        const Vec3& p = imm.positions[v];
        s += "v " + fmt(p.x()) + " " + fmt(p.y()) + " " + fmt(p.z()) + "\n";
    }
    for (auto [a, b] : imm.graph.edges())
        s += "l " + std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
    return s;
}

void write_obj(const Immersion& imm, const std::string& path) {
    spit(path, surface_to_obj(imm));
}

AnalysisReport analyze_surface(const Immersion& imm, const Tolerances& tol) {
    AnalysisReport rep;
    Analyzer an(imm, tol);
    bool p1 = true, p2 = true;
    for (int v = 0; v < imm.vertex_count(); ++v) {
        if (imm.graph.is_leaf(v)) continue;
        VertexCurvature c = an.analyze(v);
        rep.curvature.push_back(c);
        if (!c.ok) continue;
        PrincipalReport pr = principal_report(an, v);
        rep.principal.push_back(pr);
        p1 = p1 && pr.is_principal1;
        p2 = p2 && pr.is_principal2;
        rep.max_abs_alpha3 = std::max(rep.max_abs_alpha3, std::abs(c.alpha[2]));
        rep.max_abs_beta3 = std::max(rep.max_abs_beta3, std::abs(c.beta[2]));
    }
    rep.principal_k1 = p1 && !rep.principal.empty();
    rep.principal_k2 = p2 && !rep.principal.empty();
    rep.cpc1 = cpc_verdict(imm, 1, tol);
    rep.cpc2 = cpc_verdict(imm, 2, tol);

    auto lens = imm.edge_lengths();
    if (!lens.empty()) {
        double sum = 0.0;
        for (double l : lens) sum += l;
        rep.bond_mean = sum / lens.size();
        for (double l : lens)
            rep.bond_spread = std::max(rep.bond_spread, std::abs(l - rep.bond_mean));
        rep.bond_spread /= rep.bond_mean;
        rep.constant_bond = rep.bond_spread < 1e3 * tol.num;
    }
    // alpha3/beta3 "zero" relative to the curvature scale 1/bond
    const double kscale = (rep.bond_mean > 0.0) ? 1.0 / rep.bond_mean : 1.0;
    rep.alpha3_zero = rep.max_abs_alpha3 < 1e-6 * kscale;
    rep.beta3_zero = rep.max_abs_beta3 < 1e-6 * kscale;
    return rep;
}

std::string report_to_json(const AnalysisReport& rep, const Immersion& imm) {
    nlohmann::ordered_json j;
    j["model"] = imm.metadata.count("model") ? imm.metadata.at("model") : "unknown";
    j["vertices"] = nlohmann::ordered_json::array();
    auto pr_by_vertex = [&](int v) -> const PrincipalReport* {
        for (const auto& p : rep.principal)
            if (p.vertex == v) return &p;
        return nullptr;
    };
    for (const auto& c : rep.curvature) {
        nlohmann::ordered_json row;
        row["id"] = c.vertex;
        row["ok"] = c.ok;
        if (c.rank_deficient) row["rank_deficient"] = true;
        if (c.missing_normals) row["missing_normals"] = true;
        if (c.singular_I) row["singular_I"] = true;
        if (!c.ok) {
            j["vertices"].push_back(row);
            continue;
        }
        row["H"] = c.H;
        row["K"] = c.K;
        if (c.complex_pair) {
            row["complex_pair"] = true;
        } else {
            row["k1"] = c.k1;
            row["k2"] = c.k2;
        }
        row["n"] = {c.n.x(), c.n.y(), c.n.z()};
        row["alpha"] = {c.alpha[0], c.alpha[1], c.alpha[2]};
        row["beta"] = {c.beta[0], c.beta[1], c.beta[2]};
        if (const PrincipalReport* p = pr_by_vertex(c.vertex)) {
            row["k_along_v1"] = p->k_along_v1;
            row["k_along_v2"] = p->k_along_v2;
            row["residual1"] = p->residual1;
            row["residual2"] = p->residual2;
            row["is_principal1"] = p->is_principal1;
            row["is_principal2"] = p->is_principal2;
            row["c_vector"] = {p->c_vector.x(), p->c_vector.y(), p->c_vector.z()};
            row["c_residual"] = p->c_residual;
        }
        j["vertices"].push_back(row);
    }
    auto verdict = [](const CPCVerdict& v) {
        nlohmann::ordered_json o;
        o["direction"] = v.direction;
        o["pass"] = v.pass;
        o["constant_value"] = v.constant_value;
        o["max_deviation"] = v.max_deviation;
        o["vertices_checked"] = v.vertices_checked;
        return o;
    };
    j["cpc"] = {verdict(rep.cpc1), verdict(rep.cpc2)};
    j["conditions"]["principal_k1"] = rep.principal_k1;
    j["conditions"]["principal_k2"] = rep.principal_k2;
    j["conditions"]["alpha3_zero"] = rep.alpha3_zero;
    j["conditions"]["beta3_zero"] = rep.beta3_zero;
    j["conditions"]["constant_bond"] = rep.constant_bond;
    j["conditions"]["max_abs_alpha3"] = rep.max_abs_alpha3;
    j["conditions"]["max_abs_beta3"] = rep.max_abs_beta3;
    j["bond"]["mean"] = rep.bond_mean;
    j["bond"]["relative_spread"] = rep.bond_spread;
    return j.dump(2) + "\n";
}

std::string report_condition_table(const AnalysisReport& rep, const std::string& name) {
    auto yn = [](bool b) { return b ? "yes" : "no "; };
    char line[160];
    std::string s;
    s += "model        | principal k1 | principal k2 | alpha3 = 0 | beta3 = 0 | constant bond\n";
    s += "-------------+--------------+--------------+------------+-----------+--------------\n";
    std::snprintf(line, sizeof(line), "%-12s | %-12s | %-12s | %-10s | %-9s | %s\n", name.c_str(),
                  yn(rep.principal_k1), yn(rep.principal_k2), yn(rep.alpha3_zero),
                  yn(rep.beta3_zero), yn(rep.constant_bond));
    s += line;
    return s;
}

}  // namespace tsurf
