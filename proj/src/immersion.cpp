#include "tsurf/immersion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tsurf {

double Immersion::mean_edge_length() const {
    auto lens = edge_lengths();
    if (lens.empty()) return 0.0;
    double sum = 0.0;
    for (double l : lens) sum += l;
    return sum / static_cast<double>(lens.size());
}

std::vector<double> Immersion::edge_lengths() const {
    std::vector<double> out;
    for (auto [a, b] : graph.edges()) out.push_back((positions[a] - positions[b]).norm());
    return out;
}

void validate_immersion(const Immersion& imm, const Tolerances& tol) {
    const int n = imm.graph.vertex_count();
    if (static_cast<int>(imm.positions.size()) != n)
        throw std::invalid_argument("immersion has " + std::to_string(imm.positions.size()) +
                                    " positions for " + std::to_string(n) + " vertices");
    if (!imm.prescribed_normals.empty() && static_cast<int>(imm.prescribed_normals.size()) != n)
        throw std::invalid_argument("prescribed normal array size mismatch");
    validate_graph(imm.graph);
    for (int v = 0; v < n; ++v) {
        if (v < static_cast<int>(imm.prescribed_normals.size()) && imm.prescribed_normals[v]) {
            const double len = imm.prescribed_normals[v]->norm();
            if (std::abs(len - 1.0) > tol.unit)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            ": prescribed normal has norm " + std::to_string(len));
        }
    }
}

}  // namespace tsurf
