#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsurf/graph.hpp"
#include "tsurf/types.hpp"

namespace tsurf {

/// A discrete surface: a SurfaceGraph together with a 3-space position per
/// vertex. Prescribed normals, where present, supply the unit normal at
/// vertices whose geometry cannot provide one (leaves, frontier vertices).
struct Immersion {
    SurfaceGraph graph;
    std::vector<Vec3> positions;
    std::vector<std::optional<Vec3>> prescribed_normals;
    std::map<std::string, std::string> metadata;

    int vertex_count() const { return graph.vertex_count(); }
    const Vec3& position(int v) const { return positions.at(v); }

    /// Mean Euclidean edge length over all edges; 0 for edgeless graphs.
    double mean_edge_length() const;

    /// Side lengths of all edges, ordered as graph.edges().
    std::vector<double> edge_lengths() const;
};

/// Checks positions/normals array sizes and unit norm of prescribed normals
/// (within tol.unit). Rank conditions are checked per-vertex at analysis
/// time, not here. Throws std::invalid_argument naming the vertex.
void validate_immersion(const Immersion& imm, const Tolerances& tol = {});

}  // namespace tsurf
