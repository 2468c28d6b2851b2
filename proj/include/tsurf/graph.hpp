#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace tsurf {

enum class VertexKind : std::uint8_t { Root, Node, Leaf };

/// Combinatorial substrate shared by full 3-ary oriented trees and trivalent
/// graphs: dense integer vertex ids, and an ordered neighbor triple
/// (e1, e2, e3) at every non-leaf vertex. Leaves carry no triple and must be
/// referenced by exactly one triple slot. Immutable by convention once built.
struct SurfaceGraph {
    std::vector<VertexKind> kinds;
    std::vector<std::array<int, 3>> triples;  // {-1,-1,-1} at leaves
    int root = 0;

    int vertex_count() const { return static_cast<int>(kinds.size()); }
    bool is_leaf(int v) const { return kinds.at(v) == VertexKind::Leaf; }

    /// Ordered triple of v. Throws std::invalid_argument if v is a leaf.
    const std::array<int, 3>& triple(int v) const;

    /// Undirected edge list, each pair with (small id, large id), sorted.
    /// Parallel edges appear with their multiplicity.
    std::vector<std::pair<int, int>> edges() const;

    int add_node(const std::array<int, 3>& tri);
    int add_leaf();
};

/// Checks the structural invariants: triple slots reference existing
/// vertices, mutual adjacency between non-leaf vertices, leaves referenced
/// exactly once. With expect_tree also checks acyclicity and connectivity.
/// Throws std::invalid_argument naming the offending vertex.
void validate_graph(const SurfaceGraph& g, bool expect_tree = false);

/// Tree covering a trivalent graph: label-compatible local isomorphism.
struct CoveringMap {
    SurfaceGraph source;          // full 3-ary tree
    const SurfaceGraph* target = nullptr;
    std::vector<int> vertex_map;  // source vertex -> target vertex
};

/// Checks that vertex_map sends every non-leaf source triple onto the
/// target triple slot-by-slot. Throws on violation.
void validate_covering(const CoveringMap& c);

/// Full 3-ary oriented tree: the root has three children, every other
/// non-leaf vertex has its parent in slot e3 and two children in e1, e2.
/// Vertices at distance `depth` from the root are leaves. Ids are assigned
/// breadth-first, so vertex count = 1 + 3*(2^depth - 1).
SurfaceGraph build_full_ternary_tree(int depth);

/// Unrolls `graph` into a full 3-ary tree of the given depth rooted over
/// `root`, walking edges and inheriting local labels (Remark-style covering).
CoveringMap unroll_covering(const SurfaceGraph& graph, int root, int depth);

/// Copy of `graph` with the ordered triple at `vertex` permuted:
/// new_triple[i] = old_triple[perm[i]], perm a permutation of {0,1,2}.
SurfaceGraph relabel(const SurfaceGraph& graph, int vertex, const std::array<int, 3>& perm);

}  // namespace tsurf
