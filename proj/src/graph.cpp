#include "tsurf/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace tsurf {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

bool has_triple(const SurfaceGraph& g, int v) { return g.triples[v][0] >= 0; }

}  // namespace

const std::array<int, 3>& SurfaceGraph::triple(int v) const {
    if (v < 0 || v >= vertex_count()) fail("vertex " + std::to_string(v) + ": out of range");
    if (is_leaf(v)) fail("vertex " + std::to_string(v) + ": leaves carry no ordered triple");
    return triples[v];
}

std::vector<std::pair<int, int>> SurfaceGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < vertex_count(); ++v) {
        if (is_leaf(v) || !has_triple(*this, v)) continue;
        for (int w : triples[v]) {
            if (is_leaf(w) || v < w) out.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int SurfaceGraph::add_node(const std::array<int, 3>& tri) {
    kinds.push_back(VertexKind::Node);
    triples.push_back(tri);
    return vertex_count() - 1;
}

int SurfaceGraph::add_leaf() {
    kinds.push_back(VertexKind::Leaf);
    triples.push_back({-1, -1, -1});
    return vertex_count() - 1;
}

void validate_graph(const SurfaceGraph& g, bool expect_tree) {
    const int n = g.vertex_count();
    if (static_cast<int>(g.triples.size()) != n) fail("kinds/triples size mismatch");
    if (g.root < 0 || g.root >= n || g.is_leaf(g.root)) fail("root must be a non-leaf vertex");
    if (n == 1) return;  // single-vertex tree, no edges

    std::vector<int> leaf_refs(n, 0);
    for (int v = 0; v < n; ++v) {
        if (g.is_leaf(v)) continue;
        if (!has_triple(g, v))
            fail("vertex " + std::to_string(v) + ": non-leaf vertex without ordered triple");
        for (int w : g.triples[v]) {
            if (w < 0 || w >= n)
                fail("vertex " + std::to_string(v) + ": triple references missing vertex " +
                     std::to_string(w));
            if (g.is_leaf(w)) {
                ++leaf_refs[w];
            } else {
                const auto& tw = g.triples[w];
                if (std::count(tw.begin(), tw.end(), v) !=
                    std::count(g.triples[v].begin(), g.triples[v].end(), w))
                    fail("vertex " + std::to_string(v) + ": adjacency with " + std::to_string(w) +
                         " is not mutual");
            }
        }
    }
    for (int v = 0; v < n; ++v) {
        if (g.is_leaf(v) && leaf_refs[v] != 1)
            fail("vertex " + std::to_string(v) + ": leaf has " + std::to_string(leaf_refs[v]) +
                 " incident edges, expected 1");
    }

    if (expect_tree) {
        std::vector<int> parent(n, -2);
        std::deque<int> queue{g.root};
        parent[g.root] = -1;
        int seen = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (g.is_leaf(v)) continue;
            for (int w : g.triples[v]) {
                if (w == parent[v]) continue;
                if (parent[w] != -2) fail("vertex " + std::to_string(w) + ": cycle in tree");
                parent[w] = v;
                ++seen;
                queue.push_back(w);
            }
        }
        if (seen != n) fail("tree is not connected");
    }
}

void validate_covering(const CoveringMap& c) {
    if (c.target == nullptr) fail("covering map has no target");
    validate_graph(c.source, true);
    const SurfaceGraph& t = *c.target;
    if (static_cast<int>(c.vertex_map.size()) != c.source.vertex_count())
        fail("vertex_map size mismatch");
    for (int v = 0; v < c.source.vertex_count(); ++v) {
        int g = c.vertex_map[v];
        if (g < 0 || g >= t.vertex_count())
            fail("vertex " + std::to_string(v) + ": maps outside target");
        if (c.source.is_leaf(v)) continue;
        if (t.is_leaf(g)) fail("vertex " + std::to_string(v) + ": non-leaf maps onto target leaf");
        for (int i = 0; i < 3; ++i) {
            if (c.vertex_map[c.source.triples[v][i]] != t.triples[g][i])
                fail("vertex " + std::to_string(v) + ": slot " + std::to_string(i + 1) +
                     " is not label-compatible");
        }
    }
}

SurfaceGraph build_full_ternary_tree(int depth) {
    if (depth < 0) fail("depth must be non-negative");
    SurfaceGraph g;
    g.kinds.push_back(VertexKind::Root);
    g.triples.push_back({-1, -1, -1});
    g.root = 0;
    if (depth == 0) return g;

    struct Item {
        int id;
        int dist;
    };
    std::deque<Item> queue{{0, 0}};
    while (!queue.empty()) {
        auto [v, dist] = queue.front();
        queue.pop_front();
        if (dist == depth) continue;
        const int nchildren = (v == 0) ? 3 : 2;
        for (int c = 0; c < nchildren; ++c) {
            const int id = g.vertex_count();
            g.kinds.push_back(dist + 1 == depth ? VertexKind::Leaf : VertexKind::Node);
            g.triples.push_back({-1, -1, -1});
            g.triples[v][c] = id;
            if (dist + 1 < depth) g.triples[id][2] = v;  // parent in e3
            queue.push_back({id, dist + 1});
        }
    }
    return g;
}

CoveringMap unroll_covering(const SurfaceGraph& graph, int root, int depth) {
    if (root < 0 || root >= graph.vertex_count() || graph.is_leaf(root))
        fail("unroll root must be a non-leaf vertex");
    if (depth < 0) fail("depth must be non-negative");
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (!graph.is_leaf(v) && !has_triple(graph, v))
            fail("vertex " + std::to_string(v) + ": graph is not locally trivalent");
    }

    CoveringMap c;
    c.target = &graph;
    SurfaceGraph& tree = c.source;
    tree.kinds.push_back(VertexKind::Root);
    tree.triples.push_back({-1, -1, -1});
    tree.root = 0;
    c.vertex_map.push_back(root);

    struct Pending {
        int tree_vertex;
        int graph_vertex;
        int parent_slot;  // slot of tree_vertex pointing back to its parent, -1 at the root
        int dist;
    };
    std::deque<Pending> queue{{0, root, -1, 0}};
    while (!queue.empty()) {
        Pending p = queue.front();
        queue.pop_front();
        if (p.dist >= depth || graph.is_leaf(p.graph_vertex)) {
            if (p.tree_vertex != 0) tree.kinds[p.tree_vertex] = VertexKind::Leaf;
            tree.triples[p.tree_vertex] = {-1, -1, -1};
            continue;
        }
        if (p.tree_vertex != 0) tree.kinds[p.tree_vertex] = VertexKind::Node;
        for (int i = 0; i < 3; ++i) {
            if (i == p.parent_slot) continue;
            const int gnext = graph.triples[p.graph_vertex][i];
            const int id = tree.vertex_count();
            tree.kinds.push_back(VertexKind::Leaf);
            tree.triples.push_back({-1, -1, -1});
            tree.triples[p.tree_vertex][i] = id;
            c.vertex_map.push_back(gnext);
            // Slot of gnext referencing p.graph_vertex; parallel edges are
            // paired in slot order so each directed edge has one reverse.
            int back = -1;
            if (!graph.is_leaf(gnext)) {
                int skip = 0;
                for (int k = 0; k < i; ++k)
                    if (graph.triples[p.graph_vertex][k] == gnext) ++skip;
                for (int k = 0; k < 3; ++k) {
                    if (graph.triples[gnext][k] == p.graph_vertex) {
                        if (skip == 0) {
                            back = k;
                            break;
                        }
                        --skip;
                    }
                }
            }
            if (back >= 0) tree.triples[id][back] = p.tree_vertex;
            queue.push_back({id, gnext, back, p.dist + 1});
        }
    }
    return c;
}

SurfaceGraph relabel(const SurfaceGraph& graph, int vertex, const std::array<int, 3>& perm) {
    std::array<int, 3> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{0, 1, 2}) fail("not a permutation of {1,2,3}");
    if (vertex < 0 || vertex >= graph.vertex_count()) fail("relabel: vertex out of range");
    if (graph.is_leaf(vertex)) fail("vertex " + std::to_string(vertex) + ": cannot relabel a leaf");
    SurfaceGraph out = graph;
    for (int i = 0; i < 3; ++i) out.triples[vertex][i] = graph.triples[vertex][perm[i]];
    return out;
}

}  // namespace tsurf
