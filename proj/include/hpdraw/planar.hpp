#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hpdraw/reconciliation.hpp"

namespace hpdraw {

enum class EdgeKind : uint8_t { HostArc, ParasiteArc, Tangle, RootLink, Other };

// H and P side by side plus the tangles (p, phi(p)) and the root-link
// (r(H), r(P)). Vertices 0..nH-1 are host nodes, nH..nH+nP-1 parasite nodes.
// Planarity of this graph characterizes the planar instances.
struct UnionGraph {
    int vertex_count = 0;
    int host_count = 0;      // 0 when the graph is synthetic (tests)
    int parasite_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<EdgeKind> kinds;

    int host_vertex(NodeId h) const { return h; }
    int parasite_vertex(NodeId p) const { return host_count + p; }
    int edge_count() const { return static_cast<int>(edges.size()); }

    int add_edge(int u, int v, EdgeKind k) {
        edges.emplace_back(u, v);
        kinds.push_back(k);
        return edge_count() - 1;
    }
};

// Rotation system: for each vertex the cyclic order of incident edge ids.
// A fixed global orientation is implied; the mirror image is equivalent.
struct PlanarEmbedding {
    std::vector<std::vector<int>> rotation;
    int face_count = 0;
    int outer_face = 0;  // face incident to the root-link when one exists
};

// Deterministic planarity test with embedding extraction (Boyer-Myrvold).
// Parallel edges are allowed; they are embedded adjacent to each other.
std::optional<PlanarEmbedding> test_planarity(const UnionGraph& g);

// Errors if phi maps a parasite leaf to a non-leaf host.
UnionGraph build_union_graph(const PhyloTree& host, const PhyloTree& parasite,
                             const std::vector<NodeId>& phi);

bool is_planar_instance(const PhyloTree& host, const PhyloTree& parasite,
                        const std::vector<NodeId>& phi);

// Host child orders and per-host-leaf parasite leaf orders read off an
// embedding; the complete input a canonical coordinate assignment needs.
struct LayoutOrders {
    // By host node; meaningful for internal hosts.
    std::vector<std::array<NodeId, 2>> host_children;
    // By host node; meaningful for host leaves: parasite leaves left-to-right.
    std::vector<std::vector<NodeId>> parasites_in_leaf;
};

// Reads orders from an embedding of a union graph (or planar subgraph that
// still contains all host arcs, tangles and the root-link).
LayoutOrders extract_orders(const PlanarEmbedding& e, const UnionGraph& g,
                            const PhyloTree& host, const PhyloTree& parasite);

// Left-to-right order of the parasite leaves induced by the embedding.
// Uses the parasite tree's own rotations when all its arcs are present in
// the embedded graph, the host-side rotations otherwise.
std::vector<NodeId> leaf_order_from_embedding(const PlanarEmbedding& e, const UnionGraph& g,
                                              const PhyloTree& host, const PhyloTree& parasite);

struct MPSResult {
    UnionGraph planar_subgraph;
    PlanarEmbedding embedding;
    std::vector<std::pair<NodeId, NodeId>> non_planar_arcs;     // parasite arcs (parent, child)
    std::vector<std::pair<NodeId, NodeId>> missing_arcs_order;  // insertion order tried
};

// Maximal planar subgraph of the union graph: all host arcs, the root-link,
// all tangles, one non-switch child arc per internal parasite, then greedy
// re-insertion of the remaining arcs in (depth, label) order.
MPSResult maximal_planar_subgraph(const Reconciliation& rec);

}  // namespace hpdraw
