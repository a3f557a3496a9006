#include "hpdraw/planar.hpp"

#include <algorithm>
#include <map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace hpdraw {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                          boost::property<boost::edge_index_t, int>>;

// Face count by tracing dart orbits; also locates the face of `seek_edge`.
// Dart id: 2*edge + (0 if traversed first->second, 1 if second->first).
void trace_faces(const UnionGraph& g, PlanarEmbedding& e, int seek_edge) {
    const int m = g.edge_count();
    std::vector<std::map<int, int>> at(g.vertex_count);  // edge -> index in rotation[v]
    for (int v = 0; v < g.vertex_count; ++v)
        for (int i = 0; i < static_cast<int>(e.rotation[v].size()); ++i)
            at[v][e.rotation[v][i]] = i;

    auto next_dart = [&](int dart) {
        int ed = dart / 2;
        int head = dart % 2 == 0 ? g.edges[ed].second : g.edges[ed].first;
        const auto& rot = e.rotation[head];
        int i = at[head].at(ed);
        int ed2 = rot[(i + 1) % rot.size()];
        return 2 * ed2 + (g.edges[ed2].first == head ? 0 : 1);
    };

    std::vector<char> seen(2 * m, 0);
    e.face_count = 0;
    e.outer_face = 0;
    for (int start = 0; start < 2 * m; ++start) {
        if (seen[start]) continue;
        int face = e.face_count++;
        for (int dart = start; !seen[dart]; dart = next_dart(dart)) {
            seen[dart] = 1;
            if (dart / 2 == seek_edge) e.outer_face = face;
        }
    }
}

}  // namespace

std::optional<PlanarEmbedding> test_planarity(const UnionGraph& g) {
    // Deduplicate parallel edges; planarity is unaffected and Boyer-Myrvold
    // expects a simple graph. Duplicates are re-embedded next to their twin.
    std::map<std::pair<int, int>, int> rep;  // normalized endpoints -> edge id
    std::vector<int> dedup;                  // representative edge ids
    std::vector<std::vector<int>> dup_after(g.edge_count());
    for (int id = 0; id < g.edge_count(); ++id) {
        auto [u, v] = g.edges[id];
        auto key = std::minmax(u, v);
        auto it = rep.find({key.first, key.second});
        if (it == rep.end()) {
            rep[{key.first, key.second}] = id;
            dedup.push_back(id);
        } else {
            dup_after[it->second].push_back(id);
        }
    }

    BoostGraph bg(g.vertex_count);
    for (size_t i = 0; i < dedup.size(); ++i) {
        auto [u, v] = g.edges[dedup[i]];
        boost::add_edge(u, v, static_cast<int>(i), bg);
    }

    std::vector<std::vector<boost::graph_traits<BoostGraph>::edge_descriptor>> storage(
        boost::num_vertices(bg));
    auto emb = boost::make_iterator_property_map(storage.begin(),
                                                 boost::get(boost::vertex_index, bg));
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg, boost::boyer_myrvold_params::embedding = emb);
    if (!planar) return std::nullopt;

    PlanarEmbedding e;
    e.rotation.assign(g.vertex_count, {});
    auto index = boost::get(boost::edge_index, bg);
    for (int v = 0; v < g.vertex_count; ++v) {
        for (auto ed : storage[v]) {
            int id = dedup[boost::get(index, ed)];
            e.rotation[v].push_back(id);
            for (int dup : dup_after[id]) e.rotation[v].push_back(dup);
        }
    }

    int root_link = -1;
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.kinds[id] == EdgeKind::RootLink) root_link = id;
    trace_faces(g, e, root_link);
    return e;
}

UnionGraph build_union_graph(const PhyloTree& host, const PhyloTree& parasite,
                             const std::vector<NodeId>& phi) {
    UnionGraph g;
    g.host_count = host.node_count();
    g.parasite_count = parasite.node_count();
    g.vertex_count = g.host_count + g.parasite_count;
    for (NodeId h : host.preorder())
        if (!host.is_leaf(h))
            for (NodeId c : host.children(h)) g.add_edge(g.host_vertex(h), g.host_vertex(c), EdgeKind::HostArc);
    for (NodeId p : parasite.preorder())
        if (!parasite.is_leaf(p))
            for (NodeId c : parasite.children(p))
                g.add_edge(g.parasite_vertex(p), g.parasite_vertex(c), EdgeKind::ParasiteArc);
    for (NodeId leaf : parasite.leaves()) {
        NodeId target = phi.at(leaf);
        if (target == kNoNode || !host.is_leaf(target))
            throw unknown_node_error("phi(" + parasite.label(leaf) + ") must be a host leaf");
        g.add_edge(g.parasite_vertex(leaf), g.host_vertex(target), EdgeKind::Tangle);
    }
    g.add_edge(g.host_vertex(host.root()), g.parasite_vertex(parasite.root()), EdgeKind::RootLink);
    return g;
}

bool is_planar_instance(const PhyloTree& host, const PhyloTree& parasite,
                        const std::vector<NodeId>& phi) {
    return test_planarity(build_union_graph(host, parasite, phi)).has_value();
}

namespace {

int other_endpoint(const UnionGraph& g, int edge, int v) {
    auto [a, b] = g.edges[edge];
    return a == v ? b : a;
}

// Incident edges of `v` in rotation order starting just after `after_edge`.
std::vector<int> rotation_after(const PlanarEmbedding& e, int v, int after_edge, bool reversed) {
    std::vector<int> rot = e.rotation[v];
    if (reversed) std::reverse(rot.begin(), rot.end());
    auto it = std::find(rot.begin(), rot.end(), after_edge);
    std::vector<int> out;
    if (it == rot.end()) return rot;
    size_t start = static_cast<size_t>(it - rot.begin());
    for (size_t k = 1; k < rot.size(); ++k) out.push_back(rot[(start + k) % rot.size()]);
    return out;
}

}  // namespace

LayoutOrders extract_orders(const PlanarEmbedding& e, const UnionGraph& g,
                            const PhyloTree& host, const PhyloTree& /*parasite*/) {
    LayoutOrders orders;
    orders.host_children.assign(host.node_count(), {kNoNode, kNoNode});
    orders.parasites_in_leaf.assign(host.node_count(), {});

    int root_link = -1;
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.kinds[id] == EdgeKind::RootLink) root_link = id;

    // DFS over the host tree guided by rotations. The in-edge of the root is
    // the root-link; every other node is entered via its parent arc.
    struct Item {
        NodeId h;
        int in_edge;
    };
    std::vector<Item> stack{{host.root(), root_link}};
    while (!stack.empty()) {
        auto [h, in_edge] = stack.back();
        stack.pop_back();
        int hv = g.host_vertex(h);
        std::vector<int> around = rotation_after(e, hv, in_edge, /*reversed=*/false);
        if (host.is_leaf(h)) {
            for (int ed : around)
                if (g.kinds[ed] == EdgeKind::Tangle)
                    orders.parasites_in_leaf[h].push_back(other_endpoint(g, ed, hv) - g.host_count);
        } else {
            std::vector<std::pair<NodeId, int>> kids;
            for (int ed : around)
                if (g.kinds[ed] == EdgeKind::HostArc) {
                    NodeId c = other_endpoint(g, ed, hv);
                    if (host.parent(c) == h) kids.emplace_back(c, ed);
                }
            orders.host_children[h] = {kids[0].first, kids[1].first};
            // Right child pushed first so the left subtree is visited first.
            stack.push_back({kids[1].first, kids[1].second});
            stack.push_back({kids[0].first, kids[0].second});
        }
    }
    return orders;
}

std::vector<NodeId> leaf_order_from_embedding(const PlanarEmbedding& e, const UnionGraph& g,
                                              const PhyloTree& host, const PhyloTree& parasite) {
    // Check whether every parasite arc is present in the embedded graph.
    std::vector<char> have_arc(parasite.node_count(), 0);
    for (int id = 0; id < g.edge_count(); ++id) {
        if (g.kinds[id] != EdgeKind::ParasiteArc) continue;
        NodeId a = g.edges[id].first - g.host_count;
        NodeId b = g.edges[id].second - g.host_count;
        NodeId child = parasite.parent(a) == b ? a : b;
        have_arc[child] = 1;
    }
    bool complete = true;
    for (NodeId v = 0; v < parasite.node_count(); ++v)
        if (v != parasite.root() && !have_arc[v]) complete = false;

    if (!complete) {
        // Fall back to the host-side reading; tangles are always present.
        LayoutOrders o = extract_orders(e, g, host, parasite);
        std::vector<NodeId> sigma;
        std::vector<NodeId> stack{host.root()};
        while (!stack.empty()) {
            NodeId h = stack.back();
            stack.pop_back();
            if (host.is_leaf(h)) {
                for (NodeId p : o.parasites_in_leaf[h]) sigma.push_back(p);
            } else {
                stack.push_back(o.host_children[h][1]);
                stack.push_back(o.host_children[h][0]);
            }
        }
        return sigma;
    }

    int root_link = -1;
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.kinds[id] == EdgeKind::RootLink) root_link = id;

    // The parasite tree faces the host tree, so its left-to-right reading
    // uses the opposite rotation sense.
    std::vector<NodeId> sigma;
    struct Item {
        NodeId p;
        int in_edge;
    };
    std::vector<Item> stack{{parasite.root(), root_link}};
    while (!stack.empty()) {
        auto [p, in_edge] = stack.back();
        stack.pop_back();
        if (parasite.is_leaf(p)) {
            sigma.push_back(p);
            continue;
        }
        int pv = g.parasite_vertex(p);
        std::vector<int> around = rotation_after(e, pv, in_edge, /*reversed=*/true);
        std::vector<std::pair<NodeId, int>> kids;
        for (int ed : around)
            if (g.kinds[ed] == EdgeKind::ParasiteArc) {
                NodeId c = other_endpoint(g, ed, pv) - g.host_count;
                if (parasite.parent(c) == p) kids.emplace_back(c, ed);
            }
        if (kids.size() != 2)
            throw error("embedding inconsistent with the parasite tree at node " + parasite.label(p));
        stack.push_back({kids[1].first, kids[1].second});
        stack.push_back({kids[0].first, kids[0].second});
    }
    return sigma;
}

MPSResult maximal_planar_subgraph(const Reconciliation& rec) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;

    UnionGraph g;
    g.host_count = H.node_count();
    g.parasite_count = P.node_count();
    g.vertex_count = g.host_count + g.parasite_count;
    for (NodeId h : H.preorder())
        if (!H.is_leaf(h))
            for (NodeId c : H.children(h)) g.add_edge(g.host_vertex(h), g.host_vertex(c), EdgeKind::HostArc);
    g.add_edge(g.host_vertex(H.root()), g.parasite_vertex(P.root()), EdgeKind::RootLink);
    for (NodeId leaf : P.leaves()) {
        NodeId target = rec.phi.at(leaf);
        if (target == kNoNode || !H.is_leaf(target))
            throw unknown_node_error("phi(" + P.label(leaf) + ") must be a host leaf");
        g.add_edge(g.parasite_vertex(leaf), g.host_vertex(target), EdgeKind::Tangle);
    }

    // One non-switch child arc per internal parasite; the sibling arc waits
    // in missingArcs. Left child preferred when neither is a switch.
    MPSResult res;
    for (NodeId p : P.internal_nodes()) {
        auto [c1, c2] = P.children(p);
        bool s1 = !H.in_subtree(rec.gamma[p], rec.gamma[c1]);
        bool s2 = !H.in_subtree(rec.gamma[p], rec.gamma[c2]);
        if (s1 && s2)
            throw error("node " + P.label(p) +
                        " has two host-switch children; the reconciliation is invalid");
        NodeId keep = s1 ? c2 : c1;
        NodeId defer = keep == c1 ? c2 : c1;
        g.add_edge(g.parasite_vertex(p), g.parasite_vertex(keep), EdgeKind::ParasiteArc);
        res.missing_arcs_order.emplace_back(p, defer);
    }
    std::sort(res.missing_arcs_order.begin(), res.missing_arcs_order.end(),
              [&](const auto& a, const auto& b) {
                  int da = P.depth(a.first), db = P.depth(b.first);
                  if (da != db) return da < db;
                  return P.label(a.second) < P.label(b.second);
              });

    auto base = test_planarity(g);
    if (!base) throw error("internal error: base subgraph must be planar");

    for (auto [p, c] : res.missing_arcs_order) {
        g.add_edge(g.parasite_vertex(p), g.parasite_vertex(c), EdgeKind::ParasiteArc);
        if (!test_planarity(g)) {
            g.edges.pop_back();
            g.kinds.pop_back();
            res.non_planar_arcs.emplace_back(p, c);
        }
    }

    auto final_embedding = test_planarity(g);
    if (!final_embedding) throw error("internal error: planar subgraph lost planarity");
    res.planar_subgraph = std::move(g);
    res.embedding = std::move(*final_embedding);
    return res;
}

}  // namespace hpdraw
