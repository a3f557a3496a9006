#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hpdraw/instance.hpp"
#include "hpdraw/layout.hpp"
#include "hpdraw/planar.hpp"

namespace hpdraw::testing {

// Reconciliation from newick strings and label pairs; gamma pairs cover the
// internal parasite nodes (leaves follow phi).
inline Reconciliation make_rec(const std::string& host, const std::string& parasite,
                               const std::vector<std::pair<std::string, std::string>>& phi_pairs,
                               const std::vector<std::pair<std::string, std::string>>& gamma_pairs) {
    Reconciliation rec;
    rec.host = std::make_shared<PhyloTree>(PhyloTree::from_newick(host));
    rec.parasite = std::make_shared<PhyloTree>(PhyloTree::from_newick(parasite));
    rec.phi.assign(rec.parasite->node_count(), kNoNode);
    for (const auto& [p, h] : phi_pairs) rec.phi[rec.parasite->require(p)] = rec.host->require(h);
    rec.gamma = rec.phi;
    for (const auto& [p, h] : gamma_pairs) rec.gamma[rec.parasite->require(p)] = rec.host->require(h);
    return rec;
}

inline Reconciliation lca_rec(const std::string& host, const std::string& parasite,
                              const std::vector<std::pair<std::string, std::string>>& phi_pairs) {
    CophyInstance inst;
    inst.host = std::make_shared<PhyloTree>(PhyloTree::from_newick(host));
    inst.parasite = std::make_shared<PhyloTree>(PhyloTree::from_newick(parasite));
    inst.phi.assign(inst.parasite->node_count(), kNoNode);
    for (const auto& [p, h] : phi_pairs) inst.phi[inst.parasite->require(p)] = inst.host->require(h);
    return inst.lca_reconciliation();
}

// ---- Independent planarity oracle: exhaustive rotation-system search. ----
// A connected multigraph is planar iff some rotation system satisfies
// Euler's formula. Intended for graphs with at most ~8 vertices.
inline int count_faces(const UnionGraph& g, const std::vector<std::vector<int>>& rot) {
    std::vector<std::map<int, int>> pos(g.vertex_count);
    for (int v = 0; v < g.vertex_count; ++v)
        for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) pos[v][rot[v][i]] = i;
    int faces = 0;
    std::vector<char> seen(2 * g.edge_count(), 0);
    for (int start = 0; start < 2 * g.edge_count(); ++start) {
        if (seen[start]) continue;
        ++faces;
        int dart = start;
        while (!seen[dart]) {
            seen[dart] = 1;
            int ed = dart / 2;
            int head = dart % 2 == 0 ? g.edges[ed].second : g.edges[ed].first;
            const auto& r = rot[head];
            int ed2 = r[(pos[head].at(ed) + 1) % r.size()];
            dart = 2 * ed2 + (g.edges[ed2].first == head ? 0 : 1);
        }
    }
    return faces;
}

inline bool exhaustive_planar(const UnionGraph& g) {
    std::vector<std::vector<int>> incident(g.vertex_count);
    for (int id = 0; id < g.edge_count(); ++id) {
        incident[g.edges[id].first].push_back(id);
        incident[g.edges[id].second].push_back(id);
    }
    // Permute all but the first incident edge of every vertex.
    std::vector<std::vector<int>> rot = incident;
    std::vector<std::vector<int>> tails(g.vertex_count);
    for (int v = 0; v < g.vertex_count; ++v) {
        tails[v] = std::vector<int>(incident[v].begin() + (incident[v].empty() ? 0 : 1),
                                    incident[v].end());
        std::sort(tails[v].begin(), tails[v].end());
    }
    std::vector<char> done(g.vertex_count, 0);
    while (true) {
        for (int v = 0; v < g.vertex_count; ++v) {
            rot[v].clear();
            if (!incident[v].empty()) rot[v].push_back(incident[v][0]);
            rot[v].insert(rot[v].end(), tails[v].begin(), tails[v].end());
        }
        if (g.vertex_count - g.edge_count() + count_faces(g, rot) == 2) return true;
        int v = 0;
        for (; v < g.vertex_count; ++v) {
            if (std::next_permutation(tails[v].begin(), tails[v].end())) break;
        }
        if (v == g.vertex_count) return false;
    }
}

inline UnionGraph complete_graph(int n) {
    UnionGraph g;
    g.vertex_count = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j, EdgeKind::Other);
    return g;
}

// ---- Independent segment-intersection oracle for crossing counts. ----
// Rasterizes each route on the half-integer grid and counts pairs sharing a
// cell that is not a shared arc endpoint. Exact for integer layouts since
// all coordinates are multiples of 1/2 after doubling.
inline int brute_force_crossings(const std::vector<Route>& routes) {
    auto cells = [](const Route& r) {
        std::vector<std::pair<long, long>> out;
        for (size_t i = 0; i + 1 < r.pts.size(); ++i) {
            long x1 = 2 * r.pts[i].x, y1 = 2 * r.pts[i].y;
            long x2 = 2 * r.pts[i + 1].x, y2 = 2 * r.pts[i + 1].y;
            long dx = x2 > x1 ? 1 : x2 < x1 ? -1 : 0;
            long dy = y2 > y1 ? 1 : y2 < y1 ? -1 : 0;
            long x = x1, y = y1;
            out.emplace_back(x, y);
            while (x != x2 || y != y2) {
                x += dx;
                y += dy;
                out.emplace_back(x, y);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    std::vector<std::vector<std::pair<long, long>>> all;
    for (const Route& r : routes) all.push_back(cells(r));
    int count = 0;
    for (size_t i = 0; i < routes.size(); ++i) {
        for (size_t j = i + 1; j < routes.size(); ++j) {
            std::vector<std::pair<long, long>> shared_pts;
            auto add_shared = [&](GridPoint p) { shared_pts.emplace_back(2 * p.x, 2 * p.y); };
            if (routes[i].parent == routes[j].parent) add_shared(routes[i].pts.front());
            if (routes[i].parent == routes[j].child) add_shared(routes[i].pts.front());
            if (routes[i].child == routes[j].parent) add_shared(routes[i].pts.back());
            if (routes[i].child == routes[j].child) add_shared(routes[i].pts.back());
            bool hit = false;
            for (const auto& c : all[i]) {
                if (!std::binary_search(all[j].begin(), all[j].end(), c)) continue;
                if (std::find(shared_pts.begin(), shared_pts.end(), c) == shared_pts.end()) {
                    hit = true;
                    break;
                }
            }
            if (hit) ++count;
        }
    }
    return count;
}

}  // namespace hpdraw::testing
