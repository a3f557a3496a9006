#include "hpdraw/layout.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <queue>

namespace hpdraw {

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

void require_valid(const Reconciliation& rec) {
    ValidationReport rep = validate(rec);
    if (!rep.ok())
        throw error("invalid reconciliation: " + rep.violations.front().message +
                    (rep.violations.size() > 1
                         ? " (+" + std::to_string(rep.violations.size() - 1) + " more)"
                         : ""));
}

// y per node of the expanded tree. Default: leaves at 1, non-leaves at
// 2*pi+1 where pi numbers the non-leaf nodes from latest to earliest in the
// temporal order (so ancestors end up higher). Compact: longest-path layers
// of the time-constraint digraph.
std::vector<long> compute_y(const ExpandedParasite& ex, const std::vector<NodeId>& time_order,
                            const PhyloTree& host, bool compact) {
    const int n = ex.node_count();
    std::vector<long> y(n, 1);
    if (!compact) {
        long rank = 0;
        for (auto it = time_order.rbegin(); it != time_order.rend(); ++it)
            if (!ex.is_leaf(*it)) y[*it] = 2 * ++rank + 1;
        return y;
    }
    std::vector<long> layer(n, 0);
    for (auto it = time_order.rbegin(); it != time_order.rend(); ++it) {
        NodeId v = *it;
        if (ex.is_leaf(v)) continue;
        long m = 0;
        for (NodeId c : ex.nodes[v].children)
            if (c != kNoNode) m = std::max(m, layer[c] + 1);
        for (NodeId w = 0; w < n; ++w)
            if (w != v && host.is_proper_ancestor(ex.gamma[v], ex.gamma[w]))
                m = std::max(m, layer[w] + 1);
        layer[v] = m;
    }
    for (NodeId v = 0; v < n; ++v) y[v] = 2 * layer[v] + 1;
    return y;
}

std::vector<NodeId> expanded_postorder(const ExpandedParasite& ex) {
    std::vector<NodeId> post;
    post.reserve(ex.node_count());
    std::vector<std::pair<NodeId, int>> stack{{ex.root, 0}};
    while (!stack.empty()) {
        auto& [v, state] = stack.back();
        int deg = ex.is_leaf(v) ? 0 : (ex.nodes[v].children[1] == kNoNode ? 1 : 2);
        if (state == deg) {
            post.push_back(v);
            stack.pop_back();
        } else {
            NodeId c = ex.nodes[v].children[state];
            ++state;
            stack.push_back({c, 0});
        }
    }
    return post;
}

}  // namespace

HPLayout assign_canonical_layout(const Reconciliation& rec, const ExpandedParasite& ex,
                                 const std::vector<NodeId>& time_order, const LayoutOrders& orders,
                                 const LayoutOptions& opts) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    const int n = ex.node_count();

    std::vector<long> y = compute_y(ex, time_order, H, opts.compact_y);

    // Host x-intervals from the embedding: leaf width 2*max(1, #parasites),
    // internal width the sum of the children.
    std::vector<long> width(H.node_count(), 0), left(H.node_count(), 0);
    for (NodeId h : H.postorder()) {
        if (H.is_leaf(h)) {
            width[h] = 2 * std::max<long>(1, static_cast<long>(orders.parasites_in_leaf[h].size()));
        } else {
            auto [a, b] = orders.host_children[h];
            width[h] = width[a] + width[b];
        }
    }
    for (NodeId h : H.preorder()) {
        if (H.is_leaf(h)) continue;
        auto [a, b] = orders.host_children[h];
        left[a] = left[h];
        left[b] = left[h] + width[a];
    }

    // Parasite x: leaves from the within-host order, then copied up the
    // non-switch side (dummies pass through their single child).
    std::vector<long> x(n, 0);
    std::vector<char> placed(n, 0);
    for (NodeId v : H.leaves()) {
        long i = 0;
        for (NodeId p : orders.parasites_in_leaf[v]) {
            x[p] = left[v] + 2 * i++ + 1;
            placed[p] = 1;
        }
    }
    for (NodeId leaf : P.leaves())
        if (!placed[leaf]) throw error("leaf order does not cover parasite leaf " + P.label(leaf));

    for (NodeId v : expanded_postorder(ex)) {
        if (ex.is_leaf(v)) continue;
        if (ex.is_dummy(v)) {
            x[v] = x[ex.nodes[v].children[0]];
            continue;
        }
        NodeId head0 = ex.nodes[v].children[0], head1 = ex.nodes[v].children[1];
        bool s0 = is_switch_arc(rec, P.children(v)[0]);
        bool s1 = is_switch_arc(rec, P.children(v)[1]);
        if (s0 && !s1)
            x[v] = x[head1];
        else if (s1 && !s0)
            x[v] = x[head0];
        else
            x[v] = std::min(x[head0], x[head1]);
    }

    // Vertical bands ("cuts"): the y of the line separating a host rectangle
    // from its children. Leaves reach the bottom line.
    std::vector<long> min_at(H.node_count(), kInf), max_at(H.node_count(), -1);
    for (NodeId v = 0; v < n; ++v) {
        NodeId h = ex.gamma[v];
        min_at[h] = std::min(min_at[h], y[v]);
        max_at[h] = std::max(max_at[h], y[v]);
    }
    std::vector<long> max_sub(H.node_count(), -1), cut(H.node_count(), 0);
    std::vector<char> empty_sub(H.node_count(), 0);
    for (NodeId h : H.postorder()) {
        max_sub[h] = max_at[h];
        if (!H.is_leaf(h))
            for (NodeId c : H.children(h)) max_sub[h] = std::max(max_sub[h], max_sub[c]);
        if (H.is_leaf(h)) {
            cut[h] = 0;
        } else if (min_at[h] < kInf) {
            cut[h] = min_at[h] - 1;
        } else {
            long below = std::max(max_sub[H.children(h)[0]], max_sub[H.children(h)[1]]);
            if (below >= 0)
                cut[h] = below + 1;
            else
                empty_sub[h] = 1;  // resolved top-down below
        }
    }
    long global_top = 2;
    for (NodeId v = 0; v < n; ++v) global_top = std::max(global_top, y[v] + 1);
    for (NodeId h : H.preorder()) {
        if (!empty_sub[h]) continue;
        long above = h == H.root() ? global_top : cut[H.parent(h)];
        cut[h] = std::max<long>(0, std::min<long>(above - 2, 2L * H.height(h)));
    }

    HPLayout layout;
    layout.top = global_top;
    layout.right = width[H.root()];
    layout.rects.resize(H.node_count());
    for (NodeId h = 0; h < H.node_count(); ++h) {
        long top = h == H.root() ? global_top : cut[H.parent(h)];
        layout.rects[h] = {left[h], left[h] + width[h], cut[h], top};
    }

    layout.points.resize(P.node_count());
    for (NodeId p = 0; p < P.node_count(); ++p) layout.points[p] = {x[p], y[p]};
    for (NodeId v = ex.original_count; v < n; ++v) {
        auto [ap, ac] = ex.origin[v - ex.original_count];
        layout.dummies.push_back({ap, ac, ex.gamma[v], {x[v], y[v]}});
    }

    layout.downward = true;
    for (NodeId c = 0; c < P.node_count(); ++c) {
        if (c == P.root()) continue;
        NodeId p = P.parent(c);
        Route r;
        r.parent = p;
        r.child = c;
        r.is_switch = is_switch_arc(rec, c);
        if (x[p] == x[c])
            r.pts = {{x[p], y[p]}, {x[c], y[c]}};
        else
            r.pts = {{x[p], y[p]}, {x[c], y[p]}, {x[c], y[c]}};
        if (y[p] <= y[c]) layout.downward = false;
        layout.routes.push_back(std::move(r));
    }
    if (opts.crossing_cap >= 0) {
        layout.crossing_count =
            count_crossings(layout.routes, &layout.crossings, &layout.warnings, opts.crossing_cap);
    } else {
        refresh_crossings(layout);
    }
    return layout;
}

namespace {

struct Seg {
    long x1, y1, x2, y2;  // normalized: x1<=x2, y1<=y2
    bool horizontal;
};

std::vector<Seg> route_segments(const Route& r) {
    std::vector<Seg> segs;
    for (size_t i = 0; i + 1 < r.pts.size(); ++i) {
        GridPoint a = r.pts[i], b = r.pts[i + 1];
        if (a.y == b.y && a.x == b.x) continue;  // degenerate zero-length piece
        Seg s{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y),
              a.y == b.y};
        segs.push_back(s);
    }
    return segs;
}

struct Hit {
    bool any = false;
    bool overlap = false;
    GridPoint at;
};

void intersect(const Seg& a, const Seg& b, std::vector<Hit>& hits) {
    if (a.horizontal && b.horizontal) {
        if (a.y1 != b.y1) return;
        long lo = std::max(a.x1, b.x1), hi = std::min(a.x2, b.x2);
        if (lo < hi)
            hits.push_back({true, true, {lo, a.y1}});
        else if (lo == hi)
            hits.push_back({true, false, {lo, a.y1}});
    } else if (!a.horizontal && !b.horizontal) {
        if (a.x1 != b.x1) return;
        long lo = std::max(a.y1, b.y1), hi = std::min(a.y2, b.y2);
        if (lo < hi)
            hits.push_back({true, true, {a.x1, lo}});
        else if (lo == hi)
            hits.push_back({true, false, {a.x1, lo}});
    } else {
        const Seg& h = a.horizontal ? a : b;
        const Seg& v = a.horizontal ? b : a;
        if (v.x1 >= h.x1 && v.x1 <= h.x2 && h.y1 >= v.y1 && h.y1 <= v.y2)
            hits.push_back({true, false, {v.x1, h.y1}});
    }
}

}  // namespace

int count_crossings(const std::vector<Route>& routes, std::vector<CrossingRecord>* records,
                    std::vector<std::string>* warnings, long cap) {
    int count = 0;
    std::vector<std::vector<Seg>> segs(routes.size());
    for (size_t i = 0; i < routes.size(); ++i) segs[i] = route_segments(routes[i]);

    for (size_t i = 0; i < routes.size(); ++i) {
        for (size_t j = i + 1; j < routes.size(); ++j) {
            if (cap >= 0 && count >= cap) return count;
            const Route& A = routes[i];
            const Route& B = routes[j];
            // Points of nodes shared by the two arcs are not crossings.
            std::vector<GridPoint> shared;
            if (A.parent == B.parent) shared.push_back(A.pts.front());
            if (A.parent == B.child) shared.push_back(A.pts.front());
            if (A.child == B.parent) shared.push_back(A.pts.back());
            if (A.child == B.child) shared.push_back(A.pts.back());

            std::vector<Hit> hits;
            for (const Seg& sa : segs[i])
                for (const Seg& sb : segs[j]) intersect(sa, sb, hits);

            bool crossing = false, overlap = false;
            GridPoint at{};
            for (const Hit& h : hits) {
                if (h.overlap) {
                    crossing = true;
                    overlap = true;
                    at = h.at;
                    break;
                }
                bool is_shared =
                    std::any_of(shared.begin(), shared.end(), [&](GridPoint s) { return s == h.at; });
                if (!is_shared && !crossing) {
                    crossing = true;
                    at = h.at;
                }
            }
            if (crossing) {
                ++count;
                if (records) records->push_back({static_cast<int>(i), static_cast<int>(j), at, overlap});
                if (overlap && warnings) {
                    warnings->push_back("degenerate collinear overlap between arcs (" +
                                        std::to_string(A.parent) + "," + std::to_string(A.child) +
                                        ") and (" + std::to_string(B.parent) + "," +
                                        std::to_string(B.child) + "); counted once");
                }
            }
        }
    }
    return count;
}

void refresh_crossings(HPLayout& layout) {
    layout.crossings.clear();
    layout.warnings.clear();
    layout.crossing_count = count_crossings(layout.routes, &layout.crossings, &layout.warnings);
}

namespace {

LayoutOrders orders_from_sigma(const Reconciliation& rec, const std::vector<NodeId>& sigma) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    if (static_cast<int>(sigma.size()) != P.leaf_count())
        throw error("sigma must order every parasite leaf");
    std::vector<long> rank(P.node_count(), kInf);
    for (size_t i = 0; i < sigma.size(); ++i) {
        NodeId p = sigma[i];
        if (p < 0 || p >= P.node_count() || !P.is_leaf(p) || rank[p] != kInf)
            throw error("sigma is not a permutation of the parasite leaves");
        rank[p] = static_cast<long>(i);
    }

    LayoutOrders orders;
    orders.host_children.assign(H.node_count(), {kNoNode, kNoNode});
    orders.parasites_in_leaf.assign(H.node_count(), {});
    for (NodeId p : P.leaves()) orders.parasites_in_leaf[rec.phi[p]].push_back(p);
    for (auto& list : orders.parasites_in_leaf)
        std::sort(list.begin(), list.end(), [&](NodeId a, NodeId b) { return rank[a] < rank[b]; });

    // Children ordered by the leftmost parasite leaf in their subtree; empty
    // subtrees keep their input side.
    std::vector<long> min_rank(H.node_count(), kInf);
    for (NodeId p : P.leaves()) min_rank[rec.phi[p]] = std::min(min_rank[rec.phi[p]], rank[p]);
    for (NodeId h : H.postorder())
        if (!H.is_leaf(h))
            for (NodeId c : H.children(h)) min_rank[h] = std::min(min_rank[h], min_rank[c]);
    for (NodeId h : H.internal_nodes()) {
        auto [a, b] = H.children(h);
        if (min_rank[b] < min_rank[a]) std::swap(a, b);
        orders.host_children[h] = {a, b};
    }
    return orders;
}

// Validates that `order` is a temporal ordering of V(P) per the definition.
void verify_time_order(const Reconciliation& rec, const std::vector<NodeId>& order) {
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    if (static_cast<int>(order.size()) != P.node_count())
        throw error("ordering must cover every parasite node");
    std::vector<int> pos(P.node_count(), -1);
    for (size_t i = 0; i < order.size(); ++i) {
        NodeId v = order[i];
        if (v < 0 || v >= P.node_count() || pos[v] != -1)
            throw error("ordering is not a permutation of the parasite nodes");
        pos[v] = static_cast<int>(i);
    }
    for (NodeId c = 0; c < P.node_count(); ++c)
        if (c != P.root() && pos[P.parent(c)] >= pos[c])
            throw time_inconsistent_error("ordering violates arc (" + P.label(P.parent(c)) + "," +
                                          P.label(c) + ")");
    for (NodeId a = 0; a < P.node_count(); ++a)
        for (NodeId b = 0; b < P.node_count(); ++b)
            if (pos[a] < pos[b] && H.is_proper_ancestor(rec.gamma[b], rec.gamma[a]))
                throw time_inconsistent_error("ordering places " + P.label(a) + " before " +
                                              P.label(b) + " although gamma(" + P.label(b) +
                                              ") is an ancestor of gamma(" + P.label(a) + ")");
}

// Lifts a temporal ordering of V(P) to V(P'): topological order of the
// expanded constraint digraph with ties broken by the given ranks (dummies
// inherit their arc child's rank and keep chain order).
std::vector<NodeId> lift_order(const ExpandedParasite& ex, const PhyloTree& host,
                               const std::vector<NodeId>& order) {
    const int n = ex.node_count();
    std::vector<std::pair<long, long>> key(n);
    std::vector<int> pos(ex.original_count, 0);
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (NodeId v = 0; v < n; ++v) {
        if (!ex.is_dummy(v)) {
            key[v] = {pos[v], 0};
        } else {
            auto [p, c] = ex.origin[v - ex.original_count];
            (void)p;
            key[v] = {pos[c], static_cast<long>(v) - n};  // before c, chain order preserved
        }
    }
    std::vector<std::vector<NodeId>> adj(n);
    std::vector<int> indeg(n, 0);
    auto add_edge = [&](NodeId u, NodeId v) {
        adj[u].push_back(v);
        ++indeg[v];
    };
    for (NodeId v = 0; v < n; ++v)
        for (NodeId c : ex.nodes[v].children)
            if (c != kNoNode) add_edge(v, c);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b)
            if (a != b && host.is_proper_ancestor(ex.gamma[a], ex.gamma[b])) add_edge(a, b);

    using Entry = std::pair<std::pair<long, long>, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push({key[v], v});
    std::vector<NodeId> out;
    out.reserve(n);
    while (!ready.empty()) {
        NodeId v = ready.top().second;
        ready.pop();
        out.push_back(v);
        for (NodeId w : adj[v])
            if (--indeg[w] == 0) ready.push({key[w], w});
    }
    if (static_cast<int>(out.size()) != n)
        throw time_inconsistent_error("reconciliation admits no temporal ordering");
    return out;
}

}  // namespace

HPLayout planar_draw(const Reconciliation& rec, const LayoutOptions& opts) {
    require_valid(rec);
    ExpandedParasite ex = expand_losses(rec);
    auto order = time_order_expanded(ex, *rec.host);
    if (!order) throw time_inconsistent_error("reconciliation is not time-consistent");
    UnionGraph ug = build_union_graph(*rec.host, *rec.parasite, rec.phi);
    auto emb = test_planarity(ug);
    if (!emb)
        throw not_planar_error(
            "instance admits no planar tanglegram drawing (union graph is non-planar)");
    LayoutOrders orders = extract_orders(*emb, ug, *rec.host, *rec.parasite);
    return assign_canonical_layout(rec, ex, *order, orders, opts);
}

HPLayout planar_draw(const Reconciliation& rec, const std::vector<NodeId>& pi_prime,
                     const std::vector<NodeId>& sigma, const LayoutOptions& opts) {
    require_valid(rec);
    verify_time_order(rec, pi_prime);
    ExpandedParasite ex = expand_losses(rec);
    std::vector<NodeId> order = lift_order(ex, *rec.host, pi_prime);
    LayoutOrders orders = orders_from_sigma(rec, sigma);
    return assign_canonical_layout(rec, ex, order, orders, opts);
}

HPLayout shorten_host_switch(const Reconciliation& rec, const LayoutOptions& opts) {
    require_valid(rec);
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    ExpandedParasite ex = expand_losses(rec);
    auto order = time_order_expanded(ex, H);
    if (!order) throw time_inconsistent_error("reconciliation is not time-consistent");
    std::vector<long> y = compute_y(ex, *order, H, opts.compact_y);

    // Host-switch arcs as host endpoint pairs.
    std::vector<std::pair<NodeId, NodeId>> switches;
    for (NodeId c = 0; c < P.node_count(); ++c)
        if (c != P.root() && is_switch_arc(rec, c))
            switches.emplace_back(rec.gamma[P.parent(c)], rec.gamma[c]);

    // Preorder embedding choice; regions to the left/right of the current
    // root path are maintained as subtree marks.
    LayoutOrders orders;
    orders.host_children.assign(H.node_count(), {kNoNode, kNoNode});
    orders.parasites_in_leaf.assign(H.node_count(), {});
    std::vector<int8_t> region(H.node_count(), 0);  // 0 none, 1 left, 2 right
    auto mark = [&](NodeId sub, int8_t r) {
        for (NodeId v : H.subtree_nodes(sub)) region[v] = r;
    };
    std::function<void(NodeId)> choose = [&](NodeId v) {
        if (H.is_leaf(v)) return;
        auto [c1, c2] = H.children(v);
        long h1l = 0, h1r = 0, h2l = 0, h2r = 0;
        for (auto [ga, gb] : switches) {
            for (int rep = 0; rep < 2; ++rep) {
                if (H.in_subtree(c1, ga)) {
                    if (region[gb] == 1) ++h1l;
                    if (region[gb] == 2) ++h1r;
                }
                if (H.in_subtree(c2, ga)) {
                    if (region[gb] == 1) ++h2l;
                    if (region[gb] == 2) ++h2r;
                }
                std::swap(ga, gb);
            }
        }
        NodeId lc = c1, rc = c2;
        if (h1r + h2l > h2r + h1l) std::swap(lc, rc);
        orders.host_children[v] = {lc, rc};
        mark(rc, 2);
        choose(lc);
        mark(rc, 0);
        mark(lc, 1);
        choose(rc);
        mark(lc, 0);
    };
    choose(H.root());

    // Host x-intervals for the chosen embedding drive the leaf split rule.
    std::vector<long> width(H.node_count(), 0), left(H.node_count(), 0);
    std::vector<std::vector<NodeId>> at_leaf(H.node_count());
    for (NodeId p : P.leaves()) at_leaf[rec.phi[p]].push_back(p);
    for (NodeId h : H.postorder()) {
        if (H.is_leaf(h))
            width[h] = 2 * std::max<long>(1, static_cast<long>(at_leaf[h].size()));
        else
            width[h] = width[orders.host_children[h][0]] + width[orders.host_children[h][1]];
    }
    for (NodeId h : H.preorder()) {
        if (H.is_leaf(h)) continue;
        auto [a, b] = orders.host_children[h];
        left[a] = left[h];
        left[b] = left[h] + width[a];
    }

    // Within each host leaf: leaves whose parent sits to the left, ordered by
    // ascending parent level, then the rest ordered by descending level.
    for (NodeId v : H.leaves()) {
        std::vector<NodeId> L, R;
        for (NodeId p : at_leaf[v]) {
            NodeId q = P.parent(p);
            if (q == kNoNode || left[rec.gamma[q]] < left[v])
                L.push_back(p);
            else
                R.push_back(p);
        }
        auto level = [&](NodeId p) {
            NodeId q = P.parent(p);
            return q == kNoNode ? 0L : y[q];
        };
        std::sort(L.begin(), L.end(), [&](NodeId a, NodeId b) {
            if (level(a) != level(b)) return level(a) < level(b);
            return P.label(a) < P.label(b);
        });
        std::sort(R.begin(), R.end(), [&](NodeId a, NodeId b) {
            if (level(a) != level(b)) return level(a) > level(b);
            return P.label(a) < P.label(b);
        });
        orders.parasites_in_leaf[v] = std::move(L);
        orders.parasites_in_leaf[v].insert(orders.parasites_in_leaf[v].end(), R.begin(), R.end());
    }
    return assign_canonical_layout(rec, ex, *order, orders, opts);
}

HPLayout search_maximal_planar(const Reconciliation& rec, const LayoutOptions& opts) {
    require_valid(rec);
    ExpandedParasite ex = expand_losses(rec);
    auto order = time_order_expanded(ex, *rec.host);
    if (!order) throw time_inconsistent_error("reconciliation is not time-consistent");
    MPSResult mps = maximal_planar_subgraph(rec);
    LayoutOrders orders = extract_orders(mps.embedding, mps.planar_subgraph, *rec.host, *rec.parasite);
    return assign_canonical_layout(rec, ex, *order, orders, opts);
}

ValidityReport check_layout(const HPLayout& layout, const Reconciliation& rec) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    ValidityReport rep;
    auto bad = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };

    if (static_cast<int>(layout.rects.size()) != H.node_count() ||
        static_cast<int>(layout.points.size()) != P.node_count()) {
        bad("layout does not cover every host/parasite node");
        return rep;
    }

    for (NodeId h = 0; h < H.node_count(); ++h) {
        const Rect& r = layout.rects[h];
        if (r.x_left % 2 || r.x_right % 2 || r.y_bottom % 2 || r.y_top % 2)
            bad("parity: rectangle of " + H.label(h) + " has an odd corner coordinate");
        if (r.x_right <= r.x_left) bad("rectangle of " + H.label(h) + " has non-positive width");
        if (r.y_top < r.y_bottom) bad("rectangle of " + H.label(h) + " has negative height");
        if (H.is_leaf(h) && r.y_bottom != 0)
            bad("host leaf " + H.label(h) + " does not touch the bottom border");
    }
    if (layout.rects[H.root()].y_top != layout.top)
        bad("root rectangle does not touch the top border");

    for (NodeId h : H.internal_nodes()) {
        const Rect& r = layout.rects[h];
        Rect a = layout.rects[H.children(h)[0]];
        Rect b = layout.rects[H.children(h)[1]];
        if (a.x_left > b.x_left) std::swap(a, b);
        if (a.y_top != r.y_bottom || b.y_top != r.y_bottom)
            bad("tiling: children of " + H.label(h) + " do not touch its bottom side");
        if (a.x_left != r.x_left || a.x_right != b.x_left || b.x_right != r.x_right)
            bad("tiling: children of " + H.label(h) + " do not partition its x-interval");
    }
    for (NodeId h1 = 0; h1 < H.node_count(); ++h1)
        for (NodeId h2 = h1 + 1; h2 < H.node_count(); ++h2) {
            const Rect& a = layout.rects[h1];
            const Rect& b = layout.rects[h2];
            if (a.x_left < b.x_right && b.x_left < a.x_right && a.y_bottom < b.y_top &&
                b.y_bottom < a.y_top)
                bad("tiling: rectangles of " + H.label(h1) + " and " + H.label(h2) + " overlap");
        }

    auto inside = [](const GridPoint& p, const Rect& r) {
        return p.x > r.x_left && p.x < r.x_right && p.y > r.y_bottom && p.y < r.y_top;
    };
    for (NodeId p = 0; p < P.node_count(); ++p) {
        const GridPoint& pt = layout.points[p];
        if (pt.x % 2 == 0 || pt.y % 2 == 0)
            bad("parity: parasite " + P.label(p) + " is not on odd coordinates");
        if (!inside(pt, layout.rects[rec.gamma[p]]))
            bad("containment: parasite " + P.label(p) + " lies outside the rectangle of gamma(" +
                P.label(p) + ")");
    }
    for (const auto& d : layout.dummies) {
        if (d.at.x % 2 == 0 || d.at.y % 2 == 0) bad("parity: loss marker on even coordinates");
        if (!inside(d.at, layout.rects[d.host]))
            bad("containment: loss marker of arc (" + P.label(d.arc_parent) + "," +
                P.label(d.arc_child) + ") lies outside the rectangle of " + H.label(d.host));
    }

    std::vector<char> seen(P.node_count(), 0);
    for (const Route& r : layout.routes) {
        if (r.child < 0 || r.child >= P.node_count() || P.parent(r.child) != r.parent) {
            bad("route does not match a parasite arc");
            continue;
        }
        seen[r.child] = 1;
        if (r.pts.front() != layout.points[r.parent] || r.pts.back() != layout.points[r.child])
            bad("route of arc (" + P.label(r.parent) + "," + P.label(r.child) +
                ") does not join its endpoints");
        const GridPoint a = layout.points[r.parent];
        const GridPoint b = layout.points[r.child];
        if (a.x == b.x) {
            if (r.pts.size() != 2)
                bad("route of arc (" + P.label(r.parent) + "," + P.label(r.child) +
                    ") should be a single vertical segment");
        } else {
            if (r.pts.size() != 3 || r.pts[1].x != b.x || r.pts[1].y != a.y)
                bad("route of arc (" + P.label(r.parent) + "," + P.label(r.child) +
                    ") is not horizontal-then-vertical");
        }
        if (layout.downward && a.y <= b.y)
            bad("downward violated on arc (" + P.label(r.parent) + "," + P.label(r.child) + ")");
    }
    for (NodeId c = 0; c < P.node_count(); ++c)
        if (c != P.root() && !seen[c]) bad("missing route for arc into " + P.label(c));

    int recount = count_crossings(layout.routes, nullptr, nullptr);
    if (recount != layout.crossing_count)
        bad("stored crossing count " + std::to_string(layout.crossing_count) +
            " does not match recount " + std::to_string(recount));
    return rep;
}

TanglegramDrawing hp_to_tanglegram(const HPLayout& layout, const Reconciliation& rec) {
    if (layout.crossing_count != 0)
        throw error("tanglegram mirror requires a crossing-free layout");
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    TanglegramDrawing t;
    t.host_pos.resize(H.node_count());
    for (NodeId h = 0; h < H.node_count(); ++h) {
        const Rect& r = layout.rects[h];
        t.host_pos[h] = {(r.x_left + r.x_right) / 2, (r.y_bottom + r.y_top) / 2};
    }
    t.parasite_pos.resize(P.node_count());
    for (NodeId p = 0; p < P.node_count(); ++p)
        t.parasite_pos[p] = {layout.points[p].x, -layout.points[p].y};
    for (NodeId p : P.leaves()) t.tangles.emplace_back(p, rec.phi[p]);

    std::vector<std::pair<long, NodeId>> hx, px;
    for (NodeId h : H.leaves()) hx.emplace_back(t.host_pos[h].x, h);
    for (NodeId p : P.leaves()) px.emplace_back(t.parasite_pos[p].x, p);
    std::sort(hx.begin(), hx.end());
    std::sort(px.begin(), px.end());
    for (auto& [x, h] : hx) t.host_leaf_order.push_back(h);
    for (auto& [x, p] : px) t.parasite_leaf_order.push_back(p);

    // Tangles are verified pairwise: straight segments may only meet at a
    // shared host endpoint.
    auto cross2 = [](long ax, long ay, long bx, long by) { return ax * by - ay * bx; };
    auto orient = [&](GridPoint a, GridPoint b, GridPoint c) {
        long v = cross2(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
        return v > 0 ? 1 : v < 0 ? -1 : 0;
    };
    auto on_seg = [](GridPoint a, GridPoint b, GridPoint c) {
        return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
    };
    t.tangles_planar = true;
    for (size_t i = 0; i < t.tangles.size() && t.tangles_planar; ++i) {
        for (size_t j = i + 1; j < t.tangles.size(); ++j) {
            auto [p1, h1] = t.tangles[i];
            auto [p2, h2] = t.tangles[j];
            if (h1 == h2) continue;  // shared endpoint allowed
            GridPoint a = t.parasite_pos[p1], b = t.host_pos[h1];
            GridPoint c = t.parasite_pos[p2], d = t.host_pos[h2];
            int o1 = orient(a, b, c), o2 = orient(a, b, d);
            int o3 = orient(c, d, a), o4 = orient(c, d, b);
            bool meet = (o1 != o2 && o3 != o4) || (o1 == 0 && on_seg(a, b, c)) ||
                        (o2 == 0 && on_seg(a, b, d)) || (o3 == 0 && on_seg(c, d, a)) ||
                        (o4 == 0 && on_seg(c, d, b));
            if (meet) {
                t.tangles_planar = false;
                break;
            }
        }
    }
    return t;
}

}  // namespace hpdraw
