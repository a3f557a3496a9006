#include "hpdraw/reconciliation.hpp"

#include <algorithm>
#include <queue>

namespace hpdraw {

namespace {

void check_maps(const Reconciliation& rec) {
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    if (static_cast<int>(rec.gamma.size()) != P.node_count())
        throw unknown_node_error("gamma must assign every parasite node");
    if (static_cast<int>(rec.phi.size()) != P.node_count())
        throw unknown_node_error("phi must be indexed by parasite node");
    for (NodeId p = 0; p < P.node_count(); ++p) {
        NodeId g = rec.gamma[p];
        if (g < 0 || g >= H.node_count())
            throw unknown_node_error("gamma(" + P.label(p) + ") references an unknown host node");
        if (P.is_leaf(p)) {
            NodeId f = rec.phi[p];
            if (f < 0 || f >= H.node_count())
                throw unknown_node_error("phi(" + P.label(p) + ") references an unknown host node");
        }
    }
}

}  // namespace

const char* to_string(EventType e) {
    switch (e) {
        case EventType::CoSpeciation: return "cospeciation";
        case EventType::Duplication: return "duplication";
        case EventType::HostSwitch: return "hostswitch";
    }
    return "?";
}

ValidationReport validate(const Reconciliation& rec) {
    check_maps(rec);
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    ValidationReport report;

    for (NodeId leaf : P.leaves()) {
        if (rec.gamma[leaf] != rec.phi[leaf]) {
            report.violations.push_back(
                {Condition::LeafMap, leaf,
                 "condition (i): gamma(" + P.label(leaf) + ")=" + H.label(rec.gamma[leaf]) +
                     " differs from phi(" + P.label(leaf) + ")=" + H.label(rec.phi[leaf])});
        }
    }

    for (NodeId p : P.internal_nodes()) {
        NodeId gp = rec.gamma[p];
        bool some_inside = false;
        for (NodeId c : P.children(p)) {
            NodeId gc = rec.gamma[c];
            if (H.is_proper_ancestor(gc, gp)) {
                report.violations.push_back(
                    {Condition::ChildAboveParent, c,
                     "condition (ii): gamma(" + P.label(c) + ")=" + H.label(gc) +
                         " is a proper ancestor of gamma(" + P.label(p) + ")=" + H.label(gp)});
            }
            if (H.in_subtree(gp, gc)) some_inside = true;
        }
        if (!some_inside) {
            report.violations.push_back(
                {Condition::BothChildrenOutside, p,
                 "condition (iii): neither child of " + P.label(p) +
                     " is mapped in the subtree rooted at gamma(" + P.label(p) + ")=" + H.label(gp)});
        }
    }
    return report;
}

bool is_switch_arc(const Reconciliation& rec, NodeId child) {
    NodeId p = rec.parasite->parent(child);
    if (p == kNoNode) throw unknown_node_error("root has no incoming arc");
    return !rec.host->in_subtree(rec.gamma[p], rec.gamma[child]);
}

int count_losses(const Reconciliation& rec, NodeId child) {
    NodeId p = rec.parasite->parent(child);
    if (p == kNoNode) throw unknown_node_error("root has no incoming arc");
    NodeId gp = rec.gamma[p], gc = rec.gamma[child];
    if (!rec.host->in_subtree(gp, gc)) return 0;  // host-switch arcs carry no losses
    return std::max(0, rec.host->path_length(gp, gc) - 1);
}

EventReport classify_events_lenient(const Reconciliation& rec) {
    check_maps(rec);
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    EventReport r;
    r.event.assign(P.node_count(), std::nullopt);
    r.losses.assign(P.node_count(), 0);
    r.switch_arc.assign(P.node_count(), 0);

    for (NodeId c = 0; c < P.node_count(); ++c) {
        if (c == P.root()) continue;
        r.switch_arc[c] = is_switch_arc(rec, c);
        r.losses[c] = count_losses(rec, c);
        r.total_losses += r.losses[c];
    }

    for (NodeId p : P.internal_nodes()) {
        auto [c1, c2] = P.children(p);
        NodeId g = rec.gamma[p], g1 = rec.gamma[c1], g2 = rec.gamma[c2];
        if (r.switch_arc[c1] || r.switch_arc[c2]) {
            r.event[p] = EventType::HostSwitch;
            ++r.host_switches;
        } else if (!H.comparable(g1, g2) && H.lca(g1, g2) == g) {
            r.event[p] = EventType::CoSpeciation;
            ++r.cospeciations;
        } else if (H.comparable(g1, g2)) {
            r.event[p] = EventType::Duplication;
            ++r.duplications;
        } else {
            ++r.unclassified;
        }
    }
    return r;
}

EventReport classify_events(const Reconciliation& rec) {
    EventReport r = classify_events_lenient(rec);
    if (r.unclassified > 0) {
        const auto& P = *rec.parasite;
        const auto& H = *rec.host;
        for (NodeId p : P.internal_nodes()) {
            if (r.event[p]) continue;
            auto [c1, c2] = P.children(p);
            throw event_classification_error(
                "node " + P.label(p) + " matches no event rule (children map to incomparable hosts " +
                H.label(rec.gamma[c1]) + ", " + H.label(rec.gamma[c2]) +
                " whose lca is below gamma(" + P.label(p) + ")=" + H.label(rec.gamma[p]) + ")");
        }
    }
    return r;
}

ExpandedParasite expand_losses(const Reconciliation& rec) {
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    ExpandedParasite ex;
    ex.original_count = P.node_count();
    ex.root = P.root();
    ex.nodes.resize(P.node_count());
    ex.gamma = rec.gamma;
    ex.labels.resize(P.node_count());
    for (NodeId v = 0; v < P.node_count(); ++v) ex.labels[v] = P.label(v);

    for (NodeId p : P.internal_nodes()) {
        auto kids = P.children(p);
        for (int side = 0; side < 2; ++side) {
            NodeId c = kids[side];
            NodeId gp = rec.gamma[p], gc = rec.gamma[c];
            NodeId prev = p;
            if (H.in_subtree(gp, gc) && H.path_length(gp, gc) >= 2) {
                // Hosts strictly between gp and gc, top to bottom.
                std::vector<NodeId> path;
                for (NodeId h = H.parent(gc); h != gp; h = H.parent(h)) path.push_back(h);
                std::reverse(path.begin(), path.end());
                int i = 1;
                for (NodeId h : path) {
                    NodeId d = ex.node_count();
                    ex.nodes.push_back({});
                    ex.gamma.push_back(h);
                    ex.labels.push_back(P.label(p) + "~" + P.label(c) + "~" + std::to_string(i++));
                    ex.origin.emplace_back(p, c);
                    if (prev == p)
                        ex.nodes[prev].children[side] = d;
                    else
                        ex.nodes[prev].children[0] = d;
                    ex.nodes[d].parent = prev;
                    prev = d;
                }
            }
            if (prev == p)
                ex.nodes[prev].children[side] = c;
            else
                ex.nodes[prev].children[0] = c;
            ex.nodes[c].parent = prev;
        }
    }
    return ex;
}

std::vector<std::pair<NodeId, NodeId>> contract_expanded(const ExpandedParasite& ex) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId v = 0; v < ex.original_count; ++v) {
        NodeId p = ex.nodes[v].parent;
        while (p != kNoNode && ex.is_dummy(p)) p = ex.nodes[p].parent;
        if (p != kNoNode) arcs.emplace_back(p, v);
    }
    return arcs;
}

namespace {

// Topological order of the time-constraint digraph shared by both public
// entry points. Edge u->v means u must precede v. Ties broken by label.
std::optional<std::vector<NodeId>> topo_time_order(
    int n, const std::vector<std::pair<NodeId, NodeId>>& arcs,
    const std::vector<NodeId>& gamma, const std::vector<std::string>& labels,
    const PhyloTree& host) {
    std::vector<std::vector<NodeId>> adj(n);
    std::vector<int> indeg(n, 0);
    auto add_edge = [&](NodeId u, NodeId v) {
        adj[u].push_back(v);
        ++indeg[v];
    };
    for (auto [u, v] : arcs) add_edge(u, v);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = 0; b < n; ++b)
            if (a != b && host.is_proper_ancestor(gamma[a], gamma[b])) add_edge(a, b);

    auto cmp = [&](NodeId a, NodeId b) { return labels[a] > labels[b]; };
    std::priority_queue<NodeId, std::vector<NodeId>, decltype(cmp)> ready(cmp);
    for (NodeId v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);

    std::vector<NodeId> order;
    order.reserve(n);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId w : adj[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

}  // namespace

std::optional<std::vector<NodeId>> check_time_consistency(const Reconciliation& rec) {
    check_maps(rec);
    const auto& P = *rec.parasite;
    std::vector<std::pair<NodeId, NodeId>> arcs;
    std::vector<std::string> labels(P.node_count());
    for (NodeId v = 0; v < P.node_count(); ++v) {
        labels[v] = P.label(v);
        if (v != P.root()) arcs.emplace_back(P.parent(v), v);
    }
    return topo_time_order(P.node_count(), arcs, rec.gamma, labels, *rec.host);
}

std::optional<std::vector<NodeId>> time_order_expanded(const ExpandedParasite& ex,
                                                       const PhyloTree& host) {
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId v = 0; v < ex.node_count(); ++v)
        for (NodeId c : ex.nodes[v].children)
            if (c != kNoNode) arcs.emplace_back(v, c);
    return topo_time_order(ex.node_count(), arcs, ex.gamma, ex.labels, host);
}

long score(const Reconciliation& rec, const CostVector& costs) {
    EventReport r = classify_events(rec);
    return static_cast<long>(r.cospeciations) * costs.cospeciation +
           static_cast<long>(r.duplications) * costs.duplication +
           static_cast<long>(r.total_losses) * costs.loss +
           static_cast<long>(r.host_switches) * costs.hostswitch;
}

}  // namespace hpdraw
