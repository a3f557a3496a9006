#include "hpdraw/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hpdraw {

namespace {

constexpr long kStateCap = std::numeric_limits<long>::max() / 2;

long mul_capped(long a, long b) {
    if (a > kStateCap / b) return kStateCap;
    return a * b;
}

long factorial_capped(long k) {
    long f = 1;
    for (long i = 2; i <= k; ++i) f = mul_capped(f, i);
    return f;
}

}  // namespace

long oracle_state_count(const Reconciliation& rec) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    long states = 1;
    for (int i = 0; i < H.internal_count(); ++i) states = mul_capped(states, 2);
    std::vector<long> per_leaf(H.node_count(), 0);
    for (NodeId p : P.leaves()) ++per_leaf[rec.phi[p]];
    for (NodeId h : H.leaves()) states = mul_capped(states, factorial_capped(per_leaf[h]));
    return states;
}

OracleResult brute_force_min_crossings(const Reconciliation& rec, const OracleLimits& limits) {
    const auto& H = *rec.host;
    const auto& P = *rec.parasite;
    {
        ValidationReport rep = validate(rec);
        if (!rep.ok()) throw error("invalid reconciliation: " + rep.violations.front().message);
    }
    if (H.leaf_count() > limits.max_host_leaves || P.leaf_count() > limits.max_parasite_leaves)
        throw limits_exceeded_error("instance exceeds the oracle size limits");
    long states = oracle_state_count(rec);
    if (states > limits.max_states)
        throw limits_exceeded_error("state count " + std::to_string(states) + " exceeds max_states " +
                                    std::to_string(limits.max_states));

    ExpandedParasite ex = expand_losses(rec);
    auto order = time_order_expanded(ex, H);
    if (!order) throw time_inconsistent_error("reconciliation is not time-consistent");

    std::vector<std::vector<NodeId>> base_groups(H.node_count());
    for (NodeId p : P.leaves()) base_groups[rec.phi[p]].push_back(p);

    const auto& internals = H.internal_nodes();
    const int flips = H.internal_count();

    OracleResult best;
    best.min_crossings = std::numeric_limits<int>::max();

    LayoutOrders orders;
    orders.host_children.assign(H.node_count(), {kNoNode, kNoNode});
    orders.parasites_in_leaf.assign(H.node_count(), {});

    for (long mask = 0; mask < (1L << flips); ++mask) {
        for (int i = 0; i < flips; ++i) {
            NodeId h = internals[i];
            auto [a, b] = H.children(h);
            if (mask >> i & 1) std::swap(a, b);
            orders.host_children[h] = {a, b};
        }

        // Lexicographic enumeration of within-host-leaf permutations.
        std::vector<NodeId> busy_leaves;
        for (NodeId h : H.leaves())
            if (base_groups[h].size() > 1) busy_leaves.push_back(h);
        for (NodeId h = 0; h < H.node_count(); ++h) orders.parasites_in_leaf[h] = base_groups[h];

        bool more = true;
        while (more) {
            ++best.states;
            LayoutOptions opts;
            if (best.min_crossings != std::numeric_limits<int>::max())
                opts.crossing_cap = best.min_crossings;  // prune at the incumbent
            HPLayout candidate = assign_canonical_layout(rec, ex, *order, orders, opts);
            if (candidate.crossing_count < best.min_crossings) {
                best.min_crossings = candidate.crossing_count;
                best.witness = std::move(candidate);
                if (best.min_crossings == 0) return best;
            }
            more = false;
            for (NodeId h : busy_leaves) {
                auto& perm = orders.parasites_in_leaf[h];
                if (std::next_permutation(perm.begin(), perm.end())) {
                    more = true;
                    break;
                }
                // perm wrapped to the first permutation; carry to the next leaf
            }
        }
    }
    return best;
}

bool enumerate_orderings_time_check(const Reconciliation& rec) {
    const auto& P = *rec.parasite;
    const auto& H = *rec.host;
    const int n = P.node_count();
    if (n > 8) throw limits_exceeded_error("factorial time check is limited to 8 parasite nodes");

    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> pos(n);
    do {
        for (int i = 0; i < n; ++i) pos[perm[i]] = i;
        bool ok = true;
        for (NodeId c = 0; c < n && ok; ++c)
            if (c != P.root() && pos[P.parent(c)] >= pos[c]) ok = false;
        for (NodeId a = 0; a < n && ok; ++a)
            for (NodeId b = 0; b < n && ok; ++b)
                if (pos[a] < pos[b] && H.is_proper_ancestor(rec.gamma[b], rec.gamma[a])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

namespace {

// Left-to-right leaves under a flip vector indexed by internal-node order.
std::vector<NodeId> flipped_leaves(const PhyloTree& t, long mask) {
    std::vector<int> flip_index(t.node_count(), -1);
    for (int i = 0; i < t.internal_count(); ++i) flip_index[t.internal_nodes()[i]] = i;
    std::vector<NodeId> out;
    std::vector<NodeId> stack{t.root()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (t.is_leaf(v)) {
            out.push_back(v);
            continue;
        }
        auto [a, b] = t.children(v);
        if (mask >> flip_index[v] & 1) std::swap(a, b);
        stack.push_back(b);
        stack.push_back(a);
    }
    return out;
}

}  // namespace

int ttcm_min_crossings(const PhyloTree& t1, const PhyloTree& t2,
                       const std::vector<std::pair<NodeId, NodeId>>& psi) {
    if (t1.internal_count() > 12 || t2.internal_count() > 12)
        throw limits_exceeded_error("ttcm brute force is limited to small trees");
    std::vector<NodeId> match(t1.node_count(), kNoNode);
    for (auto [a, b] : psi) match[a] = b;

    int best = std::numeric_limits<int>::max();
    for (long m1 = 0; m1 < (1L << t1.internal_count()); ++m1) {
        std::vector<NodeId> order1 = flipped_leaves(t1, m1);
        for (long m2 = 0; m2 < (1L << t2.internal_count()); ++m2) {
            std::vector<NodeId> order2 = flipped_leaves(t2, m2);
            std::vector<int> pos2(t2.node_count(), 0);
            for (size_t i = 0; i < order2.size(); ++i) pos2[order2[i]] = static_cast<int>(i);
            // Tangles in left-to-right order of T1; count inversions.
            std::vector<int> seq;
            for (NodeId l : order1) seq.push_back(pos2[match[l]]);
            int inv = 0;
            for (size_t i = 0; i < seq.size(); ++i)
                for (size_t j = i + 1; j < seq.size(); ++j)
                    if (seq[i] > seq[j]) ++inv;
            best = std::min(best, inv);
            if (best == 0) return 0;
        }
    }
    return best;
}

}  // namespace hpdraw
