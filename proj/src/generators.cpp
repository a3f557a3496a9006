#include "hpdraw/generators.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace hpdraw {

SewingTree gen_sewing_tree(int m, const std::string& anchor1, const std::string& anchor2,
                           const std::string& prefix) {
    if (m < 0) throw error("sewing tree size must be non-negative");
    if (anchor1 == anchor2) throw error("sewing tree anchors must be distinct");
    SewingTree s;
    s.size = m;
    // p_j alternates starting from anchor2 at j=0; q_j maps like p_{j+1}.
    auto p_anchor = [&](int j) { return j % 2 == 0 ? anchor2 : anchor1; };
    std::string newick = prefix + "p0";
    s.gamma.emplace_back(prefix + "p0", p_anchor(0));
    for (int j = 0; j < m; ++j) {
        std::string root = prefix + "p" + std::to_string(j + 1);
        std::string leaf = prefix + "q" + std::to_string(j);
        newick = "(" + newick + "," + leaf + ")" + root;
        s.gamma.emplace_back(root, p_anchor(j + 1));
        s.gamma.emplace_back(leaf, p_anchor(j + 1));
    }
    s.newick_subtree = newick;
    s.root_label = prefix + "p" + std::to_string(m);
    return s;
}

CophyInstance gen_sewing_instance(int m) {
    SewingTree s = gen_sewing_tree(m, "hA", "hB", "s");
    CophyInstance inst;
    inst.host = std::make_shared<PhyloTree>(PhyloTree::from_newick("(hA,hB)hr;"));
    inst.parasite = std::make_shared<PhyloTree>(PhyloTree::from_newick(s.newick_subtree + ";"));
    std::vector<NodeId> gamma(inst.parasite->node_count(), kNoNode);
    for (const auto& [pl, hl] : s.gamma) gamma[inst.parasite->require(pl)] = inst.host->require(hl);
    inst.phi.assign(inst.parasite->node_count(), kNoNode);
    for (NodeId leaf : inst.parasite->leaves()) inst.phi[leaf] = gamma[leaf];
    inst.gammas.emplace_back("sewing", std::move(gamma));
    return inst;
}

namespace {

std::string complete_newick(int height, const std::string& root_label,
                            const std::string& leaf_prefix, const std::string& internal_prefix,
                            int& leaf_counter, int& internal_counter) {
    if (height == 0) return leaf_prefix + std::to_string(++leaf_counter);
    std::string label = root_label.empty() ? internal_prefix + std::to_string(++internal_counter)
                                           : root_label;
    std::string l = complete_newick(height - 1, "", leaf_prefix, internal_prefix, leaf_counter,
                                    internal_counter);
    std::string r = complete_newick(height - 1, "", leaf_prefix, internal_prefix, leaf_counter,
                                    internal_counter);
    return "(" + l + "," + r + ")" + label;
}

bool is_complete(const PhyloTree& t) {
    int h = t.height(t.root());
    for (NodeId leaf : t.leaves())
        if (t.depth(leaf) != h) return false;
    return t.leaf_count() == (1 << h);
}

}  // namespace

PhyloTree gen_complete_tree(int height, const std::string& prefix) {
    if (height < 0) throw error("height must be non-negative");
    int lc = 0, ic = 0;
    if (height == 0) return PhyloTree::from_newick(prefix + "l1;");
    return PhyloTree::from_newick(
        complete_newick(height, prefix + "root", prefix + "l", prefix + "i", lc, ic) + ";");
}

TtcmReduction gen_ttcm_reduction(const PhyloTree& t1, const PhyloTree& t2,
                                 const std::vector<std::pair<NodeId, NodeId>>& psi, int k) {
    if (!is_complete(t1) || !is_complete(t2))
        throw error("ttcm reduction requires complete binary trees");
    int h = t1.height(t1.root());
    if (h != t2.height(t2.root())) throw error("ttcm reduction requires trees of equal height");
    if (h < 1) throw error("ttcm reduction requires height >= 1");
    if (k < 0) throw error("k must be non-negative");

    const int two_h = 1 << h;
    // psi must be a bijection between the leaf sets.
    std::vector<NodeId> match(t1.node_count(), kNoNode);
    std::vector<char> hit(t2.node_count(), 0);
    if (static_cast<int>(psi.size()) != two_h) throw error("psi must cover every leaf exactly once");
    for (auto [a, b] : psi) {
        if (a < 0 || a >= t1.node_count() || !t1.is_leaf(a) || match[a] != kNoNode)
            throw error("psi is not a bijection on the first tree's leaves");
        if (b < 0 || b >= t2.node_count() || !t2.is_leaf(b) || hit[b])
            throw error("psi is not a bijection on the second tree's leaves");
        match[a] = b;
        hit[b] = 1;
    }

    const int k_prime = k + two_h * (two_h - 1);

    // Host: spine rH,h1..h8 with the two complete height-h subtrees at h5/h8.
    int lc = 0, ic = 0;
    std::string sub1 = complete_newick(h, "h5", "h1_", "h5i", lc, ic);
    lc = ic = 0;
    std::string sub2 = complete_newick(h, "h8", "h2_", "h8i", lc, ic);
    std::string host_newick = "((" + sub1 + ",h6)h1,(h3,(h7," + sub2 + ")h4)h2)rH;";

    SewingTree sewA = gen_sewing_tree(k_prime + 1, "h3", "h6", "sA");
    SewingTree sewB = gen_sewing_tree(k_prime + 1, "h3", "h7", "sB");

    // Left-to-right leaf index in the input trees resolves psi to host leaves.
    std::vector<int> idx2(t2.node_count(), -1);
    for (size_t i = 0; i < t2.leaves().size(); ++i) idx2[t2.leaves()[i]] = static_cast<int>(i) + 1;

    // T_h under p2: internal nodes on h2, per-tangle chains below its leaves.
    std::vector<std::pair<std::string, std::string>> gam;  // parasite label -> host label
    gam.emplace_back("rP", "rH");
    gam.emplace_back("p1", "rH");
    for (const auto& g : sewA.gamma) gam.push_back(g);
    for (const auto& g : sewB.gamma) gam.push_back(g);

    int tangle = 0, tc = 0;
    std::function<std::string(int, std::string)> build_th = [&](int height,
                                                                std::string label) -> std::string {
        if (height == 0) {
            ++tangle;
            int i = tangle;
            NodeId l1 = t1.leaves()[i - 1];
            int j = idx2[match[l1]];
            std::string e = "e" + std::to_string(i);
            std::string x1 = "x1_" + std::to_string(i);
            std::string y = "y" + std::to_string(i);
            std::string x2 = "x2_" + std::to_string(j);
            std::string z = "z" + std::to_string(i);
            gam.emplace_back(e, "h3");
            gam.emplace_back(x1, "h1_" + std::to_string(i));
            gam.emplace_back(y, "h3");
            gam.emplace_back(x2, "h2_" + std::to_string(j));
            gam.emplace_back(z, "h3");
            return "(" + x1 + ",(" + x2 + "," + z + ")" + y + ")" + e;
        }
        if (label.empty()) label = "t" + std::to_string(++tc);
        gam.emplace_back(label, "h2");
        std::string l = build_th(height - 1, "");
        std::string r = build_th(height - 1, "");
        return "(" + l + "," + r + ")" + label;
    };
    std::string th = build_th(h, "p2");

    std::string parasite_newick =
        "(" + sewA.newick_subtree + ",(" + sewB.newick_subtree + "," + th + ")p1)rP;";

    TtcmReduction out;
    out.k_prime = k_prime;
    out.instance.host = std::make_shared<PhyloTree>(PhyloTree::from_newick(host_newick));
    out.instance.parasite = std::make_shared<PhyloTree>(PhyloTree::from_newick(parasite_newick));
    const auto& H = *out.instance.host;
    const auto& P = *out.instance.parasite;
    std::vector<NodeId> gamma(P.node_count(), kNoNode);
    for (const auto& [pl, hl] : gam) gamma[P.require(pl)] = H.require(hl);
    out.instance.phi.assign(P.node_count(), kNoNode);
    for (NodeId leaf : P.leaves()) out.instance.phi[leaf] = gamma[leaf];
    out.instance.gammas.emplace_back("reduction", std::move(gamma));
    out.time_consistent =
        check_time_consistency(out.instance.reconciliation(size_t{0})).has_value();
    return out;
}

namespace {

struct GrowingTree {
    std::vector<NodeId> parent{kNoNode};
    std::vector<std::array<NodeId, 2>> kids{{kNoNode, kNoNode}};
    std::vector<NodeId> leaf_slots{0};

    void split(size_t slot) {
        NodeId v = leaf_slots[slot];
        NodeId a = static_cast<NodeId>(parent.size());
        parent.push_back(v);
        kids.push_back({kNoNode, kNoNode});
        NodeId b = static_cast<NodeId>(parent.size());
        parent.push_back(v);
        kids.push_back({kNoNode, kNoNode});
        kids[v] = {a, b};
        leaf_slots[slot] = a;
        leaf_slots.push_back(b);
    }

    std::string to_newick(const std::string& leaf_prefix, const std::string& internal_prefix) const {
        int lc = 0, ic = 0;
        std::function<std::string(NodeId)> rec = [&](NodeId v) -> std::string {
            if (kids[v][0] == kNoNode) return leaf_prefix + std::to_string(++lc);
            std::string l = rec(kids[v][0]);
            std::string r = rec(kids[v][1]);
            return "(" + l + "," + r + ")" + internal_prefix + std::to_string(++ic);
        };
        return rec(0) + ";";
    }
};

}  // namespace

CophyInstance gen_random_instance(int host_leaves, int parasite_leaves, double switch_rate,
                                  uint64_t seed) {
    if (host_leaves < 1 || parasite_leaves < 1) throw error("leaf counts must be positive");
    if (switch_rate < 0.0 || switch_rate > 1.0) throw error("switch_rate must be in [0,1]");
    Rng rng(seed);

    GrowingTree ht;
    for (int i = 1; i < host_leaves; ++i) ht.split(rng.below(ht.leaf_slots.size()));
    GrowingTree pt;
    for (int i = 1; i < parasite_leaves; ++i) pt.split(rng.below(pt.leaf_slots.size()));

    CophyInstance inst;
    inst.host = std::make_shared<PhyloTree>(PhyloTree::from_newick(ht.to_newick("H", "Hi")));
    inst.parasite = std::make_shared<PhyloTree>(PhyloTree::from_newick(pt.to_newick("P", "Pi")));
    const auto& H = *inst.host;
    const auto& P = *inst.parasite;

    inst.phi.assign(P.node_count(), kNoNode);
    for (NodeId leaf : P.leaves())
        inst.phi[leaf] = H.leaves()[rng.below(H.leaves().size())];

    // lca-reconciliation, then postorder perturbation into host-switches.
    std::vector<NodeId> gamma(P.node_count(), kNoNode);
    for (NodeId v : P.postorder()) {
        if (P.is_leaf(v))
            gamma[v] = inst.phi[v];
        else
            gamma[v] = H.lca(gamma[P.children(v)[0]], gamma[P.children(v)[1]]);
    }

    for (NodeId p : P.postorder()) {
        if (P.is_leaf(p)) continue;
        double u = rng.unit();
        if (u >= switch_rate) continue;
        NodeId gp = gamma[p];
        auto [c0, c1] = P.children(p);

        // Candidate new positions for p: hosts strictly below gamma(p) on the
        // path toward one child's image; the arc to the other child becomes
        // the switch. A candidate is kept only if it stays a valid
        // reconciliation and leaves the parent classifiable.
        std::vector<NodeId> cands;
        auto add_side = [&](NodeId g_here, NodeId g_other) {
            for (NodeId x = g_here; x != gp; x = H.parent(x)) {
                if (H.in_subtree(x, g_other)) continue;          // no switch created
                if (H.is_proper_ancestor(g_other, x)) continue;  // would break condition (ii)
                cands.push_back(x);
            }
        };
        add_side(gamma[c0], gamma[c1]);
        add_side(gamma[c1], gamma[c0]);

        NodeId parent = P.parent(p);
        NodeId sibling = kNoNode;
        if (parent != kNoNode)
            sibling = P.children(parent)[0] == p ? P.children(parent)[1] : P.children(parent)[0];
        auto parent_classifiable = [&](NodeId x) {
            if (parent == kNoNode) return true;
            NodeId gpp = gamma[parent], gs = gamma[sibling];
            if (!H.in_subtree(gpp, gs)) return true;       // parent is a host-switch
            if (H.comparable(x, gs)) return true;          // duplication
            return H.lca(x, gs) == gpp;                    // cospeciation
        };
        std::erase_if(cands, [&](NodeId x) { return !parent_classifiable(x); });
        if (cands.empty()) continue;  // rejected; keep the lca value
        gamma[p] = cands[rng.below(cands.size())];
    }

    inst.gammas.emplace_back("g1", std::move(gamma));
    return inst;
}

}  // namespace hpdraw
