#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hpdraw/errors.hpp"

namespace hpdraw {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

// Full rooted binary tree with labelled nodes. Immutable after construction;
// safe for concurrent reads. Child order reflects the input and serves as the
// initial embedding only -- layout algorithms are free to flip it.
class PhyloTree {
public:
    // Parses the Newick subset `( ) , ;`, labels matching [A-Za-z0-9_.|-]+,
    // branch lengths (":1.5") accepted and ignored. Every node must carry a
    // label unless `auto_label_internals` is set, in which case unlabelled
    // internal nodes receive generated names (marked synthetic).
    // Rejects trees where any node has exactly one child or more than two.
    static PhyloTree from_newick(std::string_view text, bool auto_label_internals = false);

    NodeId root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const { return static_cast<int>(leaves_.size()); }
    int internal_count() const { return node_count() - leaf_count(); }

    bool is_leaf(NodeId v) const { return nodes_[check(v)].children[0] == kNoNode; }
    NodeId parent(NodeId v) const { return nodes_[check(v)].parent; }
    const std::array<NodeId, 2>& children(NodeId v) const { return nodes_[check(v)].children; }
    int depth(NodeId v) const { return nodes_[check(v)].depth; }
    // Height of the subtree rooted at v (leaf = 0).
    int height(NodeId v) const { return nodes_[check(v)].height; }
    const std::string& label(NodeId v) const { return nodes_[check(v)].label; }
    bool is_synthetic_label(NodeId v) const { return nodes_[check(v)].synthetic; }

    std::optional<NodeId> find(std::string_view label) const;
    // Like find() but throws unknown_node_error.
    NodeId require(std::string_view label) const;

    // Leaves in left-to-right input order.
    const std::vector<NodeId>& leaves() const { return leaves_; }
    const std::vector<NodeId>& internal_nodes() const { return internals_; }
    std::vector<NodeId> preorder() const;
    std::vector<NodeId> postorder() const;

    // Constant-time LCA (Euler tour + sparse table).
    NodeId lca(NodeId u, NodeId v) const;
    // True iff a != b and a lies on the root path of b.
    bool is_proper_ancestor(NodeId a, NodeId b) const;
    // True iff one of u, v is an ancestor of the other (or u == v).
    bool comparable(NodeId u, NodeId v) const;
    // True iff v lies in the subtree rooted at anc (anc == v included).
    bool in_subtree(NodeId anc, NodeId v) const {
        check(anc);
        check(v);
        return tin_[anc] <= tin_[v] && tout_[v] <= tout_[anc];
    }
    // Number of edges from u down to v; u must be an ancestor of v.
    int path_length(NodeId u, NodeId v) const;
    std::vector<NodeId> subtree_nodes(NodeId v) const;

    std::string to_newick() const;

private:
    struct Node {
        std::string label;
        NodeId parent = kNoNode;
        std::array<NodeId, 2> children{kNoNode, kNoNode};
        int depth = 0;
        int height = 0;
        bool synthetic = false;
    };

    NodeId check(NodeId v) const {
        if (v < 0 || v >= static_cast<NodeId>(nodes_.size()))
            throw unknown_node_error("unknown node id " + std::to_string(v));
        return v;
    }

    void finalize();  // depths, leaf lists, euler tour, sparse table

    std::vector<Node> nodes_;
    NodeId root_ = kNoNode;
    std::vector<NodeId> leaves_;
    std::vector<NodeId> internals_;
    std::unordered_map<std::string, NodeId> by_label_;

    // Euler tour machinery.
    std::vector<int> first_;           // node -> first occurrence in tour
    std::vector<NodeId> tour_;         // euler tour of node ids
    std::vector<int> tin_, tout_;      // subtree intervals
    std::vector<std::vector<int>> sparse_;  // sparse_[k][i]: tour index of min-depth node in [i, i+2^k)
};

}  // namespace hpdraw
