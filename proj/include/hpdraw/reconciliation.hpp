#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hpdraw/phylo_tree.hpp"

namespace hpdraw {

// Host tree H, parasite tree P, leaf map phi and full map gamma.
// phi/gamma are indexed by parasite node id; phi entries for internal
// parasites are kNoNode.
struct Reconciliation {
    std::shared_ptr<const PhyloTree> host;
    std::shared_ptr<const PhyloTree> parasite;
    std::vector<NodeId> phi;
    std::vector<NodeId> gamma;
};

enum class Condition : uint8_t {
    LeafMap = 1,        // (i)  gamma restricted to leaves equals phi
    ChildAboveParent,   // (ii) child mapped to a proper ancestor of the parent's host
    BothChildrenOutside // (iii) neither child mapped inside the parent's host subtree
};

struct Violation {
    Condition condition;
    NodeId node;          // offending parasite node (the child for (ii))
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks conditions (i)-(iii). Condition (ii) uses the proper-ancestor
// reading: gamma(child) == gamma(parent) is allowed. Throws
// unknown_node_error if gamma/phi reference ids outside the trees.
ValidationReport validate(const Reconciliation& rec);

enum class EventType : uint8_t { CoSpeciation, Duplication, HostSwitch };

const char* to_string(EventType e);

// Event labels per internal parasite plus per-arc loss counts. Arcs are
// identified by their child node (every non-root node has one incoming arc).
struct EventReport {
    std::vector<std::optional<EventType>> event;  // by parasite node; nullopt for leaves
    std::vector<int> losses;                      // by child node; 0 for the root slot
    std::vector<char> switch_arc;                 // by child node
    int cospeciations = 0;
    int duplications = 0;
    int host_switches = 0;
    int total_losses = 0;
    // Internal nodes matching none of the three rules (possible for valid
    // mappings whose children land on incomparable hosts strictly below the
    // parent's). Their event entry stays empty.
    int unclassified = 0;
};

// True iff the arc (parent(child), child) is a host-switch under gamma.
bool is_switch_arc(const Reconciliation& rec, NodeId child);

// Losses on the arc into `child`: host path length minus one for comparable
// endpoints (clamped at zero), zero for host-switch arcs.
int count_losses(const Reconciliation& rec, NodeId child);

// Requires a valid reconciliation. Throws event_classification_error if some
// internal node matches none of the three rules.
EventReport classify_events(const Reconciliation& rec);

// Same classification but unclassifiable nodes are only counted, not fatal.
EventReport classify_events_lenient(const Reconciliation& rec);

// Parasite tree with degree-two dummy nodes inserted on each lossy arc, one
// per intermediate host on the gamma(parent)->gamma(child) path.
// Node ids 0..original_count-1 coincide with the original parasite ids.
struct ExpandedParasite {
    struct Node {
        NodeId parent = kNoNode;
        std::array<NodeId, 2> children{kNoNode, kNoNode};  // dummies use children[0] only
    };
    std::vector<Node> nodes;
    std::vector<NodeId> gamma;                       // node -> host
    std::vector<std::string> labels;                 // synthesized for dummies
    std::vector<std::pair<NodeId, NodeId>> origin;   // (dummy - original_count) -> original arc
    int original_count = 0;
    NodeId root = kNoNode;

    bool is_dummy(NodeId v) const { return v >= original_count; }
    bool is_leaf(NodeId v) const { return nodes[v].children[0] == kNoNode; }
    int node_count() const { return static_cast<int>(nodes.size()); }
    int dummy_count() const { return node_count() - original_count; }
};

ExpandedParasite expand_losses(const Reconciliation& rec);

// Recovers the original arc set by contracting dummies; returns arcs as
// (parent, child) pairs over original ids, in child-id order.
std::vector<std::pair<NodeId, NodeId>> contract_expanded(const ExpandedParasite& ex);

// Linear ordering of V(P) such that arcs go forward and no later node maps to
// a proper ancestor of an earlier node's host. Returns std::nullopt when the
// constraint digraph is cyclic. Ties broken by parasite label.
std::optional<std::vector<NodeId>> check_time_consistency(const Reconciliation& rec);

// Same ordering over the nodes of an expanded parasite tree.
std::optional<std::vector<NodeId>> time_order_expanded(const ExpandedParasite& ex,
                                                       const PhyloTree& host);

struct CostVector {
    int cospeciation = 0;
    int duplication = 2;
    int loss = 1;
    int hostswitch = 3;
};

// Total event cost of a valid reconciliation.
long score(const Reconciliation& rec, const CostVector& costs);

}  // namespace hpdraw
