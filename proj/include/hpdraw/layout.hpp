#pragma once

#include <string>
#include <vector>

#include "hpdraw/planar.hpp"
#include "hpdraw/reconciliation.hpp"

namespace hpdraw {

// All canonical coordinates are integers: rectangle corners even, parasite
// points odd. The bottom border is y=0 and the left border x=0.
struct GridPoint {
    long x = 0;
    long y = 0;
    bool operator==(const GridPoint&) const = default;
};

struct Rect {
    long x_left = 0;
    long x_right = 0;
    long y_bottom = 0;
    long y_top = 0;
};

// Drawing of one parasite arc: a single vertical segment, or a horizontal
// segment at the parent's level followed by a vertical drop.
struct Route {
    NodeId parent = kNoNode;
    NodeId child = kNoNode;
    bool is_switch = false;
    std::vector<GridPoint> pts;  // 2 points (vertical) or 3 (bend at pts[1])
};

struct CrossingRecord {
    int arc_a = 0;  // indices into HPLayout::routes, arc_a < arc_b
    int arc_b = 0;
    GridPoint at;
    bool overlap = false;  // collinear overlap (degenerate), counted once
};

struct HPLayout {
    std::vector<Rect> rects;        // by host node id
    std::vector<GridPoint> points;  // by parasite node id
    struct LossPoint {
        NodeId arc_parent = kNoNode;
        NodeId arc_child = kNoNode;
        NodeId host = kNoNode;
        GridPoint at;
    };
    std::vector<LossPoint> dummies;  // loss markers on expanded arcs
    std::vector<Route> routes;       // sorted by (parent id, child id)
    bool downward = false;
    long top = 0;    // y of the drawing's top border
    long right = 0;  // x of the drawing's right border
    int crossing_count = 0;
    std::vector<CrossingRecord> crossings;
    std::vector<std::string> warnings;  // degenerate-overlap notes
};

struct LayoutOptions {
    // Optional y-compaction: longest-path layering of the time-constraint
    // digraph instead of one level per ordering position.
    bool compact_y = false;
    // Stop counting crossings once this many are found (-1 = exact count).
    // Used by the oracle to prune layouts that cannot beat the incumbent;
    // a layout whose stored count is below the cap was counted exactly.
    long crossing_cap = -1;
};

// Shared coordinate assignment: y from the temporal ordering of the expanded
// parasite tree, x from the host embedding plus within-host-leaf orders,
// internal x copied from a non-switch child. All layout producers and the
// brute-force oracle go through here.
HPLayout assign_canonical_layout(const Reconciliation& rec, const ExpandedParasite& ex,
                                 const std::vector<NodeId>& time_order, const LayoutOrders& orders,
                                 const LayoutOptions& opts = {});

// Planar drawing of a time-consistent reconciliation of a planar instance.
// Throws not_planar_error / time_inconsistent_error otherwise; the result has
// zero crossings and is downward.
HPLayout planar_draw(const Reconciliation& rec, const LayoutOptions& opts = {});

// Same construction from an explicit temporal ordering of V(P) and leaf order
// sigma (left-to-right parasite leaves from a planar embedding).
HPLayout planar_draw(const Reconciliation& rec, const std::vector<NodeId>& pi_prime,
                     const std::vector<NodeId>& sigma, const LayoutOptions& opts = {});

// Heuristic: flip host children to shorten host-switch arcs, order parasite
// leaves within each host leaf by their parents' positions.
HPLayout shorten_host_switch(const Reconciliation& rec, const LayoutOptions& opts = {});

// Heuristic: draw along a maximal planar subgraph of the union graph, then
// route the rejected arcs on top.
HPLayout search_maximal_planar(const Reconciliation& rec, const LayoutOptions& opts = {});

// Unordered arc pairs whose polylines share a point that is not a shared arc
// endpoint. Collinear overlaps count once per pair and are flagged.
// `cap`: stop counting once the count reaches it (-1 = unlimited).
int count_crossings(const std::vector<Route>& routes, std::vector<CrossingRecord>* records,
                    std::vector<std::string>* warnings, long cap = -1);

// Recomputes and stores crossing data on the layout.
void refresh_crossings(HPLayout& layout);

struct ValidityReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Verifies every HPLayout invariant: parity, containment, rectangle tiling,
// route shape, downwardness when claimed, recorded crossing count.
ValidityReport check_layout(const HPLayout& layout, const Reconciliation& rec);

// Tanglegram drawing derived from a planar HP-drawing: hosts at rectangle
// centers, parasite tree mirrored across the bottom line, straight tangles.
struct TanglegramDrawing {
    std::vector<GridPoint> host_pos;      // by host node id
    std::vector<GridPoint> parasite_pos;  // by parasite node id (mirrored)
    std::vector<std::pair<NodeId, NodeId>> tangles;  // (parasite leaf, host leaf)
    std::vector<NodeId> host_leaf_order;
    std::vector<NodeId> parasite_leaf_order;  // equals the sigma of the layout
    bool tangles_planar = false;
};

// Requires a crossing-free layout (throws error otherwise).
TanglegramDrawing hp_to_tanglegram(const HPLayout& layout, const Reconciliation& rec);

}  // namespace hpdraw
