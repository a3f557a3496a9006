#pragma once

#include <cstdint>

#include "hpdraw/layout.hpp"

namespace hpdraw {

struct OracleLimits {
    int max_host_leaves = 10;
    int max_parasite_leaves = 10;
    long max_states = 5'000'000;
};

struct OracleResult {
    int min_crossings = 0;
    HPLayout witness;
    long states = 0;  // layouts actually evaluated
};

// Number of layouts in the canonical family: host flip vectors times
// within-host-leaf parasite orderings. Saturates at a large sentinel.
long oracle_state_count(const Reconciliation& rec);

// Exhaustive minimum over the canonical layout family: all 2^|internal(H)|
// child-order flips of H and all orderings of parasite leaves within each
// host leaf, with the canonical coordinate rules. This is the minimum over
// that family, not over all HP-drawings. Throws limits_exceeded_error when
// the instance exceeds the limits, time_inconsistent_error when no temporal
// ordering exists.
OracleResult brute_force_min_crossings(const Reconciliation& rec, const OracleLimits& limits = {});

// Factorial check of the time-consistency definition; |V(P)| <= 8.
// Used as an oracle against check_time_consistency.
bool enumerate_orderings_time_check(const Reconciliation& rec);

// Brute-force tanglegram crossing minimum over all embeddings of two small
// binary trees whose leaves are matched by psi (pairs of leaf ids).
int ttcm_min_crossings(const PhyloTree& t1, const PhyloTree& t2,
                       const std::vector<std::pair<NodeId, NodeId>>& psi);

}  // namespace hpdraw
