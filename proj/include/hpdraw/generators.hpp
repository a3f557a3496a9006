#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hpdraw/instance.hpp"

namespace hpdraw {

// Deterministic RNG with a fixed algorithm so that a seed reproduces the
// same instance on every platform: std::mt19937_64 raw output with bounded
// draws by rejection sampling (no std::uniform_int_distribution, whose
// output is implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() { return state_(); }

    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = state_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0,1) with 53-bit resolution.
    double unit() { return static_cast<double>(state_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 state_;
};

// The alternating two-anchor parasite gadget: S_0 is a single node on the
// second anchor; S_{m+1} adds a root and a fresh leaf on the opposite anchor.
struct SewingTree {
    int size = 0;
    std::string newick_subtree;  // parasite subtree, no trailing ';'
    std::string root_label;
    std::vector<std::pair<std::string, std::string>> gamma;  // node label -> anchor label
};

// Anchors must be distinct; the caller guarantees they are host leaves.
SewingTree gen_sewing_tree(int m, const std::string& anchor1, const std::string& anchor2,
                           const std::string& prefix = "s");

// Minimal self-contained instance holding one sewing tree between the two
// leaves of a cherry host.
CophyInstance gen_sewing_instance(int m);

struct TtcmReduction {
    CophyInstance instance;  // carries one gamma named "reduction"
    int k_prime = 0;
    bool time_consistent = false;
};

// Crossing-minimization hardness gadget: embeds two complete height-h trees
// matched by psi into a host spine, guarded by two sewing trees of size
// k'+1, with k' = k + 2^h*(2^h-1).
TtcmReduction gen_ttcm_reduction(const PhyloTree& t1, const PhyloTree& t2,
                                 const std::vector<std::pair<NodeId, NodeId>>& psi, int k);

// Complete binary tree of the given height with generated labels.
PhyloTree gen_complete_tree(int height, const std::string& prefix);

// Random full binary trees by repeated leaf splitting, phi uniform over host
// leaves, gamma the lca-reconciliation with each internal node perturbed
// into a host-switch with probability switch_rate. Deterministic per seed.
CophyInstance gen_random_instance(int host_leaves, int parasite_leaves, double switch_rate,
                                  uint64_t seed);

}  // namespace hpdraw
