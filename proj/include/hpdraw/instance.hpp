#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hpdraw/reconciliation.hpp"

namespace hpdraw {

// Parsed input bundle <H, P, phi> plus zero or more named gamma mappings.
struct CophyInstance {
    std::shared_ptr<const PhyloTree> host;
    std::shared_ptr<const PhyloTree> parasite;
    std::vector<NodeId> phi;  // by parasite node id; kNoNode for internals
    std::vector<std::pair<std::string, std::vector<NodeId>>> gammas;

    Reconciliation reconciliation(size_t index) const;
    Reconciliation reconciliation(const std::string& name) const;
    // gamma(p) = lca of the children's images, leaves by phi.
    Reconciliation lca_reconciliation() const;
    bool has_gamma(const std::string& name) const;
};

// Plain-text instance format:
//   #HOST       one Newick line
//   #PARASITE   one Newick line
//   #LEAFMAP    lines "parasiteLeaf hostLeaf"
//   #GAMMA <name>   optional, repeated; lines "parasiteNode hostNode"
//                   (leaves default to their LEAFMAP entry)
CophyInstance parse_instance(const std::string& text, bool auto_label_internals = false);

std::string write_instance(const CophyInstance& instance);

// Parses "#GAMMA <name>" sections from a standalone file against an already
// parsed instance and appends them.
void append_gamma_file(CophyInstance& instance, const std::string& text);

}  // namespace hpdraw
