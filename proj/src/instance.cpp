#include "hpdraw/instance.hpp"

#include <algorithm>
#include <sstream>

namespace hpdraw {

Reconciliation CophyInstance::reconciliation(size_t index) const {
    if (index >= gammas.size()) throw error("no gamma with index " + std::to_string(index));
    return Reconciliation{host, parasite, phi, gammas[index].second};
}

Reconciliation CophyInstance::reconciliation(const std::string& name) const {
    for (const auto& [n, g] : gammas)
        if (n == name) return Reconciliation{host, parasite, phi, g};
    throw error("no gamma named '" + name + "'");
}

bool CophyInstance::has_gamma(const std::string& name) const {
    return std::any_of(gammas.begin(), gammas.end(), [&](const auto& g) { return g.first == name; });
}

Reconciliation CophyInstance::lca_reconciliation() const {
    std::vector<NodeId> gamma(parasite->node_count(), kNoNode);
    for (NodeId v : parasite->postorder()) {
        if (parasite->is_leaf(v)) {
            gamma[v] = phi[v];
        } else {
            auto [a, b] = parasite->children(v);
            gamma[v] = host->lca(gamma[a], gamma[b]);
        }
    }
    return Reconciliation{host, parasite, phi, gamma};
}

namespace {

struct Section {
    std::string header;  // without '#'
    std::vector<std::string> lines;
    size_t line_no;
};

std::vector<Section> split_sections(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string line;
    size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            sections.push_back({line.substr(start + 1), {}, no});
        } else {
            if (sections.empty())
                throw parse_error("instance line " + std::to_string(no) +
                                  " appears before any #SECTION header");
            sections.back().lines.push_back(line.substr(start));
        }
    }
    return sections;
}

std::pair<std::string, std::string> split_pair(const std::string& line, size_t line_no) {
    std::istringstream in(line);
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra))
        throw parse_error("expected two labels on line " + std::to_string(line_no));
    return {a, b};
}

}  // namespace

CophyInstance parse_instance(const std::string& text, bool auto_label_internals) {
    CophyInstance inst;
    std::string host_newick, parasite_newick;
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> raw_gammas;
    std::vector<std::pair<std::string, std::string>> raw_phi;

    for (const Section& s : split_sections(text)) {
        std::istringstream head(s.header);
        std::string tag;
        head >> tag;
        if (tag == "HOST" || tag == "PARASITE") {
            std::string joined;
            for (const auto& l : s.lines) joined += l;
            if (joined.empty())
                throw parse_error("#" + tag + " section is empty (line " + std::to_string(s.line_no) + ")");
            (tag == "HOST" ? host_newick : parasite_newick) = joined;
        } else if (tag == "LEAFMAP") {
            for (const auto& l : s.lines) raw_phi.push_back(split_pair(l, s.line_no));
        } else if (tag == "GAMMA") {
            std::string name;
            head >> name;
            if (name.empty()) throw parse_error("#GAMMA requires a name (line " + std::to_string(s.line_no) + ")");
            raw_gammas.push_back({name, {}});
            for (const auto& l : s.lines) raw_gammas.back().second.push_back(split_pair(l, s.line_no));
        } else {
            throw parse_error("unknown section #" + tag + " (line " + std::to_string(s.line_no) + ")");
        }
    }
    if (host_newick.empty()) throw parse_error("missing #HOST section");
    if (parasite_newick.empty()) throw parse_error("missing #PARASITE section");

    inst.host = std::make_shared<PhyloTree>(PhyloTree::from_newick(host_newick, auto_label_internals));
    inst.parasite =
        std::make_shared<PhyloTree>(PhyloTree::from_newick(parasite_newick, auto_label_internals));

    inst.phi.assign(inst.parasite->node_count(), kNoNode);
    for (const auto& [pl, hl] : raw_phi) {
        NodeId p = inst.parasite->require(pl);
        NodeId h = inst.host->require(hl);
        if (!inst.parasite->is_leaf(p))
            throw parse_error("LEAFMAP: " + pl + " is not a parasite leaf");
        if (!inst.host->is_leaf(h))
            throw parse_error("LEAFMAP: phi must map to a host leaf, got " + hl);
        if (inst.phi[p] != kNoNode) throw parse_error("LEAFMAP: duplicate entry for " + pl);
        inst.phi[p] = h;
    }
    for (NodeId leaf : inst.parasite->leaves())
        if (inst.phi[leaf] == kNoNode)
            throw parse_error("LEAFMAP: missing entry for parasite leaf " + inst.parasite->label(leaf));

    for (const auto& [name, entries] : raw_gammas) {
        if (inst.has_gamma(name)) throw parse_error("duplicate gamma name '" + name + "'");
        std::vector<NodeId> gamma = inst.phi;  // leaves default to phi
        std::vector<char> set(inst.parasite->node_count(), 0);
        for (const auto& [pl, hl] : entries) {
            NodeId p = inst.parasite->require(pl);
            NodeId h = inst.host->require(hl);
            if (set[p]) throw parse_error("GAMMA " + name + ": duplicate entry for " + pl);
            set[p] = 1;
            gamma[p] = h;
        }
        for (NodeId v : inst.parasite->internal_nodes())
            if (!set[v])
                throw parse_error("GAMMA " + name + ": missing entry for internal node " +
                                  inst.parasite->label(v));
        inst.gammas.emplace_back(name, std::move(gamma));
    }
    return inst;
}

std::string write_instance(const CophyInstance& inst) {
    std::string out;
    out += "#HOST\n" + inst.host->to_newick() + "\n";
    out += "#PARASITE\n" + inst.parasite->to_newick() + "\n";
    out += "#LEAFMAP\n";
    for (NodeId p : inst.parasite->leaves())
        out += inst.parasite->label(p) + " " + inst.host->label(inst.phi[p]) + "\n";
    for (const auto& [name, gamma] : inst.gammas) {
        out += "#GAMMA " + name + "\n";
        for (NodeId v : inst.parasite->internal_nodes())
            out += inst.parasite->label(v) + " " + inst.host->label(gamma[v]) + "\n";
    }
    return out;
}

void append_gamma_file(CophyInstance& inst, const std::string& text) {
    for (const Section& s : split_sections(text)) {
        std::istringstream head(s.header);
        std::string tag, name;
        head >> tag >> name;
        if (tag != "GAMMA")
            throw parse_error("gamma file may only contain #GAMMA sections, got #" + tag);
        if (name.empty()) throw parse_error("#GAMMA requires a name");
        if (inst.has_gamma(name)) throw parse_error("duplicate gamma name '" + name + "'");
        std::vector<NodeId> gamma = inst.phi;
        std::vector<char> set(inst.parasite->node_count(), 0);
        for (const auto& l : s.lines) {
            auto [pl, hl] = split_pair(l, s.line_no);
            NodeId p = inst.parasite->require(pl);
            NodeId h = inst.host->require(hl);
            if (set[p]) throw parse_error("GAMMA " + name + ": duplicate entry for " + pl);
            set[p] = 1;
            gamma[p] = h;
        }
        for (NodeId v : inst.parasite->internal_nodes())
            if (!set[v])
                throw parse_error("GAMMA " + name + ": missing entry for internal node " +
                                  inst.parasite->label(v));
        inst.gammas.emplace_back(name, std::move(gamma));
    }
}

}  // namespace hpdraw
