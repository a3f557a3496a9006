#include "hpdraw/phylo_tree.hpp"

#include <algorithm>
#include <cctype>

namespace hpdraw {

namespace {

bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '|' || c == '-';
}

struct NewickParser {
    static constexpr int kMaxDepth = 10000;

    std::string_view text;
    size_t pos = 0;
    int depth = 0;
    bool auto_label;
    PhyloTree* out;  // unused; parse into raw arrays below

    std::vector<std::string> labels;
    std::vector<bool> synthetic;
    std::vector<NodeId> parents;
    std::vector<std::vector<NodeId>> kids;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, static_cast<long>(pos)); }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    std::string read_label() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && is_label_char(text[pos])) ++pos;
        if (pos == start) fail("expected a node label");
        return std::string(text.substr(start, pos - start));
    }

    void skip_branch_length() {
        skip_ws();
        if (pos < text.size() && text[pos] == ':') {
            ++pos;
            size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                    text[pos] == '-' || text[pos] == '+' || text[pos] == 'e' || text[pos] == 'E'))
                ++pos;
            if (pos == start) fail("expected a branch length after ':'");
        }
    }

    NodeId new_node() {
        labels.emplace_back();
        synthetic.push_back(false);
        parents.push_back(kNoNode);
        kids.emplace_back();
        return static_cast<NodeId>(labels.size() - 1);
    }

    NodeId parse_subtree() {
        if (++depth > kMaxDepth) fail("tree nesting deeper than 10000 is not supported");
        NodeId v = new_node();
        if (peek() == '(') {
            ++pos;  // consume '('
            while (true) {
                NodeId c = parse_subtree();
                parents[c] = v;
                kids[v].push_back(c);
                char t = peek();
                if (t == ',') {
                    ++pos;
                    continue;
                }
                if (t == ')') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ')'");
            }
            skip_ws();
            if (pos < text.size() && is_label_char(text[pos])) {
                labels[v] = read_label();
            } else if (auto_label) {
                synthetic[v] = true;  // name assigned later
            } else {
                fail("internal node is missing a label (use --auto-internal-labels to generate names)");
            }
        } else {
            labels[v] = read_label();
        }
        skip_branch_length();
        --depth;
        return v;
    }
};

}  // namespace

PhyloTree PhyloTree::from_newick(std::string_view text, bool auto_label_internals) {
    NewickParser p;
    p.text = text;
    p.auto_label = auto_label_internals;

    NodeId root = p.parse_subtree();
    p.skip_ws();
    if (p.pos >= text.size() || text[p.pos] != ';') p.fail("expected ';' at end of tree");
    ++p.pos;
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters after ';'");

    PhyloTree t;
    t.root_ = root;
    t.nodes_.resize(p.labels.size());
    for (size_t i = 0; i < p.labels.size(); ++i) {
        size_t n = p.kids[i].size();
        if (n != 0 && n != 2) {
            std::string name = p.labels[i].empty() ? ("#" + std::to_string(i)) : p.labels[i];
            throw parse_error("node " + name + " has " + std::to_string(n) +
                              (n == 1 ? " child; trees must be full binary" : " children; trees must be full binary"));
        }
        Node& nd = t.nodes_[i];
        nd.label = p.labels[i];
        nd.synthetic = p.synthetic[i];
        nd.parent = p.parents[i];
        if (n == 2) nd.children = {p.kids[i][0], p.kids[i][1]};
    }

    // Generated names for unlabelled internals, skipping user labels.
    int counter = 1;
    for (auto& nd : t.nodes_) {
        if (!nd.synthetic) continue;
        std::string name;
        do {
            name = "_" + std::to_string(counter++);
        } while (std::any_of(t.nodes_.begin(), t.nodes_.end(),
                             [&](const Node& o) { return o.label == name; }));
        nd.label = name;
    }

    for (NodeId v = 0; v < t.node_count(); ++v) {
        auto [it, inserted] = t.by_label_.emplace(t.nodes_[v].label, v);
        if (!inserted) throw parse_error("duplicate label '" + t.nodes_[v].label + "'");
    }

    t.finalize();
    return t;
}

void PhyloTree::finalize() {
    const int n = node_count();
    first_.assign(n, -1);
    tin_.assign(n, 0);
    tout_.assign(n, 0);
    tour_.clear();
    leaves_.clear();
    internals_.clear();

    // Iterative DFS keeping input child order.
    struct Frame {
        NodeId v;
        int next_child;
    };
    std::vector<Frame> stack{{root_, 0}};
    nodes_[root_].depth = 0;
    int clock = 0;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == 0) {
            tin_[v] = clock++;
            first_[v] = static_cast<int>(tour_.size());
            tour_.push_back(v);
            if (is_leaf(v))
                leaves_.push_back(v);
            else
                internals_.push_back(v);
        }
        if (!is_leaf(v) && next < 2) {
            NodeId c = nodes_[v].children[next];
            ++next;
            nodes_[c].depth = nodes_[v].depth + 1;
            stack.push_back({c, 0});
        } else {
            tout_[v] = clock - 1;
            nodes_[v].height =
                is_leaf(v) ? 0
                           : 1 + std::max(nodes_[nodes_[v].children[0]].height,
                                          nodes_[nodes_[v].children[1]].height);
            stack.pop_back();
            if (!stack.empty()) tour_.push_back(stack.back().v);
        }
    }

    // Sparse table over the Euler tour for min-depth queries.
    const int m = static_cast<int>(tour_.size());
    int levels = 1;
    while ((1 << levels) <= m) ++levels;
    sparse_.assign(levels, std::vector<int>(m));
    for (int i = 0; i < m; ++i) sparse_[0][i] = i;
    for (int k = 1; k < levels; ++k) {
        for (int i = 0; i + (1 << k) <= m; ++i) {
            int a = sparse_[k - 1][i];
            int b = sparse_[k - 1][i + (1 << (k - 1))];
            sparse_[k][i] = nodes_[tour_[a]].depth <= nodes_[tour_[b]].depth ? a : b;
        }
    }
}

std::optional<NodeId> PhyloTree::find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

NodeId PhyloTree::require(std::string_view label) const {
    auto v = find(label);
    if (!v) throw unknown_node_error("unknown node label '" + std::string(label) + "'");
    return *v;
}

std::vector<NodeId> PhyloTree::preorder() const {
    std::vector<NodeId> order;
    order.reserve(node_count());
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        if (!is_leaf(v)) {
            stack.push_back(nodes_[v].children[1]);
            stack.push_back(nodes_[v].children[0]);
        }
    }
    return order;
}

std::vector<NodeId> PhyloTree::postorder() const {
    std::vector<NodeId> order = preorder();
    // Reverse preorder with children swapped equals postorder for binary trees;
    // recompute directly to keep child order conventional.
    std::vector<NodeId> post;
    post.reserve(node_count());
    std::vector<std::pair<NodeId, int>> stack{{root_, 0}};
    while (!stack.empty()) {
        auto& [v, state] = stack.back();
        if (is_leaf(v) || state == 2) {
            post.push_back(v);
            stack.pop_back();
        } else {
            NodeId c = nodes_[v].children[state];
            ++state;
            stack.push_back({c, 0});
        }
    }
    return post;
}

NodeId PhyloTree::lca(NodeId u, NodeId v) const {
    check(u);
    check(v);
    int i = first_[u], j = first_[v];
    if (i > j) std::swap(i, j);
    int span = j - i + 1;
    int k = 0;
    while ((2 << k) <= span) ++k;
    int a = sparse_[k][i];
    int b = sparse_[k][j - (1 << k) + 1];
    return nodes_[tour_[a]].depth <= nodes_[tour_[b]].depth ? tour_[a] : tour_[b];
}

bool PhyloTree::is_proper_ancestor(NodeId a, NodeId b) const {
    return a != b && in_subtree(a, b);
}

bool PhyloTree::comparable(NodeId u, NodeId v) const {
    NodeId l = lca(u, v);
    return l == u || l == v;
}

int PhyloTree::path_length(NodeId u, NodeId v) const {
    if (!in_subtree(u, v))
        throw unknown_node_error("path_length: '" + label(u) + "' is not an ancestor of '" + label(v) + "'");
    return depth(v) - depth(u);
}

std::vector<NodeId> PhyloTree::subtree_nodes(NodeId v) const {
    check(v);
    std::vector<NodeId> out;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        out.push_back(u);
        if (!is_leaf(u)) {
            stack.push_back(nodes_[u].children[1]);
            stack.push_back(nodes_[u].children[0]);
        }
    }
    return out;
}

std::string PhyloTree::to_newick() const {
    std::string out;
    // Explicit stack to avoid recursion on deep caterpillars.
    struct Frame {
        NodeId v;
        int state;
    };
    std::vector<Frame> stack{{root_, 0}};
    while (!stack.empty()) {
        auto& [v, state] = stack.back();
        if (is_leaf(v)) {
            out += nodes_[v].label;
            stack.pop_back();
            continue;
        }
        switch (state) {
            case 0:
                out += '(';
                ++state;
                stack.push_back({nodes_[v].children[0], 0});
                break;
            case 1:
                out += ',';
                ++state;
                stack.push_back({nodes_[v].children[1], 0});
                break;
            default:
                out += ')';
                out += nodes_[v].label;
                stack.pop_back();
        }
    }
    out += ';';
    return out;
}

}  // namespace hpdraw
