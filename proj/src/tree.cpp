#include "fringe/tree.hpp"

namespace fringe {

std::int64_t leaf_count(const Tree& t) {
    // The arena holds exactly one full binary tree, so leaves = internals + 1.
    return (t.node_count() + 1) / 2;
}

Tree mirror(const Tree& t) {
    Tree out;
    out.reserve(static_cast<std::size_t>(t.node_count()));
    for (std::int64_t i = 0; i < t.node_count(); ++i) {
        const Tree::Node& nd = t.node(static_cast<NodeId>(i));
        if (nd.is_leaf()) {
            out.add_leaf();
        } else {
            out.add_internal(nd.right, nd.left);
        }
    }
    out.set_root(t.root());
    return out;
}

bool is_well_formed(const Tree& t) {
    if (t.empty()) return false;
    const auto count = static_cast<NodeId>(t.node_count());
    if (t.root() >= count) return false;
    std::vector<bool> seen(count, false);
    std::vector<NodeId> stack{t.root()};
    std::int64_t visited = 0;
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        if (id >= count || seen[id]) return false;  // sharing or dangling id
        seen[id] = true;
        ++visited;
        const Tree::Node& nd = t.node(id);
        if (nd.is_leaf()) {
            if (nd.right != kNilNode) return false;
            continue;
        }
        if (nd.right == kNilNode) return false;
        stack.push_back(nd.left);
        stack.push_back(nd.right);
    }
    return visited == count;
}

}  // namespace fringe
