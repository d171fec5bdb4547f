#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace fringe {

using NodeId = std::uint32_t;
inline constexpr NodeId kNilNode = std::numeric_limits<NodeId>::max();

// Ordered binary tree in an index arena. Every node is either a leaf or has
// exactly two children; the arena holds exactly the nodes of one tree, so
// there is no sharing and leaf count == internal count + 1. Immutable once
// built and safe to share read-only across threads.
class Tree {
public:
    struct Node {
        NodeId left = kNilNode;
        NodeId right = kNilNode;
        bool is_leaf() const { return left == kNilNode; }
    };

    Tree() = default;

    static Tree single_leaf() {
        Tree t;
        t.set_root(t.add_leaf());
        return t;
    }

    NodeId add_leaf() {
        nodes_.push_back(Node{});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    NodeId add_internal(NodeId left, NodeId right) {
        nodes_.push_back(Node{left, right});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    // Removes the most recently added node (enumeration backtracking).
    void pop_node() { nodes_.pop_back(); }

    void set_root(NodeId id) { root_ = id; }
    NodeId root() const { return root_; }

    const Node& node(NodeId id) const { return nodes_[id]; }
    Node& mutable_node(NodeId id) { return nodes_[id]; }
    std::int64_t node_count() const { return static_cast<std::int64_t>(nodes_.size()); }

    void reserve(std::size_t n) { nodes_.reserve(n); }
    bool empty() const { return nodes_.empty(); }

private:
    std::vector<Node> nodes_;
    NodeId root_ = kNilNode;
};

// |t|: the number of leaves.
std::int64_t leaf_count(const Tree& t);

// Swaps the children of every internal node.
Tree mirror(const Tree& t);

// Structural check of the arena invariants (single root, two children per
// internal node, no sharing or cycles).
bool is_well_formed(const Tree& t);

// Post-order visit of node ids (children before parent), without recursion.
template <class F>
void for_each_postorder(const Tree& t, F&& f) {
    if (t.empty()) return;
    struct Frame {
        NodeId id;
        bool expanded;
    };
    std::vector<Frame> stack;
    stack.push_back({t.root(), false});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        const Tree::Node& nd = t.node(fr.id);
        if (nd.is_leaf() || fr.expanded) {
            f(fr.id, nd);
            continue;
        }
        stack.push_back({fr.id, true});
        stack.push_back({nd.right, false});
        stack.push_back({nd.left, false});
    }
}

}  // namespace fringe
