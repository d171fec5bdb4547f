#include "fringe/models.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fringe {

std::string_view to_string(ModelKind model) {
    return model == ModelKind::Uniform ? "uniform" : "bst";
}

ModelKind parse_model(std::string_view name) {
    if (name == "uniform") return ModelKind::Uniform;
    if (name == "bst") return ModelKind::Bst;
    throw std::invalid_argument("unknown model: " + std::string(name));
}

namespace {

void check_size(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("tree size must be at least 1");
    if (n > (std::int64_t{1} << 31)) throw std::invalid_argument("tree size exceeds 2^31 leaves");
}

}  // namespace

Tree sample_uniform(std::int64_t n, Seed seed) {
    check_size(n);
    Tree t = Tree::single_leaf();
    if (n == 1) return t;
    t.reserve(static_cast<std::size_t>(2 * n - 1));
    SplitMix64 rng(seed);
    // Growth step i -> i+1 leaves: graft a new internal node in place of a
    // uniformly chosen node, with a fresh leaf on a uniformly chosen side.
    // Each of the 2(2i-1) choices is distinct, which keeps every ordered
    // tree shape exactly equally likely at every size.
    for (std::int64_t i = 1; i < n; ++i) {
        std::uint64_t pick = rng.below(static_cast<std::uint64_t>(2 * (2 * i - 1)));
        NodeId target = static_cast<NodeId>(pick >> 1);
        bool leaf_on_left = (pick & 1) != 0;
        // The chosen node keeps its id (so its parent link stays valid) and
        // its old contents move to a fresh slot.
        NodeId moved = t.add_internal(t.node(target).left, t.node(target).right);
        NodeId fresh = t.add_leaf();
        Tree::Node& nd = t.mutable_node(target);
        nd.left = leaf_on_left ? fresh : moved;
        nd.right = leaf_on_left ? moved : fresh;
    }
    return t;
}

Tree sample_bst(std::int64_t n, Seed seed) {
    check_size(n);
    SplitMix64 rng(seed);
    Tree t;
    t.reserve(static_cast<std::size_t>(2 * n - 1));
    // Sizes still to expand, paired with the id of their placeholder node.
    struct Task {
        NodeId id;
        std::int64_t size;
    };
    std::vector<Task> stack;
    NodeId root = t.add_leaf();
    t.set_root(root);
    stack.push_back({root, n});
    while (!stack.empty()) {
        Task task = stack.back();
        stack.pop_back();
        if (task.size == 1) continue;
        std::int64_t left = 1 + static_cast<std::int64_t>(
                                    rng.below(static_cast<std::uint64_t>(task.size - 1)));
        NodeId l = t.add_leaf();
        NodeId r = t.add_leaf();
        Tree::Node& nd = t.mutable_node(task.id);
        nd.left = l;
        nd.right = r;
        stack.push_back({l, left});
        stack.push_back({r, task.size - left});
    }
    return t;
}

Tree sample(ModelKind model, std::int64_t n, Seed seed) {
    return model == ModelKind::Uniform ? sample_uniform(n, seed) : sample_bst(n, seed);
}

Tree sample_uniform_split(std::int64_t n, Seed seed) {
    check_size(n);
    if (n > 33) throw std::invalid_argument("split sampler needs n <= 33");
    // catalan[m] = C_m = number of ordered binary trees with m+1 leaves;
    // C_32 still fits in 64 bits.
    std::vector<std::uint64_t> catalan(static_cast<std::size_t>(n), 0);
    catalan[0] = 1;
    for (std::size_t m = 1; m < catalan.size(); ++m)
        catalan[m] = catalan[m - 1] * 2 * (2 * m - 1) / (m + 1);

    SplitMix64 rng(seed);
    Tree t;
    t.reserve(static_cast<std::size_t>(2 * n - 1));
    struct Task {
        NodeId id;
        std::int64_t size;
        std::uint64_t rank;
    };
    std::vector<Task> stack;
    NodeId root = t.add_leaf();
    t.set_root(root);
    stack.push_back({root, n, rng.below(catalan[static_cast<std::size_t>(n - 1)])});
    while (!stack.empty()) {
        Task task = stack.back();
        stack.pop_back();
        if (task.size == 1) continue;
        // Unrank: trees with left size i occupy a block of C_{i-1}*C_{size-i-1}
        // consecutive ranks, lexicographic in (left size, left rank, right rank).
        std::int64_t left = 1;
        std::uint64_t rank = task.rank;
        for (;; ++left) {
            std::uint64_t block = catalan[static_cast<std::size_t>(left - 1)] *
                                  catalan[static_cast<std::size_t>(task.size - left - 1)];
            if (rank < block) break;
            rank -= block;
        }
        std::uint64_t right_count = catalan[static_cast<std::size_t>(task.size - left - 1)];
        NodeId l = t.add_leaf();
        NodeId r = t.add_leaf();
        Tree::Node& nd = t.mutable_node(task.id);
        nd.left = l;
        nd.right = r;
        stack.push_back({l, left, rank / right_count});
        stack.push_back({r, task.size - left, rank % right_count});
    }
    return t;
}

double pbst_neg_log2(const Tree& t) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(t.node_count()), 0);
    double bits = 0.0;
    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        if (nd.is_leaf()) {
            sizes[id] = 1;
            return;
        }
        sizes[id] = sizes[nd.left] + sizes[nd.right];
        bits += std::log2(static_cast<double>(sizes[id] - 1));
    });
    return bits;
}

}  // namespace fringe
