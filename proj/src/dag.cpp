#include "fringe/dag.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace fringe::dag {

namespace {

struct MixHash {
    std::size_t operator()(std::uint64_t z) const {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};

// Unique table over (left, right) child-id pairs; id 0 is the leaf.
class PairInterner {
public:
    explicit PairInterner(bool unordered) : unordered_(unordered) {}

    std::uint32_t intern(std::uint32_t a, std::uint32_t b, bool* fresh = nullptr) {
        if (unordered_ && a > b) std::swap(a, b);
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto [it, inserted] = table_.try_emplace(key, next_);
        if (inserted) ++next_;
        if (fresh) *fresh = inserted;
        return it->second;
    }

    std::int64_t distinct() const { return next_; }
    void reserve(std::size_t n) { table_.reserve(n); }

private:
    std::unordered_map<std::uint64_t, std::uint32_t, MixHash> table_;
    std::uint32_t next_ = 1;
    bool unordered_;
};

MinimalDag build_dag(const Tree& t, DagMode mode) {
    PairInterner interner(mode == DagMode::Unordered);
    interner.reserve(static_cast<std::size_t>(t.node_count()));
    MinimalDag dag;
    dag.mode = mode;
    dag.nodes.push_back({});  // id 0: the leaf
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(t.node_count()), 0);
    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        if (nd.is_leaf()) {
            ids[id] = 0;
            return;
        }
        std::uint32_t left = ids[nd.left];
        std::uint32_t right = ids[nd.right];
        if (mode == DagMode::Unordered && left > right) std::swap(left, right);
        bool fresh = false;
        std::uint32_t code = interner.intern(left, right, &fresh);
        if (fresh) dag.nodes.push_back({left, right});
        ids[id] = code;
    });
    dag.root = ids[t.root()];
    return dag;
}

}  // namespace

Tree MinimalDag::expand() const {
    Tree t;
    if (nodes.empty()) return t;
    // Depth-first unfolding; shared DAG nodes are copied out per occurrence.
    struct Task {
        std::uint32_t dag_id;
        NodeId slot;
    };
    std::vector<Task> stack;
    NodeId tree_root = t.add_leaf();
    t.set_root(tree_root);
    stack.push_back({root, tree_root});
    while (!stack.empty()) {
        Task task = stack.back();
        stack.pop_back();
        const Node& nd = nodes[task.dag_id];
        if (nd.is_leaf()) continue;
        NodeId l = t.add_leaf();
        NodeId r = t.add_leaf();
        Tree::Node& slot = t.mutable_node(task.slot);
        slot.left = l;
        slot.right = r;
        stack.push_back({nd.left, l});
        stack.push_back({nd.right, r});
    }
    return t;
}

MinimalDag minimal_dag(const Tree& t) { return build_dag(t, DagMode::Ordered); }

MinimalDag unordered_minimal_dag(const Tree& t) { return build_dag(t, DagMode::Unordered); }

DagSizes dag_sizes(const Tree& t) {
    // Single pass, one unique table per mode.
    PairInterner ordered(false);
    PairInterner unordered(true);
    ordered.reserve(static_cast<std::size_t>(t.node_count()));
    unordered.reserve(static_cast<std::size_t>(t.node_count()));
    std::vector<std::uint32_t> oid(static_cast<std::size_t>(t.node_count()), 0);
    std::vector<std::uint32_t> uid(static_cast<std::size_t>(t.node_count()), 0);
    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        if (nd.is_leaf()) return;
        oid[id] = ordered.intern(oid[nd.left], oid[nd.right]);
        uid[id] = unordered.intern(uid[nd.left], uid[nd.right]);
    });
    return DagSizes{ordered.distinct(), unordered.distinct()};
}

FringeProfile fringe_profile(const Tree& t, std::int64_t tail_threshold,
                             std::span<const ClassFilter> filters, bool with_distinct) {
    FringeProfile profile;
    profile.tail_threshold = tail_threshold;
    profile.filter_counts.assign(filters.size(), 0);

    bool need_sym = false;
    bool need_bits = false;
    for (const ClassFilter& f : filters) {
        need_sym |= f.kind == ClassFilter::Kind::SymAtLeast;
        need_bits |= f.kind == ClassFilter::Kind::PbstBitsAtLeast;
    }
    // Sym thresholds need unordered codes even without distinct counts.
    bool need_unordered = with_distinct || need_sym;

    const auto count = static_cast<std::size_t>(t.node_count());
    std::vector<std::int64_t> sizes(count, 0);
    std::vector<std::uint32_t> oid, uid;
    std::vector<std::int64_t> sym;
    std::vector<double> bits;
    PairInterner ordered(false);
    PairInterner unordered(true);
    if (with_distinct) {
        oid.assign(count, 0);
        ordered.reserve(count);
    }
    if (need_unordered) {
        uid.assign(count, 0);
        unordered.reserve(count);
    }
    if (need_sym) sym.assign(count, 0);
    if (need_bits) bits.assign(count, 0.0);

    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        std::int64_t size = 1;
        bool fresh_ordered = false;
        bool fresh_unordered = false;
        if (!nd.is_leaf()) {
            size = sizes[nd.left] + sizes[nd.right];
            if (with_distinct)
                oid[id] = ordered.intern(oid[nd.left], oid[nd.right], &fresh_ordered);
            if (need_unordered)
                uid[id] = unordered.intern(uid[nd.left], uid[nd.right], &fresh_unordered);
            if (need_sym)
                sym[id] = sym[nd.left] + sym[nd.right] + (uid[nd.left] == uid[nd.right] ? 1 : 0);
            if (need_bits)
                bits[id] = bits[nd.left] + bits[nd.right] + std::log2(static_cast<double>(size - 1));
        }
        sizes[id] = size;

        FringeProfile::SizeCounts& counts = profile.by_size[size];
        counts.total += 1;
        if (with_distinct) {
            if (size == 1 && counts.total == 1) {
                // The first leaf is the one distinct size-1 subtree.
                counts.distinct_ordered += 1;
                counts.distinct_unordered += 1;
            } else if (size > 1) {
                counts.distinct_ordered += fresh_ordered ? 1 : 0;
                counts.distinct_unordered += fresh_unordered ? 1 : 0;
            }
        }
        if (size > tail_threshold) profile.tail_count += 1;

        for (std::size_t i = 0; i < filters.size(); ++i) {
            const ClassFilter& f = filters[i];
            if (f.size != size) continue;
            bool member = false;
            switch (f.kind) {
                case ClassFilter::Kind::All:
                    member = true;
                    break;
                case ClassFilter::Kind::None:
                    member = false;
                    break;
                case ClassFilter::Kind::PbstBitsAtLeast:
                    member = bits[id] >= f.threshold;
                    break;
                case ClassFilter::Kind::SymAtLeast:
                    member = static_cast<double>(sym[id]) >= f.threshold;
                    break;
            }
            if (member) profile.filter_counts[i] += 1;
        }
    });

    profile.leaves = sizes[t.root()];
    return profile;
}

}  // namespace fringe::dag
