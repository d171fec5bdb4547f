#include "fringe/canon.hpp"

namespace fringe {

std::vector<CanonCode> canonical_codes(const Tree& t, CanonInterner& interner) {
    std::vector<CanonCode> codes(static_cast<std::size_t>(t.node_count()), 0);
    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        codes[id] = nd.is_leaf() ? interner.leaf_code()
                                 : interner.intern(codes[nd.left], codes[nd.right]);
    });
    return codes;
}

CanonCode canonical_code(const Tree& t, CanonInterner& interner) {
    return canonical_codes(t, interner)[t.root()];
}

std::int64_t sym_count(const Tree& t) {
    CanonInterner interner;
    std::vector<CanonCode> codes = canonical_codes(t, interner);
    std::int64_t sym = 0;
    for (std::int64_t i = 0; i < t.node_count(); ++i) {
        const Tree::Node& nd = t.node(static_cast<NodeId>(i));
        if (!nd.is_leaf() && codes[nd.left] == codes[nd.right]) ++sym;
    }
    return sym;
}

std::int64_t iso_class_size_log2(const Tree& t) {
    return leaf_count(t) - 1 - sym_count(t);
}

TreeStats tree_stats(const Tree& t) {
    TreeStats s;
    s.leaves = leaf_count(t);
    s.sym = sym_count(t);
    s.aut_log2 = s.sym;
    s.class_size_log2 = s.leaves - 1 - s.sym;
    return s;
}

}  // namespace fringe
