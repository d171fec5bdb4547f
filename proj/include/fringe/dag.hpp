#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fringe/tree.hpp"

namespace fringe::dag {

enum class DagMode { Ordered, Unordered };

// Minimal DAG of a tree: one node per distinct (Ordered mode) or per
// non-isomorphic (Unordered mode) fringe subtree. Ids are assigned in
// first-seen post-order; id 0 is the leaf whenever the tree has one.
struct MinimalDag {
    struct Node {
        std::uint32_t left = kNilNode;
        std::uint32_t right = kNilNode;
        bool is_leaf() const { return left == kNilNode; }
    };

    std::vector<Node> nodes;
    std::uint32_t root = kNilNode;
    DagMode mode = DagMode::Ordered;

    std::int64_t node_count() const { return static_cast<std::int64_t>(nodes.size()); }

    // Unfolds the DAG back into a plain tree (ordered mode reproduces the
    // source tree; unordered mode produces one representative).
    Tree expand() const;
};

MinimalDag minimal_dag(const Tree& t);
MinimalDag unordered_minimal_dag(const Tree& t);

struct DagSizes {
    std::int64_t ordered = 0;    // H_n / J_n
    std::int64_t unordered = 0;  // F_n / G_n
};

// Both counts from a single post-order pass with two interning tables.
DagSizes dag_sizes(const Tree& t);

// Membership test for a size-k class S_k, evaluated from per-subtree
// statistics. PbstBitsAtLeast keeps subtrees with -log2 P_bst >= threshold
// (the complement of P_bst > 2^-threshold); SymAtLeast keeps subtrees with
// at least `threshold` symmetrical nodes.
struct ClassFilter {
    enum class Kind { All, None, PbstBitsAtLeast, SymAtLeast };
    std::int64_t size = 0;
    Kind kind = Kind::All;
    double threshold = 0.0;

    static ClassFilter all(std::int64_t k) { return {k, Kind::All, 0.0}; }
    static ClassFilter none(std::int64_t k) { return {k, Kind::None, 0.0}; }
    static ClassFilter pbst_bits_at_least(std::int64_t k, double bits) {
        return {k, Kind::PbstBitsAtLeast, bits};
    }
    static ClassFilter sym_at_least(std::int64_t k, double sym) {
        return {k, Kind::SymAtLeast, sym};
    }
};

// Per-size census of the fringe subtrees of one tree.
struct FringeProfile {
    struct SizeCounts {
        std::int64_t total = 0;             // X_{n,k} for S_k = T_k
        std::int64_t distinct_ordered = 0;
        std::int64_t distinct_unordered = 0;
    };

    std::int64_t leaves = 0;
    std::int64_t tail_threshold = 0;
    std::int64_t tail_count = 0;  // Y: fringe subtrees with size > tail_threshold
    std::map<std::int64_t, SizeCounts> by_size;
    std::vector<std::int64_t> filter_counts;  // parallel to the filters argument
};

// One bottom-up pass. Totals and tail count are always computed; distinct
// counts only when with_distinct is set (they need the interning tables);
// per-subtree sym/bits statistics only when a filter asks for them.
FringeProfile fringe_profile(const Tree& t, std::int64_t tail_threshold,
                             std::span<const ClassFilter> filters = {},
                             bool with_distinct = true);

}  // namespace fringe::dag
