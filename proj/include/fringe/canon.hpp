#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fringe/tree.hpp"

namespace fringe {

using CanonCode = std::uint32_t;

// Interns unordered-isomorphism classes bottom-up: a node's code is looked
// up from the sorted pair of its child codes, so two trees get equal codes
// iff they are isomorphic as unordered trees. The leaf is always code 0.
// Codes are dense and stable within one table; they are not stable across
// runs or tables. One table per thread (or per computation); not locked.
class CanonInterner {
public:
    CanonCode leaf_code() const { return 0; }

    CanonCode intern(CanonCode a, CanonCode b) {
        if (a > b) std::swap(a, b);
        std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto [it, inserted] = table_.try_emplace(key, next_);
        if (inserted) ++next_;
        return it->second;
    }

    // Total classes seen, including the leaf class.
    std::int64_t distinct_codes() const { return next_; }

    void reserve(std::size_t n) { table_.reserve(n); }

private:
    struct MixHash {
        std::size_t operator()(std::uint64_t z) const {
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return static_cast<std::size_t>(z ^ (z >> 31));
        }
    };
    std::unordered_map<std::uint64_t, CanonCode, MixHash> table_;
    CanonCode next_ = 1;
};

// Per-node canonical codes, indexed by NodeId.
std::vector<CanonCode> canonical_codes(const Tree& t, CanonInterner& interner);

// Code of the whole tree under `interner`.
CanonCode canonical_code(const Tree& t, CanonInterner& interner);

// Number of internal nodes whose two child subtrees are isomorphic as
// unordered trees; log2 |Aut(t)|.
std::int64_t sym_count(const Tree& t);

// log2 of the number of ordered trees in t's unordered-isomorphism class:
// leaf_count(t) - 1 - sym_count(t)  (orbit-stabilizer).
std::int64_t iso_class_size_log2(const Tree& t);

struct TreeStats {
    std::int64_t leaves = 0;
    std::int64_t sym = 0;
    std::int64_t aut_log2 = 0;         // == sym
    std::int64_t class_size_log2 = 0;  // == leaves - 1 - sym
};

TreeStats tree_stats(const Tree& t);

}  // namespace fringe
