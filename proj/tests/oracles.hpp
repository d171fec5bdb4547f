// Brute-force reference implementations used only by tests. Everything here
// is recursive and string-based on purpose, independent of the interning
// and traversal machinery it cross-checks.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fringe/exact.hpp"
#include "fringe/tree.hpp"

namespace oracle {

// Ordered serialization, "L" / "(l r)".
std::string serialize(const fringe::Tree& t, fringe::NodeId id);
std::string serialize(const fringe::Tree& t);

// Canonical (unordered) serialization: children sorted as strings.
std::string canon_string(const fringe::Tree& t, fringe::NodeId id);
std::string canon_string(const fringe::Tree& t);

std::int64_t leaf_count(const fringe::Tree& t, fringe::NodeId id);

// Symmetrical nodes via canonical strings.
std::int64_t sym_count(const fringe::Tree& t);

// Number of distinct / non-isomorphic fringe subtrees via string sets.
struct DagCounts {
    std::int64_t ordered = 0;
    std::int64_t unordered = 0;
};
DagCounts naive_dag_counts(const fringe::Tree& t);

// Number of fringe subtrees with exactly k leaves.
std::int64_t count_fringe_of_size(const fringe::Tree& t, std::int64_t k);

// Number of unordered pairs of identical (ordered) fringe subtrees of size k.
std::int64_t identical_pair_count(const fringe::Tree& t, std::int64_t k);

// Probability of each unordered isomorphism class of size-k binary search
// trees, keyed by canonical string. Exact rationals; k <= 12.
std::map<std::string, fringe::exact::ExactRational> bst_class_distribution(std::int64_t k);

// sum over classes of probability^{2^r}: brute-force P_k^r.
double p_iso_brute_force(std::int64_t k, int r);

// Chi-square survival probability with `dof` degrees of freedom.
double chi_square_p_value(double statistic, std::int64_t dof);

}  // namespace oracle
