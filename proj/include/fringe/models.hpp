#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fringe/rng.hpp"
#include "fringe/tree.hpp"

namespace fringe {

enum class ModelKind { Uniform, Bst };

std::string_view to_string(ModelKind model);
ModelKind parse_model(std::string_view name);

// Exactly uniform tree over the C_{n-1} ordered binary trees with n leaves,
// grown by Remy-style leaf insertion in O(n). Deterministic in (n, seed).
Tree sample_uniform(std::int64_t n, Seed seed);

// Random binary search tree: a subtree with m > 1 leaves splits its left
// size uniformly over {1, ..., m-1}, which realizes the weight
// prod 1/(|t(v)|-1) over internal nodes. The classical construction by
// inserting a uniformly random permutation induces the same distribution.
Tree sample_bst(std::int64_t n, Seed seed);

Tree sample(ModelKind model, std::int64_t n, Seed seed);

// Cross-check sampler: unranks a uniform index via Catalan-split tables.
// Exact but table-bound; requires n <= 33 so counts fit in 64 bits.
Tree sample_uniform_split(std::int64_t n, Seed seed);

// -log2 of the binary search tree weight of t, i.e. the sum of
// log2(|t(v)|-1) over internal nodes v. This is log2 B for B = P_bst(t)^-1.
double pbst_neg_log2(const Tree& t);

}  // namespace fringe
