#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fringe/models.hpp"
#include "fringe/tree.hpp"

namespace fringe::exact {

using BigCount = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

// Correctly rounded-ish (error < 1 ulp + 2^-60 relative) double from an
// exact rational of arbitrary size.
double to_double(const ExactRational& q);
double ratio_as_double(const BigCount& num, const BigCount& den);

BigCount binomial(std::int64_t n, std::int64_t k);

// C_k = binom(2k, k)/(k+1); |T_{k+1}| = C_k.
BigCount catalan(std::int64_t k);

// W_k: unordered binary trees with k leaves.
BigCount wedderburn_etherington(std::int64_t k);
// W_1 .. W_k as a table (index i holds W_i; index 0 unused).
std::vector<BigCount> wedderburn_etherington_upto(std::int64_t k);

// Visits every ordered binary tree with n leaves exactly once, in recursive
// left-size order (left size 1..n-1). The Tree passed to the callback is
// reused between calls; copy it if it must outlive the visit.
// Guarded to 1 <= n <= 14.
void for_each_tree(std::int64_t n, const std::function<void(const Tree&)>& fn);

// Exact E(X_{n,k}) under the uniform model for a size-k class of s_k trees:
//   s_k * binom(2n-2k, n-k) * n / binom(2n-2, n-1),
// evaluated as balanced falling-factorial products so large n stays cheap.
ExactRational expected_occurrences_uniform(std::int64_t n, std::int64_t k, const BigCount& s_k);

// Exact variance of the same count via the second factorial moment
//   E binom(X,2) = (n-2k+1)/2 * binom(2n-4k+2, n-2k+1) * s_k^2 * n / binom(2n-2, n-1)
// (zero when 2k > n, since two disjoint size-k fringe subtrees cannot fit).
ExactRational variance_occurrences_uniform(std::int64_t n, std::int64_t k, const BigCount& s_k);

// Exact E of the number of identical ordered pairs among size-k fringe
// subtrees, uniform model: C_{n-2k+1} * binom(n-2k+2, 2) * C_{k-1} / C_{n-1};
// zero when 2k > n.
ExactRational expected_identical_pairs_uniform(std::int64_t n, std::int64_t k);

// Exact E(Z_{n,k}) under the binary search tree model:
// 2n/(k(k+1)) for k < n, and 1 for k = n.
ExactRational expected_z_bst(std::int64_t n, std::int64_t k);

// Large-n reference for V(Z_{n,k}):
//   2(k-1)(4k^2-3k-4) n / ((k+1)^2 k (2k-1)(2k+1)),  k >= 2.
// Exact only once n is large relative to k (it already matches enumeration
// for n > 2k); treat as an asymptotic reference otherwise.
double variance_z_bst_asymptotic(std::int64_t n, std::int64_t k);

// Weight of t under the binary search tree model, prod 1/(|t(v)|-1).
ExactRational pbst_weight(const Tree& t);

// Sum over T_n of weight(t) * f(t), with the exact model weight. n <= 12.
ExactRational brute_force_expectation(std::int64_t n, ModelKind model,
                                      const std::function<std::int64_t(const Tree&)>& f);
double brute_force_expectation_real(std::int64_t n, ModelKind model,
                                    const std::function<double(const Tree&)>& f);

}  // namespace fringe::exact
