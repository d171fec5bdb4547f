#pragma once

#include <cstdint>
#include <vector>

#include "fringe/parallel.hpp"
#include "fringe/rng.hpp"

namespace fringe::constants {

// Published reference decimals the engine is checked against.
inline constexpr double kReferenceGamma = 0.2710416936;
inline constexpr double kReferenceMu = 1.7363771368;
inline constexpr double kReferenceNu = 0.3795493473;
inline constexpr double kReferenceB = 2.4832535362;
inline constexpr double kReferenceC = 1.3285649405;
inline constexpr double kReferenceC1 = 1.0591261434;
inline constexpr double kReferenceC2 = 1.0761505454;
inline constexpr double kReferenceC3 = 1.5470025923;
inline constexpr double kReferenceC4 = 1.8191392203;
inline constexpr double kReferenceC5 = 2.4071298335;
inline constexpr double kReferenceC6 = 2.7725887222;
inline constexpr double kReferenceSymBstVariance = 0.115;

struct SeriesEstimate {
    double value = 0.0;        // best estimate of the series limit
    double tail_bound = 0.0;   // certified bound on |value - limit|
    double partial_sum = 0.0;  // plain sum of the first `terms` terms
    std::int64_t terms = 0;
};

// mu = sum_{k>=1} 2 log2(k) / ((k+1)(k+2)).
// partial_sum is the Kahan sum to K; value adds a midpoint-rule estimate of
// the tail integral, which leaves an error below log2(K)/(6 K^3) since the
// summand is convex beyond k = 3. tail_bound is the elementary remainder
// bound 2 (log2 K + 2/ln 2) / K, valid for either estimate.
SeriesEstimate mu_series(std::int64_t terms);

// nu = sum_{k>=1} P_k^1 / (k (2k+1)(2k-1)), with P from the isomorphism
// probability recurrence below. value == partial_sum: P_k^1 decays
// exponentially, so no tail correction is worthwhile. tail_bound uses
// P <= 1: sum_{k>K} 1/(k(2k+1)(2k-1)) <= 1/(8 K^2).
SeriesEstimate nu_series(std::int64_t terms);

// P_k^r: probability that 2^r independent random binary search trees of
// size k are pairwise isomorphic. P_k^r = 1 for k in {1,2,3}; the split
// recurrence raises r only on the halved branch, so depth in r is O(log k).
class PIsoTable {
public:
    double get(std::int64_t k, int r);

private:
    void extend(int r, std::int64_t upto);
    std::vector<std::vector<double>> levels_ = std::vector<std::vector<double>>(64);
};

// One-shot evaluation with a private table.
double p_iso(std::int64_t k, int r);

// Growth constant of the Wedderburn-Etherington numbers via the corrected
// ratio (W_{K+1}/W_K) * ((K+1)/K)^{3/2}. K >= 10.
double estimate_b(std::int64_t k_ratio);

struct GammaEstimate {
    double mean = 0.0;    // Monte Carlo mean of sym(T)/k over uniform trees
    double stderror = 0.0;
    std::int64_t trials = 0;
};

GammaEstimate estimate_gamma(std::int64_t k, std::int64_t trials, Seed seed,
                             ExecMode mode = ExecMode::Parallel);

struct ConstantsReport {
    double gamma = 0.0;
    double mu = 0.0, mu_tail_bound = 0.0;
    double nu = 0.0, nu_tail_bound = 0.0;
    double b = 0.0;
    double c = 0.0;   // 2 sqrt(ln 4 / pi)
    double c1 = 0.0;  // 2 sqrt((1+gamma) ln 2 / pi)
    double c2 = 0.0;  // 2 sqrt(ln b / pi)
    double c3 = 0.0;  // 2 (mu + nu - 1) ln 2
    double c4 = 0.0;  // 2 ln b
    double c5 = 0.0;  // 2 mu ln 2
    double c6 = 0.0;  // 2 ln 4
};

ConstantsReport derived_constants(double gamma, double mu, double nu, double b);

// Full report: gamma and b are reference inputs, mu and nu are evaluated
// from their series at the given term counts.
ConstantsReport compute_constants(std::int64_t mu_terms = 10'000'000,
                                  std::int64_t nu_terms = 10'000);

}  // namespace fringe::constants
