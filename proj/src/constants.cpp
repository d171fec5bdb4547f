#include "fringe/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fringe/canon.hpp"
#include "fringe/exact.hpp"
#include "fringe/models.hpp"

namespace fringe::constants {

namespace {

// Compensated accumulator; the mu series adds 10^7 tiny terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

SeriesEstimate mu_series(std::int64_t terms) {
    if (terms < 1) throw std::invalid_argument("mu_series: need at least one term");
    KahanSum acc;
    for (std::int64_t k = 2; k <= terms; ++k) {
        double kd = static_cast<double>(k);
        acc.add(2.0 * std::log2(kd) / ((kd + 1.0) * (kd + 2.0)));
    }
    SeriesEstimate est;
    est.terms = terms;
    est.partial_sum = acc.sum;

    // Midpoint-rule tail: sum_{k>K} f(k) ~ int_{K+1/2}^inf f(x) dx with
    //   f(x) = 2 log2(x) / ((x+1)(x+2)),
    // expanded as int = sum_m (-1)^m (2^{m+1}-1) * 2/(a^{m+1} (m+1)) *
    // (log2 a + log2(e)/(m+1)). Three terms leave O(log(a)/a^4); the
    // midpoint rule itself is off by at most log2(a)/(6 a^3) (f convex).
    const double a = static_cast<double>(terms) + 0.5;
    const double log2a = std::log2(a);
    const double log2e = 1.0 / std::numbers::ln2;
    double tail = (2.0 / a) * (log2a + log2e);
    tail -= (3.0 / (a * a)) * (log2a + log2e / 2.0);
    tail += (14.0 / (3.0 * a * a * a)) * (log2a + log2e / 3.0);
    est.value = est.partial_sum + tail;
    est.tail_bound = 2.0 * (std::log2(static_cast<double>(terms)) + 2.0 / std::numbers::ln2) /
                     static_cast<double>(terms);
    return est;
}

void PIsoTable::extend(int r, std::int64_t upto) {
    if (r < 1 || r >= static_cast<int>(levels_.size()))
        throw std::invalid_argument("PIsoTable: r out of range");
    std::vector<double>& level = levels_[static_cast<std::size_t>(r)];
    if (level.empty()) level.assign(1, 0.0);  // index 0 unused
    while (static_cast<std::int64_t>(level.size()) <= upto) {
        const std::int64_t k = static_cast<std::int64_t>(level.size());
        if (k <= 3) {
            level.push_back(1.0);
            continue;
        }
        const double e = std::ldexp(1.0, r);  // 2^r
        const double split2 = std::pow(2.0 / static_cast<double>(k - 1), e);
        double sum = 0.0;
        for (std::int64_t i = 1; 2 * i < k; ++i) sum += level[i] * level[k - i];
        double value = split2 * sum;
        if (k % 2 == 0) {
            // Halved split: 2^{2^r - 1} orientation choices, minus the
            // overcount when the two halves are themselves isomorphic.
            const double split1 = std::pow(1.0 / static_cast<double>(k - 1), e);
            const double p_half = get(k / 2, r);
            const double p_half_up = get(k / 2, r + 1);
            value += 0.5 * split2 * p_half * p_half - (0.5 * split2 - split1) * p_half_up;
        }
        levels_[static_cast<std::size_t>(r)].push_back(value);
    }
}

double PIsoTable::get(std::int64_t k, int r) {
    if (k < 1) throw std::invalid_argument("PIsoTable: k must be >= 1");
    if (k <= 3) return 1.0;
    std::vector<double>& level = levels_[static_cast<std::size_t>(r)];
    if (static_cast<std::int64_t>(level.size()) <= k) extend(r, k);
    return levels_[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
}

double p_iso(std::int64_t k, int r) {
    PIsoTable table;
    return table.get(k, r);
}

SeriesEstimate nu_series(std::int64_t terms) {
    if (terms < 1) throw std::invalid_argument("nu_series: need at least one term");
    PIsoTable table;
    KahanSum acc;
    for (std::int64_t k = 1; k <= terms; ++k) {
        double den = static_cast<double>(k) * static_cast<double>(2 * k + 1) *
                     static_cast<double>(2 * k - 1);
        acc.add(table.get(k, 1) / den);
    }
    SeriesEstimate est;
    est.terms = terms;
    est.partial_sum = acc.sum;
    est.value = acc.sum;
    est.tail_bound = 1.0 / (8.0 * static_cast<double>(terms) * static_cast<double>(terms));
    return est;
}

double estimate_b(std::int64_t k_ratio) {
    if (k_ratio < 10) throw std::invalid_argument("estimate_b: need K >= 10");
    std::vector<exact::BigCount> w = exact::wedderburn_etherington_upto(k_ratio + 1);
    double ratio = exact::ratio_as_double(w[static_cast<std::size_t>(k_ratio + 1)],
                                          w[static_cast<std::size_t>(k_ratio)]);
    double kd = static_cast<double>(k_ratio);
    return ratio * std::pow((kd + 1.0) / kd, 1.5);
}

GammaEstimate estimate_gamma(std::int64_t k, std::int64_t trials, Seed seed, ExecMode mode) {
    if (k < 2) throw std::invalid_argument("estimate_gamma: need k >= 2");
    if (trials < 1) throw std::invalid_argument("estimate_gamma: need at least one trial");
    std::vector<double> values(static_cast<std::size_t>(trials), 0.0);
    for_each_index(trials, mode, [&](std::int64_t i) {
        Tree t = sample_uniform(k, SplitMix64::derive(seed, static_cast<std::uint64_t>(i)));
        values[static_cast<std::size_t>(i)] =
            static_cast<double>(sym_count(t)) / static_cast<double>(k);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    GammaEstimate est;
    est.mean = mean;
    est.trials = trials;
    est.stderror = trials > 1 ? std::sqrt(ss / (static_cast<double>(trials - 1) *
                                                static_cast<double>(trials)))
                              : 0.0;
    return est;
}

ConstantsReport derived_constants(double gamma, double mu, double nu, double b) {
    if (!(b > 1.0)) throw std::invalid_argument("derived_constants: need b > 1");
    const double pi = std::numbers::pi;
    const double ln2 = std::numbers::ln2;
    ConstantsReport r;
    r.gamma = gamma;
    r.mu = mu;
    r.nu = nu;
    r.b = b;
    r.c = 2.0 * std::sqrt(std::log(4.0) / pi);
    r.c1 = 2.0 * std::sqrt((1.0 + gamma) * ln2 / pi);
    r.c2 = 2.0 * std::sqrt(std::log(b) / pi);
    r.c3 = 2.0 * (mu + nu - 1.0) * ln2;
    r.c4 = 2.0 * std::log(b);
    r.c5 = 2.0 * mu * ln2;
    r.c6 = 2.0 * std::log(4.0);
    return r;
}

ConstantsReport compute_constants(std::int64_t mu_terms, std::int64_t nu_terms) {
    SeriesEstimate mu = mu_series(mu_terms);
    SeriesEstimate nu = nu_series(nu_terms);
    ConstantsReport r = derived_constants(kReferenceGamma, mu.value, nu.value, kReferenceB);
    r.mu_tail_bound = mu.tail_bound;
    r.nu_tail_bound = nu.tail_bound;
    return r;
}

}  // namespace fringe::constants
