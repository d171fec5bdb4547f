#include "fringe/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace fringe::exact {

namespace mp = boost::multiprecision;

double ratio_as_double(const BigCount& num, const BigCount& den) {
    if (den == 0) throw std::invalid_argument("ratio_as_double: zero denominator");
    if (num == 0) return 0.0;
    // Scale so the integer quotient carries ~64 significant bits, then
    // convert and undo the scaling exactly with ldexp.
    const auto num_bits = static_cast<std::int64_t>(mp::msb(num));
    const auto den_bits = static_cast<std::int64_t>(mp::msb(den));
    std::int64_t shift = 64 - (num_bits - den_bits);
    BigCount scaled = shift >= 0 ? BigCount(num << shift) : BigCount(num >> -shift);
    BigCount quotient = scaled / den;
    return std::ldexp(quotient.convert_to<double>(), static_cast<int>(-shift));
}

double to_double(const ExactRational& q) {
    BigCount num = mp::numerator(q);
    BigCount den = mp::denominator(q);
    bool negative = num < 0;
    if (negative) num = -num;
    double d = ratio_as_double(num, den);
    return negative ? -d : d;
}

BigCount binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigCount result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

BigCount catalan(std::int64_t k) {
    if (k < 0) throw std::invalid_argument("catalan: negative index");
    return binomial(2 * k, k) / (k + 1);
}

std::vector<BigCount> wedderburn_etherington_upto(std::int64_t k) {
    if (k < 1) throw std::invalid_argument("wedderburn_etherington: index must be >= 1");
    std::vector<BigCount> w(static_cast<std::size_t>(k) + 1);
    w[1] = 1;
    for (std::int64_t n = 2; n <= k; ++n) {
        const std::int64_t half = n / 2;
        BigCount sum = 0;
        // Unordered root split {i, n-i}; the halved case counts unordered
        // pairs with repetition.
        for (std::int64_t i = 1; 2 * i < n; ++i) sum += w[i] * w[n - i];
        if (n % 2 == 0) sum += w[half] * (w[half] + 1) / 2;
        w[n] = sum;
    }
    return w;
}

BigCount wedderburn_etherington(std::int64_t k) {
    return wedderburn_etherington_upto(k)[static_cast<std::size_t>(k)];
}

namespace {

// Builds every tree of `size` on top of `t`, invoking `visit` with the root
// id of the finished subtree, then unwinding. Children sit below their
// parent in the arena during the callback, so the arena is a single tree
// whenever `visit` fires at top level.
void enumerate_rec(Tree& t, std::int64_t size, const std::function<void(NodeId)>& visit) {
    if (size == 1) {
        NodeId id = t.add_leaf();
        visit(id);
        t.pop_node();
        return;
    }
    for (std::int64_t left = 1; left < size; ++left) {
        std::function<void(NodeId)> with_left = [&](NodeId left_id) {
            std::function<void(NodeId)> with_right = [&](NodeId right_id) {
                NodeId id = t.add_internal(left_id, right_id);
                visit(id);
                t.pop_node();
            };
            enumerate_rec(t, size - left, with_right);
        };
        enumerate_rec(t, left, with_left);
    }
}

}  // namespace

void for_each_tree(std::int64_t n, const std::function<void(const Tree&)>& fn) {
    if (n < 1 || n > 14) throw std::invalid_argument("for_each_tree: n must be in [1, 14]");
    Tree t;
    t.reserve(static_cast<std::size_t>(2 * n - 1));
    enumerate_rec(t, n, [&](NodeId root) {
        t.set_root(root);
        fn(t);
    });
}

namespace {

// prod_{i=lo}^{hi} i (empty product = 1).
BigCount range_product(std::int64_t lo, std::int64_t hi) {
    BigCount p = 1;
    for (std::int64_t i = lo; i <= hi; ++i) p *= i;
    return p;
}

}  // namespace

ExactRational expected_occurrences_uniform(std::int64_t n, std::int64_t k, const BigCount& s_k) {
    if (k < 1 || k > n) throw std::invalid_argument("expected_occurrences_uniform: need 1 <= k <= n");
    if (s_k < 0 || s_k > catalan(k - 1))
        throw std::invalid_argument("expected_occurrences_uniform: s_k exceeds C_{k-1}");
    // binom(2n-2k, n-k) / binom(2n-2, n-1) written with the factorials
    // cancelled, so only 2(k-1) small factors are multiplied.
    BigCount top = range_product(n - k + 1, n - 1);
    ExactRational e(s_k * n * top * top, range_product(2 * n - 2 * k + 1, 2 * n - 2));
    return e;
}

ExactRational variance_occurrences_uniform(std::int64_t n, std::int64_t k, const BigCount& s_k) {
    ExactRational mean = expected_occurrences_uniform(n, k, s_k);
    ExactRational second_factorial = 0;
    if (2 * k <= n) {
        BigCount top = range_product(n - 2 * k + 2, n - 1);
        second_factorial = ExactRational(s_k * s_k * n * (n - 2 * k + 1) * top * top,
                                         2 * range_product(2 * n - 4 * k + 3, 2 * n - 2));
    }
    return 2 * second_factorial + mean - mean * mean;
}

ExactRational expected_identical_pairs_uniform(std::int64_t n, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("expected_identical_pairs_uniform: need k >= 1");
    if (2 * k > n) return 0;
    return ExactRational(catalan(n - 2 * k + 1) * binomial(n - 2 * k + 2, 2) * catalan(k - 1),
                         catalan(n - 1));
}

ExactRational expected_z_bst(std::int64_t n, std::int64_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("expected_z_bst: need 1 <= k <= n");
    if (k == n) return 1;
    return ExactRational(2 * n, k * (k + 1));
}

double variance_z_bst_asymptotic(std::int64_t n, std::int64_t k) {
    if (k < 2 || k > n) throw std::invalid_argument("variance_z_bst_asymptotic: need 2 <= k <= n");
    double kd = static_cast<double>(k);
    double num = 2.0 * (kd - 1.0) * (4.0 * kd * kd - 3.0 * kd - 4.0) * static_cast<double>(n);
    double den = (kd + 1.0) * (kd + 1.0) * kd * (2.0 * kd - 1.0) * (2.0 * kd + 1.0);
    return num / den;
}

ExactRational pbst_weight(const Tree& t) {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(t.node_count()), 0);
    BigCount denominator = 1;
    for_each_postorder(t, [&](NodeId id, const Tree::Node& nd) {
        if (nd.is_leaf()) {
            sizes[id] = 1;
            return;
        }
        sizes[id] = sizes[nd.left] + sizes[nd.right];
        denominator *= (sizes[id] - 1);
    });
    return ExactRational(1, denominator);
}

ExactRational brute_force_expectation(std::int64_t n, ModelKind model,
                                      const std::function<std::int64_t(const Tree&)>& f) {
    if (n < 1 || n > 12) throw std::invalid_argument("brute_force_expectation: n must be in [1, 12]");
    ExactRational sum = 0;
    if (model == ModelKind::Uniform) {
        BigCount total = 0;
        for_each_tree(n, [&](const Tree& t) {
            sum += f(t);
            ++total;
        });
        return sum / ExactRational(total);
    }
    for_each_tree(n, [&](const Tree& t) { sum += pbst_weight(t) * f(t); });
    return sum;
}

double brute_force_expectation_real(std::int64_t n, ModelKind model,
                                    const std::function<double(const Tree&)>& f) {
    if (n < 1 || n > 12) throw std::invalid_argument("brute_force_expectation: n must be in [1, 12]");
    double sum = 0.0;
    if (model == ModelKind::Uniform) {
        std::int64_t total = 0;
        for_each_tree(n, [&](const Tree& t) {
            sum += f(t);
            ++total;
        });
        return sum / static_cast<double>(total);
    }
    for_each_tree(n, [&](const Tree& t) { sum += to_double(pbst_weight(t)) * f(t); });
    return sum;
}

}  // namespace fringe::exact
