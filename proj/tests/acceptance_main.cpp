// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fringe/canon.hpp"
#include "fringe/cli.hpp"
#include "fringe/constants.hpp"
#include "fringe/dag.hpp"
#include "fringe/exact.hpp"
#include "fringe/experiment.hpp"
#include "fringe/models.hpp"
#include "oracles.hpp"

using namespace fringe;
using exact::BigCount;
using exact::ExactRational;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& line) { g_notes.push_back(line); }

void notef(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    g_notes.push_back(buf);
}

class Criterion {
public:
    Criterion(int number, std::string name)
        : number_(number), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            pass_ = false;
            note("    check failed: " + detail);
        }
    }

    ~Criterion() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("%s criterion %d: %s  [%.1f s]\n", pass_ ? "PASS" : "FAIL", number_,
                    name_.c_str(), secs);
        for (const std::string& line : g_notes) std::printf("%s\n", line.c_str());
        g_notes.clear();
        if (!pass_) ++g_failures;
        std::fflush(stdout);
    }

private:
    int number_;
    std::string name_;
    bool pass_ = true;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt_frac(const ExactRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

void criterion_1_exact_identities() {
    Criterion c(1, "exact identity suite (1 <= k <= n <= 10)");
    for (std::int64_t n = 1; n <= 10; ++n) {
        for (std::int64_t k = 1; k <= n; ++k) {
            ExactRational occ = exact::expected_occurrences_uniform(n, k, exact::catalan(k - 1));
            ExactRational occ_oracle = exact::brute_force_expectation(
                n, ModelKind::Uniform,
                [&](const Tree& t) { return oracle::count_fringe_of_size(t, k); });
            c.require(occ == occ_oracle, "occurrences uniform n=" + std::to_string(n) +
                                             " k=" + std::to_string(k) + ": " + fmt_frac(occ) +
                                             " vs oracle " + fmt_frac(occ_oracle));

            ExactRational pairs = exact::expected_identical_pairs_uniform(n, k);
            ExactRational pairs_oracle = exact::brute_force_expectation(
                n, ModelKind::Uniform,
                [&](const Tree& t) { return oracle::identical_pair_count(t, k); });
            c.require(pairs == pairs_oracle, "identical pairs n=" + std::to_string(n) +
                                                 " k=" + std::to_string(k));

            ExactRational z = exact::expected_z_bst(n, k);
            ExactRational z_oracle = exact::brute_force_expectation(
                n, ModelKind::Bst,
                [&](const Tree& t) { return oracle::count_fringe_of_size(t, k); });
            c.require(z == z_oracle,
                      "E(Z) bst n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                          fmt_frac(z) + " vs oracle " + fmt_frac(z_oracle));
        }
    }
}

void criterion_2_dag_oracle() {
    Criterion c(2, "DAG node counts equal naive fringe-set counts (all T_n, n <= 8)");
    for (std::int64_t n = 1; n <= 8; ++n) {
        exact::for_each_tree(n, [&](const Tree& t) {
            oracle::DagCounts naive = oracle::naive_dag_counts(t);
            c.require(dag::minimal_dag(t).node_count() == naive.ordered,
                      "ordered count mismatch at " + oracle::serialize(t));
            c.require(dag::unordered_minimal_dag(t).node_count() == naive.unordered,
                      "unordered count mismatch at " + oracle::serialize(t));
        });
    }
}

void criterion_3_sequences() {
    Criterion c(3, "enumeration sequences and the growth-constant estimate");
    for (std::int64_t n = 1; n <= 12; ++n) {
        std::int64_t count = 0;
        exact::for_each_tree(n, [&](const Tree&) { ++count; });
        c.require(BigCount(count) == exact::catalan(n - 1),
                  "tree count at n=" + std::to_string(n));
    }
    CanonInterner interner;
    for (std::int64_t n = 1; n <= 10; ++n) {
        std::set<CanonCode> codes;
        exact::for_each_tree(n, [&](const Tree& t) { codes.insert(canonical_code(t, interner)); });
        c.require(BigCount(codes.size()) == exact::wedderburn_etherington(n),
                  "class count at n=" + std::to_string(n));
    }
    double b = constants::estimate_b(500);
    notef("    b ratio estimate at K=500: %.10f (reference %.10f)", b, constants::kReferenceB);
    c.require(std::abs(b - constants::kReferenceB) < 1e-3, "b estimate off by more than 1e-3");
}

void criterion_4_constants() {
    Criterion c(4, "numerical constants");
    constants::SeriesEstimate mu = constants::mu_series(10'000'000);
    notef("    mu(1e7) = %.12f, tail bound %.3g", mu.value, mu.tail_bound);
    c.require(mu.tail_bound <= 1e-5, "mu tail bound above 1e-5");
    c.require(std::abs(mu.value - constants::kReferenceMu) <= 1e-8,
              "mu observed error above 1e-8");

    constants::SeriesEstimate nu = constants::nu_series(10'000);
    notef("    nu(1e4) = %.12f, tail bound %.3g", nu.value, nu.tail_bound);
    c.require(std::abs(nu.value - constants::kReferenceNu) <= 1e-8,
              "nu observed error above 1e-8");

    constants::PIsoTable table;
    c.require(std::abs(table.get(4, 1) - 5.0 / 9.0) <= 1e-15, "P_4^1 differs from 5/9");
    c.require(std::abs(table.get(5, 1) - 7.0 / 18.0) <= 1e-15, "P_5^1 differs from 7/18");
    c.require(std::abs(table.get(4, 1) - oracle::p_iso_brute_force(4, 1)) <= 1e-15,
              "P_4^1 differs from the class-distribution oracle");
    c.require(std::abs(table.get(5, 1) - oracle::p_iso_brute_force(5, 1)) <= 1e-15,
              "P_5^1 differs from the class-distribution oracle");

    constants::ConstantsReport rep =
        constants::derived_constants(constants::kReferenceGamma, mu.value, nu.value,
                                     constants::kReferenceB);
    struct Expected {
        const char* name;
        double value;
        double reference;
    } expected[] = {
        {"c", rep.c, constants::kReferenceC},   {"c1", rep.c1, constants::kReferenceC1},
        {"c2", rep.c2, constants::kReferenceC2}, {"c3", rep.c3, constants::kReferenceC3},
        {"c4", rep.c4, constants::kReferenceC4}, {"c5", rep.c5, constants::kReferenceC5},
        {"c6", rep.c6, constants::kReferenceC6},
    };
    for (const Expected& e : expected) {
        notef("    %s = %.12f (reference %.10f, diff %.2g)", e.name, e.value, e.reference,
              e.value - e.reference);
        c.require(std::abs(e.value - e.reference) <= 1e-9,
                  std::string(e.name) + " differs from the reference by more than 1e-9");
    }
}

void criterion_5_band_smoke() {
    Criterion c(5, "theorem band smoke test at n = 10^6 plus monotone trend");
    constants::ConstantsReport rep =
        constants::derived_constants(constants::kReferenceGamma, constants::kReferenceMu,
                                     constants::kReferenceNu, constants::kReferenceB);

    experiment::ExperimentConfig cfg;
    cfg.n = 1'000'000;
    cfg.trials = 20;
    cfg.seed = 20250810;

    cfg.model = ModelKind::Uniform;
    experiment::ExperimentRecord uni = experiment::run_count_experiment(cfg, rep);
    notef("    uniform: H sqrt(ln n)/n mean = %.4f, F sqrt(ln n)/n mean = %.4f",
          uni.ordered_ratio.mean, uni.unordered_ratio.mean);
    c.require(uni.ordered_ratio.mean >= 1.00 && uni.ordered_ratio.mean <= 1.45,
              "H ratio outside [1.00, 1.45]");
    for (std::size_t i = 0; i < uni.ordered_counts.size(); ++i)
        c.require(uni.unordered_counts[i] <= uni.ordered_counts[i], "F > H in a trial");

    cfg.model = ModelKind::Bst;
    cfg.seed = 20250811;
    experiment::ExperimentRecord bst = experiment::run_count_experiment(cfg, rep);
    notef("    bst: J ln n/n mean = %.4f, G ln n/n mean = %.4f", bst.ordered_ratio.mean,
          bst.unordered_ratio.mean);
    c.require(bst.ordered_ratio.mean >= 2.0 && bst.ordered_ratio.mean <= 3.1,
              "J ratio outside [2.0, 3.1]");
    c.require(bst.unordered_ratio.mean >= 1.3 && bst.unordered_ratio.mean <= 2.1,
              "G ratio outside [1.3, 2.1]");
    for (std::size_t i = 0; i < bst.ordered_counts.size(); ++i)
        c.require(bst.unordered_counts[i] <= bst.ordered_counts[i], "G > J in a trial");

    // Monotone trend: the distance from each normalized mean to its theorem
    // band must not grow as n quadruples (0.02 additive noise allowance).
    const std::vector<std::int64_t> sizes{1 << 14, 1 << 16, 1 << 18, 1 << 20};
    const double kTrendSlack = 0.02;
    auto check_trend = [&](const char* name, const std::vector<double>& means, double lo,
                           double hi) {
        std::string shown = "    trend " + std::string(name) + ":";
        for (double m : means) shown += " " + experiment::fmt_real(m);
        note(shown);
        for (std::size_t i = 0; i + 1 < means.size(); ++i) {
            double d0 = experiment::band_distance(means[i], lo, hi);
            double d1 = experiment::band_distance(means[i + 1], lo, hi);
            c.require(d1 <= d0 + kTrendSlack,
                      std::string(name) + " distance to band grew from n=" +
                          std::to_string(sizes[i]) + " to n=" + std::to_string(sizes[i + 1]));
        }
    };
    std::vector<experiment::TrendPoint> ut =
        experiment::run_trend(ModelKind::Uniform, sizes, 20, 77001);
    std::vector<experiment::TrendPoint> bt = experiment::run_trend(ModelKind::Bst, sizes, 20, 77002);
    std::vector<double> h, f, j, g;
    for (const auto& p : ut) {
        h.push_back(p.ordered_ratio_mean);
        f.push_back(p.unordered_ratio_mean);
    }
    for (const auto& p : bt) {
        j.push_back(p.ordered_ratio_mean);
        g.push_back(p.unordered_ratio_mean);
    }
    check_trend("H", h, rep.c, rep.c);
    check_trend("F", f, rep.c1, rep.c2);
    check_trend("J", j, rep.c5, rep.c6);
    check_trend("G", g, rep.c3, rep.c4);
}

void criterion_6_lemma_scale() {
    Criterion c(6, "lemma mean/variance at n = 10^5, k = 12, 2000 trials");
    const std::int64_t n = 100'000;
    const std::int64_t k = 12;
    const std::int64_t trials = 2000;

    auto sample_counts = [&](ModelKind model, Seed seed) {
        std::vector<double> xs(static_cast<std::size_t>(trials), 0.0);
        std::vector<dag::ClassFilter> filters{dag::ClassFilter::all(k)};
        for_each_index(trials, ExecMode::Parallel, [&](std::int64_t i) {
            Tree t = sample(model, n, SplitMix64::derive(seed, static_cast<std::uint64_t>(i)));
            dag::FringeProfile p = dag::fringe_profile(t, n, filters, false);
            xs[static_cast<std::size_t>(i)] = static_cast<double>(p.filter_counts[0]);
        });
        return xs;
    };
    auto mean_of = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        return m / static_cast<double>(v.size());
    };
    auto variance_of = [&](const std::vector<double>& v) {
        double m = mean_of(v);
        double ss = 0.0;
        for (double x : v) ss += (x - m) * (x - m);
        return ss / static_cast<double>(v.size() - 1);
    };

    // Uniform model.
    std::vector<double> xs = sample_counts(ModelKind::Uniform, 4040);
    double mean = mean_of(xs);
    double var = variance_of(xs);
    double exact_mean =
        exact::to_double(exact::expected_occurrences_uniform(n, k, exact::catalan(k - 1)));
    double reference_var = exact::to_double(exact::catalan(k - 1)) *
                           std::ldexp(1.0, static_cast<int>(2 - 2 * k)) * static_cast<double>(n);
    double exact_var =
        exact::to_double(exact::variance_occurrences_uniform(n, k, exact::catalan(k - 1)));
    notef("    uniform: mean X = %.2f (exact %.2f, rel err %.3f%%)", mean, exact_mean,
          100.0 * std::abs(mean / exact_mean - 1.0));
    notef("    uniform: var X = %.2f vs reference s_k 4^{1-k} n = %.2f (exact variance %.2f)", var,
          reference_var, exact_var);
    c.require(std::abs(mean - exact_mean) <= 0.02 * exact_mean, "uniform mean off by over 2%");
    c.require(std::abs(var - reference_var) <= 0.10 * reference_var,
              "uniform sample variance differs from s_k 4^{1-k} n by more than 10% "
              "(the asymptotic reference itself sits ~32% above the exact variance at k = 12)");

    // Bst model.
    std::vector<double> zs = sample_counts(ModelKind::Bst, 4041);
    double z_var = variance_of(zs);
    double z_reference = exact::variance_z_bst_asymptotic(n, k);
    notef("    bst: var X = %.2f vs formula %.2f (rel err %.3f%%)", z_var, z_reference,
          100.0 * std::abs(z_var / z_reference - 1.0));
    c.require(std::abs(z_var - z_reference) <= 0.10 * z_reference,
              "bst sample variance off the formula value by more than 10%");
}

void criterion_7_concentration() {
    Criterion c(7, "concentration inequalities at n = 10^5, eps = 1/6");
    experiment::ExperimentConfig cfg;
    cfg.n = 100'000;
    cfg.trials = 400;
    cfg.epsilon = 1.0 / 6.0;
    cfg.cut_rule = experiment::CutPointRule::Custom;
    cfg.cut_a = 0.3;  // admissible k: 0.3 ln n <= k <= n^(1/6), i.e. {4, 5, 6}

    cfg.model = ModelKind::Uniform;
    cfg.seed = 52001;
    experiment::ConcentrationReport uni = experiment::concentration_check(cfg, 4, 6);
    for (const auto& row : uni.rows) {
        notef("    uniform k=%lld: violation rate %.3f (E=%.1f, bound=%.1f)",
              static_cast<long long>(row.k), row.violation_rate, row.expected, row.bound);
        c.require(row.violation_rate <= 0.05,
                  "uniform violation rate above 5% at k=" + std::to_string(row.k));
    }
    notef("    uniform tail: Y <= n^(1-eps/3) in %.1f%% of trials", 100.0 * uni.tail_ok_rate);
    c.require(uni.tail_ok_rate >= 0.95, "uniform tail bound satisfied in under 95% of trials");

    cfg.model = ModelKind::Bst;
    cfg.seed = 52002;
    experiment::ConcentrationReport bst = experiment::concentration_check(cfg, 4, 6);
    for (const auto& row : bst.rows) {
        notef("    bst k=%lld: violation rate %.3f (E=%.1f, bound=%.1f)",
              static_cast<long long>(row.k), row.violation_rate, row.expected, row.bound);
        c.require(row.violation_rate <= 0.05,
                  "bst violation rate above 5% at k=" + std::to_string(row.k));
    }
    notef("    bst tail: Y <= n^(1-eps/2) in %.1f%% of trials", 100.0 * bst.tail_ok_rate);
    c.require(bst.tail_ok_rate >= 0.95, "bst tail bound satisfied in under 95% of trials");
}

void criterion_8_clt() {
    Criterion c(8, "central limit diagnostics at k = 2^12, 2000 trials");
    const std::int64_t k = 1 << 12;
    const std::int64_t trials = 2000;
    struct Target {
        experiment::CltKind kind;
        double slope;
        const char* name;
        Seed seed;
    } targets[] = {
        {experiment::CltKind::Log2AutUniform, constants::kReferenceGamma, "gamma", 61001},
        {experiment::CltKind::Log2BstWeight, constants::kReferenceMu, "mu", 61002},
        {experiment::CltKind::SymBst, constants::kReferenceNu, "nu", 61003},
    };
    for (const Target& target : targets) {
        experiment::CltReport rep = experiment::clt_sample(target.kind, k, trials, target.seed);
        notef("    %s: slope %.6f (target %.6f, rel err %.2f%%), skew %.3f, JB p %.3g",
              target.name, rep.slope, target.slope,
              100.0 * std::abs(rep.slope / target.slope - 1.0), rep.skewness, rep.jb_p);
        c.require(!rep.degenerate, std::string(target.name) + ": degenerate sample");
        c.require(std::abs(rep.slope - target.slope) <= 0.05 * target.slope,
                  std::string(target.name) + " slope off by more than 5%");
        c.require(std::abs(rep.skewness) < 0.15,
                  std::string(target.name) + " |skewness| at or above 0.15");
        c.require(rep.jb_p > 1e-3, std::string(target.name) + " normality p-value at or below 1e-3");
        if (target.kind == experiment::CltKind::SymBst) {
            double sigma2 = rep.variance / static_cast<double>(k);
            notef("    sym bst: Var(sym)/k = %.4f (reference %.3f)", sigma2,
                  constants::kReferenceSymBstVariance);
            c.require(std::abs(sigma2 - constants::kReferenceSymBstVariance) <=
                          0.25 * constants::kReferenceSymBstVariance,
                      "Var(sym)/k off 0.115 by more than 25%");
        }
    }
}

int run_cli_to_string(const std::vector<std::string>& args, std::string* out) {
    std::vector<const char*> argv{"fringe"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream os, es;
    int code = fringe::cli::run(static_cast<int>(argv.size()), argv.data(), os, es);
    *out = os.str() + es.str();
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion_9_determinism() {
    Criterion c(9, "byte-identical outputs on repeated runs");
    struct Command {
        const char* label;
        std::vector<std::string> args;
        bool file_output;
    } commands[] = {
        {"generate",
         {"generate", "--model", "bst", "--n", "1000", "--seed", "5", "--count", "10"},
         false},
        {"constants", {"constants", "--mu-terms", "200000", "--nu-terms", "2000"}, false},
        {"experiment counts csv",
         {"experiment", "--kind", "counts", "--model", "uniform", "--n", "4096", "--trials",
          "12", "--seed", "8", "--format", "csv", "--out", "acceptance_out_a"},
         true},
        {"experiment clt csv",
         {"experiment", "--kind", "clt", "--model", "bst", "--stat", "sym", "--n", "512",
          "--trials", "300", "--seed", "8", "--format", "csv", "--out", "acceptance_out_a"},
         true},
        {"experiment concentration json",
         {"experiment", "--kind", "concentration", "--model", "bst", "--n", "100000", "--trials",
          "20", "--seed", "8", "--kmin", "4", "--kmax", "6", "--cut-rule", "custom", "--cut-a",
          "0.3", "--format", "json", "--out", "acceptance_out_a"},
         true},
    };
    for (Command& cmd : commands) {
        std::string out1, out2;
        std::vector<std::string> args2 = cmd.args;
        if (cmd.file_output) args2.back() = "acceptance_out_b";
        int code1 = run_cli_to_string(cmd.args, &out1);
        int code2 = run_cli_to_string(args2, &out2);
        c.require(code1 == 0 && code2 == 0, std::string(cmd.label) + ": nonzero exit");
        c.require(out1 == out2, std::string(cmd.label) + ": stdout differs between runs");
        if (cmd.file_output) {
            std::string f1 = slurp("acceptance_out_a");
            std::string f2 = slurp("acceptance_out_b");
            c.require(!f1.empty() && f1 == f2,
                      std::string(cmd.label) + ": output files differ between runs");
            std::remove("acceptance_out_a");
            std::remove("acceptance_out_b");
        }
    }
}

}  // namespace

int main() {
    criterion_1_exact_identities();
    criterion_2_dag_oracle();
    criterion_3_sequences();
    criterion_4_constants();
    criterion_5_band_smoke();
    criterion_6_lemma_scale();
    criterion_7_concentration();
    criterion_8_clt();
    criterion_9_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
