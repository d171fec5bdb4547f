#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fringe/constants.hpp"
#include "fringe/dag.hpp"
#include "fringe/models.hpp"
#include "fringe/parallel.hpp"
#include "fringe/rng.hpp"

namespace fringe::experiment {

enum class CutPointRule { Log4, LogB, Custom };

struct ExperimentConfig {
    ModelKind model = ModelKind::Uniform;
    std::int64_t n = 1;
    std::int64_t trials = 1;
    Seed seed = 0;
    double epsilon = 1.0 / 6.0;  // must stay below 1/3
    double delta = 0.5;          // must stay below 2/3
    CutPointRule cut_rule = CutPointRule::Log4;
    double cut_a = 0.0;  // the a in a*ln(n) when cut_rule == Custom
    ExecMode exec = ExecMode::Parallel;
    std::int64_t node_budget = 1'000'000'000;  // guard on n * trials

    double cut_coefficient() const;  // a for the chosen rule
    void validate() const;           // throws std::invalid_argument
};

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Aggregate aggregate(const std::vector<double>& values);

struct BandCheck {
    double lo = 0.0;  // band after slack widening
    double hi = 0.0;
    double slack = 1.0;
    bool pass = false;
};

// Count experiment: per trial, the sizes of both minimal DAGs of a sampled
// tree, plus ratios normalized by the theorem scale for the model:
// count * sqrt(ln n) / n (uniform) or count * ln n / n (bst).
struct ExperimentRecord {
    ExperimentConfig config;
    std::vector<std::int64_t> ordered_counts;
    std::vector<std::int64_t> unordered_counts;
    std::vector<double> ordered_ratios;
    std::vector<double> unordered_ratios;
    Aggregate ordered_ratio;
    Aggregate unordered_ratio;
    BandCheck ordered_band;
    BandCheck unordered_band;
};

// slack widens the theorem bands multiplicatively on the outer bounds;
// the asymptotic constants are not sharply attained at desk scale.
ExperimentRecord run_count_experiment(const ExperimentConfig& cfg,
                                      const constants::ConstantsReport& report,
                                      double slack = 1.10);

struct TrendPoint {
    std::int64_t n = 0;
    double ordered_ratio_mean = 0.0;
    double unordered_ratio_mean = 0.0;
};

std::vector<TrendPoint> run_trend(ModelKind model, const std::vector<std::int64_t>& sizes,
                                  std::int64_t trials, Seed seed,
                                  ExecMode mode = ExecMode::Parallel);

// Distance from x to [lo, hi] (zero inside).
double band_distance(double x, double lo, double hi);

// Concentration check for the per-size inequalities
//   |X_{n,k} - E(X_{n,k})| <= s_k^{1/2} 2^{-k} n^{1/2+eps}   (uniform)
//   |X_{n,k} - E(X_{n,k})| <= p_k^{1/2} k^{-1} n^{1/2+eps}   (bst)
// and the tail bounds Y <= n^{1-eps/3} (uniform) / Y <= n^{1-eps/2} (bst).
struct ConcentrationRow {
    std::int64_t k = 0;
    double weight = 0.0;    // s_k (uniform) or p_k (bst) of the class
    double expected = 0.0;  // exact E(X_{n,k})
    double bound = 0.0;
    std::int64_t violations = 0;
    double violation_rate = 0.0;
};

struct ConcentrationReport {
    ExperimentConfig config;
    std::vector<ConcentrationRow> rows;
    std::vector<std::vector<std::int64_t>> counts;  // [trial][row] observed X_{n,k}
    std::vector<std::int64_t> tail_counts;          // [trial] observed Y
    std::int64_t tail_threshold = 0;                // floor(n^eps)
    double tail_limit = 0.0;
    std::int64_t tail_ok = 0;
    double tail_ok_rate = 0.0;
};

// S_k per size: everything, or the theorem-proof classes (trees with
// |Aut| >= 2^{gamma k - k^{3/4}} under the uniform model, trees with
// P_bst <= 2^{-mu k + k^{3/4}} under the bst model).
enum class FilterChoice { All, ProofThreshold };

// Admissible k must satisfy a*ln(n) <= k <= n^eps for the configured rule;
// out-of-range k throws. Exact class weights require k <= 12 for filtered
// classes (enumeration); S_k = T_k works for any admissible k.
ConcentrationReport concentration_check(const ExperimentConfig& cfg, std::int64_t k_min,
                                        std::int64_t k_max,
                                        FilterChoice choice = FilterChoice::All);

// Exact class weight for small k (enumeration, k <= 12): cardinality s_k
// under the uniform model, probability p_k under the bst model.
double class_weight_exact(ModelKind model, std::int64_t k, const dag::ClassFilter& filter);
// Monte Carlo fallback for larger k.
double class_weight_monte_carlo(ModelKind model, std::int64_t k, const dag::ClassFilter& filter,
                                std::int64_t trials, Seed seed);

enum class CltKind { Log2AutUniform, Log2BstWeight, SymBst };

std::string_view to_string(CltKind kind);
CltKind parse_clt_kind(std::string_view name);

// Central limit diagnostics for the additive statistics:
//   Log2AutUniform: sym(T) of a uniform tree   (slope -> gamma)
//   Log2BstWeight:  -log2 P_bst(T) of a bst    (slope -> mu)
//   SymBst:         sym(T) of a bst            (slope -> nu)
// Normality is scored with the Jarque-Bera statistic; p = exp(-JB/2).
struct CltReport {
    CltKind kind = CltKind::Log2AutUniform;
    std::int64_t k = 0;
    std::int64_t trials = 0;
    bool degenerate = false;
    double mean = 0.0;
    double variance = 0.0;  // sample variance (n-1)
    double slope = 0.0;     // mean / k
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double jb_stat = 0.0;
    double jb_p = 0.0;
    std::vector<double> values;
};

CltReport clt_sample(CltKind kind, std::int64_t k, std::int64_t trials, Seed seed,
                     ExecMode mode = ExecMode::Parallel);

// Writers are byte-stable: identical inputs give identical bytes. Reals are
// printed with 12 significant digits.
void export_csv(const ExperimentRecord& record, std::ostream& out);
void export_csv(const CltReport& report, std::ostream& out);
void export_csv(const ConcentrationReport& report, std::ostream& out);
void export_json(const ExperimentRecord& record, std::ostream& out);
void export_json(const CltReport& report, std::ostream& out);
void export_json(const ConcentrationReport& report, std::ostream& out);

// Path versions; I/O failures carry the path in the exception message.
void export_to_file(const ExperimentRecord& record, const std::string& path,
                    const std::string& format);
void export_to_file(const CltReport& report, const std::string& path, const std::string& format);
void export_to_file(const ConcentrationReport& report, const std::string& path,
                    const std::string& format);

// Shared numeric formatting (12 significant digits, locale independent).
std::string fmt_real(double value);

}  // namespace fringe::experiment
