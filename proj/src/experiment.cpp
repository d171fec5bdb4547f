#include "fringe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "fringe/canon.hpp"
#include "fringe/exact.hpp"

namespace fringe::experiment {

double ExperimentConfig::cut_coefficient() const {
    switch (cut_rule) {
        case CutPointRule::Log4:
            return 1.0 / std::log(4.0);
        case CutPointRule::LogB:
            return 1.0 / std::log(constants::kReferenceB);
        case CutPointRule::Custom:
            return cut_a;
    }
    return 0.0;
}

void ExperimentConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0 / 3.0))
        throw std::invalid_argument("config: epsilon must lie in (0, 1/3)");
    if (!(delta > 0.0 && delta < 2.0 / 3.0))
        throw std::invalid_argument("config: delta must lie in (0, 2/3)");
    if (cut_rule == CutPointRule::Custom && !(cut_a > 0.0))
        throw std::invalid_argument("config: custom cut rule needs a positive coefficient");
    if (n > node_budget / trials)
        throw std::invalid_argument("config: n * trials exceeds the node budget");
}

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    if (values.empty()) return a;
    a.min = values.front();
    a.max = values.front();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        a.min = std::min(a.min, v);
        a.max = std::max(a.max, v);
    }
    a.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    return a;
}

double band_distance(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

namespace {

BandCheck check_band(double mean, double lo, double hi, double slack) {
    BandCheck b;
    b.slack = slack;
    b.lo = lo / slack;
    b.hi = hi * slack;
    b.pass = mean >= b.lo && mean <= b.hi;
    return b;
}

double ratio_scale(ModelKind model, std::int64_t n) {
    // Theorem normalization: count * sqrt(ln n)/n (uniform), count * ln n / n (bst).
    double ln_n = std::log(static_cast<double>(n));
    double scale = model == ModelKind::Uniform ? std::sqrt(ln_n) : ln_n;
    return scale / static_cast<double>(n);
}

}  // namespace

ExperimentRecord run_count_experiment(const ExperimentConfig& cfg,
                                      const constants::ConstantsReport& report, double slack) {
    cfg.validate();
    if (!(slack >= 1.0)) throw std::invalid_argument("band slack must be >= 1");
    ExperimentRecord rec;
    rec.config = cfg;
    const auto trials = static_cast<std::size_t>(cfg.trials);
    rec.ordered_counts.assign(trials, 0);
    rec.unordered_counts.assign(trials, 0);
    rec.ordered_ratios.assign(trials, 0.0);
    rec.unordered_ratios.assign(trials, 0.0);

    const double scale = ratio_scale(cfg.model, cfg.n);
    for_each_index(cfg.trials, cfg.exec, [&](std::int64_t i) {
        Tree t = sample(cfg.model, cfg.n, SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(i)));
        dag::DagSizes sizes = dag::dag_sizes(t);
        auto slot = static_cast<std::size_t>(i);
        rec.ordered_counts[slot] = sizes.ordered;
        rec.unordered_counts[slot] = sizes.unordered;
        rec.ordered_ratios[slot] = static_cast<double>(sizes.ordered) * scale;
        rec.unordered_ratios[slot] = static_cast<double>(sizes.unordered) * scale;
    });

    rec.ordered_ratio = aggregate(rec.ordered_ratios);
    rec.unordered_ratio = aggregate(rec.unordered_ratios);
    if (cfg.model == ModelKind::Uniform) {
        rec.ordered_band = check_band(rec.ordered_ratio.mean, report.c, report.c, slack);
        rec.unordered_band = check_band(rec.unordered_ratio.mean, report.c1, report.c2, slack);
    } else {
        rec.ordered_band = check_band(rec.ordered_ratio.mean, report.c5, report.c6, slack);
        rec.unordered_band = check_band(rec.unordered_ratio.mean, report.c3, report.c4, slack);
    }
    return rec;
}

std::vector<TrendPoint> run_trend(ModelKind model, const std::vector<std::int64_t>& sizes,
                                  std::int64_t trials, Seed seed, ExecMode mode) {
    constants::ConstantsReport report =
        constants::derived_constants(constants::kReferenceGamma, constants::kReferenceMu,
                                     constants::kReferenceNu, constants::kReferenceB);
    std::vector<TrendPoint> points;
    points.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        ExperimentConfig cfg;
        cfg.model = model;
        cfg.n = sizes[i];
        cfg.trials = trials;
        cfg.seed = SplitMix64::derive(seed, i);
        cfg.exec = mode;
        ExperimentRecord rec = run_count_experiment(cfg, report);
        points.push_back({sizes[i], rec.ordered_ratio.mean, rec.unordered_ratio.mean});
    }
    return points;
}

namespace {

dag::ClassFilter proof_filter(ModelKind model, std::int64_t k) {
    double kd = static_cast<double>(k);
    double shift = std::pow(kd, 0.75);
    if (model == ModelKind::Uniform) {
        // Trees with |Aut| >= 2^{gamma k - k^{3/4}}.
        return dag::ClassFilter::sym_at_least(k, constants::kReferenceGamma * kd - shift);
    }
    // Trees with P_bst <= 2^{-mu k + k^{3/4}}.
    return dag::ClassFilter::pbst_bits_at_least(k, constants::kReferenceMu * kd - shift);
}

bool filter_member(const dag::ClassFilter& f, const Tree& t) {
    switch (f.kind) {
        case dag::ClassFilter::Kind::All:
            return true;
        case dag::ClassFilter::Kind::None:
            return false;
        case dag::ClassFilter::Kind::PbstBitsAtLeast:
            return pbst_neg_log2(t) >= f.threshold;
        case dag::ClassFilter::Kind::SymAtLeast:
            return static_cast<double>(sym_count(t)) >= f.threshold;
    }
    return false;
}

}  // namespace

double class_weight_exact(ModelKind model, std::int64_t k, const dag::ClassFilter& filter) {
    if (filter.kind == dag::ClassFilter::Kind::All)
        return model == ModelKind::Uniform ? exact::ratio_as_double(exact::catalan(k - 1), 1) : 1.0;
    if (filter.kind == dag::ClassFilter::Kind::None) return 0.0;
    if (k > 12) throw std::invalid_argument("class_weight_exact: filtered classes need k <= 12");
    if (model == ModelKind::Uniform) {
        std::int64_t members = 0;
        exact::for_each_tree(k, [&](const Tree& t) { members += filter_member(filter, t) ? 1 : 0; });
        return static_cast<double>(members);
    }
    exact::ExactRational p = 0;
    exact::for_each_tree(k, [&](const Tree& t) {
        if (filter_member(filter, t)) p += exact::pbst_weight(t);
    });
    return exact::to_double(p);
}

double class_weight_monte_carlo(ModelKind model, std::int64_t k, const dag::ClassFilter& filter,
                                std::int64_t trials, Seed seed) {
    if (trials < 1) throw std::invalid_argument("class_weight_monte_carlo: need trials >= 1");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        Tree t = sample(model, k, SplitMix64::derive(seed, static_cast<std::uint64_t>(i)));
        hits += filter_member(filter, t) ? 1 : 0;
    }
    double frac = static_cast<double>(hits) / static_cast<double>(trials);
    if (model == ModelKind::Uniform) return frac * exact::ratio_as_double(exact::catalan(k - 1), 1);
    return frac;
}

ConcentrationReport concentration_check(const ExperimentConfig& cfg, std::int64_t k_min,
                                        std::int64_t k_max, FilterChoice choice) {
    cfg.validate();
    if (k_min < 1 || k_min > k_max) throw std::invalid_argument("concentration: bad k range");
    const double ln_n = std::log(static_cast<double>(cfg.n));
    const double n_eps = std::pow(static_cast<double>(cfg.n), cfg.epsilon);
    const double a = cfg.cut_coefficient();
    if (static_cast<double>(k_min) < a * ln_n || static_cast<double>(k_max) > n_eps)
        throw std::invalid_argument("concentration: k range outside [a ln n, n^eps]");

    ConcentrationReport rep;
    rep.config = cfg;
    rep.tail_threshold = static_cast<std::int64_t>(std::floor(n_eps));
    rep.tail_limit =
        std::pow(static_cast<double>(cfg.n),
                 1.0 - cfg.epsilon / (cfg.model == ModelKind::Uniform ? 3.0 : 2.0));

    const auto k_count = static_cast<std::size_t>(k_max - k_min + 1);
    std::vector<dag::ClassFilter> filters;
    filters.reserve(k_count);
    for (std::int64_t k = k_min; k <= k_max; ++k)
        filters.push_back(choice == FilterChoice::All ? dag::ClassFilter::all(k)
                                                      : proof_filter(cfg.model, k));

    rep.rows.resize(k_count);
    const double half_eps_exp = 0.5 + cfg.epsilon;
    for (std::size_t i = 0; i < k_count; ++i) {
        const std::int64_t k = k_min + static_cast<std::int64_t>(i);
        ConcentrationRow& row = rep.rows[i];
        row.k = k;
        if (cfg.model == ModelKind::Uniform) {
            exact::BigCount s_k;
            if (filters[i].kind == dag::ClassFilter::Kind::All) {
                s_k = exact::catalan(k - 1);
            } else {
                std::int64_t members = 0;
                exact::for_each_tree(k, [&](const Tree& t) {
                    members += filter_member(filters[i], t) ? 1 : 0;
                });
                s_k = members;
            }
            row.weight = exact::ratio_as_double(s_k, 1);
            row.expected = exact::to_double(exact::expected_occurrences_uniform(cfg.n, k, s_k));
            row.bound = std::sqrt(row.weight) * std::ldexp(1.0, static_cast<int>(-k)) *
                        std::pow(static_cast<double>(cfg.n), half_eps_exp);
        } else {
            row.weight = class_weight_exact(ModelKind::Bst, k, filters[i]);
            row.expected = row.weight * exact::to_double(exact::expected_z_bst(cfg.n, k));
            row.bound = std::sqrt(row.weight) / static_cast<double>(k) *
                        std::pow(static_cast<double>(cfg.n), half_eps_exp);
        }
    }

    const auto trials = static_cast<std::size_t>(cfg.trials);
    rep.counts.assign(trials, std::vector<std::int64_t>(k_count, 0));
    rep.tail_counts.assign(trials, 0);
    for_each_index(cfg.trials, cfg.exec, [&](std::int64_t i) {
        Tree t = sample(cfg.model, cfg.n, SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(i)));
        dag::FringeProfile profile =
            dag::fringe_profile(t, rep.tail_threshold, filters, /*with_distinct=*/false);
        auto slot = static_cast<std::size_t>(i);
        rep.counts[slot] = profile.filter_counts;
        rep.tail_counts[slot] = profile.tail_count;
    });

    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (std::size_t i = 0; i < k_count; ++i) {
            double x = static_cast<double>(rep.counts[trial][i]);
            if (std::abs(x - rep.rows[i].expected) > rep.rows[i].bound) ++rep.rows[i].violations;
        }
        if (static_cast<double>(rep.tail_counts[trial]) <= rep.tail_limit) ++rep.tail_ok;
    }
    for (ConcentrationRow& row : rep.rows)
        row.violation_rate = static_cast<double>(row.violations) / static_cast<double>(cfg.trials);
    rep.tail_ok_rate = static_cast<double>(rep.tail_ok) / static_cast<double>(cfg.trials);
    return rep;
}

std::string_view to_string(CltKind kind) {
    switch (kind) {
        case CltKind::Log2AutUniform:
            return "log2_aut_uniform";
        case CltKind::Log2BstWeight:
            return "log2_bst_weight";
        case CltKind::SymBst:
            return "sym_bst";
    }
    return "?";
}

CltKind parse_clt_kind(std::string_view name) {
    if (name == "log2_aut_uniform") return CltKind::Log2AutUniform;
    if (name == "log2_bst_weight") return CltKind::Log2BstWeight;
    if (name == "sym_bst") return CltKind::SymBst;
    throw std::invalid_argument("unknown clt statistic: " + std::string(name));
}

CltReport clt_sample(CltKind kind, std::int64_t k, std::int64_t trials, Seed seed, ExecMode mode) {
    if (k < 1) throw std::invalid_argument("clt_sample: k must be >= 1");
    if (trials < 2) throw std::invalid_argument("clt_sample: need at least two trials");
    CltReport rep;
    rep.kind = kind;
    rep.k = k;
    rep.trials = trials;
    rep.values.assign(static_cast<std::size_t>(trials), 0.0);

    const ModelKind model = kind == CltKind::Log2AutUniform ? ModelKind::Uniform : ModelKind::Bst;
    for_each_index(trials, mode, [&](std::int64_t i) {
        Tree t = sample(model, k, SplitMix64::derive(seed, static_cast<std::uint64_t>(i)));
        double v = kind == CltKind::Log2BstWeight ? pbst_neg_log2(t)
                                                  : static_cast<double>(sym_count(t));
        rep.values[static_cast<std::size_t>(i)] = v;
    });

    double mean = 0.0;
    for (double v : rep.values) mean += v;
    mean /= static_cast<double>(trials);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : rep.values) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    double nt = static_cast<double>(trials);
    m2 /= nt;
    m3 /= nt;
    m4 /= nt;
    rep.mean = mean;
    rep.variance = m2 * nt / (nt - 1.0);
    rep.slope = mean / static_cast<double>(k);
    if (m2 <= 0.0) {
        rep.degenerate = true;
        return rep;
    }
    rep.skewness = m3 / std::pow(m2, 1.5);
    rep.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    // Jarque-Bera against the chi-square(2) null: survival = exp(-JB/2).
    rep.jb_stat = nt * (rep.skewness * rep.skewness / 6.0 +
                        rep.excess_kurtosis * rep.excess_kurtosis / 24.0);
    rep.jb_p = std::exp(-rep.jb_stat / 2.0);
    return rep;
}

std::string fmt_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

const char* model_name(ModelKind m) { return m == ModelKind::Uniform ? "uniform" : "bst"; }

void write_aggregate_json(std::ostream& out, const Aggregate& a) {
    out << "{\"mean\":" << fmt_real(a.mean) << ",\"stddev\":" << fmt_real(a.stddev)
        << ",\"min\":" << fmt_real(a.min) << ",\"max\":" << fmt_real(a.max) << "}";
}

void write_band_json(std::ostream& out, const BandCheck& b) {
    out << "{\"lo\":" << fmt_real(b.lo) << ",\"hi\":" << fmt_real(b.hi)
        << ",\"slack\":" << fmt_real(b.slack) << ",\"pass\":" << (b.pass ? "true" : "false") << "}";
}

}  // namespace

void export_csv(const ExperimentRecord& rec, std::ostream& out) {
    out << "trial,n,ordered_count,unordered_count,ordered_ratio,unordered_ratio\n";
    for (std::size_t i = 0; i < rec.ordered_counts.size(); ++i) {
        out << i << ',' << rec.config.n << ',' << rec.ordered_counts[i] << ','
            << rec.unordered_counts[i] << ',' << fmt_real(rec.ordered_ratios[i]) << ','
            << fmt_real(rec.unordered_ratios[i]) << '\n';
    }
}

void export_csv(const CltReport& rep, std::ostream& out) {
    out << "trial,k,value\n";
    for (std::size_t i = 0; i < rep.values.size(); ++i)
        out << i << ',' << rep.k << ',' << fmt_real(rep.values[i]) << '\n';
}

void export_csv(const ConcentrationReport& rep, std::ostream& out) {
    // k = 0 rows carry the tail count (fringe subtrees larger than the
    // threshold); other rows carry X_{n,k}.
    out << "trial,n,k,count\n";
    for (std::size_t trial = 0; trial < rep.counts.size(); ++trial) {
        for (std::size_t i = 0; i < rep.rows.size(); ++i)
            out << trial << ',' << rep.config.n << ',' << rep.rows[i].k << ','
                << rep.counts[trial][i] << '\n';
        out << trial << ',' << rep.config.n << ",0," << rep.tail_counts[trial] << '\n';
    }
}

void export_json(const ExperimentRecord& rec, std::ostream& out) {
    out << "{\"kind\":\"counts\",\"model\":\"" << model_name(rec.config.model)
        << "\",\"n\":" << rec.config.n << ",\"trials\":" << rec.config.trials
        << ",\"seed\":" << rec.config.seed << ",\"ordered_ratio\":";
    write_aggregate_json(out, rec.ordered_ratio);
    out << ",\"unordered_ratio\":";
    write_aggregate_json(out, rec.unordered_ratio);
    out << ",\"ordered_band\":";
    write_band_json(out, rec.ordered_band);
    out << ",\"unordered_band\":";
    write_band_json(out, rec.unordered_band);
    out << "}\n";
}

void export_json(const CltReport& rep, std::ostream& out) {
    out << "{\"kind\":\"clt\",\"statistic\":\"" << to_string(rep.kind) << "\",\"k\":" << rep.k
        << ",\"trials\":" << rep.trials
        << ",\"degenerate\":" << (rep.degenerate ? "true" : "false")
        << ",\"mean\":" << fmt_real(rep.mean) << ",\"variance\":" << fmt_real(rep.variance)
        << ",\"slope\":" << fmt_real(rep.slope) << ",\"skewness\":" << fmt_real(rep.skewness)
        << ",\"excess_kurtosis\":" << fmt_real(rep.excess_kurtosis)
        << ",\"jb_stat\":" << fmt_real(rep.jb_stat) << ",\"jb_p\":" << fmt_real(rep.jb_p) << "}\n";
}

void export_json(const ConcentrationReport& rep, std::ostream& out) {
    out << "{\"kind\":\"concentration\",\"model\":\"" << model_name(rep.config.model)
        << "\",\"n\":" << rep.config.n << ",\"trials\":" << rep.config.trials
        << ",\"seed\":" << rep.config.seed << ",\"epsilon\":" << fmt_real(rep.config.epsilon)
        << ",\"tail_threshold\":" << rep.tail_threshold
        << ",\"tail_limit\":" << fmt_real(rep.tail_limit) << ",\"tail_ok_rate\":"
        << fmt_real(rep.tail_ok_rate) << ",\"rows\":[";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ConcentrationRow& row = rep.rows[i];
        if (i) out << ',';
        out << "{\"k\":" << row.k << ",\"weight\":" << fmt_real(row.weight)
            << ",\"expected\":" << fmt_real(row.expected) << ",\"bound\":" << fmt_real(row.bound)
            << ",\"violations\":" << row.violations
            << ",\"violation_rate\":" << fmt_real(row.violation_rate) << "}";
    }
    out << "]}\n";
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

template <class T>
void export_impl(const T& value, const std::string& path, const std::string& format) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("unknown export format: " + format);
    std::ofstream out = open_for_write(path);
    if (format == "csv") {
        export_csv(value, out);
    } else {
        export_json(value, out);
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void export_to_file(const ExperimentRecord& record, const std::string& path,
                    const std::string& format) {
    export_impl(record, path, format);
}

void export_to_file(const CltReport& report, const std::string& path, const std::string& format) {
    export_impl(report, path, format);
}

void export_to_file(const ConcentrationReport& report, const std::string& path,
                    const std::string& format) {
    export_impl(report, path, format);
}

}  // namespace fringe::experiment
