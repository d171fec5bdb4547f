#include "fringe/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fringe/constants.hpp"
#include "fringe/dag.hpp"
#include "fringe/exact.hpp"
#include "fringe/experiment.hpp"
#include "fringe/models.hpp"
#include "fringe/tree_text.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fringe::cli {

namespace {

std::string fmt(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

std::string fmt_rational(const exact::ExactRational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q) << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

struct GenerateArgs {
    std::string model;
    std::int64_t n = 1;
    std::uint64_t seed = 0;
    std::int64_t count = 1;
};

int run_generate(const GenerateArgs& args, std::ostream& out) {
    ModelKind model = parse_model(args.model);
    std::string line;
    for (std::int64_t i = 0; i < args.count; ++i) {
        Tree t = sample(model, args.n, SplitMix64::derive(args.seed, static_cast<std::uint64_t>(i)));
        line.clear();
        format_tree(t, line);
        out << line << '\n';
    }
    return 0;
}

struct CompressArgs {
    std::string input;
    std::string mode = "both";
    std::string format = "summary";
};

void write_dag_json(const dag::MinimalDag& d, std::ostream& out) {
    out << "{\"mode\":\"" << (d.mode == dag::DagMode::Ordered ? "ordered" : "unordered")
        << "\",\"root\":" << d.root << ",\"nodes\":[";
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (i) out << ',';
        const dag::MinimalDag::Node& nd = d.nodes[i];
        if (nd.is_leaf()) {
            out << "{\"id\":" << i << ",\"kind\":\"leaf\"}";
        } else {
            out << "{\"id\":" << i << ",\"kind\":\"internal\",\"left\":" << nd.left
                << ",\"right\":" << nd.right << "}";
        }
    }
    out << "]}\n";
}

int run_compress(const CompressArgs& args, std::ostream& out) {
    std::ifstream in(args.input);
    if (!in) throw std::runtime_error("cannot open input: " + args.input);
    const bool ordered = args.mode == "ordered" || args.mode == "both";
    const bool unordered = args.mode == "unordered" || args.mode == "both";

    if (args.format == "summary") {
        out << "n";
        if (ordered) out << ",ordered_count";
        if (unordered) out << ",unordered_count";
        out << '\n';
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Tree t = parse_tree(line);
        if (args.format == "summary") {
            out << leaf_count(t);
            if (ordered && unordered) {
                dag::DagSizes sizes = dag::dag_sizes(t);
                out << ',' << sizes.ordered << ',' << sizes.unordered;
            } else if (ordered) {
                out << ',' << dag::minimal_dag(t).node_count();
            } else {
                out << ',' << dag::unordered_minimal_dag(t).node_count();
            }
            out << '\n';
        } else {
            if (ordered) write_dag_json(dag::minimal_dag(t), out);
            if (unordered) write_dag_json(dag::unordered_minimal_dag(t), out);
        }
    }
    return 0;
}

int run_stats_exact(std::int64_t n, std::ostream& out) {
    out << "k,catalan,wedderburn,e_occurrences_uniform,e_pairs_uniform,e_z_bst\n";
    std::vector<exact::BigCount> w = exact::wedderburn_etherington_upto(n);
    for (std::int64_t k = 1; k <= n; ++k) {
        exact::BigCount c = exact::catalan(k - 1);
        out << k << ',' << c << ',' << w[static_cast<std::size_t>(k)] << ','
            << fmt_rational(exact::expected_occurrences_uniform(n, k, c)) << ','
            << fmt_rational(exact::expected_identical_pairs_uniform(n, k)) << ','
            << fmt_rational(exact::expected_z_bst(n, k)) << '\n';
    }
    return 0;
}

struct ConstantsArgs {
    std::int64_t mu_terms = 10'000'000;
    std::int64_t nu_terms = 10'000;
    std::int64_t b_index = 500;
    int precision = 12;
};

int run_constants(const ConstantsArgs& args, std::ostream& out) {
    using namespace fringe::constants;
    SeriesEstimate mu = mu_series(args.mu_terms);
    SeriesEstimate nu = nu_series(args.nu_terms);
    double b_est = estimate_b(args.b_index);
    ConstantsReport rep = derived_constants(kReferenceGamma, mu.value, nu.value, kReferenceB);
    const int p = args.precision;

    out << "{\"gamma\":{\"value\":" << fmt(rep.gamma, p)
        << ",\"reference\":" << fmt(kReferenceGamma, p) << "},";
    out << "\"mu\":{\"value\":" << fmt(mu.value, p) << ",\"tail_bound\":" << fmt(mu.tail_bound, p)
        << ",\"terms\":" << mu.terms << ",\"reference\":" << fmt(kReferenceMu, p) << "},";
    out << "\"nu\":{\"value\":" << fmt(nu.value, p) << ",\"tail_bound\":" << fmt(nu.tail_bound, p)
        << ",\"terms\":" << nu.terms << ",\"reference\":" << fmt(kReferenceNu, p) << "},";
    out << "\"b\":{\"value\":" << fmt(rep.b, p) << ",\"ratio_estimate\":" << fmt(b_est, p)
        << ",\"ratio_index\":" << args.b_index
        << ",\"estimate_error\":" << fmt(b_est - kReferenceB, p)
        << ",\"reference\":" << fmt(kReferenceB, p) << "},";
    out << "\"derived\":{";
    const char* names[] = {"c", "c1", "c2", "c3", "c4", "c5", "c6"};
    const double values[] = {rep.c, rep.c1, rep.c2, rep.c3, rep.c4, rep.c5, rep.c6};
    const double refs[] = {kReferenceC,  kReferenceC1, kReferenceC2, kReferenceC3,
                           kReferenceC4, kReferenceC5, kReferenceC6};
    for (int i = 0; i < 7; ++i) {
        if (i) out << ',';
        out << '"' << names[i] << "\":{\"value\":" << fmt(values[i], p)
            << ",\"reference\":" << fmt(refs[i], p) << '}';
    }
    out << "}}\n";
    return 0;
}

struct ExperimentArgs {
    std::string kind;
    std::string model = "uniform";
    std::string stat = "sym";
    std::int64_t n = 1024;
    std::int64_t trials = 20;
    std::uint64_t seed = 0;
    double epsilon = 1.0 / 6.0;
    double delta = 0.5;
    double slack = 1.10;
    std::int64_t k_min = 0;
    std::int64_t k_max = 0;
    std::string cut_rule = "log4";
    double cut_a = 0.0;
    std::string filter = "all";
    std::string out_path;
    std::string format = "json";
    bool serial = false;
    int threads = 0;
};

experiment::ExperimentConfig make_config(const ExperimentArgs& args) {
    experiment::ExperimentConfig cfg;
    cfg.model = parse_model(args.model);
    cfg.n = args.n;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.epsilon = args.epsilon;
    cfg.delta = args.delta;
    cfg.exec = args.serial ? ExecMode::Serial : ExecMode::Parallel;
    if (args.cut_rule == "log4") {
        cfg.cut_rule = experiment::CutPointRule::Log4;
    } else if (args.cut_rule == "logb") {
        cfg.cut_rule = experiment::CutPointRule::LogB;
    } else if (args.cut_rule == "custom") {
        cfg.cut_rule = experiment::CutPointRule::Custom;
        cfg.cut_a = args.cut_a;
    } else {
        throw std::invalid_argument("unknown cut rule: " + args.cut_rule);
    }
    return cfg;
}

experiment::CltKind clt_kind_for(ModelKind model, const std::string& stat) {
    if (model == ModelKind::Uniform && stat == "sym") return experiment::CltKind::Log2AutUniform;
    if (model == ModelKind::Bst && stat == "pbst") return experiment::CltKind::Log2BstWeight;
    if (model == ModelKind::Bst && stat == "sym") return experiment::CltKind::SymBst;
    throw std::invalid_argument("unsupported model/stat combination: " + std::string(to_string(model)) +
                                "/" + stat);
}

int run_experiment(const ExperimentArgs& args, std::ostream& out) {
#ifdef _OPENMP
    if (args.threads > 0) omp_set_num_threads(args.threads);
#endif
    experiment::ExperimentConfig cfg = make_config(args);
    if (args.kind == "counts") {
        constants::ConstantsReport report =
            constants::derived_constants(constants::kReferenceGamma, constants::kReferenceMu,
                                         constants::kReferenceNu, constants::kReferenceB);
        experiment::ExperimentRecord rec = experiment::run_count_experiment(cfg, report, args.slack);
        experiment::export_json(rec, out);
        if (!args.out_path.empty()) experiment::export_to_file(rec, args.out_path, args.format);
        return 0;
    }
    if (args.kind == "concentration") {
        if (args.k_min < 1 || args.k_max < args.k_min)
            throw std::invalid_argument("concentration needs --kmin and --kmax");
        experiment::FilterChoice choice = args.filter == "proof"
                                              ? experiment::FilterChoice::ProofThreshold
                                              : experiment::FilterChoice::All;
        experiment::ConcentrationReport rep =
            experiment::concentration_check(cfg, args.k_min, args.k_max, choice);
        experiment::export_json(rep, out);
        if (!args.out_path.empty()) experiment::export_to_file(rep, args.out_path, args.format);
        return 0;
    }
    if (args.kind == "clt") {
        experiment::CltKind kind = clt_kind_for(cfg.model, args.stat);
        experiment::CltReport rep =
            experiment::clt_sample(kind, cfg.n, cfg.trials, cfg.seed, cfg.exec);
        experiment::export_json(rep, out);
        if (!args.out_path.empty()) experiment::export_to_file(rep, args.out_path, args.format);
        return 0;
    }
    throw std::invalid_argument("unknown experiment kind: " + args.kind);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"random binary trees, minimal DAG compression, and verification experiments"};
    app.require_subcommand(1);

    const auto kSizeRange = CLI::Range(std::int64_t{1}, std::int64_t{1} << 31);
    const auto kCountRange = CLI::Range(std::int64_t{1}, std::int64_t{1} << 40);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "sample trees, one per line");
    generate->add_option("--model", gen.model, "uniform | bst")
        ->required()
        ->check(CLI::IsMember({"uniform", "bst"}));
    generate->add_option("--n", gen.n, "number of leaves")->required()->check(kSizeRange);
    generate->add_option("--seed", gen.seed, "RNG seed")->required();
    generate->add_option("--count", gen.count, "trees to emit")->check(kCountRange);

    CompressArgs comp;
    CLI::App* compress = app.add_subcommand("compress", "minimal DAGs of trees from a file");
    compress->add_option("--input", comp.input, "file with one tree per line")->required();
    compress->add_option("--mode", comp.mode, "ordered | unordered | both")
        ->check(CLI::IsMember({"ordered", "unordered", "both"}));
    compress->add_option("--format", comp.format, "summary | dag-json")
        ->check(CLI::IsMember({"summary", "dag-json"}));

    std::int64_t stats_n = 8;
    CLI::App* stats = app.add_subcommand("stats", "exact counting sequences and expectations");
    stats->require_subcommand(1);
    CLI::App* stats_exact = stats->add_subcommand("exact", "closed-form values as exact fractions");
    stats_exact->add_option("--n", stats_n, "tree size")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));

    ConstantsArgs cons;
    CLI::App* constants_cmd = app.add_subcommand("constants", "numerical constants report (JSON)");
    constants_cmd->add_option("--mu-terms", cons.mu_terms, "series terms for mu")
        ->check(kCountRange);
    constants_cmd->add_option("--nu-terms", cons.nu_terms, "series terms for nu")
        ->check(kCountRange);
    constants_cmd->add_option("--b-index", cons.b_index, "ratio index for the b estimate")
        ->check(CLI::Range(std::int64_t{10}, std::int64_t{100000}));
    constants_cmd->add_option("--precision", cons.precision, "significant digits")
        ->check(CLI::Range(1, 17));

    ExperimentArgs exp;
    CLI::App* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo experiments");
    experiment_cmd->add_option("--kind", exp.kind, "counts | concentration | clt")
        ->required()
        ->check(CLI::IsMember({"counts", "concentration", "clt"}));
    experiment_cmd->add_option("--model", exp.model, "uniform | bst")
        ->check(CLI::IsMember({"uniform", "bst"}));
    experiment_cmd->add_option("--stat", exp.stat, "clt statistic: sym | pbst")
        ->check(CLI::IsMember({"sym", "pbst"}));
    experiment_cmd->add_option("--n", exp.n, "tree size")->required()->check(kSizeRange);
    experiment_cmd->add_option("--trials", exp.trials, "Monte Carlo trials")
        ->required()
        ->check(kCountRange);
    experiment_cmd->add_option("--seed", exp.seed, "RNG seed")->required();
    experiment_cmd->add_option("--epsilon", exp.epsilon, "tail exponent, in (0, 1/3)");
    experiment_cmd->add_option("--delta", exp.delta, "cut exponent, in (0, 2/3)");
    experiment_cmd->add_option("--slack", exp.slack, "band widening factor");
    experiment_cmd->add_option("--kmin", exp.k_min, "smallest fringe size (concentration)");
    experiment_cmd->add_option("--kmax", exp.k_max, "largest fringe size (concentration)");
    experiment_cmd->add_option("--cut-rule", exp.cut_rule, "log4 | logb | custom")
        ->check(CLI::IsMember({"log4", "logb", "custom"}));
    experiment_cmd->add_option("--cut-a", exp.cut_a, "coefficient for --cut-rule custom");
    experiment_cmd->add_option("--filter", exp.filter, "class filter: all | proof")
        ->check(CLI::IsMember({"all", "proof"}));
    experiment_cmd->add_option("--out", exp.out_path, "output file path");
    experiment_cmd->add_option("--format", exp.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    experiment_cmd->add_flag("--serial", exp.serial, "run the serial reference path");
    experiment_cmd->add_option("--threads", exp.threads, "OpenMP thread count (0 = default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*generate) return run_generate(gen, out);
        if (*compress) return run_compress(comp, out);
        if (*stats) return run_stats_exact(stats_n, out);
        if (*constants_cmd) return run_constants(cons, out);
        if (*experiment_cmd) return run_experiment(exp, out);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fringe::cli
