// Times the Monte Carlo kernels on the serial reference path and on the
// OpenMP path, and checks that both produce identical aggregates.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "fringe/constants.hpp"
#include "fringe/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace fringe;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
double timed(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 200000;
    std::int64_t trials = argc > 2 ? std::atoll(argv[2]) : 40;
    const Seed seed = 20240915;

#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: not compiled in\n");
#endif
    std::printf("workload: counts experiment, n=%lld, trials=%lld\n",
                static_cast<long long>(n), static_cast<long long>(trials));

    constants::ConstantsReport report = constants::derived_constants(
        constants::kReferenceGamma, constants::kReferenceMu, constants::kReferenceNu,
        constants::kReferenceB);

    experiment::ExperimentConfig cfg;
    cfg.model = ModelKind::Uniform;
    cfg.n = n;
    cfg.trials = trials;
    cfg.seed = seed;

    experiment::ExperimentRecord serial_rec, parallel_rec;
    cfg.exec = ExecMode::Serial;
    double t_serial = timed([&] { serial_rec = experiment::run_count_experiment(cfg, report); });
    cfg.exec = ExecMode::Parallel;
    double t_parallel = timed([&] { parallel_rec = experiment::run_count_experiment(cfg, report); });

    bool identical = serial_rec.ordered_counts == parallel_rec.ordered_counts &&
                     serial_rec.unordered_counts == parallel_rec.unordered_counts &&
                     serial_rec.ordered_ratio.mean == parallel_rec.ordered_ratio.mean;
    std::printf("serial   : %8.3f s\n", t_serial);
    std::printf("parallel : %8.3f s  (speedup %.2fx)\n", t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    std::printf("identical aggregates: %s\n", identical ? "yes" : "NO");

    cfg.model = ModelKind::Bst;
    cfg.exec = ExecMode::Serial;
    double t_serial_bst = timed([&] { serial_rec = experiment::run_count_experiment(cfg, report); });
    cfg.exec = ExecMode::Parallel;
    double t_parallel_bst =
        timed([&] { parallel_rec = experiment::run_count_experiment(cfg, report); });
    bool identical_bst = serial_rec.ordered_counts == parallel_rec.ordered_counts;
    std::printf("bst serial   : %8.3f s\n", t_serial_bst);
    std::printf("bst parallel : %8.3f s  (speedup %.2fx)\n", t_parallel_bst,
                t_parallel_bst > 0 ? t_serial_bst / t_parallel_bst : 0.0);
    std::printf("identical aggregates: %s\n", identical_bst ? "yes" : "NO");

    return identical && identical_bst ? 0 : 1;
}
