#pragma once

#include <cstdint>

namespace fringe {

// Serial is the reference path; results must be bit-identical to Parallel.
enum class ExecMode { Serial, Parallel };

// Runs f(0..count-1). Bodies must write only to their own output slot so
// that the OpenMP path reproduces the serial reference exactly.
template <class F>
void for_each_index(std::int64_t count, ExecMode mode, F&& f) {
    if (mode == ExecMode::Serial) {
        for (std::int64_t i = 0; i < count; ++i) f(i);
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) f(i);
}

}  // namespace fringe
