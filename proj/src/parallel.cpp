#include "rrdps/parallel.hpp"

#include <algorithm>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rrdps {

namespace {
int g_thread_cap = 0;  // 0 means all cores
}

int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void set_thread_count(int threads) {
    g_thread_cap = std::max(0, threads);
#ifdef _OPENMP
    omp_set_num_threads(g_thread_cap == 0 ? hardware_threads() : g_thread_cap);
#endif
}

int thread_count() {
    return g_thread_cap == 0 ? hardware_threads() : g_thread_cap;
}

void parallel_for_index(std::int64_t count, ExecMode mode,
                        const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    if (mode == ExecMode::Serial) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        fn(i);
    }
#else
    for (std::int64_t i = 0; i < count; ++i) fn(i);
#endif
}

}  // namespace rrdps
