// Times the grid kernels under the serial reference path and the OpenMP
// path on a distance sweep workload and prints the speedup.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rrdps/experiments.hpp"
#include "rrdps/parallel.hpp"

namespace {

double run_once(rrdps::ExecMode mode, double distance_max) {
    rrdps::ExperimentOptions options;
    options.mode = mode;
    options.overrides["distance_max_km"] = distance_max;
    const auto start = std::chrono::steady_clock::now();
    const rrdps::ExperimentResult result = rrdps::run_fig3(options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("  %-8s %7.3f s  (%zu rows)\n",
                mode == rrdps::ExecMode::Serial ? "serial" : "openmp", seconds,
                result.table.rows.size());
    return seconds;
}

}  // namespace

int main(int argc, char** argv) {
    double distance_max = 160.0;
    if (argc > 1) distance_max = std::stod(argv[1]);

    std::printf("distance sweep 0..%g km, 3 estimators, mu optimized per point\n", distance_max);
    std::printf("hardware threads: %d\n", rrdps::hardware_threads());

    const double serial = run_once(rrdps::ExecMode::Serial, distance_max);
    const double parallel = run_once(rrdps::ExecMode::Parallel, distance_max);
    std::printf("speedup: %.2fx\n", serial / parallel);

    // The parallel path must agree bit for bit with the reference.
    rrdps::ExperimentOptions serial_options, parallel_options;
    serial_options.mode = rrdps::ExecMode::Serial;
    parallel_options.mode = rrdps::ExecMode::Parallel;
    serial_options.overrides["distance_max_km"] = distance_max;
    parallel_options.overrides["distance_max_km"] = distance_max;
    const bool identical = rrdps::run_fig3(serial_options).table.to_string() ==
                           rrdps::run_fig3(parallel_options).table.to_string();
    std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
