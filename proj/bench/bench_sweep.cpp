// bench_sweep.cpp: times the OpenMP sweep kernel against the serial
// reference on the same grid and verifies the outputs are bitwise identical.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "otto/engine.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 200000;
    if (n < 2) {
        std::cerr << "usage: bench-sweep [n_points >= 2]\n";
        return 2;
    }

    otto::model::EngineParams params;
    const auto grid = otto::engine::linear_grid(0.011, 10.0, n);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = otto::engine::sweep_efficiency_serial(params, grid);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = otto::engine::sweep_efficiency(params, grid);
    const double t_parallel = seconds_since(t0);

    for (int i = 0; i < n; ++i) {
        const auto& a = serial[i];
        const auto& b = parallel[i];
        if (a.b_h != b.b_h || a.work != b.work || a.eta != b.eta || a.eta_m != b.eta_m ||
            a.flagged != b.flagged) {
            std::cerr << "mismatch at grid point " << i << "\n";
            return 1;
        }
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "points:   " << n << "\n"
              << "threads:  " << threads << "\n"
              << "serial:   " << t_serial * 1e3 << " ms\n"
              << "parallel: " << t_parallel * 1e3 << " ms\n"
              << "speedup:  " << t_serial / t_parallel << "x\n"
              << "outputs bitwise identical\n";
    return 0;
}
