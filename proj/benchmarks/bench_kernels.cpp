// Compares the OpenMP kernels against their serial reference
// implementations.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "treeldp/oracle.hpp"

using namespace treeldp;

namespace {

template <typename F>
double timed(const char* label, int reps, F&& f) {
    double v = 0.0;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) v = f();
    auto t1 = std::chrono::steady_clock::now();
    double dt = std::chrono::duration<double>(t1 - t0).count() / reps;
    std::printf("  %-10s %9.3f ms   result=%.12f\n", label, dt * 1e3, v);
    return dt;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n\n");
#endif
    {
        // 2^15 spin configurations, averaged over repeats
        TransitionMatrix m = TransitionMatrix::full(2);
        ModelSpec model = ModelSpec::linear(2, 0.3);
        const Level n = 2;
        const double beta = 0.7;
        std::printf("exact MGF enumeration (2-tree, q=2, N=2, 2^15 states):\n");
        double ts = timed("serial", 20, [&] {
            return log_exact_mgf_serial(model, m, n, beta, false);
        });
        double tp = timed("openmp", 20, [&] {
            return log_exact_mgf(model, m, n, beta, false, true);
        });
        std::printf("  speedup: %.2fx\n\n", ts / tp);
    }

    {
        // 4179-node subtree, 100k samples
        TransitionMatrix m = TransitionMatrix::golden_mean();
        ModelSpec model = ModelSpec::linear(2, 0.3);
        const Level n = 8;
        const std::uint64_t samples = 100000, seed = 42;
        std::printf("Monte Carlo sampling (golden mean, q=2, N=8):\n");
        double ts = timed("serial", 3, [&] {
            McHistogram h = mc_sample_serial(model, m, n, samples, seed);
            return static_cast<double>(h.counts.size());
        });
        double tp = timed("openmp", 3, [&] {
            McHistogram h = mc_sample(model, m, n, samples, seed);
            return static_cast<double>(h.counts.size());
        });
        std::printf("  speedup: %.2fx\n", ts / tp);
    }
    return 0;
}
