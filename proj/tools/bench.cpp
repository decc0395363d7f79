#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "monolab/audit.hpp"
#include "monolab/grid.hpp"

using namespace monolab;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& work, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock_type::now();
        work();
        const double ms =
            std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
        if (ms < best) best = ms;
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-34s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
                name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    const auto init = InitialPairState::from_alpha(1.0 / std::sqrt(10.0));

    {
        const auto alphas = linear_grid(0.01, 0.99, 99);
        const auto ts = log_dense_grid(5.0, 1024);
        const double serial = time_ms([&] { residual_surface_reference(alphas, ts); }, 3);
        const double parallel = time_ms([&] { residual_surface(alphas, ts); }, 3);
        report("residual surface 99x1024", serial, parallel);
    }
    {
        const auto ts = log_dense_grid(5.0, 1024);
        const double serial = time_ms([&] { trajectory_reference(init, ts); }, 3);
        const double parallel = time_ms([&] { trajectory(init, ts); }, 3);
        report("trajectory 1024 (Wootters route)", serial, parallel);
    }
    {
        const auto alphas = linear_grid(0.05, 0.95, 19);
        const auto ts = log_dense_grid(5.0, 64);
        const double serial = time_ms([&] { audit_grid_reference(alphas, ts); }, 2);
        const double parallel = time_ms([&] { audit_grid(alphas, ts); }, 2);
        report("monogamy audit grid 19x64", serial, parallel);
    }
    {
        // Roof restarts parallelize inside estimate_roof; pin the thread count
        // to one for the serial measurement.
        const auto psi = evolved_three_pair_state(InitialPairState::from_alpha(
                                                      1.0 / std::sqrt(2.0)),
                                                  std::log(2.0));
        const auto rho = psi.reduced_density({"c1", "c2", "c3"});
        RoofConfig cfg;
#ifdef _OPENMP
        const int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
        const double serial = time_ms([&] { roof_three_tangle(rho, cfg); }, 2);
        omp_set_num_threads(max_threads);
#else
        const double serial = time_ms([&] { roof_three_tangle(rho, cfg); }, 2);
#endif
        const double parallel = time_ms([&] { roof_three_tangle(rho, cfg); }, 2);
        report("three-tangle roof (rank 8)", serial, parallel);
    }
    return 0;
}
