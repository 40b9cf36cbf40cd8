// Compares the serial reference sweep against the OpenMP kernel on a
// representative analytic grid and checks that the outputs are identical.

#include "cavcool/config.hpp"
#include "cavcool/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cavcool;

namespace {

double time_ms(const std::function<std::vector<sweep::SweepRow>()>& fn,
               std::vector<sweep::SweepRow>& rows) {
    const auto start = std::chrono::steady_clock::now();
    rows = fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool identical(const std::vector<sweep::SweepRow>& a,
               const std::vector<sweep::SweepRow>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].n_star != b[i].n_star || a[i].t_cav_k != b[i].t_cav_k ||
            a[i].value != b[i].value)
            return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int points = argc > 1 ? std::atoi(argv[1]) : 20000;

    config::RunConfig cfg;
    cfg.solver = config::SolverKind::persistent;
    cfg.use_filtered_n = true;  // iterative path, enough work per point
    cfg.sweep = config::SweepSpec{"delta_hz", -2e6, 2e6, points, false};

    std::vector<sweep::SweepRow> serial_rows, parallel_rows;

    config::RunConfig serial_cfg = cfg;
    serial_cfg.threads = 1;
    const double t_serial =
        time_ms([&] { return sweep::run_sweep_serial(serial_cfg); }, serial_rows);

    const double t_parallel =
        time_ms([&] { return sweep::run_sweep_parallel(cfg); }, parallel_rows);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("grid points        : %d\n", points);
    std::printf("serial reference   : %9.1f ms\n", t_serial);
    std::printf("openmp (%d threads): %9.1f ms\n", threads, t_parallel);
    std::printf("speedup            : %9.2fx\n", t_serial / t_parallel);
    std::printf("outputs identical  : %s\n",
                identical(serial_rows, parallel_rows) ? "yes" : "NO");
    return identical(serial_rows, parallel_rows) ? 0 : 1;
}
