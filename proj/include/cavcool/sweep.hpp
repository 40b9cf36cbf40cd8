#pragma once

#include "cavcool/config.hpp"
#include "cavcool/steady.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// Parameter-sweep engine. Grid points are independent; the parallel kernel
// distributes them over OpenMP threads and collects results by index, so the
// output is byte-identical to the serial reference implementation.
namespace cavcool::sweep {

struct SweepRow {
    std::string curve;       // preset curve label, empty for plain sweeps
    std::string axis;        // swept key
    double value = 0.0;      // swept value, config units
    std::string axis2;       // second axis for 2D grids, empty otherwise
    double value2 = 0.0;
    double n_star = 0.0;
    double p_e_star = 0.0;
    double t_cav_k = 0.0;
    double t_dqd_k = 0.0;
    double ratio_cav_dqd = 0.0;
    double ratio_cav_set = 0.0;  // t_cav / T_set, the figure normalization
    std::string regime;
    std::string solver;
    double residual = 0.0;
    std::string error;       // non-empty when the solver failed at this point
};

/// Reservoir statistics for the configured setpoint pipeline. The pair
/// variant thermalizes the flip-flop pair Hamiltonian at T_set with local
/// frequencies omega_c +- delta12/2 (preparation pinned to the cavity-
/// resonant working point; the cavity detuning enters only the spectral
/// filter downstream).
pairstate::ReservoirStats setpoint_stats(const config::RunConfig& cfg);

/// Evaluate the configured model at a single parameter point.
SweepRow evaluate_point(const config::RunConfig& cfg);

/// Grid values for a sweep axis (linear or log spacing; symmetric linear
/// grids hit exact sign pairs).
std::vector<double> grid_values(const config::SweepSpec& spec);

/// Serial reference implementation.
std::vector<SweepRow> run_sweep_serial(const config::RunConfig& cfg);

/// OpenMP-parallel kernel; identical output, results ordered by grid index.
std::vector<SweepRow> run_sweep_parallel(const config::RunConfig& cfg);

/// Dispatches on cfg.threads (1 = serial) and returns the last error count.
std::vector<SweepRow> run_sweep(const config::RunConfig& cfg);

/// Number of rows whose error column is populated.
int error_count(const std::vector<SweepRow>& rows);

/// CSV emission: '#' metadata lines (tool version, preset name, config echo),
/// versioned header, then rows with 17-significant-digit numerics. Never
/// emits NaN; infinities are spelled "inf".
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               const std::string& config_echo, const std::string& preset = "");

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows,
                    const std::string& config_echo, const std::string& preset = "");

std::string format_number(double v);

} // namespace cavcool::sweep
