#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

// Run configuration: flat key/value document seeded with the global baseline
// parameter set. Keys carry unit suffixes (*_hz multiplied by 2 pi on ingest,
// *_k kelvin, *_s seconds); unknown keys are rejected with the key name.
namespace cavcool::config {

enum class Dots { one, two };
enum class SolverKind { clamped, persistent, collision, lindblad };
enum class SetpointStats { pair, tls };

struct SweepSpec {
    std::string axis;        // config key of the swept parameter
    double min = 0.0;
    double max = 0.0;
    int points = 0;
    bool log_scale = false;
};

struct RunConfig {
    // baseline numeric parameters, config-file units
    double t_bath_k = 1.0;
    double t_set_k = 0.05;
    double omega_c_hz = 5e9;
    double lambda_hz = 5e9;          // intra-pair exchange of the prepared reservoir
    double tau_s = 50e-9;
    double arrival_rate_per_s = 5e6;
    double delta_hz = 0.0;
    double g_hz = 0.5e6;
    double kappa_hz = 100.0;
    double chi = 2.0;
    double gamma1_hz = 1e4;
    double gamma_phi_hz = 0.3e6;
    double delta12_hz = 0.0;
    double sigma_inh_hz = 0.0;
    double gamma1_res_hz = 0.0;
    double gamma_phi_res_hz = 0.0;
    double g_par_hz = 0.0;
    int n_cutoff = 0;                // 0 = converge automatically
    int threads = 0;                 // 0 = library default
    bool use_voigt = false;
    bool use_filtered_n = false;

    Dots dots = Dots::one;
    SolverKind solver = SolverKind::collision;
    SetpointStats stats = SetpointStats::pair;

    std::optional<SweepSpec> sweep;
    std::string out_path;

    // -- derived quantities, internal rad/s units --
    double omega_c() const;
    double lambda() const;
    double delta() const;
    double g() const;
    double kappa() const;
    double gamma_1() const;
    double gamma_phi() const;
    double gamma_perp() const;       // gamma_1/2 + gamma_phi
    double delta12() const;
    double sigma_inh() const;
    double gamma_1_res() const;
    double gamma_phi_res() const;
    double g_par() const;

    /// Validates ranges (rates >= 0, temperatures > 0, grid sane). Throws
    /// std::invalid_argument naming the offending key.
    void validate() const;

    /// Canonical single-line JSON echo of every key, sorted, for CSV metadata.
    std::string echo_json() const;
};

/// Parse a flat JSON object into a config (defaults pre-applied).
RunConfig parse_config(const std::string& json_text);

/// Load from file; missing file throws with the path.
RunConfig load_config_file(const std::string& path);

/// Apply repeatable `--set key=value` overrides, after file values.
void apply_override(RunConfig& cfg, const std::string& key_equals_value);

/// Numeric sweep-axis accessor; throws on unknown or non-sweepable key.
double get_numeric(const RunConfig& cfg, const std::string& key);
void set_numeric(RunConfig& cfg, const std::string& key, double value);

/// All sweepable numeric keys.
std::vector<std::string> numeric_keys();

} // namespace cavcool::config
