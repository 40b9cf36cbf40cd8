#include "cavcool/config.hpp"
#include "cavcool/constants.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cavcool::config {

using json = nlohmann::json;
using constants::two_pi;

double RunConfig::omega_c() const { return two_pi * omega_c_hz; }
double RunConfig::lambda() const { return two_pi * lambda_hz; }
double RunConfig::delta() const { return two_pi * delta_hz; }
double RunConfig::g() const { return two_pi * g_hz; }
double RunConfig::kappa() const { return two_pi * kappa_hz; }
double RunConfig::gamma_1() const { return two_pi * gamma1_hz; }
double RunConfig::gamma_phi() const { return two_pi * gamma_phi_hz; }
double RunConfig::gamma_perp() const { return 0.5 * gamma_1() + gamma_phi(); }
double RunConfig::delta12() const { return two_pi * delta12_hz; }
double RunConfig::sigma_inh() const { return two_pi * sigma_inh_hz; }
double RunConfig::gamma_1_res() const { return two_pi * gamma1_res_hz; }
double RunConfig::gamma_phi_res() const { return two_pi * gamma_phi_res_hz; }
double RunConfig::g_par() const { return two_pi * g_par_hz; }

namespace {

struct NumericField {
    double RunConfig::* member;
    bool nonnegative;
};

const std::map<std::string, NumericField>& numeric_fields() {
    static const std::map<std::string, NumericField> fields = {
        {"t_bath_k", {&RunConfig::t_bath_k, true}},
        {"t_set_k", {&RunConfig::t_set_k, true}},
        {"omega_c_hz", {&RunConfig::omega_c_hz, true}},
        {"lambda_hz", {&RunConfig::lambda_hz, false}},
        {"tau_s", {&RunConfig::tau_s, true}},
        {"arrival_rate_per_s", {&RunConfig::arrival_rate_per_s, true}},
        {"delta_hz", {&RunConfig::delta_hz, false}},
        {"g_hz", {&RunConfig::g_hz, true}},
        {"kappa_hz", {&RunConfig::kappa_hz, true}},
        {"chi", {&RunConfig::chi, true}},
        {"gamma1_hz", {&RunConfig::gamma1_hz, true}},
        {"gamma_phi_hz", {&RunConfig::gamma_phi_hz, true}},
        {"delta12_hz", {&RunConfig::delta12_hz, false}},
        {"sigma_inh_hz", {&RunConfig::sigma_inh_hz, true}},
        {"gamma1_res_hz", {&RunConfig::gamma1_res_hz, true}},
        {"gamma_phi_res_hz", {&RunConfig::gamma_phi_res_hz, true}},
        {"g_par_hz", {&RunConfig::g_par_hz, true}},
    };
    return fields;
}

Dots parse_dots(const std::string& s) {
    if (s == "one") return Dots::one;
    if (s == "two") return Dots::two;
    throw std::invalid_argument("config key 'dots': expected \"one\" or \"two\", got \"" + s + '"');
}

SolverKind parse_solver(const std::string& s) {
    if (s == "clamped") return SolverKind::clamped;
    if (s == "persistent") return SolverKind::persistent;
    if (s == "collision") return SolverKind::collision;
    if (s == "lindblad") return SolverKind::lindblad;
    throw std::invalid_argument("config key 'solver': unknown value \"" + s + '"');
}

SetpointStats parse_stats(const std::string& s) {
    if (s == "pair") return SetpointStats::pair;
    if (s == "tls") return SetpointStats::tls;
    throw std::invalid_argument("config key 'setpoint_stats': unknown value \"" + s + '"');
}

const char* dots_name(Dots d) { return d == Dots::one ? "one" : "two"; }

const char* solver_name(SolverKind s) {
    switch (s) {
        case SolverKind::clamped: return "clamped";
        case SolverKind::persistent: return "persistent";
        case SolverKind::collision: return "collision";
        case SolverKind::lindblad: return "lindblad";
    }
    return "?";
}

const char* stats_name(SetpointStats s) {
    return s == SetpointStats::pair ? "pair" : "tls";
}

double as_number(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            size_t pos = 0;
            const double x = std::stod(v.get<std::string>(), &pos);
            if (pos == v.get<std::string>().size()) return x;
        } catch (...) {
        }
    }
    throw std::invalid_argument("config key '" + key + "': unparseable numeric value");
}

void assign(RunConfig& cfg, const std::string& key, const json& value) {
    const auto& fields = numeric_fields();
    if (auto it = fields.find(key); it != fields.end()) {
        cfg.*(it->second.member) = as_number(value, key);
        return;
    }
    if (key == "n_cutoff") { cfg.n_cutoff = static_cast<int>(as_number(value, key)); return; }
    if (key == "threads") { cfg.threads = static_cast<int>(as_number(value, key)); return; }
    if (key == "use_voigt") { cfg.use_voigt = value.is_boolean() ? value.get<bool>() : as_number(value, key) != 0.0; return; }
    if (key == "use_filtered_n") { cfg.use_filtered_n = value.is_boolean() ? value.get<bool>() : as_number(value, key) != 0.0; return; }
    if (key == "dots") { cfg.dots = parse_dots(value.get<std::string>()); return; }
    if (key == "solver") { cfg.solver = parse_solver(value.get<std::string>()); return; }
    if (key == "setpoint_stats") { cfg.stats = parse_stats(value.get<std::string>()); return; }
    if (key == "out") { cfg.out_path = value.get<std::string>(); return; }
    if (key == "sweep") {
        if (!value.is_object())
            throw std::invalid_argument("config key 'sweep': expected an object");
        SweepSpec sweep;
        for (const auto& [k, v] : value.items()) {
            if (k == "axis") sweep.axis = v.get<std::string>();
            else if (k == "min") sweep.min = as_number(v, "sweep.min");
            else if (k == "max") sweep.max = as_number(v, "sweep.max");
            else if (k == "points") sweep.points = static_cast<int>(as_number(v, "sweep.points"));
            else if (k == "scale") {
                const auto s = v.get<std::string>();
                if (s == "linear") sweep.log_scale = false;
                else if (s == "log") sweep.log_scale = true;
                else throw std::invalid_argument("sweep.scale: expected \"linear\" or \"log\"");
            } else {
                throw std::invalid_argument("unknown config key 'sweep." + k + "'");
            }
        }
        cfg.sweep = sweep;
        return;
    }
    throw std::invalid_argument("unknown config key '" + key + "'");
}

} // namespace

void RunConfig::validate() const {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("config key '") + key +
                                        "' must be positive");
    };
    auto nonneg = [](double v, const char* key) {
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument(std::string("config key '") + key +
                                        "' must be >= 0 and finite");
    };
    positive(t_bath_k, "t_bath_k");
    positive(t_set_k, "t_set_k");
    positive(omega_c_hz, "omega_c_hz");
    positive(tau_s, "tau_s");
    nonneg(arrival_rate_per_s, "arrival_rate_per_s");
    nonneg(g_hz, "g_hz");
    nonneg(kappa_hz, "kappa_hz");
    nonneg(chi, "chi");
    nonneg(gamma1_hz, "gamma1_hz");
    nonneg(gamma_phi_hz, "gamma_phi_hz");
    nonneg(sigma_inh_hz, "sigma_inh_hz");
    nonneg(gamma1_res_hz, "gamma1_res_hz");
    nonneg(gamma_phi_res_hz, "gamma_phi_res_hz");
    if (n_cutoff < 0 || n_cutoff == 1)
        throw std::invalid_argument("config key 'n_cutoff' must be 0 (auto) or >= 2");
    if (threads < 0) throw std::invalid_argument("config key 'threads' must be >= 0");
    if (sweep) {
        if (sweep->points < 2)
            throw std::invalid_argument("sweep.points must be >= 2");
        if (!(sweep->min < sweep->max))
            throw std::invalid_argument("sweep.min must be smaller than sweep.max");
        if (sweep->log_scale && sweep->min <= 0.0)
            throw std::invalid_argument("log sweep requires positive sweep.min");
        get_numeric(*this, sweep->axis);  // throws on unknown axis
    }
}

std::string RunConfig::echo_json() const {
    json j;
    for (const auto& [key, field] : numeric_fields()) j[key] = this->*(field.member);
    j["n_cutoff"] = n_cutoff;
    j["threads"] = threads;
    j["use_voigt"] = use_voigt;
    j["use_filtered_n"] = use_filtered_n;
    j["dots"] = dots_name(dots);
    j["solver"] = solver_name(solver);
    j["setpoint_stats"] = stats_name(stats);
    if (!out_path.empty()) j["out"] = out_path;
    if (sweep) {
        j["sweep"] = {{"axis", sweep->axis},
                      {"min", sweep->min},
                      {"max", sweep->max},
                      {"points", sweep->points},
                      {"scale", sweep->log_scale ? "log" : "linear"}};
    }
    return j.dump();  // nlohmann keeps keys sorted
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) assign(cfg, key, value);
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    json value;
    if (key == "dots" || key == "solver" || key == "setpoint_stats" || key == "out") {
        value = raw;
    } else if (raw == "true" || raw == "false") {
        value = (raw == "true");
    } else {
        try {
            size_t pos = 0;
            value = std::stod(raw, &pos);
            if (pos != raw.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("config key '" + key +
                                        "': unparseable value '" + raw + "'");
        }
    }
    assign(cfg, key, value);
    cfg.validate();
}

double get_numeric(const RunConfig& cfg, const std::string& key) {
    const auto& fields = numeric_fields();
    if (auto it = fields.find(key); it != fields.end()) return cfg.*(it->second.member);
    throw std::invalid_argument("unknown numeric key '" + key + "'");
}

void set_numeric(RunConfig& cfg, const std::string& key, double value) {
    const auto& fields = numeric_fields();
    if (auto it = fields.find(key); it != fields.end()) {
        cfg.*(it->second.member) = value;
        return;
    }
    throw std::invalid_argument("unknown numeric key '" + key + "'");
}

std::vector<std::string> numeric_keys() {
    std::vector<std::string> keys;
    for (const auto& [key, _] : numeric_fields()) keys.push_back(key);
    return keys;
}

} // namespace cavcool::config
