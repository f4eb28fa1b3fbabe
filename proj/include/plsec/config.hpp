#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsec/analytic.hpp"
#include "plsec/scenario.hpp"

namespace plsec {

enum class EngineSelect { Analytic, Mc, Both };

/// What a run emits per sweep point. Metrics is the default; Loss emits
/// fractional throughput-loss columns against a delay-free baseline; Surface
/// walks a second axis and emits long-format rows; CompareSe repeats every
/// strategy with and without the source-eavesdropper leakage link.
enum class RunMode { Metrics, Loss, Surface, CompareSe };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepAxis {
    std::string key;
    std::vector<double> values;
};

/// One fully parsed experiment description. The scenario fields hold the
/// sweep-independent base point; scenario_at() materializes each sweep value.
struct RunConfig {
    // base scenario knobs (kept flat so sweeping can rewrite any of them)
    int n_t = 1;
    int k_r = 1;
    double sigma2_sr = 1.0, sigma2_rd = 1.0, sigma2_re = 1.0, sigma2_se = 1.0;
    std::optional<double> sigma2_jd, sigma2_je;
    double eta_db = 0.0;
    double rho_sr = 1.0, rho_rd = 1.0;
    std::optional<double> fd_td_sr, fd_td_rd;  // override the rho fields
    double r0 = 1.0;
    std::optional<double> rs;     // absolute secrecy rate
    std::optional<double> kappa;  // rs = kappa * r0; exclusive with rs
    double lambda = 0.75;

    std::vector<StrategyKind> strategies{StrategyKind::TBRS, StrategyKind::JRJS};
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    EngineSelect engine = EngineSelect::Both;
    RunMode mode = RunMode::Metrics;
    bool with_se_link = false;

    SweepAxis sweep;
    SweepAxis sweep2;  // Surface mode only

    // optimize-subcommand grids and outage constraints
    ThroughputGrids grids;
    OptimizeConstraints constraints;

    // negative-control hook: scales the analytic engine's relay-destination
    // variance so validation reports must flag every point
    double debug_corrupt_gain = 1.0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] inline void config_fail(int line, const std::string& key, const std::string& msg) {
    std::ostringstream os;
    os << "config line " << line << ": key '" << key << "': " << msg;
    throw ConfigError(os.str());
}

inline double parse_double(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        config_fail(line, key, "cannot parse '" + v + "' as a number");
    }
}

inline std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const auto u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return u;
    } catch (const std::exception&) {
        config_fail(line, key, "cannot parse '" + v + "' as a nonnegative integer");
    }
}

inline bool parse_bool(int line, const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    config_fail(line, key, "cannot parse '" + v + "' as a boolean");
}

inline std::vector<double> parse_list(int line, const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(line, key, item));
    }
    if (out.empty()) config_fail(line, key, "empty list");
    return out;
}

inline StrategyKind parse_strategy(int line, const std::string& key, const std::string& v) {
    if (v == "tbrs") return StrategyKind::TBRS;
    if (v == "jrjs") return StrategyKind::JRJS;
    if (v == "os") return StrategyKind::OS;
    if (v == "osj") return StrategyKind::OSJ;
    config_fail(line, key, "unknown strategy '" + v + "' (want tbrs/jrjs/os/osj)");
}

/// Rewrites one numeric scenario knob; shared by the parser and the sweep
/// driver so an axis behaves exactly like the key it names.
inline bool set_numeric_key(RunConfig& cfg, const std::string& key, double v, int line) {
    if (key == "eta_db") cfg.eta_db = v;
    else if (key == "lambda") cfg.lambda = v;
    else if (key == "r0") cfg.r0 = v;
    else if (key == "rs") cfg.rs = v;
    else if (key == "kappa") cfg.kappa = v;
    else if (key == "rho_sr") cfg.rho_sr = v;
    else if (key == "rho_rd") cfg.rho_rd = v;
    else if (key == "fd_td") { cfg.fd_td_sr = v; cfg.fd_td_rd = v; }
    else if (key == "fd_td_sr") cfg.fd_td_sr = v;
    else if (key == "fd_td_rd") cfg.fd_td_rd = v;
    else if (key == "sigma2_sr") cfg.sigma2_sr = v;
    else if (key == "sigma2_rd") cfg.sigma2_rd = v;
    else if (key == "sigma2_re") cfg.sigma2_re = v;
    else if (key == "sigma2_se") cfg.sigma2_se = v;
    else if (key == "sigma2_jd") cfg.sigma2_jd = v;
    else if (key == "sigma2_je") cfg.sigma2_je = v;
    else if (key == "n_t") {
        if (v != std::floor(v) || v < 1) config_fail(line, key, "must be an integer >= 1");
        cfg.n_t = static_cast<int>(v);
    } else if (key == "k_r") {
        if (v != std::floor(v) || v < 1) config_fail(line, key, "must be an integer >= 1");
        cfg.k_r = static_cast<int>(v);
    } else {
        return false;
    }
    return true;
}

}  // namespace detail

/// Builds the Scenario for one sweep point (or the base point when the value
/// override is omitted).
inline Scenario scenario_from(const RunConfig& cfg) {
    Scenario sc;
    sc.params.n_t = cfg.n_t;
    sc.params.k_r = cfg.k_r;
    sc.params.sigma2_sr = cfg.sigma2_sr;
    sc.params.sigma2_rd = cfg.sigma2_rd;
    sc.params.sigma2_re = cfg.sigma2_re;
    sc.params.sigma2_se = cfg.sigma2_se;
    sc.params.sigma2_jd = cfg.sigma2_jd;
    sc.params.sigma2_je = cfg.sigma2_je;
    sc.params.eta = db_to_linear(cfg.eta_db);
    if (cfg.fd_td_sr) sc.corr.rho_sr = correlation_from_delay(*cfg.fd_td_sr);
    else sc.corr.rho_sr = cfg.rho_sr;
    if (cfg.fd_td_rd) sc.corr.rho_rd = correlation_from_delay(*cfg.fd_td_rd);
    else sc.corr.rho_rd = cfg.rho_rd;
    sc.pair.r0 = cfg.r0;
    if (cfg.rs && cfg.kappa)
        throw ConfigError("config: keys 'rs' and 'kappa' are mutually exclusive");
    if (cfg.kappa) sc.pair.rs = *cfg.kappa * cfg.r0;
    else sc.pair.rs = cfg.rs.value_or(cfg.r0 / 8.0);
    sc.lambda = cfg.lambda;
    sc.validate();
    return sc;
}

inline RunConfig config_at(const RunConfig& cfg, const std::string& key, double value) {
    RunConfig at = cfg;
    if (key == "kappa") at.rs.reset();
    if (key == "rs") at.kappa.reset();
    if (!detail::set_numeric_key(at, key, value, 0))
        throw ConfigError("sweep axis '" + key + "' is not a numeric scenario key");
    return at;
}

inline Scenario scenario_at(const RunConfig& cfg, double sweep_value) {
    return scenario_from(config_at(cfg, cfg.sweep.key, sweep_value));
}

/// Parses the flat key=value format ('#' starts a comment, one pair per
/// line). Unknown keys, malformed numbers, and violated invariants raise
/// ConfigError naming the key and line.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    double sweep_start = 0.0, sweep_stop = 0.0, sweep_step = 0.0;
    bool have_start = false, have_stop = false, have_step = false;
    double s2_start = 0.0, s2_stop = 0.0, s2_step = 0.0;
    bool have2_start = false, have2_stop = false, have2_step = false;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            detail::config_fail(line, s, "expected key=value");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string val = detail::trim(s.substr(eq + 1));
        if (key.empty()) detail::config_fail(line, s, "empty key");
        if (val.empty()) detail::config_fail(line, key, "empty value");

        if (key == "trials") {
            cfg.trials = detail::parse_u64(line, key, val);
            if (cfg.trials < 1) detail::config_fail(line, key, "must be >= 1");
        } else if (key == "seed") {
            cfg.seed = detail::parse_u64(line, key, val);
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(detail::parse_u64(line, key, val));
        } else if (key == "engine") {
            if (val == "analytic") cfg.engine = EngineSelect::Analytic;
            else if (val == "mc") cfg.engine = EngineSelect::Mc;
            else if (val == "both") cfg.engine = EngineSelect::Both;
            else detail::config_fail(line, key, "want analytic/mc/both");
        } else if (key == "mode") {
            if (val == "metrics") cfg.mode = RunMode::Metrics;
            else if (val == "loss") cfg.mode = RunMode::Loss;
            else if (val == "surface") cfg.mode = RunMode::Surface;
            else if (val == "compare_se") cfg.mode = RunMode::CompareSe;
            else detail::config_fail(line, key, "want metrics/loss/surface/compare_se");
        } else if (key == "strategy") {
            cfg.strategies.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!(item = detail::trim(item)).empty())
                    cfg.strategies.push_back(detail::parse_strategy(line, key, item));
            if (cfg.strategies.empty()) detail::config_fail(line, key, "empty strategy list");
        } else if (key == "with_se_link") {
            cfg.with_se_link = detail::parse_bool(line, key, val);
        } else if (key == "sweep") {
            cfg.sweep.key = val;
        } else if (key == "sweep_start") {
            sweep_start = detail::parse_double(line, key, val); have_start = true;
        } else if (key == "sweep_stop") {
            sweep_stop = detail::parse_double(line, key, val); have_stop = true;
        } else if (key == "sweep_step") {
            sweep_step = detail::parse_double(line, key, val); have_step = true;
            if (!(sweep_step > 0.0)) detail::config_fail(line, key, "step must be > 0");
        } else if (key == "sweep_values") {
            cfg.sweep.values = detail::parse_list(line, key, val);
        } else if (key == "sweep2") {
            cfg.sweep2.key = val;
        } else if (key == "sweep2_start") {
            s2_start = detail::parse_double(line, key, val); have2_start = true;
        } else if (key == "sweep2_stop") {
            s2_stop = detail::parse_double(line, key, val); have2_stop = true;
        } else if (key == "sweep2_step") {
            s2_step = detail::parse_double(line, key, val); have2_step = true;
            if (!(s2_step > 0.0)) detail::config_fail(line, key, "step must be > 0");
        } else if (key == "sweep2_values") {
            cfg.sweep2.values = detail::parse_list(line, key, val);
        } else if (key == "debug_corrupt_gain") {
            cfg.debug_corrupt_gain = detail::parse_double(line, key, val);
            if (!(cfg.debug_corrupt_gain > 0.0))
                detail::config_fail(line, key, "must be > 0");
        } else if (key == "upsilon") {
            cfg.constraints.upsilon = detail::parse_double(line, key, val);
        } else if (key == "delta") {
            cfg.constraints.delta = detail::parse_double(line, key, val);
        } else if (key == "opt_r0") {
            cfg.grids.r0 = detail::parse_list(line, key, val);
        } else if (key == "opt_kappa") {
            cfg.grids.kappa = detail::parse_list(line, key, val);
        } else if (key == "opt_lambda") {
            cfg.grids.lambda = detail::parse_list(line, key, val);
        } else if (key == "opt_eta_db") {
            cfg.grids.eta_db = detail::parse_list(line, key, val);
        } else if (!detail::set_numeric_key(cfg, key, detail::parse_double(line, key, val),
                                            line)) {
            detail::config_fail(line, key, "unknown key");
        }
    }

    auto expand = [](double a, double b, double st) {
        std::vector<double> v;
        for (double x = a; x <= b + 1e-12 * std::max(1.0, std::fabs(st)); x += st)
            v.push_back(x);
        return v;
    };
    if (have_start || have_stop || have_step) {
        if (!(have_start && have_stop && have_step))
            throw ConfigError("config: sweep_start/stop/step must be given together");
        if (!cfg.sweep.values.empty())
            throw ConfigError("config: sweep_values conflicts with sweep_start/stop/step");
        if (sweep_stop < sweep_start)
            throw ConfigError("config: sweep_stop must be >= sweep_start");
        cfg.sweep.values = expand(sweep_start, sweep_stop, sweep_step);
    }
    if (have2_start || have2_stop || have2_step) {
        if (!(have2_start && have2_stop && have2_step))
            throw ConfigError("config: sweep2_start/stop/step must be given together");
        if (s2_stop < s2_start)
            throw ConfigError("config: sweep2_stop must be >= sweep2_start");
        cfg.sweep2.values = expand(s2_start, s2_stop, s2_step);
    }

    if (cfg.sweep.key.empty() || cfg.sweep.values.empty())
        throw ConfigError("config: a sweep axis is required (keys 'sweep' plus "
                          "'sweep_values' or 'sweep_start'/'sweep_stop'/'sweep_step')");
    if (cfg.mode == RunMode::Surface && (cfg.sweep2.key.empty() || cfg.sweep2.values.empty()))
        throw ConfigError("config: surface mode needs a second axis ('sweep2' keys)");
    if (cfg.mode != RunMode::Surface && !cfg.sweep2.key.empty())
        throw ConfigError("config: 'sweep2' is only valid in surface mode");

    // fail fast on an unusable base point or axis
    scenario_at(cfg, cfg.sweep.values.front());
    return cfg;
}

}  // namespace plsec
