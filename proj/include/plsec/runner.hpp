#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "plsec/analytic.hpp"
#include "plsec/config.hpp"
#include "plsec/simulate.hpp"

namespace plsec {

namespace detail {

inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline bool has_closed_forms(StrategyKind s) {
    return s == StrategyKind::TBRS || s == StrategyKind::JRJS;
}

inline Scenario analytic_view(const RunConfig& cfg, const Scenario& sc) {
    Scenario a = sc;
    a.params.sigma2_rd *= cfg.debug_corrupt_gain;
    return a;
}

inline TrialPlan plan_for(const RunConfig& cfg, const Scenario& sc, StrategyKind s,
                          bool with_se) {
    TrialPlan p;
    p.trials = cfg.trials;
    p.master_seed = cfg.seed;
    p.strategy = s;
    p.scenario = sc;
    p.with_se_link = with_se;
    return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV emission.
// ---------------------------------------------------------------------------

namespace detail {

inline void metrics_header(const RunConfig& cfg, std::ostream& out) {
    out << cfg.sweep.key;
    for (StrategyKind s : cfg.strategies) {
        const std::string n = strategy_name(s);
        if (cfg.engine != EngineSelect::Mc && has_closed_forms(s))
            out << "," << n << "_analytic_cop," << n << "_analytic_sop," << n
                << "_analytic_rscp," << n << "_analytic_rsr," << n << "_analytic_throughput";
        if (cfg.engine != EngineSelect::Analytic)
            for (const char* m : {"cop", "sop", "rscp", "throughput"})
                out << "," << n << "_mc_" << m << "," << n << "_mc_" << m << "_stderr";
    }
    out << "\n";
}

inline void metrics_row(const RunConfig& cfg, double v, std::ostream& out) {
    const Scenario sc = scenario_at(cfg, v);
    out << fmt9(v);
    for (StrategyKind s : cfg.strategies) {
        if (cfg.engine != EngineSelect::Mc && has_closed_forms(s)) {
            const MetricBundle b = metrics(analytic_view(cfg, sc), s);
            out << "," << fmt9(b.cop) << "," << fmt9(b.sop) << "," << fmt9(b.rscp) << ","
                << fmt9(b.rsr) << "," << fmt9(b.throughput);
        }
        if (cfg.engine != EngineSelect::Analytic) {
            const Estimates e =
                estimate(plan_for(cfg, sc, s, cfg.with_se_link), cfg.threads);
            for (const MetricEstimate* m : {&e.cop, &e.sop, &e.rscp, &e.throughput})
                out << "," << fmt9(m->value) << "," << fmt9(m->std_err);
        }
    }
    out << "\n";
}

inline void loss_run(const RunConfig& cfg, std::ostream& out) {
    if (cfg.sweep.key != "fd_td" && cfg.sweep.key != "fd_td_sr" && cfg.sweep.key != "fd_td_rd")
        throw ConfigError("loss mode sweeps a delay coefficient (fd_td / fd_td_sr / fd_td_rd)");
    out << cfg.sweep.key;
    for (StrategyKind s : cfg.strategies) {
        const std::string n = strategy_name(s);
        if (cfg.engine != EngineSelect::Mc && has_closed_forms(s))
            out << "," << n << "_analytic_loss," << n << "_analytic_loss_hop1," << n
                << "_analytic_loss_hop2";
        if (cfg.engine != EngineSelect::Analytic)
            out << "," << n << "_mc_loss," << n << "_mc_loss_hop1," << n << "_mc_loss_hop2";
    }
    out << "\n";

    RunConfig no_delay = cfg;
    no_delay.fd_td_sr = no_delay.fd_td_rd = 0.0;
    const Scenario sc_base = scenario_from(no_delay);

    for (double v : cfg.sweep.values) {
        out << fmt9(v);
        RunConfig both = config_at(cfg, cfg.sweep.key, v);
        RunConfig hop1 = config_at(no_delay, "fd_td_sr", v);
        RunConfig hop2 = config_at(no_delay, "fd_td_rd", v);
        const Scenario d_both = scenario_from(both);
        const Scenario d_hop1 = scenario_from(hop1);
        const Scenario d_hop2 = scenario_from(hop2);
        for (StrategyKind s : cfg.strategies) {
            if (cfg.engine != EngineSelect::Mc && has_closed_forms(s)) {
                for (const Scenario* d : {&d_both, &d_hop1, &d_hop2})
                    out << ","
                        << fmt9(throughput_loss(detail::analytic_view(cfg, *d),
                                                detail::analytic_view(cfg, sc_base), s,
                                                Engine::Analytic));
            }
            if (cfg.engine != EngineSelect::Analytic) {
                for (const Scenario* d : {&d_both, &d_hop1, &d_hop2})
                    out << ","
                        << fmt9(throughput_loss(*d, sc_base, s, Engine::Mc, cfg.trials,
                                                cfg.seed, cfg.threads));
            }
        }
        out << "\n";
    }
}

inline void surface_run(const RunConfig& cfg, std::ostream& out) {
    out << cfg.sweep.key << "," << cfg.sweep2.key;
    for (StrategyKind s : cfg.strategies) {
        const std::string n = strategy_name(s);
        if (cfg.engine != EngineSelect::Mc && has_closed_forms(s))
            out << "," << n << "_analytic_throughput";
        if (cfg.engine != EngineSelect::Analytic)
            out << "," << n << "_mc_throughput," << n << "_mc_throughput_stderr";
    }
    out << "\n";
    for (double v1 : cfg.sweep.values) {
        for (double v2 : cfg.sweep2.values) {
            Scenario sc;
            try {
                sc = scenario_from(config_at(config_at(cfg, cfg.sweep.key, v1),
                                             cfg.sweep2.key, v2));
            } catch (const std::invalid_argument&) {
                continue;  // e.g. kappa hitting an invalid rate pair
            }
            out << fmt9(v1) << "," << fmt9(v2);
            for (StrategyKind s : cfg.strategies) {
                if (cfg.engine != EngineSelect::Mc && has_closed_forms(s))
                    out << ","
                        << fmt9(effective_throughput(detail::analytic_view(cfg, sc), s,
                                                     Engine::Analytic));
                if (cfg.engine != EngineSelect::Analytic) {
                    const Estimates e = estimate(plan_for(cfg, sc, s, false), cfg.threads);
                    out << "," << fmt9(e.throughput.value) << "," << fmt9(e.throughput.std_err);
                }
            }
            out << "\n";
        }
    }
}

inline void compare_se_run(const RunConfig& cfg, std::ostream& out) {
    out << cfg.sweep.key;
    for (StrategyKind s : cfg.strategies) {
        const std::string n = strategy_name(s);
        out << "," << n << "_mc_throughput," << n << "_mc_throughput_stderr," << n
            << "_mc_throughput_se," << n << "_mc_throughput_se_stderr";
    }
    out << "\n";
    for (double v : cfg.sweep.values) {
        const Scenario sc = scenario_at(cfg, v);
        out << fmt9(v);
        for (StrategyKind s : cfg.strategies) {
            const Estimates plain = estimate(plan_for(cfg, sc, s, false), cfg.threads);
            const Estimates leak = estimate(plan_for(cfg, sc, s, true), cfg.threads);
            out << "," << fmt9(plain.throughput.value) << ","
                << fmt9(plain.throughput.std_err) << "," << fmt9(leak.throughput.value)
                << "," << fmt9(leak.throughput.std_err);
        }
        out << "\n";
    }
}

}  // namespace detail

/// Writes the configured run as CSV (LF line endings, 9 significant digits).
inline void run_csv(const RunConfig& cfg, std::ostream& out) {
    if (cfg.engine != EngineSelect::Mc && cfg.mode != RunMode::CompareSe)
        for (StrategyKind s : cfg.strategies)
            if (!detail::has_closed_forms(s) && cfg.engine == EngineSelect::Analytic)
                throw ConfigError(std::string("strategy '") + strategy_name(s) +
                                  "' has no analytic engine; use engine=mc or both");
    switch (cfg.mode) {
        case RunMode::Metrics:
            detail::metrics_header(cfg, out);
            for (double v : cfg.sweep.values) detail::metrics_row(cfg, v, out);
            break;
        case RunMode::Loss: detail::loss_run(cfg, out); break;
        case RunMode::Surface: detail::surface_run(cfg, out); break;
        case RunMode::CompareSe: detail::compare_se_run(cfg, out); break;
    }
}

inline void run_csv_to_file(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    run_csv(cfg, out);
    if (!out.good()) throw std::runtime_error("error writing output file '" + path + "'");
}

// ---------------------------------------------------------------------------
// Analytic-vs-MC validation.
// ---------------------------------------------------------------------------

struct ValidateRow {
    double sweep_value = 0.0;
    std::string strategy;
    std::string metric;
    double analytic = 0.0;
    double mc = 0.0;
    double std_err = 0.0;
    double tolerance = 0.0;
    bool exact = false;  // exact closed form: failure flips the exit code path
    bool pass = false;
};

struct ValidateReport {
    std::vector<ValidateRow> rows;
    bool exact_ok = true;
    bool approx_ok = true;
};

/// Compares closed forms against the module's own Monte-Carlo estimates at
/// every sweep point. Exact forms must sit inside 3 standard errors; the
/// jamming approximations are held to fixed absolute tolerances.
inline ValidateReport validate_run(const RunConfig& cfg) {
    ValidateReport rep;
    auto add = [&](double v, StrategyKind s, const char* metric, double an,
                   const MetricEstimate& mc, double tol, bool exact) {
        ValidateRow r;
        r.sweep_value = v;
        r.strategy = strategy_name(s);
        r.metric = metric;
        r.analytic = an;
        r.mc = mc.value;
        r.std_err = mc.std_err;
        r.tolerance = tol;
        r.exact = exact;
        r.pass = std::fabs(an - mc.value) <= tol;
        if (!r.pass) (exact ? rep.exact_ok : rep.approx_ok) = false;
        rep.rows.push_back(r);
    };
    for (double v : cfg.sweep.values) {
        const Scenario sc = scenario_at(cfg, v);
        const Scenario an = detail::analytic_view(cfg, sc);
        for (StrategyKind s : cfg.strategies) {
            if (!detail::has_closed_forms(s)) continue;
            const Estimates e = estimate(detail::plan_for(cfg, sc, s, false), cfg.threads);
            if (s == StrategyKind::TBRS) {
                add(v, s, "cop", cop_tbrs(an), e.cop, 3.0 * e.cop.std_err, true);
                add(v, s, "sop", sop_tbrs(an), e.sop, 3.0 * e.sop.std_err, true);
                // the closed-form integral carries a small analytic
                // approximation, so it gets a fixed allowance on top
                add(v, s, "rscp", rscp_tbrs(an), e.rscp, 3.0 * e.rscp.std_err + 3e-3, false);
            } else {
                add(v, s, "cop", cop_jrjs(an), e.cop, 0.03, false);
                add(v, s, "sop", sop_jrjs(an), e.sop, 0.03, false);
                add(v, s, "rscp", rscp_jrjs(an), e.rscp, 0.05, false);
            }
        }
    }
    return rep;
}

inline void print_validate_report(const ValidateReport& rep, std::ostream& out) {
    out << "sweep_value strategy metric analytic mc mc_stderr tolerance verdict\n";
    for (const auto& r : rep.rows)
        out << detail::fmt9(r.sweep_value) << " " << r.strategy << " " << r.metric << " "
            << detail::fmt9(r.analytic) << " " << detail::fmt9(r.mc) << " "
            << detail::fmt9(r.std_err) << " " << detail::fmt9(r.tolerance) << " "
            << (r.pass ? "PASS" : "FAIL") << "\n";
    out << (rep.exact_ok ? "exact: ok" : "exact: FAILED") << "\n"
        << (rep.approx_ok ? "approx: ok" : "approx: FAILED") << "\n";
}

// ---------------------------------------------------------------------------
// Constrained throughput optimization.
// ---------------------------------------------------------------------------

/// Runs the grid optimizer from the config's opt_* grids for the first
/// configured strategy; emits a one-row CSV. Returns false when no grid point
/// satisfies the outage constraints.
inline bool optimize_csv(const RunConfig& cfg, std::ostream& out) {
    if (cfg.strategies.empty()) throw ConfigError("optimize: no strategy configured");
    const StrategyKind s = cfg.strategies.front();
    const Scenario base = scenario_from(cfg);
    const OptimizeResult res =
        optimize_throughput(detail::analytic_view(cfg, base), s, cfg.grids, cfg.constraints);
    out << "strategy,feasible,r0,kappa,lambda,eta_db,cop,sop,throughput\n";
    out << strategy_name(s) << "," << (res.feasible ? 1 : 0);
    const OptimizePoint& p = res.best;
    for (double v : {p.r0, p.kappa, p.lambda, p.eta_db, p.cop, p.sop, p.throughput})
        out << "," << detail::fmt9(res.feasible ? v : 0.0);
    out << "\n";
    return res.feasible;
}

}  // namespace plsec
