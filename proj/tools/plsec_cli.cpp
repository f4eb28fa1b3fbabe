// Command-line front end: figure presets, free-form config runs, analytic
// vs Monte-Carlo validation, and constrained throughput optimization.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "plsec/presets.hpp"
#include "plsec/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::int64_t trials = -1;
    std::int64_t seed = -1;
    std::int64_t threads = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_config) {
    if (with_config)
        cmd->add_option("--config", o.config_path, "flat key=value config file")
            ->required()
            ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point");
    cmd->add_option("--seed", o.seed, "master RNG seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

plsec::RunConfig load_config(const CommonOpts& o) {
    plsec::RunConfig cfg = plsec::parse_config(slurp(o.config_path));
    if (o.trials >= 0) cfg.trials = static_cast<std::uint64_t>(o.trials);
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (o.threads >= 0) cfg.threads = static_cast<unsigned>(o.threads);
    return cfg;
}

int emit_run(const plsec::RunConfig& cfg, const CommonOpts& o) {
    if (o.out_path.empty()) {
        plsec::run_csv(cfg, std::cout);
    } else {
        plsec::run_csv_to_file(cfg, o.out_path);
        std::cout << "wrote " << o.out_path << " (" << cfg.sweep.values.size()
                  << " sweep points)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physical-layer security evaluator for two-hop relay networks"};
    app.require_subcommand(1);

    CommonOpts analytic_o, simulate_o, validate_o, figure_o, optimize_o;
    std::string figure_id;

    auto* cmd_analytic =
        app.add_subcommand("analytic", "closed-form metrics over the configured sweep");
    add_common(cmd_analytic, analytic_o, true);

    auto* cmd_simulate =
        app.add_subcommand("simulate", "Monte-Carlo metrics over the configured sweep");
    add_common(cmd_simulate, simulate_o, true);

    auto* cmd_validate =
        app.add_subcommand("validate", "analytic vs Monte-Carlo agreement report");
    add_common(cmd_validate, validate_o, true);

    auto* cmd_figure = app.add_subcommand("figure", "run a frozen figure preset");
    cmd_figure->add_option("id", figure_id, "preset id (fig2..fig10)")->required();
    add_common(cmd_figure, figure_o, false);

    auto* cmd_optimize =
        app.add_subcommand("optimize", "constrained secrecy-throughput grid search");
    add_common(cmd_optimize, optimize_o, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_analytic->parsed()) {
            plsec::RunConfig cfg = load_config(analytic_o);
            cfg.engine = plsec::EngineSelect::Analytic;
            return emit_run(cfg, analytic_o);
        }
        if (cmd_simulate->parsed()) {
            plsec::RunConfig cfg = load_config(simulate_o);
            cfg.engine = plsec::EngineSelect::Mc;
            return emit_run(cfg, simulate_o);
        }
        if (cmd_validate->parsed()) {
            plsec::RunConfig cfg = load_config(validate_o);
            const plsec::ValidateReport rep = plsec::validate_run(cfg);
            if (validate_o.out_path.empty()) {
                plsec::print_validate_report(rep, std::cout);
            } else {
                std::ofstream out(validate_o.out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open output file");
                plsec::print_validate_report(rep, out);
            }
            return (rep.exact_ok && rep.approx_ok) ? 0 : 1;
        }
        if (cmd_figure->parsed()) {
            plsec::RunConfig cfg = plsec::preset_config(figure_id);
            if (figure_o.trials >= 0) cfg.trials = static_cast<std::uint64_t>(figure_o.trials);
            if (figure_o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(figure_o.seed);
            if (figure_o.threads >= 0) cfg.threads = static_cast<unsigned>(figure_o.threads);
            return emit_run(cfg, figure_o);
        }
        if (cmd_optimize->parsed()) {
            plsec::RunConfig cfg = load_config(optimize_o);
            bool feasible = false;
            if (optimize_o.out_path.empty()) {
                feasible = plsec::optimize_csv(cfg, std::cout);
            } else {
                std::ofstream out(optimize_o.out_path, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open output file");
                feasible = plsec::optimize_csv(cfg, out);
            }
            return feasible ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
