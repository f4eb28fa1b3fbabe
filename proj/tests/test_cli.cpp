#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "plsec/presets.hpp"
#include "plsec/runner.hpp"

using namespace plsec;
using Catch::Approx;

namespace {

namespace fs = std::filesystem;

std::string small_metrics_config() {
    return "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\nlambda=0.75\n"
           "strategy=tbrs,jrjs\nengine=analytic\nmode=metrics\n"
           "sweep=eta_db\nsweep_values=5,10,15\n";
}

std::string run_to_string(const RunConfig& cfg) {
    std::ostringstream os;
    run_csv(cfg, os);
    return os.str();
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PLSEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse_config round trip of the basic keys") {
    const auto cfg = parse_config(small_metrics_config());
    CHECK(cfg.n_t == 3);
    CHECK(cfg.k_r == 3);
    CHECK(cfg.lambda == Approx(0.75));
    CHECK(cfg.engine == EngineSelect::Analytic);
    CHECK(cfg.mode == RunMode::Metrics);
    REQUIRE(cfg.strategies.size() == 2);
    CHECK(cfg.strategies[0] == StrategyKind::TBRS);
    CHECK(cfg.sweep.key == "eta_db");
    REQUIRE(cfg.sweep.values.size() == 3);
    CHECK(cfg.sweep.values[1] == Approx(10.0));
    // the delay key drives the correlation coefficients
    const Scenario sc = scenario_from(cfg);
    CHECK(sc.corr.rho_rd == Approx(0.903712642092466).epsilon(1e-12));
    CHECK(sc.corr.rho_sr == Approx(sc.corr.rho_rd).epsilon(1e-12));
}

TEST_CASE("parse_config range expansion") {
    const auto cfg = parse_config(
        "strategy=jrjs\nengine=analytic\nlambda=0.5\n"
        "sweep=lambda\nsweep_start=0.05\nsweep_stop=0.95\nsweep_step=0.05\n");
    REQUIRE(cfg.sweep.values.size() == 19);
    CHECK(cfg.sweep.values.front() == Approx(0.05));
    CHECK(cfg.sweep.values.back() == Approx(0.95));
}

TEST_CASE("parse_config error reporting names key and line") {
    // a sweep axis is mandatory
    CHECK_THROWS_WITH(parse_config(""), Catch::Matchers::ContainsSubstring("sweep axis"));
    try {
        parse_config("n_t=3\nbogus_key=1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    try {
        parse_config("eta_db=ten\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("eta_db") != std::string::npos);
        CHECK(std::string(e.what()).find("ten") != std::string::npos);
    }
    // mutually exclusive rate keys
    CHECK_THROWS_AS(parse_config("rs=0.125\nkappa=0.125\nsweep=eta_db\nsweep_values=10\n"),
                    ConfigError);
    // second axis outside surface mode
    CHECK_THROWS_AS(parse_config("sweep=eta_db\nsweep_values=10\n"
                                 "sweep2=lambda\nsweep2_values=0.5\n"),
                    ConfigError);
    // invalid base scenario fails at parse time
    CHECK_THROWS_AS(parse_config("r0=1\nrs=2\nsweep=eta_db\nsweep_values=10\n"),
                    std::exception);
}

TEST_CASE("config_at keeps the rate keys exclusive while sweeping") {
    auto cfg = parse_config("r0=1\nrs=0.125\nsweep=eta_db\nsweep_values=10\n");
    const auto swept = config_at(cfg, "kappa", 0.25);
    CHECK_FALSE(swept.rs.has_value());
    REQUIRE(swept.kappa.has_value());
    const Scenario sc = scenario_from(swept);
    CHECK(sc.pair.rs == Approx(0.25));
}

TEST_CASE("figure presets are frozen and parseable") {
    const auto& all = figure_presets();
    REQUIRE(all.size() == 9);
    for (const auto& p : all) CHECK_NOTHROW(preset_config(p.id));
    CHECK_THROWS_AS(figure_preset("fig99"), std::invalid_argument);

    // parameter pinning: the canonical operating point must not drift
    const std::string& f2 = figure_preset("fig2").config_text;
    for (const char* frag : {"n_t=3", "k_r=3", "fd_td=0.1", "lambda=0.1", "r0=1",
                             "rs=0.125", "sweep=eta_db", "sweep_stop=30"})
        CHECK(f2.find(frag) != std::string::npos);
    const std::string& f5 = figure_preset("fig5").config_text;
    for (const char* frag : {"eta_db=15", "sweep=lambda", "sweep_start=0.05",
                             "sweep_stop=0.95"})
        CHECK(f5.find(frag) != std::string::npos);
    const std::string& f7 = figure_preset("fig7").config_text;
    for (const char* frag : {"mode=loss", "eta_db=10", "sweep=fd_td"})
        CHECK(f7.find(frag) != std::string::npos);
    CHECK(preset_config("fig8").mode == RunMode::Surface);
    CHECK(preset_config("fig10").mode == RunMode::CompareSe);
}

TEST_CASE("analytic CSV output is deterministic and numerically faithful") {
    const auto cfg = parse_config(small_metrics_config());
    const std::string a = run_to_string(cfg);
    const std::string b = run_to_string(cfg);
    CHECK(a == b);

    // header plus one row per sweep value, LF endings only
    std::istringstream lines(a);
    std::string header;
    std::getline(lines, header);
    CHECK(header.rfind("eta_db,tbrs_analytic_cop", 0) == 0);
    CHECK(a.find('\r') == std::string::npos);

    std::string row;
    std::getline(lines, row);  // eta_db = 5 row
    std::getline(lines, row);  // eta_db = 10 row
    std::istringstream cells(row);
    std::string cell;
    std::getline(cells, cell, ',');
    CHECK(std::stod(cell) == Approx(10.0));
    std::getline(cells, cell, ',');
    // 9 significant digits survive the text round trip
    const Scenario sc = scenario_at(cfg, 10.0);
    CHECK(std::stod(cell) == Approx(cop_tbrs(sc)).epsilon(1e-8));
}

TEST_CASE("Monte-Carlo CSV output is reproducible for a fixed seed") {
    auto cfg = parse_config(small_metrics_config());
    cfg.engine = EngineSelect::Mc;
    cfg.trials = 5000;
    cfg.threads = 1;
    CHECK(run_to_string(cfg) == run_to_string(cfg));
    auto other = cfg;
    other.seed = 43;
    CHECK(run_to_string(cfg) != run_to_string(other));
}

TEST_CASE("validate_run flags a corrupted analytic engine") {
    auto cfg = parse_config(
        "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\nstrategy=tbrs\n"
        "trials=20000\nthreads=1\nsweep=eta_db\nsweep_values=5,10\n");
    const auto good = validate_run(cfg);
    CHECK(good.exact_ok);
    CHECK(good.approx_ok);
    REQUIRE(good.rows.size() == 6);  // 2 points x 3 metrics

    cfg.debug_corrupt_gain = 5.0;
    const auto bad = validate_run(cfg);
    CHECK_FALSE(bad.exact_ok);
    // the corruption scales the relay-destination variance, so every metric
    // that depends on that link must flag; the secrecy outage does not use it
    for (const auto& r : bad.rows)
        if (r.metric != "sop") CHECK_FALSE(r.pass);
}

TEST_CASE("cli subprocess exit codes") {
    const auto cfg_path = write_temp("plsec_cli_ok.cfg", small_metrics_config());
    const auto out_path = fs::temp_directory_path() / "plsec_cli_out.csv";

    CHECK(run_cli("analytic --config " + cfg_path.string() + " --out " + out_path.string()) == 0);
    REQUIRE(fs::exists(out_path));
    const std::string first = slurp(out_path);
    CHECK(run_cli("analytic --config " + cfg_path.string() + " --out " + out_path.string()) == 0);
    CHECK(slurp(out_path) == first);  // byte-identical rerun

    // malformed config
    const auto bad_path = write_temp("plsec_cli_bad.cfg", "definitely_not_a_key=1\n");
    CHECK(run_cli("analytic --config " + bad_path.string()) == 1);
    // unknown preset and missing required option
    CHECK(run_cli("figure fig99") == 1);
    CHECK(run_cli("analytic") != 0);

    // optimizer: feasible -> 0, empty feasible set -> 2
    const std::string opt_base =
        "n_t=3\nk_r=3\nfd_td=0.1\nstrategy=tbrs\nsweep=eta_db\nsweep_values=10\n"
        "opt_r0=0.5,1\nopt_kappa=0.125,0.25\nopt_lambda=0.75\nopt_eta_db=5,10\n";
    const auto opt_ok = write_temp("plsec_cli_opt_ok.cfg", opt_base);
    CHECK(run_cli("optimize --config " + opt_ok.string() + " --out " + out_path.string()) == 0);
    {
        const std::string csv = slurp(out_path);
        CHECK(csv.rfind("strategy,feasible,r0,kappa,lambda,eta_db,cop,sop,throughput", 0) == 0);
        CHECK(csv.find("tbrs,1") != std::string::npos);
    }
    const auto opt_bad =
        write_temp("plsec_cli_opt_bad.cfg", opt_base + "upsilon=1e-9\ndelta=1e-9\n");
    CHECK(run_cli("optimize --config " + opt_bad.string()) == 2);

    // validation subprocess: clean pass then forced failure
    const std::string val_base =
        "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\nstrategy=tbrs\n"
        "trials=20000\nthreads=1\nsweep=eta_db\nsweep_values=5,10\n";
    const auto val_ok = write_temp("plsec_cli_val_ok.cfg", val_base);
    CHECK(run_cli("validate --config " + val_ok.string()) == 0);
    const auto val_bad =
        write_temp("plsec_cli_val_bad.cfg", val_base + "debug_corrupt_gain=5\n");
    CHECK(run_cli("validate --config " + val_bad.string()) == 1);
}

TEST_CASE("loss mode requires a delay sweep axis") {
    auto cfg = parse_config(small_metrics_config());
    cfg.mode = RunMode::Loss;
    std::ostringstream os;
    CHECK_THROWS_AS(run_csv(cfg, os), ConfigError);

    auto ok = parse_config(
        "n_t=3\nk_r=3\nr0=1\nrs=0.125\nlambda=0.75\neta_db=10\n"
        "strategy=tbrs\nengine=analytic\nmode=loss\n"
        "sweep=fd_td\nsweep_values=0.1,0.2\n");
    std::ostringstream os2;
    run_csv(ok, os2);
    const std::string text = os2.str();
    CHECK(text.rfind("fd_td,tbrs_analytic_loss,tbrs_analytic_loss_hop1,"
                     "tbrs_analytic_loss_hop2",
                     0) == 0);
    // two data rows follow the header
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("surface mode emits long-format rows and skips invalid pairs") {
    auto cfg = parse_config(
        "n_t=3\nk_r=3\nfd_td=0.1\nlambda=0.75\neta_db=15\n"
        "strategy=tbrs\nengine=analytic\nmode=surface\n"
        "sweep=r0\nsweep_values=1,2\n"
        "sweep2=kappa\nsweep2_values=0.25,1.5\n");  // kappa 1.5 is invalid
    std::ostringstream os;
    run_csv(cfg, os);
    const std::string text = os.str();
    CHECK(text.rfind("r0,kappa,tbrs_analytic_throughput", 0) == 0);
    // 2 r0 values x 1 valid kappa = 2 data rows
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
