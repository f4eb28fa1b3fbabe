#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "plsec/scenario.hpp"

namespace plsec {

/// A fully specified Monte-Carlo experiment; identical plans produce
/// identical outputs regardless of thread count.
struct TrialPlan {
    std::uint64_t trials = 1'000'000;
    std::uint64_t master_seed = 42;
    StrategyKind strategy = StrategyKind::TBRS;
    Scenario scenario;
    bool with_se_link = false;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("TrialPlan: trials must be >= 1");
        scenario.validate();
        if (strategy_uses_jamming(strategy) && !(scenario.lambda < 1.0))
            throw std::invalid_argument("TrialPlan: jamming strategies need lambda < 1");
    }
};

/// Empirical probability (or throughput) with its binomial standard error.
struct MetricEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t trials = 0;
};

struct TrialResult {
    bool connection_outage = false;
    bool secrecy_outage = false;
    bool reliable_and_secure = false;
    double i_d = 0.0;
    double i_e = 0.0;
};

/// One deterministic trial: draw -> select on delayed CSI -> mutual
/// information on current CSI -> event classification.
inline TrialResult run_trial(const TrialPlan& plan, std::uint64_t trial_index) {
    if (trial_index >= plan.trials)
        throw std::invalid_argument("run_trial: trial_index out of range");
    TrialRng rng(plan.master_seed, trial_index);
    DrawOptions opts;
    opts.with_re_delayed = strategy_needs_re_csi(plan.strategy);
    opts.with_se_link = plan.with_se_link;
    const ChannelDraw draw = draw_channels(plan.scenario.params, plan.scenario.corr, rng, opts);
    const SelectionOutcome sel = select(plan.strategy, draw, plan.scenario.params);
    const MutualInfo mi = mutual_info(plan.strategy, sel, draw, plan.scenario.params,
                                      plan.scenario.lambda, plan.with_se_link);
    const OutageEvents ev = outage_events(mi.i_d, mi.i_e, plan.scenario.pair);
    return {ev.connection_outage, ev.secrecy_outage, ev.reliable_and_secure, mi.i_d, mi.i_e};
}

struct Estimates {
    MetricEstimate cop;
    MetricEstimate sop;
    MetricEstimate rscp;
    MetricEstimate throughput;
};

namespace detail {

inline MetricEstimate binomial_estimate(std::uint64_t successes, std::uint64_t n) {
    MetricEstimate e;
    e.trials = n;
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    e.value = p;
    e.std_err = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return e;
}

}  // namespace detail

/// Runs the plan and reduces exact event counters into estimates. The count
/// reduction is commutative, so results are worker-count independent.
inline Estimates estimate(const TrialPlan& plan, unsigned threads = 0) {
    plan.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t n = plan.trials;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));

    struct Counts {
        std::uint64_t co = 0, so = 0, rs = 0;
    };
    std::vector<Counts> partial(threads);
    auto worker = [&](unsigned w) {
        Counts c;
        for (std::uint64_t i = w; i < n; i += threads) {
            const TrialResult r = run_trial(plan, i);
            c.co += r.connection_outage;
            c.so += r.secrecy_outage;
            c.rs += r.reliable_and_secure;
        }
        partial[w] = c;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    Counts total;
    for (const auto& c : partial) {
        total.co += c.co;
        total.so += c.so;
        total.rs += c.rs;
    }

    Estimates est;
    est.cop = detail::binomial_estimate(total.co, n);
    est.sop = detail::binomial_estimate(total.so, n);
    est.rscp = detail::binomial_estimate(total.rs, n);
    est.throughput.trials = n;
    est.throughput.value = plan.scenario.pair.rs * est.rscp.value;
    est.throughput.std_err = plan.scenario.pair.rs * est.rscp.std_err;
    return est;
}

struct CampaignEntry {
    bool ok = false;
    Estimates estimates;
    std::string error;
};

/// Evaluates plans independently; output order matches input order and a
/// failing plan does not abort the rest.
inline std::vector<CampaignEntry> run_campaign(const std::vector<TrialPlan>& plans,
                                               unsigned threads = 0) {
    if (plans.empty()) throw std::invalid_argument("run_campaign: empty plan list");
    std::vector<CampaignEntry> out(plans.size());
    for (std::size_t i = 0; i < plans.size(); ++i) {
        try {
            out[i].estimates = estimate(plans[i], threads);
            out[i].ok = true;
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    }
    return out;
}

}  // namespace plsec
