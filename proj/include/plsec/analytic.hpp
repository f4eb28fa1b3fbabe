#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "plsec/quadrature.hpp"
#include "plsec/scenario.hpp"
#include "plsec/simulate.hpp"
#include "plsec/specfun.hpp"

namespace plsec {

enum class RscpMode { ClosedForm, Quadrature };
enum class Engine { Analytic, Mc };

/// Set whenever a probability had to be pulled back into [0,1] by more than
/// floating-point dust; thread-local so concurrent sweeps stay independent.
inline bool& probability_clip_flag() {
    thread_local bool flag = false;
    return flag;
}

namespace detail {

inline double clip_probability(double p) {
    if (p < -1e-9 || p > 1.0 + 1e-9) probability_clip_flag() = true;
    return std::min(1.0, std::max(0.0, p));
}

inline void require_jamming_scenario(const Scenario& sc) {
    sc.validate();
    if (sc.params.k_r < 2)
        throw std::invalid_argument("jamming analysis needs k_r >= 2");
    if (!(sc.lambda > 0.0 && sc.lambda < 1.0))
        throw std::invalid_argument("jamming analysis needs lambda in (0,1)");
}

inline double phi_hat_k(const Scenario& sc, int k) {
    const int kr = sc.params.k_r;
    const double spread = jammer_spread(kr, sc.corr.rho_rd);
    const double num = kr * sc.lambda * omega_k(k, sc.corr.rho_rd) *
                       sc.params.eta * sc.params.sigma2_rd;
    return num / (spread * (1.0 - sc.lambda) * sc.params.eta * sc.params.jd_variance() + kr);
}

inline double phi_hat_e(const Scenario& sc) {
    const double num = sc.lambda * sc.params.eta * sc.params.sigma2_re;
    return num / ((1.0 - sc.lambda) * sc.params.eta * sc.params.je_variance() + 1.0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Selection without jamming.
// ---------------------------------------------------------------------------

/// Connection outage probability of the non-jamming selection strategy.
inline double cop_tbrs(const Scenario& sc) {
    sc.validate();
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double x = sc.pair.gamma_th_d();
    const double gsr = sc.params.gbar_sr();
    const double grd = sc.params.gbar_rd();
    const double rho2 = sc.corr.rho_sr * sc.corr.rho_sr;
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            for (int k = 0; k <= kr - 1; ++k) {
                const double wk = detail::omega_k(k, sc.corr.rho_rd);
                const double c = x * (x + 1.0) / (wk * grd);
                const double pref = kr * detail::binom(kr - 1, k) / (k + 1.0) *
                                    detail::binom(nt - 1, n) * detail::binom(nt - 1 - n, m) *
                                    std::pow(rho2, nt - 1 - n) * std::pow(1.0 - rho2, n) *
                                    std::pow(x, nt - 1 - n - m) /
                                    (detail::factorial(nt - 1 - n) * std::pow(gsr, nt - n));
                const double term = pref * std::pow(gsr * c, 0.5 * (m + 1)) *
                                    std::exp(-x / gsr - x / (wk * grd)) *
                                    bessel_k(m + 1, 2.0 * std::sqrt(c / gsr));
                sum.add((k % 2 == 0 ? 1.0 : -1.0) * term);
            }
        }
    }
    return detail::clip_probability(1.0 - 2.0 * sum.value());
}

/// Secrecy outage probability of the non-jamming selection strategy.
inline double sop_tbrs(const Scenario& sc) {
    sc.validate();
    const int nt = sc.params.n_t;
    const double x = sc.pair.gamma_th_e();
    const double gsr = sc.params.gbar_sr();
    const double gre = sc.params.gbar_re();
    const double rho2 = sc.corr.rho_sr * sc.corr.rho_sr;
    const double c = x * (x + 1.0) / gre;
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            const double pref = detail::binom(nt - 1, n) * detail::binom(nt - 1 - n, m) *
                                std::pow(rho2, nt - 1 - n) * std::pow(1.0 - rho2, n) *
                                std::pow(x, nt - 1 - n - m) /
                                (detail::factorial(nt - 1 - n) * std::pow(gsr, nt - n));
            sum.add(pref * std::pow(gsr * c, 0.5 * (m + 1)) *
                    std::exp(-x / gsr - x / gre) *
                    bessel_k(m + 1, 2.0 * std::sqrt(c / gsr)));
        }
    }
    return detail::clip_probability(2.0 * sum.value());
}

/// Reliable-and-secure connection probability without jamming. ClosedForm
/// carries a small analytic approximation; Quadrature integrates the defining
/// probability directly and bounds that approximation.
inline double rscp_tbrs(const Scenario& sc, RscpMode mode = RscpMode::ClosedForm,
                        const QuadratureSettings& settings = {}) {
    sc.validate();
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double gd = sc.pair.gamma_th_d();
    const double ge = sc.pair.gamma_th_e();
    const double gsr = sc.params.gbar_sr();
    const double grd = sc.params.gbar_rd();
    const double gre = sc.params.gbar_re();

    if (mode == RscpMode::Quadrature) {
        auto f = [&](double x) {
            if (x <= gd) return 0.0;
            const double yd = gd + gd * (gd + 1.0) / (x - gd);
            const double ye = ge + ge * (ge + 1.0) / (x - ge);
            const double surv_d = 1.0 - cdf_gamma_rstar_d(yd, sc.params, sc.corr);
            const double cdf_e = 1.0 - std::exp(-ye / gre);
            return surv_d * cdf_e * pdf_gamma_sr(x, sc.params, sc.corr);
        };
        return detail::clip_probability(integrate_to_infinity(f, gd, settings));
    }

    const double rho2 = sc.corr.rho_sr * sc.corr.rho_sr;
    const double b = ge * (ge + 1.0) / (gre + gd - ge);
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            for (int k = 0; k <= kr - 1; ++k) {
                const double wk = detail::omega_k(k, sc.corr.rho_rd);
                const double a = gd * (gd + 1.0) / (wk * grd);
                const double pref = kr * detail::binom(kr - 1, k) / (k + 1.0) *
                                    detail::binom(nt - 1, n) * detail::binom(nt - 1 - n, m) *
                                    std::pow(rho2, nt - 1 - n) * std::pow(1.0 - rho2, n) *
                                    std::pow(gd, nt - 1 - n - m) *
                                    std::exp(-gd / gsr - gd / (wk * grd)) /
                                    (detail::factorial(nt - 1 - n) *
                                     std::pow(gsr, nt - n - 0.5 * (m + 1)));
                const double bracket =
                    std::pow(a, 0.5 * (m + 1)) * bessel_k(m + 1, 2.0 * std::sqrt(a / gsr)) -
                    std::exp(-ge / gre) * std::pow(a + b, 0.5 * (m + 1)) *
                        bessel_k(m + 1, 2.0 * std::sqrt((a + b) / gsr));
                sum.add((k % 2 == 0 ? 1.0 : -1.0) * pref * bracket);
            }
        }
    }
    return detail::clip_probability(2.0 * sum.value());
}

struct AsymptoticCdfs {
    double cop_infty = 0.0;
    double one_minus_sop_infty = 0.0;
};

/// High-SNR linearizations of the two outage probabilities (value form,
/// already divided by eta).
inline AsymptoticCdfs asymptotic_cdfs(const Scenario& sc) {
    sc.validate();
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double first_hop =
        std::pow(1.0 - sc.corr.rho_sr * sc.corr.rho_sr, nt - 1) / sc.params.sigma2_sr;
    KahanSum second;
    for (int k = 0; k <= kr - 1; ++k) {
        const double denom = (k * (1.0 - sc.corr.rho_rd * sc.corr.rho_rd) + 1.0) *
                             sc.params.sigma2_rd;
        second.add((k % 2 == 0 ? 1.0 : -1.0) * kr * detail::binom(kr - 1, k) / denom);
    }
    AsymptoticCdfs out;
    out.cop_infty = (first_hop + second.value()) * sc.pair.gamma_th_d() / sc.params.eta;
    out.one_minus_sop_infty =
        (first_hop + 1.0 / sc.params.sigma2_re) * sc.pair.gamma_th_e() / sc.params.eta;
    return out;
}

/// Reliability-security ratio without jamming; eta cancels by construction.
inline double rsr_tbrs(const Scenario& sc) {
    const AsymptoticCdfs a = asymptotic_cdfs(sc);
    return a.cop_infty / a.one_minus_sop_infty;
}

/// High-SNR secrecy throughput without jamming.
inline double throughput_asymptotic_tbrs(const Scenario& sc) {
    sc.validate();
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double eta = sc.params.eta;
    const double slope_d =
        nt * std::pow(1.0 - sc.corr.rho_sr * sc.corr.rho_sr, nt - 1) / sc.params.sigma2_sr +
        [&] {
            KahanSum s;
            for (int k = 0; k <= kr - 1; ++k) {
                const double denom =
                    (k * (1.0 - sc.corr.rho_rd * sc.corr.rho_rd) + 1.0) * sc.params.sigma2_rd;
                s.add((k % 2 == 0 ? 1.0 : -1.0) * kr * detail::binom(kr - 1, k) / denom);
            }
            return s.value();
        }();
    return sc.pair.rs * (1.0 - slope_d * sc.pair.gamma_th_d() / eta) *
           sc.pair.gamma_th_e() / (sc.params.sigma2_re * eta);
}

// ---------------------------------------------------------------------------
// Joint relay and jammer selection.
// ---------------------------------------------------------------------------

/// Connection outage probability with jamming. The triple sum is exact up to
/// the relay/jammer independence assumption: each term reduces to one
/// semi-infinite rational-exponential integral, evaluated numerically instead
/// of through the cruder pole-only surrogate.
inline double cop_jrjs(const Scenario& sc, const QuadratureSettings& settings = {}) {
    detail::require_jamming_scenario(sc);
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double x = sc.pair.gamma_th_d();
    const double ac = x * (x + 1.0);
    const double gsr = sc.params.gbar_sr();
    const double rho2 = sc.corr.rho_sr * sc.corr.rho_sr;
    const double jmean = detail::jammer_spread(kr, sc.corr.rho_rd) * (1.0 - sc.lambda) *
                         sc.params.eta * sc.params.jd_variance() / kr;
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            for (int k = 0; k <= kr - 1; ++k) {
                const double ck = detail::omega_k(k, sc.corr.rho_rd) * sc.lambda *
                                  sc.params.gbar_rd();
                const double phi_k = ck / jmean;
                const double pref = kr * detail::binom(kr - 1, k) / (k + 1.0) *
                                    detail::binom(nt - 1, n) * detail::binom(nt - 1 - n, m) *
                                    std::pow(rho2, nt - 1 - n) * std::pow(1.0 - rho2, n) *
                                    std::pow(x, nt - 1 - n - m) /
                                    (detail::factorial(nt - 1 - n) * std::pow(gsr, nt - n)) *
                                    phi_k / (x + phi_k) * std::exp(-x / gsr - x / ck);
                const double tail = upsilon_integral(m + 1, ac / (x + phi_k), 1.0 / gsr,
                                                     ac / ck, settings);
                sum.add((k % 2 == 0 ? 1.0 : -1.0) * pref * tail);
            }
        }
    }
    return detail::clip_probability(1.0 - sum.value());
}

/// Secrecy outage probability with jamming (half-min bound on the AF SNR,
/// hence the doubled threshold).
inline double sop_jrjs(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const double x = 2.0 * sc.pair.gamma_th_e();
    const double surv_sr = 1.0 - cdf_gamma_sr(x, sc.params, sc.corr);
    const double surv_e = 1.0 - cdf_xi_e(x, sc.params, sc.lambda);
    return detail::clip_probability(surv_sr * surv_e);
}

/// Reliability-security ratio with jamming; depends only on the second hop.
/// Uses the same doubled eavesdropper threshold as the secrecy-outage bound so
/// the ratio stays consistent with cop/(1 - sop) at high SNR.
inline double rsr_jrjs(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const int kr = sc.params.k_r;
    const double gd = sc.pair.gamma_th_d();
    const double ge2 = 2.0 * sc.pair.gamma_th_e();
    const double spread = detail::jammer_spread(kr, sc.corr.rho_rd);
    const double phi_e = sc.lambda * sc.params.sigma2_re /
                         ((1.0 - sc.lambda) * sc.params.je_variance());
    KahanSum sum;
    for (int k = 0; k <= kr - 1; ++k) {
        const double phi_k = kr * detail::omega_k(k, sc.corr.rho_rd) * sc.lambda *
                             sc.params.sigma2_rd /
                             (spread * (1.0 - sc.lambda) * sc.params.jd_variance());
        sum.add((k % 2 == 0 ? 1.0 : -1.0) * detail::binom(kr - 1, k) * kr / (k + 1.0) *
                (ge2 + phi_e) / (gd + phi_k));
    }
    return gd / ge2 * sum.value();
}

/// Reliable-and-secure connection probability with jamming.
inline double rscp_jrjs(const Scenario& sc, RscpMode mode = RscpMode::ClosedForm,
                        const QuadratureSettings& settings = {}) {
    detail::require_jamming_scenario(sc);
    const int nt = sc.params.n_t, kr = sc.params.k_r;
    const double gd = sc.pair.gamma_th_d();
    const double ge = sc.pair.gamma_th_e();
    const double gsr = sc.params.gbar_sr();

    if (mode == RscpMode::Quadrature) {
        auto f = [&](double z) {
            if (z <= 0.0) return 0.0;
            const double yd = gd + gd * (gd + 1.0) / z;
            const double ye = ge + ge * (ge + 1.0) / (z + gd - ge);
            const double surv_d = 1.0 - cdf_xi_d(yd, sc.params, sc.corr, sc.lambda);
            const double cdf_e = cdf_xi_e(ye, sc.params, sc.lambda);
            return surv_d * cdf_e * pdf_gamma_sr(z + gd, sc.params, sc.corr);
        };
        return detail::clip_probability(integrate_to_infinity(f, 0.0, settings));
    }

    const double rho2 = sc.corr.rho_sr * sc.corr.rho_sr;
    const double phe = detail::phi_hat_e(sc);
    const double theta2_base = gd - ge + ge * (ge + 1.0) / (ge + phe);
    const double lam_gre = sc.lambda * sc.params.gbar_re();
    // int_0^inf t^{v-1} e^{-t/gsr} / (t + theta) dt, in overflow-safe form
    auto part = [&](int v, double theta) {
        return std::pow(theta, v - 1) * detail::factorial(v - 1) *
               upper_gamma_scaled(1.0 - v, theta / gsr);
    };
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            for (int k = 0; k <= kr - 1; ++k) {
                const double ph = detail::phi_hat_k(sc, k);
                const double wk = detail::omega_k(k, sc.corr.rho_rd);
                const double theta1 = gd * (gd + 1.0) / (gd + ph);
                double theta2 = theta2_base;
                // the two poles may coincide; nudge one to keep the partial
                // fractions finite (the bracket has a removable limit there)
                if (std::fabs(theta1 - theta2) < 1e-7 * std::max(theta1, theta2))
                    theta2 = theta1 * (1.0 + 1e-6);
                const double pref =
                    kr * detail::binom(kr - 1, k) / (k + 1.0) * detail::binom(nt - 1, n) *
                    detail::binom(nt - 1 - n, m) * std::pow(rho2, nt - 1 - n) *
                    std::pow(1.0 - rho2, n) * ph * std::pow(gd, nt - 1 - n - m) *
                    std::exp(-gd / gsr - gd / (wk * sc.lambda * sc.params.gbar_rd())) /
                    (detail::factorial(nt - 1 - n) * std::pow(gsr, nt - n) * (gd + ph));
                const double amp = phe * std::exp(-ge / lam_gre) /
                                   ((ge + phe) * (theta1 - theta2));
                const double bracket =
                    part(m + 2, theta1) -
                    amp * (part(m + 3, theta2) - part(m + 3, theta1) +
                           (gd - ge) * (part(m + 2, theta2) - part(m + 2, theta1)));
                sum.add((k % 2 == 0 ? 1.0 : -1.0) * pref * bracket);
            }
        }
    }
    return detail::clip_probability(sum.value());
}

/// High-SNR limit form of the jamming RSCP: first hop dropped, second-hop
/// SINR CDFs evaluated at the thresholds directly.
inline double rscp_jrjs_asymptotic(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const double surv_d = 1.0 - cdf_xi_d(sc.pair.gamma_th_d(), sc.params, sc.corr, sc.lambda);
    const double cdf_e = cdf_xi_e(sc.pair.gamma_th_e(), sc.params, sc.lambda);
    return detail::clip_probability(surv_d * cdf_e);
}

/// Small-delay simplification of the asymptotic jamming RSCP: the selection
/// order statistics collapse to a single effective signal-to-interference
/// ratio on each side. lambda_subopt is the stationary point of exactly this
/// product, so the two stay consistent by construction; the full asymptotic
/// form above peaks at a noticeably smaller lambda.
inline double rscp_jrjs_floor_approx(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const double rho2 = sc.corr.rho_rd * sc.corr.rho_rd;
    const double spread = detail::jammer_spread(sc.params.k_r, sc.corr.rho_rd);
    const double phi_d = sc.params.k_r * (1.0 - rho2) * sc.lambda * sc.params.sigma2_rd /
                         (spread * (1.0 - sc.lambda) * sc.params.jd_variance());
    const double phi_e = sc.lambda * sc.params.sigma2_re /
                         ((1.0 - sc.lambda) * sc.params.je_variance());
    const double gd = sc.pair.gamma_th_d();
    const double ge = sc.pair.gamma_th_e();
    return detail::clip_probability(phi_d / (gd + phi_d) * ge / (ge + phi_e));
}

/// eta -> infinity floor of the jamming connection outage.
inline double cop_jrjs_floor(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const int kr = sc.params.k_r;
    const double gd = sc.pair.gamma_th_d();
    const double spread = detail::jammer_spread(kr, sc.corr.rho_rd);
    KahanSum sum;
    for (int k = 0; k <= kr - 1; ++k) {
        const double phi_inf = kr * detail::omega_k(k, sc.corr.rho_rd) * sc.lambda *
                               sc.params.sigma2_rd /
                               (spread * (1.0 - sc.lambda) * sc.params.jd_variance());
        sum.add((k % 2 == 0 ? 1.0 : -1.0) * kr * detail::binom(kr - 1, k) / (k + 1.0) *
                phi_inf / (gd + phi_inf));
    }
    return detail::clip_probability(1.0 - sum.value());
}

/// eta -> infinity floor of the jamming secrecy outage.
inline double sop_jrjs_floor(const Scenario& sc) {
    detail::require_jamming_scenario(sc);
    const double phi_inf = sc.lambda * sc.params.sigma2_re /
                           ((1.0 - sc.lambda) * sc.params.je_variance());
    return detail::clip_probability(phi_inf / (2.0 * sc.pair.gamma_th_e() + phi_inf));
}

/// Near-optimal relay/jammer power split for small CSI delay.
inline double lambda_subopt(const Scenario& sc) {
    sc.validate();
    if (sc.params.k_r < 2)
        throw std::invalid_argument("lambda_subopt: needs k_r >= 2");
    const double rho2 = sc.corr.rho_rd * sc.corr.rho_rd;
    const double spread = detail::jammer_spread(sc.params.k_r, sc.corr.rho_rd);
    const double gth = sc.pair.gamma_th_d() * sc.pair.gamma_th_e();
    const double num = std::sqrt(spread * gth);
    return num / (num + std::sqrt(sc.params.k_r * (1.0 - rho2)));
}

// ---------------------------------------------------------------------------
// Throughput.
// ---------------------------------------------------------------------------

/// Effective secrecy throughput rs * rscp from either engine. The MC engine
/// honors trials/seed/threads; the analytic engine covers the two strategies
/// with closed forms.
inline double effective_throughput(const Scenario& sc, StrategyKind strategy, Engine engine,
                                   std::uint64_t trials = 100'000, std::uint64_t seed = 42,
                                   unsigned threads = 0, bool with_se_link = false) {
    sc.validate();
    if (engine == Engine::Mc) {
        TrialPlan plan;
        plan.trials = trials;
        plan.master_seed = seed;
        plan.strategy = strategy;
        plan.scenario = sc;
        plan.with_se_link = with_se_link;
        return estimate(plan, threads).throughput.value;
    }
    if (with_se_link)
        throw std::invalid_argument("effective_throughput: S-E link needs the MC engine");
    switch (strategy) {
        case StrategyKind::TBRS: return sc.pair.rs * rscp_tbrs(sc);
        case StrategyKind::JRJS: return sc.pair.rs * rscp_jrjs(sc);
        default:
            throw std::invalid_argument(
                "effective_throughput: no closed form for ratio-based selection");
    }
}

/// Fractional throughput loss of a delayed-CSI scenario against its
/// delay-free counterpart.
inline double throughput_loss(const Scenario& sc_delayed, const Scenario& sc_no_delay,
                              StrategyKind strategy, Engine engine = Engine::Analytic,
                              std::uint64_t trials = 100'000, std::uint64_t seed = 42,
                              unsigned threads = 0) {
    const double base = effective_throughput(sc_no_delay, strategy, engine, trials, seed, threads);
    const double delayed =
        effective_throughput(sc_delayed, strategy, engine, trials, seed + 1, threads);
    if (!(base > 0.0))
        throw std::invalid_argument("throughput_loss: reference throughput must be positive");
    return std::min(1.0, std::max(0.0, (base - delayed) / base));
}

struct ThroughputGrids {
    std::vector<double> r0;
    std::vector<double> kappa;  // rs/r0
    std::vector<double> lambda;
    std::vector<double> eta_db;
};

struct OptimizeConstraints {
    double upsilon = 1.0;  // reliability requirement: cop <= upsilon
    double delta = 1.0;    // security requirement: sop <= delta
};

struct OptimizePoint {
    double r0 = 0.0;
    double kappa = 0.0;
    double lambda = 0.0;
    double eta_db = 0.0;
    double cop = 0.0;
    double sop = 0.0;
    double throughput = 0.0;
};

struct OptimizeResult {
    bool feasible = false;
    OptimizePoint best;
};

/// Exhaustive constrained grid search for the throughput maximum. Points that
/// violate the outage constraints (or form an invalid rate pair) are skipped;
/// an empty feasible set is an ordinary result, not an error. Ties resolve to
/// the earliest point in row-major (r0, kappa, lambda, eta) order.
inline OptimizeResult optimize_throughput(const Scenario& base, StrategyKind strategy,
                                          const ThroughputGrids& grids,
                                          const OptimizeConstraints& cons = {}) {
    base.validate();
    if (grids.r0.empty() || grids.kappa.empty() || grids.lambda.empty() ||
        grids.eta_db.empty())
        throw std::invalid_argument("optimize_throughput: all grids must be nonempty");
    if (!(cons.upsilon > 0.0 && cons.upsilon <= 1.0) ||
        !(cons.delta > 0.0 && cons.delta <= 1.0))
        throw std::invalid_argument("optimize_throughput: constraints must lie in (0,1]");
    if (strategy != StrategyKind::TBRS && strategy != StrategyKind::JRJS)
        throw std::invalid_argument("optimize_throughput: analytic objective needs a closed form");

    OptimizeResult result;
    for (double r0 : grids.r0) {
        for (double kappa : grids.kappa) {
            if (!(kappa > 0.0 && kappa < 1.0)) continue;
            for (double lambda : grids.lambda) {
                for (double eta_db : grids.eta_db) {
                    Scenario sc = base;
                    sc.pair = RatePair{r0, kappa * r0};
                    sc.lambda = lambda;
                    sc.params.eta = db_to_linear(eta_db);
                    try {
                        sc.validate();
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    const bool jam = strategy == StrategyKind::JRJS;
                    if (jam && !(lambda < 1.0)) continue;
                    OptimizePoint pt;
                    pt.r0 = r0;
                    pt.kappa = kappa;
                    pt.lambda = lambda;
                    pt.eta_db = eta_db;
                    pt.cop = jam ? cop_jrjs(sc) : cop_tbrs(sc);
                    pt.sop = jam ? sop_jrjs(sc) : sop_tbrs(sc);
                    if (pt.cop > cons.upsilon || pt.sop > cons.delta) continue;
                    pt.throughput = sc.pair.rs * (jam ? rscp_jrjs(sc) : rscp_tbrs(sc));
                    if (!result.feasible || pt.throughput > result.best.throughput) {
                        result.feasible = true;
                        result.best = pt;
                    }
                }
            }
        }
    }
    return result;
}

struct MetricBundle {
    double cop = 0.0;
    double sop = 0.0;
    double rscp = 0.0;
    double rsr = 0.0;
    double throughput = 0.0;
};

/// All five analytic metrics of one strategy at one operating point.
inline MetricBundle metrics(const Scenario& sc, StrategyKind strategy,
                            RscpMode mode = RscpMode::ClosedForm) {
    MetricBundle b;
    switch (strategy) {
        case StrategyKind::TBRS:
            b.cop = cop_tbrs(sc);
            b.sop = sop_tbrs(sc);
            b.rscp = rscp_tbrs(sc, mode);
            b.rsr = rsr_tbrs(sc);
            break;
        case StrategyKind::JRJS:
            b.cop = cop_jrjs(sc);
            b.sop = sop_jrjs(sc);
            b.rscp = rscp_jrjs(sc, mode);
            b.rsr = rsr_jrjs(sc);
            break;
        default:
            throw std::invalid_argument("metrics: no closed forms for ratio-based selection");
    }
    b.throughput = sc.pair.rs * b.rscp;
    return b;
}

}  // namespace plsec
