#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "plsec/rng.hpp"
#include "plsec/specfun.hpp"

namespace plsec {

namespace detail {

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace detail

/// Link-gain variances and system dimensions. Average SNRs are always derived
/// as eta * sigma^2, never stored.
struct FadingParams {
    double sigma2_sr = 1.0;
    double sigma2_rd = 1.0;
    double sigma2_re = 1.0;
    double sigma2_se = 1.0;
    std::optional<double> sigma2_jd;  // defaults to sigma2_rd (co-located cluster)
    std::optional<double> sigma2_je;  // defaults to sigma2_re
    double eta = 1.0;                 // transmit SNR P/N0, linear
    int n_t = 1;
    int k_r = 1;

    double jd_variance() const { return sigma2_jd.value_or(sigma2_rd); }
    double je_variance() const { return sigma2_je.value_or(sigma2_re); }

    double gbar_sr() const { return eta * sigma2_sr; }
    double gbar_rd() const { return eta * sigma2_rd; }
    double gbar_re() const { return eta * sigma2_re; }
    double gbar_se() const { return eta * sigma2_se; }

    void validate() const {
        if (!(sigma2_sr > 0.0 && sigma2_rd > 0.0 && sigma2_re > 0.0 && sigma2_se > 0.0))
            throw std::invalid_argument("FadingParams: variances must be positive");
        if (sigma2_jd && !(*sigma2_jd > 0.0))
            throw std::invalid_argument("FadingParams: sigma2_jd must be positive");
        if (sigma2_je && !(*sigma2_je > 0.0))
            throw std::invalid_argument("FadingParams: sigma2_je must be positive");
        if (!(eta > 0.0)) throw std::invalid_argument("FadingParams: eta must be positive");
        if (n_t < 1 || k_r < 1)
            throw std::invalid_argument("FadingParams: n_t and k_r must be >= 1");
    }
};

/// rho = J0(2 pi fd Td), clamped into [0, 1]; the AR(1) outdated-CSI model
/// has no meaning for negative correlation.
inline double correlation_from_delay(double fd_td) {
    if (!(fd_td >= 0.0))
        throw std::invalid_argument("correlation_from_delay: fd_td must be >= 0");
    const double rho = bessel_j0(2.0 * 3.14159265358979323846 * fd_td);
    return rho < 0.0 ? 0.0 : rho;
}

/// First/second hop feedback-delay correlation coefficients.
struct CorrelationCoeffs {
    double rho_sr = 1.0;
    double rho_rd = 1.0;
    std::optional<double> fd_td_sr;
    std::optional<double> fd_td_rd;

    static CorrelationCoeffs from_delays(double fd_td_sr, double fd_td_rd) {
        CorrelationCoeffs c;
        c.fd_td_sr = fd_td_sr;
        c.fd_td_rd = fd_td_rd;
        c.rho_sr = correlation_from_delay(fd_td_sr);
        c.rho_rd = correlation_from_delay(fd_td_rd);
        return c;
    }

    void validate() const {
        if (!(rho_sr >= 0.0 && rho_sr <= 1.0 && rho_rd >= 0.0 && rho_rd <= 1.0))
            throw std::invalid_argument("CorrelationCoeffs: rho must lie in [0,1]");
        if (fd_td_sr && std::fabs(correlation_from_delay(*fd_td_sr) - rho_sr) > 1e-12)
            throw std::invalid_argument("CorrelationCoeffs: rho_sr inconsistent with fd_td_sr");
        if (fd_td_rd && std::fabs(correlation_from_delay(*fd_td_rd) - rho_rd) > 1e-12)
            throw std::invalid_argument("CorrelationCoeffs: rho_rd inconsistent with fd_td_rd");
    }
};

/// One joint realization of delayed and current channel gains for all links.
struct ChannelDraw {
    int n_t = 0;
    int k_r = 0;
    // S -> R_k per-antenna gains, laid out [relay * n_t + antenna].
    std::vector<std::complex<double>> h_sr_delayed;
    std::vector<std::complex<double>> h_sr_current;
    std::vector<std::complex<double>> g_rd_delayed;   // per relay
    std::vector<std::complex<double>> g_rd_current;   // per relay
    std::vector<std::complex<double>> g_re_current;   // per relay
    std::vector<std::complex<double>> g_re_delayed;   // per relay, only for OS/OSJ
    std::optional<std::complex<double>> g_se_current;

    bool has_re_delayed() const { return !g_re_delayed.empty(); }
};

struct DrawOptions {
    bool with_re_delayed = false;  // needed by OS/OSJ selection
    bool with_se_link = false;
};

/// Draws one AR(1) outdated-CSI realization: current = rho * delayed +
/// sqrt(1-rho^2) * innovation, entries CN(0, sigma^2) per link.
inline ChannelDraw draw_channels(const FadingParams& params, const CorrelationCoeffs& corr,
                                 TrialRng& rng, const DrawOptions& opts = {}) {
    const int nt = params.n_t, kr = params.k_r;
    ChannelDraw d;
    d.n_t = nt;
    d.k_r = kr;
    d.h_sr_delayed.resize(static_cast<std::size_t>(nt) * kr);
    d.h_sr_current.resize(static_cast<std::size_t>(nt) * kr);
    d.g_rd_delayed.resize(kr);
    d.g_rd_current.resize(kr);
    d.g_re_current.resize(kr);
    if (opts.with_re_delayed) d.g_re_delayed.resize(kr);

    const double q_sr = std::sqrt(std::max(0.0, 1.0 - corr.rho_sr * corr.rho_sr));
    const double q_rd = std::sqrt(std::max(0.0, 1.0 - corr.rho_rd * corr.rho_rd));

    for (int k = 0; k < kr; ++k) {
        for (int a = 0; a < nt; ++a) {
            const auto idx = static_cast<std::size_t>(k) * nt + a;
            const auto past = rng.cgauss(params.sigma2_sr);
            const auto innov = rng.cgauss(params.sigma2_sr);
            d.h_sr_delayed[idx] = past;
            d.h_sr_current[idx] = corr.rho_sr * past + q_sr * innov;
        }
        {
            const auto past = rng.cgauss(params.sigma2_rd);
            const auto innov = rng.cgauss(params.sigma2_rd);
            d.g_rd_delayed[k] = past;
            d.g_rd_current[k] = corr.rho_rd * past + q_rd * innov;
        }
        if (opts.with_re_delayed) {
            const auto past = rng.cgauss(params.sigma2_re);
            const auto innov = rng.cgauss(params.sigma2_re);
            d.g_re_delayed[k] = past;
            d.g_re_current[k] = corr.rho_rd * past + q_rd * innov;
        } else {
            d.g_re_current[k] = rng.cgauss(params.sigma2_re);
        }
    }
    if (opts.with_se_link) d.g_se_current = rng.cgauss(params.sigma2_se);
    return d;
}

/// Received first-hop SNR with maximum-ratio beamforming built on the delayed
/// CSI of the given relay: eta * |w^H h_current|^2, w = h_delayed/|h_delayed|.
inline double beamformed_snr(const ChannelDraw& draw, int relay, const FadingParams& params) {
    if (relay < 0 || relay >= draw.k_r)
        throw std::invalid_argument("beamformed_snr: relay index out of range");
    const auto base = static_cast<std::size_t>(relay) * draw.n_t;
    double norm2 = 0.0;
    std::complex<double> dot{0.0, 0.0};
    for (int a = 0; a < draw.n_t; ++a) {
        const auto& hd = draw.h_sr_delayed[base + a];
        norm2 += std::norm(hd);
        dot += std::conj(hd) * draw.h_sr_current[base + a];
    }
    if (norm2 <= 0.0) {
        // probability-zero degenerate weight; fall back to the first antenna
        return params.eta * std::norm(draw.h_sr_current[base]);
    }
    return params.eta * std::norm(dot) / norm2;
}

/// Leakage SNR of the S->E link through the same beamforming weight.
inline double beamformed_se_snr(const ChannelDraw& draw, const FadingParams& params) {
    if (!draw.g_se_current)
        throw std::invalid_argument("beamformed_se_snr: draw has no S-E link");
    // w is unit norm and independent of h_SE, so |w h_SE|^2 is exponential
    // with mean sigma2_se; the scalar draw carries that distribution.
    return params.eta * std::norm(*draw.g_se_current);
}

// ---------------------------------------------------------------------------
// Analytic distributions of the order-statistic SNRs.
// ---------------------------------------------------------------------------

/// PDF of the beamformed first-hop SNR under outdated CSI.
inline double pdf_gamma_sr(double x, const FadingParams& params, const CorrelationCoeffs& corr) {
    if (!(x >= 0.0)) throw std::domain_error("pdf_gamma_sr: x must be >= 0");
    const int nt = params.n_t;
    const double gbar = params.gbar_sr();
    const double rho2 = corr.rho_sr * corr.rho_sr;
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        const double term = detail::binom(nt - 1, n) *
                            std::pow(rho2, nt - 1 - n) * std::pow(gbar * (1.0 - rho2), n) /
                            (std::pow(gbar, nt) * detail::factorial(nt - 1 - n)) *
                            std::pow(x, nt - 1 - n) * std::exp(-x / gbar);
        sum.add(term);
    }
    return sum.value();
}

/// CDF of the beamformed first-hop SNR under outdated CSI.
inline double cdf_gamma_sr(double x, const FadingParams& params, const CorrelationCoeffs& corr) {
    if (!(x >= 0.0)) throw std::domain_error("cdf_gamma_sr: x must be >= 0");
    const int nt = params.n_t;
    const double gbar = params.gbar_sr();
    const double rho2 = corr.rho_sr * corr.rho_sr;
    KahanSum sum;
    for (int n = 0; n <= nt - 1; ++n) {
        for (int m = 0; m <= nt - 1 - n; ++m) {
            sum.add(detail::binom(nt - 1, n) * std::pow(rho2, nt - 1 - n) *
                    std::pow(1.0 - rho2, n) / (detail::factorial(m) * std::pow(gbar, m)) *
                    std::pow(x, m) * std::exp(-x / gbar));
        }
    }
    return 1.0 - sum.value();
}

namespace detail {

inline double omega_k(int k, double rho_rd) {
    return (k * (1.0 - rho_rd * rho_rd) + 1.0) / (k + 1.0);
}

// [(K_r - 1)(1 - rho^2) + 1], the concomitant spread factor of the jammer.
inline double jammer_spread(int kr, double rho_rd) {
    return (kr - 1) * (1.0 - rho_rd * rho_rd) + 1.0;
}

}  // namespace detail

/// CDF of the current second-hop SNR of the relay selected on delayed CSI
/// (concomitant of the maximum).
inline double cdf_gamma_rstar_d(double y, const FadingParams& params,
                                const CorrelationCoeffs& corr, double gbar_override = -1.0) {
    if (!(y >= 0.0)) throw std::domain_error("cdf_gamma_rstar_d: y must be >= 0");
    const int kr = params.k_r;
    const double gbar = gbar_override > 0.0 ? gbar_override : params.gbar_rd();
    KahanSum sum;
    for (int k = 0; k <= kr - 1; ++k) {
        const double wk = detail::omega_k(k, corr.rho_rd);
        const double term = kr * detail::binom(kr - 1, k) / (k + 1.0) *
                            (1.0 - std::exp(-y / (wk * gbar)));
        sum.add((k % 2 == 0 ? 1.0 : -1.0) * term);
    }
    return sum.value();
}

/// PDF of the current jammer-to-destination SNR (concomitant of the minimum):
/// exponential with mean [(K_r-1)(1-rho^2)+1] * gbar_jd / K_r, where the
/// jammer transmits with power fraction (1 - lambda).
inline double pdf_gamma_jstar_d(double x, const FadingParams& params,
                                const CorrelationCoeffs& corr, double lambda) {
    if (!(x >= 0.0)) throw std::domain_error("pdf_gamma_jstar_d: x must be >= 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("pdf_gamma_jstar_d: lambda must lie in (0,1)");
    const double gbar_jd = (1.0 - lambda) * params.eta * params.jd_variance();
    const double mean = detail::jammer_spread(params.k_r, corr.rho_rd) * gbar_jd / params.k_r;
    return std::exp(-x / mean) / mean;
}

/// CDF of the destination SINR xi_D = gamma_R*D / (gamma_J*D + 1) under the
/// relay/jammer power split lambda : (1 - lambda).
inline double cdf_xi_d(double x, const FadingParams& params, const CorrelationCoeffs& corr,
                       double lambda) {
    if (!(x >= 0.0)) throw std::domain_error("cdf_xi_d: x must be >= 0");
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("cdf_xi_d: lambda must lie in (0,1]");
    const int kr = params.k_r;
    const double gbar_r = lambda * params.eta * params.sigma2_rd;
    // lambda -> 1: no jammer, degenerates to the plain concomitant CDF
    if (lambda >= 1.0) return cdf_gamma_rstar_d(x, params, corr, gbar_r);
    const double gbar_j = (1.0 - lambda) * params.eta * params.jd_variance();
    const double jmean = detail::jammer_spread(kr, corr.rho_rd) * gbar_j / kr;
    KahanSum sum;
    for (int k = 0; k <= kr - 1; ++k) {
        const double wk = detail::omega_k(k, corr.rho_rd);
        const double phi_k = wk * gbar_r / jmean;
        const double term = kr * detail::binom(kr - 1, k) / (k + 1.0) * phi_k / (x + phi_k) *
                            std::exp(-x / (wk * gbar_r));
        sum.add((k % 2 == 0 ? 1.0 : -1.0) * term);
    }
    return 1.0 - sum.value();
}

/// CDF of the eavesdropper SINR xi_E = gamma_R*E / (gamma_J*E + 1).
inline double cdf_xi_e(double x, const FadingParams& params, double lambda) {
    if (!(x >= 0.0)) throw std::domain_error("cdf_xi_e: x must be >= 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("cdf_xi_e: lambda must lie in (0,1)");
    const double gbar_r = lambda * params.eta * params.sigma2_re;
    const double gbar_j = (1.0 - lambda) * params.eta * params.je_variance();
    const double phi = gbar_r / gbar_j;
    return 1.0 - phi / (x + phi) * std::exp(-x / gbar_r);
}

/// Noise-absorbed approximation of cdf_xi_d (the jammer noise term folded
/// into the stochastic mean).
inline double cdf_xi_d_hat(double x, const FadingParams& params, const CorrelationCoeffs& corr,
                           double lambda) {
    if (!(x >= 0.0)) throw std::domain_error("cdf_xi_d_hat: x must be >= 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("cdf_xi_d_hat: lambda must lie in (0,1)");
    const int kr = params.k_r;
    const double gbar_r = lambda * params.eta * params.sigma2_rd;
    const double gbar_j = (1.0 - lambda) * params.eta * params.jd_variance();
    const double spread = detail::jammer_spread(kr, corr.rho_rd);
    KahanSum sum;
    for (int k = 0; k <= kr - 1; ++k) {
        const double wk = detail::omega_k(k, corr.rho_rd);
        const double phi_hat_k = kr * wk * gbar_r / (spread * gbar_j + kr);
        const double term = kr * detail::binom(kr - 1, k) / (k + 1.0) * x / (x + phi_hat_k);
        sum.add((k % 2 == 0 ? 1.0 : -1.0) * term);
    }
    return sum.value();
}

/// Noise-absorbed approximation of cdf_xi_e.
inline double cdf_xi_e_hat(double x, const FadingParams& params, double lambda) {
    if (!(x >= 0.0)) throw std::domain_error("cdf_xi_e_hat: x must be >= 0");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("cdf_xi_e_hat: lambda must lie in (0,1)");
    const double num = lambda * params.eta * params.sigma2_re;
    const double phi_hat = num / ((1.0 - lambda) * params.eta * params.je_variance() + 1.0);
    return x / (x + phi_hat);
}

}  // namespace plsec
