#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "plsec/channel.hpp"

namespace plsec {

enum class StrategyKind {
    TBRS,  // best relay only, full relay power
    JRJS,  // best relay + worst-toward-destination jammer
    OS,    // selection on delayed instantaneous R-E CSI
    OSJ,   // OS plus jamming
};

inline bool strategy_uses_jamming(StrategyKind s) {
    return s == StrategyKind::JRJS || s == StrategyKind::OSJ;
}

inline bool strategy_needs_re_csi(StrategyKind s) {
    return s == StrategyKind::OS || s == StrategyKind::OSJ;
}

inline const char* strategy_name(StrategyKind s) {
    switch (s) {
        case StrategyKind::TBRS: return "tbrs";
        case StrategyKind::JRJS: return "jrjs";
        case StrategyKind::OS: return "os";
        case StrategyKind::OSJ: return "osj";
    }
    return "?";
}

/// Wyner code rate pair: codeword rate r0 and secrecy rate rs, 0 < rs < r0.
struct RatePair {
    double r0 = 1.0;
    double rs = 0.125;

    void validate() const {
        if (!(rs > 0.0) || !(rs < r0))
            throw std::invalid_argument("RatePair: require 0 < rs < r0");
    }

    double redundancy() const { return r0 - rs; }
    double gamma_th_d() const { return std::exp2(2.0 * r0) - 1.0; }
    double gamma_th_e() const { return std::exp2(2.0 * redundancy()) - 1.0; }
};

/// SNR thresholds (2^{2 r0} - 1, 2^{2(r0-rs)} - 1).
inline std::pair<double, double> rate_thresholds(const RatePair& pair) {
    pair.validate();
    return {pair.gamma_th_d(), pair.gamma_th_e()};
}

struct SelectionOutcome {
    int relay = 0;
    std::optional<int> jammer;
    StrategyKind strategy = StrategyKind::TBRS;
};

/// Ranks relays on delayed second-hop CSI and picks the forwarding relay
/// (and, for jamming strategies, the least-harmful jammer). Ties break to the
/// lowest index.
inline SelectionOutcome select(StrategyKind strategy, const ChannelDraw& draw,
                               const FadingParams& params) {
    (void)params;
    const int kr = draw.k_r;
    if (strategy_uses_jamming(strategy) && kr < 2)
        throw std::invalid_argument("select: jamming strategies need k_r >= 2");
    if (strategy_needs_re_csi(strategy) && !draw.has_re_delayed())
        throw std::invalid_argument("select: OS/OSJ need delayed R-E CSI in the draw");

    // TBRS/JRJS metric is delayed |g_RD|^2 normalized by the (identical)
    // average eavesdropper SNR, so ranking reduces to |g_RD|^2. OS/OSJ use
    // the delayed instantaneous ratio.
    auto metric = [&](int k) {
        const double d = std::norm(draw.g_rd_delayed[k]);
        if (!strategy_needs_re_csi(strategy)) return d;
        return d / std::norm(draw.g_re_delayed[k]);
    };

    SelectionOutcome out;
    out.strategy = strategy;
    int best = 0;
    double best_val = metric(0);
    for (int k = 1; k < kr; ++k) {
        const double v = metric(k);
        if (v > best_val) {
            best = k;
            best_val = v;
        }
    }
    out.relay = best;
    if (strategy_uses_jamming(strategy)) {
        int worst = -1;
        double worst_val = 0.0;
        for (int k = 0; k < kr; ++k) {
            if (k == best) continue;
            const double v = metric(k);
            if (worst < 0 || v < worst_val) {
                worst = k;
                worst_val = v;
            }
        }
        out.jammer = worst;
    }
    return out;
}

struct MutualInfo {
    double i_d = 0.0;  // bits/s/Hz toward the destination
    double i_e = 0.0;  // bits/s/Hz toward the eavesdropper
};

namespace detail {

// End-to-end AF SNR: both hops in, noise amplification accounted.
inline double af_snr(double hop1, double hop2) {
    return hop1 * hop2 / (hop1 + hop2 + 1.0);
}

inline double half_log2_1p(double snr) { return 0.5 * std::log2(1.0 + snr); }

}  // namespace detail

/// Mutual information toward destination and eavesdropper for one draw.
/// Jamming strategies split relay power lambda : (1 - lambda); with the S-E
/// link enabled the eavesdropper adds the first-phase leakage SNR.
inline MutualInfo mutual_info(StrategyKind strategy, const SelectionOutcome& outcome,
                              const ChannelDraw& draw, const FadingParams& params,
                              double lambda, bool with_se_link = false) {
    if (outcome.strategy != strategy)
        throw std::invalid_argument("mutual_info: outcome/strategy mismatch");
    const bool jam = strategy_uses_jamming(strategy);
    if (jam && !outcome.jammer)
        throw std::invalid_argument("mutual_info: jamming strategy without jammer");
    if (jam && !(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("mutual_info: lambda must lie in (0,1) when jamming");

    const double eta = params.eta;
    const double gamma_sr = beamformed_snr(draw, outcome.relay, params);
    const double relay_power = jam ? lambda : 1.0;

    double hop2_d = relay_power * eta * std::norm(draw.g_rd_current[outcome.relay]);
    double hop2_e = relay_power * eta * std::norm(draw.g_re_current[outcome.relay]);
    if (jam) {
        const int j = *outcome.jammer;
        const double jp = (1.0 - lambda) * eta;
        hop2_d /= jp * std::norm(draw.g_rd_current[j]) + 1.0;
        hop2_e /= jp * std::norm(draw.g_re_current[j]) + 1.0;
    }

    double gamma_e = detail::af_snr(gamma_sr, hop2_e);
    if (with_se_link) gamma_e += beamformed_se_snr(draw, params);

    MutualInfo mi;
    mi.i_d = detail::half_log2_1p(detail::af_snr(gamma_sr, hop2_d));
    mi.i_e = detail::half_log2_1p(gamma_e);
    return mi;
}

struct OutageEvents {
    bool connection_outage = false;
    bool secrecy_outage = false;
    bool reliable_and_secure = false;
};

/// Classifies one realization; all comparisons strict (boundary events have
/// measure zero but the convention is pinned for determinism).
inline OutageEvents outage_events(double i_d, double i_e, const RatePair& pair) {
    OutageEvents ev;
    ev.connection_outage = i_d < pair.r0;
    ev.secrecy_outage = i_e > pair.redundancy();
    ev.reliable_and_secure = (i_d > pair.r0) && (i_e < pair.redundancy());
    return ev;
}

}  // namespace plsec
