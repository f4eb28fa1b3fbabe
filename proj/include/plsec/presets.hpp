#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plsec/config.hpp"

namespace plsec {

struct FigurePreset {
    std::string id;
    std::string description;
    std::string config_text;  // frozen parameter block, parseable as a RunConfig
};

/// Frozen experiment descriptions matching the published figures. Kept as
/// config text so the blocks can be checksummed, printed, and fed through the
/// ordinary parser unchanged.
inline const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = {
        {"fig2",
         "connection/secrecy outage vs transmit SNR, both strategies, two engines",
         "n_t=3\nk_r=3\nfd_td=0.1\nlambda=0.1\nr0=1\nrs=0.125\n"
         "strategy=tbrs,jrjs\nengine=both\nmode=metrics\n"
         "sweep=eta_db\nsweep_start=0\nsweep_stop=30\nsweep_step=1\n"},
        {"fig3",
         "secrecy outage vs connection outage traced by the codeword rate",
         "n_t=3\nk_r=3\nfd_td=0.1\nlambda=0.1\nkappa=0.125\neta_db=10\n"
         "strategy=tbrs,jrjs\nengine=both\nmode=metrics\n"
         "sweep=r0\nsweep_start=0.5\nsweep_stop=3\nsweep_step=0.1\n"},
        {"fig4",
         "reliable-and-secure connection probability vs SNR, no jamming",
         "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\n"
         "strategy=tbrs\nengine=both\nmode=metrics\n"
         "sweep=eta_db\nsweep_start=0\nsweep_stop=30\nsweep_step=1\n"},
        {"fig5",
         "reliable-and-secure connection probability vs power split",
         "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\neta_db=15\n"
         "strategy=jrjs\nengine=both\nmode=metrics\n"
         "sweep=lambda\nsweep_start=0.05\nsweep_stop=0.95\nsweep_step=0.05\n"},
        {"fig6",
         "reliability-security ratio vs feedback delay coefficient",
         "n_t=3\nk_r=3\nr0=1\nrs=0.125\nlambda=0.75\neta_db=40\n"
         "strategy=tbrs,jrjs\nengine=analytic\nmode=metrics\n"
         "sweep=fd_td\nsweep_start=0\nsweep_stop=0.4\nsweep_step=0.02\n"},
        {"fig7",
         "fractional secrecy-throughput loss vs delay coefficient",
         "n_t=3\nk_r=3\nr0=1\nrs=0.125\nlambda=0.75\neta_db=10\n"
         "strategy=tbrs,jrjs\nengine=both\nmode=loss\ntrials=100000\n"
         "sweep=fd_td\nsweep_start=0.02\nsweep_stop=0.3\nsweep_step=0.02\n"},
        {"fig8",
         "secrecy throughput surface over codeword rate and rate ratio",
         "n_t=3\nk_r=3\nfd_td=0.1\nlambda=0.75\neta_db=15\n"
         "strategy=tbrs,jrjs\nengine=analytic\nmode=surface\n"
         "sweep=r0\nsweep_start=0.5\nsweep_stop=3\nsweep_step=0.125\n"
         "sweep2=kappa\nsweep2_start=0.05\nsweep2_stop=0.5\nsweep2_step=0.05\n"},
        {"fig9",
         "secrecy throughput surface over codeword rate and power split",
         "n_t=3\nk_r=3\nfd_td=0.1\nkappa=0.125\neta_db=15\n"
         "strategy=jrjs\nengine=analytic\nmode=surface\n"
         "sweep=r0\nsweep_start=0.5\nsweep_stop=3\nsweep_step=0.125\n"
         "sweep2=lambda\nsweep2_start=0.05\nsweep2_stop=0.95\nsweep2_step=0.05\n"},
        {"fig10",
         "throughput with and without the source-eavesdropper leakage link",
         "n_t=3\nk_r=3\nfd_td=0.1\nr0=1\nrs=0.125\nlambda=0.75\nsigma2_se=1\n"
         "strategy=tbrs,jrjs,os,osj\nengine=mc\nmode=compare_se\ntrials=100000\n"
         "sweep=eta_db\nsweep_start=0\nsweep_stop=30\nsweep_step=5\n"},
    };
    return presets;
}

inline const FigurePreset& figure_preset(const std::string& id) {
    for (const auto& p : figure_presets())
        if (p.id == id) return p;
    throw std::invalid_argument("unknown figure preset '" + id + "' (fig2..fig10)");
}

inline RunConfig preset_config(const std::string& id) {
    return parse_config(figure_preset(id).config_text);
}

}  // namespace plsec
