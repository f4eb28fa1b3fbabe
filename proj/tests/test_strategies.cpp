#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "plsec/strategies.hpp"

using namespace plsec;
using Catch::Approx;

namespace {

ChannelDraw draw_from_rd(std::initializer_list<double> rd_gains, int nt = 1) {
    ChannelDraw d;
    d.k_r = static_cast<int>(rd_gains.size());
    d.n_t = nt;
    d.h_sr_delayed.assign(static_cast<std::size_t>(nt) * d.k_r, {1.0, 0.0});
    d.h_sr_current = d.h_sr_delayed;
    for (double g : rd_gains) {
        d.g_rd_delayed.push_back({std::sqrt(g), 0.0});
        d.g_re_current.push_back({1.0, 0.0});
    }
    d.g_rd_current = d.g_rd_delayed;
    return d;
}

}  // namespace

TEST_CASE("rate thresholds") {
    RatePair pair{1.0, 0.125};
    const auto [gd, ge] = rate_thresholds(pair);
    CHECK(gd == Approx(3.0).margin(1e-12));
    CHECK(ge == Approx(2.363585661014858).epsilon(1e-12));
    // vanishing secrecy rate: both thresholds coincide
    RatePair tiny{1.0, 1e-12};
    const auto [gd2, ge2] = rate_thresholds(tiny);
    CHECK(gd2 == Approx(3.0).margin(1e-9));
    CHECK(ge2 == Approx(3.0).margin(1e-9));
}

TEST_CASE("rate pair validation") {
    CHECK_THROWS_AS((RatePair{1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RatePair{1.0, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RatePair{1.0, -0.5}.validate()), std::invalid_argument);
    CHECK_NOTHROW((RatePair{2.0, 0.25}.validate()));
}

TEST_CASE("relay and jammer selection on delayed second-hop gains") {
    FadingParams p;
    p.k_r = 3;
    const auto d = draw_from_rd({0.2, 1.5, 0.7});
    const auto tbrs = select(StrategyKind::TBRS, d, p);
    CHECK(tbrs.relay == 1);
    CHECK_FALSE(tbrs.jammer.has_value());
    const auto jrjs = select(StrategyKind::JRJS, d, p);
    CHECK(jrjs.relay == 1);
    REQUIRE(jrjs.jammer.has_value());
    CHECK(*jrjs.jammer == 0);
}

TEST_CASE("selection tie-breaking and scale invariance") {
    FadingParams p;
    p.k_r = 3;
    const auto equal = draw_from_rd({1.0, 1.0, 1.0});
    const auto out = select(StrategyKind::JRJS, equal, p);
    CHECK(out.relay == 0);
    REQUIRE(out.jammer.has_value());
    CHECK(*out.jammer == 1);

    auto scaled = draw_from_rd({0.2, 1.5, 0.7});
    for (auto& g : scaled.g_rd_delayed) g *= 10.0;
    const auto a = select(StrategyKind::TBRS, draw_from_rd({0.2, 1.5, 0.7}), p);
    const auto b = select(StrategyKind::TBRS, scaled, p);
    CHECK(a.relay == b.relay);
}

TEST_CASE("selection input validation") {
    FadingParams p;
    p.k_r = 1;
    const auto single = draw_from_rd({1.0});
    CHECK_THROWS_AS(select(StrategyKind::JRJS, single, p), std::invalid_argument);
    p.k_r = 2;
    const auto two = draw_from_rd({1.0, 2.0});
    // OS needs delayed R-E gains in the draw
    CHECK_THROWS_AS(select(StrategyKind::OS, two, p), std::invalid_argument);
}

TEST_CASE("mutual information of a deterministic draw") {
    FadingParams p;
    p.n_t = 1;
    p.k_r = 1;
    p.eta = 3.0;
    auto d = draw_from_rd({1.0});
    SelectionOutcome out;
    out.strategy = StrategyKind::TBRS;
    // both hops at SNR 3: end-to-end 9/7, i_d = 0.5*log2(16/7)
    const auto mi = mutual_info(StrategyKind::TBRS, out, d, p, 1.0);
    CHECK(mi.i_d == Approx(0.5 * std::log2(16.0 / 7.0)).epsilon(1e-12));
    CHECK(mi.i_d == Approx(0.596321).margin(1e-5));

    // dead first hop kills the destination rate
    auto dead = d;
    dead.h_sr_current[0] = {0.0, 0.0};
    const auto mi0 = mutual_info(StrategyKind::TBRS, out, dead, p, 1.0);
    CHECK(mi0.i_d == Approx(0.0).margin(1e-12));
}

TEST_CASE("jamming with a silent jammer reduces to scaled relay power") {
    FadingParams p;
    p.n_t = 1;
    p.k_r = 2;
    p.eta = 4.0;
    auto d = draw_from_rd({1.0, 0.0});
    SelectionOutcome out;
    out.strategy = StrategyKind::JRJS;
    out.relay = 0;
    out.jammer = 1;
    const double lambda = 0.75;
    const auto mi = mutual_info(StrategyKind::JRJS, out, d, p, lambda);
    const double hop1 = p.eta;
    const double hop2 = lambda * p.eta;
    const double snr = hop1 * hop2 / (hop1 + hop2 + 1.0);
    CHECK(mi.i_d == Approx(0.5 * std::log2(1.0 + snr)).epsilon(1e-12));
}

TEST_CASE("destination rate grows with the relay power share on fixed draws") {
    FadingParams p;
    p.n_t = 1;
    p.k_r = 3;
    p.eta = 10.0;
    auto d = draw_from_rd({1.2, 0.4, 0.9});
    const auto out = select(StrategyKind::JRJS, d, p);
    double prev = -1.0;
    for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto mi = mutual_info(StrategyKind::JRJS, out, d, p, lam);
        CHECK(mi.i_d > prev);
        prev = mi.i_d;
    }
}

TEST_CASE("mutual information argument validation") {
    FadingParams p;
    p.n_t = 1;
    p.k_r = 2;
    auto d = draw_from_rd({1.0, 0.5});
    SelectionOutcome out;
    out.strategy = StrategyKind::JRJS;
    out.relay = 0;
    CHECK_THROWS_AS(mutual_info(StrategyKind::TBRS, out, d, p, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(mutual_info(StrategyKind::JRJS, out, d, p, 0.5),
                    std::invalid_argument);  // jammer missing
    out.jammer = 1;
    CHECK_THROWS_AS(mutual_info(StrategyKind::JRJS, out, d, p, 1.0),
                    std::invalid_argument);  // lambda out of range when jamming
}

TEST_CASE("outage boundary conventions are strict") {
    RatePair pair{1.0, 0.125};
    const auto at_r0 = outage_events(pair.r0, 0.0, pair);
    CHECK_FALSE(at_r0.connection_outage);
    CHECK_FALSE(at_r0.reliable_and_secure);
    const auto at_red = outage_events(2.0, pair.redundancy(), pair);
    CHECK_FALSE(at_red.secrecy_outage);
    CHECK_FALSE(at_red.reliable_and_secure);
    const auto good = outage_events(1.5, 0.5, pair);
    CHECK(good.reliable_and_secure);
    CHECK_FALSE(good.connection_outage);
    CHECK_FALSE(good.secrecy_outage);
    const auto bad = outage_events(0.5, 1.5, pair);
    CHECK(bad.connection_outage);
    CHECK(bad.secrecy_outage);
    CHECK_FALSE(bad.reliable_and_secure);
}

TEST_CASE("reliable-and-secure implies neither outage") {
    RatePair pair{1.5, 0.25};
    for (double id : {0.2, 1.0, 1.5, 1.8, 3.0}) {
        for (double ie : {0.1, 1.0, 1.25, 1.4, 2.0}) {
            const auto ev = outage_events(id, ie, pair);
            if (ev.reliable_and_secure) {
                CHECK_FALSE(ev.connection_outage);
                CHECK_FALSE(ev.secrecy_outage);
            }
        }
    }
}
