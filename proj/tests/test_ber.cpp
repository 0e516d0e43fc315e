#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "support/quadrature.hpp"
#include "vortexhop/ber.hpp"
#include "vortexhop/errors.hpp"
#include "vortexhop/rng.hpp"

using namespace vortexhop;
namespace br = vortexhop::ber;
namespace fd = vortexhop::fading;
namespace hp = vortexhop::hop;

namespace {

fd::SinrModel clear_model(int m, int hops, double snr) {
    fd::SinrModel model;
    model.m = m;
    model.hops = hops;
    model.snr = snr;
    return model;
}

// Independent oracle: quadrature of the conditional error probability
// against the combined-SINR density.
double quadrature_ber(const fd::SinrModel& model, const hop::JamProfile& profile,
                      br::Modulation mod) {
    const auto cf = fd::decompose_cf(model, profile);
    double upper = 0.0;
    for (const auto& t : cf.terms) {
        upper = std::max(upper, (t.order + 60.0) / static_cast<double>(t.pole));
    }
    return testsupport::integrate<double>(
        [&](double g) {
            return br::conditional_ber(g, model.hops, mod) * fd::pdf_pole_sum(cf, g);
        },
        0.0, upper, 1e-13);
}

} // namespace

TEST_CASE("conditional_ber pinned values") {
    for (int u = 1; u <= 8; ++u) {
        CHECK(std::abs(br::conditional_ber(0.0, u, br::Modulation::dpsk()) - 0.5) < 1e-12);
        CHECK(std::abs(br::conditional_ber(0.0, u, br::Modulation::fsk()) - 0.5) < 1e-12);
    }
    CHECK(br::conditional_ber(std::log(2.0), 1, br::Modulation::dpsk()) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(br::conditional_ber(1.0, 2, br::Modulation::dpsk()) ==
          doctest::Approx(std::exp(-1.0) * 5.0 / 8.0).epsilon(1e-14));
    CHECK_THROWS_AS(br::conditional_ber(1.0, 1, br::Modulation{0.7}), DomainError);
    CHECK_THROWS_AS(br::conditional_ber(-1.0, 1, br::Modulation::dpsk()), DomainError);
}

TEST_CASE("clear-channel closed form") {
    CHECK(br::clear_ber(clear_model(1, 1, 9.0), br::Modulation::dpsk()) ==
          doctest::Approx(0.05).epsilon(1e-13));
    // no-signal limit
    CHECK(br::clear_ber(clear_model(1, 3, 1e-9), br::Modulation::dpsk()) ==
          doctest::Approx(0.5).epsilon(1e-6));
    // figure anchors, +-20 percent digitization tolerance
    const double z5 = std::pow(10.0, 0.5), z10 = 10.0;
    CHECK(br::clear_ber(clear_model(1, 4, z5), br::Modulation::dpsk()) ==
          doctest::Approx(5.4e-3).epsilon(0.2));
    CHECK(br::clear_ber(clear_model(1, 4, z10), br::Modulation::dpsk()) ==
          doctest::Approx(1.3e-4).epsilon(0.2));
    // quadrature of the conditional BER against the order-mU density
    for (int m : {1, 2}) {
        for (int u : {1, 2, 3}) {
            const auto model = clear_model(m, u, 4.0);
            const double closed = br::clear_ber(model, br::Modulation::fsk());
            CHECK(closed ==
                  doctest::Approx(quadrature_ber(model, hop::JamProfile{}, br::Modulation::fsk()))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("single jammed hop closed form") {
    auto model = clear_model(1, 1, 10.0);
    model.jammed_snr = {4.0};
    const auto profile = hp::JamProfile::from_counts({2});
    CHECK(br::jammed_ber(model, profile, br::Modulation::dpsk()) ==
          doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(br::jammed_ber(clear_model(1, 2, 5.0), hop::JamProfile{},
                                     br::Modulation::dpsk()),
                    DomainError);
}

TEST_CASE("jammed_ber equals the all-jammed reduced form") {
    CounterRng rng(404);
    for (int u = 1; u <= 4; ++u) {
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<double> deltas;
            std::vector<int> counts;
            double d = 0.4 + rng.next_unit();
            for (int v = 0; v < u; ++v) {
                deltas.push_back(d);
                counts.push_back(v + 1); // distinct counts -> a = 0
                d += 0.3 + 2.5 * rng.next_unit();
            }
            auto model = clear_model(1, u, 7.0);
            // align descending with the canonical profile order
            model.jammed_snr.assign(deltas.rbegin(), deltas.rend());
            const auto profile = hp::JamProfile::from_counts(counts);
            const double via_general =
                br::jammed_ber(model, profile, br::Modulation::dpsk());
            const double via_reduced =
                br::reduced_ber(deltas, u, br::Modulation::dpsk());
            CHECK(std::abs(via_general - via_reduced) <= 1e-10 * std::max(via_general, 1e-30));
        }
    }
}

TEST_CASE("jammed_ber with all averages equal collapses to clear_ber") {
    for (int m : {1, 2}) {
        for (int u : {2, 3, 4}) {
            auto model = clear_model(m, u, 6.0);
            std::vector<int> counts;
            for (int v = 0; v < u - 1; ++v) {
                model.jammed_snr.push_back(6.0); // jam indistinguishable from clear
                counts.push_back(v + 1);
            }
            const auto profile = hp::JamProfile::from_counts(counts);
            const double jammed = br::jammed_ber(model, profile, br::Modulation::dpsk());
            const double clear = br::clear_ber(clear_model(m, u, 6.0), br::Modulation::dpsk());
            CHECK(jammed == doctest::Approx(clear).epsilon(1e-12));
        }
    }
}

TEST_CASE("grouped and pole-sum routes agree on a random grid") {
    CounterRng rng(777);
    int checked = 0;
    while (checked < 200) {
        const int m = 1 + static_cast<int>(rng.next_below(2));
        const int u = 1 + static_cast<int>(rng.next_below(4));
        const int v = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(u)));
        // counts with a possible shared group
        std::vector<int> counts;
        for (int i = 0; i < v; ++i) counts.push_back(1 + static_cast<int>(rng.next_below(5)));
        const auto profile = hp::JamProfile::from_counts(counts);

        auto model = clear_model(m, u, 1.0 + 15.0 * rng.next_unit());
        // one average per hop; equal counts share an average, all families separated
        std::vector<double> by_count(6, 0.0);
        double val = 0.25;
        for (int c = 1; c <= 5; ++c) {
            by_count[static_cast<std::size_t>(c)] = val;
            val *= 1.9;
        }
        for (int c : profile.counts) model.jammed_snr.push_back(by_count[static_cast<std::size_t>(c)]);

        if (!br::grouped_route_applicable(model, profile)) continue;
        ++checked;
        const double grouped = br::jammed_ber_grouped(model, profile, br::Modulation::dpsk());
        const double pole = br::jammed_ber_polesum(model, profile, br::Modulation::dpsk());
        CHECK(std::abs(grouped - pole) <= 1e-9 * std::max({grouped, pole, 1e-30}));
    }
}

TEST_CASE("jammed_ber against the quadrature oracle") {
    CounterRng rng(31337);
    for (int rep = 0; rep < 12; ++rep) {
        const int m = 1 + static_cast<int>(rng.next_below(2));
        const int u = 1 + static_cast<int>(rng.next_below(4));
        const int v = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(u)));
        std::vector<int> counts;
        std::vector<double> deltas;
        double d = 0.3 + rng.next_unit();
        for (int i = 0; i < v; ++i) {
            counts.push_back(i + 1);
            deltas.push_back(d);
            d *= 1.7 + rng.next_unit();
        }
        auto model = clear_model(m, u, 2.0 + 10.0 * rng.next_unit());
        model.jammed_snr.assign(deltas.rbegin(), deltas.rend());
        const auto profile = hp::JamProfile::from_counts(counts);
        const auto mod = rep % 2 == 0 ? br::Modulation::dpsk() : br::Modulation::fsk();
        const double closed = br::jammed_ber(model, profile, mod);
        const double quad = quadrature_ber(model, profile, mod);
        CHECK(std::abs(closed - quad) <= 1e-9 * std::max(closed, 1e-12));
    }
}

TEST_CASE("reduced_ber basics") {
    const double delta[] = {4.0};
    CHECK(br::reduced_ber(delta, 1, br::Modulation::dpsk()) ==
          doctest::Approx(0.1).epsilon(1e-13));
    const double pair[] = {1.0, 2.0};
    auto model = clear_model(1, 2, 5.0);
    model.jammed_snr = {2.0, 1.0};
    const auto profile = hp::JamProfile::from_counts({2, 1});
    CHECK(br::reduced_ber(pair, 2, br::Modulation::dpsk()) ==
          doctest::Approx(quadrature_ber(model, profile, br::Modulation::dpsk()))
              .epsilon(1e-8));
    const double dup[] = {2.0, 2.0};
    CHECK_THROWS_AS(br::reduced_ber(dup, 2, br::Modulation::dpsk()), DomainError);

    // approaching equal averages approaches the clear-channel form
    const double zeta = 5.0;
    for (double eps : {0.1, 0.01, 0.001}) {
        const double sweep[] = {zeta, zeta + eps};
        auto two = clear_model(1, 2, zeta);
        const double lim = br::clear_ber(two, br::Modulation::dpsk());
        const double val = br::reduced_ber(sweep, 2, br::Modulation::dpsk());
        CHECK(std::abs(val - lim) < 2.0 * eps);
    }
}

TEST_CASE("average_ber_mh mixture behavior") {
    br::LinkBudget budget{1, 10.0, 1.0, 1.0};
    {
        const hp::CollisionModel cm{10, 1, 0, 2};
        CHECK(br::average_ber_mh(budget, cm, br::Modulation::dpsk()) ==
              br::clear_ber(clear_model(1, 2, 10.0), br::Modulation::dpsk()));
    }
    {
        const hp::CollisionModel cm{1'000'000, 1, 4, 2};
        const double nearly_clear = br::average_ber_mh(budget, cm, br::Modulation::dpsk());
        const double clear = br::clear_ber(clear_model(1, 2, 10.0), br::Modulation::dpsk());
        CHECK(std::abs(nearly_clear - clear) < 1e-4 * clear);
    }
    {
        const double k1 = br::average_ber_mh(budget, {10, 1, 1, 2}, br::Modulation::dpsk());
        const double k10 = br::average_ber_mh(budget, {10, 1, 10, 2}, br::Modulation::dpsk());
        CHECK(k10 > k1);
    }
}

TEST_CASE("mfh_map_sinr limits") {
    auto model = clear_model(1, 2, 5.0);
    model.jammed_snr = {1.25};
    const auto profile = hp::JamProfile::from_counts({2});
    const std::vector<double> mid{0.4}, noise_dom{1.0}, intf_dom{0.0};
    {
        const auto mapped = br::mfh_map_sinr(model, br::MfhGain{1.0}, profile, mid);
        CHECK(mapped.snr == model.snr);
        CHECK(mapped.jammed_snr[0] == model.jammed_snr[0]); // G = 1 identity
    }
    {
        // noise-dominated: expectation factor 1 -> G * delta
        const auto mapped = br::mfh_map_sinr(model, br::MfhGain{5.0}, profile, noise_dom);
        CHECK(mapped.snr == doctest::Approx(25.0));
        CHECK(mapped.jammed_snr[0] == doctest::Approx(5.0 * 1.25));
    }
    {
        // interference-dominated: expectation factor 0 -> delta unchanged
        const auto mapped = br::mfh_map_sinr(model, br::MfhGain{5.0}, profile, intf_dom);
        CHECK(mapped.jammed_snr[0] == doctest::Approx(1.25));
    }
    CHECK_THROWS_AS(br::mfh_map_sinr(model, br::MfhGain{0.5}, profile, mid), DomainError);
}

TEST_CASE("mfh_single_ber and mfh_jammed_ber are the mapped closed forms") {
    br::LinkBudget mh_budget{1, 4.0, 1.0, 1.0};
    br::LinkBudget mfh_budget{1, 4.0, 1.0, 5.0};
    // G = 1: exactly the MH values
    CHECK(br::mfh_single_ber(mh_budget, 3, br::Modulation::dpsk()) ==
          br::clear_ber(clear_model(1, 3, 4.0), br::Modulation::dpsk()));
    // G = 5: the clear form evaluated at G * zeta
    CHECK(br::mfh_single_ber(mfh_budget, 3, br::Modulation::dpsk()) ==
          br::clear_ber(clear_model(1, 3, 20.0), br::Modulation::dpsk()));
    // per-profile form equals jammed_ber on the mapped model
    const auto profile = hp::JamProfile::from_counts({2, 1});
    const auto model = br::make_sinr_model(mfh_budget, profile, 3);
    CHECK(br::mfh_jammed_ber(mfh_budget, profile, 3, br::Modulation::dpsk()) ==
          br::jammed_ber(model, profile, br::Modulation::dpsk()));
    // and the G-boosted profile BER beats the unboosted one
    CHECK(br::mfh_jammed_ber(mfh_budget, profile, 3, br::Modulation::dpsk()) <
          br::mfh_jammed_ber(mh_budget, profile, 3, br::Modulation::dpsk()));
}

TEST_CASE("MFH degenerates to MH bit-identically at G = Q = 1") {
    for (double db : {0.0, 5.0, 10.0, 17.0}) {
        br::SystemConfig mh;
        mh.scheme = hp::Scheme::MH;
        mh.modes = 10;
        mh.hops = 2;
        mh.interferers = 7;
        mh.snr = std::pow(10.0, db / 10.0);
        br::SystemConfig mfh = mh;
        mfh.scheme = hp::Scheme::MFH;
        mfh.bands = 1;
        mfh.processing_gain = 1.0;
        const double a = br::analytic_ber(mh);
        const double b = br::analytic_ber(mfh);
        CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
    }
}

TEST_CASE("MFH beats MH and FH equals MH-with-Q") {
    for (double db : {2.0, 8.0, 14.0, 20.0}) {
        br::SystemConfig mh;
        mh.scheme = hp::Scheme::MH;
        mh.modes = 10;
        mh.hops = 2;
        mh.interferers = 10;
        mh.snr = std::pow(10.0, db / 10.0);
        br::SystemConfig mfh = mh;
        mfh.scheme = hp::Scheme::MFH;
        mfh.bands = 5;
        CHECK(br::analytic_ber(mfh) < br::analytic_ber(mh));

        br::SystemConfig fh = mh;
        fh.scheme = hp::Scheme::FH;
        fh.bands = 10; // same resource count as the MH mode space
        CHECK(br::analytic_ber(fh) == br::analytic_ber(mh));
    }
}

TEST_CASE("monotonicity in snr and modulation ordering") {
    br::SystemConfig cfg;
    cfg.scheme = hp::Scheme::MH;
    cfg.modes = 10;
    cfg.hops = 2;
    cfg.interferers = 10;
    double prev = 1.0;
    for (int db = 0; db <= 39; ++db) {
        cfg.snr = std::pow(10.0, db / 10.0);
        cfg.mu = 1.0;
        const double dpsk = br::analytic_ber(cfg);
        cfg.mu = 0.5;
        const double fsk = br::analytic_ber(cfg);
        CHECK(dpsk < prev);
        CHECK(dpsk <= fsk);
        prev = dpsk;
    }
}
