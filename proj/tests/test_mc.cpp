#include <doctest.h>

#include <cmath>

#include "vortexhop/ber.hpp"
#include "vortexhop/errors.hpp"
#include "vortexhop/mc.hpp"
#include "vortexhop/rng.hpp"

using namespace vortexhop;

namespace {

ber::SystemConfig scenario(hop::Scheme scheme, int modes, int bands, int hops,
                           int interferers, int m, double snr_db) {
    ber::SystemConfig cfg;
    cfg.scheme = scheme;
    cfg.modes = modes;
    cfg.bands = bands;
    cfg.hops = hops;
    cfg.interferers = interferers;
    cfg.m = m;
    cfg.snr = std::pow(10.0, snr_db / 10.0);
    return cfg;
}

} // namespace

TEST_CASE("estimator determinism across batching and threads") {
    const auto cfg = scenario(hop::Scheme::MH, 10, 1, 2, 5, 1, 10.0);
    mc::McConfig a;
    a.trials = 200'000;
    a.seed = 99;
    a.batch = 200'000; // one batch
    a.threads = 1;
    mc::McConfig b = a;
    b.batch = 20'000; // ten batches
    b.threads = 4;
    const auto ea = mc::estimate_ber(a, cfg);
    const auto eb = mc::estimate_ber(b, cfg);
    CHECK(ea.errors == eb.errors);
    CHECK(ea.p_hat == eb.p_hat);
    // and the same seed twice is bit-identical
    const auto ec = mc::estimate_ber(a, cfg);
    CHECK(ec.errors == ea.errors);
    // stderr formula
    CHECK(ea.stderr_() ==
          doctest::Approx(std::sqrt(ea.p_hat * (1.0 - ea.p_hat) / ea.trials)).epsilon(1e-15));
}

TEST_CASE("config validation") {
    mc::McConfig bad;
    bad.trials = 100;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.trials = 10'000;
    bad.batch = 3'000; // does not divide
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.batch = 2'500;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("limits: very high and very low SNR") {
    mc::McConfig cfg;
    cfg.trials = 20'000;
    cfg.seed = 5;
    const auto high = mc::estimate_ber(cfg, scenario(hop::Scheme::MH, 10, 1, 1, 0, 1, 60.0));
    CHECK(high.p_hat < 1e-3);
    const auto low = mc::estimate_ber(cfg, scenario(hop::Scheme::MH, 10, 1, 1, 0, 1, -60.0));
    CHECK(low.p_hat == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("MODEL fidelity matches the closed forms within 3 sigma") {
    mc::McConfig mcc;
    mcc.trials = 1'000'000;
    mcc.seed = 1;
    for (const auto& cfg : {scenario(hop::Scheme::MH, 10, 1, 2, 0, 1, 10.0),
                            scenario(hop::Scheme::MH, 10, 1, 2, 10, 1, 10.0),
                            scenario(hop::Scheme::MFH, 10, 5, 2, 6, 2, 6.0),
                            scenario(hop::Scheme::FH, 4, 5, 3, 3, 1, 8.0)}) {
        const double analytic = ber::analytic_ber(cfg);
        const auto est = mc::estimate_ber(mcc, cfg);
        CHECK(std::abs(est.p_hat - analytic) <= 3.0 * est.stderr_());
    }
}

TEST_CASE("estimate_avg_sinr reference behavior") {
    // no interference: the mean SNR itself
    CHECK(mc::estimate_avg_sinr(4.0, 1.0, 0, 1, 200'000, 7) ==
          doctest::Approx(4.0).epsilon(0.01));
    // overwhelming interference drives the average to zero
    CHECK(mc::estimate_avg_sinr(4.0, 1e9, 3, 1, 100'000, 7) < 1e-6);
    // self-consistency against a longer run
    const double coarse = mc::estimate_avg_sinr(1.0, 1.0, 1, 1, 1'000'000, 11);
    const double fine = mc::estimate_avg_sinr(1.0, 1.0, 1, 1, 10'000'000, 13);
    CHECK(std::abs(coarse - fine) / fine < 0.005);
    CHECK_THROWS_AS(mc::estimate_avg_sinr(1.0, 1.0, 1, 1, 100, 1), DomainError);
}

TEST_CASE("the first-order delta_bar map lower-bounds the physical mean") {
    // 1/(1 + E[sum Y]) <= E[1/(1 + sum Y)] by convexity, so the configured
    // map zeta/(1 + D*I*zeta) is the conservative side of the physical
    // reference; both shrink as D grows.
    const double zeta = 4.0;
    ber::LinkBudget budget{1, zeta, 1.0, 1.0};
    double prev = 1e9;
    for (int d : {1, 2, 4}) {
        const double physical = mc::estimate_avg_sinr(zeta, zeta, d, 1, 500'000, 3);
        CHECK(physical >= budget.delta_bar(d));
        CHECK(physical < prev);
        prev = physical;
    }
}

TEST_CASE("MC reproduces the published single-user anchor") {
    // U = 4 clear channel at 10 dB sits near 1.3e-4 (20% digitization slack)
    mc::McConfig mcc;
    mcc.trials = 4'000'000;
    mcc.seed = 31;
    const auto est = mc::estimate_ber(mcc, scenario(hop::Scheme::MH, 10, 1, 4, 0, 1, 10.0));
    CHECK(std::abs(est.p_hat - 1.3e-4) < 0.2 * 1.3e-4);
}

TEST_CASE("removable interference leaves no fidelity gap") {
    // Zero interferer power: every collision lands in a removable case, so
    // MODEL and PHYSICAL draws follow the same law.
    auto cfg = scenario(hop::Scheme::MFH, 4, 2, 2, 6, 1, 10.0);
    cfg.jam_power_ratio = 0.0;
    const auto report = mc::physical_gap_report(cfg, 400'000, 9);
    const double sigma = report.model.stderr_() + report.physical.stderr_();
    CHECK(std::abs(report.model.p_hat - report.physical.p_hat) <= 4.0 * sigma);
}

TEST_CASE("physical_gap_report") {
    {
        // no interferers: the two fidelities draw identical streams
        const auto report =
            mc::physical_gap_report(scenario(hop::Scheme::MH, 10, 1, 2, 0, 1, 8.0), 50'000, 5);
        CHECK(report.model.errors == report.physical.errors);
        CHECK(report.relative_gap == 0.0);
    }
    {
        // jammed scenario: a measurable but moderate modeling gap, reported only
        const auto report =
            mc::physical_gap_report(scenario(hop::Scheme::MH, 4, 1, 2, 6, 1, 10.0), 200'000, 5);
        CHECK(report.model.p_hat > 0.0);
        CHECK(report.physical.p_hat > 0.0);
        CHECK(report.relative_gap < 1.0);
    }
}

TEST_CASE("waveform-level DPSK sanity: differential detection over AWGN") {
    // Two-symbol differential detector; reference error rate (1/2) e^{-gamma}.
    for (double gamma : {1.0, 2.0}) {
        const long trials = 1'000'000;
        long errors = 0;
        const double amp = std::sqrt(gamma);
        for (long t = 0; t < trials; ++t) {
            CounterRng rng = CounterRng::substream(4242, static_cast<std::uint64_t>(t));
            const bool bit = rng.next_unit() < 0.5;
            const auto [n0r, n0i] = rng.next_gaussian_pair();
            const auto [n1r, n1i] = rng.next_gaussian_pair();
            // complex noise CN(0, 1): variance 1/2 per quadrature
            const double s = bit ? -amp : amp; // differential phase 0 or pi
            const double r0r = amp + n0r / std::sqrt(2.0), r0i = n0i / std::sqrt(2.0);
            const double r1r = s + n1r / std::sqrt(2.0), r1i = n1i / std::sqrt(2.0);
            const double corr = r1r * r0r + r1i * r0i; // Re(r1 * conj(r0))
            const bool decided = corr < 0.0;
            if (decided != bit) ++errors;
        }
        const double p_hat = static_cast<double>(errors) / static_cast<double>(trials);
        const double want = 0.5 * std::exp(-gamma);
        const double sigma = std::sqrt(want * (1.0 - want) / static_cast<double>(trials));
        CHECK(std::abs(p_hat - want) < 3.0 * sigma);
    }
}
