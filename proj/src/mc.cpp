#include "vortexhop/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "vortexhop/errors.hpp"
#include "vortexhop/specfun.hpp"

namespace vortexhop::mc {

void McConfig::validate() const {
    if (trials < 1000) throw DomainError("McConfig: trials must be >= 1000");
    if (batch < 0) throw DomainError("McConfig: batch must be >= 0");
    if (batch > 0 && trials % batch != 0) {
        throw DomainError("McConfig: batch must divide trials");
    }
    if (threads < 0) throw DomainError("McConfig: threads must be >= 0");
}

double BerEstimate::stderr_() const {
    if (trials <= 0) return 0.0;
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* cap = std::getenv("VORTEXHOP_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) hw = std::min(hw, c);
    }
    return hw;
}

SymbolContext SymbolContext::make(const ber::SystemConfig& config, Fidelity fidelity) {
    config.validate();
    const ber::LinkBudget budget = config.budget();
    const double p = config.collision_probability();
    const int k = config.interferers;

    SymbolContext ctx;
    ctx.hops = config.hops;
    ctx.m = config.m;
    ctx.mod = ber::Modulation{config.mu};
    ctx.fidelity = fidelity;
    ctx.clear_mean = budget.clear_mean();
    ctx.snr = config.snr;
    ctx.interferer_inr = config.jam_power_ratio * config.snr;
    ctx.gain = budget.mfh_gain;

    // Binomial(K, p) CDF over the interferer count of one hop, via log-gamma
    // so large interferer populations stay exact enough without overflow.
    ctx.count_cdf.resize(static_cast<std::size_t>(k) + 1);
    double cum = 0.0;
    for (int d = 0; d <= k; ++d) {
        long double lw = 0.0L;
        if (p > 0.0 && p < 1.0) {
            lw = std::lgamma(static_cast<long double>(k + 1)) -
                 std::lgamma(static_cast<long double>(d + 1)) -
                 std::lgamma(static_cast<long double>(k - d + 1)) +
                 d * std::log(static_cast<long double>(p)) +
                 (k - d) * std::log1p(static_cast<long double>(-p));
            cum += static_cast<double>(std::exp(lw));
        } else {
            cum += (p <= 0.0 ? (d == 0 ? 1.0 : 0.0) : (d == k ? 1.0 : 0.0));
        }
        ctx.count_cdf[static_cast<std::size_t>(d)] = cum;
    }
    ctx.count_cdf.back() = 1.0;

    ctx.jam_mean.resize(static_cast<std::size_t>(k) + 1, 0.0);
    for (int d = 1; d <= k; ++d) {
        ctx.jam_mean[static_cast<std::size_t>(d)] = budget.jam_mean(d);
    }
    return ctx;
}

namespace {

int draw_count(const SymbolContext& ctx, CounterRng& rng) {
    const double u = rng.next_unit();
    int d = 0;
    while (d + 1 < static_cast<int>(ctx.count_cdf.size()) &&
           u >= ctx.count_cdf[static_cast<std::size_t>(d)]) {
        ++d;
    }
    return d;
}

double draw_hop_sinr(const SymbolContext& ctx, int count, CounterRng& rng) {
    if (count == 0) return rng.next_gamma_int(ctx.m, ctx.clear_mean / ctx.m);
    if (ctx.fidelity == Fidelity::Model) {
        const double mean = ctx.jam_mean[static_cast<std::size_t>(count)];
        return rng.next_gamma_int(ctx.m, mean / ctx.m);
    }
    // Physical: the ratio of the actual powers, plus the despreading term on
    // the noise fraction when a gain stage is present.
    const double signal = rng.next_gamma_int(ctx.m, ctx.snr / ctx.m);
    double interference = 0.0;
    for (int i = 0; i < count; ++i) {
        interference += rng.next_gamma_int(ctx.m, ctx.interferer_inr / ctx.m);
    }
    const double noise_fraction = 1.0 / (1.0 + interference);
    const double sinr = signal * noise_fraction;
    return sinr * (1.0 + (ctx.gain - 1.0) * noise_fraction);
}

} // namespace

bool simulate_symbol(const SymbolContext& ctx, CounterRng& rng) {
    double combined = 0.0;
    for (int u = 0; u < ctx.hops; ++u) {
        combined += draw_hop_sinr(ctx, draw_count(ctx, rng), rng);
    }
    return rng.next_unit() < ber::conditional_ber(combined, ctx.hops, ctx.mod);
}

namespace {

long long run_range(const SymbolContext& ctx, std::uint64_t seed, long long lo,
                    long long hi) {
    long long errors = 0;
    for (long long t = lo; t < hi; ++t) {
        CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(t));
        errors += simulate_symbol(ctx, rng) ? 1 : 0;
    }
    return errors;
}

} // namespace

BerEstimate estimate_ber(const McConfig& config, const ber::SystemConfig& scenario) {
    config.validate();
    const SymbolContext ctx = SymbolContext::make(scenario, config.fidelity);

    const long long batch =
        config.batch > 0 ? config.batch
                         : std::max<long long>(1, config.trials / (8LL * max_threads()));
    std::vector<std::pair<long long, long long>> ranges;
    for (long long lo = 0; lo < config.trials; lo += batch) {
        ranges.emplace_back(lo, std::min(lo + batch, config.trials));
    }

    const int nthreads = static_cast<int>(
        std::min<long long>(config.threads > 0 ? config.threads : max_threads(),
                            static_cast<long long>(ranges.size())));
    std::vector<long long> partial(ranges.size(), 0);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            partial[i] = run_range(ctx, config.seed, ranges[i].first, ranges[i].second);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= ranges.size()) break;
                    partial[i] =
                        run_range(ctx, config.seed, ranges[i].first, ranges[i].second);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    BerEstimate est;
    est.trials = config.trials;
    for (long long e : partial) est.errors += e; // ordered, associative sum
    est.p_hat = static_cast<double>(est.errors) / static_cast<double>(config.trials);
    return est;
}

double estimate_avg_sinr(double snr, double inr, int interferers, int m,
                         long long trials, std::uint64_t seed) {
    if (trials < 10'000) throw DomainError("estimate_avg_sinr: trials must be >= 1e4");
    if (!(snr > 0.0) || !(inr >= 0.0)) {
        throw DomainError("estimate_avg_sinr: snr must be > 0 and inr >= 0");
    }
    if (m < 1) throw DomainError("estimate_avg_sinr: m must be a positive integer");
    long double acc = 0.0L;
    for (long long t = 0; t < trials; ++t) {
        CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(t));
        const double signal = rng.next_gamma_int(m, snr / m);
        double interference = 0.0;
        for (int i = 0; i < interferers; ++i) {
            interference += inr > 0.0 ? rng.next_gamma_int(m, inr / m) : 0.0;
        }
        acc += signal / (1.0 + interference);
    }
    return static_cast<double>(acc / static_cast<long double>(trials));
}

GapReport physical_gap_report(const ber::SystemConfig& scenario, long long trials,
                              std::uint64_t seed) {
    McConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.fidelity = Fidelity::Model;
    GapReport report;
    report.model = estimate_ber(cfg, scenario);
    cfg.fidelity = Fidelity::Physical;
    report.physical = estimate_ber(cfg, scenario);
    const double base = std::max(report.model.p_hat, 1e-300);
    report.relative_gap = std::abs(report.model.p_hat - report.physical.p_hat) / base;
    return report;
}

} // namespace vortexhop::mc
