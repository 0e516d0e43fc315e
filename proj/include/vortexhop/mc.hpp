#pragma once

#include <cstdint>
#include <vector>

#include "vortexhop/ber.hpp"
#include "vortexhop/rng.hpp"

namespace vortexhop::mc {

// MODEL fidelity draws every per-hop SINR from the Gamma law the closed
// forms assume, isolating formula bugs from modeling gaps. PHYSICAL draws
// the jammed-hop SINR as the actual ratio signal/(noise + interference)
// with all powers Gamma-distributed, quantifying that assumption.
enum class Fidelity { Model, Physical };

struct McConfig {
    long long trials = 1'000'000;
    std::uint64_t seed = 1;
    Fidelity fidelity = Fidelity::Model;
    long long batch = 0; // 0 = auto; must divide trials when set
    int threads = 0;     // 0 = hardware concurrency, capped by VORTEXHOP_THREADS

    void validate() const; // throws DomainError
};

struct BerEstimate {
    double p_hat = 0.0;
    long long trials = 0;
    long long errors = 0;

    double stderr_() const; // sqrt(p_hat (1 - p_hat) / trials)
};

// Precomputed per-scenario tables: the per-hop interferer-count CDF and the
// per-count mean SINRs, so the hot loop is one uniform + one Gamma draw per
// hop.
struct SymbolContext {
    int hops = 1;
    int m = 1;
    ber::Modulation mod{};
    std::vector<double> count_cdf; // P(D <= d), d = 0..K
    double clear_mean = 1.0;       // G*zeta
    std::vector<double> jam_mean;  // mapped mean for D = 1..K
    // Physical-fidelity parameters.
    Fidelity fidelity = Fidelity::Model;
    double snr = 1.0;       // zeta
    double interferer_inr = 1.0; // I * zeta: each interferer's mean power over noise
    double gain = 1.0;      // G

    static SymbolContext make(const ber::SystemConfig& config, Fidelity fidelity);
};

// One data symbol: draw each hop's jam state and SINR, combine by EGC
// (per-hop SINRs add), emit a Bernoulli error with the conditional
// probability at the combined SINR. Deterministic given the generator.
bool simulate_symbol(const SymbolContext& ctx, CounterRng& rng);

// Batched estimator. Trial t always uses substream(seed, t), so the error
// count is bit-identical across batch layouts and thread counts.
BerEstimate estimate_ber(const McConfig& config, const ber::SystemConfig& scenario);

// Sample-mean estimate of the physical average SINR
//   E[ X / (1 + sum_{k<=D} Y_k) ],  X ~ Gamma(m, snr), Y_k ~ Gamma(m, inr),
// the reference oracle for the LinkBudget::delta_bar map.
double estimate_avg_sinr(double snr, double inr, int interferers, int m,
                         long long trials, std::uint64_t seed);

struct GapReport {
    BerEstimate model;
    BerEstimate physical;
    double relative_gap = 0.0; // |model - physical| / max(model, tiny)
};

// Run both fidelities on one scenario and report the relative BER gap.
// Informational: no pass/fail attached.
GapReport physical_gap_report(const ber::SystemConfig& scenario, long long trials,
                              std::uint64_t seed);

// Parallelism cap shared with the CLI: min(hardware, VORTEXHOP_THREADS).
int max_threads();

} // namespace vortexhop::mc
