#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vortexhop/hopping.hpp"
#include "vortexhop/rng.hpp"
#include "vortexhop/specfun.hpp"

namespace vortexhop::fading {

// Per-symbol SINR statistics: U hops, each hop's post-decomposition SINR is
// Gamma-distributed with shape m and the listed mean -- `snr` on clear hops,
// `jammed_snr[v]` on the v-th jammed hop (aligned with JamProfile::counts).
struct SinrModel {
    int m = 1;                      // Nakagami fading parameter (positive integer)
    int hops = 1;                   // U
    double snr = 1.0;               // zeta, average clear-hop SNR (linear)
    std::vector<double> jammed_snr; // delta_bar_v for each jammed hop

    void validate(const hop::JamProfile& profile) const; // throws DomainError
};

// Nakagami-m power-gain density: gamma^(m-1)/Gamma(m) (m/mean)^m e^(-m*gamma/mean).
double nakagami_pdf(int m, double mean, double gamma);

// One Gamma(shape=m, scale=mean/m) draw; deterministic given the generator
// state. Samplers are single-owner: share the data, not the generator.
double sample_power_gain(int m, double mean, CounterRng& rng);
double sample_power_gain(int m, double mean, std::uint64_t seed);

// Characteristic function of the EGC sum gamma_s = sum of per-hop SINRs:
// the product over hops of (m / (m - j*w*mean))^m.
std::complex<double> char_fn(const SinrModel& model, const hop::JamProfile& profile,
                             double w);

// The same characteristic function as a pole sum in z = j*w: poles sit at
// m/mean with multiplicity m per hop; hops with equal means merge into one
// higher-order pole. scale = prod(pole^multiplicity) so that evaluate(0) = 1.
specfun::RationalPoleSum decompose_cf(const SinrModel& model,
                                      const hop::JamProfile& profile);

// Closed-form density of gamma_s: each order-r pole term contributes
// coeff * gamma^(r-1) e^(-pole*gamma) / (r-1)!.
double pdf_combined(const SinrModel& model, const hop::JamProfile& profile, double gamma);

// Shared kernels over an already-computed decomposition.
double pdf_pole_sum(const specfun::RationalPoleSum& cf, double gamma);
double cdf_pole_sum(const specfun::RationalPoleSum& cf, double gamma);
double mean_pole_sum(const specfun::RationalPoleSum& cf);

} // namespace vortexhop::fading
