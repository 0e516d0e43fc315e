#pragma once

#include <span>
#include <vector>

#include "vortexhop/fading.hpp"
#include "vortexhop/hopping.hpp"

namespace vortexhop::ber {

// Binary modulation constant of the noncoherent conditional error formula:
// mu = 1 selects DPSK, mu = 1/2 noncoherent FSK. No other values exist.
struct Modulation {
    double mu = 1.0;

    static Modulation dpsk() { return {1.0}; }
    static Modulation fsk() { return {0.5}; }
    void validate() const; // throws DomainError unless mu is exactly 1 or 0.5
};

// Despreading processing gain of the frequency-hopping stage; approximated
// by the band count Q when not measured.
struct MfhGain {
    double g = 1.0;

    static MfhGain from_bands(int bands) { return {static_cast<double>(bands)}; }
    void validate() const; // g >= 1
};

// Error probability of a U-hop EGC noncoherent receiver conditioned on the
// combined SINR gamma_s:
//   2^(1-2U) e^(-mu*gamma_s) sum_{v1=0}^{U-1} c(v1) gamma_s^(v1).
// Returns exactly 1/2 at gamma_s = 0.
double conditional_ber(double gamma_s, int hops, Modulation mod);

// Average BER with every hop clear (V = 0): the closed form
//   2^(1-2U)/Gamma(mU) (m/(m+mu*zeta))^(mU)
//     sum_{v1} c(v1) Gamma(mU+v1) (zeta/(m+mu*zeta))^(v1).
double clear_ber(const fading::SinrModel& model, Modulation mod);

// Average BER given a jam profile (V >= 1). Evaluated through the merged
// pole sum of the combined-SINR density (handles every profile), and, on
// profiles that fit the grouped clear/shared/distinct case split, also
// through the literal grouped closed form; the two routes must agree to
// 1e-9 relative or a NumericalDiagnostic is thrown.
double jammed_ber(const fading::SinrModel& model, const hop::JamProfile& profile,
                    Modulation mod);

// The two routes individually (exposed for tests and diagnostics).
double jammed_ber_polesum(const fading::SinrModel& model,
                            const hop::JamProfile& profile, Modulation mod);
double jammed_ber_grouped(const fading::SinrModel& model,
                            const hop::JamProfile& profile, Modulation mod);
bool grouped_route_applicable(const fading::SinrModel& model,
                              const hop::JamProfile& profile);

// Reduced closed form for V = U, a = 0, m = 1 with pairwise distinct
// averages: 2^(1-2U) sum_v sum_v1 M_v c(v1) v1! / delta_v
// (delta_v/(1+mu*delta_v))^(v1+1), M_v = prod_{i!=v} delta_v/(delta_v-delta_i).
double reduced_ber(std::span<const double> delta_bars, int hops, Modulation mod);

// Average-SINR assignment rule shared by the analytic pipeline and the
// Monte Carlo model. A hop jammed by D equal-power interferers gets
//   delta_bar(D) = zeta / (1 + D * jam_power_ratio * zeta),
// the first-order map implied by treating interferer powers at their means;
// mc::estimate_avg_sinr is the physical reference for this map. The MFH
// despreading stage scales clear hops by G and jammed hops by
// (1 + (G-1) * eta(D)) with the noise fraction eta(D) = 1/(1 + D*I*zeta):
// G for noise-dominated hops, 1 when interference dominates.
struct LinkBudget {
    int m = 1;
    double snr = 1.0;            // zeta (linear)
    double jam_power_ratio = 1.0; // I: interferer power relative to the desired user
    double mfh_gain = 1.0;        // G; exactly 1 for MH and standalone FH

    double delta_bar(int interferers) const;     // base map, no despreading gain
    double noise_fraction(int interferers) const; // eta(D)
    double clear_mean() const;                    // G * zeta
    double jam_mean(int interferers) const;       // delta_bar * (1 + (G-1)*eta)
    void validate() const;
};

// SinrModel for a concrete jam profile under the budget's assignment rule.
fading::SinrModel make_sinr_model(const LinkBudget& budget,
                                  const hop::JamProfile& profile, int hops);

// Map an MH-side model to its MFH counterpart: clear mean times G, jammed
// means times (1 + (G-1) * noise_fraction[v]) with one supplied expectation
// factor per jammed hop (from the budget map or a Monte Carlo estimate).
// G = 1 is the exact identity.
fading::SinrModel mfh_map_sinr(const fading::SinrModel& model, MfhGain gain,
                               const hop::JamProfile& profile,
                               std::span<const double> noise_fraction);

// Probability-weighted BER over all jam outcomes:
//   p(U) P_e(U) + sum_V sum_profiles w(profile) P_e(V, D|U).
double average_ber_mh(const LinkBudget& budget, const hop::CollisionModel& cm,
                      Modulation mod);
double average_ber_mfh(const LinkBudget& budget, const hop::CollisionModel& cm,
                       Modulation mod);

// MFH single-user / per-profile forms (the MH formulas at G*zeta and the
// mapped jammed averages).
double mfh_single_ber(const LinkBudget& budget, int hops, Modulation mod);
double mfh_jammed_ber(const LinkBudget& budget, const hop::JamProfile& profile,
                       int hops, Modulation mod);

// Full scenario description (one point of a sweep).
struct SystemConfig {
    hop::Scheme scheme = hop::Scheme::MH;
    int modes = 10;      // N
    int bands = 1;       // Q
    int hops = 1;        // U
    int interferers = 0; // K
    int m = 1;
    double mu = 1.0;
    double snr = 10.0;             // zeta (linear)
    double jam_power_ratio = 1.0;  // I
    double processing_gain = 0.0;  // G; 0 = auto (Q for MFH, 1 otherwise)

    void validate() const;
    double effective_gain() const;
    hop::CollisionModel collision_model() const; // FH folds bands into the mode slot
    double collision_probability() const;
    LinkBudget budget() const;
};

// Closed-form average BER of a scenario. FH runs through the MH pipeline
// with the band count as the hopping resource; MFH through the same
// pipeline with P = 1/(NQ) and the despreading gain applied by the budget.
double analytic_ber(const SystemConfig& config);

} // namespace vortexhop::ber
