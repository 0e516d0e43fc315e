#include "vortexhop/ber.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexhop/errors.hpp"
#include "vortexhop/specfun.hpp"

namespace vortexhop::ber {

namespace {

long double ipow_l(long double x, int n) {
    long double r = 1.0L;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

// exp(log Gamma(n)) for positive integer n, in log space.
long double lgamma_int(int n) {
    if (n <= 0) {
        throw NumericalDiagnostic("Gamma argument " + std::to_string(n) +
                                  " is not positive; closed form out of its validity window");
    }
    return std::lgamma(static_cast<long double>(n));
}

// sum over the conditional-BER series of one density term
// coeff * gamma^(order-1) e^(-pole*gamma) / Gamma(order):
//   2^(1-2U) sum_v1 c(v1) coeff Gamma(order+v1) / (Gamma(order) (mu+pole)^(order+v1)),
// accumulated in log space against under/overflow at extreme SNR.
long double series_against_term(long double log_scaled_coeff, int sign, int order,
                                long double pole, int hops, long double mu,
                                std::span<const long double> c) {
    const long double log_mu_pole = std::log(mu + pole);
    long double acc = 0.0L;
    for (int v1 = 0; v1 < hops; ++v1) {
        const long double lg = log_scaled_coeff + std::log(c[static_cast<std::size_t>(v1)]) +
                               lgamma_int(order + v1) - lgamma_int(order) -
                               (order + v1) * log_mu_pole;
        acc += sign * std::exp(lg);
    }
    return acc;
}

std::vector<long double> c_table(int hops) {
    std::vector<long double> c(static_cast<std::size_t>(hops));
    for (int v1 = 0; v1 < hops; ++v1) {
        c[static_cast<std::size_t>(v1)] = specfun::c_coeff(v1, hops);
    }
    return c;
}

long double two_pow(int e) { return std::exp2(static_cast<long double>(e)); }

} // namespace

void Modulation::validate() const {
    if (mu != 1.0 && mu != 0.5) {
        throw DomainError("Modulation: mu must be 1 (DPSK) or 0.5 (noncoherent FSK)");
    }
}

void MfhGain::validate() const {
    if (!(g >= 1.0)) throw DomainError("MfhGain: processing gain must be >= 1");
}

double conditional_ber(double gamma_s, int hops, Modulation mod) {
    mod.validate();
    if (hops < 1) throw DomainError("conditional_ber: hops must be >= 1");
    if (!(gamma_s >= 0.0)) throw DomainError("conditional_ber: gamma_s must be >= 0");
    long double poly = 0.0L;
    for (int v1 = hops - 1; v1 >= 0; --v1) { // Horner
        poly = poly * gamma_s + static_cast<long double>(specfun::c_coeff(v1, hops));
    }
    return static_cast<double>(two_pow(1 - 2 * hops) *
                               std::exp(-static_cast<long double>(mod.mu) * gamma_s) * poly);
}

double clear_ber(const fading::SinrModel& model, Modulation mod) {
    mod.validate();
    model.validate(hop::JamProfile{});
    if (!model.jammed_snr.empty()) {
        throw DomainError("clear_ber: model must describe a clear (V = 0) symbol");
    }
    const int mU = model.m * model.hops;
    const long double m = model.m;
    const long double zeta = model.snr;
    const long double mu = mod.mu;
    const long double base = m / (m + mu * zeta);   // < 1
    const long double ratio = zeta / (m + mu * zeta);
    long double sum = 0.0L;
    const auto c = c_table(model.hops);
    for (int v1 = 0; v1 < model.hops; ++v1) {
        sum += c[static_cast<std::size_t>(v1)] *
               std::exp(lgamma_int(mU + v1) - lgamma_int(mU) + v1 * std::log(ratio));
    }
    return static_cast<double>(two_pow(1 - 2 * model.hops) * ipow_l(base, mU) * sum);
}

double jammed_ber_polesum(const fading::SinrModel& model,
                            const hop::JamProfile& profile, Modulation mod) {
    mod.validate();
    model.validate(profile);
    if (profile.jammed < 1) {
        throw DomainError("jammed_ber: profile must jam at least one hop (use clear_ber)");
    }
    const specfun::RationalPoleSum cf = fading::decompose_cf(model, profile);
    const auto c = c_table(model.hops);
    const long double log_scale = std::log(cf.scale);
    long double acc = 0.0L;
    for (const specfun::PoleTerm& t : cf.terms) {
        if (t.coeff == 0.0L) continue;
        const int sign = t.coeff > 0.0L ? 1 : -1;
        acc += series_against_term(log_scale + std::log(std::abs(t.coeff)), sign, t.order,
                                   t.pole, model.hops, mod.mu, c);
    }
    return static_cast<double>(two_pow(1 - 2 * model.hops) * acc);
}

namespace {

struct Family {
    long double mean;
    int multiplicity;
};

// Grouped families of the case split: the clear-hop pole, the shared-count
// pole of order m*a, then one order-m pole per remaining jammed hop.
std::vector<Family> grouped_families(const fading::SinrModel& model,
                                     const hop::JamProfile& profile) {
    std::vector<Family> fams;
    if (model.hops > profile.jammed) {
        fams.push_back({static_cast<long double>(model.snr),
                        model.m * (model.hops - profile.jammed)});
    }
    if (profile.shared_hops > 0) {
        for (std::size_t v = 0; v < model.jammed_snr.size(); ++v) {
            if (profile.counts[v] == profile.shared_count) {
                fams.push_back({static_cast<long double>(model.jammed_snr[v]),
                                model.m * profile.shared_hops});
                break;
            }
        }
    }
    for (std::size_t v = 0; v < model.jammed_snr.size(); ++v) {
        if (profile.shared_hops > 0 && profile.counts[v] == profile.shared_count) continue;
        fams.push_back({static_cast<long double>(model.jammed_snr[v]), model.m});
    }
    return fams;
}

} // namespace

bool grouped_route_applicable(const fading::SinrModel& model,
                              const hop::JamProfile& profile) {
    if (!profile.conforming || profile.jammed < 1) return false;
    // The shared group must genuinely share one average, and all family
    // means must be pairwise distinct.
    if (profile.shared_hops > 0) {
        double shared = -1.0;
        for (std::size_t v = 0; v < model.jammed_snr.size(); ++v) {
            if (profile.counts[v] != profile.shared_count) continue;
            if (shared < 0.0) {
                shared = model.jammed_snr[v];
            } else if (model.jammed_snr[v] != shared) {
                return false;
            }
        }
    }
    const auto fams = grouped_families(model, profile);
    for (std::size_t i = 0; i < fams.size(); ++i) {
        for (std::size_t j = i + 1; j < fams.size(); ++j) {
            if (fams[i].mean == fams[j].mean) return false;
        }
    }
    return true;
}

double jammed_ber_grouped(const fading::SinrModel& model,
                            const hop::JamProfile& profile, Modulation mod) {
    mod.validate();
    model.validate(profile);
    if (!grouped_route_applicable(model, profile)) {
        throw DomainError("jammed_ber_grouped: profile does not fit the grouped case split");
    }
    const auto fams = grouped_families(model, profile);
    const long double m = model.m;
    const long double mu = mod.mu;
    const auto c = c_table(model.hops);

    // log(m^(mU) / prod mean^(m * hops-of-family)) = log prod (m/mean)^mult.
    long double log_front = 0.0L;
    for (const Family& f : fams) {
        log_front += f.multiplicity * std::log(m / f.mean);
    }

    long double total = 0.0L;
    for (std::size_t fi = 0; fi < fams.size(); ++fi) {
        const int mf = fams[fi].multiplicity;
        const long double pf = m / fams[fi].mean;

        // Taylor derivatives at z = pf of the product of the other families
        // (m - z*mean_g)^(-mult_g) scaled to (p_g - z)^(-mult_g) form.
        std::vector<long double> deriv(static_cast<std::size_t>(mf), 0.0L);
        long double f0 = 1.0L;
        for (std::size_t g = 0; g < fams.size(); ++g) {
            if (g == fi) continue;
            f0 *= ipow_l(1.0L / (m / fams[g].mean - pf), fams[g].multiplicity);
        }
        deriv[0] = f0;
        for (int r = 0; r + 1 < mf; ++r) {
            long double acc = 0.0L;
            long double binom = 1.0L;
            for (int t = 0; t <= r; ++t) {
                // b_s = s! sum_g mult_g / (p_g - pf)^(s+1)
                const int s = r - t;
                long double fact = 1.0L;
                for (int q = 2; q <= s; ++q) fact *= q;
                long double b = 0.0L;
                for (std::size_t g = 0; g < fams.size(); ++g) {
                    if (g == fi) continue;
                    b += fams[g].multiplicity *
                         ipow_l(1.0L / (m / fams[g].mean - pf), s + 1);
                }
                acc += binom * deriv[static_cast<std::size_t>(t)] * fact * b;
                binom = binom * static_cast<long double>(r - t) / static_cast<long double>(t + 1);
            }
            deriv[static_cast<std::size_t>(r + 1)] = acc;
        }

        long double jfact = 1.0L;
        for (int j = 1; j <= mf; ++j) {
            if (j > 1) jfact *= static_cast<long double>(j - 1);
            long double a = deriv[static_cast<std::size_t>(j - 1)] / jfact;
            if ((j - 1) & 1) a = -a; // d/d(jw) -> d/d(pole - z) sign per order
            if (a == 0.0L) continue;
            const int order = mf - j + 1;
            const int sign = a > 0.0L ? 1 : -1;
            total += series_against_term(log_front + std::log(std::abs(a)), sign, order, pf,
                                         model.hops, mu, c);
        }
    }
    return static_cast<double>(two_pow(1 - 2 * model.hops) * total);
}

double jammed_ber(const fading::SinrModel& model, const hop::JamProfile& profile,
                    Modulation mod) {
    const double pole_route = jammed_ber_polesum(model, profile, mod);
    if (grouped_route_applicable(model, profile)) {
        const double grouped = jammed_ber_grouped(model, profile, mod);
        const double tol = 1e-9 * std::max({std::abs(pole_route), std::abs(grouped), 1e-300});
        if (std::abs(pole_route - grouped) > tol) {
            throw NumericalDiagnostic(
                "jammed_ber: grouped and pole-sum evaluations disagree (" +
                std::to_string(grouped) + " vs " + std::to_string(pole_route) + ")");
        }
    }
    return pole_route;
}

double reduced_ber(std::span<const double> delta_bars, int hops, Modulation mod) {
    mod.validate();
    if (hops < 1 || static_cast<int>(delta_bars.size()) != hops) {
        throw DomainError("reduced_ber: need exactly one average SINR per hop");
    }
    for (std::size_t i = 0; i < delta_bars.size(); ++i) {
        if (!(delta_bars[i] > 0.0)) throw DomainError("reduced_ber: averages must be > 0");
        for (std::size_t j = i + 1; j < delta_bars.size(); ++j) {
            if (delta_bars[i] == delta_bars[j]) {
                throw DomainError(
                    "reduced_ber: duplicate averages make the simple poles coincide; "
                    "use jammed_ber");
            }
        }
    }
    const long double mu = mod.mu;
    const auto c = c_table(hops);
    long double total = 0.0L;
    for (std::size_t v = 0; v < delta_bars.size(); ++v) {
        const long double dv = delta_bars[v];
        long double mix = 1.0L; // M_v = prod_{i != v} d_v / (d_v - d_i)
        for (std::size_t i = 0; i < delta_bars.size(); ++i) {
            if (i != v) mix *= dv / (dv - static_cast<long double>(delta_bars[i]));
        }
        const long double ratio = dv / (1.0L + mu * dv);
        long double fact = 1.0L, rpow = ratio;
        for (int v1 = 0; v1 < hops; ++v1) {
            if (v1 > 0) {
                fact *= v1;      // Gamma(v1 + 1)
                rpow *= ratio;   // ratio^(v1 + 1)
            }
            total += mix * c[static_cast<std::size_t>(v1)] * fact * rpow / dv;
        }
    }
    return static_cast<double>(two_pow(1 - 2 * hops) * total);
}

void LinkBudget::validate() const {
    if (m < 1) throw DomainError("LinkBudget: Nakagami m must be a positive integer");
    if (!(snr > 0.0)) throw DomainError("LinkBudget: snr must be > 0");
    if (!(jam_power_ratio >= 0.0)) throw DomainError("LinkBudget: jam_power_ratio must be >= 0");
    if (!(mfh_gain >= 1.0)) throw DomainError("LinkBudget: processing gain must be >= 1");
}

double LinkBudget::delta_bar(int interferers) const {
    return snr / (1.0 + interferers * jam_power_ratio * snr);
}

double LinkBudget::noise_fraction(int interferers) const {
    return 1.0 / (1.0 + interferers * jam_power_ratio * snr);
}

double LinkBudget::clear_mean() const { return mfh_gain * snr; }

double LinkBudget::jam_mean(int interferers) const {
    return delta_bar(interferers) * (1.0 + (mfh_gain - 1.0) * noise_fraction(interferers));
}

fading::SinrModel make_sinr_model(const LinkBudget& budget,
                                  const hop::JamProfile& profile, int hops) {
    budget.validate();
    fading::SinrModel model;
    model.m = budget.m;
    model.hops = hops;
    model.snr = budget.clear_mean();
    model.jammed_snr.reserve(profile.counts.size());
    for (int d : profile.counts) model.jammed_snr.push_back(budget.jam_mean(d));
    model.validate(profile);
    return model;
}

fading::SinrModel mfh_map_sinr(const fading::SinrModel& model, MfhGain gain,
                               const hop::JamProfile& profile,
                               std::span<const double> noise_fraction) {
    gain.validate();
    model.validate(profile);
    if (noise_fraction.size() != model.jammed_snr.size()) {
        throw DomainError("mfh_map_sinr: need one expectation factor per jammed hop");
    }
    fading::SinrModel mapped = model;
    mapped.snr = gain.g * model.snr;
    for (std::size_t v = 0; v < mapped.jammed_snr.size(); ++v) {
        if (!(noise_fraction[v] >= 0.0 && noise_fraction[v] <= 1.0)) {
            throw DomainError("mfh_map_sinr: expectation factors must lie in [0, 1]");
        }
        mapped.jammed_snr[v] = model.jammed_snr[v] * (1.0 + (gain.g - 1.0) * noise_fraction[v]);
    }
    return mapped;
}

namespace {

double average_ber_core(const LinkBudget& budget, const hop::CollisionModel& cm,
                        double collision_p, Modulation mod) {
    budget.validate();
    mod.validate();
    fading::SinrModel clear;
    clear.m = budget.m;
    clear.hops = cm.hops;
    clear.snr = budget.clear_mean();
    double total = hop::p_clear(cm, collision_p) * clear_ber(clear, mod);
    for (int v = 1; v <= cm.hops; ++v) {
        for (const auto& [profile, weight] : hop::enumerate_profiles(cm, v, collision_p)) {
            if (weight == 0.0) continue;
            const fading::SinrModel model = make_sinr_model(budget, profile, cm.hops);
            total += weight * jammed_ber(model, profile, mod);
        }
    }
    return total;
}

} // namespace

double average_ber_mh(const LinkBudget& budget, const hop::CollisionModel& cm,
                      Modulation mod) {
    return average_ber_core(budget, cm, collision_prob(cm, hop::Scheme::MH), mod);
}

double average_ber_mfh(const LinkBudget& budget, const hop::CollisionModel& cm,
                       Modulation mod) {
    return average_ber_core(budget, cm, collision_prob(cm, hop::Scheme::MFH), mod);
}

double mfh_single_ber(const LinkBudget& budget, int hops, Modulation mod) {
    budget.validate();
    fading::SinrModel clear;
    clear.m = budget.m;
    clear.hops = hops;
    clear.snr = budget.clear_mean();
    return clear_ber(clear, mod);
}

double mfh_jammed_ber(const LinkBudget& budget, const hop::JamProfile& profile,
                       int hops, Modulation mod) {
    const fading::SinrModel model = make_sinr_model(budget, profile, hops);
    return jammed_ber(model, profile, mod);
}

void SystemConfig::validate() const {
    if (modes < 1) throw DomainError("SystemConfig: modes must be >= 1");
    if (bands < 1) throw DomainError("SystemConfig: bands must be >= 1");
    if (hops < 1 || hops > 16) throw DomainError("SystemConfig: hops must lie in [1, 16]");
    if (interferers < 0) throw DomainError("SystemConfig: interferers must be >= 0");
    if (m < 1) throw DomainError("SystemConfig: Nakagami m must be a positive integer");
    Modulation{mu}.validate();
    if (!(snr > 0.0)) throw DomainError("SystemConfig: snr must be > 0");
    if (!(jam_power_ratio >= 0.0)) throw DomainError("SystemConfig: jam_power_ratio must be >= 0");
    if (processing_gain != 0.0 && !(processing_gain >= 1.0)) {
        throw DomainError("SystemConfig: processing_gain must be >= 1 (or 0 for auto)");
    }
}

double SystemConfig::effective_gain() const {
    if (scheme != hop::Scheme::MFH) return 1.0;
    return processing_gain > 0.0 ? processing_gain : static_cast<double>(bands);
}

hop::CollisionModel SystemConfig::collision_model() const {
    switch (scheme) {
        case hop::Scheme::MH: return {modes, 1, interferers, hops};
        case hop::Scheme::FH: return {bands, 1, interferers, hops};
        default: return {modes, bands, interferers, hops};
    }
}

double SystemConfig::collision_probability() const {
    const hop::CollisionModel cm = collision_model();
    return hop::collision_prob(cm, scheme == hop::Scheme::MFH ? hop::Scheme::MFH
                                                              : hop::Scheme::MH);
}

LinkBudget SystemConfig::budget() const {
    return LinkBudget{m, snr, jam_power_ratio, effective_gain()};
}

double analytic_ber(const SystemConfig& config) {
    config.validate();
    return average_ber_core(config.budget(), config.collision_model(),
                            config.collision_probability(), Modulation{config.mu});
}

} // namespace vortexhop::ber
