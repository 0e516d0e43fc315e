#include "vortexhop/fading.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "vortexhop/errors.hpp"

namespace vortexhop::fading {

void SinrModel::validate(const hop::JamProfile& profile) const {
    if (m < 1) throw DomainError("SinrModel: Nakagami m must be a positive integer");
    if (hops < 1) throw DomainError("SinrModel: hops must be >= 1");
    if (!(snr > 0.0)) throw DomainError("SinrModel: average SNR must be > 0");
    if (static_cast<int>(jammed_snr.size()) != profile.jammed) {
        throw DomainError("SinrModel: jammed_snr length must equal the profile's V");
    }
    if (profile.jammed > hops) {
        throw DomainError("SinrModel: profile jams more hops than the symbol has");
    }
    for (double d : jammed_snr) {
        if (!(d > 0.0)) throw DomainError("SinrModel: average SINRs must be > 0");
    }
}

double nakagami_pdf(int m, double mean, double gamma) {
    if (m < 1) throw DomainError("nakagami_pdf: m must be a positive integer");
    if (!(mean > 0.0)) throw DomainError("nakagami_pdf: mean must be > 0");
    if (gamma < 0.0) return 0.0;
    if (gamma == 0.0) return m == 1 ? 1.0 / mean : 0.0;
    const double r = m / mean;
    return std::exp((m - 1) * std::log(gamma) + m * std::log(r) - r * gamma) /
           specfun::gamma_int(m);
}

double sample_power_gain(int m, double mean, CounterRng& rng) {
    if (m < 1) throw DomainError("sample_power_gain: m must be a positive integer");
    if (!(mean > 0.0)) throw DomainError("sample_power_gain: mean must be > 0");
    return rng.next_gamma_int(m, mean / m);
}

double sample_power_gain(int m, double mean, std::uint64_t seed) {
    CounterRng rng(seed);
    return sample_power_gain(m, mean, rng);
}

std::complex<double> char_fn(const SinrModel& model, const hop::JamProfile& profile,
                             double w) {
    model.validate(profile);
    const std::complex<long double> z(0.0L, static_cast<long double>(w));
    std::complex<long double> acc(1.0L, 0.0L);
    const long double m = model.m;
    auto hop_factor = [&](long double mean) {
        std::complex<long double> f = m / (m - z * mean);
        std::complex<long double> p(1.0L, 0.0L);
        for (int i = 0; i < model.m; ++i) p *= f;
        return p;
    };
    for (int u = 0; u < model.hops - profile.jammed; ++u) acc *= hop_factor(model.snr);
    for (double d : model.jammed_snr) acc *= hop_factor(static_cast<long double>(d));
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

specfun::RationalPoleSum decompose_cf(const SinrModel& model,
                                      const hop::JamProfile& profile) {
    model.validate(profile);
    // Merge hops with identical means into one pole of summed multiplicity.
    std::map<double, int> mult;
    if (model.hops > profile.jammed) {
        mult[model.m / model.snr] += model.m * (model.hops - profile.jammed);
    }
    for (double d : model.jammed_snr) mult[model.m / d] += model.m;

    std::vector<specfun::PoleFactor> poles;
    poles.reserve(mult.size());
    long double scale = 1.0L;
    for (const auto& [loc, mm] : mult) {
        poles.push_back({loc, mm});
        long double p = 1.0L;
        for (int i = 0; i < mm; ++i) p *= loc;
        scale *= p;
    }
    specfun::RationalPoleSum sum = specfun::partial_fractions(poles);
    sum.scale = scale;
    return sum;
}

double pdf_pole_sum(const specfun::RationalPoleSum& cf, double gamma) {
    if (gamma < 0.0) return 0.0;
    const long double g = gamma;
    long double acc = 0.0L;
    for (const specfun::PoleTerm& t : cf.terms) {
        long double kernel;
        if (g == 0.0L) {
            kernel = (t.order == 1) ? 1.0L : 0.0L;
        } else {
            kernel = std::exp((t.order - 1) * std::log(g) - t.pole * g);
        }
        acc += t.coeff * kernel / specfun::gamma_int_l(t.order);
    }
    return static_cast<double>(acc * cf.scale);
}

double cdf_pole_sum(const specfun::RationalPoleSum& cf, double gamma) {
    if (gamma <= 0.0) return 0.0;
    const long double g = gamma;
    long double acc = 0.0L;
    for (const specfun::PoleTerm& t : cf.terms) {
        // Regularized lower incomplete gamma at integer shape r:
        //   P(r, x) = 1 - e^-x sum_{i<r} x^i/i!.
        const long double x = t.pole * g;
        long double tail = 0.0L, term = 1.0L;
        for (int i = 0; i < t.order; ++i) {
            if (i > 0) term *= x / i;
            tail += term;
        }
        const long double p_reg = 1.0L - std::exp(static_cast<double>(-x)) * tail;
        long double pole_pow = 1.0L;
        for (int i = 0; i < t.order; ++i) pole_pow *= t.pole;
        acc += t.coeff * p_reg / pole_pow;
    }
    return static_cast<double>(acc * cf.scale);
}

double mean_pole_sum(const specfun::RationalPoleSum& cf) {
    long double acc = 0.0L;
    for (const specfun::PoleTerm& t : cf.terms) {
        long double pole_pow = 1.0L;
        for (int i = 0; i <= t.order; ++i) pole_pow *= t.pole;
        acc += t.coeff * t.order / pole_pow;
    }
    return static_cast<double>(acc * cf.scale);
}

double pdf_combined(const SinrModel& model, const hop::JamProfile& profile, double gamma) {
    return pdf_pole_sum(decompose_cf(model, profile), gamma);
}

} // namespace vortexhop::fading
