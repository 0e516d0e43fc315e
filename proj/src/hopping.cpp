#include "vortexhop/hopping.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "vortexhop/errors.hpp"
#include "vortexhop/rng.hpp"
#include "vortexhop/specfun.hpp"

namespace vortexhop::hop {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::MH: return "MH";
        case Scheme::FH: return "FH";
        default: return "MFH";
    }
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "MH") return Scheme::MH;
    if (name == "FH") return Scheme::FH;
    if (name == "MFH") return Scheme::MFH;
    throw ValidationError("scheme: expected MH, FH or MFH, got '" + name + "'");
}

void CollisionModel::validate() const {
    if (modes < 1) throw DomainError("CollisionModel: modes must be >= 1");
    if (bands < 1) throw DomainError("CollisionModel: bands must be >= 1");
    if (interferers < 0) throw DomainError("CollisionModel: interferers must be >= 0");
    if (hops < 1) throw DomainError("CollisionModel: hops must be >= 1");
}

std::string HopPattern::dump() const {
    std::ostringstream out;
    for (std::size_t u = 0; u < hops.size(); ++u) {
        out << (u + 1);
        if (hops[u].mode) out << ',' << *hops[u].mode;
        if (hops[u].band) out << ',' << *hops[u].band;
        out << '\n';
    }
    return out.str();
}

JamProfile JamProfile::from_counts(std::vector<int> counts) {
    JamProfile p;
    std::sort(counts.begin(), counts.end(), std::greater<int>());
    p.jammed = static_cast<int>(counts.size());
    p.counts = std::move(counts);
    if (p.jammed == 0) return p;

    std::map<int, int> freq;
    for (int d : p.counts) ++freq[d];
    int best_count = 0, best_freq = 0;
    for (const auto& [value, f] : freq) {
        if (f > best_freq || (f == best_freq && value > best_count)) {
            best_freq = f;
            best_count = value;
        }
    }
    if (best_freq > 1) {
        p.shared_count = best_count;
        p.shared_hops = best_freq;
    } // all counts distinct -> a = 0, no shared value
    // Conforming: the counts outside the shared group are pairwise distinct.
    std::map<int, int> rest;
    for (int d : p.counts) {
        if (d != p.shared_count || p.shared_hops == 0) ++rest[d];
    }
    p.conforming = std::all_of(rest.begin(), rest.end(),
                               [](const auto& kv) { return kv.second == 1; });
    return p;
}

namespace {

// Draw a vortex mode uniformly from the N admissible values in (-N/2, N/2].
int draw_mode(CounterRng& rng, int modes) {
    const int lo = -(modes - 1) / 2; // N values: lo .. lo+N-1
    return lo + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(modes)));
}

// Binomial(k, p) pmf at d through log-gamma, so large interferer counts do
// not overflow the exact integer binomial.
double binom_weight(int k, int d, double p) {
    if (p <= 0.0) return d == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return d == k ? 1.0 : 0.0;
    const long double lw = std::lgamma(static_cast<long double>(k + 1)) -
                           std::lgamma(static_cast<long double>(d + 1)) -
                           std::lgamma(static_cast<long double>(k - d + 1)) +
                           d * std::log(static_cast<long double>(p)) +
                           (k - d) * std::log1p(static_cast<long double>(-p));
    return static_cast<double>(std::exp(lw));
}

} // namespace

HopPattern gen_pattern(std::uint64_t seed, Scheme scheme, const CollisionModel& model,
                       int hops) {
    model.validate();
    if (hops < 1) throw DomainError("gen_pattern: hops must be >= 1");
    HopPattern pattern;
    pattern.hops.resize(static_cast<std::size_t>(hops));
    for (int u = 0; u < hops; ++u) {
        CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(u));
        Hop& h = pattern.hops[static_cast<std::size_t>(u)];
        if (scheme != Scheme::FH) h.mode = draw_mode(rng, model.modes);
        if (scheme != Scheme::MH) {
            h.band = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(model.bands)));
        }
    }
    return pattern;
}

double collision_prob(const CollisionModel& model, Scheme scheme) {
    model.validate();
    switch (scheme) {
        case Scheme::MH: return 1.0 / model.modes;
        case Scheme::FH: return 1.0 / model.bands;
        default: return 1.0 / (static_cast<double>(model.modes) * model.bands);
    }
}

double p_clear(const CollisionModel& model, double collision_p) {
    model.validate();
    if (!(collision_p >= 0.0 && collision_p <= 1.0)) {
        throw DomainError("p_clear: collision probability must lie in [0, 1]");
    }
    return std::pow(1.0 - collision_p, static_cast<double>(model.interferers) * model.hops);
}

double p_jam_given(const CollisionModel& model, int jammed, double collision_p) {
    model.validate();
    if (jammed < 1 || jammed > model.hops) {
        throw DomainError("p_jam_given: jammed hop count out of [1, hops]");
    }
    if (!(collision_p >= 0.0 && collision_p <= 1.0)) {
        throw DomainError("p_jam_given: collision probability must lie in [0, 1]");
    }
    const double q = std::pow(1.0 - collision_p, model.interferers); // hop stays clear
    return static_cast<double>(specfun::binomial(model.hops, jammed)) *
           std::pow(q, model.hops - jammed) * std::pow(1.0 - q, jammed);
}

double p_jam_given_literal(const CollisionModel& model, int jammed, double collision_p) {
    model.validate();
    if (jammed < 1 || jammed > model.hops) {
        throw DomainError("p_jam_given_literal: jammed hop count out of [1, hops]");
    }
    const int k = model.interferers;
    if (k == 0) return 0.0;
    if (std::pow(static_cast<double>(k), jammed) > 1e7) {
        throw SizeError("p_jam_given_literal: K^V exceeds the 1e7 enumeration guard");
    }
    // Per-hop binomial weights for D = 1..K.
    std::vector<double> w(static_cast<std::size_t>(k) + 1, 0.0);
    for (int d = 1; d <= k; ++d) {
        w[static_cast<std::size_t>(d)] = binom_weight(k, d, collision_p);
    }
    // Nested V-fold sum over ordered assignments (D_1..D_V).
    double inner = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(jammed), 1);
    while (true) {
        double prod = 1.0;
        for (int v = 0; v < jammed; ++v) prod *= w[static_cast<std::size_t>(idx[v])];
        inner += prod;
        int pos = jammed - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k) {
            idx[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    return static_cast<double>(specfun::binomial(model.hops, jammed)) *
           std::pow(1.0 - collision_p,
                    static_cast<double>(k) * (model.hops - jammed)) *
           inner;
}

std::vector<std::pair<JamProfile, double>> enumerate_profiles(const CollisionModel& model,
                                                              int jammed,
                                                              double collision_p) {
    model.validate();
    if (jammed < 0 || jammed > model.hops) {
        throw DomainError("enumerate_profiles: jammed hop count out of [0, hops]");
    }
    std::vector<std::pair<JamProfile, double>> out;
    if (jammed == 0) {
        // Sentinel: the single no-jam profile. Its probability weight p(U)
        // is applied by the caller, so it is reported with weight 1.
        out.emplace_back(JamProfile{}, 1.0);
        return out;
    }
    const int k = model.interferers;
    if (k == 0) return out;

    std::vector<double> w(static_cast<std::size_t>(k) + 1, 0.0);
    for (int d = 1; d <= k; ++d) {
        w[static_cast<std::size_t>(d)] = binom_weight(k, d, collision_p);
    }
    const double outer = static_cast<double>(specfun::binomial(model.hops, jammed)) *
                         std::pow(1.0 - collision_p,
                                  static_cast<double>(k) * (model.hops - jammed));

    // Enumerate multisets as non-increasing tuples; the number of ordered
    // arrangements is V! / prod(freq!).
    std::vector<int> counts(static_cast<std::size_t>(jammed), k);
    const double guard = 1e7;
    while (true) {
        if (static_cast<double>(out.size()) > guard) {
            throw SizeError("enumerate_profiles: profile count exceeds the 1e7 guard");
        }
        double prob = outer;
        for (int d : counts) prob *= w[static_cast<std::size_t>(d)];
        long double arrangements = specfun::gamma_int_l(jammed + 1);
        int run = 1;
        for (std::size_t i = 1; i <= counts.size(); ++i) {
            if (i < counts.size() && counts[i] == counts[i - 1]) {
                ++run;
            } else {
                arrangements /= specfun::gamma_int_l(run + 1);
                run = 1;
            }
        }
        prob *= static_cast<double>(arrangements);
        out.emplace_back(JamProfile::from_counts(counts), prob);

        // Next non-increasing tuple in descending lexicographic order.
        int pos = jammed - 1;
        while (pos >= 0 && counts[static_cast<std::size_t>(pos)] == 1) --pos;
        if (pos < 0) break;
        const int next = counts[static_cast<std::size_t>(pos)] - 1;
        for (int i = pos; i < jammed; ++i) counts[static_cast<std::size_t>(i)] = next;
    }
    return out;
}

} // namespace vortexhop::hop
