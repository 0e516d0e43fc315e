#include "vortexhop/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vortexhop/errors.hpp"

namespace vortexhop::specfun {

namespace {

// x^n for integer n >= 0 by binary exponentiation; avoids powl() corner
// cases with negative bases.
long double ipow(long double x, int n) {
    long double r = 1.0L;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

} // namespace

long double gamma_int_l(int n) {
    if (n <= 0) {
        throw DomainError("gamma_int: argument must be a positive integer, got " +
                          std::to_string(n));
    }
    long double acc = 1.0L;
    for (int i = 2; i < n; ++i) acc *= static_cast<long double>(i);
    if (!std::isfinite(static_cast<double>(acc))) {
        throw DomainError("gamma_int: (" + std::to_string(n) + "-1)! overflows double");
    }
    return acc;
}

double gamma_int(int n) { return static_cast<double>(gamma_int_l(n)); }

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw DomainError("binomial: negative argument");
    if (k > n) {
        throw DomainError("binomial: k > n (" + std::to_string(k) + " > " +
                          std::to_string(n) + ")");
    }
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        // acc * (n-k+i) / i is always integral at this point; the 128-bit
        // intermediate keeps every uint64-representable result exact.
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw DomainError("binomial: C(" + std::to_string(n) + "," +
                              std::to_string(k) + ") overflows uint64");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

double c_coeff(int v1, int hops) {
    if (hops < 1) throw DomainError("c_coeff: hops must be >= 1");
    if (v1 < 0 || v1 >= hops) {
        throw DomainError("c_coeff: require 0 <= v1 < hops, got v1=" +
                          std::to_string(v1) + ", hops=" + std::to_string(hops));
    }
    long double sum = 0.0L;
    for (int v2 = 0; v2 <= hops - v1 - 1; ++v2) {
        sum += static_cast<long double>(binomial(2 * hops - 1, v2));
    }
    return static_cast<double>(sum / gamma_int_l(v1 + 1));
}

namespace {

// Ascending series: J_l(x) = sum_k (-1)^k (x/2)^(2k+l) / (k! (k+l)!), l >= 0.
long double bessel_series(int l, long double x) {
    const long double half = x / 2.0L;
    // First term (x/2)^l / l! via logs when it would underflow the direct
    // product; for the l, x ranges used here the direct product is exact
    // enough and cheaper.
    long double term;
    if (l < 40) {
        term = 1.0L;
        for (int i = 1; i <= l; ++i) term *= half / static_cast<long double>(i);
    } else {
        long double lt = l * std::log(static_cast<double>(half)) -
                         std::lgamma(static_cast<double>(l) + 1.0);
        if (lt < -11300.0L) return 0.0L;
        term = std::exp(static_cast<double>(lt));
    }
    long double sum = term;
    const long double x2 = half * half;
    for (int k = 0; k < 400; ++k) {
        term *= -x2 / (static_cast<long double>(k + 1) * static_cast<long double>(k + 1 + l));
        sum += term;
        if (std::abs(term) < 1e-22L * (std::abs(sum) + 1e-30L)) break;
    }
    return sum;
}

// Miller's downward recurrence, normalized with J_0 + 2*sum_k J_{2k} = 1.
long double bessel_miller(int l, long double x) {
    const int base = std::max(l, static_cast<int>(x));
    int start = base + 40 + static_cast<int>(2.5 * std::sqrt(static_cast<double>(base)));
    start += start & 1; // even start keeps the normalization bookkeeping simple
    const long double tox = 2.0L / x;

    long double bjp = 0.0L;      // J_{k+1}
    long double bj = 1e-300L;    // J_k (arbitrary tiny seed)
    long double norm = 0.0L;
    long double result = 0.0L;
    for (int k = start; k >= 1; --k) {
        long double bjm = static_cast<long double>(k) * tox * bj - bjp;
        bjp = bj;
        bj = bjm;
        if (std::abs(bj) > 1e280L) { // rescale to dodge overflow
            bj *= 1e-280L;
            bjp *= 1e-280L;
            norm *= 1e-280L;
            result *= 1e-280L;
        }
        if (((k - 1) & 1) == 0 && k - 1 > 0) norm += bj;
        if (k - 1 == l) result = bj;
    }
    norm = 2.0L * norm + bj; // bj now holds J_0
    if (l == 0) result = bj;
    return result / norm;
}

} // namespace

double bessel_j(int order, double x) {
    if (!std::isfinite(x) || std::abs(x) >= 1e6) {
        throw DomainError("bessel_j: |x| must be finite and < 1e6");
    }
    int l = order;
    double sign = 1.0;
    if (x < 0.0) { // J_l(-x) = (-1)^l J_l(x)
        x = -x;
        if (l & 1) sign = -sign;
    }
    if (l < 0) { // J_{-l}(x) = (-1)^l J_l(x)
        l = -l;
        if (l & 1) sign = -sign;
    }
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;
    if (x <= 15.0) return sign * static_cast<double>(bessel_series(l, x));
    return sign * static_cast<double>(bessel_miller(l, x));
}

std::complex<double> RationalPoleSum::evaluate(std::complex<double> z) const {
    std::complex<long double> zl(z.real(), z.imag());
    std::complex<long double> acc(0.0L, 0.0L);
    for (const PoleTerm& t : terms) {
        std::complex<long double> den = std::pow(t.pole - zl, t.order);
        acc += t.coeff / den;
    }
    acc *= scale;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

RationalPoleSum partial_fractions(std::span<const PoleFactor> poles) {
    if (poles.empty()) throw DomainError("partial_fractions: empty pole list");
    for (const PoleFactor& p : poles) {
        if (!(p.location > 0.0) || !std::isfinite(p.location)) {
            throw DomainError("partial_fractions: pole locations must be strictly positive");
        }
        if (p.multiplicity < 1) {
            throw DomainError("partial_fractions: multiplicities must be >= 1");
        }
    }
    for (std::size_t i = 0; i < poles.size(); ++i) {
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (poles[i].location == poles[j].location) {
                throw DomainError("partial_fractions: duplicate pole location " +
                                  std::to_string(poles[i].location) +
                                  "; merge multiplicities before calling");
            }
        }
    }

    RationalPoleSum out;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const long double pi = poles[i].location;
        const int mi = poles[i].multiplicity;

        // Taylor derivatives of the deflated product
        //   f(z) = prod_{k != i} (p_k - z)^(-m_k)
        // at z = p_i, via Leibniz on f' = f * b0 where
        //   b_s(z) = d^s/dz^s sum_k m_k / (p_k - z) = sum_k m_k s! / (p_k - z)^(s+1).
        std::vector<long double> deriv(static_cast<std::size_t>(mi), 0.0L);
        long double f0 = 1.0L;
        for (std::size_t k = 0; k < poles.size(); ++k) {
            if (k == i) continue;
            f0 *= ipow(1.0L / (static_cast<long double>(poles[k].location) - pi),
                       poles[k].multiplicity);
        }
        deriv[0] = f0;
        if (mi > 1) {
            std::vector<long double> b(static_cast<std::size_t>(mi - 1), 0.0L);
            for (int s = 0; s < mi - 1; ++s) {
                long double fact = 1.0L;
                for (int q = 2; q <= s; ++q) fact *= q;
                long double acc = 0.0L;
                for (std::size_t k = 0; k < poles.size(); ++k) {
                    if (k == i) continue;
                    acc += poles[k].multiplicity *
                           ipow(1.0L / (static_cast<long double>(poles[k].location) - pi),
                                s + 1);
                }
                b[static_cast<std::size_t>(s)] = fact * acc;
            }
            for (int r = 0; r + 1 < mi; ++r) {
                long double acc = 0.0L;
                long double binom = 1.0L; // C(r, t), updated incrementally
                for (int t = 0; t <= r; ++t) {
                    acc += binom * deriv[static_cast<std::size_t>(t)] *
                           b[static_cast<std::size_t>(r - t)];
                    binom = binom * static_cast<long double>(r - t) /
                            static_cast<long double>(t + 1);
                }
                deriv[static_cast<std::size_t>(r + 1)] = acc;
            }
        }

        long double jfact = 1.0L;
        for (int j = 1; j <= mi; ++j) {
            if (j > 1) jfact *= static_cast<long double>(j - 1);
            long double a = deriv[static_cast<std::size_t>(j - 1)] / jfact;
            if ((j - 1) & 1) a = -a; // expansion variable is (p_i - z), not (z - p_i)
            out.terms.push_back(PoleTerm{pi, mi - j + 1, a});
        }
    }
    return out;
}

} // namespace vortexhop::specfun
