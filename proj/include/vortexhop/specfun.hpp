#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace vortexhop::specfun {

// Gamma at a positive integer argument: gamma_int(n) = (n-1)!.
// Exact through n = 21; computed as a correctly rounded long double product
// beyond that. Throws DomainError for n <= 0 (poles / non-integers are out
// of scope for this library).
double gamma_int(int n);
long double gamma_int_l(int n);

// Exact binomial coefficient C(n, k). Throws DomainError for k > n or
// negative arguments, and on uint64 overflow.
std::uint64_t binomial(int n, int k);

// Series coefficient of the noncoherent EGC conditional error probability:
// c(v1) = (1/v1!) * sum_{v2=0}^{hops-v1-1} C(2*hops-1, v2), 0 <= v1 < hops.
double c_coeff(int v1, int hops);

// Bessel function of the first kind, integer order. Ascending power series
// for |x| <= 15, Miller downward recurrence above. Satisfies
// bessel_j(-l, x) = (-1)^l bessel_j(l, x); absolute error <= 1e-12 for
// |x| <= 100. Precondition |x| < 1e6.
double bessel_j(int order, double x);

// One factor (location - z)^(-multiplicity) of a rational product.
struct PoleFactor {
    double location;
    int multiplicity;
};

// One term coeff / (pole - z)^order of a decomposed rational function.
struct PoleTerm {
    long double pole;
    int order;
    long double coeff;
};

// scale * sum_i coeff_i / (pole_i - z)^order_i. Long double storage: the
// coefficients of nearly coincident poles cancel heavily and the extra
// mantissa keeps the downstream BER sums inside their tolerances.
struct RationalPoleSum {
    std::vector<PoleTerm> terms;
    long double scale = 1.0L;

    std::complex<double> evaluate(std::complex<double> z) const;
};

// Partial-fraction decomposition of prod_i (p_i - z)^(-m_i):
//
//   prod_i (p_i - z)^(-m_i) = sum_i sum_{j=1}^{m_i} A_ij / (p_i - z)^(m_i-j+1)
//
// with A_ij obtained by exact recursive differentiation of the deflated
// product prod_{k != i} (p_k - z)^(-m_k) at z = p_i (no numerical
// differencing). Expanding in powers of (p_i - z) rather than (z - p_i)
// contributes the (-1)^(j-1) sign on odd derivative orders.
//
// Preconditions: every location strictly positive and finite, multiplicities
// >= 1, locations pairwise distinct (callers merge duplicates first).
RationalPoleSum partial_fractions(std::span<const PoleFactor> poles);

} // namespace vortexhop::specfun
