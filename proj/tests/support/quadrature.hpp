#pragma once

// Test-only adaptive Simpson quadrature. Lives in the tests so the oracles
// stay independent of the library's closed-form evaluation paths.

#include <cmath>
#include <complex>
#include <functional>

namespace testsupport {

namespace detail {

template <typename V>
V simpson(const std::function<V(double)>& f, double a, double b, V fa, V fm, V fb) {
    return (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
}

template <typename V>
V adapt(const std::function<V(double)>& f, double a, double b, V fa, V fm, V fb, V whole,
        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const V flm = f(lm), frm = f(rm);
    const V left = simpson(f, a, m, fa, flm, fm);
    const V right = simpson(f, m, b, fm, frm, fb);
    const V delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace detail

// Pre-splits into uniform panels before adapting: a single Simpson seed can
// miss a narrow peak (or a fast oscillation) entirely and terminate early.
template <typename V = double>
V integrate(const std::function<V(double)>& f, double a, double b, double tol = 1e-12,
            int depth = 40, int panels = 64) {
    V total{};
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + h * i;
        const double hi = i + 1 == panels ? b : lo + h;
        const V fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
        const V whole = detail::simpson(f, lo, hi, fa, fm, fb);
        total += detail::adapt(f, lo, hi, fa, fm, fb, whole, tol / panels, depth);
    }
    return total;
}

inline std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                              double a, double b, double tol = 1e-12,
                                              int panels = 256) {
    const std::function<double(double)> re = [&](double x) { return f(x).real(); };
    const std::function<double(double)> im = [&](double x) { return f(x).imag(); };
    return {integrate(re, a, b, tol, 40, panels), integrate(im, a, b, tol, 40, panels)};
}

} // namespace testsupport
