#include "vortexhop/rng.hpp"

#include <cmath>

namespace vortexhop {

double CounterRng::next_exp(double mean) { return -mean * std::log(next_unit_pos()); }

double CounterRng::next_gamma_int(int shape, double scale) {
    // Product of uniforms keeps this to one log per draw.
    double prod = 1.0;
    for (int i = 0; i < shape; ++i) prod *= next_unit_pos();
    return -scale * std::log(prod);
}

std::pair<double, double> CounterRng::next_gaussian_pair() {
    const double u = next_unit_pos();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.283185307179586476925286766559 * v;
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace vortexhop
