#include "vortexhop/chan.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vortexhop/errors.hpp"
#include "vortexhop/specfun.hpp"

namespace vortexhop::chan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// j^l for integer l (possibly negative).
std::complex<double> jpow(int l) {
    switch (((l % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

void UcaGeometry::validate() const {
    if (elements < 2) throw DomainError("UcaGeometry: need at least 2 array elements");
    if (!(radius > 0.0)) throw DomainError("UcaGeometry: radius must be > 0");
    if (!(wavelength > 0.0)) throw DomainError("UcaGeometry: wavelength must be > 0");
    if (!(distance >= 10.0 * radius)) {
        throw DomainError("UcaGeometry: far-field model needs distance >= 10*radius");
    }
    if (!(off_axis >= 0.0) || off_axis >= std::numbers::pi / 2.0) {
        throw DomainError("UcaGeometry: off_axis angle must lie in [0, pi/2)");
    }
}

bool mode_admissible(int mode, int elements) {
    return 2 * mode > -elements && 2 * mode <= elements;
}

double element_phase_position(int n, int elements) {
    return kTwoPi * static_cast<double>(n - 1) / static_cast<double>(elements);
}

std::complex<double> pathloss_element(const UcaGeometry& geom, int n, double phase_position) {
    geom.validate();
    if (n < 1 || n > geom.elements) {
        throw DomainError("pathloss_element: element index out of range: " + std::to_string(n));
    }
    const double amp = geom.wavelength / (4.0 * std::numbers::pi * geom.distance);
    const double projection =
        geom.radius * std::sin(geom.off_axis) * std::cos(phase_position - geom.rx_azimuth);
    const double phase = -kTwoPi * (geom.distance - projection) / geom.wavelength;
    return geom.beta * amp * std::polar(1.0, phase);
}

std::complex<double> gain_direct(const UcaGeometry& geom, int mode) {
    geom.validate();
    if (!mode_admissible(mode, geom.elements)) {
        throw DomainError("gain_direct: mode " + std::to_string(mode) +
                          " not admissible for " + std::to_string(geom.elements) + " elements");
    }
    std::complex<double> acc{0.0, 0.0};
    for (int n = 1; n <= geom.elements; ++n) {
        const double pos = element_phase_position(n, geom.elements);
        acc += pathloss_element(geom, n, pos) * std::polar(1.0, pos * mode);
    }
    return acc;
}

std::complex<double> gain_closed(const UcaGeometry& geom, int mode) {
    geom.validate();
    if (!mode_admissible(mode, geom.elements)) {
        throw DomainError("gain_closed: mode " + std::to_string(mode) +
                          " not admissible for " + std::to_string(geom.elements) + " elements");
    }
    const double x = kTwoPi * geom.radius * std::sin(geom.off_axis) / geom.wavelength;
    const double amp =
        geom.wavelength * geom.elements / (4.0 * std::numbers::pi * geom.distance);
    std::complex<double> out = geom.beta * amp * jpow(mode) *
                               std::polar(1.0, -kTwoPi * geom.distance / geom.wavelength) *
                               specfun::bessel_j(mode, x);
    if (geom.azimuth_phase_in_gain && geom.rx_azimuth != 0.0) {
        out *= std::polar(1.0, geom.rx_azimuth * mode);
    }
    return out;
}

} // namespace vortexhop::chan
