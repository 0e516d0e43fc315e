#pragma once

#include <complex>

namespace vortexhop::chan {

// UCA-to-UCA link geometry. The far-field substitutions used throughout
// (|d - r_n| ~ d for amplitudes, d - R sin(theta) cos(phi_n) for phases)
// need distance >> radius; validate() enforces distance >= 10 * radius.
struct UcaGeometry {
    int elements = 16;        // N array elements on the transmit circle
    double radius = 0.5;      // R [m]
    double distance = 100.0;  // d [m]
    double off_axis = 0.0;    // theta [rad], in [0, pi/2)
    double wavelength = 0.1;  // lambda [m]
    std::complex<double> beta{1.0, 0.0}; // lumped antenna/attenuation constant

    // Receiver azimuth phi. It only ever multiplies gains by a unit-modulus
    // factor (every SNR consumes |h|^2), so 0 is the working default.
    double rx_azimuth = 0.0;
    // Whether exp(j*phi*l) is carried inside the closed-form gain or left to
    // the de-hopping stage. Both conventions agree on |h| and on everything
    // downstream; the default keeps the factor in the gain so that the
    // closed form is the exact N->infinity limit of the direct sum.
    bool azimuth_phase_in_gain = true;

    void validate() const; // throws DomainError
};

// Admissible vortex mode index: -N/2 < l <= N/2.
bool mode_admissible(int mode, int elements);

// Element angular position 2*pi*(n-1)/N, n in [1, N].
double element_phase_position(int n, int elements);

// Far-field pathloss of element n seen from the receiver:
//   beta * lambda/(4 pi d) * exp(-j 2 pi (d - R sin(theta) cos(pos)) / lambda)
// where `phase_position` is the element's angular position on the circle.
std::complex<double> pathloss_element(const UcaGeometry& geom, int n, double phase_position);

// Finite-N channel amplitude gain of mode l: the element sum of pathlosses
// weighted by the progressive feed phases exp(j 2 pi (n-1) l / N).
std::complex<double> gain_direct(const UcaGeometry& geom, int mode);

// Closed-form N->infinity limit, normalized to include the factor N:
//   beta lambda N j^l / (4 pi d) * exp(-j 2 pi d / lambda) * exp(j phi l)
//     * J_l(2 pi R sin(theta) / lambda).
std::complex<double> gain_closed(const UcaGeometry& geom, int mode);

} // namespace vortexhop::chan
