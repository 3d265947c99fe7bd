#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rydpulse {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Ordinary frequency in MHz -> angular frequency in rad/us.
inline double mhz(double f) { return two_pi * f; }

/// Angular frequency in rad/us -> ordinary frequency in MHz.
inline double to_mhz(double w) { return w / two_pi; }

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a > pi) a -= two_pi;
    if (a <= -pi) a += two_pi;
    return a;
}

/// Zeeman half-splitting of the Rydberg F=3/2 doublet: 2*Delta ~ 2pi x 1.9 MHz/G.
inline double b_field_to_delta(double b_gauss) {
    if (b_gauss < 0.0) throw std::invalid_argument("b_field_to_delta: negative field");
    return pi * 1.9 * b_gauss;  // rad/us
}

}  // namespace rydpulse
