#pragma once

// Radial (shear) resonances of a circular plate, f_n = v_s * j0n / (pi d),
// and the inverse-diameter regression used to estimate v_s from measured
// lowest resonances. Independent of the 1D circuit model.

#include "paik/spectrum.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace paik {

/// First `count` positive zeros of J0, Newton-polished to |J0| < 1e-12.
std::vector<double> bessel_j0_roots(std::size_t count);

struct RadialMode {
    std::size_t n = 0;
    double j0n = 0.0;
    double f_hz = 0.0;
};

struct RadialModeSet {
    double diameter = 0.0;
    double v_shear = 0.0;
    std::vector<RadialMode> modes;
};

RadialModeSet radial_modes(double diameter, double v_shear, std::size_t count);

struct ResonancePoint {
    double diameter = 0.0;  // m
    double f_lowest = 0.0;  // Hz
};

struct InverseDiameterFit {
    double slope = 0.0;      // Hz*m
    double intercept = 0.0;  // Hz
    double r_squared = 0.0;
};

/// Ordinary least squares of f_lowest against 1/diameter.
InverseDiameterFit fit_inverse_diameter(const std::vector<ResonancePoint>& points);

/// -6 dB centre of the strongest peak of |spectrum| inside [lo, hi].
double lowest_resonance(const Spectrum& spectrum, double lo, double hi);

/// Lowest radial resonances for each diameter with multiplicative Gaussian
/// jitter of relative standard deviation `jitter`. Deterministic for a seed.
std::vector<ResonancePoint> synthetic_resonance_scan(const std::vector<double>& diameters, double v_shear,
                                                     double jitter, std::uint64_t seed);

}  // namespace paik
