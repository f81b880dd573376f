#pragma once

// Output noise at the receiver input node: Johnson noise of the chain source
// impedance and of the receiver, plus an uncorrelated white e_n / i_n amplifier.

#include "paik/model.hpp"
#include "paik/spectrum.hpp"

#include <complex>

namespace paik {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

struct NoiseComponents {
    Spectrum source_thermal;
    Spectrum receiver_thermal;
    Spectrum amp_voltage;
    Spectrum amp_current;
};

struct NoiseBudget {
    Spectrum psd;  // V^2/Hz, real-valued
    double band_avg = 0.0;  // V^2/Hz, trapezoidal mean over the grid
    double band_lo = 0.0;
    double band_hi = 0.0;
    NoiseComponents components;
};

/// Per-bin noise densities (V^2/Hz) for a source impedance zs driving a receiver zr.
struct NoiseDensities {
    double source_thermal = 0.0;
    double receiver_thermal = 0.0;
    double amp_voltage = 0.0;
    double amp_current = 0.0;

    double total() const { return source_thermal + receiver_thermal + amp_voltage + amp_current; }
};

NoiseDensities noise_densities(std::complex<double> zs, std::complex<double> zr, double temperature_k,
                               const AmpNoise& amp);

NoiseBudget noise_psd(const ReadoutChain& chain, const FrequencyGrid& grid, double temperature_k = 293.0,
                      Diagnostics* diagnostics = nullptr);

/// Integral of a real-valued spectrum over [lo, hi] by the trapezoid rule, with
/// linear interpolation at partial bins.
double integrate(const Spectrum& spectrum, double lo, double hi);

struct Excitation {
    enum class Shape { flat, tone };

    double pressure_pa = 1.0;
    Shape shape = Shape::flat;
    double tone_hz = 0.0;  // used when shape == tone
};

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

/// Peak signal amplitude over rms noise in the band. Flat excitation takes the
/// peak of |H2| (V/Pa) in the band; tone excitation takes |H2| at the tone.
double snr(const ReadoutChain& chain, const Excitation& excitation, Band band, std::size_t n_points = 2001,
           double temperature_k = 293.0, Diagnostics* diagnostics = nullptr);

}  // namespace paik
