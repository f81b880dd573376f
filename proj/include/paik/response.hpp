#pragma once

#include "paik/model.hpp"
#include "paik/spectrum.hpp"

#include <Eigen/Dense>

namespace paik {

struct ResponseOptions {
    bool pressure_referred = true;  // V/Pa; false gives V/N
};

/// H2 sampled on the grid. Grid points where a chain factor is singular are
/// nudged by 1e-6 of the bin width (recorded as warnings); a grid reaching
/// DC or below is clamped to start one bin above zero.
Spectrum frequency_response(const ReadoutChain& chain, FrequencyGrid grid, const ResponseOptions& options = {},
                            Diagnostics* diagnostics = nullptr);

/// Evaluates fn(omega) at f, nudging off singular points. Returns the frequency used.
double nudged_frequency(const ReadoutChain& chain, double f, double bin_width, Diagnostics* diagnostics);

struct Waveform {
    double dt = 0.0;
    Eigen::ArrayXd samples;
    double imag_residue = 0.0;  // max |Im| before it was discarded, absolute

    Eigen::Index size() const { return samples.size(); }
};

/// Real impulse response of a one-sided spectrum sampled at f_k = k * df, k = 1..n.
/// DC is set to zero, the spectrum is zero-padded to fs/2, the Nyquist bin is made
/// real, and the Hermitian extension is inverse transformed. Samples are scaled by
/// fs so they approximate the continuous impulse response (units of H times Hz).
Waveform impulse_response(const Spectrum& spectrum, double fs);

/// Impulse response of the chain at sample rate fs. The record length starts at
/// min_samples and doubles until the last 10% of the record holds < 5% of the energy.
Waveform chain_impulse_response(const ReadoutChain& chain, double fs, std::size_t min_samples = 1024,
                                const ResponseOptions& options = {}, Diagnostics* diagnostics = nullptr);

/// Fraction of waveform energy contained in the last 10% of the record.
double tail_energy_fraction(const Waveform& waveform);

struct BandMetrics {
    double f_lo = 0.0;
    double f_hi = 0.0;
    double bandwidth = 0.0;
    double f_center = 0.0;
    double level_db = -6.0;
    // Everything above the threshold, including side lobes split from the main band.
    double support_lo = 0.0;
    double support_hi = 0.0;
    double support_width = 0.0;
};

/// Band edges where |H| crosses peak * 10^(level/20) on either side of the global
/// peak, linearly interpolated between bins. Throws BandUnbounded when the grid
/// ends before a crossing.
BandMetrics band_metrics(const Spectrum& spectrum, double level_db = -6.0);

}  // namespace paik
