#include "paik/noise.hpp"

#include "paik/errors.hpp"
#include "paik/parallel.hpp"
#include "paik/response.hpp"
#include "paik/transfer.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace paik {

NoiseDensities noise_densities(std::complex<double> zs, std::complex<double> zr, double temperature_k,
                               const AmpNoise& amp) {
    const double four_kt = 4.0 * kBoltzmann * temperature_k;
    const std::complex<double> sum = zs + zr;
    if (std::abs(sum) == 0.0) throw Singularity("source and receiver impedances cancel", 0.0, "noise");
    const std::complex<double> zeq = zs * zr / sum;
    NoiseDensities d;
    d.source_thermal = four_kt * std::max(zs.real(), 0.0) * std::norm(zr / sum);
    d.receiver_thermal = four_kt * std::max(zr.real(), 0.0) * std::norm(zs / sum);
    d.amp_voltage = amp.e_n * amp.e_n;
    d.amp_current = amp.i_n * amp.i_n * std::norm(zeq);
    return d;
}

double integrate(const Spectrum& spectrum, double lo, double hi) {
    const Eigen::ArrayXd& f = spectrum.freqs;
    const Eigen::Index n = f.size();
    if (n < 2) throw InvalidArgument("integration needs at least two bins");
    if (!(hi > lo) || lo < f[0] - 1e-9 * f[0] || hi > f[n - 1] + 1e-9 * f[n - 1]) {
        throw InvalidArgument("integration band must lie inside the grid");
    }
    lo = std::max(lo, f[0]);
    hi = std::min(hi, f[n - 1]);
    const auto value = [&](Eigen::Index i) { return spectrum.values[i].real(); };
    const auto at = [&](double x) {
        Eigen::Index i = 0;
        while (i + 2 < n && f[i + 1] < x) ++i;
        const double t = (x - f[i]) / (f[i + 1] - f[i]);
        return value(i) + t * (value(i + 1) - value(i));
    };
    double total = 0.0;
    double prev_f = lo;
    double prev_v = at(lo);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (f[i] <= lo) continue;
        if (f[i] >= hi) break;
        total += 0.5 * (prev_v + value(i)) * (f[i] - prev_f);
        prev_f = f[i];
        prev_v = value(i);
    }
    total += 0.5 * (prev_v + at(hi)) * (hi - prev_f);
    return total;
}

NoiseBudget noise_psd(const ReadoutChain& chain, const FrequencyGrid& grid, double temperature_k,
                      Diagnostics* diagnostics) {
    chain.validate();
    grid.validate();
    detail::require_non_negative(temperature_k, "temperature");
    const Eigen::ArrayXd f0 = grid.frequencies();
    const Eigen::Index n = f0.size();
    AmpNoise amp{};
    if (chain.receiver.amp_noise) {
        amp = *chain.receiver.amp_noise;
    } else if (diagnostics) {
        diagnostics->warn("receiver has no amp_noise; amplifier terms set to zero");
    }

    const auto make = [&](SpectrumUnit unit) {
        Spectrum s;
        s.freqs.resize(n);
        s.values = Eigen::ArrayXcd::Zero(n);
        s.unit = unit;
        return s;
    };
    NoiseBudget b;
    b.psd = make(SpectrumUnit::volt2_per_hz);
    b.components = {make(SpectrumUnit::volt2_per_hz), make(SpectrumUnit::volt2_per_hz),
                    make(SpectrumUnit::volt2_per_hz), make(SpectrumUnit::volt2_per_hz)};

    const double bin = grid.step();
    std::vector<Diagnostics> local(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const auto k = static_cast<Eigen::Index>(i);
        const double fi = f0[k] > 0.0 ? nudged_frequency(chain, f0[k], bin, &local[i]) : bin;
        const double omega = 2.0 * std::numbers::pi * fi;
        const auto zs = electrical_input_impedance(omega, chain, LookFrom::receiver);
        const auto zr = chain.receiver.impedance_at(fi);
        const NoiseDensities d = noise_densities(zs, zr, temperature_k, amp);
        for (Spectrum* s : {&b.psd, &b.components.source_thermal, &b.components.receiver_thermal,
                            &b.components.amp_voltage, &b.components.amp_current}) {
            s->freqs[k] = fi;
        }
        b.components.source_thermal.values[k] = d.source_thermal;
        b.components.receiver_thermal.values[k] = d.receiver_thermal;
        b.components.amp_voltage.values[k] = d.amp_voltage;
        b.components.amp_current.values[k] = d.amp_current;
        b.psd.values[k] = d.total();
    });
    if (diagnostics) {
        for (auto& d : local) {
            for (auto& w : d.warnings) diagnostics->warn(std::move(w));
        }
    }
    b.band_lo = b.psd.freqs[0];
    b.band_hi = b.psd.freqs[n - 1];
    b.band_avg = integrate(b.psd, b.band_lo, b.band_hi) / (b.band_hi - b.band_lo);
    return b;
}

double snr(const ReadoutChain& chain, const Excitation& excitation, Band band, std::size_t n_points,
           double temperature_k, Diagnostics* diagnostics) {
    if (!(band.lo > 0.0) || !(band.hi > band.lo)) throw InvalidArgument("SNR band needs 0 < lo < hi");
    detail::require_non_negative(excitation.pressure_pa, "excitation.pressure_pa");
    const FrequencyGrid grid{band.lo, band.hi, n_points};
    const NoiseBudget noise = noise_psd(chain, grid, temperature_k, diagnostics);
    const double variance = integrate(noise.psd, band.lo, band.hi);
    if (!(variance > 0.0)) throw InfiniteSnr("noise power in the band is zero");

    double amplitude = 0.0;
    if (excitation.shape == Excitation::Shape::tone) {
        if (!(excitation.tone_hz >= band.lo && excitation.tone_hz <= band.hi)) {
            throw InvalidArgument("tone frequency must lie inside the SNR band");
        }
        const double f = nudged_frequency(chain, excitation.tone_hz, grid.step(), diagnostics);
        amplitude = std::abs(h2_pressure(2.0 * std::numbers::pi * f, chain));
    } else {
        const Spectrum h = frequency_response(chain, grid, {}, diagnostics);
        amplitude = h.magnitude().maxCoeff();
    }
    return amplitude * excitation.pressure_pa / std::sqrt(variance);
}

}  // namespace paik
