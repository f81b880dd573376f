#include "paik/response.hpp"

#include "paik/errors.hpp"
#include "paik/klm.hpp"
#include "paik/parallel.hpp"
#include "paik/transfer.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

namespace paik {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool singular_at(const ReadoutChain& chain, double f) {
    return chain_singularity(two_pi * f, chain).has_value();
}

}  // namespace

double nudged_frequency(const ReadoutChain& chain, double f, double bin_width, Diagnostics* diagnostics) {
    if (!singular_at(chain, f)) return f;
    const double delta = 1e-6 * bin_width;
    for (const double candidate : {f + delta, f - delta}) {
        if (candidate > 0.0 && !singular_at(chain, candidate)) {
            if (diagnostics) {
                std::ostringstream os;
                os.precision(17);
                os << "singular grid point " << f << " Hz nudged to " << candidate << " Hz";
                diagnostics->warn(os.str());
            }
            return candidate;
        }
    }
    throw Singularity("cannot nudge grid point off a singularity", f);
}

Spectrum frequency_response(const ReadoutChain& chain, FrequencyGrid grid, const ResponseOptions& options,
                            Diagnostics* diagnostics) {
    chain.validate();
    grid.validate();
    if (grid.f_min <= 0.0) {
        const double bin = (grid.f_max - grid.f_min) / static_cast<double>(grid.n_points - 1);
        if (diagnostics) diagnostics->warn("grid reaches DC; f_min clamped to one bin above zero");
        grid.f_min = bin;
        grid.validate();
    }
    const Eigen::ArrayXd f = grid.frequencies();
    const double bin = grid.step();

    Spectrum out;
    out.freqs.resize(f.size());
    out.values.resize(f.size());
    out.unit = options.pressure_referred ? SpectrumUnit::volt_per_pascal : SpectrumUnit::volt_per_newton;

    std::vector<Diagnostics> local(static_cast<std::size_t>(f.size()));
    parallel_for(static_cast<std::size_t>(f.size()), [&](std::size_t i) {
        const auto idx = static_cast<Eigen::Index>(i);
        const double fi = nudged_frequency(chain, f[idx], bin, &local[i]);
        const double omega = two_pi * fi;
        out.freqs[idx] = fi;
        out.values[idx] = options.pressure_referred ? h2_pressure(omega, chain) : h2(omega, chain);
    });
    if (diagnostics) {
        for (auto& d : local) {
            for (auto& w : d.warnings) diagnostics->warn(std::move(w));
        }
    }
    return out;
}

Waveform impulse_response(const Spectrum& spectrum, double fs) {
    spectrum.validate();
    const Eigen::Index n = spectrum.size();
    if (n < 1) throw InvalidArgument("impulse response needs a non-empty spectrum");
    if (!(fs >= 2.0 * spectrum.freqs[n - 1])) {
        throw InvalidArgument("sample rate is below twice the highest spectrum frequency");
    }
    const double df = spectrum.freqs[0];
    for (Eigen::Index k = 0; k < n; ++k) {
        const double expected = static_cast<double>(k + 1) * df;
        if (std::abs(spectrum.freqs[k] - expected) > 1e-5 * df) {
            throw InvalidArgument("impulse response needs a uniform grid f_k = k * df starting at df");
        }
    }
    const double ratio = fs / df;
    const auto length = static_cast<Eigen::Index>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(length)) > 1e-6 * ratio || length % 2 != 0) {
        throw InvalidArgument("fs / df must be an even integer");
    }
    const Eigen::Index half = length / 2;

    std::vector<std::complex<double>> full(static_cast<std::size_t>(length), {0.0, 0.0});
    for (Eigen::Index k = 1; k <= std::min(n, half); ++k) full[static_cast<std::size_t>(k)] = spectrum.values[k - 1];
    full[static_cast<std::size_t>(half)] = {full[static_cast<std::size_t>(half)].real(), 0.0};
    for (Eigen::Index k = 1; k < half; ++k) {
        full[static_cast<std::size_t>(length - k)] = std::conj(full[static_cast<std::size_t>(k)]);
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> time;
    fft.inv(time, full);  // includes the 1/N factor

    Waveform w;
    w.dt = 1.0 / fs;
    w.samples.resize(length);
    double peak = 0.0;
    for (Eigen::Index i = 0; i < length; ++i) {
        const auto& z = time[static_cast<std::size_t>(i)];
        w.samples[i] = z.real() * fs;
        w.imag_residue = std::max(w.imag_residue, std::abs(z.imag()) * fs);
        peak = std::max(peak, std::abs(w.samples[i]));
    }
    if (peak > 0.0 && w.imag_residue > 1e-10 * peak) {
        throw Error("inverse transform left an imaginary residue above 1e-10 of the peak");
    }
    return w;
}

double tail_energy_fraction(const Waveform& waveform) {
    const Eigen::Index n = waveform.size();
    const Eigen::Index tail = std::max<Eigen::Index>(1, n / 10);
    const double total = waveform.samples.square().sum();
    if (total == 0.0) return 0.0;
    return waveform.samples.tail(tail).square().sum() / total;
}

Waveform chain_impulse_response(const ReadoutChain& chain, double fs, std::size_t min_samples,
                                const ResponseOptions& options, Diagnostics* diagnostics) {
    if (!(fs > 0.0)) throw InvalidArgument("sample rate must be positive");
    std::size_t length = std::max<std::size_t>(min_samples + (min_samples % 2), 4);
    constexpr std::size_t max_length = std::size_t{1} << 22;
    for (;;) {
        const std::size_t half = length / 2;
        const double df = fs / static_cast<double>(length);
        const FrequencyGrid grid{df, df * static_cast<double>(half), half};
        Spectrum spec = frequency_response(chain, grid, options, diagnostics);
        // nudged points keep the grid uniform to within 1e-6 of a bin
        Waveform w = impulse_response(spec, fs);
        if (tail_energy_fraction(w) < 0.05 || length >= max_length) {
            if (tail_energy_fraction(w) >= 0.05 && diagnostics) {
                diagnostics->warn("impulse response tail energy still above 5% at the maximum record length");
            }
            return w;
        }
        length *= 2;
    }
}

BandMetrics band_metrics(const Spectrum& spectrum, double level_db) {
    spectrum.validate();
    if (level_db > 0.0) throw InvalidArgument("band level must be <= 0 dB");
    const Eigen::ArrayXd mag = spectrum.magnitude();
    const Eigen::ArrayXd& f = spectrum.freqs;
    const Eigen::Index n = mag.size();
    Eigen::Index peak = 0;
    const double peak_value = mag.maxCoeff(&peak);
    if (!(peak_value > 0.0)) throw InvalidArgument("spectrum has no positive peak");

    const double threshold = peak_value * std::pow(10.0, level_db / 20.0);
    const auto crossing = [&](Eigen::Index below, Eigen::Index above) {
        // below: bin under the threshold, above: adjacent bin at or over it
        const double t = (threshold - mag[below]) / (mag[above] - mag[below]);
        return f[below] + t * (f[above] - f[below]);
    };

    BandMetrics m;
    m.level_db = level_db;
    if (level_db == 0.0) {
        m.f_lo = m.f_hi = m.f_center = m.support_lo = m.support_hi = f[peak];
        return m;
    }

    Eigen::Index lo = peak;
    while (lo > 0 && mag[lo - 1] >= threshold) --lo;
    if (lo == 0) throw BandUnbounded(BandUnbounded::Edge::lower);
    Eigen::Index hi = peak;
    while (hi < n - 1 && mag[hi + 1] >= threshold) ++hi;
    if (hi == n - 1) throw BandUnbounded(BandUnbounded::Edge::upper);

    m.f_lo = crossing(lo - 1, lo);
    m.f_hi = crossing(hi + 1, hi);
    m.bandwidth = m.f_hi - m.f_lo;
    m.f_center = 0.5 * (m.f_lo + m.f_hi);

    // total support: sum of all above-threshold intervals
    m.support_lo = m.f_lo;
    m.support_hi = m.f_hi;
    double width = 0.0;
    Eigen::Index i = 0;
    while (i < n) {
        if (mag[i] < threshold) {
            ++i;
            continue;
        }
        const Eigen::Index start = i;
        while (i + 1 < n && mag[i + 1] >= threshold) ++i;
        const double a = start == 0 ? f[0] : crossing(start - 1, start);
        const double b = i == n - 1 ? f[n - 1] : crossing(i + 1, i);
        m.support_lo = std::min(m.support_lo, a);
        m.support_hi = std::max(m.support_hi, b);
        width += b - a;
        ++i;
    }
    m.support_width = width;
    return m;
}

}  // namespace paik
