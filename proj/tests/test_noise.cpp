#include "fixtures.hpp"

#include "paik/noise.hpp"
#include "paik/transfer.hpp"

#include <gtest/gtest.h>

using namespace paik;
using C = std::complex<double>;

namespace {

const FrequencyGrid band{0.05e6, 20e6, 400};

}  // namespace

TEST(NoiseDensities, TwoResistorsGiveParallelJohnsonNoise) {
    for (double r1 : {10.0, 300.0, 5e3}) {
        for (double r2 : {50.0, 1e3}) {
            const auto d = noise_densities(C(r1), C(r2), 293.0, AmpNoise{});
            const double want = 4 * kBoltzmann * 293.0 * r1 * r2 / (r1 + r2);
            EXPECT_NEAR(d.total(), want, 1e-9 * want);
        }
    }
}

TEST(NoiseDensities, ReactiveSourceAtZeroKelvinIsSilent) {
    const auto d = noise_densities(C(0, -300), C(50, 0), 0.0, AmpNoise{0, 0});
    EXPECT_EQ(d.total(), 0.0);
}

TEST(NoiseDensities, ThermalTermsSumToParallelResistance) {
    const C zs(37, -410), zr(128, -17);
    const auto d = noise_densities(zs, zr, 300.0, AmpNoise{});
    const C zeq = zs * zr / (zs + zr);
    EXPECT_NEAR(d.source_thermal + d.receiver_thermal, 4 * kBoltzmann * 300.0 * zeq.real(),
                1e-12 * d.source_thermal);
}

TEST(NoisePsd, ComponentsSumAndRespectThermalFloor) {
    const auto chain = fixture::reference(2);
    const auto nb = noise_psd(chain, band);
    const auto& c = nb.components;
    for (Eigen::Index i = 0; i < nb.psd.size(); ++i) {
        const double sum = c.source_thermal.values[i].real() + c.receiver_thermal.values[i].real() +
                           c.amp_voltage.values[i].real() + c.amp_current.values[i].real();
        EXPECT_EQ(nb.psd.values[i].real(), sum);
        for (const auto* s : {&c.source_thermal, &c.receiver_thermal, &c.amp_voltage, &c.amp_current}) {
            EXPECT_GE(s->values[i].real(), 0.0);
        }
        const double w = fixture::hz_to_omega(nb.psd.freqs[i]);
        const C zs = electrical_input_impedance(w, chain);
        const C zr = chain.receiver.impedance_at(nb.psd.freqs[i]);
        EXPECT_GE(nb.psd.values[i].real(), 4 * kBoltzmann * 293.0 * (zs * zr / (zs + zr)).real() * (1 - 1e-12));
    }
    EXPECT_EQ(nb.psd.unit, SpectrumUnit::volt2_per_hz);
}

TEST(NoisePsd, MissingAmplifierWarns) {
    auto chain = fixture::reference(1);
    chain.receiver.amp_noise.reset();
    Diagnostics d;
    const auto nb = noise_psd(chain, {1e6, 2e6, 3}, 293.0, &d);
    ASSERT_EQ(d.warnings.size(), 1u);
    EXPECT_EQ(nb.components.amp_voltage.values.abs().maxCoeff(), 0.0);
}

TEST(NoisePsd, BandAverageOrderedByChannel) {
    double prev = 0;
    for (int ch = 4; ch >= 1; --ch) {
        const double avg = noise_psd(fixture::reference(ch), band).band_avg;
        EXPECT_GT(avg, prev) << "ch" << ch;
        prev = avg;
    }
}

TEST(Integrate, TrapezoidWithPartialBins) {
    Spectrum s;
    s.freqs = Eigen::ArrayXd::LinSpaced(11, 0.0, 10.0) + 1.0;
    s.values = s.freqs.cast<std::complex<double>>();
    EXPECT_NEAR(integrate(s, 1.0, 11.0), (121.0 - 1.0) / 2, 1e-12);
    EXPECT_NEAR(integrate(s, 2.5, 7.25), (7.25 * 7.25 - 2.5 * 2.5) / 2, 1e-12);
    EXPECT_THROW(integrate(s, 0.5, 3.0), InvalidArgument);
}

TEST(Snr, LinearInPressure) {
    const auto chain = fixture::reference(3);
    const double a = snr(chain, {1.0}, {0.05e6, 20e6});
    const double b = snr(chain, {2.0}, {0.05e6, 20e6});
    EXPECT_NEAR(b, 2 * a, 1e-12 * b);
}

TEST(Snr, ToneUsesResponseAtTone) {
    const auto chain = fixture::reference(3);
    Excitation tone{1.0, Excitation::Shape::tone, 5e6};
    EXPECT_LT(snr(chain, tone, {1e6, 10e6}), snr(chain, {1.0}, {1e6, 10e6}) * (1 + 1e-12));
    tone.tone_hz = 11e6;
    EXPECT_THROW(snr(chain, tone, {1e6, 10e6}), InvalidArgument);
}

TEST(Snr, ZeroNoiseIsInfinite) {
    auto chain = fixture::reference(1);
    chain.receiver.amp_noise = AmpNoise{0, 0};
    EXPECT_THROW(snr(chain, {1.0}, {1e6, 10e6}, 101, 0.0), InfiniteSnr);
}

TEST(Snr, RisesWithReceiverImpedanceAtDiminishingRate) {
    std::vector<double> mag, value;
    for (int ch = 4; ch >= 1; --ch) {
        mag.push_back(std::abs(fixture::channel_impedances[static_cast<std::size_t>(ch - 1)]));
        value.push_back(snr(fixture::reference(ch), {1.0}, {0.05e6, 20e6}));
    }
    double prev_slope = 1e300;
    for (std::size_t i = 1; i < value.size(); ++i) {
        EXPECT_GT(value[i], value[i - 1]);
        const double slope = (value[i] - value[i - 1]) / (mag[i] - mag[i - 1]);
        EXPECT_LT(slope, prev_slope);
        prev_slope = slope;
    }
}

TEST(Snr, AreaGainLargerAtLowReceiverImpedance) {
    const auto gain = [](int ch) {
        const auto chain = fixture::reference(ch);
        return snr(chain, {1.0}, {0.05e6, 20e6}) /
               snr(with_area(chain, chain.plate.area / 4), {1.0}, {0.05e6, 20e6});
    };
    EXPECT_GT(gain(4), gain(1));
}

TEST(Snr, ShorterCableNeverHurtsHighImpedanceChannel) {
    auto chain = fixture::reference(1);
    const double with_cable = snr(chain, {1.0}, {0.05e6, 20e6});
    chain.cable.length = 0;
    EXPECT_GE(snr(chain, {1.0}, {0.05e6, 20e6}), with_cable);
}
