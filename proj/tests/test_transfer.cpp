#include "fixtures.hpp"
#include "oracles.hpp"

#include "paik/transfer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace paik;
using C = std::complex<double>;

namespace {

constexpr double f5 = 5e6;

double w5() { return fixture::hz_to_omega(f5); }

}  // namespace

TEST(H1, NoCableIsPlainDivider) {
    const double w = 1e7;
    const auto in = H1Inputs::from_capacitance(w, 100e-12, 0, 0, 0, C(300, -20));
    EXPECT_LT(oracle::rel(h1(w, in), in.zr / (in.zr + 1.0 / (C(0, 1) * w * 100e-12))), 1e-15);
    const auto big = H1Inputs::from_capacitance(w, 100e-12, 0, 0, 0, C(1e12, 0));
    EXPECT_NEAR(std::abs(h1(w, big)), 1.0, 1e-9);
    const auto direct = H1Inputs::from_capacitance(w, 1e300, 0, 0, 0, C(50, 5));
    EXPECT_LT(std::abs(h1(w, direct) - 1.0), 1e-12);
}

TEST(H1, MatchesNodalAnalysis) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lg(-1, 1);
    const auto draw = [&](double centre) { return centre * std::pow(10.0, lg(rng)); };
    for (int i = 0; i < 1000; ++i) {
        const double w = fixture::hz_to_omega(draw(3e6));
        const C zs(draw(20), -draw(300));
        const double rc = draw(0.5), lc = draw(400e-9), cc = draw(150e-12);
        const C zr(draw(150), lg(rng) * 200);
        const H1Inputs in{zs, cc, rc, lc, zr};
        const C want = oracle::nodal_divider(zs, C(rc, w * lc) / 2.0, C(0, w * cc), zr);
        EXPECT_LT(oracle::rel(h1(w, in), want), 1e-12) << i;
    }
}

TEST(H1, RejectsNonPositiveOmega) {
    EXPECT_THROW(h1(0.0, H1Inputs{C(1), 0, 0, 0, C(1)}), InvalidParameter);
}

TEST(H1, OrderedByReceiverImpedance) {
    double prev = 0;
    for (int ch = 4; ch >= 1; --ch) {
        const auto chain = fixture::reference(ch);
        const double s = std::abs(h1(w5(), lumped_h1_inputs(w5(), chain)));
        EXPECT_GT(s, prev) << "ch" << ch;
        prev = s;
    }
}

TEST(H2, FactorizesIntoH1AndOpenCircuitGain) {
    for (int ch = 1; ch <= 4; ++ch) {
        const auto chain = fixture::reference(ch);
        for (double f = 0.25e6; f < 20e6; f += 0.25e6) {
            const double w = fixture::hz_to_omega(f);
            const C lhs = h2(w, chain);
            const C rhs = h1(w, thevenin_h1_inputs(w, chain)) * open_circuit_gain(w, chain);
            EXPECT_LT(oracle::rel(lhs, rhs), 1e-9) << "ch" << ch << " f " << f;
        }
    }
}

TEST(H2, FrozenValueAt5MHz) {
    const C h = h2(w5(), fixture::reference(4));
    EXPECT_LT(oracle::rel(h, C(-0.67122754592022564416, -0.67979476701889084791)), 1e-11);
}

TEST(H2, RigidBaffleLimit) {
    const auto m = series(C(3, 4)) * shunt(C(0.01, 0.02));
    const C zr(75, -5);
    EXPECT_LT(oracle::rel(h2_from_abcd(m, zr, 0.0), 2.0 * zr / (m.a() * zr + m.b())), 1e-15);
}

TEST(H2, ForcedZeroCouplingGivesZero) {
    KlmOverrides o;
    o.phi = 0.0;
    EXPECT_EQ(h2(w5(), fixture::reference(1), o), C(0));
}

TEST(OpenCircuitGain, MatchesLargeReceiverLimit) {
    auto chain = fixture::reference(2);
    chain.cable.length = 0;
    chain.receiver.impedance = C(1e12, 0);
    for (double f : {1e6, 3e6, 5e6, 9e6}) {
        const double w = fixture::hz_to_omega(f);
        EXPECT_LT(oracle::rel(open_circuit_gain(w, chain), h2(w, chain)), 1e-6) << f;
    }
}

TEST(OpenCircuitGain, IndependentOfCable) {
    auto a = fixture::reference(1);
    auto b = a;
    b.cable = CableSpec{10, 5, 1e-6, 1e-9};
    b.receiver.impedance = C(7, 3);
    EXPECT_EQ(open_circuit_gain(w5(), a), open_circuit_gain(w5(), b));
}

TEST(OpenCircuitGain, PressureReferredIsAreaInvariant) {
    const auto chain = fixture::reference(3);
    for (double f : {0.7e6, 5e6, 11e6}) {
        const double w = fixture::hz_to_omega(f);
        const C ref = open_circuit_gain_pressure(w, chain);
        for (double s : {0.25, 4.0, 9.0}) {
            const auto scaled = with_area(chain, chain.plate.area * s);
            EXPECT_LT(oracle::rel(open_circuit_gain(w, scaled) * s, open_circuit_gain(w, chain)), 1e-12);
            EXPECT_LT(oracle::rel(open_circuit_gain_pressure(w, scaled), ref), 1e-12);
        }
    }
}

TEST(InputImpedance, OpenPortsGiveClampedCapacitance) {
    const auto chain = fixture::reference(1);
    const C z = electrical_input_impedance(w5(), chain, LookFrom::piezo_terminals, AcousticTermination::open);
    EXPECT_LT(oracle::rel(z, 1.0 / (C(0, 1) * w5() * derived_constants(chain.plate, w5()).c0)), 1e-12);
}

TEST(InputImpedance, ZeroCableSameAtBothEnds) {
    auto chain = fixture::reference(1);
    chain.cable.length = 0;
    EXPECT_LT(oracle::rel(electrical_input_impedance(w5(), chain, LookFrom::receiver),
                          electrical_input_impedance(w5(), chain, LookFrom::piezo_terminals)),
              1e-14);
}

TEST(InputImpedance, LoadedChainHasRadiationResistance) {
    for (double f = 0.5e6; f < 20e6; f += 0.5e6) {
        EXPECT_GT(electrical_input_impedance(fixture::hz_to_omega(f), fixture::reference(1)).real(), 0.0) << f;
    }
}

TEST(Trends, AreaGainLargestAtLowReceiverImpedance) {
    double prev = 0;
    for (int ch = 1; ch <= 4; ++ch) {
        const auto chain = fixture::reference(ch);
        const auto small = with_area(chain, chain.plate.area / 4);
        const double gain = std::abs(h1(w5(), lumped_h1_inputs(w5(), chain))) /
                            std::abs(h1(w5(), lumped_h1_inputs(w5(), small)));
        EXPECT_GT(gain, prev) << "ch" << ch;
        prev = gain;
    }
}
