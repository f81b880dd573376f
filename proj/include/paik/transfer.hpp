#pragma once

// Receive transfer functions.
//   h1: single-frequency lumped divider from the acoustic source voltage to the receiver.
//   h2: full-band force-to-voltage response through the whole chain.

#include "paik/klm.hpp"
#include "paik/model.hpp"
#include "paik/twoport.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace paik {

template <typename Real>
struct H1InputsT {
    std::complex<Real> source_impedance;  // series source: Za, or the full Thevenin impedance
    Real cc{};                            // total cable capacitance, F
    Real rc{};                            // total cable resistance, ohm
    Real lc{};                            // total cable inductance, H
    std::complex<Real> zr;                // receiver impedance, ohm

    static H1InputsT from_capacitance(Real omega, Real cf, Real cc, Real rc, Real lc, std::complex<Real> zr) {
        return {std::complex<Real>(Real(0), Real(-1) / (omega * cf)), cc, rc, lc, zr};
    }
};

/// H1 = Zr / [ (Z - Zr + Zs)(1 + j omega Cc Z) + Z ],  Z = (Rc + j omega Lc)/2 + Zr.
template <typename Real>
std::complex<Real> h1(Real omega, const H1InputsT<Real>& in) {
    using C = std::complex<Real>;
    detail::require_positive(omega, "omega");
    const C j(0, 1);
    const C z = C(in.rc, omega * in.lc) / Real(2) + in.zr;
    const C den = (z - in.zr + in.source_impedance) * (Real(1) + j * omega * in.cc * z) + z;
    if (std::abs(den) < Real(1e-300)) {
        throw Singularity("h1 denominator vanishes", static_cast<double>(detail::to_hz(omega)), "h1");
    }
    return in.zr / den;
}

enum class AcousticTermination { loaded, open, shorted };
enum class LookFrom { receiver, piezo_terminals };

namespace detail {

template <typename Real>
KlmOverridesT<Real> termination_overrides(AcousticTermination t) {
    KlmOverridesT<Real> o;
    if (t == AcousticTermination::open) o.backing_impedance = std::numeric_limits<Real>::infinity();
    if (t == AcousticTermination::shorted) o.backing_impedance = Real(0);
    return o;
}

/// Impedance at the output port of m with the input port terminated by z_front (inf = open).
template <typename Real>
std::complex<Real> output_impedance_with(const TwoPortT<Real>& m, Real z_front) {
    if (std::isinf(static_cast<double>(z_front))) return m.d() / m.c();
    return m.output_impedance(std::complex<Real>(z_front));
}

}  // namespace detail

/// Electrical impedance seen looking into the chain. Loaded: medium on the front
/// face, backing on the back face. Open/shorted: both acoustic ports open (v = 0)
/// or shorted (F = 0).
template <typename Real>
std::complex<Real> electrical_input_impedance(Real omega, const ReadoutChainT<Real>& chain,
                                              LookFrom look_from = LookFrom::receiver,
                                              AcousticTermination termination = AcousticTermination::loaded) {
    auto f = chain_factors(omega, chain, detail::termination_overrides<Real>(termination));
    // open/shorted apply to the plate faces themselves
    if (termination != AcousticTermination::loaded) f.matching = identity<Real>(Domain::acoustic);
    const auto m = look_from == LookFrom::receiver ? f.product() : f.transducer();
    Real z_front = chain.medium_impedance;
    if (termination == AcousticTermination::open) z_front = std::numeric_limits<Real>::infinity();
    if (termination == AcousticTermination::shorted) z_front = Real(0);
    return detail::output_impedance_with(m, z_front);
}

/// H2 from chain coefficients: 2 Zr / (A Zr + B + C Zr Zc + D Zc).
template <typename Real>
std::complex<Real> h2_from_abcd(const TwoPortT<Real>& m, std::complex<Real> zr, Real zc) {
    const auto den = m.a() * zr + m.b() + m.c() * zr * zc + m.d() * zc;
    return Real(2) * zr / den;
}

/// Receiver voltage per incident force, V/N.
template <typename Real>
std::complex<Real> h2(Real omega, const ReadoutChainT<Real>& chain, const KlmOverridesT<Real>& overrides = {}) {
    if (overrides.phi && *overrides.phi == Real(0)) return {};  // coupling removed
    const auto m = chain_matrix(omega, chain, overrides);
    const auto zr = chain.receiver.impedance_at(detail::to_hz(omega));
    return h2_from_abcd(m, zr, chain.medium_impedance);
}

/// Receiver voltage per incident pressure, V/Pa.
template <typename Real>
std::complex<Real> h2_pressure(Real omega, const ReadoutChainT<Real>& chain) {
    return h2(omega, chain) * chain.plate.area;
}

/// Open-circuit voltage at the piezo terminals per incident force (V/N): the
/// Zr -> inf, zero-cable limit of h2, 2 / (A + C Zc).
template <typename Real>
std::complex<Real> open_circuit_gain(Real omega, const ReadoutChainT<Real>& chain) {
    const auto m = chain_factors(omega, chain).transducer();
    return Real(2) / (m.a() + m.c() * chain.medium_impedance);
}

template <typename Real>
std::complex<Real> open_circuit_gain_pressure(Real omega, const ReadoutChainT<Real>& chain) {
    return open_circuit_gain(omega, chain) * chain.plate.area;
}

/// H1 inputs with the plate reduced to Za (static plus dynamic capacitance).
template <typename Real>
H1InputsT<Real> lumped_h1_inputs(Real omega, const ReadoutChainT<Real>& chain) {
    return {series_impedance_za(omega, chain.plate), chain.cable.total_capacitance(),
            chain.cable.total_resistance(), chain.cable.total_inductance(),
            chain.receiver.impedance_at(detail::to_hz(omega))};
}

/// H1 inputs with the exact Thevenin source impedance at the piezo terminals
/// (Za plus the acoustic loads reflected through the transformer). With these,
/// h2 = h1 * open_circuit_gain holds exactly.
template <typename Real>
H1InputsT<Real> thevenin_h1_inputs(Real omega, const ReadoutChainT<Real>& chain) {
    auto in = lumped_h1_inputs(omega, chain);
    in.source_impedance = electrical_input_impedance(omega, chain, LookFrom::piezo_terminals);
    return in;
}

using H1Inputs = H1InputsT<double>;

}  // namespace paik
