#pragma once

// KLM equivalent circuit of a thickness-mode piezoelectric plate and the
// element matrices of the receive chain
//   M = M_matching * M_front_half * M_back_shunt * M_transformer * M_za * M_cable,
// mapping (V, I) at the receiver to (F, v) at the front surface.

#include "paik/model.hpp"
#include "paik/twoport.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace paik {

/// |sin| below this counts as a zero of the turns ratio / three-port denominators.
inline constexpr double kSingularTolerance = 1e-9;

namespace detail {

template <typename Real>
Real to_hz(Real omega) {
    return omega / (Real(2) * std::numbers::pi_v<Real>);
}

}  // namespace detail

template <typename Real>
struct KlmParamsT {
    Real phi;               // turns ratio, N/V
    std::complex<Real> za;  // series impedance, ohm
    Real c0;                // clamped capacitance, F
    std::complex<Real> x1;  // dynamic reactance jX1, ohm
};

/// phi = omega Z0 / (2 h33 sin(kL/2)).
template <typename Real>
Real turns_ratio(Real omega, const PiezoPlateT<Real>& plate) {
    const auto dc = derived_constants(plate, omega);
    const Real s = std::sin(dc.k * plate.thickness / Real(2));
    if (std::abs(s) < Real(kSingularTolerance)) {
        throw Singularity("turns ratio singular (sin(kL/2) = 0)", static_cast<double>(detail::to_hz(omega)),
                          "transformer");
    }
    return omega * dc.z0 / (Real(2) * plate.h33 * s);
}

/// jX1 = j h33^2 sin(kL) / (omega^2 Z0).
template <typename Real>
std::complex<Real> dynamic_reactance(Real omega, const PiezoPlateT<Real>& plate) {
    const auto dc = derived_constants(plate, omega);
    const Real x1 = plate.h33 * plate.h33 * std::sin(dc.k * plate.thickness) / (omega * omega * dc.z0);
    return {Real(0), x1};
}

/// Za = 1/(j omega C0) + jX1. Purely reactive.
template <typename Real>
std::complex<Real> series_impedance_za(Real omega, const PiezoPlateT<Real>& plate) {
    const auto dc = derived_constants(plate, omega);
    return std::complex<Real>(Real(0), Real(-1) / (omega * dc.c0)) + dynamic_reactance(omega, plate);
}

template <typename Real>
KlmParamsT<Real> klm_params(Real omega, const PiezoPlateT<Real>& plate) {
    const auto dc = derived_constants(plate, omega);
    return {turns_ratio(omega, plate), series_impedance_za(omega, plate), dc.c0, dynamic_reactance(omega, plate)};
}

/// Open-circuit impedance matrix of the plate: (F_B, F_F, V) = Z * (v_B, v_F, I),
/// all port flows directed into the plate.
template <typename Real>
Eigen::Matrix<std::complex<Real>, 3, 3> three_port_impedance(Real omega, const PiezoPlateT<Real>& plate) {
    using C = std::complex<Real>;
    const auto dc = derived_constants(plate, omega);
    const Real kl = dc.k * plate.thickness;
    const Real s = std::sin(kl);
    if (std::abs(s) < Real(kSingularTolerance)) {
        throw Singularity("three-port impedance singular (sin(kL) = 0)", static_cast<double>(detail::to_hz(omega)),
                          "three_port");
    }
    const C j(0, 1);
    const C self = dc.z0 * std::cos(kl) / (j * s);  // Z0 / (j tan kL)
    const C mutual = dc.z0 / (j * s);
    const C piezo = plate.h33 / (j * omega);
    const C cap = Real(1) / (j * omega * dc.c0);

    Eigen::Matrix<C, 3, 3> z;
    z << self, mutual, piezo,
         mutual, self, piezo,
         piezo, piezo, cap;
    return z;
}

/// Input impedance of the back half of the plate (length L/2) terminated by the
/// backing force-impedance zb. zb may be +inf (free back face).
template <typename Real>
std::complex<Real> back_branch_impedance(Real omega, const PiezoPlateT<Real>& plate, Real zb) {
    using C = std::complex<Real>;
    if (!(zb >= Real(0))) throw InvalidParameter("backing impedance must be non-negative");
    const auto dc = derived_constants(plate, omega);
    const Real half = dc.k * plate.thickness / Real(2);
    const Real cs = std::cos(half);
    const Real sn = std::sin(half);
    const C j(0, 1);
    if (std::isinf(static_cast<double>(zb))) {
        if (std::abs(sn) < Real(kSingularTolerance)) {
            throw Singularity("open back branch singular (sin(kL/2) = 0)", static_cast<double>(detail::to_hz(omega)),
                              "back_branch");
        }
        return dc.z0 * cs / (j * sn);
    }
    const C den = dc.z0 * cs + j * zb * sn;
    if (std::abs(den) < Real(kSingularTolerance) * dc.z0) {
        throw Singularity("back branch denominator vanishes", static_cast<double>(detail::to_hz(omega)),
                          "back_branch");
    }
    return dc.z0 * (zb * cs + j * dc.z0 * sn) / den;
}

/// Forced values replacing computed factors (diagnostics and degenerate-case tests).
template <typename Real>
struct KlmOverridesT {
    std::optional<Real> phi;
    std::optional<std::complex<Real>> za;
    std::optional<Real> backing_impedance;  // replaces rho*v*area of the backing; may be 0 or +inf
};

template <typename Real>
struct ChainFactorsT {
    TwoPortT<Real> matching;     // M_m, identity when no matching layer
    TwoPortT<Real> front_half;   // M_t, front half-plate line, theta = kL/2
    TwoPortT<Real> back_shunt;   // M_L, shunt admittance of the back branch
    TwoPortT<Real> transformer;  // M_phi
    TwoPortT<Real> series_za;    // M_cap
    TwoPortT<Real> cable;        // M_cab, symmetric T-network

    TwoPortT<Real> product() const {
        return cascade({matching, front_half, back_shunt, transformer, series_za, cable});
    }

    /// Acoustic side plus Za, without the cable: the chain seen at the piezo terminals.
    TwoPortT<Real> transducer() const { return cascade({matching, front_half, back_shunt, transformer, series_za}); }
};

template <typename Real>
TwoPortT<Real> cable_t_network(Real omega, const CableSpecT<Real>& cable) {
    using C = std::complex<Real>;
    const C z_half = C(cable.total_resistance(), omega * cable.total_inductance()) / Real(2);
    const C y = C(Real(0), omega * cable.total_capacitance());
    return t_network(z_half, y);
}

template <typename Real>
ChainFactorsT<Real> chain_factors(Real omega, const ReadoutChainT<Real>& chain,
                                  const KlmOverridesT<Real>& overrides = {}) {
    using C = std::complex<Real>;
    const auto& plate = chain.plate;
    const auto dc = derived_constants(plate, omega);
    const auto hz = static_cast<double>(detail::to_hz(omega));

    ChainFactorsT<Real> f;
    if (chain.matching) {
        const auto& m = *chain.matching;
        f.matching = tline(omega / m.velocity * m.thickness, C(m.force_impedance()), Domain::acoustic);
    } else {
        f.matching = identity<Real>(Domain::acoustic);
    }
    f.front_half = tline(dc.k * plate.thickness / Real(2), C(dc.z0), Domain::acoustic);

    const Real zb = overrides.backing_impedance ? *overrides.backing_impedance : chain.backing.force_impedance();
    const C z_back = back_branch_impedance(omega, plate, zb);
    if (z_back == C(0)) throw Singularity("back branch impedance is zero", hz, "M_L");
    f.back_shunt = shunt(C(1) / z_back, Domain::acoustic);

    const Real phi = overrides.phi ? *overrides.phi : turns_ratio(omega, plate);
    try {
        f.transformer = transformer(C(phi));
    } catch (const InvalidArgument& e) {
        throw Singularity(e.what(), hz, "M_phi");
    }
    f.series_za = series(overrides.za ? *overrides.za : series_impedance_za(omega, plate));
    f.cable = cable_t_network(omega, chain.cable);
    return f;
}

/// (F, v) at the front surface = M * (V, I) at the receiver.
template <typename Real>
TwoPortT<Real> chain_matrix(Real omega, const ReadoutChainT<Real>& chain, const KlmOverridesT<Real>& overrides = {}) {
    return chain_factors(omega, chain, overrides).product();
}

/// Name of the factor that is singular at omega, or nullopt.
template <typename Real>
std::optional<std::string> chain_singularity(Real omega, const ReadoutChainT<Real>& chain) {
    try {
        (void)chain_factors(omega, chain);
    } catch (const Singularity& s) {
        return s.factor();
    }
    return std::nullopt;
}

/// Acoustic port condition for the explicit circuit solve.
template <typename Real>
struct PortDriveT {
    enum class Kind { velocity, force };
    Kind kind;
    std::complex<Real> value;

    static PortDriveT velocity(std::complex<Real> v) { return {Kind::velocity, v}; }
    static PortDriveT force(std::complex<Real> f) { return {Kind::force, f}; }
};

template <typename Real>
struct KlmPortStateT {
    std::complex<Real> force_back, velocity_back;
    std::complex<Real> force_front, velocity_front;
    std::complex<Real> voltage;
};

/// Solves the KLM circuit node by node: two half-length lines meeting at a
/// centre node, the transformer hanging off that node, Za in series on the
/// electrical side. Port velocities and the current are directed into the plate.
template <typename Real>
KlmPortStateT<Real> solve_klm_circuit(Real omega, const PiezoPlateT<Real>& plate, const PortDriveT<Real>& back,
                                      const PortDriveT<Real>& front, std::complex<Real> current) {
    using C = std::complex<Real>;
    const auto dc = derived_constants(plate, omega);
    const Real half = dc.k * plate.thickness / Real(2);
    const Real cs = std::cos(half);
    const Real sn = std::sin(half);
    const Real phi = turns_ratio(omega, plate);
    const C za = series_impedance_za(omega, plate);
    const C j(0, 1);

    // unknowns: F_c, u_front, u_back, F_F, v_F, F_B, v_B, V, V_t
    enum { Fc, Uf, Ub, FF, VF, FB, VB, Vel, Vt, N };
    Eigen::Matrix<C, N, N> a = Eigen::Matrix<C, N, N>::Zero();
    Eigen::Matrix<C, N, 1> rhs = Eigen::Matrix<C, N, 1>::Zero();
    int row = 0;

    // front half-line: (F_F, v_F) = Mt (F_c, u_front)
    a(row, FF) = 1; a(row, Fc) = -cs; a(row, Uf) = -j * dc.z0 * sn; ++row;
    a(row, VF) = 1; a(row, Fc) = -j * sn / dc.z0; a(row, Uf) = -cs; ++row;
    // back half-line
    a(row, FB) = 1; a(row, Fc) = -cs; a(row, Ub) = -j * dc.z0 * sn; ++row;
    a(row, VB) = 1; a(row, Fc) = -j * sn / dc.z0; a(row, Ub) = -cs; ++row;
    // centre node: the line flows feed the transformer, v_tr = I_out / phi = -I / phi
    a(row, Uf) = 1; a(row, Ub) = 1; rhs(row) = -current / phi; ++row;
    // transformer: F_c = phi V_t
    a(row, Fc) = 1; a(row, Vt) = -phi; ++row;
    // series Za: V = V_t + Za I
    a(row, Vel) = 1; a(row, Vt) = -1; rhs(row) = za * current; ++row;
    // port drives
    const auto drive = [&](const PortDriveT<Real>& d, int f_col, int v_col) {
        a(row, d.kind == PortDriveT<Real>::Kind::velocity ? v_col : f_col) = 1;
        rhs(row) = d.value;
        ++row;
    };
    drive(back, FB, VB);
    drive(front, FF, VF);

    const Eigen::Matrix<C, N, 1> x = a.fullPivLu().solve(rhs);
    return {x(FB), x(VB), x(FF), x(VF), x(Vel)};
}

using KlmParams = KlmParamsT<double>;
using KlmOverrides = KlmOverridesT<double>;
using ChainFactors = ChainFactorsT<double>;
using PortDrive = PortDriveT<double>;
using KlmPortState = KlmPortStateT<double>;

}  // namespace paik
