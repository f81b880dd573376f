#pragma once

// Domain types of the readout chain: piezoelectric plate, passive acoustic
// layers, cable, receiver. Strict SI. Acoustic impedances are stored as
// force-impedances (Rayl x area, N*s/m) so element area enters Z0 and C0
// directly.

#include "paik/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace paik {

namespace detail {

template <typename Real>
void require_positive(Real value, const char* name) {
    if (!(value > Real(0)) || !std::isfinite(static_cast<double>(value))) {
        throw InvalidParameter(std::string(name) + " must be finite and strictly positive");
    }
}

template <typename Real>
void require_non_negative(Real value, const char* name) {
    if (!(value >= Real(0)) || !std::isfinite(static_cast<double>(value))) {
        throw InvalidParameter(std::string(name) + " must be finite and non-negative");
    }
}

}  // namespace detail

template <typename Real>
Real area_from_diameter(Real diameter) {
    return std::numbers::pi_v<Real> * diameter * diameter / Real(4);
}

template <typename Real>
struct PiezoPlateT {
    Real thickness{};       // L, m
    Real density{};         // kg/m^3
    Real stiffness_c33d{};  // Pa
    Real h33{};             // V/m
    Real eps33s{};          // F/m
    Real area{};            // m^2
    std::optional<Real> diameter;  // m

    Real velocity() const { return std::sqrt(stiffness_c33d / density); }

    void validate() const {
        detail::require_positive(thickness, "plate.thickness");
        detail::require_positive(density, "plate.density");
        detail::require_positive(stiffness_c33d, "plate.stiffness_c33d");
        detail::require_positive(h33, "plate.h33");
        detail::require_positive(eps33s, "plate.eps33s");
        detail::require_positive(area, "plate.area");
        if (diameter) {
            detail::require_positive(*diameter, "plate.diameter");
            const Real from_d = area_from_diameter(*diameter);
            if (std::abs(from_d - area) > Real(0.01) * area) {
                throw InvalidParameter("plate.diameter and plate.area disagree by more than 1%");
            }
        }
        const Real v = velocity();
        if (!(v > Real(0)) || !std::isfinite(static_cast<double>(v))) {
            throw InvalidParameter("plate longitudinal velocity is not finite and positive");
        }
    }
};

template <typename Real>
struct PassiveLayerT {
    Real thickness{};  // m
    Real density{};    // kg/m^3
    Real velocity{};   // m/s
    Real area{};       // m^2

    Real force_impedance() const { return density * velocity * area; }

    void validate(const char* name) const {
        const std::string n(name);
        detail::require_positive(thickness, (n + ".thickness").c_str());
        detail::require_positive(density, (n + ".density").c_str());
        detail::require_positive(velocity, (n + ".velocity").c_str());
        detail::require_positive(area, (n + ".area").c_str());
    }
};

template <typename Real>
struct CableSpecT {
    Real length{};     // CL, m
    Real r_per_m{};    // ohm/m
    Real l_per_m{};    // H/m
    Real c_per_m{};    // F/m

    Real total_resistance() const { return r_per_m * length; }
    Real total_inductance() const { return l_per_m * length; }
    Real total_capacitance() const { return c_per_m * length; }

    void validate() const {
        detail::require_non_negative(length, "cable.length");
        detail::require_non_negative(r_per_m, "cable.r_per_m");
        detail::require_non_negative(l_per_m, "cable.l_per_m");
        detail::require_non_negative(c_per_m, "cable.c_per_m");
    }
};

template <typename Real>
struct AmpNoiseT {
    Real e_n{};  // V/sqrt(Hz)
    Real i_n{};  // A/sqrt(Hz)
};

template <typename Real>
struct ImpedancePointT {
    Real freq_hz{};
    std::complex<Real> z;
};

/// Receiver input impedance: a single complex value held constant over the
/// band, or a table interpolated linearly in Re and Im (clamped at the ends).
template <typename Real>
struct ReceiverSpecT {
    using Complex = std::complex<Real>;
    using Table = std::vector<ImpedancePointT<Real>>;

    std::variant<Complex, Table> impedance{Complex(50)};
    std::optional<AmpNoiseT<Real>> amp_noise;

    static ReceiverSpecT constant(Complex z) { return ReceiverSpecT{z, std::nullopt}; }

    bool is_constant() const { return std::holds_alternative<Complex>(impedance); }

    Complex impedance_at(Real freq_hz) const {
        if (const auto* z = std::get_if<Complex>(&impedance)) {
            return *z;
        }
        const auto& table = std::get<Table>(impedance);
        if (freq_hz <= table.front().freq_hz) return table.front().z;
        if (freq_hz >= table.back().freq_hz) return table.back().z;
        const auto hi = std::upper_bound(table.begin(), table.end(), freq_hz,
                                         [](Real f, const auto& p) { return f < p.freq_hz; });
        const auto lo = hi - 1;
        const Real t = (freq_hz - lo->freq_hz) / (hi->freq_hz - lo->freq_hz);
        return lo->z + t * (hi->z - lo->z);
    }

    void validate() const {
        if (const auto* z = std::get_if<Complex>(&impedance)) {
            if (!(z->real() > Real(0))) {
                throw InvalidParameter("receiver impedance must have a positive real part");
            }
        } else {
            const auto& table = std::get<Table>(impedance);
            if (table.empty()) throw InvalidParameter("receiver impedance table is empty");
            for (std::size_t i = 0; i < table.size(); ++i) {
                detail::require_positive(table[i].freq_hz, "receiver.table.freq_hz");
                if (i > 0 && !(table[i].freq_hz > table[i - 1].freq_hz)) {
                    throw InvalidParameter("receiver impedance table frequencies must be strictly increasing");
                }
                if (!(table[i].z.real() > Real(0))) {
                    throw InvalidParameter("receiver impedance must have a positive real part at every tabulated frequency");
                }
            }
        }
        if (amp_noise) {
            detail::require_non_negative(amp_noise->e_n, "receiver.amp_noise.e_n");
            detail::require_non_negative(amp_noise->i_n, "receiver.amp_noise.i_n");
        }
    }
};

template <typename Real>
struct ReadoutChainT {
    PiezoPlateT<Real> plate;
    std::optional<PassiveLayerT<Real>> matching;
    PassiveLayerT<Real> backing;
    Real medium_impedance{};  // Zc, force-impedance N*s/m (Rayl x area)
    CableSpecT<Real> cable;
    ReceiverSpecT<Real> receiver;

    void validate() const {
        plate.validate();
        if (matching) matching->validate("matching");
        backing.validate("backing");
        detail::require_positive(medium_impedance, "medium_impedance");
        cable.validate();
        receiver.validate();
        const auto same_area = [&](Real a) {
            return std::abs(a - plate.area) <= Real(1e-9) * plate.area;
        };
        if ((matching && !same_area(matching->area)) || !same_area(backing.area)) {
            throw InvalidParameter("all layer areas must equal the plate area");
        }
    }
};

template <typename Real>
struct DerivedConstantsT {
    Real k;   // wavenumber, 1/m
    Real z0;  // plate force-impedance, N*s/m
    Real c0;  // clamped capacitance, F
};

template <typename Real>
DerivedConstantsT<Real> derived_constants(const PiezoPlateT<Real>& plate, Real omega) {
    detail::require_positive(omega, "omega");
    plate.validate();
    const Real v = plate.velocity();
    return {omega / v, plate.density * v * plate.area, plate.eps33s * plate.area / plate.thickness};
}

/// Rescales element area coherently: plate, both layers and the medium
/// force-impedance. The diameter, when present, follows the area.
template <typename Real>
ReadoutChainT<Real> with_area(ReadoutChainT<Real> chain, Real area) {
    detail::require_positive(area, "area");
    const Real scale = area / chain.plate.area;
    chain.plate.area = area;
    if (chain.plate.diameter) {
        chain.plate.diameter = std::sqrt(Real(4) * area / std::numbers::pi_v<Real>);
    }
    if (chain.matching) chain.matching->area = area;
    chain.backing.area = area;
    chain.medium_impedance *= scale;
    return chain;
}

template <typename Real>
ReadoutChainT<Real> with_cable_length(ReadoutChainT<Real> chain, Real length) {
    detail::require_non_negative(length, "cable.length");
    chain.cable.length = length;
    return chain;
}

template <typename Real>
ReadoutChainT<Real> with_receiver_impedance(ReadoutChainT<Real> chain, std::complex<Real> z) {
    chain.receiver.impedance = z;
    return chain;
}

using PiezoPlate = PiezoPlateT<double>;
using PassiveLayer = PassiveLayerT<double>;
using CableSpec = CableSpecT<double>;
using AmpNoise = AmpNoiseT<double>;
using ImpedancePoint = ImpedancePointT<double>;
using ReceiverSpec = ReceiverSpecT<double>;
using ReadoutChain = ReadoutChainT<double>;
using DerivedConstants = DerivedConstantsT<double>;

}  // namespace paik
