#pragma once

#include "paik/config.hpp"

#include <array>
#include <complex>
#include <string>

namespace fixture {

inline std::string source_path(const std::string& rel) { return std::string(PAIK_SOURCE_DIR) + "/" + rel; }

/// Reference chain on receiver channel 1..4.
inline paik::ReadoutChain reference(int channel) {
    return paik::load_config(source_path("configs/reference_ch" + std::to_string(channel) + ".json")).chain;
}

inline const std::array<std::complex<double>, 4> channel_impedances = {
    std::complex<double>(404, -324), std::complex<double>(145, -24), std::complex<double>(128, -17),
    std::complex<double>(51, -0.07)};

inline double hz_to_omega(double f) { return 2.0 * 3.14159265358979323846 * f; }

}  // namespace fixture
