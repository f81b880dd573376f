#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace paik {

enum class SpectrumUnit { volt_per_newton, volt_per_pascal, ohm, dimensionless, volt2_per_hz };

std::string_view to_string(SpectrumUnit unit);

/// Sampled complex response. Frequencies strictly increasing and positive.
struct Spectrum {
    Eigen::ArrayXd freqs;
    Eigen::ArrayXcd values;
    SpectrumUnit unit = SpectrumUnit::dimensionless;

    Eigen::Index size() const { return freqs.size(); }
    Eigen::ArrayXd magnitude() const { return values.abs(); }

    void validate() const;
};

/// Uniform grid, n_points samples from f_min to f_max inclusive.
struct FrequencyGrid {
    double f_min = 0.0;
    double f_max = 0.0;
    std::size_t n_points = 0;

    double step() const { return (f_max - f_min) / static_cast<double>(n_points - 1); }
    Eigen::ArrayXd frequencies() const;
    void validate() const;

    /// Parses "fmin,fmax,n".
    static FrequencyGrid parse(std::string_view text);
};

/// Non-fatal conditions collected while evaluating (nudged grid points, clamps).
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace paik
