#pragma once

// Parameter grids over element area, cable length and receiver impedance.

#include "paik/model.hpp"
#include "paik/noise.hpp"
#include "paik/response.hpp"
#include "paik/spectrum.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace paik {

enum class MetricKind { h1_mag_at_f, h2_band, snr };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric(std::string_view text);

struct Metric {
    MetricKind kind = MetricKind::h1_mag_at_f;
    double freq_hz = 5e6;                       // h1_mag_at_f
    FrequencyGrid band{0.1e6, 20e6, 400};       // h2_band and snr
    double band_level_db = -6.0;                // h2_band
    Excitation excitation{};                    // snr
    double temperature_k = 293.0;               // snr
};

/// An empty axis means "keep the template value".
struct SweepAxes {
    std::vector<double> area;
    std::vector<double> cable_length;
    std::vector<std::complex<double>> receiver_impedance;
    std::vector<std::string> receiver_labels;  // optional, same length as receiver_impedance

    std::size_t area_count() const { return std::max<std::size_t>(1, area.size()); }
    std::size_t cable_count() const { return std::max<std::size_t>(1, cable_length.size()); }
    std::size_t receiver_count() const { return std::max<std::size_t>(1, receiver_impedance.size()); }
    std::size_t size() const { return area_count() * cable_count() * receiver_count(); }
};

struct SweepCell {
    std::size_t i_area = 0;
    std::size_t i_cable = 0;
    std::size_t i_receiver = 0;
    double area = 0.0;
    double cable_length = 0.0;
    std::complex<double> receiver_impedance;
    std::string receiver_label;

    bool valid = true;
    std::string error;
    double value = 0.0;  // |H1|, peak |H2| (V/Pa) or SNR, depending on the metric
    std::optional<BandMetrics> band;
};

struct Normalization {
    std::size_t reference = 0;  // flat cell index
    double reference_value = 0.0;
};

/// Cells in row-major order: area slowest, receiver fastest.
struct SweepResult {
    Metric metric;
    SweepAxes axes;
    std::vector<SweepCell> cells;
    std::optional<Normalization> normalization;

    std::size_t index(std::size_t i_area, std::size_t i_cable, std::size_t i_receiver) const {
        return (i_area * axes.cable_count() + i_cable) * axes.receiver_count() + i_receiver;
    }
};

/// Metric value for a single chain. Throws on singular or invalid input.
SweepCell evaluate_metric(const ReadoutChain& chain, const Metric& metric);

SweepResult sweep_grid(const ReadoutChain& chain_template, const SweepAxes& axes, const Metric& metric);

/// Divides every cell value by the reference cell, which becomes exactly 1.
SweepResult normalize(SweepResult result, std::size_t reference);

struct CableOptimum {
    double cable_length = 0.0;
    double sensitivity = 0.0;  // |H1|
    bool at_boundary = false;
    bool unimodal = true;
};

/// Golden-section search of |H1(f)| over cable length, bracket shrunk below
/// `resolution`. A dense scan at `resolution` checks unimodality and guards the
/// boundaries; a warning is issued when the curve has several local maxima.
CableOptimum optimal_cable_length(const ReadoutChain& chain, double cl_min, double cl_max, double freq_hz,
                                  double resolution = 1e-3, Diagnostics* diagnostics = nullptr);

/// |H1| with the plate reduced to Za (lumped model) at the given cable length.
double h1_sensitivity(const ReadoutChain& chain, double freq_hz);

}  // namespace paik
