#include "paik/sweep.hpp"

#include "paik/errors.hpp"
#include "paik/parallel.hpp"
#include "paik/transfer.hpp"

#include <cmath>
#include <numbers>

namespace paik {

std::string_view to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::h1_mag_at_f: return "h1_mag_at_f";
        case MetricKind::h2_band: return "h2_band";
        case MetricKind::snr: return "snr";
    }
    return "?";
}

MetricKind parse_metric(std::string_view text) {
    for (const auto k : {MetricKind::h1_mag_at_f, MetricKind::h2_band, MetricKind::snr}) {
        if (text == to_string(k)) return k;
    }
    throw InvalidArgument("unknown metric '" + std::string(text) + "' (expected h1_mag_at_f, h2_band or snr)");
}

double h1_sensitivity(const ReadoutChain& chain, double freq_hz) {
    detail::require_positive(freq_hz, "frequency");
    const double omega = 2.0 * std::numbers::pi * freq_hz;
    return std::abs(h1(omega, lumped_h1_inputs(omega, chain)));
}

SweepCell evaluate_metric(const ReadoutChain& chain, const Metric& metric) {
    chain.validate();
    SweepCell cell;
    cell.area = chain.plate.area;
    cell.cable_length = chain.cable.length;
    cell.receiver_impedance = chain.receiver.impedance_at(metric.freq_hz);
    switch (metric.kind) {
        case MetricKind::h1_mag_at_f:
            cell.value = h1_sensitivity(chain, metric.freq_hz);
            break;
        case MetricKind::h2_band: {
            const Spectrum h = frequency_response(chain, metric.band);
            cell.value = h.magnitude().maxCoeff();
            cell.band = band_metrics(h, metric.band_level_db);
            break;
        }
        case MetricKind::snr:
            cell.value = snr(chain, metric.excitation, {metric.band.f_min, metric.band.f_max},
                             metric.band.n_points, metric.temperature_k);
            break;
    }
    return cell;
}

SweepResult sweep_grid(const ReadoutChain& chain_template, const SweepAxes& axes, const Metric& metric) {
    if (!axes.receiver_labels.empty() && axes.receiver_labels.size() != axes.receiver_impedance.size()) {
        throw InvalidArgument("receiver_labels must match receiver_impedance in length");
    }
    SweepResult result{metric, axes, std::vector<SweepCell>(axes.size()), std::nullopt};
    parallel_for(axes.size(), [&](std::size_t flat) {
        const std::size_t nr = axes.receiver_count();
        const std::size_t nc = axes.cable_count();
        const std::size_t ir = flat % nr;
        const std::size_t ic = (flat / nr) % nc;
        const std::size_t ia = flat / (nr * nc);

        SweepCell cell;
        try {
            ReadoutChain chain = chain_template;
            if (!axes.area.empty()) chain = with_area(chain, axes.area[ia]);
            if (!axes.cable_length.empty()) chain = with_cable_length(chain, axes.cable_length[ic]);
            if (!axes.receiver_impedance.empty()) chain = with_receiver_impedance(chain, axes.receiver_impedance[ir]);
            cell = evaluate_metric(chain, metric);
        } catch (const Error& e) {
            cell.valid = false;
            cell.error = e.what();
            cell.area = axes.area.empty() ? chain_template.plate.area : axes.area[ia];
            cell.cable_length = axes.cable_length.empty() ? chain_template.cable.length : axes.cable_length[ic];
            cell.receiver_impedance = axes.receiver_impedance.empty()
                                          ? chain_template.receiver.impedance_at(metric.freq_hz)
                                          : axes.receiver_impedance[ir];
        }
        cell.i_area = ia;
        cell.i_cable = ic;
        cell.i_receiver = ir;
        if (!axes.receiver_labels.empty()) cell.receiver_label = axes.receiver_labels[ir];
        result.cells[flat] = std::move(cell);
    });
    return result;
}

SweepResult normalize(SweepResult result, std::size_t reference) {
    if (reference >= result.cells.size()) throw InvalidArgument("normalization reference is outside the grid");
    const SweepCell& ref = result.cells[reference];
    if (!ref.valid) throw InvalidArgument("normalization reference cell is invalid: " + ref.error);
    const double r = ref.value;
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("normalization reference value must be positive");
    for (auto& cell : result.cells) {
        if (cell.valid) cell.value /= r;
    }
    const double previous = result.normalization ? result.normalization->reference_value : 1.0;
    result.normalization = Normalization{reference, previous * r};
    return result;
}

CableOptimum optimal_cable_length(const ReadoutChain& chain, double cl_min, double cl_max, double freq_hz,
                                  double resolution, Diagnostics* diagnostics) {
    detail::require_non_negative(cl_min, "cable length range minimum");
    detail::require_positive(resolution, "resolution");
    if (!(cl_max >= cl_min) || !std::isfinite(cl_max)) throw InvalidArgument("cable length range needs min <= max");
    const auto s = [&](double cl) { return h1_sensitivity(with_cable_length(chain, cl), freq_hz); };
    if (cl_max == cl_min) return {cl_min, s(cl_min), true, true};

    // dense scan: unimodality check and boundary guard
    const auto steps = static_cast<std::size_t>(std::ceil((cl_max - cl_min) / resolution));
    std::vector<double> scan(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        scan[i] = s(std::min(cl_max, cl_min + static_cast<double>(i) * resolution));
    }
    std::size_t maxima = 0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const bool left = i == 0 || scan[i] > scan[i - 1];
        const bool right = i == steps || scan[i] >= scan[i + 1];
        if (left && right) ++maxima;
    }
    const bool unimodal = maxima <= 1;
    if (!unimodal && diagnostics) diagnostics->warn("|H1| is not unimodal over the cable length range");

    constexpr double inv_phi = 0.6180339887498949;
    double a = cl_min;
    double b = cl_max;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = s(x1);
    double f2 = s(x2);
    while (b - a > resolution) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = s(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = s(x1);
        }
    }
    CableOptimum best{0.5 * (a + b), s(0.5 * (a + b)), false, unimodal};
    for (const double edge : {cl_min, cl_max}) {
        const double v = s(edge);
        if (v >= best.sensitivity) best = {edge, v, true, unimodal};
    }
    return best;
}

}  // namespace paik
