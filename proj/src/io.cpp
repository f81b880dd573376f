#include "paik/io.hpp"

#include "paik/errors.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace paik {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

struct Row {
    std::ostream& out;
    bool first = true;

    Row& operator<<(double v) { return field(format_number(v)); }
    Row& operator<<(const std::string& s) { return field(s); }
    Row& operator<<(std::size_t v) { return field(std::to_string(v)); }

    Row& field(const std::string& s) {
        if (!first) out << ',';
        out << s;
        first = false;
        return *this;
    }

    ~Row() { out << '\n'; }
};

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (const char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "freq_hz,re,im,mag,phase_rad\n";
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const auto z = spectrum.values[i];
        Row{out} << spectrum.freqs[i] << z.real() << z.imag() << std::abs(z) << std::arg(z);
    }
}

void write_waveform_csv(std::ostream& out, const Waveform& waveform) {
    out << "t_s,value\n";
    for (Eigen::Index i = 0; i < waveform.size(); ++i) {
        Row{out} << static_cast<double>(i) * waveform.dt << waveform.samples[i];
    }
}

void write_noise_csv(std::ostream& out, const NoiseBudget& budget) {
    out << "freq_hz,source_thermal_v2_per_hz,receiver_thermal_v2_per_hz,amp_voltage_v2_per_hz,"
           "amp_current_v2_per_hz,total_v2_per_hz\n";
    const auto& c = budget.components;
    for (Eigen::Index i = 0; i < budget.psd.size(); ++i) {
        Row{out} << budget.psd.freqs[i] << c.source_thermal.values[i].real() << c.receiver_thermal.values[i].real()
                 << c.amp_voltage.values[i].real() << c.amp_current.values[i].real() << budget.psd.values[i].real();
    }
}

void write_modes_csv(std::ostream& out, const RadialModeSet& modes) {
    out << "n,j0_n,f_n_hz\n";
    for (const auto& m : modes.modes) Row{out} << m.n << m.j0n << m.f_hz;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "cell,area_m2,diameter_m,cable_length_m,receiver,zr_re_ohm,zr_im_ohm,valid,metric,value,"
           "f_lo_hz,f_hi_hz,bandwidth_hz,f_center_hz,error\n";
    const std::string metric(to_string(result.metric.kind));
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const auto& c = result.cells[i];
        Row row{out};
        row << i << c.area << std::sqrt(4.0 * c.area / std::numbers::pi) << c.cable_length << quote(c.receiver_label)
            << c.receiver_impedance.real() << c.receiver_impedance.imag() << std::string(c.valid ? "1" : "0")
            << metric;
        if (c.valid) {
            row << c.value;
        } else {
            row << std::string{};
        }
        if (c.band) {
            row << c.band->f_lo << c.band->f_hi << c.band->bandwidth << c.band->f_center;
        } else {
            row << std::string{} << std::string{} << std::string{} << std::string{};
        }
        row << quote(c.error);
    }
}

std::string sweep_to_json(const SweepResult& result) {
    using nlohmann::json;
    const auto& a = result.axes;
    json axes = {{"area_m2", a.area}, {"cable_length_m", a.cable_length}};
    json rx = json::array();
    for (std::size_t i = 0; i < a.receiver_impedance.size(); ++i) {
        json r = {{"impedance_ohm", {a.receiver_impedance[i].real(), a.receiver_impedance[i].imag()}}};
        if (!a.receiver_labels.empty()) r["label"] = a.receiver_labels[i];
        rx.push_back(r);
    }
    axes["receivers"] = rx;

    json cells = json::array();
    for (const auto& c : result.cells) {
        json cell = {{"index", {c.i_area, c.i_cable, c.i_receiver}},
                     {"area_m2", c.area},
                     {"cable_length_m", c.cable_length},
                     {"receiver_impedance_ohm", {c.receiver_impedance.real(), c.receiver_impedance.imag()}},
                     {"valid", c.valid}};
        if (c.valid) {
            cell["value"] = c.value;
        } else {
            cell["error"] = c.error;
        }
        if (c.band) {
            cell["band"] = {{"f_lo_hz", c.band->f_lo},
                            {"f_hi_hz", c.band->f_hi},
                            {"bandwidth_hz", c.band->bandwidth},
                            {"f_center_hz", c.band->f_center},
                            {"level_db", c.band->level_db},
                            {"support_width_hz", c.band->support_width}};
        }
        cells.push_back(cell);
    }
    json out = {{"metric", std::string(to_string(result.metric.kind))},
                {"shape", {a.area_count(), a.cable_count(), a.receiver_count()}},
                {"axes", axes},
                {"cells", cells}};
    if (result.normalization) {
        out["normalization"] = {{"reference_cell", result.normalization->reference},
                                {"reference_value", result.normalization->reference_value}};
    }
    return out.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + path.string());
    f << text;
    if (!f) throw Error("write failed for " + path.string());
}

}  // namespace paik
