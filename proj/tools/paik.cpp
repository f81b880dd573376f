// paik: command-line front end for the readout-chain model.

#include "paik/paik.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace paik;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;

struct Options {
    std::string config;
    std::string out = "out";
    std::string grid;
    double fs = 0.0;
    std::string metric;
    bool plot = true;
    std::optional<std::uint64_t> seed;
};

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

void write_csv(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ostringstream os;
    body(os);
    write_file(path, os.str());
}

class Run {
public:
    Run(std::string subcommand, Options opt) : sub_(std::move(subcommand)), opt_(std::move(opt)) {
        const std::string text = read_bytes(opt_.config);
        config_ = parse_config_text(text);
        hash_ = sha256_hex(text);
        if (!opt_.grid.empty()) {
            try {
                config_.analysis.grid = FrequencyGrid::parse(opt_.grid);
            } catch (const InvalidArgument& e) {
                throw ConfigError(std::string("--grid: ") + e.what());
            }
        }
        if (opt_.fs > 0.0) config_.analysis.fs_hz = opt_.fs;
        fs::create_directories(opt_.out);
    }

    Config& config() { return config_; }
    const Options& options() const { return opt_; }
    fs::path path(const std::string& name) const { return fs::path(opt_.out) / name; }

    void output(const std::string& name) { outputs_.push_back(name); }

    void report(const Diagnostics& d) const {
        for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
    }

    void write_manifest(nlohmann::json parameters) const {
        nlohmann::json m = {{"tool", "paik"},
                            {"version", PAIK_VERSION},
                            {"subcommand", sub_},
                            {"config", opt_.config},
                            {"config_sha256", hash_},
                            {"output_dir", opt_.out},
                            {"parameters", std::move(parameters)},
                            {"outputs", outputs_}};
        write_file(path("manifest.json"), m.dump(2) + "\n");
    }

private:
    std::string sub_;
    Options opt_;
    Config config_;
    std::string hash_;
    std::vector<std::string> outputs_;
};

nlohmann::json grid_json(const FrequencyGrid& g) {
    return {{"f_min_hz", g.f_min}, {"f_max_hz", g.f_max}, {"n_points", g.n_points}};
}

int cmd_freq_response(Run& run) {
    auto& cfg = run.config();
    Diagnostics diag;
    const Spectrum h =
        frequency_response(cfg.chain, cfg.analysis.grid, {cfg.analysis.pressure_referred}, &diag);
    run.report(diag);
    write_csv(run.path("spectrum.csv"), [&](std::ostream& os) { write_spectrum_csv(os, h); });
    run.output("spectrum.csv");
    if (run.options().plot) {
        svg::Series mag{"|H2|", {}, {}}, phase{"phase", {}, {}};
        for (Eigen::Index i = 0; i < h.size(); ++i) {
            mag.x.push_back(h.freqs[i] / 1e6);
            mag.y.push_back(std::abs(h.values[i]));
            phase.x.push_back(h.freqs[i] / 1e6);
            phase.y.push_back(std::arg(h.values[i]));
        }
        const std::string unit(to_string(h.unit));
        write_file(run.path("spectrum.svg"),
                   svg::line_plot({{{"Receive response", "frequency (MHz)", "|H2| (" + unit + ")"}, {mag}},
                                   {{"", "frequency (MHz)", "phase (rad)"}, {phase}}}));
        run.output("spectrum.svg");
    }
    try {
        const auto bm = band_metrics(h, cfg.analysis.band_level_db);
        std::printf("band %.6g dB: f_lo=%.6g Hz f_hi=%.6g Hz bandwidth=%.6g Hz f_center=%.6g Hz\n", bm.level_db,
                    bm.f_lo, bm.f_hi, bm.bandwidth, bm.f_center);
    } catch (const BandUnbounded& e) {
        std::cerr << "warning: " << e.what() << '\n';
    }
    run.write_manifest({{"grid", grid_json(cfg.analysis.grid)}, {"pressure_referred", cfg.analysis.pressure_referred}});
    return kExitOk;
}

int cmd_impulse(Run& run) {
    auto& cfg = run.config();
    Diagnostics diag;
    const Waveform w = chain_impulse_response(cfg.chain, cfg.analysis.fs_hz, 1024, {cfg.analysis.pressure_referred}, &diag);
    run.report(diag);
    write_csv(run.path("waveform.csv"), [&](std::ostream& os) { write_waveform_csv(os, w); });
    run.output("waveform.csv");
    if (run.options().plot) {
        svg::Series s{"h(t)", {}, {}};
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            s.x.push_back(static_cast<double>(i) * w.dt * 1e6);
            s.y.push_back(w.samples[i]);
        }
        write_file(run.path("waveform.svg"), svg::line_plot({{{"Impulse response", "time (us)", "h(t)"}, {s}}}));
        run.output("waveform.svg");
    }
    std::printf("samples=%ld dt=%.6g s tail_energy=%.3g\n", static_cast<long>(w.size()), w.dt, tail_energy_fraction(w));
    run.write_manifest({{"fs_hz", cfg.analysis.fs_hz}, {"pressure_referred", cfg.analysis.pressure_referred}});
    return kExitOk;
}

std::string cell_row_label(const SweepCell& c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "d=%.3g mm, CL=%.3g m", std::sqrt(4.0 * c.area / std::numbers::pi) * 1e3,
                  c.cable_length);
    return buf;
}

int cmd_sweep(Run& run) {
    auto& cfg = run.config();
    if (!cfg.sweep) throw ConfigError("config has no sweep section", {"sweep"});
    SweepConfig sc = *cfg.sweep;
    if (!run.options().metric.empty()) {
        try {
            sc.metric.kind = parse_metric(run.options().metric);
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("--metric: ") + e.what());
        }
    }
    SweepResult result = sweep_grid(cfg.chain, sc.axes, sc.metric);
    if (sc.normalize_to) {
        result = normalize(result, result.index(sc.normalize_to->area, sc.normalize_to->cable_length,
                                                sc.normalize_to->receiver));
    }
    for (const auto& c : result.cells) {
        if (!c.valid) std::cerr << "warning: invalid cell: " << c.error << '\n';
    }
    write_csv(run.path("sweep.csv"), [&](std::ostream& os) { write_sweep_csv(os, result); });
    write_file(run.path("sweep.json"), sweep_to_json(result));
    run.output("sweep.csv");
    run.output("sweep.json");
    if (run.options().plot) {
        const auto& a = result.axes;
        std::vector<std::string> rows, cols;
        std::vector<std::vector<double>> values;
        for (std::size_t r = 0; r < a.receiver_count(); ++r) {
            cols.push_back(a.receiver_labels.empty() ? "rx" + std::to_string(r) : a.receiver_labels[r]);
        }
        for (std::size_t ia = 0; ia < a.area_count(); ++ia) {
            for (std::size_t ic = 0; ic < a.cable_count(); ++ic) {
                rows.push_back(cell_row_label(result.cells[result.index(ia, ic, 0)]));
                std::vector<double> row;
                for (std::size_t ir = 0; ir < a.receiver_count(); ++ir) {
                    const auto& c = result.cells[result.index(ia, ic, ir)];
                    row.push_back(c.valid ? c.value : std::nan(""));
                }
                values.push_back(row);
            }
        }
        write_file(run.path("sweep.svg"),
                   svg::heatmap({std::string("Sweep: ") + std::string(to_string(sc.metric.kind)), "receiver",
                                 "element / cable"},
                                rows, cols, values));
        run.output("sweep.svg");
    }
    std::printf("cells=%zu metric=%s\n", result.cells.size(), std::string(to_string(sc.metric.kind)).c_str());
    run.write_manifest({{"metric", std::string(to_string(sc.metric.kind))}, {"freq_hz", sc.metric.freq_hz}});
    return kExitOk;
}

int cmd_noise(Run& run) {
    auto& cfg = run.config();
    Diagnostics diag;
    const NoiseBudget nb = noise_psd(cfg.chain, cfg.analysis.grid, cfg.analysis.temperature_k, &diag);
    const double ratio =
        snr(cfg.chain, {}, {cfg.analysis.grid.f_min > 0 ? cfg.analysis.grid.f_min : cfg.analysis.grid.step(),
                            cfg.analysis.grid.f_max},
            cfg.analysis.grid.n_points, cfg.analysis.temperature_k);
    run.report(diag);
    write_csv(run.path("noise.csv"), [&](std::ostream& os) { write_noise_csv(os, nb); });
    run.output("noise.csv");
    std::printf("band_avg_psd=%.6g V^2/Hz over %.6g-%.6g Hz\nsnr_1pa=%.6g\n", nb.band_avg, nb.band_lo, nb.band_hi,
                ratio);
    run.write_manifest({{"grid", grid_json(cfg.analysis.grid)}, {"temperature_k", cfg.analysis.temperature_k}});
    return kExitOk;
}

int cmd_resonance(Run& run) {
    auto& cfg = run.config();
    if (!cfg.resonance) throw ConfigError("config has no resonance section", {"resonance"});
    const auto& rc = *cfg.resonance;
    const RadialModeSet modes = radial_modes(rc.diameter, rc.v_shear, rc.count);
    write_csv(run.path("modes.csv"), [&](std::ostream& os) { write_modes_csv(os, modes); });
    run.output("modes.csv");
    nlohmann::json params = {{"diameter_m", rc.diameter}, {"v_shear_m_per_s", rc.v_shear}, {"count", rc.count}};
    if (rc.fit) {
        const std::uint64_t seed = run.options().seed.value_or(rc.fit->seed);
        const auto points = synthetic_resonance_scan(rc.fit->diameters, rc.v_shear, rc.fit->jitter, seed);
        const auto fit = fit_inverse_diameter(points);
        write_csv(run.path("fit_points.csv"), [&](std::ostream& os) {
            os << "diameter_m,inverse_diameter_per_m,f_lowest_hz\n";
            for (const auto& p : points) {
                os << format_number(p.diameter) << ',' << format_number(1.0 / p.diameter) << ','
                   << format_number(p.f_lowest) << '\n';
            }
        });
        run.output("fit_points.csv");
        std::printf("fit: slope=%.6g Hz*m intercept=%.6g Hz r_squared=%.6g\n", fit.slope, fit.intercept,
                    fit.r_squared);
        params["seed"] = seed;
        params["jitter"] = rc.fit->jitter;
    }
    std::printf("f1=%.6g Hz\n", modes.modes.front().f_hz);
    run.write_manifest(params);
    return kExitOk;
}

int cmd_validate(Run& run) {
    const auto checks = run_identity_suite(run.config().chain);
    bool ok = true;
    std::ostringstream report;
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s %s (max rel error %.3e, tol %.0e, n=%zu)\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.max_error, c.tolerance, c.samples);
        report << line;
        ok = ok && c.passed;
    }
    std::cout << report.str();
    write_file(run.path("validate.txt"), report.str());
    run.output("validate.txt");
    run.write_manifest(nlohmann::json::object());
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photoacoustic readout-chain model"};
    app.set_version_flag("--version", PAIK_VERSION);
    app.require_subcommand(1);

    Options opt;
    std::uint64_t seed = 0;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Chain configuration (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
        sub->add_flag("--plot,!--no-plot", opt.plot, "Write SVG plots")->capture_default_str();
    };

    auto* freq = app.add_subcommand("freq-response", "Full-band receive response H2");
    add_common(freq);
    freq->add_option("--grid", opt.grid, "Frequency grid fmin,fmax,n (Hz)");

    auto* impulse = app.add_subcommand("impulse", "Impulse response of the chain");
    add_common(impulse);
    impulse->add_option("--fs", opt.fs, "Sample rate (Hz)")->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep over area, cable length and receiver");
    add_common(sweep);
    sweep->add_option("--metric", opt.metric, "h1_mag_at_f, h2_band or snr");

    auto* noise = app.add_subcommand("noise", "Noise PSD budget and SNR");
    add_common(noise);
    noise->add_option("--grid", opt.grid, "Frequency grid fmin,fmax,n (Hz)");

    auto* resonance = app.add_subcommand("resonance", "Radial resonance modes and inverse-diameter fit");
    add_common(resonance);
    auto* seed_opt = resonance->add_option("--seed", seed, "Seed for the jittered synthetic fit");

    auto* validate = app.add_subcommand("validate", "Analytic identity suite");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    if (seed_opt->count() > 0) opt.seed = seed;

    CLI::App* chosen = app.get_subcommands().front();
    try {
        Run run(chosen->get_name(), opt);
        if (chosen == freq) return cmd_freq_response(run);
        if (chosen == impulse) return cmd_impulse(run);
        if (chosen == sweep) return cmd_sweep(run);
        if (chosen == noise) return cmd_noise(run);
        if (chosen == resonance) return cmd_resonance(run);
        return cmd_validate(run);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Singularity& e) {
        std::cerr << "singularity: " << e.what() << '\n';
        return kExitSingular;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
