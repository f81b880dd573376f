#include "paik/config.hpp"

#include "paik/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace paik {

namespace {

using nlohmann::json;

struct Problems {
    std::vector<std::string> unknown;
    std::vector<std::string> missing;
    std::vector<std::string> invalid;

    bool empty() const { return unknown.empty() && missing.empty() && invalid.empty(); }
};

// Reads one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const json& j, std::string path, Problems& problems)
        : j_(j), path_(std::move(path)), problems_(problems) {
        if (!j_.is_object()) {
            problems_.invalid.push_back(path_ + " (expected an object)");
            ok_ = false;
        }
    }

    ~Section() {
        if (!ok_) return;
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) problems_.unknown.push_back(field(it.key()));
        }
    }

    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;

    bool has(const std::string& key) {
        if (!ok_) return false;
        seen_.insert(key);
        return j_.contains(key);
    }

    const json* node(const std::string& key, bool required) {
        if (!has(key)) {
            if (required && ok_) problems_.missing.push_back(field(key));
            return nullptr;
        }
        return &j_.at(key);
    }

    double number(const std::string& key, double fallback = 0.0, bool required = true) {
        const json* n = node(key, required);
        if (!n) return fallback;
        if (!n->is_number()) {
            problems_.invalid.push_back(field(key) + " (expected a number)");
            return fallback;
        }
        return n->get<double>();
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback = 0, bool required = true) {
        const json* n = node(key, required);
        if (!n) return fallback;
        if (!n->is_number_integer()) {
            problems_.invalid.push_back(field(key) + " (expected an integer)");
            return fallback;
        }
        return n->get<std::int64_t>();
    }

    std::string text(const std::string& key, std::string fallback = {}, bool required = true) {
        const json* n = node(key, required);
        if (!n) return fallback;
        if (!n->is_string()) {
            problems_.invalid.push_back(field(key) + " (expected a string)");
            return fallback;
        }
        return n->get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback, bool required = false) {
        const json* n = node(key, required);
        if (!n) return fallback;
        if (!n->is_boolean()) {
            problems_.invalid.push_back(field(key) + " (expected true or false)");
            return fallback;
        }
        return n->get<bool>();
    }

    std::vector<double> numbers(const std::string& key, bool required = true) {
        const json* n = node(key, required);
        std::vector<double> out;
        if (!n) return out;
        if (!n->is_array()) {
            problems_.invalid.push_back(field(key) + " (expected an array of numbers)");
            return out;
        }
        for (std::size_t i = 0; i < n->size(); ++i) {
            if (!(*n)[i].is_number()) {
                problems_.invalid.push_back(field(key) + "[" + std::to_string(i) + "] (expected a number)");
                continue;
            }
            out.push_back((*n)[i].get<double>());
        }
        return out;
    }

    std::optional<std::complex<double>> complex(const std::string& key, bool required = true) {
        const json* n = node(key, required);
        if (!n) return std::nullopt;
        if (!n->is_array() || n->size() != 2 || !(*n)[0].is_number() || !(*n)[1].is_number()) {
            problems_.invalid.push_back(field(key) + " (expected [re, im])");
            return std::nullopt;
        }
        return std::complex<double>((*n)[0].get<double>(), (*n)[1].get<double>());
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    const std::string& path() const { return path_; }
    Problems& problems() { return problems_; }

private:
    const json& j_;
    std::string path_;
    Problems& problems_;
    std::set<std::string> seen_;
    bool ok_ = true;
};

PiezoPlate read_plate(Section& s) {
    PiezoPlate p;
    p.thickness = s.number("thickness_m");
    p.density = s.number("density_kg_m3");
    p.stiffness_c33d = s.number("stiffness_c33d_pa");
    p.h33 = s.number("h33_v_per_m");
    p.eps33s = s.number("eps33s_f_per_m");
    p.diameter = s.optional_number("diameter_m");
    const auto area = s.optional_number("area_m2");
    if (area) {
        p.area = *area;
    } else if (p.diameter) {
        p.area = area_from_diameter(*p.diameter);
    } else {
        s.problems().missing.push_back(s.field("diameter_m") + " or " + s.field("area_m2"));
    }
    return p;
}

PassiveLayer read_layer(Section& s, double plate_area) {
    PassiveLayer l;
    l.thickness = s.number("thickness_m");
    l.density = s.number("density_kg_m3");
    l.velocity = s.number("velocity_m_per_s");
    l.area = s.optional_number("area_m2").value_or(plate_area);
    return l;
}

CableSpec read_cable(Section& s) {
    CableSpec c;
    c.length = s.number("length_m");
    c.r_per_m = s.number("r_ohm_per_m");
    c.l_per_m = s.number("l_h_per_m");
    c.c_per_m = s.number("c_f_per_m");
    return c;
}

AmpNoise read_amp(Section& s) { return {s.number("e_n_v_per_rthz"), s.number("i_n_a_per_rthz")}; }

ReceiverSpec read_receiver(Section& s) {
    ReceiverSpec r;
    const bool constant = s.has("impedance_ohm");
    const bool table = s.has("impedance_table");
    if (constant == table) {
        s.problems().invalid.push_back(s.field("impedance_ohm") + " / " + s.field("impedance_table") +
                                       " (exactly one is required)");
    } else if (constant) {
        if (const auto z = s.complex("impedance_ohm")) r.impedance = *z;
    } else {
        const json* t = s.node("impedance_table", true);
        ReceiverSpec::Table points;
        if (!t->is_array()) {
            s.problems().invalid.push_back(s.field("impedance_table") + " (expected an array)");
        } else {
            for (std::size_t i = 0; i < t->size(); ++i) {
                Section p((*t)[i], s.field("impedance_table") + "[" + std::to_string(i) + "]", s.problems());
                const double f = p.number("freq_hz");
                const auto z = p.complex("impedance_ohm");
                points.push_back({f, z.value_or(std::complex<double>{})});
            }
        }
        r.impedance = points;
    }
    if (const json* a = s.node("amp_noise", false)) {
        Section amp(*a, s.field("amp_noise"), s.problems());
        r.amp_noise = read_amp(amp);
    }
    return r;
}

ReadoutChain read_chain(Section& s) {
    ReadoutChain c;
    if (const json* p = s.node("plate", true)) {
        Section plate(*p, s.field("plate"), s.problems());
        c.plate = read_plate(plate);
    }
    if (const json* m = s.node("matching", false)) {
        Section matching(*m, s.field("matching"), s.problems());
        c.matching = read_layer(matching, c.plate.area);
    }
    if (const json* b = s.node("backing", true)) {
        Section backing(*b, s.field("backing"), s.problems());
        c.backing = read_layer(backing, c.plate.area);
    }
    if (const json* m = s.node("medium", true)) {
        Section medium(*m, s.field("medium"), s.problems());
        const auto rayl = medium.optional_number("impedance_rayl");
        const auto force = medium.optional_number("force_impedance_ns_per_m");
        if (rayl.has_value() == force.has_value()) {
            s.problems().invalid.push_back(medium.field("impedance_rayl") + " / " +
                                           medium.field("force_impedance_ns_per_m") + " (exactly one is required)");
        } else {
            c.medium_impedance = force ? *force : *rayl * c.plate.area;
        }
    }
    if (const json* k = s.node("cable", true)) {
        Section cable(*k, s.field("cable"), s.problems());
        c.cable = read_cable(cable);
    }
    if (const json* r = s.node("receiver", true)) {
        Section receiver(*r, s.field("receiver"), s.problems());
        c.receiver = read_receiver(receiver);
    }
    return c;
}

FrequencyGrid read_grid(Section& s) {
    FrequencyGrid g;
    g.f_min = s.number("f_min_hz");
    g.f_max = s.number("f_max_hz");
    const auto n = s.integer("n_points");
    g.n_points = n > 0 ? static_cast<std::size_t>(n) : 0;
    return g;
}

AnalysisConfig read_analysis(Section& s) {
    AnalysisConfig a;
    if (const json* g = s.node("grid", false)) {
        Section grid(*g, s.field("grid"), s.problems());
        a.grid = read_grid(grid);
    }
    a.fs_hz = s.number("fs_hz", a.fs_hz, false);
    a.temperature_k = s.number("temperature_k", a.temperature_k, false);
    a.pressure_referred = s.boolean("pressure_referred", a.pressure_referred);
    a.band_level_db = s.number("band_level_db", a.band_level_db, false);
    return a;
}

Metric read_metric(Section& s, const AnalysisConfig& analysis) {
    Metric m;
    const std::string kind = s.text("metric");
    try {
        if (!kind.empty()) m.kind = parse_metric(kind);
    } catch (const InvalidArgument&) {
        s.problems().invalid.push_back(s.field("metric") + " (expected h1_mag_at_f, h2_band or snr)");
    }
    m.freq_hz = s.number("freq_hz", m.freq_hz, m.kind == MetricKind::h1_mag_at_f);
    m.band = analysis.grid;
    if (const json* g = s.node("band", false)) {
        Section grid(*g, s.field("band"), s.problems());
        m.band = read_grid(grid);
    }
    m.band_level_db = analysis.band_level_db;
    m.temperature_k = analysis.temperature_k;
    if (const json* e = s.node("excitation", false)) {
        Section ex(*e, s.field("excitation"), s.problems());
        m.excitation.pressure_pa = ex.number("pressure_pa");
        const std::string shape = ex.text("shape", "flat", false);
        if (shape == "flat") {
            m.excitation.shape = Excitation::Shape::flat;
        } else if (shape == "tone") {
            m.excitation.shape = Excitation::Shape::tone;
            m.excitation.tone_hz = ex.number("tone_hz");
        } else {
            s.problems().invalid.push_back(ex.field("shape") + " (expected flat or tone)");
        }
    }
    return m;
}

SweepConfig read_sweep(Section& s, const AnalysisConfig& analysis) {
    SweepConfig c;
    c.metric = read_metric(s, analysis);
    const bool diameters = s.has("diameters_m");
    const bool areas = s.has("areas_m2");
    if (diameters && areas) {
        s.problems().invalid.push_back(s.field("diameters_m") + " / " + s.field("areas_m2") + " (give only one)");
    } else if (diameters) {
        for (const double d : s.numbers("diameters_m")) c.axes.area.push_back(area_from_diameter(d));
    } else if (areas) {
        c.axes.area = s.numbers("areas_m2");
    }
    if (s.has("cable_lengths_m")) c.axes.cable_length = s.numbers("cable_lengths_m");
    if (const json* r = s.node("receivers", false)) {
        if (!r->is_array()) {
            s.problems().invalid.push_back(s.field("receivers") + " (expected an array)");
        } else {
            bool any_label = false;
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < r->size(); ++i) {
                Section rx((*r)[i], s.field("receivers") + "[" + std::to_string(i) + "]", s.problems());
                const std::string label = rx.text("label", {}, false);
                any_label = any_label || !label.empty();
                labels.push_back(label);
                c.axes.receiver_impedance.push_back(rx.complex("impedance_ohm").value_or(std::complex<double>{}));
            }
            if (any_label) c.axes.receiver_labels = labels;
        }
    }
    if (const json* n = s.node("normalize_to", false)) {
        Section ref(*n, s.field("normalize_to"), s.problems());
        SweepReference r;
        r.area = static_cast<std::size_t>(std::max<std::int64_t>(0, ref.integer("area_index", 0, false)));
        r.cable_length = static_cast<std::size_t>(std::max<std::int64_t>(0, ref.integer("cable_length_index", 0, false)));
        r.receiver = static_cast<std::size_t>(std::max<std::int64_t>(0, ref.integer("receiver_index", 0, false)));
        if (r.area >= c.axes.area_count() || r.cable_length >= c.axes.cable_count() ||
            r.receiver >= c.axes.receiver_count()) {
            s.problems().invalid.push_back(ref.path() + " (index outside the sweep axes)");
        }
        c.normalize_to = r;
    }
    return c;
}

ResonanceConfig read_resonance(Section& s) {
    ResonanceConfig r;
    r.diameter = s.number("diameter_m");
    r.v_shear = s.number("v_shear_m_per_s");
    const auto count = s.integer("count", 5, false);
    r.count = count > 0 ? static_cast<std::size_t>(count) : 0;
    if (count < 1) s.problems().invalid.push_back(s.field("count") + " (must be >= 1)");
    if (const json* f = s.node("fit", false)) {
        Section fit(*f, s.field("fit"), s.problems());
        FitConfig fc;
        fc.diameters = fit.numbers("diameters_m");
        fc.jitter = fit.number("jitter", fc.jitter, false);
        fc.seed = static_cast<std::uint64_t>(fit.integer("seed", 1, false));
        r.fit = fc;
    }
    return r;
}

void raise(const Problems& p) {
    if (p.empty()) return;
    std::vector<std::string> fields;
    std::string what;
    const auto add = [&](const std::vector<std::string>& list, const char* label) {
        if (list.empty()) return;
        if (!what.empty()) what += "; ";
        what += label;
        what += ' ';
        for (std::size_t i = 0; i < list.size(); ++i) what += (i ? ", " : "") + list[i];
        fields.insert(fields.end(), list.begin(), list.end());
    };
    add(p.unknown, "unknown fields:");
    add(p.missing, "missing fields:");
    add(p.invalid, "invalid fields:");
    throw ConfigError("invalid config: " + what, fields);
}

template <typename Fn>
auto checked(Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json layer_json(const PassiveLayer& l) {
    return {{"thickness_m", l.thickness}, {"density_kg_m3", l.density}, {"velocity_m_per_s", l.velocity},
            {"area_m2", l.area}};
}

json grid_json(const FrequencyGrid& g) {
    return {{"f_min_hz", g.f_min}, {"f_max_hz", g.f_max}, {"n_points", g.n_points}};
}

}  // namespace

ReadoutChain chain_from_json(const json& j) {
    Problems problems;
    ReadoutChain chain;
    {
        Section s(j, "", problems);
        chain = read_chain(s);
    }
    raise(problems);
    checked([&] {
        chain.validate();
        return 0;
    });
    return chain;
}

Config parse_config(const json& j) {
    Problems problems;
    Config c;
    {
        Section root(j, "", problems);
        const auto version = root.integer("schema_version");
        if (root.has("schema_version") && version != kSchemaVersion) {
            problems.invalid.push_back("schema_version (unsupported version " + std::to_string(version) +
                                       ", expected " + std::to_string(kSchemaVersion) + ")");
        }
        c.schema_version = static_cast<int>(version);
        c.description = root.text("description", {}, false);
        if (const json* ch = root.node("chain", true)) {
            Section chain(*ch, "chain", problems);
            c.chain = read_chain(chain);
        }
        if (const json* a = root.node("analysis", false)) {
            Section analysis(*a, "analysis", problems);
            c.analysis = read_analysis(analysis);
        }
        if (const json* sw = root.node("sweep", false)) {
            Section sweep(*sw, "sweep", problems);
            c.sweep = read_sweep(sweep, c.analysis);
        }
        if (const json* r = root.node("resonance", false)) {
            Section res(*r, "resonance", problems);
            c.resonance = read_resonance(res);
        }
    }
    raise(problems);
    checked([&] {
        c.chain.validate();
        c.analysis.grid.validate();
        detail::require_positive(c.analysis.fs_hz, "analysis.fs_hz");
        detail::require_non_negative(c.analysis.temperature_k, "analysis.temperature_k");
        if (c.sweep) c.sweep->metric.band.validate();
        return 0;
    });
    return c;
}

Config parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

json chain_to_json(const ReadoutChain& chain) {
    json plate = {{"thickness_m", chain.plate.thickness},
                  {"density_kg_m3", chain.plate.density},
                  {"stiffness_c33d_pa", chain.plate.stiffness_c33d},
                  {"h33_v_per_m", chain.plate.h33},
                  {"eps33s_f_per_m", chain.plate.eps33s},
                  {"area_m2", chain.plate.area}};
    if (chain.plate.diameter) plate["diameter_m"] = *chain.plate.diameter;

    json receiver = json::object();
    if (chain.receiver.is_constant()) {
        receiver["impedance_ohm"] = complex_json(std::get<std::complex<double>>(chain.receiver.impedance));
    } else {
        json table = json::array();
        for (const auto& p : std::get<ReceiverSpec::Table>(chain.receiver.impedance)) {
            table.push_back({{"freq_hz", p.freq_hz}, {"impedance_ohm", complex_json(p.z)}});
        }
        receiver["impedance_table"] = table;
    }
    if (chain.receiver.amp_noise) {
        receiver["amp_noise"] = {{"e_n_v_per_rthz", chain.receiver.amp_noise->e_n},
                                 {"i_n_a_per_rthz", chain.receiver.amp_noise->i_n}};
    }

    json out = {{"plate", plate},
                {"backing", layer_json(chain.backing)},
                {"medium", {{"force_impedance_ns_per_m", chain.medium_impedance}}},
                {"cable",
                 {{"length_m", chain.cable.length},
                  {"r_ohm_per_m", chain.cable.r_per_m},
                  {"l_h_per_m", chain.cable.l_per_m},
                  {"c_f_per_m", chain.cable.c_per_m}}},
                {"receiver", receiver}};
    if (chain.matching) out["matching"] = layer_json(*chain.matching);
    return out;
}

json config_to_json(const Config& config) {
    json out = {{"schema_version", config.schema_version}, {"chain", chain_to_json(config.chain)}};
    if (!config.description.empty()) out["description"] = config.description;
    out["analysis"] = {{"grid", grid_json(config.analysis.grid)},
                       {"fs_hz", config.analysis.fs_hz},
                       {"temperature_k", config.analysis.temperature_k},
                       {"pressure_referred", config.analysis.pressure_referred},
                       {"band_level_db", config.analysis.band_level_db}};
    if (config.sweep) {
        const auto& s = *config.sweep;
        json sweep = {{"metric", std::string(to_string(s.metric.kind))},
                      {"freq_hz", s.metric.freq_hz},
                      {"band", grid_json(s.metric.band)}};
        if (!s.axes.area.empty()) sweep["areas_m2"] = s.axes.area;
        if (!s.axes.cable_length.empty()) sweep["cable_lengths_m"] = s.axes.cable_length;
        if (!s.axes.receiver_impedance.empty()) {
            json rx = json::array();
            for (std::size_t i = 0; i < s.axes.receiver_impedance.size(); ++i) {
                json r = {{"impedance_ohm", complex_json(s.axes.receiver_impedance[i])}};
                if (!s.axes.receiver_labels.empty()) r["label"] = s.axes.receiver_labels[i];
                rx.push_back(r);
            }
            sweep["receivers"] = rx;
        }
        if (s.metric.kind == MetricKind::snr) {
            json ex = {{"pressure_pa", s.metric.excitation.pressure_pa},
                       {"shape", s.metric.excitation.shape == Excitation::Shape::tone ? "tone" : "flat"}};
            if (s.metric.excitation.shape == Excitation::Shape::tone) ex["tone_hz"] = s.metric.excitation.tone_hz;
            sweep["excitation"] = ex;
        }
        if (s.normalize_to) {
            sweep["normalize_to"] = {{"area_index", s.normalize_to->area},
                                     {"cable_length_index", s.normalize_to->cable_length},
                                     {"receiver_index", s.normalize_to->receiver}};
        }
        out["sweep"] = sweep;
    }
    if (config.resonance) {
        const auto& r = *config.resonance;
        json res = {{"diameter_m", r.diameter}, {"v_shear_m_per_s", r.v_shear}, {"count", r.count}};
        if (r.fit) res["fit"] = {{"diameters_m", r.fit->diameters}, {"jitter", r.fit->jitter}, {"seed", r.fit->seed}};
        out["resonance"] = res;
    }
    return out;
}

}  // namespace paik
