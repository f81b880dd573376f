#pragma once

// JSON run configuration. Every section is checked strictly: unknown fields,
// missing required fields and type mismatches are all collected and reported
// together in one ConfigError.

#include "paik/model.hpp"
#include "paik/spectrum.hpp"
#include "paik/sweep.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace paik {

inline constexpr int kSchemaVersion = 1;

struct AnalysisConfig {
    FrequencyGrid grid{0.1e6, 20e6, 400};
    double fs_hz = 40e6;
    double temperature_k = 293.0;
    bool pressure_referred = true;
    double band_level_db = -6.0;
};

struct SweepReference {
    std::size_t area = 0;
    std::size_t cable_length = 0;
    std::size_t receiver = 0;
};

struct SweepConfig {
    Metric metric;
    SweepAxes axes;
    std::optional<SweepReference> normalize_to;
};

struct FitConfig {
    std::vector<double> diameters;
    double jitter = 0.05;
    std::uint64_t seed = 1;
};

struct ResonanceConfig {
    double diameter = 0.0;
    double v_shear = 0.0;
    std::size_t count = 5;
    std::optional<FitConfig> fit;
};

struct Config {
    int schema_version = kSchemaVersion;
    std::string description;
    ReadoutChain chain;
    AnalysisConfig analysis;
    std::optional<SweepConfig> sweep;
    std::optional<ResonanceConfig> resonance;
};

Config parse_config(const nlohmann::json& j);
Config parse_config_text(const std::string& text);
Config load_config(const std::filesystem::path& path);

nlohmann::json chain_to_json(const ReadoutChain& chain);
ReadoutChain chain_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Config& config);

}  // namespace paik
