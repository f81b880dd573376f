#include "fixtures.hpp"

#include "paik/config.hpp"
#include "paik/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace paik;
using nlohmann::json;

namespace {

json reference_json() {
    std::ifstream in(fixture::source_path("configs/reference_ch1.json"));
    return json::parse(in);
}

std::vector<std::string> error_fields(const json& j) {
    try {
        parse_config(j);
    } catch (const ConfigError& e) {
        return e.fields();
    }
    return {};
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Config, ShippedConfigsParse) {
    for (const char* name : {"reference_ch1", "reference_ch2", "reference_ch3", "reference_ch4", "area_sweep",
                             "cable_sweep", "resonance_fit"}) {
        EXPECT_NO_THROW(load_config(fixture::source_path(std::string("configs/") + name + ".json"))) << name;
    }
}

TEST(Config, MediumImpedanceScaledByArea) {
    const auto c = parse_config(reference_json());
    EXPECT_DOUBLE_EQ(c.chain.medium_impedance, 1.48e6 * c.chain.plate.area);
    EXPECT_DOUBLE_EQ(c.chain.backing.area, c.chain.plate.area);
}

TEST(Config, UnknownFieldsAllListed) {
    auto j = reference_json();
    j["chain"]["plate"]["colour"] = "blue";
    j["extra"] = 1;
    j["chain"]["cable"]["shield"] = true;
    const auto fields = error_fields(j);
    EXPECT_TRUE(contains(fields, "chain.plate.colour"));
    EXPECT_TRUE(contains(fields, "extra"));
    EXPECT_TRUE(contains(fields, "chain.cable.shield"));
}

TEST(Config, MissingAndMistypedFields) {
    auto j = reference_json();
    j.erase("schema_version");
    j["chain"]["cable"].erase("length_m");
    j["chain"]["plate"]["density_kg_m3"] = "heavy";
    const auto fields = error_fields(j);
    EXPECT_TRUE(contains(fields, "schema_version"));
    EXPECT_TRUE(contains(fields, "chain.cable.length_m"));
    EXPECT_TRUE(contains(fields, "chain.plate.density_kg_m3 (expected a number)"));
}

TEST(Config, WrongSchemaVersion) {
    auto j = reference_json();
    j["schema_version"] = 9;
    EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, PhysicalValidationBecomesConfigError) {
    auto j = reference_json();
    j["chain"]["plate"]["thickness_m"] = -1;
    EXPECT_THROW(parse_config(j), ConfigError);
    j = reference_json();
    j["chain"]["receiver"]["impedance_ohm"] = {-5, 0};
    EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, NotJson) { EXPECT_THROW(parse_config_text("{ nope"), ConfigError); }

TEST(Config, ChainRoundTripIsLossless) {
    for (int ch = 1; ch <= 4; ++ch) {
        const auto chain = fixture::reference(ch);
        const auto j = chain_to_json(chain);
        const auto back = chain_from_json(j);
        EXPECT_EQ(chain_to_json(back), j);
        EXPECT_EQ(back.medium_impedance, chain.medium_impedance);
        EXPECT_EQ(back.plate.area, chain.plate.area);
        EXPECT_EQ(back.receiver.impedance_at(5e6), chain.receiver.impedance_at(5e6));
        EXPECT_EQ(back.receiver.amp_noise->i_n, chain.receiver.amp_noise->i_n);
    }
}

TEST(Config, TableReceiverRoundTrip) {
    auto chain = fixture::reference(1);
    chain.receiver.impedance = ReceiverSpec::Table{{1e6, {500, -800}}, {5e6, {404, -324}}, {9e6, {300, -150}}};
    const auto back = chain_from_json(chain_to_json(chain));
    EXPECT_EQ(back.receiver.impedance_at(3e6), chain.receiver.impedance_at(3e6));
    EXPECT_FALSE(back.receiver.is_constant());
}

TEST(Config, FullConfigRoundTrip) {
    for (const char* name : {"area_sweep", "cable_sweep", "resonance_fit"}) {
        const auto c = load_config(fixture::source_path(std::string("configs/") + name + ".json"));
        const auto j = config_to_json(c);
        EXPECT_EQ(config_to_json(parse_config(j)), j) << name;
    }
}

TEST(Config, SweepSection) {
    const auto c = load_config(fixture::source_path("configs/area_sweep.json"));
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->axes.size(), 8u);
    EXPECT_EQ(c.sweep->axes.receiver_labels[3], "ch4");
    EXPECT_EQ(c.sweep->normalize_to->receiver, 3u);
    auto j = reference_json();
    j["sweep"] = {{"metric", "loudness"}};
    EXPECT_THROW(parse_config(j), ConfigError);
}
