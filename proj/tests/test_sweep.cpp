#include "fixtures.hpp"

#include "paik/sweep.hpp"

#include <gtest/gtest.h>

using namespace paik;
using C = std::complex<double>;

namespace {

SweepAxes area_axes() {
    SweepAxes a;
    a.area = {area_from_diameter(1.5e-3), area_from_diameter(3e-3)};
    a.cable_length = {1.5};
    a.receiver_impedance.assign(fixture::channel_impedances.begin(), fixture::channel_impedances.end());
    a.receiver_labels = {"ch1", "ch2", "ch3", "ch4"};
    return a;
}

}  // namespace

TEST(Sweep, SinglePointEqualsDirectCall) {
    const auto chain = fixture::reference(2);
    const Metric m{};
    const auto r = sweep_grid(chain, SweepAxes{}, m);
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_EQ(r.cells[0].value, evaluate_metric(chain, m).value);
}

TEST(Sweep, AreaGainLargestAtChannel4) {
    const auto r = sweep_grid(fixture::reference(1), area_axes(), Metric{});
    ASSERT_EQ(r.cells.size(), 8u);
    double prev = 0;
    for (std::size_t ch = 0; ch < 4; ++ch) {
        const double gain = r.cells[r.index(1, 0, ch)].value / r.cells[r.index(0, 0, ch)].value;
        EXPECT_GT(gain, prev) << ch;
        prev = gain;
    }
}

TEST(Sweep, CellsIndependentOfGrid) {
    const auto chain = fixture::reference(1);
    const auto full = sweep_grid(chain, area_axes(), Metric{});
    SweepAxes sub;
    sub.area = {area_from_diameter(3e-3)};
    sub.receiver_impedance = {fixture::channel_impedances[2]};
    const auto part = sweep_grid(chain, sub, Metric{});
    EXPECT_EQ(part.cells[0].value, full.cells[full.index(1, 0, 2)].value);
}

TEST(Sweep, InvalidCellDoesNotStopSweep) {
    SweepAxes a;
    a.cable_length = {1.0, -2.0, 3.0};
    const auto r = sweep_grid(fixture::reference(1), a, Metric{});
    EXPECT_TRUE(r.cells[0].valid);
    EXPECT_FALSE(r.cells[1].valid);
    EXPECT_FALSE(r.cells[1].error.empty());
    EXPECT_TRUE(r.cells[2].valid);
}

TEST(Sweep, BandMetricAttached) {
    Metric m;
    m.kind = MetricKind::h2_band;
    m.band = {0.05e6, 20e6, 200};
    const auto c = evaluate_metric(fixture::reference(4), m);
    ASSERT_TRUE(c.band.has_value());
    EXPECT_GT(c.band->bandwidth, 0);
}

TEST(Normalize, ReferenceIsOneAndIdempotent) {
    const auto r = sweep_grid(fixture::reference(1), area_axes(), Metric{});
    const auto once = normalize(r, r.index(0, 0, 3));
    EXPECT_EQ(once.cells[r.index(0, 0, 3)].value, 1.0);
    const auto twice = normalize(once, r.index(0, 0, 3));
    for (std::size_t i = 0; i < r.cells.size(); ++i) EXPECT_EQ(once.cells[i].value, twice.cells[i].value);
    EXPECT_EQ(once.normalization->reference_value, twice.normalization->reference_value);
}

TEST(Normalize, RatiosInvariantUnderGlobalGain) {
    auto r = sweep_grid(fixture::reference(1), area_axes(), Metric{});
    auto scaled = r;
    for (auto& c : scaled.cells) c.value *= 17.5;
    const auto a = normalize(r, 3);
    const auto b = normalize(scaled, 3);
    for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_NEAR(a.cells[i].value, b.cells[i].value, 1e-15);
}

TEST(Normalize, RejectsInvalidReference) {
    SweepAxes a;
    a.cable_length = {1.0, -2.0};
    const auto r = sweep_grid(fixture::reference(1), a, Metric{});
    EXPECT_THROW(normalize(r, 1), InvalidArgument);
    EXPECT_THROW(normalize(r, 5), InvalidArgument);
}

TEST(CableOptimum, HighImpedanceChannelPrefersShortestCable) {
    const auto chain = fixture::reference(1);
    const auto o = optimal_cable_length(chain, 1.5, 3.5, 5e6);
    EXPECT_EQ(o.cable_length, 1.5);
    EXPECT_TRUE(o.at_boundary);
    const double drop = 1 - h1_sensitivity(with_cable_length(chain, 3.5), 5e6) / o.sensitivity;
    EXPECT_GT(drop, 0.1);
}

TEST(CableOptimum, LowImpedanceChannelHasInteriorMaximum) {
    const auto chain = fixture::reference(4);
    Diagnostics d;
    const auto o = optimal_cable_length(chain, 1.5, 3.5, 5e6, 1e-3, &d);
    EXPECT_FALSE(o.at_boundary);
    EXPECT_TRUE(o.unimodal);
    EXPECT_TRUE(d.warnings.empty());
    // dense 1 mm scan
    double best = 0, best_cl = 0;
    for (int i = 0; i <= 2000; ++i) {
        const double cl = 1.5 + i * 1e-3;
        const double s = h1_sensitivity(with_cable_length(chain, cl), 5e6);
        if (s > best) {
            best = s;
            best_cl = cl;
        }
    }
    EXPECT_NEAR(o.cable_length, best_cl, 1e-3);
    EXPECT_GT(o.cable_length, 1.5);
    EXPECT_LT(o.cable_length, 3.5);
    const double variation = o.sensitivity / h1_sensitivity(with_cable_length(chain, 1.5), 5e6) - 1;
    EXPECT_GT(variation, 0.0);
    EXPECT_LT(variation, 0.1);
}

TEST(CableOptimum, DegenerateRange) {
    const auto o = optimal_cable_length(fixture::reference(2), 2.0, 2.0, 5e6);
    EXPECT_EQ(o.cable_length, 2.0);
    EXPECT_THROW(optimal_cable_length(fixture::reference(2), 3.0, 2.0, 5e6), InvalidArgument);
}

TEST(Metric, ParseRoundTrip) {
    for (auto k : {MetricKind::h1_mag_at_f, MetricKind::h2_band, MetricKind::snr}) {
        EXPECT_EQ(parse_metric(to_string(k)), k);
    }
    EXPECT_THROW(parse_metric("gain"), InvalidArgument);
}
