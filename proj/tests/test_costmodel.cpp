#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "imcsim/costmodel.hpp"

using namespace imcsim;

namespace {

nlohmann::ordered_json base_calibration_json() {
    return nlohmann::ordered_json{
        {"schema_version", 1},
        {"area_per_transistor_um2", 0.69},
        {"area_per_routing_track_um2", 1.38},
        {"delta_ns", 0.15},
        {"xnor_latency_ns",
         {{"xnor_6t", 3.1251}, {"xnor_10t", 2.59}, {"proposed_10t", 1.286}}},
        {"fa_latency_factor", 1.19},
        {"fa_area_factor", 0.46},
        {"frequency_mhz", 500.0},
        {"ops_per_mac", 2},
    };
}

Calibration base_calibration() {
    return Calibration::from_json_text(base_calibration_json().dump());
}

std::filesystem::path shipped_calibration_path() {
    return std::filesystem::path(IMCSIM_SOURCE_DIR) / "calibration" / "paper65nm.json";
}

MacroConfig conv16x8() {
    return MacroConfig{16, 8, Topology::Conventional, ComputeMode::IntegerSum};
}

MacroConfig fused16x8() {
    return MacroConfig{16, 8, Topology::FusedPairs, ComputeMode::IntegerSum};
}

}  // namespace

TEST_SUITE("costmodel") {

TEST_CASE("calibration file parses and matches the in-test constants") {
    const Calibration cal = Calibration::load(shipped_calibration_path());
    CHECK(cal.area_per_transistor_um2 == doctest::Approx(0.69));
    CHECK(cal.area_per_routing_track_um2 == doctest::Approx(1.38));
    CHECK(cal.delta_ns == doctest::Approx(0.15));
    CHECK(cal.xnor_6t_ns == doctest::Approx(3.1251));
    CHECK(cal.xnor_10t_ns == doctest::Approx(2.59));
    CHECK(cal.proposed_10t_ns == doctest::Approx(1.286));
    CHECK(cal.fa_latency_factor == doctest::Approx(1.19));
    CHECK(cal.fa_area_factor == doctest::Approx(0.46));
    CHECK(cal.frequency_mhz == doctest::Approx(500.0));
    CHECK(cal.ops_per_mac == 2);
}

TEST_CASE("calibration schema is strict") {
    auto text = [](const nlohmann::ordered_json& j) { return j.dump(); };

    CHECK_NOTHROW(Calibration::from_json_text(text(base_calibration_json())));

    SUBCASE("unknown top-level field") {
        auto j = base_calibration_json();
        j["voltage_v"] = 1.0;
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), ConfigError);
    }
    SUBCASE("missing schema version") {
        auto j = base_calibration_json();
        j.erase("schema_version");
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), MissingCalibration);
    }
    SUBCASE("unsupported schema version") {
        auto j = base_calibration_json();
        j["schema_version"] = 2;
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), ConfigError);
    }
    SUBCASE("missing scale factor") {
        auto j = base_calibration_json();
        j.erase("delta_ns");
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), MissingCalibration);
    }
    SUBCASE("non-positive scale factor") {
        auto j = base_calibration_json();
        j["area_per_transistor_um2"] = -1.0;
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), MissingCalibration);
    }
    SUBCASE("non-numeric scale factor") {
        auto j = base_calibration_json();
        j["delta_ns"] = "fast";
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), ConfigError);
    }
    SUBCASE("missing xnor variant") {
        auto j = base_calibration_json();
        j["xnor_latency_ns"].erase("proposed_10t");
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), MissingCalibration);
    }
    SUBCASE("unknown xnor variant") {
        auto j = base_calibration_json();
        j["xnor_latency_ns"]["xnor_8t"] = 2.0;
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), ConfigError);
    }
    SUBCASE("fractional ops_per_mac") {
        auto j = base_calibration_json();
        j["ops_per_mac"] = 1.5;
        CHECK_THROWS_AS(Calibration::from_json_text(text(j)), ConfigError);
    }
    SUBCASE("malformed document") {
        CHECK_THROWS_AS(Calibration::from_json_text("{not json"), IoError);
        CHECK_THROWS_AS(Calibration::from_json_text("[1, 2]"), IoError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(Calibration::load("/nonexistent/cal.json"), IoError);
    }
}

TEST_CASE("routing track counts") {
    CHECK(routing_tracks(16, 8, Topology::Conventional) == 128);
    CHECK(routing_tracks(16, 8, Topology::FusedPairs) == 72);

    for (int rows = 2; rows <= 64; rows += 2) {
        for (int precision = 1; precision <= 16; ++precision) {
            CHECK(routing_tracks(rows, precision, Topology::Conventional) ==
                  static_cast<long>(rows) * precision);
            CHECK(routing_tracks(rows, precision, Topology::FusedPairs) ==
                  static_cast<long>(rows / 2) * (precision + 1));
        }
    }

    CHECK_THROWS_AS(routing_tracks(1, 8, Topology::Conventional), ConfigError);
    CHECK_THROWS_AS(routing_tracks(16, 0, Topology::Conventional), ConfigError);
    CHECK_THROWS_AS(routing_tracks(15, 8, Topology::FusedPairs), ConfigError);
}

TEST_CASE("full-adder area reduction") {
    CHECK(fa_area_reduction(FullAdderStyle::FA14T, FullAdderStyle::FA28T,
                            AreaBasis::TransistorCount) == doctest::Approx(0.5));
    CHECK(fa_area_reduction(FullAdderStyle::FA14T, FullAdderStyle::FA28T,
                            AreaBasis::Calibrated, 0.46) == doctest::Approx(0.54));
    CHECK(fa_area_reduction(FullAdderStyle::FA28T, FullAdderStyle::FA28T,
                            AreaBasis::TransistorCount) == doctest::Approx(0.0));
}

TEST_CASE("tree cost and area reduction for the reference trees") {
    const TreeSpec baseline = build_tree(16, 8, FullAdderStyle::FA28T);
    const TreeSpec proposed = build_tree(8, 9, FullAdderStyle::FA14T);

    const TreeCost base_cost = tree_cost(baseline);
    CHECK(base_cost.fa_count == 131);
    CHECK(base_cost.transistor_count == 3668);
    CHECK(base_cost.latency_delta == 4);

    const TreeCost prop_cost = tree_cost(proposed);
    CHECK(prop_cost.fa_count == 67);
    CHECK(prop_cost.transistor_count == 938);
    CHECK(prop_cost.latency_delta == 3);

    // Transistor basis: 1 - (67 * 14) / (131 * 28).
    const double structural =
        tree_area_reduction(proposed, baseline, AreaBasis::TransistorCount);
    CHECK(structural == doctest::Approx(1.0 - 938.0 / 3668.0).epsilon(1e-12));
    CHECK(std::fabs(structural - 0.7443) < 1e-4);

    // Layout basis: the 14T adder occupies 0.46 of a 28T footprint.
    const double calibrated =
        tree_area_reduction(proposed, baseline, AreaBasis::Calibrated, 0.46);
    CHECK(calibrated ==
          doctest::Approx(1.0 - (67.0 * 0.46 * 28.0) / (131.0 * 28.0)).epsilon(1e-12));
    CHECK(calibrated > 0.73);
    CHECK(calibrated < 0.79);
}

TEST_CASE("structural report for the conventional 16x8 macro") {
    const StructuralReport s = structural_report(conv16x8());
    CHECK(s.topology == Topology::Conventional);
    CHECK(s.fa_style == FullAdderStyle::FA28T);
    CHECK(s.bitcell == BitcellVariant::Xnor10T);
    CHECK(s.routing_tracks == 128);
    CHECK(s.in_array_stages == 0);
    CHECK(s.fa_count_array == 0);
    CHECK(s.fa_count_tree == 131);
    CHECK(s.tree.levels ==
          std::vector<TreeLevel>{{8, 8}, {4, 9}, {2, 10}, {1, 11}});
    CHECK(s.tree.output_width() == 12);
    CHECK(s.transistor_count == 16 * 8 * 10 + 131 * 28);
}

TEST_CASE("structural report for the fused 16x8 macro") {
    const StructuralReport s = structural_report(fused16x8());
    CHECK(s.topology == Topology::FusedPairs);
    CHECK(s.fa_style == FullAdderStyle::FA14T);
    CHECK(s.bitcell == BitcellVariant::Proposed10T);
    CHECK(s.routing_tracks == 72);
    CHECK(s.in_array_stages == 1);
    CHECK(s.fa_count_array == 64);
    CHECK(s.fa_count_tree == 67);
    CHECK(s.tree.levels == std::vector<TreeLevel>{{4, 9}, {2, 10}, {1, 11}});
    CHECK(s.tree.output_width() == 12);
    CHECK(s.transistor_count == 16 * 8 * 10 + 131 * 14);
}

TEST_CASE("fused in-array adders plus tree adders conserve the total") {
    // Splitting the first reduction level into the array must not change how
    // many full adders the whole datapath needs.
    for (int rows : {2, 4, 8, 16, 32, 64}) {
        for (int precision = 1; precision <= 16; ++precision) {
            const StructuralReport conv = structural_report(
                MacroConfig{rows, precision, Topology::Conventional,
                            ComputeMode::IntegerSum});
            const StructuralReport fused = structural_report(
                MacroConfig{rows, precision, Topology::FusedPairs,
                            ComputeMode::IntegerSum});
            CHECK(fused.fa_count_array + fused.fa_count_tree ==
                  conv.fa_count_tree);
        }
    }
}

TEST_CASE("cost report matches a hand-computed conventional 16x8") {
    const CostReport r = cost_report(conv16x8(), base_calibration());

    const double cells_um2 = 16.0 * 8.0 * 10.0 * 0.69;
    const double tree_um2 = 131.0 * 28.0 * 0.69;
    const double tracks_um2 = 128.0 * 1.38;
    CHECK(r.area_mm2 ==
          doctest::Approx((cells_um2 + tree_um2 + tracks_um2) * 1e-6).epsilon(1e-12));

    CHECK(r.latency_ns == doctest::Approx(2.59 + 4 * 0.15).epsilon(1e-12));
    CHECK(r.throughput_tops ==
          doctest::Approx(16.0 * 8.0 * 2.0 / 3.19 / 1e3).epsilon(1e-12));
    CHECK(r.area_efficiency ==
          doctest::Approx(r.throughput_tops / r.area_mm2).epsilon(1e-12));
}

TEST_CASE("cost report matches a hand-computed fused 16x8") {
    const CostReport r = cost_report(fused16x8(), base_calibration());

    const double cells_um2 = 16.0 * 8.0 * 10.0 * 0.69;
    const double fa_um2 = 131.0 * (0.46 * 28.0) * 0.69;
    const double tracks_um2 = 72.0 * 1.38;
    CHECK(r.area_mm2 ==
          doctest::Approx((cells_um2 + fa_um2 + tracks_um2) * 1e-6).epsilon(1e-12));

    // Multiply plus one in-array stage plus three tree levels of scaled adders.
    CHECK(r.latency_ns ==
          doctest::Approx(1.286 + 4 * 0.15 * 1.19).epsilon(1e-12));
    CHECK(r.latency_ns == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.throughput_tops == doctest::Approx(0.128).epsilon(1e-12));
    CHECK(r.area_efficiency ==
          doctest::Approx(r.throughput_tops / r.area_mm2).epsilon(1e-12));
}

TEST_CASE("fused beats conventional by the expected efficiency factor") {
    const ComparisonReport cmp =
        compare_architectures(conv16x8(), fused16x8(), base_calibration());
    CHECK(cmp.routing_ratio == doctest::Approx(72.0 / 128.0).epsilon(1e-12));
    CHECK(cmp.tree_transistor_ratio == doctest::Approx(938.0 / 3668.0).epsilon(1e-12));
    CHECK(cmp.tree_latency_ratio_delta == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cmp.latency_ratio == doctest::Approx(2.0 / 3.19).epsilon(1e-12));
    CHECK(cmp.area_efficiency_ratio == doctest::Approx(2.67).epsilon(0.02));
}

TEST_CASE("swapping the compared configs inverts every ratio") {
    const Calibration cal = base_calibration();
    const ComparisonReport ab = compare_architectures(conv16x8(), fused16x8(), cal);
    const ComparisonReport ba = compare_architectures(fused16x8(), conv16x8(), cal);
    CHECK(ab.routing_ratio * ba.routing_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab.tree_transistor_ratio * ba.tree_transistor_ratio ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab.latency_ratio * ba.latency_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab.area_ratio * ba.area_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ab.area_efficiency_ratio * ba.area_efficiency_ratio ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("comparison rejects mismatched shapes") {
    CHECK_THROWS_AS(
        compare_architectures(
            conv16x8(),
            MacroConfig{8, 8, Topology::FusedPairs, ComputeMode::IntegerSum},
            base_calibration()),
        ConfigError);
}

TEST_CASE("multiply latency comparison across bitcell variants") {
    const std::vector<XnorLatencyRow> rows =
        xnor_latency_comparison(base_calibration());
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].variant == BitcellVariant::Xnor6T);
    CHECK(rows[0].latency_ns == doctest::Approx(3.1251));
    CHECK(rows[0].reduction_vs_6t == doctest::Approx(0.0));

    CHECK(rows[1].variant == BitcellVariant::Xnor10T);
    CHECK(rows[1].latency_ns == doctest::Approx(2.59));
    CHECK(rows[1].reduction_vs_6t ==
          doctest::Approx(1.0 - 2.59 / 3.1251).epsilon(1e-12));

    CHECK(rows[2].variant == BitcellVariant::Proposed10T);
    CHECK(rows[2].latency_ns == doctest::Approx(1.286));
    // The headline speedup lands within 0.05 percentage points of 58.85%.
    CHECK(std::fabs(rows[2].reduction_vs_6t * 100.0 - 58.8493) < 0.05);
}

TEST_CASE("cost scales monotonically with the row count") {
    const Calibration cal = base_calibration();
    for (Topology topo : {Topology::Conventional, Topology::FusedPairs}) {
        double prev_area = 0;
        double prev_latency = 0;
        for (int rows : {2, 4, 8, 16, 32, 64}) {
            const CostReport r = cost_report(
                MacroConfig{rows, 8, topo, ComputeMode::IntegerSum}, cal);
            CHECK(r.area_mm2 > prev_area);
            CHECK(r.latency_ns >= prev_latency);
            prev_area = r.area_mm2;
            prev_latency = r.latency_ns;
        }
    }
}

TEST_CASE("cost report rejects invalid shapes and calibrations") {
    CHECK_THROWS_AS(
        cost_report(MacroConfig{1, 8, Topology::Conventional,
                                ComputeMode::IntegerSum},
                    base_calibration()),
        ConfigError);
    Calibration broken = base_calibration();
    broken.delta_ns = 0;
    CHECK_THROWS_AS(cost_report(conv16x8(), broken), MissingCalibration);
}

TEST_CASE("enum labels") {
    CHECK(std::string(to_string(BitcellVariant::Xnor6T)) == "xnor_6t");
    CHECK(std::string(to_string(BitcellVariant::Xnor10T)) == "xnor_10t");
    CHECK(std::string(to_string(BitcellVariant::Proposed10T)) == "proposed_10t");
    CHECK(std::string(to_string(AreaBasis::TransistorCount)) == "structural");
    CHECK(std::string(to_string(AreaBasis::Calibrated)) == "calibrated");
}

}  // TEST_SUITE
