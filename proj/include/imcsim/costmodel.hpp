#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "imcsim/datapath.hpp"
#include "imcsim/macroarray.hpp"

namespace imcsim {

// Multiply-cell variants compared in the latency study.
enum class BitcellVariant : std::uint8_t { Xnor6T, Xnor10T, Proposed10T };

const char* to_string(BitcellVariant v);

// Scale factors anchoring the structural counts (tracks, full adders, levels)
// to physical units. Structural quantities never depend on these; only the
// calibrated ns/mm2 figures do.
struct Calibration {
    int schema_version = 1;
    double area_per_transistor_um2 = 0;
    double area_per_routing_track_um2 = 0;
    double delta_ns = 0;             // delay of one 28T full adder / tree level
    double xnor_6t_ns = 0;           // multiply latency per bitcell variant
    double xnor_10t_ns = 0;
    double proposed_10t_ns = 0;
    double fa_latency_factor = 0;    // 14T delay relative to 28T
    double fa_area_factor = 0;       // 14T layout area relative to 28T
    double frequency_mhz = 0;        // nominal interface clock, reported only
    int ops_per_mac = 2;
    std::string notes;

    double xnor_latency_ns(BitcellVariant v) const;

    // MissingCalibration when any required entry is absent or non-positive.
    void validate() const;

    // Strict schema: unknown fields and wrong schema versions are rejected.
    static Calibration from_json_text(const std::string& text);
    static Calibration load(const std::filesystem::path& path);
};

inline constexpr double kDefaultFaAreaFactor = 0.46;

enum class AreaBasis : std::uint8_t { TransistorCount, Calibrated };

const char* to_string(AreaBasis b);

// Metal tracks from the array edge to the adder tree: one per output bit.
// Conventional routes rows * precision bits, FusedPairs (rows / 2) buses of
// precision + 1 bits.
long routing_tracks(int rows, int precision, Topology topology);

// Fractional area saved by building a full adder in style `a` instead of `b`.
// TransistorCount uses raw device counts; Calibrated uses the layout factor.
double fa_area_reduction(FullAdderStyle a, FullAdderStyle b, AreaBasis basis,
                         double fa_area_factor = kDefaultFaAreaFactor);

struct TreeCost {
    long fa_count = 0;
    long transistor_count = 0;
    int latency_delta = 0;
};

TreeCost tree_cost(const TreeSpec& spec);

// Fractional area saved by replacing the baseline tree with the proposed one.
double tree_area_reduction(const TreeSpec& proposed, const TreeSpec& baseline,
                           AreaBasis basis,
                           double fa_area_factor = kDefaultFaAreaFactor);

// Calibration-free shape of one architecture: the multiply array plus its
// reduction datapath. Everything here is counted, never fitted. The topology
// selects the full-adder style and multiply cell the way the two compared
// designs pair them: Conventional uses the external 28T tree fed by the
// earlier 10T multiply macro, FusedPairs the in-array 14T adders with the
// proposed cell.
struct StructuralReport {
    Topology topology = Topology::Conventional;
    FullAdderStyle fa_style = FullAdderStyle::FA28T;
    BitcellVariant bitcell = BitcellVariant::Xnor10T;
    long routing_tracks = 0;
    // The external tree; non-power-of-two operand counts are zero-padded up.
    // Empty levels mean a single operand reaches the output directly.
    TreeSpec tree;
    int in_array_stages = 0;
    long fa_count_array = 0;
    long fa_count_tree = 0;
    long transistor_count = 0;  // 10T cells plus every full adder
};

StructuralReport structural_report(const MacroConfig& config);

struct CostReport {
    Topology topology = Topology::Conventional;
    FullAdderStyle fa_style = FullAdderStyle::FA28T;
    BitcellVariant bitcell = BitcellVariant::Xnor10T;
    long routing_tracks = 0;
    int tree_levels = 0;
    int tree_latency_delta = 0;  // tree traversal only
    int in_array_stages = 0;
    long fa_count_tree = 0;
    long fa_count_array = 0;
    long transistor_count = 0;   // 10T cells plus every full adder
    double area_mm2 = 0;
    double latency_ns = 0;       // multiply plus all accumulation stages
    double throughput_tops = 0;
    double area_efficiency = 0;  // TOPS / mm2
};

// Structural shape plus calibrated area/latency/efficiency figures. A macro
// operation is one full MAC invocation, so throughput is ops-per-invocation
// over invocation latency.
CostReport cost_report(const MacroConfig& config, const Calibration& cal);

// Ratios are second over first, so comparing (conventional, fused) reports
// fused-relative-to-conventional factors and swapping the arguments inverts
// every ratio.
struct ComparisonReport {
    CostReport first;
    CostReport second;
    double routing_ratio = 0;
    double tree_transistor_ratio = 0;
    double tree_latency_ratio_delta = 0;  // from level counts, calibration-free
    double latency_ratio = 0;             // calibrated ns, total path
    double area_ratio = 0;
    double area_efficiency_ratio = 0;
};

// ConfigError when the two configs differ in rows or cols.
ComparisonReport compare_architectures(const MacroConfig& a, const MacroConfig& b,
                                       const Calibration& cal);

struct XnorLatencyRow {
    BitcellVariant variant;
    double latency_ns = 0;
    double reduction_vs_6t = 0;  // fraction; negative means slower than 6T
};

std::vector<XnorLatencyRow> xnor_latency_comparison(const Calibration& cal);

}  // namespace imcsim
