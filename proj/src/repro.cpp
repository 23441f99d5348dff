#include "imcsim/repro.hpp"

#include <cmath>

#include <json.hpp>

#include "imcsim/bitmatrix.hpp"

namespace imcsim {

const char* to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Pass: return "PASS";
        case ClaimStatus::Fail: return "FAIL";
        case ClaimStatus::Info: return "INFO";
    }
    return "?";
}

bool ReproResult::all_passed() const {
    for (const ClaimRow& row : rows) {
        if (row.status == ClaimStatus::Fail) return false;
    }
    return true;
}

std::vector<CitedDesign> load_cited_designs(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad citation dataset JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw IoError("citation dataset must hold a JSON array");
    }
    std::vector<CitedDesign> out;
    for (const nlohmann::json& entry : doc) {
        if (!entry.is_object()) {
            throw IoError("citation dataset entries must be objects");
        }
        try {
            CitedDesign d;
            d.work = entry.at("work").get<std::string>();
            d.bitcell = entry.at("bitcell").get<std::string>();
            d.technology_nm = entry.at("technology_nm").get<double>();
            d.supply_v = entry.at("supply_v").get<double>();
            d.operation = entry.at("operation").get<std::string>();
            d.array_size = entry.at("array_size").get<std::string>();
            d.precision = entry.at("precision").get<std::string>();
            d.tops_per_mm2 = entry.at("tops_per_mm2").get<double>();
            out.push_back(std::move(d));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("bad citation dataset entry: ") + e.what());
        }
    }
    return out;
}

namespace {

constexpr const char* kStructural = "structural";
constexpr const char* kCalibrated = "calibrated";
constexpr const char* kCitation = "citation";

std::string percent(double fraction) {
    return format_fixed(fraction * 100.0, 4) + "%";
}

const CitedDesign* find_cited(const std::vector<CitedDesign>& cited,
                              const std::string& work) {
    for (const CitedDesign& d : cited) {
        if (d.work == work) return &d;
    }
    return nullptr;
}

}  // namespace

ReproResult run_repro(const Calibration& cal, const std::vector<CitedDesign>& cited) {
    cal.validate();
    ReproResult out;

    auto add = [&](std::string claim, std::string published, std::string computed,
                   const char* basis, bool ok) {
        out.rows.push_back(ClaimRow{std::move(claim), std::move(published),
                                    std::move(computed), basis,
                                    ok ? ClaimStatus::Pass : ClaimStatus::Fail});
    };

    const MacroConfig conv_cfg{16, 8, Topology::Conventional, ComputeMode::IntegerSum};
    const MacroConfig fused_cfg{16, 8, Topology::FusedPairs, ComputeMode::IntegerSum};

    // Routing from the array edge to the accumulator.
    const long tracks_conv = routing_tracks(16, 8, Topology::Conventional);
    const long tracks_fused = routing_tracks(16, 8, Topology::FusedPairs);
    add("routing-tracks-conventional", "128", std::to_string(tracks_conv),
        kStructural, tracks_conv == 128);
    add("routing-tracks-fused", "72", std::to_string(tracks_fused), kStructural,
        tracks_fused == 72);

    // Adder-tree structure for both topologies.
    const TreeSpec conv_tree = build_tree(16, 8, FullAdderStyle::FA28T);
    const TreeSpec fused_tree = build_tree(8, 9, FullAdderStyle::FA14T);
    add("tree-adder-widths-conventional", "8/9/10/11", width_schedule(conv_tree),
        kStructural, width_schedule(conv_tree) == "8/9/10/11");
    add("tree-output-width-conventional", "12",
        std::to_string(conv_tree.output_width()), kStructural,
        conv_tree.output_width() == 12);
    add("tree-latency-conventional", "4", std::to_string(conv_tree.latency_delta()),
        kStructural, conv_tree.latency_delta() == 4);
    add("tree-adder-widths-fused", "9/10/11", width_schedule(fused_tree),
        kStructural, width_schedule(fused_tree) == "9/10/11");
    add("tree-latency-fused", "3", std::to_string(fused_tree.latency_delta()),
        kStructural, fused_tree.latency_delta() == 3);

    const double tree_latency_reduction =
        1.0 - static_cast<double>(fused_tree.latency_delta()) /
                  static_cast<double>(conv_tree.latency_delta());
    add("tree-latency-reduction", "25%", percent(tree_latency_reduction),
        kStructural, tree_latency_reduction == 0.25);

    // The fused design moves adders into the array; the total count is
    // conserved.
    const CostReport conv_cost = cost_report(conv_cfg, cal);
    const CostReport fused_cost = cost_report(fused_cfg, cal);
    const long fused_total = fused_cost.fa_count_array + fused_cost.fa_count_tree;
    add("fa-count-conservation", "131",
        std::to_string(fused_cost.fa_count_array) + "+" +
            std::to_string(fused_cost.fa_count_tree) + "=" +
            std::to_string(fused_total),
        kStructural, fused_total == conv_cost.fa_count_tree && fused_total == 131);

    // Per-adder cost of the 14T design relative to the 28T one.
    const double fa_structural = fa_area_reduction(
        FullAdderStyle::FA14T, FullAdderStyle::FA28T, AreaBasis::TransistorCount);
    add("fa-area-reduction-structural", "50%", percent(fa_structural), kStructural,
        fa_structural == 0.5);
    const double fa_calibrated =
        fa_area_reduction(FullAdderStyle::FA14T, FullAdderStyle::FA28T,
                          AreaBasis::Calibrated, cal.fa_area_factor);
    add("fa-area-reduction-calibrated", "54%", percent(fa_calibrated), kCalibrated,
        std::abs(fa_calibrated - 0.54) <= 0.005);
    add("fa-latency-factor", "1.19", format_fixed(cal.fa_latency_factor, 4),
        kCalibrated, std::abs(cal.fa_latency_factor - 1.19) <= 0.005);

    // Whole-tree cost of the fused accumulator relative to the conventional one.
    const double tree_structural = tree_area_reduction(fused_tree, conv_tree,
                                                       AreaBasis::TransistorCount);
    add("tree-area-reduction-structural", "74.43%", percent(tree_structural),
        kStructural, std::abs(tree_structural - 0.7443) <= 0.0001);
    const double tree_calibrated = tree_area_reduction(
        fused_tree, conv_tree, AreaBasis::Calibrated, cal.fa_area_factor);
    add("tree-area-reduction-calibrated", "76%", percent(tree_calibrated),
        kCalibrated, std::abs(tree_calibrated * 100.0 - 76.0) <= 3.0);

    // Multiply latency of the proposed cell against a 6T-based XNOR.
    double xnor_reduction = 0;
    for (const XnorLatencyRow& row : xnor_latency_comparison(cal)) {
        if (row.variant == BitcellVariant::Proposed10T) {
            xnor_reduction = row.reduction_vs_6t;
        }
    }
    add("xnor-latency-reduction", "58.85%", percent(xnor_reduction), kCalibrated,
        std::abs(xnor_reduction * 100.0 - 58.85) <= 0.05);

    // End-to-end efficiency of the fused design over the conventional one.
    const ComparisonReport cmp = compare_architectures(conv_cfg, fused_cfg, cal);
    add("area-efficiency-ratio", "2.67", format_fixed(cmp.area_efficiency_ratio, 4),
        kCalibrated, std::abs(cmp.area_efficiency_ratio / 2.67 - 1.0) <= 0.02);

    // The same ratio out of the published survey figures.
    const CitedDesign* fused_cited = find_cited(cited, "proposed-10t-fused");
    const CitedDesign* conv_cited = find_cited(cited, "baseline-10t-conventional");
    if (fused_cited && conv_cited && conv_cited->tops_per_mm2 > 0) {
        const double ratio = fused_cited->tops_per_mm2 / conv_cited->tops_per_mm2;
        add("cited-efficiency-ratio", "2.672", format_fixed(ratio, 4), kCitation,
            std::abs(ratio - 2.672) <= 0.001);
    } else {
        add("cited-efficiency-ratio", "2.672", "reference entries missing",
            kCitation, false);
    }

    for (const CitedDesign& d : cited) {
        out.rows.push_back(ClaimRow{"cited:" + d.work,
                                    format_double(d.tops_per_mm2) + " TOPS/mm2",
                                    "-", kCitation, ClaimStatus::Info});
    }
    return out;
}

Report to_report(const ReproResult& result) {
    Report report;
    report.title = "paper-repro";
    report.columns = {"claim", "paper_value", "computed_value", "basis", "status"};
    for (const ClaimRow& row : result.rows) {
        report.add_row({row.claim, row.paper_value, row.computed_value, row.basis,
                        to_string(row.status)});
    }
    return report;
}

}  // namespace imcsim
