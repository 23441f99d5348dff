#include "imcsim/costmodel.hpp"

#include <set>

#include <json.hpp>

#include "imcsim/bitmatrix.hpp"

namespace imcsim {

const char* to_string(BitcellVariant v) {
    switch (v) {
        case BitcellVariant::Xnor6T: return "xnor_6t";
        case BitcellVariant::Xnor10T: return "xnor_10t";
        case BitcellVariant::Proposed10T: return "proposed_10t";
    }
    return "?";
}

const char* to_string(AreaBasis b) {
    return b == AreaBasis::TransistorCount ? "structural" : "calibrated";
}

double Calibration::xnor_latency_ns(BitcellVariant v) const {
    switch (v) {
        case BitcellVariant::Xnor6T: return xnor_6t_ns;
        case BitcellVariant::Xnor10T: return xnor_10t_ns;
        case BitcellVariant::Proposed10T: return proposed_10t_ns;
    }
    return 0;
}

void Calibration::validate() const {
    auto require_positive = [](double v, const char* name) {
        if (!(v > 0)) {
            throw MissingCalibration(std::string("calibration entry ") + name +
                                     " is missing or not positive");
        }
    };
    require_positive(area_per_transistor_um2, "area_per_transistor_um2");
    require_positive(area_per_routing_track_um2, "area_per_routing_track_um2");
    require_positive(delta_ns, "delta_ns");
    require_positive(xnor_6t_ns, "xnor_latency_ns.xnor_6t");
    require_positive(xnor_10t_ns, "xnor_latency_ns.xnor_10t");
    require_positive(proposed_10t_ns, "xnor_latency_ns.proposed_10t");
    require_positive(fa_latency_factor, "fa_latency_factor");
    require_positive(fa_area_factor, "fa_area_factor");
    require_positive(frequency_mhz, "frequency_mhz");
    if (ops_per_mac < 1) {
        throw MissingCalibration("calibration entry ops_per_mac must be >= 1");
    }
}

namespace {

double positive_number(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) {
        throw MissingCalibration(std::string("calibration is missing ") + key);
    }
    if (!doc[key].is_number()) {
        throw ConfigError(std::string("calibration entry ") + key +
                          " must be a number");
    }
    return doc[key].get<double>();
}

}  // namespace

Calibration Calibration::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad calibration JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw IoError("calibration file must hold a JSON object");
    }

    static const std::set<std::string> known = {
        "schema_version",      "area_per_transistor_um2",
        "area_per_routing_track_um2", "delta_ns",
        "xnor_latency_ns",     "fa_latency_factor",
        "fa_area_factor",      "frequency_mhz",
        "ops_per_mac",         "notes",
    };
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown calibration field: " + key);
        }
    }
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        throw MissingCalibration("calibration is missing schema_version");
    }

    Calibration cal;
    cal.schema_version = doc["schema_version"].get<int>();
    if (cal.schema_version != 1) {
        throw ConfigError("unsupported calibration schema_version " +
                          std::to_string(cal.schema_version));
    }
    cal.area_per_transistor_um2 = positive_number(doc, "area_per_transistor_um2");
    cal.area_per_routing_track_um2 = positive_number(doc, "area_per_routing_track_um2");
    cal.delta_ns = positive_number(doc, "delta_ns");

    if (!doc.contains("xnor_latency_ns") || !doc["xnor_latency_ns"].is_object()) {
        throw MissingCalibration("calibration is missing the xnor_latency_ns table");
    }
    const nlohmann::json& xnor = doc["xnor_latency_ns"];
    static const std::set<std::string> variants = {"xnor_6t", "xnor_10t", "proposed_10t"};
    for (const auto& [key, value] : xnor.items()) {
        if (!variants.contains(key)) {
            throw ConfigError("unknown xnor_latency_ns variant: " + key);
        }
    }
    cal.xnor_6t_ns = positive_number(xnor, "xnor_6t");
    cal.xnor_10t_ns = positive_number(xnor, "xnor_10t");
    cal.proposed_10t_ns = positive_number(xnor, "proposed_10t");

    cal.fa_latency_factor = positive_number(doc, "fa_latency_factor");
    cal.fa_area_factor = positive_number(doc, "fa_area_factor");
    cal.frequency_mhz = positive_number(doc, "frequency_mhz");
    if (doc.contains("ops_per_mac")) {
        if (!doc["ops_per_mac"].is_number_integer()) {
            throw ConfigError("calibration entry ops_per_mac must be an integer");
        }
        cal.ops_per_mac = doc["ops_per_mac"].get<int>();
    }
    if (doc.contains("notes")) {
        if (!doc["notes"].is_string()) {
            throw ConfigError("calibration entry notes must be a string");
        }
        cal.notes = doc["notes"].get<std::string>();
    }
    cal.validate();
    return cal;
}

Calibration Calibration::load(const std::filesystem::path& path) {
    return from_json_text(read_file(path));
}

long routing_tracks(int rows, int precision, Topology topology) {
    if (rows < 2 || precision < 1) {
        throw ConfigError("routing tracks need rows >= 2 and precision >= 1");
    }
    if (topology == Topology::Conventional) {
        return static_cast<long>(rows) * precision;
    }
    if (rows % 2 != 0) {
        throw ConfigError("fused-pair routing requires an even row count");
    }
    return static_cast<long>(rows / 2) * (precision + 1);
}

namespace {

// Layout area of one full adder in transistor-equivalents of the 28T design.
double fa_area_units(FullAdderStyle style, AreaBasis basis, double fa_area_factor) {
    if (basis == AreaBasis::TransistorCount) {
        return transistor_count(style);
    }
    return style == FullAdderStyle::FA28T
               ? transistor_count(FullAdderStyle::FA28T)
               : fa_area_factor * transistor_count(FullAdderStyle::FA28T);
}

}  // namespace

double fa_area_reduction(FullAdderStyle a, FullAdderStyle b, AreaBasis basis,
                         double fa_area_factor) {
    return 1.0 - fa_area_units(a, basis, fa_area_factor) /
                     fa_area_units(b, basis, fa_area_factor);
}

TreeCost tree_cost(const TreeSpec& spec) {
    return TreeCost{spec.fa_count(), spec.tree_transistor_count(), spec.latency_delta()};
}

double tree_area_reduction(const TreeSpec& proposed, const TreeSpec& baseline,
                           AreaBasis basis, double fa_area_factor) {
    const double prop =
        proposed.fa_count() * fa_area_units(proposed.style, basis, fa_area_factor);
    const double base =
        baseline.fa_count() * fa_area_units(baseline.style, basis, fa_area_factor);
    return 1.0 - prop / base;
}

namespace {

constexpr int kCellTransistors = 10;

int ceil_log2(int n) {
    int levels = 0;
    while ((1 << levels) < n) ++levels;
    return levels;
}

// Tree over `count` operands of `width` bits, zero-padded to a power of two.
// A single operand needs no tree; the returned TreeSpec keeps the operand
// counts with an empty level list.
TreeSpec reduction_tree(int count, int width, FullAdderStyle style) {
    if (count <= 1) {
        TreeSpec spec;
        spec.input_count = count;
        spec.input_width = width;
        spec.style = style;
        return spec;
    }
    return build_tree(1 << ceil_log2(count), width, style);
}

}  // namespace

StructuralReport structural_report(const MacroConfig& config) {
    config.validate();

    StructuralReport s;
    s.topology = config.topology;
    const bool fused = config.topology == Topology::FusedPairs;
    s.fa_style = fused ? FullAdderStyle::FA14T : FullAdderStyle::FA28T;
    s.bitcell = fused ? BitcellVariant::Proposed10T : BitcellVariant::Xnor10T;
    s.routing_tracks = routing_tracks(config.rows, config.cols, config.topology);

    if (fused) {
        s.tree = reduction_tree(config.rows / 2, config.cols + 1, s.fa_style);
        s.fa_count_array = static_cast<long>(config.rows / 2) * config.cols;
        s.in_array_stages = 1;
    } else {
        s.tree = reduction_tree(config.rows, config.cols, s.fa_style);
    }
    s.fa_count_tree = s.tree.fa_count();

    const long cell_transistors =
        static_cast<long>(config.rows) * config.cols * kCellTransistors;
    s.transistor_count = cell_transistors +
                         (s.fa_count_tree + s.fa_count_array) *
                             transistor_count(s.fa_style);
    return s;
}

CostReport cost_report(const MacroConfig& config, const Calibration& cal) {
    cal.validate();
    const StructuralReport s = structural_report(config);

    CostReport r;
    r.topology = s.topology;
    r.fa_style = s.fa_style;
    r.bitcell = s.bitcell;
    r.routing_tracks = s.routing_tracks;
    r.fa_count_array = s.fa_count_array;
    r.in_array_stages = s.in_array_stages;
    r.fa_count_tree = s.fa_count_tree;
    r.tree_levels = s.tree.latency_delta();
    r.tree_latency_delta = s.tree.latency_delta();
    r.transistor_count = s.transistor_count;

    const long cell_transistors =
        static_cast<long>(config.rows) * config.cols * kCellTransistors;
    const long fa_total = r.fa_count_tree + r.fa_count_array;
    const double fa_area = fa_area_units(r.fa_style, AreaBasis::Calibrated,
                                         cal.fa_area_factor) *
                           cal.area_per_transistor_um2;
    const double area_um2 = cell_transistors * cal.area_per_transistor_um2 +
                            fa_total * fa_area +
                            r.routing_tracks * cal.area_per_routing_track_um2;
    r.area_mm2 = area_um2 * 1e-6;

    const double fa_delay_scale =
        r.fa_style == FullAdderStyle::FA14T ? cal.fa_latency_factor : 1.0;
    const int accumulation_stages = r.tree_latency_delta + r.in_array_stages;
    r.latency_ns = cal.xnor_latency_ns(r.bitcell) +
                   accumulation_stages * cal.delta_ns * fa_delay_scale;

    const double ops_per_invocation =
        static_cast<double>(config.rows) * config.cols * cal.ops_per_mac;
    r.throughput_tops = ops_per_invocation / r.latency_ns / 1e3;
    r.area_efficiency = r.throughput_tops / r.area_mm2;
    return r;
}

ComparisonReport compare_architectures(const MacroConfig& a, const MacroConfig& b,
                                       const Calibration& cal) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ConfigError("compared architectures must share rows and cols");
    }
    ComparisonReport cmp;
    cmp.first = cost_report(a, cal);
    cmp.second = cost_report(b, cal);
    cmp.routing_ratio = static_cast<double>(cmp.second.routing_tracks) /
                        static_cast<double>(cmp.first.routing_tracks);
    cmp.tree_transistor_ratio =
        static_cast<double>(cmp.second.fa_count_tree *
                            transistor_count(cmp.second.fa_style)) /
        static_cast<double>(cmp.first.fa_count_tree *
                            transistor_count(cmp.first.fa_style));
    cmp.tree_latency_ratio_delta = static_cast<double>(cmp.second.tree_latency_delta) /
                                   static_cast<double>(cmp.first.tree_latency_delta);
    cmp.latency_ratio = cmp.second.latency_ns / cmp.first.latency_ns;
    cmp.area_ratio = cmp.second.area_mm2 / cmp.first.area_mm2;
    cmp.area_efficiency_ratio = cmp.second.area_efficiency / cmp.first.area_efficiency;
    return cmp;
}

std::vector<XnorLatencyRow> xnor_latency_comparison(const Calibration& cal) {
    cal.validate();
    std::vector<XnorLatencyRow> rows;
    for (BitcellVariant v : {BitcellVariant::Xnor6T, BitcellVariant::Xnor10T,
                             BitcellVariant::Proposed10T}) {
        XnorLatencyRow row;
        row.variant = v;
        row.latency_ns = cal.xnor_latency_ns(v);
        row.reduction_vs_6t = 1.0 - row.latency_ns / cal.xnor_6t_ns;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace imcsim
