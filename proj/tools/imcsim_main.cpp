#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imcsim/bitmatrix.hpp"
#include "imcsim/bnn.hpp"
#include "imcsim/costmodel.hpp"
#include "imcsim/macroarray.hpp"
#include "imcsim/report.hpp"
#include "imcsim/repro.hpp"

namespace {

using namespace imcsim;

// Computation failures (a claim row failing, an oracle mismatch) exit 1;
// usage problems (bad flags, missing or malformed files) exit 2.
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string format = "table";
    std::string out;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--out", opt.out, "Write the report to this file instead of stdout");
    cmd->add_option("--seed", opt.seed, "Seed for randomized inputs");
}

Topology parse_topology(const std::string& s) {
    if (s == "conventional") return Topology::Conventional;
    if (s == "fused") return Topology::FusedPairs;
    throw UsageFailure("unknown topology: " + s);
}

ComputeMode parse_mode(const std::string& s) {
    if (s == "integer") return ComputeMode::IntegerSum;
    if (s == "popcount") return ComputeMode::Popcount;
    throw UsageFailure("unknown mode: " + s);
}

MacroConfig make_config(int rows, int cols, const std::string& topology,
                        const std::string& mode) {
    MacroConfig config{rows, cols, parse_topology(topology), parse_mode(mode)};
    try {
        config.validate();
    } catch (const Error& e) {
        throw UsageFailure(e.what());
    }
    return config;
}

// --calibration beats IMC_SIM_CALIBRATION beats ./calibration/paper65nm.json.
// An explicitly named file must load; the implicit default may be absent when
// the command can fall back to structural output.
std::optional<Calibration> resolve_calibration(const std::string& flag, bool required) {
    std::filesystem::path path;
    bool explicit_path = true;
    if (!flag.empty()) {
        path = flag;
    } else if (const char* env = std::getenv("IMC_SIM_CALIBRATION"); env && *env) {
        path = env;
    } else {
        path = "calibration/paper65nm.json";
        explicit_path = false;
    }
    if (!explicit_path && !std::filesystem::exists(path)) {
        if (required) {
            throw UsageFailure("no calibration: pass --calibration, set "
                               "IMC_SIM_CALIBRATION, or run where " +
                               path.string() + " exists");
        }
        return std::nullopt;
    }
    try {
        return Calibration::load(path);
    } catch (const Error& e) {
        throw UsageFailure("calibration " + path.string() + ": " + e.what());
    }
}

void emit(const Report& report, const CommonOptions& opt) {
    const std::string text = render(report, parse_output_format(opt.format));
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw UsageFailure("cannot open output file " + opt.out);
    }
    file << text;
    file.close();
    if (!file) {
        throw UsageFailure("cannot write output file " + opt.out);
    }
}

// Column 0 first, matching the text weight-matrix format.
std::string bit_string(std::uint64_t word, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
        if ((word >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

constexpr const char* kConfig = "config";
constexpr const char* kStructural = "structural";
constexpr const char* kCalibrated = "calibrated";

int run_simulate(int rows, int cols, const std::string& topology,
                 const std::string& mode, const CommonOptions& opt) {
    const MacroConfig config = make_config(rows, cols, topology, mode);

    std::mt19937_64 rng(opt.seed);
    const std::uint64_t mask = (std::uint64_t{1} << config.cols) - 1;
    BitMatrix weights(config.rows, config.cols);
    for (int r = 0; r < config.rows; ++r) {
        weights.set_row_word(r, rng() & mask);
    }
    const std::uint64_t input = rng() & mask;

    const MacroState state = write_weights(MacroState(config.rows, config.cols), weights);
    const MacResult result = mac(state, input, config);

    Report report;
    report.title = "simulate";
    report.columns = {"field", "value", "basis"};
    report.add_row({"rows", config.rows, kConfig});
    report.add_row({"cols", config.cols, kConfig});
    report.add_row({"topology", to_string(config.topology), kConfig});
    report.add_row({"mode", to_string(config.mode), kConfig});
    report.add_row({"seed", std::to_string(opt.seed), kConfig});
    for (int r = 0; r < config.rows; ++r) {
        report.add_row({"weights_row_" + std::to_string(r),
                        bit_string(weights.row_word(r), config.cols), kConfig});
    }
    report.add_row({"input", bit_string(input, config.cols), kConfig});
    report.add_row({"result", static_cast<long>(result.value), kStructural});
    report.add_row({"tree_levels", result.trace.tree_levels, kStructural});
    report.add_row({"tree_latency_delta", result.trace.tree_latency_delta, kStructural});
    report.add_row({"in_array_stages", result.trace.in_array_stages, kStructural});
    report.add_row(
        {"total_latency_delta", result.trace.total_latency_delta(), kStructural});
    emit(report, opt);
    return 0;
}

int run_compare(int rows, int cols, const std::string& calibration,
                const CommonOptions& opt) {
    const MacroConfig conv = make_config(rows, cols, "conventional", "integer");
    const MacroConfig fused = make_config(rows, cols, "fused", "integer");
    const std::optional<Calibration> cal = resolve_calibration(calibration, false);

    const StructuralReport a = structural_report(conv);
    const StructuralReport b = structural_report(fused);

    Report report;
    report.title = "compare";
    report.columns = {"metric", "basis", "conventional", "fused_pairs", "ratio"};
    auto ratio_of = [](double first, double second) -> Cell {
        return second / first;
    };
    report.add_row({"adder_style", kStructural, to_string(a.fa_style),
                    to_string(b.fa_style), "-"});
    report.add_row({"bitcell", kStructural, to_string(a.bitcell),
                    to_string(b.bitcell), "-"});
    report.add_row({"routing_tracks", kStructural, a.routing_tracks, b.routing_tracks,
                    ratio_of(static_cast<double>(a.routing_tracks),
                             static_cast<double>(b.routing_tracks))});
    report.add_row({"tree_adder_widths", kStructural, width_schedule(a.tree),
                    width_schedule(b.tree), "-"});
    report.add_row({"tree_levels", kStructural, a.tree.latency_delta(),
                    b.tree.latency_delta(),
                    ratio_of(a.tree.latency_delta(), b.tree.latency_delta())});
    report.add_row({"in_array_stages", kStructural, a.in_array_stages,
                    b.in_array_stages, "-"});
    report.add_row({"fa_count_tree", kStructural, a.fa_count_tree, b.fa_count_tree,
                    ratio_of(static_cast<double>(a.fa_count_tree),
                             static_cast<double>(b.fa_count_tree))});
    report.add_row({"fa_count_array", kStructural, a.fa_count_array,
                    b.fa_count_array, "-"});
    const long a_total = a.fa_count_tree + a.fa_count_array;
    const long b_total = b.fa_count_tree + b.fa_count_array;
    report.add_row({"fa_count_total", kStructural, a_total, b_total,
                    ratio_of(static_cast<double>(a_total),
                             static_cast<double>(b_total))});
    report.add_row({"transistor_count", kStructural, a.transistor_count,
                    b.transistor_count,
                    ratio_of(static_cast<double>(a.transistor_count),
                             static_cast<double>(b.transistor_count))});
    if (cal) {
        const ComparisonReport cmp = compare_architectures(conv, fused, *cal);
        report.add_row({"latency_ns", kCalibrated, cmp.first.latency_ns,
                        cmp.second.latency_ns, cmp.latency_ratio});
        report.add_row({"area_mm2", kCalibrated, cmp.first.area_mm2,
                        cmp.second.area_mm2, cmp.area_ratio});
        report.add_row({"throughput_tops", kCalibrated, cmp.first.throughput_tops,
                        cmp.second.throughput_tops,
                        ratio_of(cmp.first.throughput_tops,
                                 cmp.second.throughput_tops)});
        report.add_row({"area_efficiency", kCalibrated, cmp.first.area_efficiency,
                        cmp.second.area_efficiency, cmp.area_efficiency_ratio});
    }
    emit(report, opt);
    return 0;
}

int run_xnor_latency(const std::string& calibration, const CommonOptions& opt) {
    const std::optional<Calibration> cal = resolve_calibration(calibration, true);

    Report report;
    report.title = "xnor-latency";
    report.columns = {"variant", "latency_ns", "reduction_vs_6t_percent", "basis"};
    for (const XnorLatencyRow& row : xnor_latency_comparison(*cal)) {
        report.add_row({to_string(row.variant), row.latency_ns,
                        row.reduction_vs_6t * 100.0, kCalibrated});
    }
    emit(report, opt);
    return 0;
}

int run_tree_cost(int rows, int cols, const std::string& topology,
                  const std::string& calibration, const CommonOptions& opt) {
    const MacroConfig config = make_config(rows, cols, topology, "integer");
    const std::optional<Calibration> cal = resolve_calibration(calibration, false);
    const StructuralReport s = structural_report(config);

    Report report;
    report.title = "tree-cost";
    report.columns = {"field", "value", "basis"};
    report.add_row({"topology", to_string(s.topology), kConfig});
    report.add_row({"rows", config.rows, kConfig});
    report.add_row({"cols", config.cols, kConfig});
    report.add_row({"adder_style", to_string(s.fa_style), kStructural});
    report.add_row({"in_array_adders", s.fa_count_array, kStructural});
    report.add_row({"in_array_stages", s.in_array_stages, kStructural});
    report.add_row({"tree_inputs", s.tree.input_count, kStructural});
    report.add_row({"tree_input_width", s.tree.input_width, kStructural});
    report.add_row({"tree_adder_widths", width_schedule(s.tree), kStructural});
    report.add_row({"tree_levels", s.tree.latency_delta(), kStructural});
    report.add_row({"tree_fa_count", s.fa_count_tree, kStructural});
    report.add_row({"tree_transistor_count", s.tree.tree_transistor_count(),
                    kStructural});
    report.add_row({"output_width", s.tree.output_width(), kStructural});
    report.add_row({"latency_delta_total",
                    s.tree.latency_delta() + s.in_array_stages, kStructural});
    report.add_row({"ripple_latency_fa", s.tree.ripple_latency_fa(), kStructural});
    if (cal) {
        const double scale = s.fa_style == FullAdderStyle::FA14T
                                 ? cal->fa_latency_factor
                                 : 1.0;
        const double accumulation_ns =
            (s.tree.latency_delta() + s.in_array_stages) * cal->delta_ns * scale;
        report.add_row({"accumulation_latency_ns", accumulation_ns, kCalibrated});
        const double fa_units = s.fa_style == FullAdderStyle::FA14T
                                    ? cal->fa_area_factor *
                                          transistor_count(FullAdderStyle::FA28T)
                                    : transistor_count(FullAdderStyle::FA28T);
        const double adder_area_um2 = (s.fa_count_tree + s.fa_count_array) *
                                      fa_units * cal->area_per_transistor_um2;
        report.add_row({"adder_area_um2", adder_area_um2, kCalibrated});
    }
    emit(report, opt);
    return 0;
}

int run_bnn_infer(const std::string& layer_path, const std::string& input_path,
                  int rows, int cols, const CommonOptions& opt) {
    BinLayer layer;
    std::vector<int> input;
    try {
        layer = load_layer(layer_path);
        input = load_input_vector(input_path);
    } catch (const Error& e) {
        throw UsageFailure(e.what());
    }
    if (static_cast<int>(input.size()) != layer.in_features) {
        throw UsageFailure("input holds " + std::to_string(input.size()) +
                           " entries, layer expects " +
                           std::to_string(layer.in_features));
    }
    const MacroConfig config = make_config(rows, cols, "conventional", "popcount");

    const EncodedLayer encoded = encode_layer(layer, config);
    const std::vector<int> dots =
        infer_dot(layer, input, encoded.plan, encoded.macros);

    Report report;
    report.title = "bnn-infer";
    report.columns = {"neuron", "dot", "activation", "reference", "match", "basis"};
    bool all_match = true;
    for (int n = 0; n < layer.out_features; ++n) {
        long reference = 0;
        for (int k = 0; k < layer.in_features; ++k) {
            reference += layer.weight(n, k) * input[static_cast<std::size_t>(k)];
        }
        const bool match = reference == dots[static_cast<std::size_t>(n)];
        all_match = all_match && match;
        report.add_row({n, dots[static_cast<std::size_t>(n)],
                        sign_activation(dots[static_cast<std::size_t>(n)]),
                        reference, match ? "yes" : "no", kStructural});
    }
    emit(report, opt);
    return all_match ? 0 : kExitComputation;
}

int run_paper_repro(const std::string& calibration, const std::string& dataset,
                    const CommonOptions& opt) {
    const std::optional<Calibration> cal = resolve_calibration(calibration, true);
    std::vector<CitedDesign> cited;
    try {
        cited = load_cited_designs(dataset);
    } catch (const Error& e) {
        throw UsageFailure(std::string("dataset ") + dataset + ": " + e.what());
    }
    const ReproResult result = run_repro(*cal, cited);
    emit(to_report(result), opt);
    return result.all_passed() ? 0 : kExitComputation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral simulator and cost model for an XNOR SRAM "
                 "in-memory compute macro"};
    app.require_subcommand(1);

    int rows = 16;
    int cols = 8;
    std::string topology = "conventional";
    std::string mode = "integer";
    std::string calibration;
    std::string layer_path;
    std::string input_path;
    std::string dataset = "data/table3.json";
    CommonOptions common;

    const auto topology_check = CLI::IsMember({"conventional", "fused"});
    const auto mode_check = CLI::IsMember({"integer", "popcount"});

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run one MAC invocation on seeded inputs");
    simulate->add_option("--rows", rows, "Macro rows");
    simulate->add_option("--cols", cols, "Macro columns / input precision");
    simulate->add_option("--topology", topology, "Array topology")->check(topology_check);
    simulate->add_option("--mode", mode, "Accumulation mode")->check(mode_check);
    add_common(simulate, common);

    CLI::App* compare =
        app.add_subcommand("compare", "Compare both topologies at one shape");
    compare->add_option("--rows", rows, "Macro rows");
    compare->add_option("--cols", cols, "Macro columns / input precision");
    compare->add_option("--calibration", calibration, "Calibration JSON path");
    add_common(compare, common);

    CLI::App* xnor =
        app.add_subcommand("xnor-latency", "Multiply latency per bitcell variant");
    xnor->add_option("--calibration", calibration, "Calibration JSON path");
    add_common(xnor, common);

    CLI::App* tree =
        app.add_subcommand("tree-cost", "Reduction-datapath cost for one topology");
    tree->add_option("--rows", rows, "Operand count / macro rows");
    tree->add_option("--cols", cols, "Operand width / input precision");
    tree->add_option("--topology", topology, "Array topology")->check(topology_check);
    tree->add_option("--calibration", calibration, "Calibration JSON path");
    add_common(tree, common);

    CLI::App* bnn =
        app.add_subcommand("bnn-infer", "Run a binary layer from files and "
                                        "cross-check the dense reference");
    bnn->add_option("--layer", layer_path, "Layer JSON path")->required();
    bnn->add_option("--input", input_path, "Input vector JSON path")->required();
    bnn->add_option("--rows", rows, "Macro rows");
    bnn->add_option("--cols", cols, "Macro columns");
    add_common(bnn, common);

    CLI::App* repro = app.add_subcommand(
        "paper-repro", "Recompute every headline claim against its published value");
    repro->add_option("--calibration", calibration, "Calibration JSON path");
    repro->add_option("--dataset", dataset, "Cited-design dataset JSON path");
    add_common(repro, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(rows, cols, topology, mode, common);
        }
        if (compare->parsed()) {
            return run_compare(rows, cols, calibration, common);
        }
        if (xnor->parsed()) {
            return run_xnor_latency(calibration, common);
        }
        if (tree->parsed()) {
            return run_tree_cost(rows, cols, topology, calibration, common);
        }
        if (bnn->parsed()) {
            return run_bnn_infer(layer_path, input_path, rows, cols, common);
        }
        if (repro->parsed()) {
            return run_paper_repro(calibration, dataset, common);
        }
    } catch (const UsageFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
