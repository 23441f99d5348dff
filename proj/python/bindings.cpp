#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "imcsim/bitmatrix.hpp"
#include "imcsim/bnn.hpp"
#include "imcsim/costmodel.hpp"
#include "imcsim/macroarray.hpp"
#include "imcsim/repro.hpp"

namespace py = pybind11;

namespace {

using namespace imcsim;

Topology parse_topology(const std::string& s) {
    if (s == "conventional") return Topology::Conventional;
    if (s == "fused") return Topology::FusedPairs;
    throw ConfigError("unknown topology: " + s);
}

ComputeMode parse_mode(const std::string& s) {
    if (s == "integer") return ComputeMode::IntegerSum;
    if (s == "popcount") return ComputeMode::Popcount;
    throw ConfigError("unknown mode: " + s);
}

BitMatrix to_matrix(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw ShapeError("weight matrix must be non-empty");
    }
    BitMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int r = 0; r < m.rows(); ++r) {
        const std::vector<int>& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != m.cols()) {
            throw ShapeError("weight rows must share one length");
        }
        for (int c = 0; c < m.cols(); ++c) {
            const int v = row[static_cast<std::size_t>(c)];
            if (v != 0 && v != 1) {
                throw DomainError("weight bits must be 0 or 1");
            }
            m.set(r, c, v == 1);
        }
    }
    return m;
}

std::uint64_t pack_bits(const std::vector<int>& bits) {
    if (bits.size() > 63) {
        throw WidthError("input vector is limited to 63 bits");
    }
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0 && bits[i] != 1) {
            throw DomainError("input bits must be 0 or 1");
        }
        word |= static_cast<std::uint64_t>(bits[i]) << i;
    }
    return word;
}

py::dict cost_to_dict(const CostReport& r) {
    py::dict d;
    d["topology"] = to_string(r.topology);
    d["fa_style"] = to_string(r.fa_style);
    d["bitcell"] = to_string(r.bitcell);
    d["routing_tracks"] = r.routing_tracks;
    d["tree_levels"] = r.tree_levels;
    d["tree_latency_delta"] = r.tree_latency_delta;
    d["in_array_stages"] = r.in_array_stages;
    d["fa_count_tree"] = r.fa_count_tree;
    d["fa_count_array"] = r.fa_count_array;
    d["transistor_count"] = r.transistor_count;
    d["area_mm2"] = r.area_mm2;
    d["latency_ns"] = r.latency_ns;
    d["throughput_tops"] = r.throughput_tops;
    d["area_efficiency"] = r.area_efficiency;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Behavioral simulator and cost model for an XNOR SRAM "
              "in-memory compute macro";

    py::register_exception<Error>(m, "SimError");

    m.def("encode", &encode, py::arg("value"),
          "Map +1 -> logic 1, -1 -> logic 0");
    m.def("decode", &decode, py::arg("logic_bit"),
          "Map logic 1 -> +1, logic 0 -> -1");

    m.def(
        "full_add",
        [](bool a, bool b, bool cin) {
            const FullAddResult r = full_add(a, b, cin);
            return py::make_tuple(r.sum, r.carry);
        },
        py::arg("a"), py::arg("b"), py::arg("cin"), "(sum, carry) of one full adder");

    m.def("rca_add", &rca_add, py::arg("a"), py::arg("b"), py::arg("cin"),
          py::arg("width"),
          "Ripple-carry sum of two width-bit words; result has width+1 bits");

    m.def(
        "tree_sum",
        [](const std::vector<std::uint64_t>& inputs, int input_width) {
            const TreeSpec spec = build_tree(static_cast<int>(inputs.size()),
                                             input_width, FullAdderStyle::FA28T);
            return tree_sum(spec, inputs);
        },
        py::arg("inputs"), py::arg("input_width"),
        "Adder-tree reduction of a power-of-two operand list");

    m.def(
        "routing_tracks",
        [](int rows, int precision, const std::string& topology) {
            return routing_tracks(rows, precision, parse_topology(topology));
        },
        py::arg("rows"), py::arg("precision"), py::arg("topology"),
        "Output tracks routed from the array edge to the accumulator");

    m.def(
        "mac",
        [](const std::vector<std::vector<int>>& weights,
           const std::vector<int>& input, const std::string& topology,
           const std::string& mode) {
            const BitMatrix bits = to_matrix(weights);
            MacroConfig config{bits.rows(), bits.cols(), parse_topology(topology),
                               parse_mode(mode)};
            config.validate();
            if (static_cast<int>(input.size()) != bits.cols()) {
                throw ShapeError("input length must equal the column count");
            }
            const MacroState state =
                write_weights(MacroState(bits.rows(), bits.cols()), bits);
            const MacResult r = mac(state, pack_bits(input), config);
            py::dict d;
            d["value"] = r.value;
            d["tree_levels"] = r.trace.tree_levels;
            d["tree_latency_delta"] = r.trace.tree_latency_delta;
            d["in_array_stages"] = r.trace.in_array_stages;
            d["total_latency_delta"] = r.trace.total_latency_delta();
            return d;
        },
        py::arg("weights"), py::arg("input"), py::arg("topology") = "conventional",
        py::arg("mode") = "integer",
        "One multiply-accumulate pass over a 0/1 weight matrix and input word");

    m.def(
        "infer",
        [](const std::vector<std::vector<int>>& weights,
           const std::vector<int>& input, int rows, int cols) {
            BinLayer layer;
            layer.out_features = static_cast<int>(weights.size());
            layer.in_features =
                weights.empty() ? 0 : static_cast<int>(weights.front().size());
            for (const std::vector<int>& row : weights) {
                if (static_cast<int>(row.size()) != layer.in_features) {
                    throw ShapeError("weight rows must share one length");
                }
                layer.weights.insert(layer.weights.end(), row.begin(), row.end());
            }
            const MacroConfig config{rows, cols, Topology::Conventional,
                                     ComputeMode::Popcount};
            const EncodedLayer enc = encode_layer(layer, config);
            return infer_dot(layer, input, enc.plan, enc.macros);
        },
        py::arg("weights"), py::arg("input"), py::arg("rows") = 16,
        py::arg("cols") = 8,
        "Signed dot products of a +1/-1 layer against a +1/-1 input, tiled "
        "over macros");

    m.def("sign_activation", &sign_activation, py::arg("value"));

    m.def(
        "cost_report",
        [](int rows, int cols, const std::string& topology,
           const std::string& calibration_path) {
            const MacroConfig config{rows, cols, parse_topology(topology),
                                     ComputeMode::IntegerSum};
            return cost_to_dict(cost_report(config, Calibration::load(calibration_path)));
        },
        py::arg("rows"), py::arg("cols"), py::arg("topology"),
        py::arg("calibration_path"),
        "Structural counts plus calibrated area/latency/efficiency");

    m.def(
        "compare",
        [](int rows, int cols, const std::string& calibration_path) {
            const Calibration cal = Calibration::load(calibration_path);
            const MacroConfig conv{rows, cols, Topology::Conventional,
                                   ComputeMode::IntegerSum};
            const MacroConfig fused{rows, cols, Topology::FusedPairs,
                                    ComputeMode::IntegerSum};
            const ComparisonReport cmp = compare_architectures(conv, fused, cal);
            py::dict d;
            d["conventional"] = cost_to_dict(cmp.first);
            d["fused_pairs"] = cost_to_dict(cmp.second);
            d["routing_ratio"] = cmp.routing_ratio;
            d["tree_transistor_ratio"] = cmp.tree_transistor_ratio;
            d["tree_latency_ratio_delta"] = cmp.tree_latency_ratio_delta;
            d["latency_ratio"] = cmp.latency_ratio;
            d["area_ratio"] = cmp.area_ratio;
            d["area_efficiency_ratio"] = cmp.area_efficiency_ratio;
            return d;
        },
        py::arg("rows"), py::arg("cols"), py::arg("calibration_path"),
        "Both topologies at one shape, with fused-over-conventional ratios");

    m.def(
        "xnor_latency",
        [](const std::string& calibration_path) {
            py::list rows;
            for (const XnorLatencyRow& row :
                 xnor_latency_comparison(Calibration::load(calibration_path))) {
                py::dict d;
                d["variant"] = to_string(row.variant);
                d["latency_ns"] = row.latency_ns;
                d["reduction_vs_6t"] = row.reduction_vs_6t;
                rows.append(std::move(d));
            }
            return rows;
        },
        py::arg("calibration_path"), "Multiply latency per bitcell variant");

    m.def(
        "repro",
        [](const std::string& calibration_path, const std::string& dataset_path) {
            const ReproResult result = run_repro(Calibration::load(calibration_path),
                                                 load_cited_designs(dataset_path));
            py::list rows;
            for (const ClaimRow& row : result.rows) {
                py::dict d;
                d["claim"] = row.claim;
                d["paper_value"] = row.paper_value;
                d["computed_value"] = row.computed_value;
                d["basis"] = row.basis;
                d["status"] = to_string(row.status);
                rows.append(std::move(d));
            }
            py::dict out;
            out["rows"] = std::move(rows);
            out["all_passed"] = result.all_passed();
            return out;
        },
        py::arg("calibration_path"), py::arg("dataset_path"),
        "Recompute every headline claim against its published value");
}
