#include "imcsim/macroarray.hpp"

#include <bit>
#include <string>

namespace imcsim {

const char* to_string(Topology t) {
    return t == Topology::Conventional ? "conventional" : "fused";
}

const char* to_string(ComputeMode m) {
    return m == ComputeMode::IntegerSum ? "integer" : "popcount";
}

void MacroConfig::validate() const {
    if (rows < 2) {
        throw ConfigError("macro needs at least 2 rows, got " + std::to_string(rows));
    }
    if (cols < 1 || cols > 32) {
        throw ConfigError("macro column count must be in [1, 32], got " +
                          std::to_string(cols));
    }
    if (topology == Topology::FusedPairs && rows % 2 != 0) {
        throw ConfigError("fused-pair topology requires an even row count, got " +
                          std::to_string(rows));
    }
}

MacroState::MacroState(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1 || cols > 32) {
        throw ConfigError("macro dimensions out of range: " + std::to_string(rows) +
                          "x" + std::to_string(cols));
    }
    cells_.resize(static_cast<std::size_t>(rows) * cols);
}

const CellState& MacroState::cell(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw IndexError("cell (" + std::to_string(r) + ", " + std::to_string(c) +
                         ") out of range");
    }
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
}

CellState& MacroState::cell(int r, int c) {
    return const_cast<CellState&>(static_cast<const MacroState&>(*this).cell(r, c));
}

BitMatrix MacroState::read_weights() const {
    BitMatrix out(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            CycleResult cycle = apply_cycle(cell(r, c), SignalVector::read_direct());
            // Direct biasing: RBL stays high exactly when q = 1.
            out.set(r, c, cycle.bitlines.rbl == Level::High);
        }
    }
    return out;
}

MacroState write_weights(MacroState state, const BitMatrix& weights) {
    if (weights.rows() != state.rows() || weights.cols() != state.cols()) {
        throw ShapeError("weight matrix is " + std::to_string(weights.rows()) + "x" +
                         std::to_string(weights.cols()) + ", macro is " +
                         std::to_string(state.rows()) + "x" +
                         std::to_string(state.cols()));
    }
    for (int r = 0; r < state.rows(); ++r) {
        for (int c = 0; c < state.cols(); ++c) {
            CycleResult cycle =
                apply_cycle(state.cell(r, c), SignalVector::write(weights.at(r, c)));
            state.cell(r, c) = cycle.state;
        }
    }
    return state;
}

std::vector<std::uint64_t> multiply_rows(const MacroState& state, std::uint64_t input) {
    if (state.cols() < 64 && (input >> state.cols()) != 0) {
        throw WidthError("input word does not fit " + std::to_string(state.cols()) +
                         " bits");
    }
    std::vector<std::uint64_t> out(static_cast<std::size_t>(state.rows()), 0);
    for (int c = 0; c < state.cols(); ++c) {
        const BinBit in_bit = BinBit::from_logic((input >> c) & 1);
        for (int r = 0; r < state.rows(); ++r) {
            XnorResult x = xnor_compute(state.cell(r, c), in_bit);
            out[r] |= static_cast<std::uint64_t>(x.rbl_out) << c;
        }
    }
    return out;
}

namespace {

int ceil_log2(int n) {
    int levels = 0;
    while ((1 << levels) < n) ++levels;
    return levels;
}

// Reduce through the tree, zero-padding up to the next power of two. A single
// operand needs no tree at all.
std::uint64_t reduce(std::vector<std::uint64_t> values, int width, FullAdderStyle style,
                     LatencyTrace& trace) {
    if (values.size() == 1) {
        return values.front();
    }
    const int padded = 1 << ceil_log2(static_cast<int>(values.size()));
    values.resize(static_cast<std::size_t>(padded), 0);
    TreeSpec spec = build_tree(padded, width, style);
    trace.tree_levels = static_cast<int>(spec.levels.size());
    trace.tree_latency_delta = spec.latency_delta();
    return tree_sum(spec, values);
}

}  // namespace

MacResult mac(const MacroState& state, std::uint64_t input, const MacroConfig& config) {
    config.validate();
    if (config.rows != state.rows() || config.cols != state.cols()) {
        throw ShapeError("config is " + std::to_string(config.rows) + "x" +
                         std::to_string(config.cols) + ", macro is " +
                         std::to_string(state.rows()) + "x" +
                         std::to_string(state.cols()));
    }
    std::vector<std::uint64_t> row_outputs = multiply_rows(state, input);

    MacResult result;
    if (config.mode == ComputeMode::Popcount) {
        std::uint64_t total = 0;
        for (std::uint64_t word : row_outputs) {
            total += std::popcount(word);
        }
        result.value = total;
    }

    if (config.topology == Topology::Conventional) {
        std::uint64_t sum = reduce(std::move(row_outputs), config.cols,
                                   FullAdderStyle::FA28T, result.trace);
        if (config.mode == ComputeMode::IntegerSum) {
            result.value = sum;
        }
    } else {
        // In-array stage: one full adder per column per row pair; the carry
        // ripples along the column chain and lands in bit `cols`.
        std::vector<std::uint64_t> pair_outputs(row_outputs.size() / 2);
        for (std::size_t p = 0; p < pair_outputs.size(); ++p) {
            pair_outputs[p] =
                rca_add(row_outputs[2 * p], row_outputs[2 * p + 1], false, config.cols);
        }
        result.trace.in_array_stages = 1;
        std::uint64_t sum = reduce(std::move(pair_outputs), config.cols + 1,
                                   FullAdderStyle::FA14T, result.trace);
        if (config.mode == ComputeMode::IntegerSum) {
            result.value = sum;
        }
    }
    return result;
}

int bnn_dot(const MacroState& state, std::uint64_t input, int row) {
    if (row < 0 || row >= state.rows()) {
        throw IndexError("row " + std::to_string(row) + " out of range for " +
                         std::to_string(state.rows()) + " rows");
    }
    std::vector<std::uint64_t> outputs = multiply_rows(state, input);
    return 2 * std::popcount(outputs[static_cast<std::size_t>(row)]) - state.cols();
}

}  // namespace imcsim
