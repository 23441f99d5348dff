#pragma once

#include <cstdint>
#include <vector>

#include "imcsim/bitcell.hpp"
#include "imcsim/bitmatrix.hpp"
#include "imcsim/datapath.hpp"

namespace imcsim {

// Conventional routes every row's multiply word to an external adder tree;
// FusedPairs adds each pair of adjacent rows inside the array and routes the
// widened pair outputs instead.
enum class Topology : std::uint8_t { Conventional, FusedPairs };
enum class ComputeMode : std::uint8_t { IntegerSum, Popcount };

const char* to_string(Topology t);
const char* to_string(ComputeMode m);

struct MacroConfig {
    int rows = 16;
    int cols = 8;
    Topology topology = Topology::Conventional;
    ComputeMode mode = ComputeMode::IntegerSum;

    // ConfigError on rows < 2, cols outside [1, 32], or FusedPairs with an
    // odd row count. Non-power-of-two row counts are legal; the reduction
    // tree zero-pads them.
    void validate() const;
};

// Grid of 10T cells. Freshly constructed cells are in the unknown power-up
// state; computing on them before write_weights raises StateError.
class MacroState {
public:
    MacroState(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const CellState& cell(int r, int c) const;
    CellState& cell(int r, int c);

    // Stored weight image read back through Read cycles.
    BitMatrix read_weights() const;

private:
    int rows_;
    int cols_;
    std::vector<CellState> cells_;
};

// Loads every cell through a Write cycle, row by row. ShapeError when the
// matrix does not match the macro dimensions.
MacroState write_weights(MacroState state, const BitMatrix& weights);

// One compute cycle: the input word is broadcast on the column wordline pairs
// and every row multiplies in parallel. Element j of the result packs
// XNOR(input bit j, weight bit j) as bit j. WidthError if the input word does
// not fit `cols` bits.
std::vector<std::uint64_t> multiply_rows(const MacroState& state, std::uint64_t input);

struct LatencyTrace {
    int tree_levels = 0;
    // Tree traversal only, one delta per level (the headline figure).
    int tree_latency_delta = 0;
    // FusedPairs adds one in-array accumulation stage ahead of the tree.
    int in_array_stages = 0;
    int total_latency_delta() const { return tree_latency_delta + in_array_stages; }
};

struct MacResult {
    std::uint64_t value = 0;
    LatencyTrace trace;
};

// Full multiply-accumulate pass. IntegerSum reduces the row words (or the
// fused pair sums) through the adder tree; Popcount counts the 1-bits across
// all row outputs. Both topologies produce the identical IntegerSum value.
MacResult mac(const MacroState& state, std::uint64_t input, const MacroConfig& config);

// Signed dot product of one row's +1/-1 weight vector with the input vector:
// 2 * popcount(row output) - cols.
int bnn_dot(const MacroState& state, std::uint64_t input, int row);

}  // namespace imcsim
