#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "imcsim/macroarray.hpp"

namespace imcsim {

// Dense layer with weights restricted to +1/-1, row-major
// [out_features x in_features].
struct BinLayer {
    int out_features = 0;
    int in_features = 0;
    std::vector<int> weights;

    int weight(int out, int in) const;
    void validate() const;
};

// One macro-sized patch of the layer. Row ranges cover output neurons, column
// ranges input features; the last tile in each direction may be padded.
struct Tile {
    int macro_id = 0;
    int row_begin = 0;
    int row_count = 0;  // active rows (<= macro rows)
    int col_begin = 0;
    int col_count = 0;  // active columns (<= macro cols)
};

struct TilingPlan {
    int macro_rows = 0;
    int macro_cols = 0;
    std::vector<Tile> tiles;
    // Macro invocation order: column-major over input-feature chunks within
    // each output-row group. Any permutation yields the same result.
    std::vector<int> accumulation_schedule;
};

struct EncodedLayer {
    std::vector<MacroState> macros;
    TilingPlan plan;
};

// Encodes +1 -> logic 1, -1 -> logic 0, splits the layer into macro-sized
// tiles and zero-pads the last ones. The plan records the active ranges so
// padded lanes never enter a popcount.
EncodedLayer encode_layer(const BinLayer& layer, const MacroConfig& config);

// Holds one neuron's running sum across tiles; `width` bits (including the
// sign) must cover the worst case |value| <= in_features.
class PartialSumRegister {
public:
    explicit PartialSumRegister(int width);

    void add(int delta);
    int value() const { return value_; }
    int width() const { return width_; }

    static int width_for(int in_features);

private:
    int value_ = 0;
    int width_;
};

// Exact signed dot products, one per output neuron, accumulated tile by tile
// in the plan's schedule through masked popcounts on the macro row outputs.
std::vector<int> infer_dot(const BinLayer& layer, const std::vector<int>& input,
                           const TilingPlan& plan,
                           const std::vector<MacroState>& macros);

// Binarization between layers; ties at zero map to +1.
constexpr int sign_activation(int v) { return v >= 0 ? +1 : -1; }

// JSON layer format: {"out_features": M, "in_features": N,
// "weights": [[+1|-1, ...], ...]}; inputs: {"in_features": N,
// "values": [+1|-1, ...]}.
BinLayer load_layer(const std::filesystem::path& path);
std::vector<int> load_input_vector(const std::filesystem::path& path);

}  // namespace imcsim
