#include "imcsim/bnn.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include <json.hpp>

#include "imcsim/bitmatrix.hpp"

namespace imcsim {

int BinLayer::weight(int out, int in) const {
    if (out < 0 || out >= out_features || in < 0 || in >= in_features) {
        throw IndexError("layer weight (" + std::to_string(out) + ", " +
                         std::to_string(in) + ") out of range");
    }
    return weights[static_cast<std::size_t>(out) * in_features + in];
}

void BinLayer::validate() const {
    if (out_features < 1 || in_features < 1) {
        throw ShapeError("layer dimensions must be >= 1");
    }
    if (weights.size() != static_cast<std::size_t>(out_features) * in_features) {
        throw ShapeError("layer holds " + std::to_string(weights.size()) +
                         " weights, expected " +
                         std::to_string(static_cast<long>(out_features) * in_features));
    }
    for (int w : weights) {
        if (w != +1 && w != -1) {
            throw DomainError("layer weights must be +1 or -1");
        }
    }
}

EncodedLayer encode_layer(const BinLayer& layer, const MacroConfig& config) {
    layer.validate();
    config.validate();

    const int row_groups = (layer.out_features + config.rows - 1) / config.rows;
    const int col_chunks = (layer.in_features + config.cols - 1) / config.cols;

    EncodedLayer enc;
    enc.plan.macro_rows = config.rows;
    enc.plan.macro_cols = config.cols;
    for (int g = 0; g < row_groups; ++g) {
        for (int c = 0; c < col_chunks; ++c) {
            Tile tile;
            tile.macro_id = static_cast<int>(enc.plan.tiles.size());
            tile.row_begin = g * config.rows;
            tile.row_count = std::min(config.rows, layer.out_features - tile.row_begin);
            tile.col_begin = c * config.cols;
            tile.col_count = std::min(config.cols, layer.in_features - tile.col_begin);

            // Padded lanes are written as logic 0 (-1) and masked out of every
            // popcount, so their spurious products never reach a result.
            BitMatrix bits(config.rows, config.cols);
            for (int r = 0; r < tile.row_count; ++r) {
                for (int k = 0; k < tile.col_count; ++k) {
                    const int w = layer.weight(tile.row_begin + r, tile.col_begin + k);
                    bits.set(r, k, w == +1);
                }
            }
            enc.macros.push_back(
                write_weights(MacroState(config.rows, config.cols), bits));
            enc.plan.accumulation_schedule.push_back(tile.macro_id);
            enc.plan.tiles.push_back(tile);
        }
    }
    return enc;
}

PartialSumRegister::PartialSumRegister(int width) : width_(width) {
    if (width < 2) {
        throw WidthError("partial-sum register needs at least a sign and one bit");
    }
}

void PartialSumRegister::add(int delta) {
    const long next = static_cast<long>(value_) + delta;
    const long limit = (1L << (width_ - 1)) - 1;
    if (next > limit || next < -limit - 1) {
        throw WidthError("partial sum " + std::to_string(next) + " overflows " +
                         std::to_string(width_) + " bits");
    }
    value_ = static_cast<int>(next);
}

int PartialSumRegister::width_for(int in_features) {
    int width = 2;
    while (((1L << (width - 1)) - 1) < in_features) ++width;
    return width;
}

std::vector<int> infer_dot(const BinLayer& layer, const std::vector<int>& input,
                           const TilingPlan& plan,
                           const std::vector<MacroState>& macros) {
    layer.validate();
    if (static_cast<int>(input.size()) != layer.in_features) {
        throw ShapeError("input has " + std::to_string(input.size()) +
                         " entries, layer expects " +
                         std::to_string(layer.in_features));
    }
    for (int v : input) {
        if (v != +1 && v != -1) {
            throw DomainError("input entries must be +1 or -1");
        }
    }
    if (macros.size() != plan.tiles.size() ||
        plan.accumulation_schedule.size() != plan.tiles.size()) {
        throw ShapeError("tiling plan does not match the encoded macros");
    }

    std::vector<PartialSumRegister> acc(
        static_cast<std::size_t>(layer.out_features),
        PartialSumRegister(PartialSumRegister::width_for(layer.in_features)));

    for (int tile_id : plan.accumulation_schedule) {
        if (tile_id < 0 || tile_id >= static_cast<int>(plan.tiles.size())) {
            throw IndexError("schedule references tile " + std::to_string(tile_id));
        }
        const Tile& tile = plan.tiles[static_cast<std::size_t>(tile_id)];

        std::uint64_t input_word = 0;
        for (int k = 0; k < tile.col_count; ++k) {
            if (input[static_cast<std::size_t>(tile.col_begin + k)] == +1) {
                input_word |= std::uint64_t{1} << k;
            }
        }
        const std::uint64_t lane_mask = (std::uint64_t{1} << tile.col_count) - 1;

        std::vector<std::uint64_t> outputs =
            multiply_rows(macros[static_cast<std::size_t>(tile_id)], input_word);
        for (int r = 0; r < tile.row_count; ++r) {
            const int pc = std::popcount(outputs[static_cast<std::size_t>(r)] & lane_mask);
            acc[static_cast<std::size_t>(tile.row_begin + r)].add(2 * pc - tile.col_count);
        }
    }

    std::vector<int> result(static_cast<std::size_t>(layer.out_features));
    for (int n = 0; n < layer.out_features; ++n) {
        result[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n)].value();
    }
    return result;
}

namespace {

int pm_one(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() || (v.get<int>() != +1 && v.get<int>() != -1)) {
        throw IoError(std::string(what) + " entries must be +1 or -1");
    }
    return v.get<int>();
}

nlohmann::json parse_object(const std::string& text, const char* what) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad ") + what + " JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw IoError(std::string(what) + " file must hold a JSON object");
    }
    return doc;
}

}  // namespace

BinLayer load_layer(const std::filesystem::path& path) {
    nlohmann::json doc = parse_object(read_file(path), "layer");
    if (!doc.contains("out_features") || !doc.contains("in_features") ||
        !doc.contains("weights")) {
        throw IoError("layer file needs out_features, in_features and weights");
    }
    BinLayer layer;
    layer.out_features = doc["out_features"].get<int>();
    layer.in_features = doc["in_features"].get<int>();
    const nlohmann::json& rows = doc["weights"];
    if (!rows.is_array() ||
        static_cast<int>(rows.size()) != layer.out_features) {
        throw IoError("layer weights must hold out_features rows");
    }
    for (const nlohmann::json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != layer.in_features) {
            throw IoError("layer weight rows must hold in_features entries");
        }
        for (const nlohmann::json& v : row) {
            layer.weights.push_back(pm_one(v, "layer weight"));
        }
    }
    layer.validate();
    return layer;
}

std::vector<int> load_input_vector(const std::filesystem::path& path) {
    nlohmann::json doc = parse_object(read_file(path), "input");
    if (!doc.contains("in_features") || !doc.contains("values")) {
        throw IoError("input file needs in_features and values");
    }
    const int n = doc["in_features"].get<int>();
    const nlohmann::json& values = doc["values"];
    if (!values.is_array() || static_cast<int>(values.size()) != n) {
        throw IoError("input values must hold in_features entries");
    }
    std::vector<int> input;
    input.reserve(static_cast<std::size_t>(n));
    for (const nlohmann::json& v : values) {
        input.push_back(pm_one(v, "input"));
    }
    return input;
}

}  // namespace imcsim
