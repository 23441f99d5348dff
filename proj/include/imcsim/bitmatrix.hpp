#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "imcsim/errors.hpp"

namespace imcsim {

// Dense 0/1 matrix used for weight images and input patterns. Bit (r, c) maps
// to bit c of row r's word, so the first character on a text line is column 0.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool at(int r, int c) const;
    void set(int r, int c, bool v);

    // Row packed as an integer, bit c = column c.
    std::uint64_t row_word(int r) const;
    void set_row_word(int r, std::uint64_t word);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    void check_index(int r, int c) const;

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

// Plain-text format: first line "rows cols", then one line of 0/1 characters
// per row. JSON alternative: an array of rows, each an array of 0/1.
BitMatrix parse_bit_matrix_text(const std::string& text);
BitMatrix parse_bit_matrix_json(const std::string& text);

// Sniffs the format: content starting with '[' is treated as JSON.
BitMatrix load_bit_matrix(const std::filesystem::path& path);

std::string to_text(const BitMatrix& m);

// Single bit-vector variants (a 1-row matrix, or a flat JSON array of 0/1).
// Returns the packed word plus its width.
struct BitVector {
    std::uint64_t word = 0;
    int width = 0;
};
BitVector load_bit_vector(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace imcsim
