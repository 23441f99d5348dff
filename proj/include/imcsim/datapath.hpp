#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imcsim/errors.hpp"

namespace imcsim {

// The two full-adder implementations differ only in cost tags; the logic
// function is identical.
enum class FullAdderStyle : std::uint8_t { FA14T, FA28T };

constexpr int transistor_count(FullAdderStyle s) {
    return s == FullAdderStyle::FA14T ? 14 : 28;
}

const char* to_string(FullAdderStyle s);

struct FullAddResult {
    bool sum;
    bool carry;
};

// sum = a XOR b XOR cin, carry = majority(a, b, cin).
constexpr FullAddResult full_add(bool a, bool b, bool cin) {
    return FullAddResult{(a != b) != cin, (a && b) || (a && cin) || (b && cin)};
}

// Widths are limited so every intermediate result fits a 64-bit word.
inline constexpr int kMaxWordWidth = 63;

// Exact unsigned add through a chain of `width` full adders; the carry out of
// the last stage supplies bit `width` of the result. Throws WidthError when an
// operand does not fit `width` bits or the width is out of range.
std::uint64_t rca_add(std::uint64_t a, std::uint64_t b, bool cin, int width);

struct TreeLevel {
    int adder_count;
    int adder_width;

    friend bool operator==(const TreeLevel&, const TreeLevel&) = default;
};

// Reduction tree of ripple-carry adders. Level k (1-based) holds
// input_count / 2^k adders of width input_width + k - 1; each level widens the
// operands by one bit.
struct TreeSpec {
    int input_count = 0;
    int input_width = 0;
    FullAdderStyle style = FullAdderStyle::FA28T;
    std::vector<TreeLevel> levels;

    int output_width() const { return input_width + static_cast<int>(levels.size()); }
    long fa_count() const;
    long tree_transistor_count() const { return fa_count() * transistor_count(style); }
    // One delta per level, independent of adder width.
    int latency_delta() const { return static_cast<int>(levels.size()); }
    // Alternative metric: full-adder delays along the worst-case carry chain
    // if every level ripples to completion before the next starts. Not used
    // for any headline comparison.
    long ripple_latency_fa() const;
};

// Throws ShapeError unless input_count is a power of two >= 2, and WidthError
// when the output width would exceed the word limit.
TreeSpec build_tree(int input_count, int input_width, FullAdderStyle style);

// Level widths joined with '/', e.g. "8/9/10/11" for a (16, 8) tree.
std::string width_schedule(const TreeSpec& spec);

// Exact sum of the inputs, reduced pairwise with rca_add level by level.
std::uint64_t tree_sum(const TreeSpec& spec, std::span<const std::uint64_t> inputs);

}  // namespace imcsim
