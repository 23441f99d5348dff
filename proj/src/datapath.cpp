#include "imcsim/datapath.hpp"

#include <string>

namespace imcsim {

const char* to_string(FullAdderStyle s) {
    return s == FullAdderStyle::FA14T ? "FA14T" : "FA28T";
}

namespace {

void check_operand(std::uint64_t v, int width, const char* name) {
    if ((v >> width) != 0) {
        throw WidthError(std::string(name) + " does not fit " +
                         std::to_string(width) + " bits");
    }
}

bool is_power_of_two(int v) {
    return v > 0 && (v & (v - 1)) == 0;
}

}  // namespace

std::uint64_t rca_add(std::uint64_t a, std::uint64_t b, bool cin, int width) {
    if (width < 1 || width > kMaxWordWidth) {
        throw WidthError("adder width must be in [1, " +
                         std::to_string(kMaxWordWidth) + "], got " +
                         std::to_string(width));
    }
    check_operand(a, width, "operand a");
    check_operand(b, width, "operand b");
    std::uint64_t sum = 0;
    bool carry = cin;
    for (int i = 0; i < width; ++i) {
        FullAddResult fa = full_add((a >> i) & 1, (b >> i) & 1, carry);
        sum |= static_cast<std::uint64_t>(fa.sum) << i;
        carry = fa.carry;
    }
    sum |= static_cast<std::uint64_t>(carry) << width;
    return sum;
}

long TreeSpec::fa_count() const {
    long count = 0;
    for (const TreeLevel& level : levels) {
        count += static_cast<long>(level.adder_count) * level.adder_width;
    }
    return count;
}

long TreeSpec::ripple_latency_fa() const {
    long delay = 0;
    for (const TreeLevel& level : levels) {
        delay += level.adder_width;
    }
    return delay;
}

TreeSpec build_tree(int input_count, int input_width, FullAdderStyle style) {
    if (input_count < 2 || !is_power_of_two(input_count)) {
        throw ShapeError("tree input count must be a power of two >= 2, got " +
                         std::to_string(input_count));
    }
    if (input_width < 1) {
        throw WidthError("tree input width must be >= 1");
    }
    TreeSpec spec;
    spec.input_count = input_count;
    spec.input_width = input_width;
    spec.style = style;
    for (int adders = input_count / 2, width = input_width; adders >= 1;
         adders /= 2, ++width) {
        spec.levels.push_back(TreeLevel{adders, width});
    }
    if (spec.output_width() > kMaxWordWidth + 1) {
        throw WidthError("tree output width " + std::to_string(spec.output_width()) +
                         " exceeds the word limit");
    }
    return spec;
}

std::string width_schedule(const TreeSpec& spec) {
    std::string out;
    for (const TreeLevel& level : spec.levels) {
        if (!out.empty()) out += '/';
        out += std::to_string(level.adder_width);
    }
    return out;
}

std::uint64_t tree_sum(const TreeSpec& spec, std::span<const std::uint64_t> inputs) {
    if (static_cast<int>(inputs.size()) != spec.input_count) {
        throw ShapeError("tree expects " + std::to_string(spec.input_count) +
                         " inputs, got " + std::to_string(inputs.size()));
    }
    std::vector<std::uint64_t> stage(inputs.begin(), inputs.end());
    for (std::uint64_t v : stage) {
        check_operand(v, spec.input_width, "tree input");
    }
    for (const TreeLevel& level : spec.levels) {
        std::vector<std::uint64_t> next(level.adder_count);
        for (int i = 0; i < level.adder_count; ++i) {
            next[i] = rca_add(stage[2 * i], stage[2 * i + 1], false, level.adder_width);
        }
        stage = std::move(next);
    }
    return stage.front();
}

}  // namespace imcsim
