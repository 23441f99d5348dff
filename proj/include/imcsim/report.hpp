#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "imcsim/errors.hpp"

namespace imcsim {

enum class OutputFormat : std::uint8_t { Json, Csv, Table };

const char* to_string(OutputFormat f);
// Accepts "json", "csv", "table"; ConfigError otherwise.
OutputFormat parse_output_format(const std::string& name);

// Shortest decimal form that round-trips to the same double, so every output
// format carries the identical value.
std::string format_double(double v);
// Fixed-point with trailing zeros (and a trailing '.') trimmed; display only.
std::string format_fixed(double v, int max_decimals);

// One typed report cell. Keeping the native type until rendering guarantees
// JSON and CSV agree on the value, not just on a rounded string.
class Cell {
public:
    Cell(std::string text) : value_(std::move(text)) {}
    Cell(const char* text) : value_(std::string(text)) {}
    Cell(long v) : value_(v) {}
    Cell(int v) : value_(static_cast<long>(v)) {}
    Cell(double v) : value_(v) {}

    bool is_text() const { return std::holds_alternative<std::string>(value_); }
    bool is_integer() const { return std::holds_alternative<long>(value_); }
    bool is_real() const { return std::holds_alternative<double>(value_); }

    const std::string& text() const { return std::get<std::string>(value_); }
    long integer() const { return std::get<long>(value_); }
    double real() const { return std::get<double>(value_); }

    std::string display() const;

private:
    std::variant<std::string, long, double> value_;
};

// Every command produces exactly one of these and renders it; the three output
// formats are views of the same cells.
struct Report {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    // ShapeError when the row width does not match the column count.
    void add_row(std::vector<Cell> row);
};

std::string render(const Report& report, OutputFormat format);

}  // namespace imcsim
