#include "imcsim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include <json.hpp>

namespace imcsim {

const char* to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Table: return "table";
    }
    return "?";
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "table") return OutputFormat::Table;
    throw ConfigError("unknown output format: " + name);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int max_decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", max_decimals, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

std::string Cell::display() const {
    if (is_text()) return text();
    if (is_integer()) return std::to_string(integer());
    return format_double(real());
}

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw ShapeError("report row holds " + std::to_string(row.size()) +
                         " cells, table has " + std::to_string(columns.size()) +
                         " columns");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["report"] = report.title;
    doc["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const std::vector<Cell>& row : report.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (cell.is_text()) {
                obj[report.columns[i]] = cell.text();
            } else if (cell.is_integer()) {
                obj[report.columns[i]] = cell.integer();
            } else {
                obj[report.columns[i]] = cell.real();
            }
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(report.columns[i]);
    }
    out += '\n';
    for (const std::vector<Cell>& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i].display());
        }
        out += '\n';
    }
    return out;
}

std::string render_table(const Report& report) {
    std::vector<std::size_t> widths(report.columns.size());
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        widths[i] = report.columns[i].size();
    }
    std::vector<std::vector<std::string>> cells;
    for (const std::vector<Cell>& row : report.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(row[i].display());
            widths[i] = std::max(widths[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }

    // The last column is left unpadded so no line carries trailing spaces.
    auto emit_line = [&](auto field) {
        std::string line;
        for (std::size_t i = 0; i < widths.size(); ++i) {
            if (i) line += "  ";
            const std::string s = field(i);
            line += s;
            if (i + 1 < widths.size()) line += std::string(widths[i] - s.size(), ' ');
        }
        return line + "\n";
    };
    std::string out = report.title + "\n";
    out += emit_line([&](std::size_t i) { return report.columns[i]; });
    out += emit_line([&](std::size_t i) { return std::string(widths[i], '-'); });
    for (const std::vector<std::string>& line : cells) {
        out += emit_line([&](std::size_t i) { return line[i]; });
    }
    return out;
}

}  // namespace

std::string render(const Report& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return render_json(report);
        case OutputFormat::Csv: return render_csv(report);
        case OutputFormat::Table: return render_table(report);
    }
    throw ConfigError("unknown output format");
}

}  // namespace imcsim
