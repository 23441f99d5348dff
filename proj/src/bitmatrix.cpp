#include "imcsim/bitmatrix.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace imcsim {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) {
        throw ShapeError("bit matrix dimensions must be positive");
    }
    if (cols > 63) {
        throw WidthError("bit matrix is limited to 63 columns");
    }
    bits_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

void BitMatrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw IndexError("bit matrix index (" + std::to_string(r) + ", " +
                         std::to_string(c) + ") out of range for " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

bool BitMatrix::at(int r, int c) const {
    check_index(r, c);
    return bits_[static_cast<std::size_t>(r) * cols_ + c] != 0;
}

void BitMatrix::set(int r, int c, bool v) {
    check_index(r, c);
    bits_[static_cast<std::size_t>(r) * cols_ + c] = v ? 1 : 0;
}

std::uint64_t BitMatrix::row_word(int r) const {
    check_index(r, 0);
    std::uint64_t word = 0;
    for (int c = 0; c < cols_; ++c) {
        word |= static_cast<std::uint64_t>(bits_[static_cast<std::size_t>(r) * cols_ + c]) << c;
    }
    return word;
}

void BitMatrix::set_row_word(int r, std::uint64_t word) {
    check_index(r, 0);
    if (cols_ < 64 && (word >> cols_) != 0) {
        throw WidthError("row word does not fit " + std::to_string(cols_) + " bits");
    }
    for (int c = 0; c < cols_; ++c) {
        bits_[static_cast<std::size_t>(r) * cols_ + c] = (word >> c) & 1;
    }
}

BitMatrix parse_bit_matrix_text(const std::string& text) {
    std::istringstream in(text);
    int rows = 0;
    int cols = 0;
    if (!(in >> rows >> cols)) {
        throw IoError("bit matrix header must be \"rows cols\"");
    }
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line)) {
            throw IoError("bit matrix truncated at row " + std::to_string(r));
        }
        if (static_cast<int>(line.size()) != cols) {
            throw IoError("row " + std::to_string(r) + " has " +
                          std::to_string(line.size()) + " characters, expected " +
                          std::to_string(cols));
        }
        for (int c = 0; c < cols; ++c) {
            if (line[c] != '0' && line[c] != '1') {
                throw IoError("bit matrix rows may contain only 0/1 characters");
            }
            m.set(r, c, line[c] == '1');
        }
    }
    return m;
}

namespace {

bool json_bit(const nlohmann::json& v) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw IoError("bit matrix JSON entries must be 0 or 1");
    }
    return v.get<int>() == 1;
}

}  // namespace

BitMatrix parse_bit_matrix_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad bit matrix JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty() || !doc.front().is_array()) {
        throw IoError("bit matrix JSON must be an array of rows");
    }
    const int rows = static_cast<int>(doc.size());
    const int cols = static_cast<int>(doc.front().size());
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const nlohmann::json& row = doc[r];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw IoError("bit matrix JSON rows must all have the same length");
        }
        for (int c = 0; c < cols; ++c) {
            m.set(r, c, json_bit(row[c]));
        }
    }
    return m;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '[';
    }
    return false;
}

}  // namespace

BitMatrix load_bit_matrix(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    return looks_like_json(text) ? parse_bit_matrix_json(text)
                                 : parse_bit_matrix_text(text);
}

std::string to_text(const BitMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            out << (m.at(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

BitVector load_bit_vector(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (looks_like_json(text)) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("bad bit vector JSON: ") + e.what());
        }
        if (!doc.is_array() || doc.empty()) {
            throw IoError("bit vector JSON must be a non-empty array");
        }
        if (doc.front().is_array()) {
            throw IoError("bit vector JSON must be flat, not an array of rows");
        }
        if (doc.size() > 63) {
            throw WidthError("bit vector is limited to 63 entries");
        }
        BitVector v;
        v.width = static_cast<int>(doc.size());
        for (int i = 0; i < v.width; ++i) {
            v.word |= static_cast<std::uint64_t>(json_bit(doc[i])) << i;
        }
        return v;
    }
    BitMatrix m = parse_bit_matrix_text(text);
    if (m.rows() != 1) {
        throw ShapeError("bit vector text file must declare exactly one row");
    }
    return BitVector{m.row_word(0), m.cols()};
}

}  // namespace imcsim
