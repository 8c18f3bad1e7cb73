#pragma once

// Matrix literals, JSON matrix files and boundary output for the CLI.
//
// Literal grammar (whitespace is ignored):
//   matrix  := '[' row (';' row)* ']'
//   row     := entry (',' entry)*
//   entry   := real | imag | real sign imag
//   imag    := [real] 'i'

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "numrad/complex_matrix.hpp"
#include "numrad/numerical_range.hpp"

namespace numrad::cli {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view text) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (char c : text) {
            if (c == '\n') {
                ++line;
                col = 1;
                continue;
            }
            if (c != ' ' && c != '\t' && c != '\r') {
                chars_.push_back(c);
                where_.emplace_back(line, col);
            }
            ++col;
        }
        end_ = {line, col};
    }

    CMatrix parse() {
        expect('[');
        std::vector<std::vector<Complex>> rows;
        rows.push_back(row());
        while (peek() == ';') {
            ++pos_;
            rows.push_back(row());
        }
        expect(']');
        if (pos_ != chars_.size()) fail("trailing characters after matrix");
        const std::size_t n = rows.size();
        for (std::size_t r = 0; r < n; ++r) {
            if (rows[r].size() != rows[0].size()) {
                fail_at("ragged rows: row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size())
                            + " entries, row 1 has " + std::to_string(rows[0].size()),
                        row_start_[r]);
            }
        }
        if (rows[0].size() != n) {
            fail_at("matrix must be square, got " + std::to_string(n) + "x" + std::to_string(rows[0].size()), 0);
        }
        std::vector<Complex> data;
        for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
        return CMatrix(n, std::move(data));
    }

private:
    char peek() const { return pos_ < chars_.size() ? chars_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
        const auto [line, col] = at < where_.size() ? where_[at] : end_;
        throw ParseError(what, line, col);
    }

    void expect(char c) {
        if (peek() != c) {
            if (pos_ >= chars_.size()) fail(std::string("unexpected end of input, expected '") + c + "'");
            fail(std::string("expected '") + c + "', found '" + peek() + "'");
        }
        ++pos_;
    }

    std::vector<Complex> row() {
        row_start_.push_back(pos_);
        std::vector<Complex> out{entry()};
        while (peek() == ',') {
            ++pos_;
            out.push_back(entry());
        }
        return out;
    }

    // sign? number? 'i'?  -- at least one of number and 'i'
    bool term(double& value, bool& imaginary, bool need_sign) {
        const std::size_t start = pos_;
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        } else if (need_sign) {
            return false;
        }
        bool have_number = false;
        double mag = 1.0;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            const char* first = chars_.data() + pos_;
            const char* last = chars_.data() + chars_.size();
            const auto res = std::from_chars(first, last, mag);
            if (res.ec != std::errc()) fail("malformed number");
            pos_ += static_cast<std::size_t>(res.ptr - first);
            have_number = true;
        }
        imaginary = false;
        if (peek() == 'i') {
            ++pos_;
            imaginary = true;
        }
        if (!have_number && !imaginary) {
            pos_ = start;
            fail(pos_ < chars_.size() ? std::string("expected a number, found '") + peek() + "'"
                                      : std::string("unexpected end of input, expected a number"));
        }
        value = sign * mag;
        return true;
    }

    Complex entry() {
        double v = 0.0;
        bool im = false;
        term(v, im, false);
        if (im) return {0.0, v};
        double w = 0.0;
        bool im2 = false;
        const std::size_t mark = pos_;
        if (term(w, im2, true)) {
            if (!im2) fail_at("second term of a complex entry must be imaginary", mark);
            return {v, w};
        }
        return {v, 0.0};
    }

    std::vector<char> chars_;
    std::vector<std::pair<std::size_t, std::size_t>> where_;
    std::pair<std::size_t, std::size_t> end_;
    std::vector<std::size_t> row_start_;
    std::size_t pos_ = 0;
};

inline std::string shortest(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline CMatrix parse_matrix(std::string_view text) { return detail::LiteralParser(text).parse(); }

/// Literal that parses back to the same matrix bit for bit.
inline std::string format_matrix(const CMatrix& m) {
    std::string out = "[";
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += ';';
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) out += ',';
            const Complex z = m(i, j);
            if (z.imag() == 0.0) {
                out += detail::shortest(z.real());
            } else if (z.real() == 0.0) {
                out += detail::shortest(z.imag()) + "i";
            } else {
                out += detail::shortest(z.real());
                if (!std::signbit(z.imag())) out += '+';
                out += detail::shortest(z.imag()) + "i";
            }
        }
    }
    return out + "]";
}

/// Fixed 12 significant digits, as used by every CLI report.
inline std::string fmt12(double x) {
    if (x == 0.0) x = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline nlohmann::json matrix_to_json(const CMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (const auto& z : m.data()) data.push_back({z.real(), z.imag()});
    return {{"rows", m.size()}, {"cols", m.size()}, {"data", data}};
}

inline CMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        if (rows != cols) throw std::invalid_argument("matrix file: rows and cols must be equal");
        const auto& data = j.at("data");
        if (!data.is_array() || data.size() != rows * cols) {
            throw std::invalid_argument("matrix file: data must hold rows*cols entries");
        }
        std::vector<Complex> d;
        d.reserve(data.size());
        for (const auto& e : data) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix file: each entry must be [re, im]");
            d.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return CMatrix(rows, std::move(d));
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("matrix file: ") + ex.what());
    }
}

inline CMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& ex) {
        throw std::invalid_argument("matrix file '" + path + "': " + ex.what());
    }
    return matrix_from_json(j);
}

inline void write_matrix_file(const std::string& path, const CMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write matrix file '" + path + "'");
    out << matrix_to_json(m).dump() << '\n';
}

enum class BoundaryFormat { csv, json };

/// `count` support points of W(T), one per row.
inline std::string emit_boundary(const CMatrix& t, std::size_t count, BoundaryFormat format) {
    const auto pts = boundary_points(t, count);
    std::string out;
    if (format == BoundaryFormat::csv) {
        out = "re,im\n";
        for (const auto& z : pts) out += fmt12(z.real()) + "," + fmt12(z.imag()) + "\n";
        return out;
    }
    out = "[";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k > 0) out += ",";
        out += "[" + fmt12(pts[k].real()) + "," + fmt12(pts[k].imag()) + "]";
    }
    return out + "]\n";
}

}  // namespace numrad::cli
