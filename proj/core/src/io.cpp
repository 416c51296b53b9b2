#include "coreep/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace coreep {

namespace {

struct Cursor {
    const char* ptr;
    const char* end;
    int line;
    int col;  // 1-based column of the token start, for diagnostics
};

[[noreturn]] void bad_entry(std::string_view token, int line, int col) {
    throw ParseError("invalid entry '" + std::string(token) + "'", line, col);
}

// Reads an unsigned number (digits with optional dot/exponent). Rejects
// textual specials like inf/nan so files stay purely numeric.
double read_number(Cursor& c, std::string_view token) {
    if (c.ptr == c.end || !(std::isdigit(static_cast<unsigned char>(*c.ptr)) || *c.ptr == '.'))
        bad_entry(token, c.line, c.col);
    double value = 0.0;
    const auto result = std::from_chars(c.ptr, c.end, value);
    if (result.ec != std::errc()) bad_entry(token, c.line, c.col);
    c.ptr = result.ptr;
    return value;
}

int read_sign(Cursor& c) {
    if (c.ptr != c.end && (*c.ptr == '+' || *c.ptr == '-')) {
        const int s = *c.ptr == '-' ? -1 : 1;
        ++c.ptr;
        return s;
    }
    return 1;
}

bool at_trailing_i(Cursor& c) {
    return c.ptr != c.end && *c.ptr == 'i' && c.ptr + 1 == c.end;
}

// Grammar: a | bi | a+bi | a-bi, where each part is a decimal number with
// optional sign and exponent, and a bare i counts as 1i.
Complex parse_entry(std::string_view token, int line, int col) {
    Cursor c{token.data(), token.data() + token.size(), line, col};
    const int s1 = read_sign(c);
    if (at_trailing_i(c)) return Complex(0.0, static_cast<double>(s1));
    const double first = read_number(c, token);
    if (c.ptr == c.end) return Complex(s1 * first, 0.0);
    if (at_trailing_i(c)) return Complex(0.0, s1 * first);
    if (*c.ptr != '+' && *c.ptr != '-') bad_entry(token, line, col);
    const int s2 = read_sign(c);
    if (at_trailing_i(c)) return Complex(s1 * first, static_cast<double>(s2));
    const double second = read_number(c, token);
    if (!at_trailing_i(c)) bad_entry(token, line, col);
    return Complex(s1 * first, s2 * second);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_double_signed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.17g", x);
    return buf;
}

bool is_positive_zero(double x) { return x == 0.0 && !std::signbit(x); }

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::vector<int> row_lines;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<Complex> row;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t') {
                ++i;
                continue;
            }
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
            row.push_back(
                parse_entry(line.substr(start, i - start), line_no, static_cast<int>(start) + 1));
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
            row_lines.push_back(line_no);
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }

    if (rows.empty()) throw ParseError("no matrix data found", 1, 1);
    const std::size_t cols = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw RaggedRows("row has " + std::to_string(rows[r].size()) + " entries, expected " +
                                 std::to_string(cols),
                             row_lines[r]);
    }

    ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Index>(r), static_cast<Index>(j)) = rows[r][j];
    return m;
}

std::string format_complex(Complex z) {
    const double re = z.real();
    const double im = z.imag();
    if (is_positive_zero(im)) return format_double(re);
    if (is_positive_zero(re)) return format_double(im) + "i";
    return format_double(re) + format_double_signed(im) + "i";
}

std::string format_matrix(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0)
        throw Error("format_matrix: empty matrices have no text form");
    std::string out;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ' ';
            out += format_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("read failure: " + path);
    try {
        return parse_matrix(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line, e.column);
    } catch (const RaggedRows& e) {
        throw RaggedRows(path + ": " + e.what(), e.line);
    }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << format_matrix(m);
    out.flush();
    if (!out) throw Error("write failure: " + path);
}

}  // namespace coreep
