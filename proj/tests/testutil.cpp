#include "testutil.hpp"

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testutil {

using coreep::Complex;
using coreep::ComplexMatrix;
using coreep::Index;

ComplexMatrix mat(Index rows, Index cols, std::initializer_list<double> values) {
    if (static_cast<Index>(values.size()) != rows * cols)
        throw std::invalid_argument("mat: wrong number of values");
    ComplexMatrix m(rows, cols);
    auto it = values.begin();
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(*it++, 0.0);
    return m;
}

ComplexMatrix example_a() { return mat(3, 3, {1, 2, 3, 0, 0, 0, 0, 0, 0}); }
ComplexMatrix example_b() { return mat(3, 3, {1, 2, 3, 0, 0, 1, 0, 0, 0}); }

namespace {

struct GaussianInt {
    __int128 re = 0;
    __int128 im = 0;

    bool zero() const { return re == 0 && im == 0; }
};

GaussianInt mul(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianInt sub(const GaussianInt& a, const GaussianInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact division, valid for the fraction-free elimination steps below.
GaussianInt div_exact(const GaussianInt& a, const GaussianInt& d) {
    const __int128 norm = d.re * d.re + d.im * d.im;
    const GaussianInt num = mul(a, {d.re, -d.im});
    return {num.re / norm, num.im / norm};
}

}  // namespace

Index exact_rank(const ComplexMatrix& m) {
    const Index rows = m.rows();
    const Index cols = m.cols();
    std::vector<std::vector<GaussianInt>> w(static_cast<std::size_t>(rows),
                                            std::vector<GaussianInt>(static_cast<std::size_t>(cols)));
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            const double re = m(i, j).real();
            const double im = m(i, j).imag();
            if (re != std::round(re) || im != std::round(im))
                throw std::invalid_argument("exact_rank: entries must be integers");
            w[i][j] = {static_cast<__int128>(std::llround(re)),
                       static_cast<__int128>(std::llround(im))};
        }
    }

    GaussianInt prev{1, 0};
    Index rank = 0;
    Index row = 0;
    for (Index col = 0; col < cols && row < rows; ++col) {
        Index pivot = -1;
        for (Index i = row; i < rows; ++i) {
            if (!w[i][col].zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(w[row], w[pivot]);
        for (Index i = row + 1; i < rows; ++i) {
            for (Index j = col + 1; j < cols; ++j)
                w[i][j] = div_exact(sub(mul(w[row][col], w[i][j]), mul(w[i][col], w[row][j])), prev);
            w[i][col] = {0, 0};
        }
        prev = w[row][col];
        ++rank;
        ++row;
    }
    return rank;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            const std::array<double, 4> parts = {a(i, j).real(), a(i, j).imag(), b(i, j).real(),
                                                 b(i, j).imag()};
            std::uint64_t bits[4];
            std::memcpy(bits, parts.data(), sizeof(bits));
            if (bits[0] != bits[2] || bits[1] != bits[3]) return false;
        }
    }
    return true;
}

namespace {

std::string required_env(const char* name) {
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0')
        throw std::runtime_error(std::string("environment variable not set: ") + name);
    return value;
}

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    static int counter = 0;
    const std::string base = (std::filesystem::temp_directory_path() /
                              ("coreep_cli_" + std::to_string(::getpid()) + "_" +
                               std::to_string(counter++)))
                                 .string();
    const std::string out_file = base + ".out";
    const std::string err_file = base + ".err";

    std::string cmd = "'" + required_env("COREEP_BIN") + "'";
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " >'" + out_file + "' 2>'" + err_file + "'";

    const int rc = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.out = read_whole_file(out_file);
    result.err = read_whole_file(err_file);
    std::filesystem::remove(out_file);
    std::filesystem::remove(err_file);
    return result;
}

std::string data_path(const std::string& name) { return required_env("COREEP_DATA_DIR") + "/" + name; }

std::string golden_dir() { return required_env("COREEP_GOLDEN_DIR"); }

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json doc;
    in >> doc;
    return doc;
}

namespace {

bool numbers_match(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

bool entry_strings_match(const std::string& a, const std::string& b) {
    try {
        const ComplexMatrix ma = coreep::parse_matrix(a);
        const ComplexMatrix mb = coreep::parse_matrix(b);
        if (ma.rows() != 1 || ma.cols() != 1 || mb.rows() != 1 || mb.cols() != 1) return a == b;
        return numbers_match(ma(0, 0).real(), mb(0, 0).real()) &&
               numbers_match(ma(0, 0).imag(), mb(0, 0).imag());
    } catch (const coreep::Error&) {
        return a == b;
    }
}

bool matches_impl(const nlohmann::json& actual, const nlohmann::json& expected, std::string path,
                  std::string* why) {
    const auto fail = [&](const std::string& reason) {
        if (why != nullptr) *why = path.empty() ? reason : path + ": " + reason;
        return false;
    };
    if (actual.is_number() && expected.is_number()) {
        if (!numbers_match(actual.get<double>(), expected.get<double>()))
            return fail("number " + actual.dump() + " != " + expected.dump());
        return true;
    }
    if (actual.type() != expected.type()) return fail("type mismatch");
    if (actual.is_object()) {
        if (actual.size() != expected.size()) return fail("object key sets differ");
        for (auto it = expected.begin(); it != expected.end(); ++it) {
            if (!actual.contains(it.key())) return fail("missing key " + it.key());
            if (!matches_impl(actual.at(it.key()), it.value(), path + "/" + it.key(), why))
                return false;
        }
        return true;
    }
    if (actual.is_array()) {
        if (actual.size() != expected.size()) return fail("array lengths differ");
        for (std::size_t i = 0; i < actual.size(); ++i) {
            if (!matches_impl(actual[i], expected[i], path + "/" + std::to_string(i), why))
                return false;
        }
        return true;
    }
    if (actual.is_string())
        return entry_strings_match(actual.get<std::string>(), expected.get<std::string>())
                   ? true
                   : fail("string " + actual.dump() + " != " + expected.dump());
    if (actual != expected) return fail(actual.dump() + " != " + expected.dump());
    return true;
}

}  // namespace

bool golden_matches(const nlohmann::json& actual, const nlohmann::json& expected, std::string* why) {
    return matches_impl(actual, expected, "", why);
}

}  // namespace testutil
