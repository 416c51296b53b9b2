#pragma once

#include "coreep/coreep.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace testutil {

// Row-major fill from real values.
coreep::ComplexMatrix mat(coreep::Index rows, coreep::Index cols,
                          std::initializer_list<double> values);

// The worked 3x3 example pair used throughout the tests:
// A = [[1,2,3],[0,0,0],[0,0,0]] (index 1), B = [[1,2,3],[0,0,1],[0,0,0]] (index 2).
coreep::ComplexMatrix example_a();
coreep::ComplexMatrix example_b();

// Exact rank over the Gaussian integers (fraction-free elimination in
// 128-bit arithmetic). Requires every component to be an integer; this is the
// independent oracle for rank-based order checks on integer matrices.
coreep::Index exact_rank(const coreep::ComplexMatrix& m);

bool bitwise_equal(const coreep::ComplexMatrix& a, const coreep::ComplexMatrix& b);

// --- CLI harness (reads COREEP_BIN / COREEP_DATA_DIR / COREEP_GOLDEN_DIR) ---

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args);

std::string data_path(const std::string& name);
std::string golden_dir();

nlohmann::json load_json_file(const std::string& path);

// Structural compare: objects need identical key sets, arrays identical
// lengths; numbers match within 1e-9 (absolute, relative for large values);
// strings that parse as matrix entries are compared numerically the same way.
// On mismatch *why (if given) receives a short path-annotated reason.
bool golden_matches(const nlohmann::json& actual, const nlohmann::json& expected,
                    std::string* why = nullptr);

}  // namespace testutil
