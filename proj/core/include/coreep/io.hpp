#pragma once

#include "coreep/types.hpp"

#include <string>
#include <string_view>

namespace coreep {

/// Parses the matrix file grammar: one row per line, whitespace-separated
/// entries of the form `a`, `a+bi`, `a-bi`, or `bi` (decimal or scientific).
/// Blank lines and everything after `#` are ignored. Throws ParseError with
/// 1-based line/column on bad tokens and RaggedRows on unequal row lengths.
ComplexMatrix parse_matrix(std::string_view text);

/// One complex entry in file syntax, 17 significant digits per component.
std::string format_complex(Complex z);

/// Matrix file text that parses back to exactly the same matrix (bitwise per
/// component). Rows newline-separated, entries space-separated, trailing newline.
std::string format_matrix(const ComplexMatrix& m);

/// Reads + parses a matrix file; errors mention the path.
ComplexMatrix read_matrix_file(const std::string& path);

void write_matrix_file(const std::string& path, const ComplexMatrix& m);

}  // namespace coreep
