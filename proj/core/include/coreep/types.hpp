#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coreep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Input claimed to be orthonormal is not (within the fixed column-orthonormality gate).
class NonOrthonormalInput : public Error {
public:
    using Error::Error;
};

/// Operation requires index <= 1 but the argument's index is larger.
class IndexTooLarge : public Error {
public:
    using Error::Error;
};

/// Two independent computation routes for the same quantity disagree beyond 100x tolerance.
class RouteDisagreement : public Error {
public:
    using Error::Error;
};

/// Defining conditions and an equivalent characterization of an order relation disagree.
class CharacterizationDisagreement : public Error {
public:
    using Error::Error;
};

/// A constructed result failed its own defining-equation residual gate.
class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

/// Generator parameters admit no matrix (e.g. nilpotent block too small for the index).
class InfeasibleSpec : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg), line(line_), column(column_) {}
    int line;
    int column;
};

class RaggedRows : public Error {
public:
    RaggedRows(const std::string& msg, int line_) : Error(msg), line(line_) {}
    int line;
};

/// Absolute + relative tolerance pair used for every rank decision and residual gate.
/// atol and rtol must be nonnegative and not both zero.
struct ToleranceContext {
    double atol = 0.0;
    double rtol = 1e-10;

    ToleranceContext() = default;
    ToleranceContext(double atol_, double rtol_) : atol(atol_), rtol(rtol_) {
        if (!(atol >= 0.0) || !(rtol >= 0.0))
            throw std::invalid_argument("ToleranceContext: tolerances must be nonnegative");
        if (atol == 0.0 && rtol == 0.0)
            throw std::invalid_argument("ToleranceContext: atol and rtol cannot both be zero");
    }

    /// Gate for a residual whose natural magnitude is `scale`.
    double bound(double scale) const { return atol + rtol * scale; }

    /// Singular values at or below this cutoff count as zero.
    double rank_cutoff(double sigma_max) const {
        return atol > rtol * sigma_max ? atol : rtol * sigma_max;
    }

    /// Machine-epsilon-scale context for an n x n problem.
    static ToleranceContext machine(Index n) {
        return ToleranceContext(0.0, static_cast<double>(n < 1 ? 1 : n) * 2.220446049250313e-16);
    }
};

}  // namespace coreep
