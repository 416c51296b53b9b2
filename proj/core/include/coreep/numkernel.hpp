#pragma once

#include "coreep/types.hpp"

namespace coreep {

/// Numerical rank: number of singular values above max(atol, rtol * sigma_max).
Index rank(const ComplexMatrix& a, const ToleranceContext& tol);

/// Orthonormal basis of the column space, as an n x rank(a) matrix.
/// Columns are orthonormal to machine epsilon; the zero matrix yields n x 0.
ComplexMatrix range_basis(const ComplexMatrix& a, const ToleranceContext& tol);

/// Completes an n x r matrix with orthonormal columns to a full n x n unitary
/// whose first r columns equal q (up to machine epsilon).
/// Throws NonOrthonormalInput if q fails the column-orthonormality gate.
ComplexMatrix unitary_complete(const ComplexMatrix& q);

/// Frobenius-norm comparison: true iff ||a - b||_F <= atol + rtol * max(||a||_F, ||b||_F).
/// Throws ShapeMismatch on dimension disagreement.
bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// a^p represented as matrix * scale with the power-of-two scale tracked exactly.
/// scale == 0 signals an exactly zero power (nilpotent chains terminate cleanly).
struct ScaledPower {
    ComplexMatrix matrix;      // ||matrix||_F in [1/2, 2] unless zero
    double scale;              // 2^log2_scale, or 0 for the zero matrix
    std::int64_t log2_scale;   // exact exponent, 0 when scale == 0
};

/// Scaled p-th power of a square matrix, p >= 1, with per-step renormalization
/// so intermediate products never overflow or underflow.
ScaledPower scaled_power(const ComplexMatrix& a, int p);

namespace detail {

void require_finite(const ComplexMatrix& a, const char* op);
void require_square(const ComplexMatrix& a, const char* op);

/// Rank of (matrix * 2^log2_scale) from the normalized matrix alone:
/// atol is rescaled by 2^-log2_scale so the decision matches the raw power.
Index rank_scaled(const ComplexMatrix& normalized, std::int64_t log2_scale,
                  const ToleranceContext& tol);

/// Tolerance with atol rescaled the same way, for range decisions on scaled powers.
ToleranceContext scaled_tol(const ToleranceContext& tol, std::int64_t log2_scale);

}  // namespace detail

}  // namespace coreep
