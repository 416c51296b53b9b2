#pragma once

#include "coreep/numkernel.hpp"
#include "coreep/types.hpp"

#include <vector>

namespace coreep {

/// Index diagnostics: the rank chain rank(A^1), rank(A^2), ... up to stabilization,
/// and whether the chain actually stabilized within the cap p = n + 1.
struct IndexReport {
    Index index = 0;
    bool stabilized = true;
    std::vector<Index> rank_chain;  // rank_chain[p-1] = rank(A^p)
};

IndexReport index_report(const ComplexMatrix& a, const ToleranceContext& tol);

/// Smallest k >= 0 with rank(A^{k+1}) == rank(A^k); 0 iff A is nonsingular,
/// 1 for the zero matrix.
Index index(const ComplexMatrix& a, const ToleranceContext& tol);

/// A = U [[T, S], [0, N]] U* with U unitary, T nonsingular r x r, N nilpotent.
/// From core_form, N is replaced by the (approximately zero) trailing block of
/// the range-of-A frame and `t` is nonsingular iff index(A) <= 1.
struct CanonicalForm {
    ComplexMatrix u;
    ComplexMatrix t;
    ComplexMatrix s;
    ComplexMatrix n;
    Index core_rank = 0;  // r = rank(A^k), the size of t
    Index idx = 0;        // k used to build the frame

    /// U [[t, s], [0, n]] U*, the represented matrix.
    ComplexMatrix assemble() const;
};

/// Frame built from range_basis(A): A = U [[T, S], [0, 0]] U* with T = r x r,
/// r = rank(A). T is nonsingular exactly when index(A) <= 1.
CanonicalForm core_form(const ComplexMatrix& a, const ToleranceContext& tol);

/// Frame built from range_basis(A^k), k = index(A): T nonsingular, N nilpotent
/// with N^k = 0. Throws ResidualTooLarge if the lower-left block of U*AU
/// exceeds the tolerance gate (rank decision failed).
CanonicalForm canonical_form(const ComplexMatrix& a, const ToleranceContext& tol);

/// A = a1 + a2 with a1 group-invertible (rank(a1^2) = rank(a1)), a2 nilpotent
/// (a2^k = 0), and a1* a2 = a2 a1 = 0. a2 is stored as A - a1 elementwise.
struct CoreEPParts {
    ComplexMatrix a1;
    ComplexMatrix a2;
    Index idx = 0;
};

/// a1 = Q Q* A with Q = range_basis(A^k); equals A^k (A^k)^core A.
CoreEPParts core_ep_decompose(const ComplexMatrix& a, const ToleranceContext& tol);

/// A = core + nil with core = A A^drazin A (index <= 1), nil nilpotent,
/// core * nil = nil * core = 0.
struct CoreNilpotentParts {
    ComplexMatrix core;
    ComplexMatrix nil;
    Index idx = 0;
};

CoreNilpotentParts core_nilpotent_decompose(const ComplexMatrix& a, const ToleranceContext& tol);

}  // namespace coreep
