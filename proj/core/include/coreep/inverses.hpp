#pragma once

#include "coreep/decomp.hpp"
#include "coreep/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace coreep {

enum class Route { canonical, formula, cline };

const char* route_name(Route r);

/// A computed generalized inverse together with the relative residuals of its
/// defining equations. Every residual listed passed its tolerance gate;
/// construction throws ResidualTooLarge otherwise.
struct InverseResult {
    ComplexMatrix value;
    Route route = Route::canonical;
    std::map<std::string, double> residuals;  // dimensionless (scaled by natural norms)
    std::vector<std::string> warnings;
};

/// Moore-Penrose inverse via thresholded SVD. Residual keys:
/// axa, xax, ax_herm, xa_herm. Works for any (rectangular) finite matrix.
InverseResult moore_penrose(const ComplexMatrix& a, const ToleranceContext& tol);

/// Drazin inverse via the canonical-frame block formula, cross-checked against
/// X = A^k (A^{2k+1})+ A^k. Residual keys: xak1_ak, xax, ax_xa, route_gap.
/// Throws RouteDisagreement if the routes differ beyond 100x tolerance.
InverseResult drazin(const ComplexMatrix& a, const ToleranceContext& tol);

/// Group inverse: Drazin inverse restricted to index <= 1, with the extra
/// residual axa. Throws IndexTooLarge when index(A) > 1.
InverseResult group_inverse(const ComplexMatrix& a, const ToleranceContext& tol);

/// Core inverse U [[T^-1, 0], [0, 0]] U* from the range-of-A frame.
/// Residual keys: ax_aadag (AX = AA+), range ((I - QQ*)X = 0).
/// Throws IndexTooLarge when index(A) > 1.
InverseResult core_inverse(const ComplexMatrix& a, const ToleranceContext& tol);

/// Core-EP inverse via the canonical frame, cross-checked against
/// X = A^k ((A^k)* A^{k+1})+ (A^k)*. Residual keys: xak1_ak, xax, ax_herm,
/// range, route_gap. Defined for every square matrix.
InverseResult core_ep_inverse(const ComplexMatrix& a, const ToleranceContext& tol);

/// The Hermitian idempotent A A^coreEP, equal to the orthogonal projector
/// onto the column space of A^k.
ComplexMatrix core_ep_projector(const ComplexMatrix& a, const ToleranceContext& tol);

}  // namespace coreep
