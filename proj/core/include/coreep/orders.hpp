#pragma once

#include "coreep/types.hpp"

#include <map>
#include <optional>
#include <string>

namespace coreep {

enum class Relation { minus, sharp, core, drazin, core_ep, cn, core_minus };

const char* relation_name(Relation r);

struct RankWitness {
    Index rank_a = 0;
    Index rank_b = 0;
    Index rank_diff = 0;  // rank(B - A)
};

/// Verdict of one order-relation test. holds is true iff every listed residual
/// passed its gate and every rank identity held exactly as integers.
struct OrderVerdict {
    bool holds = false;
    Relation relation = Relation::minus;
    std::map<std::string, double> residuals;  // relative, dimensionless
    std::optional<RankWitness> rank_witness;
};

/// Minus order: rank(B) - rank(A) == rank(B - A), exact integer arithmetic on
/// tolerance-ranks. Defined for any pair of equal shape (rectangular allowed).
OrderVerdict le_minus(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// Sharp order: A#A = A#B and AA# = BA#. Both arguments must have index <= 1
/// (IndexTooLarge otherwise). Residual keys: xa_xb, ax_bx.
OrderVerdict le_sharp(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// Core order: A^core A = A^core B and A A^core = B A^core, cross-checked
/// against the characterization A+A = A+B and A^2 = BA. Both arguments index
/// <= 1. Residual keys: xa_xb, ax_bx, dag_xa_xb, a2_ba.
/// Throws CharacterizationDisagreement if the two routes give different verdicts.
OrderVerdict le_core(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// Drazin pre-order: A^k B = B A^k = A^{k+1} with k = index(A).
/// Residual keys: akb_ak1, bak_ak1.
OrderVerdict le_drazin(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// Core-EP pre-order: A^coreEP A = A^coreEP B and A A^coreEP = B A^coreEP,
/// cross-checked against A^{k+1} = B A^k and A* A^k = B* A^k. Pre-order only:
/// it is not antisymmetric. Residual keys: xa_xb, ax_bx, ak1_bak, as_ak.
OrderVerdict le_core_ep(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// C-N order: sharp order on the core parts and minus order on the nilpotent
/// parts of the core-nilpotent decompositions. Part comparisons inherit the
/// pair's scale through the absolute tolerance, so a part that is negligible
/// relative to the inputs is treated as zero. Residual keys prefixed core.;
/// the rank witness reports the nilpotent minus check.
OrderVerdict le_cn(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

/// Core-minus partial order: core order on the group-invertible parts and
/// minus order on the nilpotent parts of the two core-EP decompositions,
/// cross-checked against (A <=coreEP B) && (A - A A^coreEP A <=minus B - B B^coreEP B).
/// Part and remainder comparisons inherit the pair's scale through the absolute
/// tolerance, so parts that are negligible relative to the inputs rank as zero.
/// Residual keys prefixed a1. and ep.; the rank witness reports the a2 minus check.
OrderVerdict le_core_minus(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol);

}  // namespace coreep
