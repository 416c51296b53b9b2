#include "coreep/orders.hpp"

#include "coreep/decomp.hpp"
#include "coreep/inverses.hpp"
#include "coreep/numkernel.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace coreep {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::minus: return "minus";
        case Relation::sharp: return "sharp";
        case Relation::core: return "core";
        case Relation::drazin: return "drazin";
        case Relation::core_ep: return "coreep";
        case Relation::cn: return "cn";
        case Relation::core_minus: return "coreminus";
    }
    return "?";
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
}

void require_square_pair(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    detail::require_square(a, op);
    require_same_shape(a, b, op);
}

// Residual conditions of one order test; a verdict, not a gate (no throwing).
struct ConditionSet {
    explicit ConditionSet(const ToleranceContext& tol_) : tol(tol_) {}

    bool add(const std::string& name, double diff, double scale) {
        return add_gated(name, diff, scale, tol.bound(scale));
    }

    bool add_gated(const std::string& name, double diff, double scale, double gate) {
        rel_map[name] = diff == 0.0 ? 0.0 : diff / std::max(scale, 1e-300);
        const bool ok = diff <= gate;
        all_pass = all_pass && ok;
        return ok;
    }

    const ToleranceContext& tol;
    std::map<std::string, double> rel_map;
    bool all_pass = true;
};

ScaledPower power_or_identity(const ComplexMatrix& a, Index p) {
    if (p == 0) return {ComplexMatrix::Identity(a.rows(), a.cols()), 1.0, 0};
    return scaled_power(a, static_cast<int>(p));
}

void check_index_at_most_one(const ComplexMatrix& m, const ToleranceContext& tol, const char* op,
                             const char* which) {
    const Index k = index(m, tol);
    if (k > 1)
        throw IndexTooLarge(std::string(op) + ": " + which + " argument has index " +
                            std::to_string(k) + " > 1");
}

void merge_prefixed(std::map<std::string, double>& dst, const std::string& prefix,
                    const std::map<std::string, double>& src) {
    for (const auto& [key, value] : src) dst[prefix + key] = value;
}

// Decomposition parts are intermediates of the pair, so their rank and residual
// decisions are made at the pair's scale: a part that is numerically zero
// relative to the inputs must not be ranked against its own rounding noise.
ToleranceContext part_scale_tol(const ComplexMatrix& a, const ComplexMatrix& b,
                                const ToleranceContext& tol) {
    return ToleranceContext(tol.bound(std::max(a.norm(), b.norm())), tol.rtol);
}

}  // namespace

OrderVerdict le_minus(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ToleranceContext& tol) {
    require_same_shape(a, b, "le_minus");
    detail::require_finite(a, "le_minus");
    detail::require_finite(b, "le_minus");
    OrderVerdict v;
    v.relation = Relation::minus;
    RankWitness w;
    w.rank_a = rank(a, tol);
    w.rank_b = rank(b, tol);
    w.rank_diff = rank(b - a, tol);
    v.rank_witness = w;
    v.holds = (w.rank_b - w.rank_a == w.rank_diff);
    return v;
}

OrderVerdict le_sharp(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ToleranceContext& tol) {
    require_square_pair(a, b, "le_sharp");
    check_index_at_most_one(a, tol, "le_sharp", "first");
    check_index_at_most_one(b, tol, "le_sharp", "second");

    const ComplexMatrix x = group_inverse(a, tol).value;
    const double scale = x.norm() * std::max(a.norm(), b.norm());

    OrderVerdict v;
    v.relation = Relation::sharp;
    ConditionSet cs(tol);
    cs.add("xa_xb", (x * a - x * b).norm(), scale);
    cs.add("ax_bx", (a * x - b * x).norm(), scale);
    v.residuals = std::move(cs.rel_map);
    v.holds = cs.all_pass;
    return v;
}

OrderVerdict le_core(const ComplexMatrix& a, const ComplexMatrix& b,
                     const ToleranceContext& tol) {
    require_square_pair(a, b, "le_core");
    check_index_at_most_one(a, tol, "le_core", "first");
    check_index_at_most_one(b, tol, "le_core", "second");

    const ComplexMatrix x = core_inverse(a, tol).value;
    const ComplexMatrix dag = moore_penrose(a, tol).value;
    const double na = a.norm();
    const double nmax = std::max(na, b.norm());

    ConditionSet defining(tol);
    defining.add("xa_xb", (x * a - x * b).norm(), x.norm() * nmax);
    defining.add("ax_bx", (a * x - b * x).norm(), x.norm() * nmax);

    ConditionSet characterization(tol);
    characterization.add("dag_xa_xb", (dag * a - dag * b).norm(), dag.norm() * nmax);
    characterization.add("a2_ba", (a * a - b * a).norm(), na * nmax);

    if (defining.all_pass != characterization.all_pass)
        throw CharacterizationDisagreement(
            "le_core: defining conditions and Moore-Penrose characterization disagree "
            "(defining " +
            std::string(defining.all_pass ? "holds" : "fails") + ", characterization " +
            (characterization.all_pass ? "holds" : "fails") + ")");

    OrderVerdict v;
    v.relation = Relation::core;
    v.residuals = std::move(defining.rel_map);
    merge_prefixed(v.residuals, "", characterization.rel_map);
    v.holds = defining.all_pass;
    return v;
}

OrderVerdict le_drazin(const ComplexMatrix& a, const ComplexMatrix& b,
                       const ToleranceContext& tol) {
    require_square_pair(a, b, "le_drazin");
    detail::require_finite(b, "le_drazin");
    const Index k = index(a, tol);

    OrderVerdict v;
    v.relation = Relation::drazin;
    ConditionSet cs(tol);

    const ScaledPower pk = power_or_identity(a, k);
    if (pk.scale == 0.0) {
        // A^k = 0, so A^{k+1} = 0 and both conditions are 0 = 0 for any B.
        cs.add("akb_ak1", 0.0, 1.0);
        cs.add("bak_ak1", 0.0, 1.0);
    } else {
        const ScaledPower pk1 = scaled_power(a, static_cast<int>(k + 1));
        const double shift =
            pk1.scale == 0.0
                ? 0.0
                : std::exp2(static_cast<double>(pk1.log2_scale - pk.log2_scale));
        const ComplexMatrix rhs = pk1.scale == 0.0
                                      ? ComplexMatrix::Zero(a.rows(), a.cols()).eval()
                                      : (pk1.matrix * shift).eval();
        const double rhs_norm = rhs.norm();
        const ToleranceContext local = detail::scaled_tol(tol, pk.log2_scale);
        const double scale = std::max(rhs_norm, b.norm() * pk.matrix.norm());
        cs.add_gated("akb_ak1", (pk.matrix * b - rhs).norm(), scale, local.bound(scale));
        cs.add_gated("bak_ak1", (b * pk.matrix - rhs).norm(), scale, local.bound(scale));
    }

    v.residuals = std::move(cs.rel_map);
    v.holds = cs.all_pass;
    return v;
}

OrderVerdict le_core_ep(const ComplexMatrix& a, const ComplexMatrix& b,
                        const ToleranceContext& tol) {
    require_square_pair(a, b, "le_core_ep");
    detail::require_finite(b, "le_core_ep");

    const ComplexMatrix x = core_ep_inverse(a, tol).value;
    const Index k = index(a, tol);
    const double nmax = std::max(a.norm(), b.norm());

    ConditionSet defining(tol);
    defining.add("xa_xb", (x * a - x * b).norm(), x.norm() * nmax);
    defining.add("ax_bx", (a * x - b * x).norm(), x.norm() * nmax);

    ConditionSet characterization(tol);
    const ScaledPower pk = power_or_identity(a, k);
    if (pk.scale == 0.0) {
        characterization.add("ak1_bak", 0.0, 1.0);
        characterization.add("as_ak", 0.0, 1.0);
    } else {
        const ScaledPower pk1 = scaled_power(a, static_cast<int>(k + 1));
        const double shift =
            pk1.scale == 0.0
                ? 0.0
                : std::exp2(static_cast<double>(pk1.log2_scale - pk.log2_scale));
        const ComplexMatrix lhs = pk1.scale == 0.0
                                      ? ComplexMatrix::Zero(a.rows(), a.cols()).eval()
                                      : (pk1.matrix * shift).eval();
        const ToleranceContext local = detail::scaled_tol(tol, pk.log2_scale);
        const double pw_scale = std::max(lhs.norm(), b.norm() * pk.matrix.norm());
        characterization.add_gated("ak1_bak", (lhs - b * pk.matrix).norm(), pw_scale,
                                   local.bound(pw_scale));
        const double adj_scale = nmax * pk.matrix.norm();
        characterization.add_gated("as_ak", ((a - b).adjoint() * pk.matrix).norm(), adj_scale,
                                   local.bound(adj_scale));
    }

    if (defining.all_pass != characterization.all_pass)
        throw CharacterizationDisagreement(
            "le_core_ep: defining conditions and power characterization disagree (defining " +
            std::string(defining.all_pass ? "holds" : "fails") + ", characterization " +
            (characterization.all_pass ? "holds" : "fails") + ")");

    OrderVerdict v;
    v.relation = Relation::core_ep;
    v.residuals = std::move(defining.rel_map);
    merge_prefixed(v.residuals, "", characterization.rel_map);
    v.holds = defining.all_pass;
    return v;
}

OrderVerdict le_cn(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol) {
    require_square_pair(a, b, "le_cn");
    detail::require_finite(b, "le_cn");

    const CoreNilpotentParts pa = core_nilpotent_decompose(a, tol);
    const CoreNilpotentParts pb = core_nilpotent_decompose(b, tol);

    const ToleranceContext part_tol = part_scale_tol(a, b, tol);
    const OrderVerdict sharp_part = le_sharp(pa.core, pb.core, part_tol);
    const OrderVerdict minus_part = le_minus(pa.nil, pb.nil, part_tol);

    OrderVerdict v;
    v.relation = Relation::cn;
    merge_prefixed(v.residuals, "core.", sharp_part.residuals);
    v.rank_witness = minus_part.rank_witness;
    v.holds = sharp_part.holds && minus_part.holds;
    return v;
}

OrderVerdict le_core_minus(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ToleranceContext& tol) {
    require_square_pair(a, b, "le_core_minus");
    detail::require_finite(b, "le_core_minus");

    const CoreEPParts pa = core_ep_decompose(a, tol);
    const CoreEPParts pb = core_ep_decompose(b, tol);

    const ToleranceContext part_tol = part_scale_tol(a, b, tol);
    const OrderVerdict core_part = le_core(pa.a1, pb.a1, part_tol);
    const OrderVerdict minus_part = le_minus(pa.a2, pb.a2, part_tol);
    const bool primary = core_part.holds && minus_part.holds;

    // Independent characterization: A <=coreEP B together with the minus order
    // on the remainders A - A A^coreEP A and B - B B^coreEP B.
    const OrderVerdict ep_part = le_core_ep(a, b, tol);
    const ComplexMatrix xa = core_ep_inverse(a, tol).value;
    const ComplexMatrix xb = core_ep_inverse(b, tol).value;
    const OrderVerdict rem_part = le_minus(a - a * xa * a, b - b * xb * b, part_tol);
    const bool cross = ep_part.holds && rem_part.holds;

    if (primary != cross)
        throw CharacterizationDisagreement(
            "le_core_minus: part-wise conditions and core-EP characterization disagree "
            "(part-wise " +
            std::string(primary ? "holds" : "fails") + ", characterization " +
            (cross ? "holds" : "fails") + ")");

    OrderVerdict v;
    v.relation = Relation::core_minus;
    merge_prefixed(v.residuals, "a1.", core_part.residuals);
    merge_prefixed(v.residuals, "ep.", ep_part.residuals);
    v.rank_witness = minus_part.rank_witness;
    v.holds = primary;
    return v;
}

}  // namespace coreep
