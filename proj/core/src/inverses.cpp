#include "coreep/inverses.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

namespace coreep {

const char* route_name(Route r) {
    switch (r) {
        case Route::canonical: return "canonical";
        case Route::formula: return "formula";
        case Route::cline: return "cline";
    }
    return "?";
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Accumulates named relative residuals and remembers the first gate violation.
struct ResidualSet {
    explicit ResidualSet(const ToleranceContext& tol_) : tol(tol_) {}

    void add(const std::string& name, double diff, double scale) {
        add_gated(name, diff, scale, tol.bound(scale));
    }

    // For residuals gated at a multiple of the tolerance (route agreement).
    void add_gated(const std::string& name, double diff, double scale, double gate) {
        const double rel = diff == 0.0 ? 0.0 : diff / std::max(scale, 1e-300);
        rel_map[name] = rel;
        if (diff > gate && failed.empty()) {
            failed = name;
            failed_value = rel;
        }
    }

    void enforce(const char* op) const {
        if (!failed.empty())
            throw ResidualTooLarge(std::string(op) + ": residual " + failed + " = " +
                                   fmt_double(failed_value) + " exceeds tolerance");
    }

    const ToleranceContext& tol;
    std::map<std::string, double> rel_map;
    std::string failed;
    double failed_value = 0.0;
};

// A^p as a scaled pair, with p = 0 meaning the identity.
ScaledPower power_or_identity(const ComplexMatrix& a, Index p) {
    if (p == 0) return {ComplexMatrix::Identity(a.rows(), a.cols()), 1.0, 0};
    return scaled_power(a, static_cast<int>(p));
}

// Relative residual of X * A^{k+1} = A^k, evaluated in the normalized power
// scale 2^{e_k} so nothing overflows. Returns {diff, scale, gate}.
void add_power_identity_residual(ResidualSet& rs, const ComplexMatrix& x,
                                 const ScaledPower& pk, const ScaledPower& pk1,
                                 const ToleranceContext& tol) {
    if (pk.scale == 0.0) {
        // A^k = 0 (nilpotent): X must annihilate A^{k+1} = 0 as well.
        const double diff = pk1.scale == 0.0 ? 0.0 : (x * pk1.matrix).norm() * pk1.scale;
        rs.add("xak1_ak", diff, x.norm());
        return;
    }
    const double shift = std::exp2(static_cast<double>(pk1.log2_scale - pk.log2_scale));
    const ComplexMatrix lhs = (x * pk1.matrix) * shift;
    const double diff = (lhs - pk.matrix).norm();
    const double scale = std::max(pk.matrix.norm(), x.norm() * pk1.matrix.norm() * shift);
    const ToleranceContext local = detail::scaled_tol(tol, pk.log2_scale);
    rs.add_gated("xak1_ak", diff, scale, local.bound(scale));
}

struct CondInfo {
    double cond = 1.0;
    bool singular = false;
};

CondInfo condition_of(const ComplexMatrix& t, const ToleranceContext& tol,
                      std::vector<std::string>& warnings) {
    CondInfo info;
    if (t.rows() == 0) return info;
    Eigen::JacobiSVD<ComplexMatrix> svd(t);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    const double cutoff = tol.rank_cutoff(smax);
    if (smin <= cutoff) {
        info.singular = true;
        warnings.push_back("t block numerically singular at tolerance (sigma_min " +
                           fmt_double(smin) + ")");
        info.cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
        return info;
    }
    info.cond = smax / smin;
    if (cutoff > 0.0 && info.cond > 1.0 / cutoff)
        warnings.push_back("t block condition " + fmt_double(info.cond) +
                           " exceeds 1/rank-cutoff; residuals near the tolerance floor");
    return info;
}

}  // namespace

InverseResult moore_penrose(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_finite(a, "moore_penrose");
    InverseResult res;
    res.route = Route::formula;
    if (a.size() == 0) {
        res.value = ComplexMatrix(a.cols(), a.rows());
        return res;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cutoff = tol.rank_cutoff(sv(0));
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    res.value = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();

    const ComplexMatrix& x = res.value;
    const double na = a.norm();
    const double nx = x.norm();
    const ComplexMatrix ax = a * x;
    const ComplexMatrix xa = x * a;
    ResidualSet rs(tol);
    rs.add("axa", (ax * a - a).norm(), std::max(na, na * na * nx));
    rs.add("xax", (xa * x - x).norm(), std::max(nx, nx * nx * na));
    rs.add("ax_herm", (ax.adjoint() - ax).norm(), std::max(1.0, na * nx));
    rs.add("xa_herm", (xa.adjoint() - xa).norm(), std::max(1.0, na * nx));
    rs.enforce("moore_penrose");
    res.residuals = std::move(rs.rel_map);
    return res;
}

namespace {

// Canonical-frame Drazin block formula: X = U [[T^-1, Z], [0, 0]] U* with
// Z = sum_{i=0}^{k-1} T^{-(i+2)} S N^i, the sum truncated exactly at k terms.
ComplexMatrix drazin_canonical(const CanonicalForm& form, const ToleranceContext& tol,
                               std::vector<std::string>& warnings) {
    const Index n = form.u.rows();
    const Index r = form.core_rank;
    if (r == 0) return ComplexMatrix::Zero(n, n);

    condition_of(form.t, tol, warnings);
    Eigen::ColPivHouseholderQR<ComplexMatrix> t_solver(form.t);

    ComplexMatrix blocks = ComplexMatrix::Zero(n, n);
    blocks.topLeftCorner(r, r) = t_solver.solve(ComplexMatrix::Identity(r, r));
    if (n > r && form.idx >= 1) {
        ComplexMatrix term = form.s;  // T^{-(i+2)} S N^i accumulated below
        ComplexMatrix acc = form.s;
        for (Index i = 1; i < form.idx; ++i) {
            term = t_solver.solve(term) * form.n;
            acc += term;
        }
        blocks.topRightCorner(r, n - r) = t_solver.solve(t_solver.solve(acc));
    }
    return form.u * blocks * form.u.adjoint();
}

ComplexMatrix drazin_cline(const ComplexMatrix& a, Index k, const ToleranceContext& tol) {
    const ScaledPower pk = power_or_identity(a, k);
    if (pk.scale == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
    const ScaledPower p2k1 = scaled_power(a, static_cast<int>(2 * k + 1));
    if (p2k1.scale == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
    const ComplexMatrix pinv =
        moore_penrose(p2k1.matrix, detail::scaled_tol(tol, p2k1.log2_scale)).value;
    const double scale = std::exp2(static_cast<double>(2 * pk.log2_scale - p2k1.log2_scale));
    return (pk.matrix * pinv * pk.matrix) * scale;
}

}  // namespace

InverseResult drazin(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "drazin");
    detail::require_finite(a, "drazin");
    const CanonicalForm form = canonical_form(a, tol);
    const Index k = form.idx;

    InverseResult res;
    res.route = Route::canonical;
    res.value = drazin_canonical(form, tol, res.warnings);

    const ComplexMatrix alt = drazin_cline(a, k, tol);
    const double gap = (res.value - alt).norm();
    const double gap_scale = std::max(res.value.norm(), alt.norm());
    if (gap > 100.0 * tol.bound(gap_scale))
        throw RouteDisagreement("drazin: block-formula and polynomial routes differ by " +
                                fmt_double(gap) + " (scale " + fmt_double(gap_scale) + ")");

    const ComplexMatrix& x = res.value;
    const double na = a.norm();
    const double nx = x.norm();
    ResidualSet rs(tol);
    rs.add_gated("route_gap", gap, gap_scale, 100.0 * tol.bound(gap_scale));
    add_power_identity_residual(rs, x, power_or_identity(a, k), power_or_identity(a, k + 1), tol);
    rs.add("xax", (x * a * x - x).norm(), std::max(nx, nx * nx * na));
    rs.add("ax_xa", (a * x - x * a).norm(), std::max(1.0, na * nx));
    rs.enforce("drazin");
    res.residuals = std::move(rs.rel_map);
    return res;
}

InverseResult group_inverse(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "group_inverse");
    detail::require_finite(a, "group_inverse");
    const Index k = index(a, tol);
    if (k > 1)
        throw IndexTooLarge("group_inverse: index " + std::to_string(k) + " exceeds 1");
    InverseResult res = drazin(a, tol);
    const ComplexMatrix& x = res.value;
    const double na = a.norm();
    const double nx = x.norm();
    ResidualSet rs(tol);
    rs.add("axa", (a * x * a - a).norm(), std::max(na, na * na * nx));
    rs.enforce("group_inverse");
    res.residuals.insert(rs.rel_map.begin(), rs.rel_map.end());
    return res;
}

InverseResult core_inverse(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_inverse");
    detail::require_finite(a, "core_inverse");
    const Index k = index(a, tol);
    if (k > 1)
        throw IndexTooLarge("core_inverse: index " + std::to_string(k) + " exceeds 1");

    const CanonicalForm form = core_form(a, tol);
    const Index n = a.rows();
    const Index r = form.core_rank;

    InverseResult res;
    res.route = Route::canonical;
    if (r == 0) {
        res.value = ComplexMatrix::Zero(n, n);
    } else {
        condition_of(form.t, tol, res.warnings);
        Eigen::ColPivHouseholderQR<ComplexMatrix> t_solver(form.t);
        ComplexMatrix blocks = ComplexMatrix::Zero(n, n);
        blocks.topLeftCorner(r, r) = t_solver.solve(ComplexMatrix::Identity(r, r));
        res.value = form.u * blocks * form.u.adjoint();
    }

    const ComplexMatrix& x = res.value;
    const ComplexMatrix dag = moore_penrose(a, tol).value;
    const ComplexMatrix q = form.u.leftCols(r);
    const double na = a.norm();
    ResidualSet rs(tol);
    rs.add("ax_aadag", (a * x - a * dag).norm(),
           std::max(1.0, na * std::max(x.norm(), dag.norm())));
    rs.add("range", (x - q * (q.adjoint() * x)).norm(), x.norm());
    rs.enforce("core_inverse");
    res.residuals = std::move(rs.rel_map);
    return res;
}

namespace {

// Second core-EP route: X = A^k ((A^k)* A^{k+1})+ (A^k)*, inner inverse fixed
// to Moore-Penrose. Evaluated on normalized powers; the power-of-two scales
// telescope to 2^{e_k - e_{k+1}}.
ComplexMatrix core_ep_formula(const ComplexMatrix& a, Index k, const ToleranceContext& tol) {
    const ScaledPower pk = power_or_identity(a, k);
    if (pk.scale == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
    const ScaledPower pk1 = scaled_power(a, static_cast<int>(k + 1));
    if (pk1.scale == 0.0) return ComplexMatrix::Zero(a.rows(), a.cols());
    const ComplexMatrix m = pk.matrix.adjoint() * pk1.matrix;
    const ComplexMatrix pinv =
        moore_penrose(m, detail::scaled_tol(tol, pk.log2_scale + pk1.log2_scale)).value;
    const double scale = std::exp2(static_cast<double>(pk.log2_scale - pk1.log2_scale));
    return (pk.matrix * pinv * pk.matrix.adjoint()) * scale;
}

}  // namespace

InverseResult core_ep_inverse(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_ep_inverse");
    detail::require_finite(a, "core_ep_inverse");
    const CanonicalForm form = canonical_form(a, tol);
    const Index n = a.rows();
    const Index r = form.core_rank;
    const Index k = form.idx;

    InverseResult res;
    res.route = Route::canonical;
    if (r == 0) {
        res.value = ComplexMatrix::Zero(n, n);
    } else {
        condition_of(form.t, tol, res.warnings);
        Eigen::ColPivHouseholderQR<ComplexMatrix> t_solver(form.t);
        ComplexMatrix blocks = ComplexMatrix::Zero(n, n);
        blocks.topLeftCorner(r, r) = t_solver.solve(ComplexMatrix::Identity(r, r));
        res.value = form.u * blocks * form.u.adjoint();
    }

    const ComplexMatrix alt = core_ep_formula(a, k, tol);
    const double gap = (res.value - alt).norm();
    const double gap_scale = std::max(res.value.norm(), alt.norm());
    if (gap > 100.0 * tol.bound(gap_scale))
        throw RouteDisagreement("core_ep_inverse: canonical and projection-formula routes " +
                                std::string("differ by ") + fmt_double(gap) + " (scale " +
                                fmt_double(gap_scale) + ")");

    const ComplexMatrix& x = res.value;
    const ComplexMatrix q = form.u.leftCols(r);
    const ComplexMatrix ax = a * x;
    const double na = a.norm();
    const double nx = x.norm();
    ResidualSet rs(tol);
    rs.add_gated("route_gap", gap, gap_scale, 100.0 * tol.bound(gap_scale));
    add_power_identity_residual(rs, x, power_or_identity(a, k), power_or_identity(a, k + 1), tol);
    rs.add("xax", (x * a * x - x).norm(), std::max(nx, nx * nx * na));
    rs.add("ax_herm", (ax.adjoint() - ax).norm(), std::max(1.0, na * nx));
    rs.add("range", (x - q * (q.adjoint() * x)).norm(), x.norm());
    rs.enforce("core_ep_inverse");
    res.residuals = std::move(rs.rel_map);
    return res;
}

ComplexMatrix core_ep_projector(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_ep_projector");
    detail::require_finite(a, "core_ep_projector");
    const CanonicalForm form = canonical_form(a, tol);
    const ComplexMatrix q = form.u.leftCols(form.core_rank);
    const ComplexMatrix p = q * q.adjoint();

    const ComplexMatrix x = core_ep_inverse(a, tol).value;
    const double diff = (p - a * x).norm();
    const double scale = std::max(1.0, a.norm() * x.norm());
    if (diff > tol.bound(scale))
        throw ResidualTooLarge("core_ep_projector: basis projector and A * inverse differ by " +
                               fmt_double(diff));
    return p;
}

}  // namespace coreep
