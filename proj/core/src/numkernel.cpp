#include "coreep/numkernel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace coreep {

namespace detail {

void require_finite(const ComplexMatrix& a, const char* op) {
    if (!a.allFinite())
        throw Error(std::string(op) + ": matrix has non-finite entries");
}

void require_square(const ComplexMatrix& a, const char* op) {
    if (a.rows() != a.cols())
        throw ShapeMismatch(std::string(op) + ": expected square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

Index rank_scaled(const ComplexMatrix& normalized, std::int64_t log2_scale,
                  const ToleranceContext& tol) {
    if (normalized.size() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(normalized);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    // atol applies to the raw power = normalized * 2^log2_scale, so divide it out.
    const double atol_here =
        tol.atol == 0.0 ? 0.0 : tol.atol * std::exp2(static_cast<double>(-log2_scale));
    const double cutoff = std::max(atol_here, tol.rtol * sv(0));
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

ToleranceContext scaled_tol(const ToleranceContext& tol, std::int64_t log2_scale) {
    if (tol.atol == 0.0 || log2_scale == 0) return tol;
    ToleranceContext adjusted = tol;
    adjusted.atol = tol.atol * std::exp2(static_cast<double>(-log2_scale));
    return adjusted;
}

}  // namespace detail

Index rank(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_finite(a, "rank");
    return detail::rank_scaled(a, 0, tol);
}

ComplexMatrix range_basis(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_finite(a, "range_basis");
    if (a.size() == 0) return ComplexMatrix(a.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Index r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cutoff = tol.rank_cutoff(sv(0));
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) ++r;
    }
    return svd.matrixU().leftCols(r);
}

ComplexMatrix unitary_complete(const ComplexMatrix& q) {
    detail::require_finite(q, "unitary_complete");
    const Index n = q.rows();
    const Index r = q.cols();
    if (r > n)
        throw ShapeMismatch("unitary_complete: more columns than rows");
    if (r == 0) return ComplexMatrix::Identity(n, n);

    const double ortho_gap = (q.adjoint() * q - ComplexMatrix::Identity(r, r)).norm();
    if (ortho_gap > 1e-8 * std::sqrt(static_cast<double>(r)))
        throw NonOrthonormalInput("unitary_complete: columns not orthonormal (gap " +
                                  std::to_string(ortho_gap) + ")");

    Eigen::HouseholderQR<ComplexMatrix> qr(q);
    ComplexMatrix u = qr.householderQ();
    // Q = U_full * R with R diagonal-up-to-eps unitary; absorb the phases so the
    // leading columns reproduce q instead of q times a phase.
    ComplexMatrix rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (Index i = 0; i < r; ++i) {
        const Complex d = rfac(i, i);
        const double mag = std::abs(d);
        if (mag > 0.0) u.col(i) *= d / mag;
    }
    return u;
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceContext& tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("approx_eq: shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    detail::require_finite(a, "approx_eq");
    detail::require_finite(b, "approx_eq");
    const double scale = std::max(a.norm(), b.norm());
    return (a - b).norm() <= tol.bound(scale);
}

namespace {

// Power-of-two renormalization keeps ||m||_F in [1/2, 2] without rounding:
// division by 2^e is exact.
void renormalize(ComplexMatrix& m, std::int64_t& log2_scale) {
    const double norm = m.norm();
    if (norm >= 0.5 && norm <= 2.0) return;
    const int e = static_cast<int>(std::lround(std::log2(norm)));
    m *= std::exp2(static_cast<double>(-e));
    log2_scale += e;
}

}  // namespace

ScaledPower scaled_power(const ComplexMatrix& a, int p) {
    detail::require_square(a, "scaled_power");
    detail::require_finite(a, "scaled_power");
    if (p < 1)
        throw std::invalid_argument("scaled_power: exponent must be >= 1");

    const Index n = a.rows();
    const double zero_cutoff =
        1024.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();

    if (a.norm() == 0.0) return {ComplexMatrix::Zero(n, n), 0.0, 0};

    ScaledPower base{a, 1.0, 0};
    renormalize(base.matrix, base.log2_scale);

    ScaledPower acc = base;
    for (int step = 2; step <= p; ++step) {
        ComplexMatrix prod = acc.matrix * base.matrix;
        const double norm = prod.norm();
        if (norm <= zero_cutoff)
            return {ComplexMatrix::Zero(n, n), 0.0, 0};
        acc.matrix = std::move(prod);
        acc.log2_scale += base.log2_scale;
        renormalize(acc.matrix, acc.log2_scale);
    }
    acc.scale = std::exp2(static_cast<double>(acc.log2_scale));
    return acc;
}

}  // namespace coreep
