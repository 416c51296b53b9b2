#include "coreep/decomp.hpp"

#include "coreep/inverses.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace coreep {

namespace {

// Incremental normalized power chain, same scaling policy as scaled_power.
struct PowerChain {
    ComplexMatrix base;
    std::int64_t base_log2 = 0;
    ComplexMatrix current;
    std::int64_t current_log2 = 0;
    bool zero = false;
    double zero_cutoff;

    explicit PowerChain(const ComplexMatrix& a)
        : zero_cutoff(1024.0 * static_cast<double>(a.rows()) *
                      std::numeric_limits<double>::epsilon()) {
        if (a.norm() == 0.0) {
            zero = true;
            base = ComplexMatrix::Zero(a.rows(), a.cols());
            current = base;
            return;
        }
        base = a;
        renorm(base, base_log2);
        current = base;
        current_log2 = base_log2;
    }

    static void renorm(ComplexMatrix& m, std::int64_t& log2_scale) {
        const double norm = m.norm();
        if (norm >= 0.5 && norm <= 2.0) return;
        const int e = static_cast<int>(std::lround(std::log2(norm)));
        m *= std::exp2(static_cast<double>(-e));
        log2_scale += e;
    }

    void advance() {
        if (zero) return;
        ComplexMatrix prod = current * base;
        if (prod.norm() <= zero_cutoff) {
            zero = true;
            current = ComplexMatrix::Zero(base.rows(), base.cols());
            current_log2 = 0;
            return;
        }
        current = std::move(prod);
        current_log2 += base_log2;
        renorm(current, current_log2);
    }

    Index rank(const ToleranceContext& tol) const {
        if (zero) return 0;
        return detail::rank_scaled(current, current_log2, tol);
    }
};

}  // namespace

IndexReport index_report(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "index");
    detail::require_finite(a, "index");
    const Index n = a.rows();

    IndexReport rep;
    if (n == 0) {
        rep.index = 0;
        return rep;
    }

    PowerChain chain(a);
    Index prev = chain.rank(tol);
    rep.rank_chain.push_back(prev);
    if (prev == n) {
        rep.index = 0;
        return rep;
    }
    for (Index p = 2; p <= n + 1; ++p) {
        chain.advance();
        const Index r = chain.rank(tol);
        rep.rank_chain.push_back(r);
        if (r == prev) {
            rep.index = p - 1;
            return rep;
        }
        prev = r;
    }
    // A stabilizing chain must show equal adjacent ranks by p = n + 1; reaching
    // here means the rank decisions wobbled. Cap and flag rather than loop.
    rep.index = n;
    rep.stabilized = false;
    return rep;
}

Index index(const ComplexMatrix& a, const ToleranceContext& tol) {
    return index_report(a, tol).index;
}

ComplexMatrix CanonicalForm::assemble() const {
    const Index r = core_rank;
    const Index n_full = u.rows();
    ComplexMatrix blocks = ComplexMatrix::Zero(n_full, n_full);
    blocks.topLeftCorner(r, r) = t;
    blocks.topRightCorner(r, n_full - r) = s;
    blocks.bottomRightCorner(n_full - r, n_full - r) = n;
    return u * blocks * u.adjoint();
}

namespace {

CanonicalForm form_in_frame(const ComplexMatrix& a, const ComplexMatrix& q, Index idx,
                            bool zero_trailing, const ToleranceContext& tol) {
    const Index n = a.rows();
    const Index r = q.cols();
    CanonicalForm form;
    form.u = unitary_complete(q);
    form.core_rank = r;
    form.idx = idx;
    const ComplexMatrix b = form.u.adjoint() * a * form.u;
    form.t = b.topLeftCorner(r, r);
    form.s = b.topRightCorner(r, n - r);
    if (zero_trailing) {
        form.n = ComplexMatrix::Zero(n - r, n - r);
    } else {
        form.n = b.bottomRightCorner(n - r, n - r);
        const double off = b.bottomLeftCorner(n - r, r).norm();
        if (off > tol.bound(a.norm()))
            throw ResidualTooLarge("canonical_form: lower-left block norm " +
                                   std::to_string(off) + " exceeds tolerance gate");
    }
    return form;
}

}  // namespace

CanonicalForm core_form(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_form");
    detail::require_finite(a, "core_form");
    const ComplexMatrix q = range_basis(a, tol);
    // Columns of A lie in range(A), so the whole bottom block row vanishes.
    return form_in_frame(a, q, 1, /*zero_trailing=*/true, tol);
}

namespace {

// Orthonormal basis of range(A^max(k,1)) with the power's scale folded into atol.
ComplexMatrix power_range_basis(const ComplexMatrix& a, Index k, const ToleranceContext& tol) {
    const int p = static_cast<int>(k < 1 ? 1 : k);
    const ScaledPower pk = scaled_power(a, p);
    if (pk.scale == 0.0) return ComplexMatrix(a.rows(), 0);
    return range_basis(pk.matrix, detail::scaled_tol(tol, pk.log2_scale));
}

}  // namespace

CanonicalForm canonical_form(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "canonical_form");
    detail::require_finite(a, "canonical_form");
    const Index k = index(a, tol);
    const ComplexMatrix q = power_range_basis(a, k, tol);
    return form_in_frame(a, q, k, /*zero_trailing=*/false, tol);
}

CoreEPParts core_ep_decompose(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_ep_decompose");
    detail::require_finite(a, "core_ep_decompose");
    const Index n = a.rows();
    const Index k = index(a, tol);
    if (k == 0) return {a, ComplexMatrix::Zero(n, n), 0};
    const ComplexMatrix q = power_range_basis(a, k, tol);
    CoreEPParts parts;
    parts.idx = k;
    parts.a1 = q * (q.adjoint() * a);
    parts.a2 = a - parts.a1;
    return parts;
}

CoreNilpotentParts core_nilpotent_decompose(const ComplexMatrix& a, const ToleranceContext& tol) {
    detail::require_square(a, "core_nilpotent_decompose");
    detail::require_finite(a, "core_nilpotent_decompose");
    const Index k = index(a, tol);
    const ComplexMatrix x = drazin(a, tol).value;
    CoreNilpotentParts parts;
    parts.idx = k;
    parts.core = a * x * a;
    parts.nil = a - parts.core;
    return parts;
}

}  // namespace coreep
