#include "coreep/gen.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace coreep {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// All randomness flows through one mt19937_64 stream per call, so results are
// bit-deterministic for a fixed seed (same platform, same libm).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller, cosine branch only
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
    }

    Complex cnormal() { return {normal(), normal()}; }

    Index integer(Index bound) {  // [0, bound), bound >= 1
        return static_cast<Index>(engine_() % static_cast<std::uint64_t>(bound));
    }

private:
    std::mt19937_64 engine_;
};

ComplexMatrix gaussian(Rng& rng, Index rows, Index cols) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
    return g;
}

ComplexMatrix haar(Rng& rng, Index n) {
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix g = gaussian(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    for (Index i = 0; i < n; ++i) {
        const Complex d = qr.matrixQR()(i, i);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(i) *= d / mag;
    }
    return q;
}

// Nonsingular block with singular values log-spaced in [1, conditioning].
ComplexMatrix nonsingular_block(Rng& rng, Index r, double conditioning) {
    if (r == 0) return ComplexMatrix(0, 0);
    Eigen::VectorXd sigma(r);
    for (Index i = 0; i < r; ++i) {
        const double fraction = r > 1 ? static_cast<double>(i) / static_cast<double>(r - 1) : 0.0;
        sigma(i) = std::pow(conditioning, fraction);
    }
    return haar(rng, r) * sigma.asDiagonal() * haar(rng, r);
}

// Direct sum of shift blocks; the leading block has size k exactly, the rest
// at most k, so the nilpotency index is exactly k (requires m >= k >= 1).
// k == 1 yields the zero matrix.
ComplexMatrix shift_nilpotent(Rng& rng, Index m, Index k) {
    ComplexMatrix n = ComplexMatrix::Zero(m, m);
    if (m == 0) return n;
    Index pos = 0;
    bool first = true;
    while (pos < m) {
        const Index remaining = m - pos;
        const Index cap = std::min(k, remaining);
        const Index size = first ? cap : 1 + rng.integer(cap);
        for (Index i = 0; i + 1 < size; ++i) {
            const double mag = 0.5 + rng.uniform();
            const double phase = kTau * rng.uniform();
            n(pos + i, pos + i + 1) = Complex(mag * std::cos(phase), mag * std::sin(phase));
        }
        pos += size;
        first = false;
    }
    return n;
}

// [[T, R], [0, Z]] as one (t.rows + z.rows) square block layout.
ComplexMatrix stacked(const ComplexMatrix& t, const ComplexMatrix& r_blk,
                      const ComplexMatrix& z) {
    const Index r = t.rows();
    const Index m = z.rows();
    ComplexMatrix out = ComplexMatrix::Zero(r + m, r + m);
    out.topLeftCorner(r, r) = t;
    out.topRightCorner(r, m) = r_blk;
    out.bottomRightCorner(m, m) = z;
    return out;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

// A square block of the general index-<=1 shape V [[T, S], [0, 0]] V*.
ComplexMatrix index_le1_block(Rng& rng, Index size, Index rank_of, double conditioning) {
    if (size == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix t = nonsingular_block(rng, rank_of, conditioning);
    const ComplexMatrix s = gaussian(rng, rank_of, size - rank_of);
    const ComplexMatrix layout = stacked(t, s, ComplexMatrix::Zero(size - rank_of, size - rank_of));
    const ComplexMatrix v = haar(rng, size);
    return v * layout * v.adjoint();
}

// 0.5 * (U e_i)(U e_j)*, the standard shared-block perturbation.
ComplexMatrix bump(const ComplexMatrix& u, Index i, Index j) {
    return 0.5 * u.col(i) * u.col(j).adjoint();
}

// Nilpotent minus-order pair: n1 is below n2, with the nilpotency index of the
// leading structure exactly k when m >= k >= 1 (m == 0 yields empty blocks).
void minus_nil_pair(Rng& rng, Index m, Index k, ComplexMatrix& n1, ComplexMatrix& n2) {
    if (m == 0) {
        n1 = ComplexMatrix(0, 0);
        n2 = ComplexMatrix(0, 0);
        return;
    }
    Index family = rng.integer(3);
    if (family == 1 && k != 1) family = 0;     // the zero matrix has index 1
    if (family == 2 && m - k < 1) family = 0;  // embedding needs spare room
    switch (family) {
        case 1:  // n1 = 0, n2 arbitrary nilpotent
            n1 = ComplexMatrix::Zero(m, m);
            n2 = shift_nilpotent(rng, m, 1 + rng.integer(m));
            return;
        case 2: {  // n1 = diag(J, 0), n2 = diag(J, J'), so ranks add
            const Index m1 = k + rng.integer(m - k);  // k <= m1 < m
            const ComplexMatrix j = shift_nilpotent(rng, m1, k);
            const Index m2 = m - m1;
            const ComplexMatrix j2 = shift_nilpotent(rng, m2, 1 + rng.integer(m2));
            n1 = block_diag(j, ComplexMatrix::Zero(m2, m2));
            n2 = block_diag(j, j2);
            return;
        }
        default:  // shared nilpotent part, rank difference zero
            n1 = shift_nilpotent(rng, m, k);
            n2 = n1;
            return;
    }
}

OrderPair pair_minus(Rng& rng, const GenSpec& spec, PairKind kind) {
    const Index n = spec.n;
    const Index ra = spec.core_rank;
    const Index extra = n > ra ? 1 + rng.integer(n - ra) : 0;
    const ComplexMatrix w = haar(rng, n);
    const ComplexMatrix v = haar(rng, n);
    Eigen::VectorXcd diag_a = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd diag_b = Eigen::VectorXcd::Zero(n);
    for (Index i = 0; i < ra; ++i) {
        const Complex val(1.0 + (spec.conditioning - 1.0) * rng.uniform(), 0.0);
        diag_a(i) = val;
        diag_b(i) = val;
    }
    for (Index i = ra; i < ra + extra; ++i)
        diag_b(i) = Complex(1.0 + (spec.conditioning - 1.0) * rng.uniform(), 0.0);
    OrderPair pair;
    pair.a = w * diag_a.asDiagonal() * v.adjoint();
    pair.b = w * diag_b.asDiagonal() * v.adjoint();
    if (kind == PairKind::violates)
        pair.a += 0.5 * w.col(0) * v.col(0).adjoint();  // breaks the rank arithmetic
    return pair;
}

// Shared frame U throughout; A occupies the leading blocks. With with_s false
// this is the sharp-order family, with true the core-order family.
OrderPair pair_sharp_or_core(Rng& rng, const GenSpec& spec, PairKind kind, bool with_s) {
    const Index n = spec.n;
    const Index r = spec.core_rank;
    const Index m = n - r;
    const ComplexMatrix u = haar(rng, n);
    const ComplexMatrix t = nonsingular_block(rng, r, spec.conditioning);
    const ComplexMatrix s = with_s ? gaussian(rng, r, m) : ComplexMatrix::Zero(r, m);
    const Index z_rank = m == 0 ? 0 : rng.integer(m + 1);
    const ComplexMatrix z = index_le1_block(rng, m, z_rank, spec.conditioning);

    OrderPair pair;
    pair.a = u * stacked(t, s, ComplexMatrix::Zero(m, m)) * u.adjoint();
    pair.b = u * stacked(t, s, z) * u.adjoint();
    if (kind == PairKind::violates) {
        if (r == 0) {
            pair.a += bump(u, 0, 0);  // A was 0, which is below everything
        } else if (m == 0) {
            pair.b = pair.b + pair.b * bump(u, 0, 0);  // keeps B nonsingular
        } else {
            pair.b += bump(u, 0, r);  // contaminate the shared top block row
        }
    }
    return pair;
}

OrderPair pair_drazin(Rng& rng, const GenSpec& spec, PairKind kind) {
    const Index n = spec.n;
    const Index r = spec.core_rank;
    const Index m = n - r;
    const Index k = spec.nilpotency_index;
    const ComplexMatrix u = haar(rng, n);
    const ComplexMatrix t = nonsingular_block(rng, r, spec.conditioning);
    const ComplexMatrix s = gaussian(rng, r, m);
    const ComplexMatrix nb = shift_nilpotent(rng, m, std::max<Index>(k, 1));
    const ComplexMatrix layout_a = stacked(t, s, nb);

    OrderPair pair;
    pair.a = u * layout_a * u.adjoint();
    pair.b = pair.a;
    if (m > 0) {
        // B = A + C with (A^k) C = C (A^k) = 0: in the frame of A the top-right
        // block of C must be -T^{-k} X_k C4, where X_k is the top-right block
        // of the k-th power of A's layout.
        ComplexMatrix power = ComplexMatrix::Identity(n, n);
        for (Index i = 0; i < k; ++i) power = power * layout_a;
        const ComplexMatrix xk = power.topRightCorner(r, m);
        const ComplexMatrix c4 = gaussian(rng, m, m);
        Eigen::ColPivHouseholderQR<ComplexMatrix> t_solver(t);
        ComplexMatrix c2 = xk * c4;
        for (Index i = 0; i < k; ++i) c2 = t_solver.solve(c2);
        ComplexMatrix c_layout = ComplexMatrix::Zero(n, n);
        c_layout.topRightCorner(r, m) = -c2;
        c_layout.bottomRightCorner(m, m) = c4;
        pair.b = pair.a + u * c_layout * u.adjoint();
    }
    if (kind == PairKind::violates) {
        if (r == 0) {
            pair.a += bump(u, 0, 0);  // a power of a nilpotent A is 0, below all
        } else {
            pair.b += bump(u, 0, 0);  // contaminates A^k B through the T block
        }
    }
    return pair;
}

OrderPair pair_core_ep(Rng& rng, const GenSpec& spec, PairKind kind) {
    const Index n = spec.n;
    const Index r1 = spec.core_rank;
    const Index m = n - r1;
    const Index k = spec.nilpotency_index;
    const ComplexMatrix u = haar(rng, n);
    const ComplexMatrix t1 = nonsingular_block(rng, r1, spec.conditioning);
    const ComplexMatrix r_blk = gaussian(rng, r1, m);
    const ComplexMatrix ma = shift_nilpotent(rng, m, std::max<Index>(k, 1));

    OrderPair pair;
    pair.a = u * stacked(t1, r_blk, ma) * u.adjoint();
    pair.b = pair.a;
    if (m > 0) {
        // B keeps A's top block rows; its trailing block is free.
        const Index r2 = 1 + rng.integer(m);
        const Index m2 = m - r2;
        const ComplexMatrix t3 = nonsingular_block(rng, r2, spec.conditioning);
        const ComplexMatrix s2 = gaussian(rng, r2, m2);
        const ComplexMatrix n2 =
            m2 == 0 ? ComplexMatrix(0, 0) : shift_nilpotent(rng, m2, 1 + rng.integer(m2));
        const ComplexMatrix zb = stacked(t3, s2, n2);
        pair.b = u * stacked(t1, r_blk, zb) * u.adjoint();
    }
    if (kind == PairKind::violates) {
        if (r1 == 0) {
            pair.a += bump(u, 0, 0);  // nilpotent A is below everything
        } else {
            pair.b += bump(u, 0, 0);  // contaminates the shared block row
        }
    }
    return pair;
}

OrderPair pair_cn(Rng& rng, const GenSpec& spec, PairKind kind) {
    const Index n = spec.n;
    const Index r1 = spec.core_rank;
    const Index k = spec.nilpotency_index;
    const Index m_nil = k == 0 ? 0 : k + rng.integer(n - r1 - k + 1);
    const Index c = n - m_nil;
    const ComplexMatrix u = haar(rng, n);

    const ComplexMatrix ts = nonsingular_block(rng, r1, spec.conditioning);
    const Index z_size = c - r1;
    const Index z_rank = z_size == 0 ? 0 : rng.integer(z_size + 1);
    const ComplexMatrix zs = index_le1_block(rng, z_size, z_rank, spec.conditioning);
    const ComplexMatrix sharp_a = stacked(ts, ComplexMatrix::Zero(r1, z_size),
                                          ComplexMatrix::Zero(z_size, z_size));
    const ComplexMatrix sharp_b = stacked(ts, ComplexMatrix::Zero(r1, z_size), zs);

    ComplexMatrix n1, n2;
    minus_nil_pair(rng, m_nil, std::max<Index>(k, 1), n1, n2);

    ComplexMatrix layout_a = block_diag(sharp_a, n1);
    ComplexMatrix layout_b = block_diag(sharp_b, n2);
    if (kind == PairKind::violates) {
        if (r1 == 0) {
            layout_a(0, 0) += 0.5;  // gives A a core part nothing matches
        } else if (c > r1) {
            layout_b(0, r1) += 0.5;  // couples B's core blocks
        } else {
            layout_b.topLeftCorner(r1, r1) +=
                0.5 * layout_b.topLeftCorner(r1, r1).col(0) *
                ComplexMatrix::Identity(r1, r1).col(0).adjoint();
        }
    }
    OrderPair pair;
    pair.a = u * layout_a * u.adjoint();
    pair.b = u * layout_b * u.adjoint();
    return pair;
}

OrderPair pair_core_minus(Rng& rng, const GenSpec& spec, PairKind kind) {
    const Index n = spec.n;
    const Index r1 = spec.core_rank;
    const Index k = spec.nilpotency_index;
    const Index m2 = k == 0 ? 0 : k + rng.integer(n - r1 - k + 1);
    const Index r2 = n - r1 - m2;
    const ComplexMatrix u = haar(rng, n);

    const ComplexMatrix t1 = nonsingular_block(rng, r1, spec.conditioning);
    const ComplexMatrix t2 = gaussian(rng, r1, r2);
    const ComplexMatrix s1 = gaussian(rng, r1, m2);
    const ComplexMatrix t3 = nonsingular_block(rng, r2, spec.conditioning);
    const ComplexMatrix s2 = gaussian(rng, r2, m2);
    ComplexMatrix n1, n2;
    minus_nil_pair(rng, m2, std::max<Index>(k, 1), n1, n2);

    ComplexMatrix layout_a = ComplexMatrix::Zero(n, n);
    layout_a.topLeftCorner(r1, r1) = t1;
    layout_a.block(0, r1, r1, r2) = t2;
    layout_a.topRightCorner(r1, m2) = s1;
    layout_a.bottomRightCorner(m2, m2) = n1;

    ComplexMatrix layout_b = layout_a;
    layout_b.block(r1, r1, r2, r2) = t3;
    layout_b.block(r1, r1 + r2, r2, m2) = s2;
    layout_b.bottomRightCorner(m2, m2) = n2;

    OrderPair pair;
    pair.a = u * layout_a * u.adjoint();
    pair.b = u * layout_b * u.adjoint();
    if (kind == PairKind::violates) {
        if (r1 == 0) {
            pair.a += bump(u, 0, 0);  // A's regular part was 0, below all
        } else {
            pair.b += bump(u, 0, 0);  // contaminates the shared T1 block
        }
    }
    return pair;
}

}  // namespace

void GenSpec::validate() const {
    if (n < 1) throw InfeasibleSpec("GenSpec: n must be >= 1");
    if (core_rank < 0 || core_rank > n) throw InfeasibleSpec("GenSpec: core_rank out of [0, n]");
    if (nilpotency_index < 0) throw InfeasibleSpec("GenSpec: nilpotency_index must be >= 0");
    if (!(conditioning >= 1.0)) throw InfeasibleSpec("GenSpec: conditioning must be >= 1");
    if (nilpotency_index == 0) {
        if (core_rank != n)
            throw InfeasibleSpec("GenSpec: index 0 means nonsingular, so core_rank must equal n");
    } else if (n - core_rank < nilpotency_index) {
        throw InfeasibleSpec(
            "GenSpec: nilpotent block too small, need n - core_rank >= nilpotency_index");
    }
}

ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
    if (n < 0) throw InfeasibleSpec("random_unitary: n must be >= 0");
    Rng rng(seed);
    return haar(rng, n);
}

StructuredMatrix matrix_with_structure(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const Index r = spec.core_rank;
    const Index m = spec.n - r;

    StructuredMatrix out;
    out.form.u = haar(rng, spec.n);
    out.form.t = nonsingular_block(rng, r, spec.conditioning);
    out.form.s = gaussian(rng, r, m);
    out.form.n = m == 0 ? ComplexMatrix(0, 0) : shift_nilpotent(rng, m, spec.nilpotency_index);
    out.form.core_rank = r;
    out.form.idx = spec.nilpotency_index;
    out.matrix = out.form.assemble();
    return out;
}

OrderPair order_pair(const GenSpec& spec, Relation relation, PairKind kind) {
    spec.validate();
    Rng rng(spec.seed);
    switch (relation) {
        case Relation::minus: return pair_minus(rng, spec, kind);
        case Relation::sharp: return pair_sharp_or_core(rng, spec, kind, /*with_s=*/false);
        case Relation::core: return pair_sharp_or_core(rng, spec, kind, /*with_s=*/true);
        case Relation::drazin: return pair_drazin(rng, spec, kind);
        case Relation::core_ep: return pair_core_ep(rng, spec, kind);
        case Relation::cn: return pair_cn(rng, spec, kind);
        case Relation::core_minus: return pair_core_minus(rng, spec, kind);
    }
    throw InfeasibleSpec("order_pair: unknown relation");
}

OrderTriple core_ep_triple(const GenSpec& spec) {
    spec.validate();
    const Index n = spec.n;
    const Index r1 = spec.core_rank;
    const Index m = n - r1;
    const Index k = spec.nilpotency_index;
    if (m < 2) throw InfeasibleSpec("core_ep_triple: need n - core_rank >= 2");
    if (k < 1) throw InfeasibleSpec("core_ep_triple: need nilpotency_index >= 1");
    Rng rng(spec.seed);
    const ComplexMatrix u = haar(rng, n);
    const ComplexMatrix t1 = nonsingular_block(rng, r1, spec.conditioning);
    const ComplexMatrix r_blk = gaussian(rng, r1, m);
    const ComplexMatrix ma = shift_nilpotent(rng, m, k);

    const Index r2 = 1 + rng.integer(m - 1);  // leave room for the third level
    const Index mb_size = m - r2;
    const ComplexMatrix t3 = nonsingular_block(rng, r2, spec.conditioning);
    const ComplexMatrix r2_blk = gaussian(rng, r2, mb_size);
    const ComplexMatrix mb = shift_nilpotent(rng, mb_size, 1 + rng.integer(mb_size));

    const Index r3 = 1 + rng.integer(mb_size);
    const Index mc_size = mb_size - r3;
    const ComplexMatrix t4 = nonsingular_block(rng, r3, spec.conditioning);
    const ComplexMatrix r3_blk = gaussian(rng, r3, mc_size);
    const ComplexMatrix n3 =
        mc_size == 0 ? ComplexMatrix(0, 0) : shift_nilpotent(rng, mc_size, 1 + rng.integer(mc_size));

    OrderTriple triple;
    triple.a = u * stacked(t1, r_blk, ma) * u.adjoint();
    triple.b = u * stacked(t1, r_blk, stacked(t3, r2_blk, mb)) * u.adjoint();
    triple.c =
        u * stacked(t1, r_blk, stacked(t3, r2_blk, stacked(t4, r3_blk, n3))) * u.adjoint();
    return triple;
}

}  // namespace coreep
