#pragma once

#include "coreep/decomp.hpp"
#include "coreep/orders.hpp"
#include "coreep/types.hpp"

#include <cstdint>

namespace coreep {

/// Parameters for structured random matrices. Feasibility: n >= 1, 0 <= core_rank <= n,
/// conditioning >= 1, and either nilpotency_index == 0 with core_rank == n (nonsingular)
/// or 1 <= nilpotency_index <= n - core_rank. Violations throw InfeasibleSpec.
struct GenSpec {
    Index n = 4;
    Index core_rank = 2;
    Index nilpotency_index = 1;
    std::uint64_t seed = 0;
    double conditioning = 10.0;

    void validate() const;
};

/// Haar-distributed n x n unitary, bit-deterministic for a fixed seed.
ComplexMatrix random_unitary(Index n, std::uint64_t seed);

/// A = U [[T, S], [0, N]] U* with ground truth attached: T has singular values
/// log-spaced in [1, conditioning], N is a direct sum of shift blocks whose
/// largest block has size nilpotency_index exactly, so index(A) == nilpotency_index
/// and rank(A^index) == core_rank.
struct StructuredMatrix {
    ComplexMatrix matrix;
    CanonicalForm form;  // ground truth frame, exact by construction
};

StructuredMatrix matrix_with_structure(const GenSpec& spec);

enum class PairKind { satisfies, violates };

struct OrderPair {
    ComplexMatrix a;
    ComplexMatrix b;
};

/// A pair (A, B) that satisfies (or, for PairKind::violates, fails) the given
/// relation at default tolerance. Positive pairs come from the block
/// constructions that characterize each relation; negative pairs perturb one
/// shared block by an O(1) bump. spec.core_rank and spec.nilpotency_index
/// describe A; the sizes of B's extra blocks are drawn from the seed.
OrderPair order_pair(const GenSpec& spec, Relation relation, PairKind kind = PairKind::satisfies);

struct OrderTriple {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
};

/// A <=coreEP B <=coreEP C built by nesting the characterizing block form twice
/// in a single unitary frame (for transitivity checks).
OrderTriple core_ep_triple(const GenSpec& spec);

}  // namespace coreep
