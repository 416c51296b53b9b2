#include "testutil.hpp"

#include <doctest.h>

using coreep::ComplexMatrix;
using coreep::Index;
using coreep::ToleranceContext;
using testutil::mat;

namespace {

ComplexMatrix shift3() {
    ComplexMatrix j = ComplexMatrix::Zero(3, 3);
    j(0, 1) = 1.0;
    j(1, 2) = 1.0;
    return j;
}

}  // namespace

TEST_SUITE("decomp") {

TEST_CASE("index oracles") {
    const ToleranceContext tol;
    CHECK(coreep::index(testutil::example_a(), tol) == 1);
    CHECK(coreep::index(testutil::example_b(), tol) == 2);
    CHECK(coreep::index(ComplexMatrix::Identity(3, 3), tol) == 0);
    CHECK(coreep::index(ComplexMatrix::Zero(3, 3), tol) == 1);
    CHECK(coreep::index(shift3(), tol) == 3);
    CHECK(coreep::index(mat(2, 2, {2, 0, 0, 0}), tol) == 1);
    CHECK(coreep::index(ComplexMatrix(0, 0), tol) == 0);
}

TEST_CASE("index_report carries the rank chain") {
    const ToleranceContext tol;
    const coreep::IndexReport rb = coreep::index_report(testutil::example_b(), tol);
    CHECK(rb.index == 2);
    CHECK(rb.stabilized);
    REQUIRE(rb.rank_chain.size() >= 3);
    CHECK(rb.rank_chain[0] == 2);
    CHECK(rb.rank_chain[1] == 1);
    CHECK(rb.rank_chain[2] == 1);

    const coreep::IndexReport rj = coreep::index_report(shift3(), tol);
    CHECK(rj.index == 3);
    CHECK(rj.rank_chain.front() == 2);
    CHECK(rj.rank_chain.back() == 0);
}

TEST_CASE("index requires a square matrix") {
    CHECK_THROWS_AS(coreep::index(ComplexMatrix::Zero(2, 3), ToleranceContext()),
                    coreep::ShapeMismatch);
}

TEST_CASE("canonical_form of the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix b = testutil::example_b();
    const coreep::CanonicalForm form = coreep::canonical_form(b, tol);
    CHECK(form.core_rank == 1);
    CHECK(form.idx == 2);
    REQUIRE(form.t.rows() == 1);
    CHECK(std::abs(form.t(0, 0)) == doctest::Approx(1.0));  // frame phase may differ
    CHECK((form.u.adjoint() * form.u - ComplexMatrix::Identity(3, 3)).norm() < 1e-13);
    CHECK((form.assemble() - b).norm() < 1e-12);
    // N part is nilpotent with the complementary size
    REQUIRE(form.n.rows() == 2);
    CHECK((form.n * form.n).norm() < 1e-12);
}

TEST_CASE("canonical_form of a nonsingular matrix has an empty nilpotent part") {
    const ToleranceContext tol;
    const coreep::CanonicalForm form = coreep::canonical_form(ComplexMatrix::Identity(3, 3), tol);
    CHECK(form.core_rank == 3);
    CHECK(form.idx == 0);
    CHECK(form.n.rows() == 0);
    CHECK((form.assemble() - ComplexMatrix::Identity(3, 3)).norm() < 1e-13);
}

TEST_CASE("core_form reconstructs any matrix; T is singular above index 1") {
    const ToleranceContext tol;
    const ComplexMatrix b = testutil::example_b();
    const coreep::CanonicalForm cf = coreep::core_form(b, tol);
    CHECK(cf.core_rank == 2);
    CHECK(cf.idx == 1);
    CHECK((cf.assemble() - b).norm() < 1e-12);
    CHECK(coreep::rank(cf.t, tol) == 1);  // index(B) = 2, so T cannot be invertible

    const coreep::CanonicalForm ca = coreep::core_form(testutil::example_a(), tol);
    CHECK(ca.core_rank == 1);
    CHECK(coreep::rank(ca.t, tol) == 1);  // index(A) = 1: T invertible
    CHECK((ca.assemble() - testutil::example_a()).norm() < 1e-12);
}

TEST_CASE("core_ep_decompose of the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix b = testutil::example_b();
    const coreep::CoreEPParts parts = coreep::core_ep_decompose(b, tol);
    CHECK(parts.idx == 2);
    CHECK((parts.a1 - mat(3, 3, {1, 2, 3, 0, 0, 0, 0, 0, 0})).norm() < 1e-12);
    CHECK((parts.a2 - mat(3, 3, {0, 0, 0, 0, 0, 1, 0, 0, 0})).norm() < 1e-12);
    CHECK((parts.a1 + parts.a2 - b).norm() == 0.0);  // a2 := b - a1 keeps the sum exact
    // defining properties: a1 has index <= 1, a2 nilpotent, a1* a2 = 0 = a2 a1
    CHECK(coreep::index(parts.a1, tol) <= 1);
    CHECK((parts.a2 * parts.a2).norm() < 1e-12);
    CHECK((parts.a1.adjoint() * parts.a2).norm() < 1e-12);
    CHECK((parts.a2 * parts.a1).norm() < 1e-12);
}

TEST_CASE("core_ep_decompose short-circuits for index 0 and index <= 1 inputs") {
    const ToleranceContext tol;
    const coreep::CoreEPParts id = coreep::core_ep_decompose(ComplexMatrix::Identity(3, 3), tol);
    CHECK(id.idx == 0);
    CHECK((id.a1 - ComplexMatrix::Identity(3, 3)).norm() == 0.0);
    CHECK(id.a2.norm() == 0.0);

    const coreep::CoreEPParts pa = coreep::core_ep_decompose(testutil::example_a(), tol);
    CHECK(pa.idx == 1);
    CHECK((pa.a1 - testutil::example_a()).norm() < 1e-12);
    CHECK(pa.a2.norm() < 1e-12);
}

TEST_CASE("decomposing the regular part again changes nothing") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        coreep::GenSpec spec;
        spec.n = 5;
        spec.core_rank = 2;
        spec.nilpotency_index = 2;
        spec.seed = seed;
        const ComplexMatrix a = coreep::matrix_with_structure(spec).matrix;
        const coreep::CoreEPParts parts = coreep::core_ep_decompose(a, tol);
        const coreep::CoreEPParts again = coreep::core_ep_decompose(parts.a1, tol);
        CHECK(again.a2.norm() <= 1e-10 * parts.a1.norm());
        CHECK((again.a1 - parts.a1).norm() <= 1e-10 * parts.a1.norm());
    }
}

TEST_CASE("core_nilpotent_decompose of the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix b = testutil::example_b();
    const coreep::CoreNilpotentParts parts = coreep::core_nilpotent_decompose(b, tol);
    CHECK(parts.idx == 2);
    CHECK((parts.core - mat(3, 3, {1, 2, 5, 0, 0, 0, 0, 0, 0})).norm() < 1e-12);
    CHECK((parts.nil - mat(3, 3, {0, 0, -2, 0, 0, 1, 0, 0, 0})).norm() < 1e-12);
    CHECK((parts.core + parts.nil - b).norm() < 1e-12);
    CHECK((parts.core * parts.nil).norm() < 1e-12);
    CHECK((parts.nil * parts.core).norm() < 1e-12);
    CHECK((parts.nil * parts.nil).norm() < 1e-12);
    CHECK(coreep::index(parts.core, tol) <= 1);
}

TEST_CASE("canonical_form recovers generator ground truth") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        coreep::GenSpec spec;
        spec.n = 6;
        spec.core_rank = 3;
        spec.nilpotency_index = 1 + static_cast<Index>(seed % 3);
        spec.seed = seed;
        const coreep::StructuredMatrix sm = coreep::matrix_with_structure(spec);
        const coreep::CanonicalForm form = coreep::canonical_form(sm.matrix, tol);
        CHECK(form.core_rank == spec.core_rank);
        CHECK(form.idx == spec.nilpotency_index);
        CHECK((form.assemble() - sm.matrix).norm() <= 1e-10 * sm.matrix.norm());
    }
}

}  // TEST_SUITE
