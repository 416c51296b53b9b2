#include "testutil.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using coreep::ComplexMatrix;
using coreep::OrderVerdict;
using coreep::PairKind;
using coreep::Relation;
using coreep::ToleranceContext;
using testutil::mat;

namespace {

const std::vector<Relation> kAllRelations = {
    Relation::minus,   Relation::sharp, Relation::core,      Relation::drazin,
    Relation::core_ep, Relation::cn,    Relation::core_minus};

OrderVerdict evaluate(Relation rel, const ComplexMatrix& a, const ComplexMatrix& b,
                      const ToleranceContext& tol) {
    switch (rel) {
        case Relation::minus: return coreep::le_minus(a, b, tol);
        case Relation::sharp: return coreep::le_sharp(a, b, tol);
        case Relation::core: return coreep::le_core(a, b, tol);
        case Relation::drazin: return coreep::le_drazin(a, b, tol);
        case Relation::core_ep: return coreep::le_core_ep(a, b, tol);
        case Relation::cn: return coreep::le_cn(a, b, tol);
        case Relation::core_minus: return coreep::le_core_minus(a, b, tol);
    }
    throw coreep::Error("unknown relation");
}

coreep::GenSpec spec_for(std::uint64_t seed) {
    coreep::GenSpec spec;
    spec.n = 3 + static_cast<coreep::Index>(seed % 4);
    spec.nilpotency_index = 1 + static_cast<coreep::Index>(seed % 2);
    spec.core_rank = spec.n - spec.nilpotency_index -
                     static_cast<coreep::Index>(seed % 2);
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST_SUITE("orders") {

TEST_CASE("minus order on the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix a = testutil::example_a();
    const ComplexMatrix b = testutil::example_b();

    const OrderVerdict fwd = coreep::le_minus(a, b, tol);
    CHECK(fwd.holds);
    REQUIRE(fwd.rank_witness.has_value());
    CHECK(fwd.rank_witness->rank_a == 1);
    CHECK(fwd.rank_witness->rank_b == 2);
    CHECK(fwd.rank_witness->rank_diff == 1);

    const OrderVerdict rev = coreep::le_minus(b, a, tol);
    CHECK_FALSE(rev.holds);
    CHECK(rev.rank_witness->rank_diff == 1);  // 2 + 1 != 1
}

TEST_CASE("minus order accepts rectangular input but requires matching shapes") {
    const ToleranceContext tol;
    ComplexMatrix a = ComplexMatrix::Zero(2, 3);
    a(0, 0) = 1.0;
    ComplexMatrix b = a;
    b(1, 2) = 2.0;
    CHECK(coreep::le_minus(a, b, tol).holds);
    CHECK_FALSE(coreep::le_minus(b, a, tol).holds);
    CHECK_THROWS_AS(coreep::le_minus(a, ComplexMatrix::Zero(3, 2), tol), coreep::ShapeMismatch);
}

TEST_CASE("sharp order oracles") {
    const ToleranceContext tol;
    CHECK(coreep::le_sharp(mat(2, 2, {1, 0, 0, 0}), ComplexMatrix::Identity(2, 2), tol).holds);

    // fails through one side only: AA# = BA# exactly, but A#A != A#B
    const OrderVerdict v =
        coreep::le_sharp(mat(2, 2, {1, 0, 0, 0}), mat(2, 2, {1, 1, 0, 1}), tol);
    CHECK_FALSE(v.holds);
    CHECK(v.residuals.at("ax_bx") <= 1e-12);
    CHECK(v.residuals.at("xa_xb") > 0.1);
}

TEST_CASE("sharp order names the offending argument in IndexTooLarge") {
    const ToleranceContext tol;
    const ComplexMatrix b = testutil::example_b();
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    try {
        coreep::le_sharp(b, id, tol);
        FAIL("expected IndexTooLarge");
    } catch (const coreep::IndexTooLarge& e) {
        CHECK(std::string(e.what()).find("first") != std::string::npos);
    }
    try {
        coreep::le_sharp(id, b, tol);
        FAIL("expected IndexTooLarge");
    } catch (const coreep::IndexTooLarge& e) {
        CHECK(std::string(e.what()).find("second") != std::string::npos);
    }
}

TEST_CASE("core order oracles") {
    const ToleranceContext tol;
    CHECK(coreep::le_core(mat(2, 2, {1, 0, 0, 0}), ComplexMatrix::Identity(2, 2), tol).holds);
    CHECK_FALSE(coreep::le_core(mat(2, 2, {1, 0, 0, 0}), mat(2, 2, {0, 0, 0, 1}), tol).holds);
    const OrderVerdict v =
        coreep::le_core(mat(2, 2, {1, 0, 0, 0}), ComplexMatrix::Identity(2, 2), tol);
    for (const char* key : {"xa_xb", "ax_bx", "dag_xa_xb", "a2_ba"})
        CHECK(v.residuals.at(key) <= 1e-12);
}

TEST_CASE("drazin order on the worked example fails") {
    const ToleranceContext tol;
    const ComplexMatrix a = testutil::example_a();
    const ComplexMatrix b = testutil::example_b();
    CHECK_FALSE(coreep::le_drazin(a, b, tol).holds);
    CHECK(coreep::le_drazin(a, a, tol).holds);
    CHECK(coreep::le_drazin(b, b, tol).holds);
}

TEST_CASE("drazin pre-order: a nilpotent first argument sits below everything") {
    const ToleranceContext tol;
    ComplexMatrix j = ComplexMatrix::Zero(3, 3);
    j(0, 1) = 1.0;
    j(1, 2) = 1.0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const ComplexMatrix b =
            coreep::matrix_with_structure(spec_for(seed * 7 + 1)).matrix;
        if (b.rows() != 3) continue;
        CHECK(coreep::le_drazin(j, b, tol).holds);  // index(J) = 3, J^3 = 0
    }
}

TEST_CASE("core_ep order holds in both directions on the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix a = testutil::example_a();
    const ComplexMatrix b = testutil::example_b();
    CHECK(coreep::le_core_ep(a, b, tol).holds);
    CHECK(coreep::le_core_ep(b, a, tol).holds);  // pre-order: not antisymmetric
    CHECK_FALSE(coreep::approx_eq(a, b, tol));
    const OrderVerdict v = coreep::le_core_ep(a, b, tol);
    for (const char* key : {"xa_xb", "ax_bx", "ak1_bak", "as_ak"})
        CHECK(v.residuals.at(key) <= 1e-10);
}

TEST_CASE("cn order oracles") {
    const ToleranceContext tol;
    const ComplexMatrix a = testutil::example_a();
    const ComplexMatrix b = testutil::example_b();
    CHECK_FALSE(coreep::le_cn(a, b, tol).holds);
    CHECK(coreep::le_cn(b, b, tol).holds);
    CHECK(coreep::le_cn(a, a, tol).holds);
}

TEST_CASE("core_minus order on the worked example") {
    const ToleranceContext tol;
    const ComplexMatrix a = testutil::example_a();
    const ComplexMatrix b = testutil::example_b();

    const OrderVerdict fwd = coreep::le_core_minus(a, b, tol);
    CHECK(fwd.holds);

    const OrderVerdict rev = coreep::le_core_minus(b, a, tol);
    CHECK_FALSE(rev.holds);
    REQUIRE(rev.rank_witness.has_value());
    CHECK(rev.rank_witness->rank_a == 1);  // nilpotent part of B has rank 1
    CHECK(rev.rank_witness->rank_b == 0);  // nilpotent part of A vanishes
    CHECK(rev.rank_witness->rank_diff == 1);
}

TEST_CASE("every relation is reflexive on generated matrices") {
    const ToleranceContext tol;
    for (Relation rel : kAllRelations) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            coreep::GenSpec spec = spec_for(seed);
            if (rel == Relation::sharp || rel == Relation::core) spec.nilpotency_index = 1;
            const ComplexMatrix m = coreep::matrix_with_structure(spec).matrix;
            const OrderVerdict v = evaluate(rel, m, m, tol);
            CHECK_MESSAGE(v.holds, coreep::relation_name(rel) << " not reflexive at seed "
                                                              << seed);
        }
    }
}

TEST_CASE("generated positive pairs satisfy and negative pairs violate") {
    const ToleranceContext tol;
    for (Relation rel : kAllRelations) {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            coreep::GenSpec spec = spec_for(seed);
            if (rel == Relation::sharp || rel == Relation::core) spec.nilpotency_index = 1;
            const coreep::OrderPair pos = coreep::order_pair(spec, rel, PairKind::satisfies);
            const OrderVerdict vp = evaluate(rel, pos.a, pos.b, tol);
            CHECK_MESSAGE(vp.holds, coreep::relation_name(rel)
                                        << " positive pair fails at seed " << seed);
            const coreep::OrderPair neg = coreep::order_pair(spec, rel, PairKind::violates);
            const OrderVerdict vn = evaluate(rel, neg.a, neg.b, tol);
            CHECK_MESSAGE(!vn.holds, coreep::relation_name(rel)
                                         << " negative pair holds at seed " << seed);
        }
    }
}

TEST_CASE("core_ep triples chain transitively") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        coreep::GenSpec spec;
        spec.n = 6;
        spec.core_rank = 2;
        spec.nilpotency_index = 1 + static_cast<coreep::Index>(seed % 2);
        spec.seed = seed;
        const coreep::OrderTriple t = coreep::core_ep_triple(spec);
        CHECK(coreep::le_core_ep(t.a, t.b, tol).holds);
        CHECK(coreep::le_core_ep(t.b, t.c, tol).holds);
        CHECK(coreep::le_core_ep(t.a, t.c, tol).holds);
    }
}

TEST_CASE("core_minus implies minus on generated positives") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const coreep::OrderPair p =
            coreep::order_pair(spec_for(seed), Relation::core_minus, PairKind::satisfies);
        REQUIRE(coreep::le_core_minus(p.a, p.b, tol).holds);
        CHECK(coreep::le_minus(p.a, p.b, tol).holds);
    }
}

TEST_CASE("core_ep verdicts are unitarily invariant") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const coreep::GenSpec spec = spec_for(seed);
        const coreep::OrderPair p = coreep::order_pair(spec, Relation::core_ep,
                                                       seed % 2 == 0 ? PairKind::satisfies
                                                                     : PairKind::violates);
        const ComplexMatrix v = coreep::random_unitary(p.a.rows(), seed + 101);
        const bool base = coreep::le_core_ep(p.a, p.b, tol).holds;
        const bool rotated =
            coreep::le_core_ep(v * p.a * v.adjoint(), v * p.b * v.adjoint(), tol).holds;
        CHECK(base == rotated);
    }
}

TEST_CASE("index <= 1 collapses core_minus and core_ep onto core") {
    const ToleranceContext tol;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        coreep::GenSpec spec = spec_for(seed);
        spec.nilpotency_index = 1;
        const coreep::OrderPair p = coreep::order_pair(
            spec, Relation::core, seed % 2 == 0 ? PairKind::satisfies : PairKind::violates);
        const bool core = coreep::le_core(p.a, p.b, tol).holds;
        CHECK(coreep::le_core_minus(p.a, p.b, tol).holds == core);
        CHECK(coreep::le_core_ep(p.a, p.b, tol).holds == core);
    }
}

}  // TEST_SUITE
