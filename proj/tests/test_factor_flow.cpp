#include <doctest.h>

#include "helpers.hpp"
#include "isomono/factor_flow.hpp"

using namespace isomono;
using namespace isomono::test;

TEST_CASE("factor_flow: zero target, diagonal rule, window residual") {
    Rng rng(7601);
    const FactorState s = random_factor_state(rng, 2, 2);
    const FactorState same = factor_flow(s, {0, 0});
    for (int i = 0; i < 2; ++i) CHECK((same.C[static_cast<size_t>(i)] - s.C[static_cast<size_t>(i)]).norm() == 0);

    const FactorState diag = factor_flow(s, {1, 1});
    for (int i = 0; i < 2; ++i) {
        const cmat want = s.A0.fullPivLu().solve(s.C[static_cast<size_t>(i)] * s.A0) - cmat::Identity(2, 2);
        CHECK((diag.C[static_cast<size_t>(i)] - want).norm() < 1e-10 * std::max(1.0, want.norm()));
    }

    // a single-index step satisfies the window exchange identity
    for (int i = 0; i < 2; ++i) {
        LatticePoint t{0, 0};
        t[static_cast<size_t>(i)] = 1;
        const FactorState stepped = factor_flow(s, t);
        CHECK(factor_step_residual(s, stepped, i) < 1e-9);
    }
}

TEST_CASE("b_from_c and c_from_b: n = 1 are identity maps on values") {
    Rng rng(7602);
    const FactorState s = random_factor_state(rng, 2, 1);
    const DivisorState d = b_from_c(s, {0});
    CHECK((d.B[0] - s.C[0]).norm() == 0);
    const FactorState back = c_from_b(d, {0});
    CHECK((back.C[0] - s.C[0]).norm() == 0);
}

TEST_CASE("b_from_c: the displayed index rule at k = 0, n = 2") {
    Rng rng(7603);
    const FactorState s = random_factor_state(rng, 2, 2);
    const DivisorState d = b_from_c(s, {0, 0});
    // B_2(0,0) = C_2(0,0)
    CHECK((d.B[1] - s.C[1]).norm() == 0);
    // B_1(0,0) = C_1(0,-1)
    const FactorState shifted = factor_flow(s, {0, -1});
    CHECK((d.B[0] - shifted.C[0]).norm() < 1e-10 * std::max(1.0, d.B[0].norm()));
}

TEST_CASE("the ordered factor product has every z - B_i as a right divisor") {
    Rng rng(7604);
    for (int n = 2; n <= 3; ++n) {
        Rng local(7604 + n);
        const FactorState s = random_factor_state(local, 2, n);
        const DivisorState d = b_from_c(s, LatticePoint(static_cast<size_t>(n), 0));
        const MatrixPolynomial A = to_polynomial(s);
        for (int i = 0; i < n; ++i) CHECK(verify_divisor(A, d.B[static_cast<size_t>(i)]) < 1e-9);
    }
}

TEST_CASE("b_from_c / c_from_b round trip") {
    Rng rng(7605);
    for (int n = 2; n <= 3; ++n) {
        Rng local(7605 + n);
        const FactorState s = random_factor_state(local, 2, n);
        const LatticePoint k(static_cast<size_t>(n), 0);
        const FactorState back = c_from_b(b_from_c(s, k), k);
        for (int i = 0; i < n; ++i)
            CHECK((back.C[static_cast<size_t>(i)] - s.C[static_cast<size_t>(i)]).norm() <
                  1e-8 * std::max(1.0, s.C[static_cast<size_t>(i)].norm()));
    }
}

TEST_CASE("route equivalence: cube schedule vs the sequence flows") {
    Rng rng(7606);
    for (int trial = 0; trial < 3; ++trial) {
        Rng local(7606 + trial);
        const FactorState fs = random_factor_state(local, 2, 2);
        const DivisorState ds = b_from_c(fs, {0, 0});
        const LatticePoint k{2, -1};
        const DivisorState via_b = divisor_flow(ds, k);
        const DivisorState via_c = b_from_c(fs, k);
        for (int i = 0; i < 2; ++i)
            CHECK((via_b.B[static_cast<size_t>(i)] - via_c.B[static_cast<size_t>(i)]).norm() <
                  1e-7 * std::max(1.0, via_b.B[static_cast<size_t>(i)].norm()));
    }
}

TEST_CASE("factor_flow: q diagonal rule") {
    Rng rng(7607);
    const Variant v = Variant::q_difference(cx(0.7, 0));
    const FactorState s = random_factor_state(rng, 2, 2, v);
    const FactorState diag = factor_flow(s, {1, 1});
    for (int i = 0; i < 2; ++i) {
        const cmat want = s.A0.fullPivLu().solve(s.C[static_cast<size_t>(i)] * s.A0) / v.q;
        CHECK((diag.C[static_cast<size_t>(i)] - want).norm() < 1e-10 * std::max(1.0, want.norm()));
    }
}

TEST_CASE("factor_flow round trips through negative targets") {
    Rng rng(7608);
    const FactorState s = random_factor_state(rng, 3, 2);
    const FactorState there = factor_flow(s, {-2, 1});
    const FactorState back = factor_flow(there, {0, 0});
    for (int i = 0; i < 2; ++i)
        CHECK((back.C[static_cast<size_t>(i)] - s.C[static_cast<size_t>(i)]).norm() <
              1e-8 * std::max(1.0, s.C[static_cast<size_t>(i)].norm()));
}
