#include <doctest.h>

#include "helpers.hpp"
#include "isomono/refactor.hpp"

using namespace isomono;
using namespace isomono::test;

TEST_CASE("swap_adjacent: scalars commute through Lambda = 1") {
    cmat X(1, 1), Y(1, 1);
    X << 0;
    Y << 1;
    const SwapResult sw = swap_adjacent(X, Y);
    CHECK(std::abs(sw.S(0, 0) - cx(1, 0)) < 1e-14);
    CHECK(std::abs(sw.T(0, 0)) < 1e-14);
}

TEST_CASE("swap_adjacent: commuting diagonal factors exchange verbatim") {
    const cmat X = diag2(1, 2), Y = diag2(5, 6);
    const SwapResult sw = swap_adjacent(X, Y);
    CHECK(rel(sw.S, Y) < 1e-12);
    CHECK(rel(sw.T, X) < 1e-12);
}

TEST_CASE("swap routes agree on the fixed 2x2 pair") {
    const cmat X = mat2(1, 1, 0, 2), Y = mat2(3, 0, 1, 4);
    const SwapResult a = swap_adjacent(X, Y);
    const SwapResult b = swap_adjacent_2x2(X, Y);
    CHECK((a.S - b.S).norm() < 1e-10);
    CHECK((a.T - b.T).norm() < 1e-10);
    CHECK(product_identity_residual(X, Y, a.S, a.T) < 1e-10);
}

TEST_CASE("swap_adjacent_2x2: trace-zero X against a nilpotent-perturbed Y") {
    const cmat X = mat2(0.5, 1.2, 0.3, -0.5);  // tr X = 0
    const cmat Y = mat2(2, 0.7, 0, 2.0001);
    const SwapResult sw = swap_adjacent_2x2(X, Y);
    CHECK(product_identity_residual(X, Y, sw.S, sw.T) < 1e-10);
}

TEST_CASE("swap_via_eigen agrees with the Sylvester route") {
    Rng rng(7201);
    for (int trial = 0; trial < 10; ++trial) {
        const SpectrumGroups g = random_groups(rng, 2, 2, Variant::difference());
        cmat D = cmat::Zero(2, 2);
        D(0, 0) = g.groups[0][0];
        D(1, 1) = g.groups[0][1];
        const cmat G1 = random_conjugator(rng, 2);
        const cmat X = G1 * D * G1.fullPivLu().inverse();
        D(0, 0) = g.groups[1][0];
        D(1, 1) = g.groups[1][1];
        const cmat G2 = random_conjugator(rng, 2);
        const cmat Y = G2 * D * G2.fullPivLu().inverse();

        const SwapResult a = swap_adjacent(X, Y);
        const SwapResult b = swap_via_eigen(X, Y);
        CHECK((a.S - b.S).norm() < 1e-8);
        CHECK((a.T - b.T).norm() < 1e-8);
    }
    // m = 1 always flips
    cmat X1(1, 1), Y1(1, 1);
    X1 << cx(0.3, 0.1);
    Y1 << cx(1.4, -0.2);
    const SwapResult s1 = swap_via_eigen(X1, Y1);
    CHECK(std::abs(s1.S(0, 0) - Y1(0, 0)) < 1e-14);
}

TEST_CASE("swap outputs: product identity, spectrum typing, conjugation consistency") {
    Rng rng(7202);
    for (int m = 2; m <= 3; ++m)
        for (int trial = 0; trial < 8; ++trial) {
            Rng local(7202 + 100 * m + trial);
            const SpectrumGroups g = random_groups(local, m, 2, Variant::difference());
            cmat DX = cmat::Zero(m, m), DY = cmat::Zero(m, m);
            for (int j = 0; j < m; ++j) {
                DX(j, j) = g.groups[0][static_cast<size_t>(j)];
                DY(j, j) = g.groups[1][static_cast<size_t>(j)];
            }
            const cmat GX = random_conjugator(local, m), GY = random_conjugator(local, m);
            const cmat X = GX * DX * GX.fullPivLu().inverse();
            const cmat Y = GY * DY * GY.fullPivLu().inverse();
            const SwapResult sw = swap_adjacent(X, Y);

            CHECK(product_identity_residual(X, Y, sw.S, sw.T) < 1e-9);
            CHECK(spectra_distance(matrix_spectrum(sw.S), matrix_spectrum(Y)) < 1e-7);
            CHECK(spectra_distance(matrix_spectrum(sw.T), matrix_spectrum(X)) < 1e-7);

            // X - S conjugates S back to Y
            const cmat D = X - sw.S;
            const cmat Yrec = D.fullPivLu().inverse() * sw.S * D;
            CHECK((Yrec - Y).norm() < 1e-9 * std::max(1.0, Y.norm()));

            const LeftFactors lf = left_factors_from_right(Y, sw.T);
            CHECK((lf.X - X).norm() < 1e-8 * std::max(1.0, X.norm()));
            CHECK((lf.S - sw.S).norm() < 1e-8 * std::max(1.0, X.norm()));
            const RightFactors rf = right_factors_from_left(X, sw.S);
            CHECK((rf.Y - Y).norm() < 1e-8 * std::max(1.0, Y.norm()));
            CHECK((rf.T - sw.T).norm() < 1e-8 * std::max(1.0, Y.norm()));
        }
    (void)rng;
}

TEST_CASE("swap_adjacent rejects overlapping spectra") {
    const cmat X = diag2(1, 2);
    const cmat Y = diag2(2, 5);
    CHECK_THROWS_AS((void)swap_adjacent(X, Y), genericity_error);
}

TEST_CASE("permute_product: identity, transposition, diagonal reversal") {
    Rng rng(7203);
    const SpectrumGroups g = random_groups(rng, 2, 3, Variant::difference());
    std::vector<cmat> factors;
    for (int i = 0; i < 3; ++i) {
        cmat D = cmat::Zero(2, 2);
        D(0, 0) = g.groups[static_cast<size_t>(i)][0];
        D(1, 1) = g.groups[static_cast<size_t>(i)][1];
        factors.push_back(D);
    }
    // identity
    const auto same = permute_product(factors, {0, 1, 2});
    for (int i = 0; i < 3; ++i) CHECK((same[static_cast<size_t>(i)] - factors[static_cast<size_t>(i)]).norm() < 1e-12);
    // diagonal factors commute: reversal returns the same matrices
    const auto rev = permute_product(factors, {2, 1, 0});
    for (int i = 0; i < 3; ++i) CHECK((rev[static_cast<size_t>(i)] - factors[static_cast<size_t>(i)]).norm() < 1e-10);
    // two factors: sigma = (1 0) reproduces swap_adjacent
    const cmat X = mat2(1, 1, 0, 2), Y = mat2(3, 0, 1, 4);
    const auto turned = permute_product({X, Y}, {1, 0});
    const SwapResult sw = swap_adjacent(X, Y);
    CHECK((turned[0] - sw.T).norm() < 1e-12);
    CHECK((turned[1] - sw.S).norm() < 1e-12);
}

TEST_CASE("permute_product: word independence and product invariance") {
    Rng rng(7204);
    for (int trial = 0; trial < 5; ++trial) {
        Rng local(7204 + trial);
        const SpectrumGroups g = random_groups(local, 2, 3, Variant::difference());
        std::vector<cmat> factors;
        for (int i = 0; i < 3; ++i) {
            cmat D = cmat::Zero(2, 2);
            D(0, 0) = g.groups[static_cast<size_t>(i)][0];
            D(1, 1) = g.groups[static_cast<size_t>(i)][1];
            const cmat G = random_conjugator(local, 2);
            factors.push_back(G * D * G.fullPivLu().inverse());
        }
        const std::vector<int> sigma{2, 0, 1};
        const auto Y = permute_product(factors, sigma);
        // product invariance at sample points
        for (int s = 0; s < 5; ++s) {
            const cx z{0.3 + 0.9 * s, -0.2 + 0.25 * s};
            const cmat I = cmat::Identity(2, 2);
            cmat lhs = I, rhs = I;
            for (int p = 0; p < 3; ++p) {
                lhs *= (z * I - factors[static_cast<size_t>(p)]);
                rhs *= (z * I - Y[static_cast<size_t>(sigma[static_cast<size_t>(p)])]);
            }
            CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, lhs.norm()));
        }
        // word independence: realize the reversal by two different reduced words
        const auto rev = permute_product(factors, {2, 1, 0});  // word (1,2)(0,1)(1,2)
        std::vector<cmat> mats = factors;                      // word (0,1)(1,2)(0,1)
        std::vector<int> labels{0, 1, 2};
        const auto apply = [&](int p) {
            const SwapResult sw = swap_adjacent(mats[static_cast<size_t>(p)], mats[static_cast<size_t>(p + 1)]);
            mats[static_cast<size_t>(p)] = sw.S;
            mats[static_cast<size_t>(p + 1)] = sw.T;
            std::swap(labels[static_cast<size_t>(p)], labels[static_cast<size_t>(p + 1)]);
        };
        apply(0);
        apply(1);
        apply(0);
        REQUIRE(labels == std::vector<int>{2, 1, 0});
        for (int p = 0; p < 3; ++p)
            CHECK((mats[static_cast<size_t>(p)] - rev[static_cast<size_t>(labels[static_cast<size_t>(p)])]).norm() <
                  1e-8 * std::max(1.0, mats[static_cast<size_t>(p)].norm()));
    }
    (void)rng;
}

TEST_CASE("spectrum matching detects ambiguity") {
    std::vector<cx> expected{cx(1, 0), cx(1.0000004, 0)};
    std::vector<cx> found{cx(1.0000001, 0), cx(1.0000002, 0)};
    CHECK_THROWS_AS((void)match_spectra(expected, found, 1e-6), genericity_error);
}
