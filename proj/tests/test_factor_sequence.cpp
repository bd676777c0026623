#include <doctest.h>

#include "helpers.hpp"
#include "isomono/factor_sequence.hpp"

using namespace isomono;
using namespace isomono::test;

namespace {

FactorSequence random_sequence(Rng& rng, int m, int n, Variant v) {
    const FactorState fs = random_factor_state(rng, m, n, v);
    return FactorSequence(fs.A0, fs.C, v);
}

double base_diff(const FactorSequence& a, const FactorSequence& b) {
    double worst = 0;
    for (int i = 0; i < a.window(); ++i)
        worst = std::max(worst, (a.base_factor(i) - b.base_factor(i)).norm());
    return worst;
}

}  // namespace

TEST_CASE("flow_F at n = 1 is the twist relation C -> A0^{-1} C A0 - I") {
    Rng rng(7301);
    const cmat A0 = random_conjugator(rng, 2, 0.6);
    const cmat C = random_matrix(rng, 2) + diag2(cx(0, 1.2), cx(0, 2.4));
    const FactorSequence seq(A0, {C}, Variant::difference());
    const FactorSequence next = flow_F(seq, 1);
    const cmat want = A0.fullPivLu().solve(C * A0) - cmat::Identity(2, 2);
    CHECK((next.base_factor(0) - want).norm() < 1e-12 * std::max(1.0, want.norm()));

    // q variant: C -> q^{-1} A0^{-1} C A0
    const cx q{0.7, 0};
    const FactorSequence qseq(A0, {C}, Variant::q_difference(q));
    const cmat qwant = A0.fullPivLu().solve(C * A0) / q;
    CHECK((flow_F(qseq, 1).base_factor(0) - qwant).norm() < 1e-12 * std::max(1.0, qwant.norm()));
}

TEST_CASE("flow_F and inverse_flow_F are inverse") {
    Rng rng(7302);
    for (int n = 1; n <= 3; ++n) {
        const FactorSequence seq = random_sequence(rng, 2, n, Variant::difference());
        for (int l = 1; l <= n; ++l) {
            const FactorSequence back = inverse_flow_F(flow_F(seq, l), l);
            CHECK(base_diff(back, seq) < 1e-10);
        }
    }
}

TEST_CASE("flow_F window relation: p_l...p_{l+n-1} = q_{l+1}...q_{l+n}") {
    Rng rng(7303);
    for (int trial = 0; trial < 5; ++trial) {
        const FactorSequence seq = random_sequence(rng, 2, 3, Variant::difference());
        for (int l = 1; l <= 3; ++l) {
            const FactorSequence out = flow_F(seq, l);
            const MatrixPolynomial lhs = seq.window_product(l);
            const MatrixPolynomial rhs = out.window_product(l + 1);
            CHECK(poly_diff(lhs, rhs) < 1e-9);
            // types: t(q_j) = t(p_j) except the cycled slot
            for (int s = 1; s < 3; ++s)
                CHECK(spectra_distance(out.linear_factor_at(l + s).spectrum,
                                       seq.linear_factor_at(l + s).spectrum) < 1e-7);
            CHECK(spectra_distance(out.linear_factor_at(l + 3).spectrum,
                                   seq.linear_factor_at(l).spectrum) < 1e-7);
        }
    }
}

TEST_CASE("telescope: F_1 F_2 ... F_n shifts the sequence by n") {
    Rng rng(7304);
    for (int n = 2; n <= 3; ++n) {
        const FactorSequence seq = random_sequence(rng, 2, n, Variant::difference());
        FactorSequence cur = seq;
        for (int l = n; l >= 1; --l) cur = flow_F(cur, l);  // p^{1,2,...,n}
        for (long k = 1; k <= n; ++k)
            CHECK((cur.factor_at(k) - seq.factor_at(k - n)).norm() < 1e-10);
    }
}

TEST_CASE("flows commute: F_i F_j = F_j F_i") {
    Rng rng(7305);
    for (int n = 2; n <= 3; ++n)
        for (int m = 2; m <= 3; ++m)
            for (int trial = 0; trial < 3; ++trial) {
                Rng local(7305 + 97 * n + 31 * m + trial);
                const FactorSequence seq = random_sequence(local, m, n, Variant::difference());
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j) {
                        const FactorSequence ij = flow_F(flow_F(seq, j), i);
                        const FactorSequence ji = flow_F(flow_F(seq, i), j);
                        CHECK(base_diff(ij, ji) < 1e-8);
                    }
            }
    (void)rng;
}

TEST_CASE("inverse flows commute with flows at other indices") {
    Rng rng(7306);
    const FactorSequence seq = random_sequence(rng, 2, 3, Variant::difference());
    const FactorSequence a = inverse_flow_F(flow_F(seq, 1), 2);
    const FactorSequence b = flow_F(inverse_flow_F(seq, 2), 1);
    CHECK(base_diff(a, b) < 1e-8);
}

TEST_CASE("exchange identity q_i^j p_j = p_j^i q_i for 0 < j - i < n") {
    Rng rng(7307);
    for (int trial = 0; trial < 5; ++trial) {
        Rng local(7307 + trial);
        const FactorSequence q = random_sequence(local, 2, 3, Variant::difference());
        const int i = 1, j = 2;
        // p = F_{i+1} ... F_j q
        FactorSequence p = q;
        for (int l = j; l >= i + 1; --l) p = flow_F(p, l);
        const FactorSequence qj = flow_F(q, j);
        const FactorSequence pi = flow_F(p, i);
        const cmat I = cmat::Identity(2, 2);
        for (int s = 0; s < 5; ++s) {
            const cx z{0.4 + 0.8 * s, 0.3 - 0.3 * s};
            const cmat lhs = (z * I - qj.factor_at(i)) * (z * I - p.factor_at(j));
            const cmat rhs = (z * I - pi.factor_at(j)) * (z * I - q.factor_at(i));
            CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, lhs.norm()));
        }
    }
    (void)rng;
}

TEST_CASE("pi_action: identity, adjacent transposition on commuting base, product invariance") {
    Rng rng(7308);
    // commuting diagonal base: transposition swaps the base factors
    const SpectrumGroups g = random_groups(rng, 2, 2, Variant::difference());
    cmat D1 = diag2(g.groups[0][0], g.groups[0][1]);
    cmat D2 = diag2(g.groups[1][0], g.groups[1][1]);
    const cmat A0 = random_conjugator(rng, 2, 0.5);
    const FactorSequence seq(A0, {D1, D2}, Variant::difference());
    const FactorSequence same = pi_action(seq, {0, 1});
    CHECK(base_diff(same, seq) < 1e-12);
    const FactorSequence swapped = pi_action(seq, {1, 0});
    CHECK((swapped.base_factor(0) - D2).norm() < 1e-10);
    CHECK((swapped.base_factor(1) - D1).norm() < 1e-10);

    // general base: the window product over one period is invariant
    const FactorSequence gen = random_sequence(rng, 2, 3, Variant::difference());
    const FactorSequence acted = pi_action(gen, {1, 2, 0});
    CHECK(poly_diff(gen.window_product(1), acted.window_product(1)) < 1e-9);
}

TEST_CASE("autonomous variant: window products and spectra are preserved") {
    Rng rng(7309);
    const FactorSequence seq = random_sequence(rng, 2, 2, Variant::autonomous());
    FactorSequence cur = seq;
    for (int step = 0; step < 10; ++step) cur = flow_F(cur, 1 + step % 2);
    for (int i = 0; i < 2; ++i)
        CHECK(spectra_distance(matrix_spectrum(cur.base_factor(i)),
                               matrix_spectrum(seq.base_factor(i))) < 1e-8);
}
