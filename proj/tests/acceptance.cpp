// Acceptance gate: one pass/fail line per criterion, exit code = number
// of failed criteria. Desk scale: m, n in {2, 3}, |k|_inf <= 3, 20 seeds
// per suite unless a criterion states otherwise.

#include <cstdio>
#include <functional>
#include <vector>

#include "isomono/continuum.hpp"
#include "isomono/io.hpp"

using namespace isomono;

namespace {

int g_failures = 0;

void report(int id, const char* text, bool pass, double worst) {
    std::printf("%s  [%2d] %s (worst %.3e)\n", pass ? "PASS" : "FAIL", id, text, worst);
    if (!pass) ++g_failures;
}

double spectra_dist(const std::vector<cx>& expect, const std::vector<cx>& found) {
    double worst = 0;
    for (const cx e : expect) {
        double best = 1e300;
        for (const cx f : found) best = std::min(best, std::abs(f - e));
        worst = std::max(worst, best);
    }
    return worst;
}

struct DeskCase {
    int m, n;
    unsigned seed;
};

std::vector<DeskCase> desk_cases(int seeds_per_size) {
    std::vector<DeskCase> out;
    unsigned seed = 1000;
    for (int m = 2; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n)
            for (int s = 0; s < seeds_per_size; ++s) out.push_back({m, n, seed++});
    return out;
}

// -------------------------------------------------------------------
// 1. Refactorization identity: three routes agree; product identity.
void criterion_1() {
    double worst = 0;
    bool pass = true;
    for (const DeskCase& c : desk_cases(5)) {
        Rng rng(c.seed);
        const FactorState fs = random_factor_state(rng, c.m, 2, Variant::difference());
        const cmat X = fs.C[0], Y = fs.C[1];
        const SwapResult a = swap_adjacent(X, Y);
        const SwapResult e = swap_via_eigen(X, Y);
        worst = std::max({worst, (a.S - e.S).norm(), (a.T - e.T).norm()});
        if (c.m == 2) {
            const SwapResult t = swap_adjacent_2x2(X, Y);
            worst = std::max({worst, (a.S - t.S).norm(), (a.T - t.T).norm()});
        }
        pass = pass && worst <= 1e-8;
        // product identity at 2mn+1 points
        double prod = 0;
        for (int s = 0; s < 2 * c.m * 2 + 1; ++s) {
            const cx z{-1.1 + 0.53 * s, 0.4 - 0.21 * s};
            const cmat I = cmat::Identity(c.m, c.m);
            const cmat lhs = (z * I - X) * (z * I - Y);
            const cmat rhs = (z * I - a.S) * (z * I - a.T);
            prod = std::max(prod, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
        }
        pass = pass && prod <= 1e-9;
        worst = std::max(worst, prod);
    }
    report(1, "refactorization routes agree (<=1e-8) and product identity (<=1e-9)", pass, worst);
}

// 2. Reconstruction from extracted right divisors.
void criterion_2() {
    double worst = 0;
    for (const DeskCase& c : desk_cases(5)) {
        Rng rng(c.seed);
        const auto [A, groups] = random_polynomial(rng, c.m, c.n);
        std::vector<cmat> divisors;
        for (int i = 0; i < c.n; ++i)
            divisors.push_back(right_divisor(A, groups.groups[static_cast<size_t>(i)]));
        const MatrixPolynomial back = from_right_divisors(A.leading(), divisors, groups.groups);
        double diff = 0;
        for (int k = 0; k <= A.degree(); ++k)
            diff = std::max(diff, (back.coeff(k) - A.coeff(k)).norm() / std::max(1.0, A.scale()));
        worst = std::max(worst, diff);
    }
    report(2, "extract-then-reconstruct returns the polynomial (<=1e-8)", worst <= 1e-8, worst);
}

// 3. Shift certificates for random balanced (kappa, delta).
void criterion_3() {
    double worst_root = 0, worst_d = 0, worst_a0 = 0, worst_order = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(3000 + static_cast<unsigned>(s));
        const int m = 2 + s % 2, n = 2;
        const auto [A, groups] = random_polynomial(rng, m, n);
        std::vector<int> kappa(static_cast<size_t>(m * n), 0);
        std::vector<int> delta(static_cast<size_t>(m), 0);
        // small random balanced data
        std::uniform_int_distribution<int> pick(-1, 1);
        long sum = 0;
        for (int& k : kappa) {
            k = pick(rng);
            sum += k;
        }
        delta[0] = static_cast<int>(-sum);
        const auto roots = groups.flattened();
        const SchlesingerResult f = schlesinger_action(A, roots, kappa, delta, MoveOrder::forward);
        const SchlesingerResult r = schlesinger_action(A, roots, kappa, delta, MoveOrder::reversed);

        std::vector<cx> expect = roots;
        for (size_t i = 0; i < expect.size(); ++i) expect[i] += static_cast<double>(kappa[i]);
        worst_root = std::max(worst_root, spectra_dist(expect, eigenvalues(f.A)));

        const cvec d0 = formal_exponents(A), d1 = formal_exponents(f.A);
        for (int i = 0; i < m; ++i)
            worst_d = std::max(worst_d, std::abs(d1(i) - d0(i) - cx(delta[static_cast<size_t>(i)], 0)));

        worst_a0 = std::max(worst_a0, (f.A.leading() - A.leading()).norm() / std::max(1.0, A.leading().norm()));
        for (int k = 0; k <= f.A.degree(); ++k)
            worst_order = std::max(worst_order, (f.A.coeff(k) - r.A.coeff(k)).norm() / std::max(1.0, A.scale()));
    }
    const bool pass = worst_root <= 1e-6 && worst_d <= 1e-8 && worst_a0 <= 1e-12 && worst_order <= 1e-7;
    report(3, "Schlesinger action certificates: roots, exponents, A_0, order independence", pass,
           std::max({worst_root, worst_d, worst_a0, worst_order}));
}

// 4. Unit-group-shift multiplier is z - B_i.
void criterion_4() {
    double worst = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(4000 + static_cast<unsigned>(s));
        const int m = 2 + s % 2;
        const auto [A, groups] = random_polynomial(rng, m, 2);
        const int gi = s % 2;
        const cmat Bi = right_divisor(A, groups.groups[static_cast<size_t>(gi)]);
        std::vector<int> kappa(static_cast<size_t>(2 * m), 0);
        for (int j = 0; j < m; ++j) kappa[static_cast<size_t>(gi * m + j)] = -1;
        const std::vector<int> delta(static_cast<size_t>(m), 1);
        const SchlesingerResult res = schlesinger_action(A, groups.flattened(), kappa, delta);
        // R(z) = z - B_i means the constant part of the composed multiplier is -B_i
        const cx z0{0.37, 0.19};
        const cmat R0 = eval_composed(res.moves, z0) - z0 * cmat::Identity(m, m);
        worst = std::max(worst, (R0 + Bi).norm());
    }
    report(4, "unit group shift multiplier equals z - B_i (<=1e-8)", worst <= 1e-8, worst);
}

// 5. Difference Schlesinger residuals and spectra law along trajectories.
void criterion_5() {
    double worst_eq = 0, worst_sp = 0;
    for (const DeskCase& c : desk_cases(5)) {
        Rng rng(c.seed + 5000);
        const DivisorState s = random_divisor_state(rng, c.m, c.n);
        LatticePoint target(static_cast<size_t>(c.n));
        for (int i = 0; i < c.n; ++i) target[static_cast<size_t>(i)] = (i % 2 ? -3 : 3);
        const auto path = divisor_flow_path(s, target);
        const ResidualReport rep = check_residuals(path);
        worst_eq = std::max({worst_eq, rep.exchange_additive, rep.exchange_multiplicative, rep.diagonal_rule, rep.exchange_product});
        worst_sp = std::max(worst_sp, rep.spectra);
    }
    const bool pass = worst_eq <= 1e-8 && worst_sp <= 1e-6;
    report(5, "lattice flow residuals <= 1e-8 and spectra shift law <= 1e-6", pass,
           std::max(worst_eq, worst_sp));
}

// 6. Route equivalence between the two flow constructions.
void criterion_6() {
    double worst = 0;
    for (const DeskCase& c : desk_cases(5)) {
        Rng rng(c.seed + 6000);
        const FactorState fs = random_factor_state(rng, c.m, c.n);
        const DivisorState ds = b_from_c(fs, LatticePoint(static_cast<size_t>(c.n), 0));
        LatticePoint k(static_cast<size_t>(c.n));
        for (int i = 0; i < c.n; ++i) k[static_cast<size_t>(i)] = (i % 2 ? -2 : 3);
        const DivisorState via_b = divisor_flow(ds, k);
        const DivisorState via_c = b_from_c(fs, k);
        for (int i = 0; i < c.n; ++i)
            worst = std::max(worst, (via_b.B[static_cast<size_t>(i)] - via_c.B[static_cast<size_t>(i)]).norm() /
                                        std::max(1.0, via_b.B[static_cast<size_t>(i)].norm()));
    }
    report(6, "divisor-flow route equals factor-flow route (<=1e-7)", worst <= 1e-7, worst);
}

// 7. Commutativity, additivity, exchange identity, telescope.
void criterion_7() {
    double worst_comm = 0, worst_exch = 0, worst_tel = 0;
    for (const DeskCase& c : desk_cases(5)) {
        Rng rng(c.seed + 7000);
        const FactorState fs = random_factor_state(rng, c.m, c.n);
        const FactorSequence seq(fs.A0, fs.C, fs.variant);
        for (int i = 1; i <= c.n; ++i)
            for (int j = i + 1; j <= c.n; ++j) {
                const FactorSequence ij = flow_F(flow_F(seq, j), i);
                const FactorSequence ji = flow_F(flow_F(seq, i), j);
                for (int t = 0; t < c.n; ++t)
                    worst_comm = std::max(worst_comm, (ij.base_factor(t) - ji.base_factor(t)).norm());
            }
        // window telescope
        FactorSequence cur = seq;
        for (int l = c.n; l >= 1; --l) cur = flow_F(cur, l);
        for (long k = 1; k <= c.n; ++k)
            worst_tel = std::max(worst_tel, (cur.factor_at(k) - seq.factor_at(k - c.n)).norm());
        // factor exchange identity with i = 1, j = 2
        if (c.n >= 2) {
            FactorSequence p = seq;
            for (int l = 2; l >= 2; --l) p = flow_F(p, l);
            const FactorSequence qj = flow_F(seq, 2);
            const FactorSequence pi = flow_F(p, 1);
            const cmat I = cmat::Identity(c.m, c.m);
            for (int s = 0; s < 5; ++s) {
                const cx z{0.4 + 0.8 * s, 0.3 - 0.3 * s};
                const cmat lhs = (z * I - qj.factor_at(1)) * (z * I - p.factor_at(2));
                const cmat rhs = (z * I - pi.factor_at(2)) * (z * I - seq.factor_at(1));
                worst_exch = std::max(worst_exch, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
            }
        }
    }
    const bool pass = worst_comm <= 1e-8 && worst_exch <= 1e-9 && worst_tel <= 1e-10;
    report(7, "flows commute (<=1e-8), factor exchange (<=1e-9), telescope (<=1e-10)", pass,
           std::max({worst_comm, worst_exch, worst_tel}));
}

// 8. q-variant conjugation rule and spectral scaling, q = 0.7.
void criterion_8() {
    double worst_rule = 0, worst_sp = 0;
    const Variant v = Variant::q_difference(cx(0.7, 0));
    for (int s = 0; s < 20; ++s) {
        Rng rng(8000 + static_cast<unsigned>(s));
        const int m = 2 + s % 2, n = 2 + (s / 2) % 2;
        const FactorState fs = random_factor_state(rng, m, n, v);
        const DivisorState ds = b_from_c(fs, LatticePoint(static_cast<size_t>(n), 0));
        const DivisorState one = divisor_flow(ds, LatticePoint(static_cast<size_t>(n), 1));
        for (int i = 0; i < n; ++i) {
            const cmat want = ds.A0.fullPivLu().solve(ds.B[static_cast<size_t>(i)] * ds.A0) / v.q;
            worst_rule = std::max(worst_rule, (one.B[static_cast<size_t>(i)] - want).norm() /
                                                  std::max(1.0, want.norm()));
        }
        LatticePoint k(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) k[static_cast<size_t>(i)] = (i % 2 ? -1 : 2);
        const DivisorState far = divisor_flow(ds, k);
        for (int i = 0; i < n; ++i)
            worst_sp = std::max(worst_sp, spectra_dist(far.expected_spectrum(i),
                                                       matrix_spectrum(far.B[static_cast<size_t>(i)])));
    }
    const bool pass = worst_rule <= 1e-10 && worst_sp <= 1e-6;
    report(8, "q-variant: diagonal rule exact (<=1e-10), spectral scaling (<=1e-6)", pass,
           std::max(worst_rule, worst_sp));
}

// 9. Autonomous variant: constant spectra, conserved spectral curve, 100 steps.
// Autonomous orbits can pass near poles of the rational flow map; such
// trajectories abort per the failure policy, so the harness takes the
// first five seeds whose orbits stay bounded for all 100 steps.
void criterion_9() {
    double worst_sp = 0, worst_curve = 0;
    int completed = 0;
    for (unsigned seed = 9000; seed < 9400 && completed < 5; ++seed) {
        Rng rng(seed);
        const int m = 2, n = 2;
        const FactorState fs = random_factor_state(rng, m, n, Variant::autonomous());
        FactorSequence probe(fs.A0, fs.C, fs.variant);
        bool tame = true;
        try {
            for (int step = 0; step < 100; ++step) {
                probe = flow_F(probe, 1 + step % n);
                if (std::max(probe.base_factor(0).norm(), probe.base_factor(1).norm()) > 100) {
                    tame = false;
                    break;
                }
            }
        } catch (const genericity_error&) {
            tame = false;
        }
        if (!tame) continue;
        ++completed;
        FactorSequence seq(fs.A0, fs.C, fs.variant);
        // spectral curve samples det(A(z) - w I) at fixed (z, w) pairs
        const auto curve = [&](const FactorSequence& sq) {
            std::vector<cx> vals;
            MatrixPolynomial A = sq.window_product(1).left_mul(sq.A0());
            for (int t = 0; t < 2 * m * n + 1; ++t) {
                const cx z{-0.9 + 0.41 * t, 0.23 * t - 0.4};
                const cx w{0.31 * t - 0.8, 0.17 + 0.12 * t};
                vals.push_back((A.eval(z) - w * cmat::Identity(m, m)).determinant());
            }
            return vals;
        };
        const auto base_curve = curve(seq);
        const auto base_spectra = [&] {
            std::vector<std::vector<cx>> sp;
            for (int i = 0; i < n; ++i) sp.push_back(matrix_spectrum(seq.base_factor(i)));
            return sp;
        }();
        for (int step = 0; step < 100; ++step) seq = flow_F(seq, 1 + step % n);
        for (int i = 0; i < n; ++i)
            worst_sp = std::max(worst_sp, spectra_dist(base_spectra[static_cast<size_t>(i)],
                                                       matrix_spectrum(seq.base_factor(i))));
        const auto end_curve = curve(seq);
        for (size_t t = 0; t < base_curve.size(); ++t)
            worst_curve = std::max(worst_curve, std::abs(end_curve[t] - base_curve[t]) /
                                                    std::max(1.0, std::abs(base_curve[t])));
    }
    const bool pass = completed == 5 && worst_sp <= 1e-8 && worst_curve <= 1e-8;
    report(9, "autonomous: spectra constant and spectral curve conserved over 100 steps (<=1e-8)",
           pass, std::max(worst_sp, worst_curve));
}

// 10. Conjecture 5.1 harness: empirical first-order rate window.
void criterion_10() {
    bool pass = true;
    double worst_ratio_dev = 0;
    for (int s = 0; s < 5; ++s) {
        Rng rng(10000 + static_cast<unsigned>(s));
        const ContinuousSystem sys = random_continuous_system(rng, 2, 2, true);
        EmbeddingConfig cfg;
        cfg.epsilon = 0.1;
        cfg.y = sys.x;
        // targets on the coarsest epsilon lattice keep [x / eps] exact at
        // every halving; otherwise the floor's fractional remainder (an
        // O(1) multiple of the identity) buries the rate
        const std::vector<double> x_target{0.3, 0.2};
        const auto rows = limit_compare(sys, cfg, x_target, 3);
        // rows: per epsilon level, per i
        for (int lvl = 0; lvl + 1 <= 3; ++lvl) {
            const double e0 = std::max(rows[static_cast<size_t>(2 * lvl)].error,
                                       rows[static_cast<size_t>(2 * lvl + 1)].error);
            const double e1 = std::max(rows[static_cast<size_t>(2 * lvl + 2)].error,
                                       rows[static_cast<size_t>(2 * lvl + 3)].error);
            const double ratio = e0 / e1;
            worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 2.0));
            if (!(ratio >= 1.6 && ratio <= 2.4)) pass = false;
        }
    }
    report(10, "continuum limit: error(eps)/error(eps/2) in [1.6, 2.4] over 3 halvings", pass,
           worst_ratio_dev);
}

// 11. Transformation limit: unit-shift identity and monotone convergence.
void criterion_11() {
    double worst_unit = 0;
    bool pass = true;
    for (int s = 0; s < 5; ++s) {
        Rng rng(11000 + static_cast<unsigned>(s));
        const ContinuousSystem sys = random_continuous_system(rng, 2, 2, true);
        // unit shift case: B~_i = B_i +- I exactly
        for (int sign : {+1, -1}) {
            std::vector<ElementaryLambda> moves;
            for (int j = 0; j < 2; ++j) moves.push_back({0, j, j, sign});
            const ContinuousTransform ct = schlesinger_transform_continuous(sys, moves);
            const cmat want = sys.B[0] + static_cast<double>(sign) * cmat::Identity(2, 2);
            worst_unit = std::max(worst_unit, (ct.sys.B[0] - want).norm());
            worst_unit = std::max(worst_unit, (ct.sys.B[1] - sys.B[1]).norm());
        }
        // general elementary data: Delta-conjugated errors decrease monotonically
        EmbeddingConfig cfg;
        cfg.epsilon = 0.1;
        cfg.y = sys.x;
        const std::vector<std::vector<int>> lp{{1, 0}, {0, 0}};
        const std::vector<int> li{-1, 0};
        const auto rows = transform_limit_check(sys, cfg, lp, li, 3);
        for (size_t lvl = 0; lvl + 1 <= 3; ++lvl) {
            const double e0 = std::max(rows[2 * lvl].error, rows[2 * lvl + 1].error);
            const double e1 = std::max(rows[2 * lvl + 2].error, rows[2 * lvl + 3].error);
            if (!(e1 < e0)) pass = false;
            if (!(rows[2 * lvl + 2].multiplier_gap < rows[2 * lvl].multiplier_gap)) pass = false;
        }
    }
    pass = pass && worst_unit <= 1e-9;
    report(11, "transformation limit: unit shift exact (<=1e-9), errors and blocks monotone", pass,
           worst_unit);
}

// 12. Formal series residual decay at K = 3.
void criterion_12() {
    bool pass = true;
    double worst = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(12000 + static_cast<unsigned>(s));
        const int m = 2 + s % 2, n = 2 + (s / 2) % 2;
        const auto [A, groups] = random_polynomial(rng, m, n);
        const FormalSolutionData f = formal_series(A, 3);
        const double r3 = formal_residual_at(A, f, cx(1e3, 0));
        const double r4 = formal_residual_at(A, f, cx(1e4, 0));
        const double ratio = r3 / r4;
        worst = std::max(worst, r3);
        if (!(ratio >= 0.5e3)) pass = false;
    }
    report(12, "formal series truncation residual decays like z^{-4} between z=1e3 and z=1e4", pass,
           worst);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%s: %d criterion failure(s)\n", g_failures ? "FAIL" : "PASS", g_failures);
    return g_failures;
}
