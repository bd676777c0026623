#include "isomono/generate.hpp"

#include <cmath>
#include <numbers>

namespace isomono {

namespace {

double unit(Rng& rng) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

}  // namespace

cmat random_matrix(Rng& rng, int m, double scale) {
    cmat M(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) M(r, c) = scale * cx(unit(rng), unit(rng));
    return M;
}

cmat random_conjugator(Rng& rng, int m, double c) {
    while (true) {
        const cmat G = cmat::Identity(m, m) + random_matrix(rng, m, c);
        if (std::abs(G.determinant()) > 0.1) return G;
    }
}

SpectrumGroups random_groups(Rng& rng, int m, int n, const Variant& v) {
    SpectrumGroups g;
    g.m = m;
    g.n = n;
    g.groups.assign(static_cast<size_t>(n), {});
    const int mn = m * n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const int slot = i * m + j;
            cx a;
            if (v.kind == VariantKind::q_difference) {
                // distinct phase slots: ratios never land on q^t for real positive q
                const double theta =
                    2.0 * std::numbers::pi * (slot + 0.5 + 0.2 * unit(rng)) / static_cast<double>(mn);
                const double r = 1.0 + 0.25 * unit(rng);
                a = std::polar(r, theta);
            } else {
                // imaginary-part slots keep integer differences at distance >= ~0.3
                const double im = 0.35 * (slot + 1) + 0.05 * unit(rng);
                a = cx(unit(rng), im);
            }
            g.groups[static_cast<size_t>(i)].push_back(a);
        }
    return g;
}

cmat random_diagonal_A0(Rng& rng, int m) {
    cmat A0 = cmat::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double theta = std::numbers::pi * (i + 0.3 + 0.2 * unit(rng)) / (m + 1);
        const double r = 1.0 + 0.3 * unit(rng);
        A0(i, i) = std::polar(r, theta);
    }
    return A0;
}

namespace {

std::vector<cmat> matrices_with_groups(Rng& rng, const SpectrumGroups& g) {
    std::vector<cmat> out;
    out.reserve(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        cmat D = cmat::Zero(g.m, g.m);
        for (int j = 0; j < g.m; ++j) D(j, j) = g.groups[static_cast<size_t>(i)][static_cast<size_t>(j)];
        const cmat G = random_conjugator(rng, g.m);
        out.push_back(G * D * G.fullPivLu().inverse());
    }
    return out;
}

cmat pick_A0(Rng& rng, int m, bool diagonal) {
    if (diagonal) return random_diagonal_A0(rng, m);
    while (true) {
        const cmat A0 = cmat::Identity(m, m) + random_matrix(rng, m, 0.35);
        if (std::abs(A0.determinant()) > 0.2) return A0;
    }
}

}  // namespace

DivisorState random_divisor_state(Rng& rng, int m, int n, Variant v, bool diagonal_A0,
                                  const Tolerances& tol) {
    const SpectrumGroups g = random_groups(rng, m, n, v);
    return make_divisor_state(pick_A0(rng, m, diagonal_A0), matrices_with_groups(rng, g), g.groups, v, tol);
}

FactorState random_factor_state(Rng& rng, int m, int n, Variant v, bool diagonal_A0,
                                const Tolerances& tol) {
    const SpectrumGroups g = random_groups(rng, m, n, v);
    return make_factor_state(pick_A0(rng, m, diagonal_A0), matrices_with_groups(rng, g), g.groups, v, tol);
}

RandomPolynomial random_polynomial(Rng& rng, int m, int n, const Tolerances& tol) {
    const SpectrumGroups g = random_groups(rng, m, n, Variant::difference());
    const cmat A0 = random_diagonal_A0(rng, m);
    const std::vector<cmat> divisors = matrices_with_groups(rng, g);
    return {from_right_divisors(A0, divisors, g.groups, tol), g};
}

ContinuousSystem random_continuous_system(Rng& rng, int m, int n, bool with_Binf,
                                          const Tolerances& tol) {
    // residue eigenvalues on separated imaginary slots, like random_groups
    const SpectrumGroups g = random_groups(rng, m, n, Variant::difference());
    std::vector<cmat> B = matrices_with_groups(rng, g);
    for (cmat& Bk : B) Bk *= 0.5;
    std::vector<cx> x(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) x[static_cast<size_t>(k)] = cx(1.0 + 1.3 * k + 0.2 * unit(rng), 0.0);
    std::optional<cmat> Binf;
    if (with_Binf) {
        cmat D = cmat::Zero(m, m);
        for (int i = 0; i < m; ++i) D(i, i) = cx(0.7 * (i + 1) + 0.1 * unit(rng), 0.3 * unit(rng));
        Binf = D;
    }
    return ContinuousSystem::make(std::move(Binf), std::move(B), std::move(x), tol);
}

}  // namespace isomono
