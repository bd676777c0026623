#include "isomono/divisor_flow.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace isomono {

std::string format_lattice(const LatticePoint& k) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ")";
    return os.str();
}

std::vector<cx> DivisorState::expected_spectrum(int i) const {
    return groups.shifted(i, k.at(static_cast<size_t>(i)), variant);
}

DivisorState make_divisor_state(cmat A0, std::vector<cmat> B, std::vector<std::vector<cx>> groups,
                                Variant variant, const Tolerances& tol) {
    DivisorState s;
    s.A0 = std::move(A0);
    s.B = std::move(B);
    s.variant = variant;
    const int n = static_cast<int>(s.B.size());
    if (n == 0) throw invalid_input("divisor state needs at least one divisor");
    const int m = static_cast<int>(s.B.front().rows());
    Eigen::FullPivLU<cmat> lu(s.A0);
    if (!lu.isInvertible()) throw invalid_input("divisor state: A_0 must be invertible");
    s.groups.m = m;
    s.groups.n = n;
    if (groups.empty()) {
        for (const cmat& Bi : s.B) s.groups.groups.push_back(matrix_spectrum(Bi));
    } else {
        s.groups.groups = std::move(groups);
        for (int i = 0; i < n; ++i)
            match_spectra(s.groups.groups[static_cast<size_t>(i)],
                          matrix_spectrum(s.B[static_cast<size_t>(i)]), tol.spectrum_match);
    }
    validate_groups(s.groups, variant, tol);
    s.k.assign(static_cast<size_t>(n), 0);
    return s;
}

namespace {

cmat diag_move_up(const DivisorState& s, const cmat& B) {
    const cmat conj = s.A0.fullPivLu().solve(B * s.A0);
    switch (s.variant.kind) {
        case VariantKind::difference: return conj - cmat::Identity(B.rows(), B.cols());
        case VariantKind::q_difference: return conj / s.variant.q;
        case VariantKind::autonomous: return conj;
    }
    return conj;
}

cmat diag_move_down(const DivisorState& s, const cmat& B) {
    switch (s.variant.kind) {
        case VariantKind::difference:
            return s.A0 * (B + cmat::Identity(B.rows(), B.cols())) * s.A0.fullPivLu().inverse();
        case VariantKind::q_difference:
            return s.A0 * (s.variant.q * B) * s.A0.fullPivLu().inverse();
        case VariantKind::autonomous:
            return s.A0 * B * s.A0.fullPivLu().inverse();
    }
    return B;
}

/// B_i(k + e_j) = (B_j - B_i) B_i (B_j - B_i)^{-1}, the unique solution
/// of the exchange relation given the two values at k.
cmat single_step_value(const cmat& Bj, const cmat& Bi, const Tolerances& tol, const LatticePoint& at) {
    try {
        return left_factors_from_right(Bj, Bi, tol).X;
    } catch (const genericity_error& e) {
        throw genericity_error(std::string(e.what()) + " at lattice point " + format_lattice(at));
    }
}

}  // namespace

std::vector<std::vector<cmat>> divisor_cube(const DivisorState& s, const Tolerances& tol) {
    const int n = s.order();
    const unsigned full = (1u << n) - 1u;
    std::vector<std::vector<cmat>> cube(1u << n);
    std::vector<std::vector<bool>> have(1u << n, std::vector<bool>(static_cast<size_t>(n), false));

    cube[0] = s.B;
    have[0].assign(static_cast<size_t>(n), true);

    // masks by ascending popcount
    std::vector<unsigned> masks(full + 1);
    for (unsigned msk = 0; msk <= full; ++msk) masks[msk] = msk;
    std::sort(masks.begin(), masks.end(),
              [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });

    // stage 1: values at corners eps for the coordinates outside supp(eps)
    for (unsigned msk : masks) {
        if (msk == full) continue;
        if (cube[msk].empty()) continue;
        for (int j = 0; j < n; ++j) {
            if (msk & (1u << j)) continue;
            const unsigned next = msk | (1u << j);
            if (cube[next].empty()) cube[next].assign(static_cast<size_t>(n), cmat());
            for (int i = 0; i < n; ++i) {
                if (i == j || (next & (1u << i))) continue;
                if (have[next][static_cast<size_t>(i)]) continue;
                cube[next][static_cast<size_t>(i)] = single_step_value(
                    cube[msk][static_cast<size_t>(j)], cube[msk][static_cast<size_t>(i)], tol, s.k);
                have[next][static_cast<size_t>(i)] = true;
            }
            // B_j itself at k + e_j is not produced by stage 1
        }
    }

    // the diagonal corner
    if (cube[full].empty()) cube[full].assign(static_cast<size_t>(n), cmat());
    for (int i = 0; i < n; ++i) {
        cube[full][static_cast<size_t>(i)] = diag_move_up(s, s.B[static_cast<size_t>(i)]);
        have[full][static_cast<size_t>(i)] = true;
    }

    // stage 2, descending popcount: peel zeros off the diagonal corner.
    // B_i(eps) for eps_i = 1 comes from refactoring
    // (z - B_i(eps + e_l)) (z - B_l(eps)) with l the lowest missing bit.
    std::vector<unsigned> desc(masks.rbegin(), masks.rend());
    for (unsigned msk : desc) {
        if (msk == full) continue;
        for (int i = 0; i < n; ++i) {
            if (!(msk & (1u << i)) || have[msk][static_cast<size_t>(i)]) continue;
            int l = -1;
            for (int c = 0; c < n; ++c)
                if (!(msk & (1u << c))) { l = c; break; }
            const unsigned up = msk | (1u << l);
            if (!have[up][static_cast<size_t>(i)] || !have[msk][static_cast<size_t>(l)])
                throw internal_error("divisor_cube: schedule ordering broke");
            try {
                const SwapResult sw = swap_adjacent(cube[up][static_cast<size_t>(i)],
                                                    cube[msk][static_cast<size_t>(l)], tol);
                if (cube[msk].empty()) cube[msk].assign(static_cast<size_t>(n), cmat());
                cube[msk][static_cast<size_t>(i)] = sw.T;
                have[msk][static_cast<size_t>(i)] = true;
            } catch (const genericity_error& e) {
                throw genericity_error(std::string(e.what()) + " at lattice point " + format_lattice(s.k));
            }
        }
    }
    return cube;
}

namespace {

DivisorState at_corner(const DivisorState& base, const std::vector<std::vector<cmat>>& cube,
                       unsigned msk) {
    DivisorState out = base;
    out.B = cube[msk];
    for (int j = 0; j < base.order(); ++j)
        if (msk & (1u << j)) ++out.k[static_cast<size_t>(j)];
    return out;
}

}  // namespace

std::vector<DivisorState> divisor_flow_path(const DivisorState& s, const LatticePoint& target,
                                            const Tolerances& tol) {
    const int n = s.order();
    if (static_cast<int>(target.size()) != n)
        throw invalid_input("divisor_flow: target must have n coordinates");

    std::vector<DivisorState> path{s};
    DivisorState cur = s;

    // diagonal (1,...,1) moves first, so the remaining displacement is
    // nonnegative with at least one zero coordinate
    LatticePoint delta(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        delta[static_cast<size_t>(i)] = target[static_cast<size_t>(i)] - s.k[static_cast<size_t>(i)];
    const long dshift = *std::min_element(delta.begin(), delta.end());

    for (long t = 0; t < dshift; ++t) {
        for (int i = 0; i < n; ++i) {
            cur.B[static_cast<size_t>(i)] = diag_move_up(cur, cur.B[static_cast<size_t>(i)]);
            ++cur.k[static_cast<size_t>(i)];
        }
        path.push_back(cur);
    }
    for (long t = 0; t > dshift; --t) {
        for (int i = 0; i < n; ++i) {
            cur.B[static_cast<size_t>(i)] = diag_move_down(cur, cur.B[static_cast<size_t>(i)]);
            --cur.k[static_cast<size_t>(i)];
        }
        path.push_back(cur);
    }

    // remaining displacement is nonnegative with a zero coordinate
    while (true) {
        LatticePoint rem(static_cast<size_t>(n));
        bool done = true;
        for (int i = 0; i < n; ++i) {
            rem[static_cast<size_t>(i)] = target[static_cast<size_t>(i)] - cur.k[static_cast<size_t>(i)];
            if (rem[static_cast<size_t>(i)] != 0) done = false;
            if (rem[static_cast<size_t>(i)] < 0)
                throw internal_error("divisor_flow: negative residual displacement after diagonal stage");
        }
        if (done) break;
        const auto cube = divisor_cube(cur, tol);
        // walk the layer one coordinate at a time, in index order
        unsigned msk = 0;
        for (int j = 0; j < n; ++j) {
            if (rem[static_cast<size_t>(j)] <= 0) continue;
            msk |= (1u << j);
            path.push_back(at_corner(cur, cube, msk));
        }
        cur = path.back();
    }
    return path;
}

DivisorState divisor_flow(const DivisorState& s, const LatticePoint& target, const Tolerances& tol) {
    return divisor_flow_path(s, target, tol).back();
}

namespace {

double state_scale(const DivisorState& s) {
    double sc = 1.0;
    for (const cmat& B : s.B) sc = std::max(sc, B.norm());
    return sc;
}

}  // namespace

ResidualReport check_residuals(std::span<const DivisorState> trajectory, const Tolerances& tol) {
    ResidualReport rep;
    if (trajectory.size() < 1) return rep;
    const int n = trajectory.front().order();

    for (const DivisorState& s : trajectory) {
        for (int i = 0; i < n; ++i) {
            const auto expect = s.expected_spectrum(i);
            const auto found = matrix_spectrum(s.B[static_cast<size_t>(i)]);
            double worst = 0;
            for (const cx e : expect) {
                double best = std::numeric_limits<double>::infinity();
                for (const cx f : found) best = std::min(best, std::abs(f - e));
                worst = std::max(worst, best);
            }
            rep.spectra = std::max(rep.spectra, worst);
        }
    }

    for (size_t t = 0; t + 1 < trajectory.size(); ++t) {
        const DivisorState& a = trajectory[t];
        const DivisorState& b = trajectory[t + 1];
        LatticePoint d(a.k.size());
        long sum = 0;
        for (size_t i = 0; i < a.k.size(); ++i) {
            d[i] = b.k[i] - a.k[i];
            sum += std::abs(d[i]);
        }
        const double sc = std::max(state_scale(a), state_scale(b));
        const bool diag_up = std::all_of(d.begin(), d.end(), [](long x) { return x == 1; });
        const bool diag_down = std::all_of(d.begin(), d.end(), [](long x) { return x == -1; });
        if (diag_up || diag_down) {
            const DivisorState& lo = diag_up ? a : b;
            const DivisorState& hi = diag_up ? b : a;
            for (int i = 0; i < n; ++i) {
                const cmat want = diag_move_up(lo, lo.B[static_cast<size_t>(i)]);
                rep.diagonal_rule = std::max(rep.diagonal_rule, (hi.B[static_cast<size_t>(i)] - want).norm() / sc);
            }
            continue;
        }
        if (sum != 1) continue;  // non-adjacent states carry no two-point relation
        const bool up = std::any_of(d.begin(), d.end(), [](long x) { return x == 1; });
        const DivisorState& lo = up ? a : b;
        const DivisorState& hi = up ? b : a;
        int j = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(d[static_cast<size_t>(i)]) == 1) j = i;
        // stored B_i(k + e_j) against the exchange relations, with
        // B_j(k + e_i) supplied by the unique solution from the values at k
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const cmat& Bi = lo.B[static_cast<size_t>(i)];
            const cmat& Bj = lo.B[static_cast<size_t>(j)];
            const cmat& Xi = hi.B[static_cast<size_t>(i)];  // stored B_i(k+e_j)
            const cmat Sj = left_factors_from_right(Bj, Bi, tol).S;  // B_j(k+e_i)
            rep.exchange_additive = std::max(rep.exchange_additive, ((Bi - Xi) - (Bj - Sj)).norm() / sc);
            rep.exchange_multiplicative = std::max(rep.exchange_multiplicative, (Sj * Bi - Xi * Bj).norm() / (sc * sc));
            // quadratic identity (z-Xi)(z-Bj) = (z-Sj)(z-Bi)
            const double c1 = ((Xi + Bj) - (Sj + Bi)).norm() / sc;
            const double c0 = (Xi * Bj - Sj * Bi).norm() / (sc * sc);
            rep.exchange_product = std::max(rep.exchange_product, std::max(c1, c0));
        }
    }
    return rep;
}

}  // namespace isomono
