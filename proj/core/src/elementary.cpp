#include "isomono/elementary.hpp"

#include <numeric>
#include <sstream>

namespace isomono {

namespace {

MatrixPolynomial times_z(const MatrixPolynomial& A) {
    std::vector<cmat> c = A.coeffs();
    c.push_back(cmat::Zero(A.dim(), A.dim()));
    return MatrixPolynomial(std::move(c));
}

cmat unit_matrix(int m, int i) {
    cmat E = cmat::Zero(m, m);
    E(i, i) = 1;
    return E;
}

/// A |-> R(z+1) A(z) R^{-1}(z) for closed rational-linear forms, with
/// exact synthetic divisions; the division remainders certify that the
/// result is a polynomial and the top coefficients certify the degree.
MatrixPolynomial rational_conjugate(const MatrixPolynomial& A, const RationalLinear& fwd,
                                    const RationalLinear& inv, const Tolerances& tol) {
    const int n = A.degree();
    const double gate = tol.residual * 1e3;  // remainders are exact up to roundoff

    // G(z) = A(z) R^{-1}(z)
    MatrixPolynomial G = A.right_mul(inv.cst);
    if (inv.lin.norm() > 0) G = G + times_z(A.right_mul(inv.lin));
    if (inv.has_num) {
        double rem = 0;
        const MatrixPolynomial H = divide_scalar_linear(A.right_mul(inv.num), inv.pole, &rem);
        if (rem > gate) throw internal_error("rational_conjugate: A R^{-1} is not a polynomial");
        G = G + H;
    }

    // R(z+1) G(z)
    MatrixPolynomial out = G.left_mul(fwd.lin + fwd.cst);
    if (fwd.lin.norm() > 0) out = out + times_z(G.left_mul(fwd.lin));
    if (fwd.has_num) {
        double rem = 0;
        const MatrixPolynomial H = divide_scalar_linear(G.left_mul(fwd.num), fwd.pole - cx(1, 0), &rem);
        if (rem > gate) throw internal_error("rational_conjugate: R(z+1) A R^{-1} is not a polynomial");
        out = out + H;
    }
    return out.truncated(n, gate);
}

void require_pivot(cx value, double scale, const char* what) {
    if (std::abs(value) <= 1e-8 * std::max(1.0, scale)) {
        std::ostringstream os;
        os << what << " vanishes; the Zariski-open condition fails";
        throw genericity_error(os.str());
    }
}

}  // namespace

MultiplierBlocks elementary_multiplier_blocks(const cvec& v, const cmat& Q, int i) {
    const int m = static_cast<int>(v.size());
    cmat R0 = cmat::Zero(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            if (k == i && l == i) {
                cx acc = 0;
                for (int s = 0; s < m; ++s)
                    if (s != i) acc += Q(i, s) * v(s);
                R0(k, l) = acc / v(i);
            } else if (k == i) {
                R0(k, l) = -Q(i, l);
            } else if (l == i) {
                R0(k, l) = -v(k) / v(i);
            } else {
                R0(k, l) = (k == l) ? cx(1, 0) : cx(0, 0);
            }
        }
    Eigen::RowVectorXcd row(m);
    for (int s = 0; s < m; ++s) row(s) = (s == i) ? cx(1, 0) : Q(i, s);
    const cmat R1 = (v / v(i)) * row;
    return {R0, R1};
}

ElementaryResult elementary_down(const MatrixPolynomial& A, cx a, int i, const Tolerances& tol) {
    const int m = A.dim();
    const cmat Y1 = formal_series(A, 1, tol).Y(1);
    const cvec v = pencil_eigenvector(A, a, tol);
    require_pivot(v(i), 1.0, "elementary_down: v_i");
    const auto [R0, R1] = elementary_multiplier_blocks(v, Y1, i);
    const cmat Ei = unit_matrix(m, i);

    Multiplier R;
    R.kind = Multiplier::Kind::elementary_down;
    R.fwd = {Ei, R0 - a * Ei, false, cmat(), cx{}};
    R.inv = RationalLinear{cmat::Zero(m, m), cmat::Identity(m, m) - Ei, true, R1, a};
    R.det_zeros = {a};

    MatrixPolynomial At = rational_conjugate(A, R.fwd, *R.inv, tol);
    return {std::move(R), std::move(At)};
}

ElementaryResult elementary_up(const MatrixPolynomial& A, cx a, int i, const Tolerances& tol) {
    const int m = A.dim();
    const cmat Y1 = formal_series(A, 1, tol).Y(1);
    const cvec w = left_kernel_vector(A, a, tol);
    require_pivot(w(i), 1.0, "elementary_up: w_i");
    const auto [R0p, R1p] = elementary_multiplier_blocks(w, cmat(-Y1.transpose()), i);
    const cmat Ei = unit_matrix(m, i);

    Multiplier R;
    R.kind = Multiplier::Kind::elementary_up;
    // R(z) = (R')^{-t}(z-1) = I - E_i + R1'^t / (z-1-a)
    R.fwd = {cmat::Zero(m, m), cmat(cmat::Identity(m, m) - Ei), true, cmat(R1p.transpose()), a + cx(1, 0)};
    // R^{-1}(z) = (R')^t(z-1) = E_i (z-1-a) + R0'^t
    R.inv = RationalLinear{Ei, cmat(R0p.transpose() - (a + cx(1, 0)) * Ei), false, cmat(), cx{}};
    R.det_poles = {a + cx(1, 0)};

    MatrixPolynomial At = rational_conjugate(A, R.fwd, *R.inv, tol);
    return {std::move(R), std::move(At)};
}

ElementaryResult elementary_pair_roots(const MatrixPolynomial& A, cx a_down, cx a_up,
                                       const Tolerances& tol) {
    const int m = A.dim();
    const cvec v = pencil_eigenvector(A, a_down, tol);
    const cvec w = left_kernel_vector(A, a_up, tol);
    const cx pairing = (v.transpose() * w)(0);
    require_pivot(pairing, 1.0, "elementary_pair_roots: (v, w)");
    const cmat R0 = ((a_up - a_down + cx(1, 0)) / pairing) * (v * w.transpose());

    Multiplier R;
    R.kind = Multiplier::Kind::paired_roots;
    R.fwd = {cmat::Zero(m, m), cmat::Identity(m, m), true, R0, a_up + cx(1, 0)};
    R.inv = RationalLinear{cmat::Zero(m, m), cmat::Identity(m, m), true, cmat(-R0), a_down};
    R.det_zeros = {a_down};
    R.det_poles = {a_up + cx(1, 0)};

    MatrixPolynomial At = rational_conjugate(A, R.fwd, *R.inv, tol);
    return {std::move(R), std::move(At)};
}

ElementaryResult elementary_pair_exponents(const MatrixPolynomial& A, int i_up, int j_down,
                                           const Tolerances& tol) {
    if (i_up == j_down) throw invalid_input("elementary_pair_exponents: indices must differ");
    const int m = A.dim();
    const int i = i_up, j = j_down;
    const FormalSolutionData f = formal_series(A, 2, tol);
    const cmat& Y1 = f.Y(1);
    const cmat& Y2 = f.Y(2);
    require_pivot(Y1(i, j), std::max(1.0, Y1.norm()), "elementary_pair_exponents: (Yhat_1)_{ij}");

    cmat R0 = cmat::Zero(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            if (k == i && l == i) {
                cx acc = -Y2(i, j);
                for (int s = 0; s < m; ++s)
                    if (s != i) acc += Y1(i, s) * Y1(s, j);
                R0(k, l) = acc / Y1(i, j);
            } else if (k == i && l == j) {
                R0(k, l) = -Y1(i, j);
            } else if (k == i) {
                R0(k, l) = -Y1(i, l);
            } else if (k == j && l == i) {
                R0(k, l) = cx(1, 0) / Y1(i, j);
            } else if (k == j) {
                R0(k, l) = 0;
            } else if (l == i) {
                R0(k, l) = -Y1(k, j) / Y1(i, j);
            } else if (l == j) {
                R0(k, l) = 0;
            } else {
                R0(k, l) = (k == l) ? cx(1, 0) : cx(0, 0);
            }
        }

    const cmat Ei = unit_matrix(m, i);
    const cmat Ej = unit_matrix(m, j);
    // R^{-1}(z) = E_j z + S0; S0 is pinned by two point inversions and
    // cross-checked for linearity.
    const cx z1{3.7, 1.3}, z2{-2.1, 0.9};
    const cmat S0a = (Ei * z1 + R0).fullPivLu().inverse() - Ej * z1;
    const cmat S0b = (Ei * z2 + R0).fullPivLu().inverse() - Ej * z2;
    if ((S0a - S0b).norm() > 1e-8 * std::max(1.0, S0a.norm()))
        throw internal_error("elementary_pair_exponents: inverse is not of the form E_j z + S0");

    Multiplier R;
    R.kind = Multiplier::Kind::paired_exponents;
    R.fwd = {Ei, R0, false, cmat(), cx{}};
    R.inv = RationalLinear{Ej, S0a, false, cmat(), cx{}};

    MatrixPolynomial At = rational_conjugate(A, R.fwd, *R.inv, tol);
    return {std::move(R), std::move(At)};
}

ElementaryResult divisor_shift(const MatrixPolynomial& A, const cmat& B, const Tolerances& tol) {
    const int m = A.dim();
    double rem = 0;
    const MatrixPolynomial Ahat = divide_right_linear(A, B, &rem);
    if (rem > tol.residual * 1e3)
        throw invalid_input("divisor_shift: z - B is not a right divisor of A");
    const cmat I = cmat::Identity(m, m);
    MatrixPolynomial At = MatrixPolynomial::monic_linear(B - I) * Ahat;

    Multiplier R;
    R.kind = Multiplier::Kind::divisor;
    R.fwd = {I, -B, false, cmat(), cx{}};
    R.det_zeros = matrix_spectrum(B);
    return {std::move(R), std::move(At)};
}

namespace {

int pick(const std::vector<int>& vals, bool positive, int start, bool forward) {
    const int n = static_cast<int>(vals.size());
    for (int t = 0; t < n; ++t) {
        const int idx = forward ? (start + t) % n : (start - t % n + n) % n;
        if ((positive && vals[static_cast<size_t>(idx)] > 0) ||
            (!positive && vals[static_cast<size_t>(idx)] < 0))
            return idx;
    }
    return -1;
}

}  // namespace

SchlesingerResult schlesinger_action(const MatrixPolynomial& A, std::vector<cx> roots,
                                     std::vector<int> kappa, std::vector<int> delta,
                                     MoveOrder order, const Tolerances& tol) {
    const int m = A.dim();
    if (roots.size() != kappa.size()) throw invalid_input("schlesinger_action: kappa must align with roots");
    if (static_cast<int>(delta.size()) != m) throw invalid_input("schlesinger_action: delta must have m entries");
    const long balance = std::accumulate(kappa.begin(), kappa.end(), 0L) +
                         std::accumulate(delta.begin(), delta.end(), 0L);
    if (balance != 0) throw invalid_input("schlesinger_action: sum kappa + sum delta must vanish");

    const bool fw = order == MoveOrder::forward;
    SchlesingerResult res{A, {}, roots};
    int delta_cursor = fw ? 0 : m - 1;
    int root_cursor = fw ? 0 : static_cast<int>(roots.size()) - 1;

    const auto step_cursor = [&](int& cur, int n) { cur = fw ? (cur + 1) % n : (cur - 1 + n) % n; };

    while (true) {
        const int jd = pick(kappa, false, root_cursor, fw);
        const int ju = pick(kappa, true, root_cursor, fw);
        const int ip = pick(delta, true, delta_cursor, fw);
        const int in = pick(delta, false, delta_cursor, fw);
        if (jd < 0 && ju < 0 && ip < 0 && in < 0) break;

        if (jd >= 0 && ip >= 0) {
            ElementaryResult e = elementary_down(res.A, res.roots[static_cast<size_t>(jd)], ip, tol);
            res.A = std::move(e.A);
            res.moves.push_back(std::move(e.R));
            res.roots[static_cast<size_t>(jd)] -= 1;
            ++kappa[static_cast<size_t>(jd)];
            --delta[static_cast<size_t>(ip)];
            step_cursor(delta_cursor, m);
        } else if (ju >= 0 && in >= 0) {
            ElementaryResult e = elementary_up(res.A, res.roots[static_cast<size_t>(ju)], in, tol);
            res.A = std::move(e.A);
            res.moves.push_back(std::move(e.R));
            res.roots[static_cast<size_t>(ju)] += 1;
            --kappa[static_cast<size_t>(ju)];
            ++delta[static_cast<size_t>(in)];
            step_cursor(delta_cursor, m);
        } else if (jd >= 0 && ju >= 0) {
            ElementaryResult e = elementary_pair_roots(res.A, res.roots[static_cast<size_t>(jd)],
                                                       res.roots[static_cast<size_t>(ju)], tol);
            res.A = std::move(e.A);
            res.moves.push_back(std::move(e.R));
            res.roots[static_cast<size_t>(jd)] -= 1;
            res.roots[static_cast<size_t>(ju)] += 1;
            ++kappa[static_cast<size_t>(jd)];
            --kappa[static_cast<size_t>(ju)];
            step_cursor(root_cursor, static_cast<int>(roots.size()));
        } else if (ip >= 0 && in >= 0) {
            ElementaryResult e = elementary_pair_exponents(res.A, ip, in, tol);
            res.A = std::move(e.A);
            res.moves.push_back(std::move(e.R));
            --delta[static_cast<size_t>(ip)];
            ++delta[static_cast<size_t>(in)];
            step_cursor(delta_cursor, m);
        } else {
            throw internal_error("schlesinger_action: stuck decomposition despite balance");
        }
    }
    return res;
}

}  // namespace isomono
