#include "isomono/formal.hpp"

#include <cmath>

namespace isomono {

namespace {

struct Structure {
    bool a0_diagonal_distinct = false;  // distinct-eigenvalue leading coefficient
    bool a0_identity_a1_diag = false;   // identity leading coefficient, diagonal A_1
    cvec rho;
};

Structure classify(const MatrixPolynomial& A, const Tolerances& tol) {
    const int m = A.dim();
    const cmat& A0 = A.leading();
    const double s = std::max(1.0, A.scale());
    Structure st;
    st.rho = A0.diagonal();

    const double offdiag = (A0 - cmat(A0.diagonal().asDiagonal())).norm();
    if (offdiag > 1e-12 * s)
        throw invalid_input("formal series: A_0 must be diagonal (conjugate the system first)");

    double min_gap = std::numeric_limits<double>::infinity();
    double min_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        min_abs = std::min(min_abs, std::abs(st.rho(i)));
        for (int j = i + 1; j < m; ++j) min_gap = std::min(min_gap, std::abs(st.rho(i) - st.rho(j)));
    }
    if (min_abs <= 1e-12 * s) throw invalid_input("formal series: A_0 has a (near) zero eigenvalue");

    if (m == 1 || min_gap > tol.congruence * s) {
        st.a0_diagonal_distinct = true;
        return st;
    }

    // repeated rho: only the A_0 = I, A_1 diagonal, non-resonant case is supported
    if ((A0 - cmat::Identity(m, m)).norm() > 1e-12 * s)
        throw invalid_input("formal series: repeated eigenvalues of a non-identity A_0 are unsupported");
    if (A.degree() < 1) {
        st.a0_identity_a1_diag = true;
        return st;
    }
    const cmat& A1 = A.coeff(1);
    if ((A1 - cmat(A1.diagonal().asDiagonal())).norm() > 1e-12 * s)
        throw invalid_input("formal series: A_0 = I requires a diagonal A_1");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const cx diff = A1(i, i) - A1(j, j);
            if (std::abs(diff) > tol.congruence && integer_distance(diff) <= tol.congruence)
                throw invalid_input("formal series: resonant diagonal of A_1 (entries differ by a nonzero integer)");
        }
    st.a0_identity_a1_diag = true;
    return st;
}

/// coefficients of (1+w)^alpha up to order L (generalized binomial)
std::vector<cx> binomial_series(cx alpha, int L) {
    std::vector<cx> c(static_cast<size_t>(L) + 1);
    c[0] = 1;
    for (int t = 1; t <= L; ++t)
        c[static_cast<size_t>(t)] = c[static_cast<size_t>(t - 1)] * (alpha - cx(t - 1, 0)) / cx(t, 0);
    return c;
}

/// truncated product of matrix series (coefficients of w^l)
std::vector<cmat> series_mul(const std::vector<cmat>& a, const std::vector<cmat>& b, int L, int m) {
    std::vector<cmat> c(static_cast<size_t>(L) + 1, cmat::Zero(m, m));
    for (int s = 0; s <= L && s < static_cast<int>(a.size()); ++s)
        for (int t = 0; t + s <= L && t < static_cast<int>(b.size()); ++t)
            c[static_cast<size_t>(s + t)] += a[static_cast<size_t>(s)] * b[static_cast<size_t>(t)];
    return c;
}

/// Both sides of the reduced identity as series in w = 1/z:
///   L(w) = Yhat(z+1) diag(rho_i (1+w)^{dred_i}),  R(w) = M(w) Yhat(z),
/// where M(w) = A_0 + A_1 w + ... + A_n w^n and
/// Yhat(z+1) = sum_j Yhat_j w^j (1+w)^{-j}.
struct Sides {
    std::vector<cmat> lhs, rhs;
};

Sides assemble(const MatrixPolynomial& A, const std::vector<cmat>& Yhat, const cvec& rho,
               const cvec& dred, int L) {
    const int m = A.dim();
    // Yhat(z) as a plain series
    std::vector<cmat> Yz(Yhat.begin(), Yhat.begin() + std::min<size_t>(Yhat.size(), static_cast<size_t>(L) + 1));
    // Yhat(z+1): w^j (1+w)^{-j}
    std::vector<cmat> Yz1(static_cast<size_t>(L) + 1, cmat::Zero(m, m));
    for (int j = 0; j <= L && j < static_cast<int>(Yhat.size()); ++j) {
        const auto bin = binomial_series(cx(-j, 0), L - j);
        for (int t = 0; j + t <= L; ++t) Yz1[static_cast<size_t>(j + t)] += Yhat[static_cast<size_t>(j)] * bin[static_cast<size_t>(t)];
    }
    // diagonal factor diag(rho_i (1+w)^{dred_i})
    std::vector<cmat> D(static_cast<size_t>(L) + 1, cmat::Zero(m, m));
    for (int i = 0; i < m; ++i) {
        const auto bin = binomial_series(dred(i), L);
        for (int t = 0; t <= L; ++t) D[static_cast<size_t>(t)](i, i) = rho(i) * bin[static_cast<size_t>(t)];
    }
    Sides s;
    s.lhs = series_mul(Yz1, D, L, m);
    // M(w): coefficient of w^k is A_k
    std::vector<cmat> M;
    M.reserve(static_cast<size_t>(A.degree()) + 1);
    for (int k = 0; k <= A.degree(); ++k) M.push_back(A.coeff(k));
    s.rhs = series_mul(M, Yz, L, m);
    return s;
}

}  // namespace

cvec formal_exponents(const MatrixPolynomial& A, const Tolerances& tol) {
    const Structure st = classify(A, tol);
    const int m = A.dim();
    cvec d(m);
    for (int i = 0; i < m; ++i) {
        const cx a1 = A.degree() >= 1 ? A.coeff(1)(i, i) : cx(0, 0);
        d(i) = a1 / st.rho(i) + 0.5 * A.degree();
    }
    return d;
}

FormalSolutionData formal_series(const MatrixPolynomial& A, int K, const Tolerances& tol) {
    if (K < 1) throw invalid_input("formal_series: truncation order K must be >= 1");
    const Structure st = classify(A, tol);
    const int m = A.dim();
    const int Lmax = K + 1;
    const double s = std::max(1.0, A.scale());

    std::vector<cmat> Yhat(static_cast<size_t>(Lmax) + 1, cmat::Zero(m, m));
    Yhat[0] = cmat::Identity(m, m);
    cvec dred = cvec::Zero(m);
    if (st.a0_identity_a1_diag && A.degree() >= 1) dred = A.coeff(1).diagonal();

    const auto order_coeff = [&](int l) -> cmat {
        const Sides sides = assemble(A, Yhat, st.rho, dred, l);
        return sides.rhs[static_cast<size_t>(l)] - sides.lhs[static_cast<size_t>(l)];
    };

    for (int l = 1; l <= Lmax; ++l) {
        if (st.a0_diagonal_distinct) {
            if (l == 1) {
                const cmat E = order_coeff(1);
                for (int i = 0; i < m; ++i) dred(i) = E(i, i) / st.rho(i);
            } else {
                const cmat E = order_coeff(l);
                for (int i = 0; i < m; ++i)
                    Yhat[static_cast<size_t>(l - 1)](i, i) = -E(i, i) / (cx(l - 1, 0) * st.rho(i));
            }
            const cmat E = order_coeff(l);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j) continue;
                    const cx gap = st.rho(j) - st.rho(i);
                    if (std::abs(gap) <= tol.congruence * s)
                        throw invalid_input("formal_series: repeated rho encountered in the recursion");
                    Yhat[static_cast<size_t>(l)](i, j) = E(i, j) / gap;
                }
        } else {
            // identity-A_0 case: the full Yhat_{l-1} is determined at order l >= 2
            if (l >= 2) {
                const cmat E = order_coeff(l);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        const cx coeff = dred(i) - dred(j) + cx(l - 1, 0);
                        if (std::abs(coeff) <= tol.congruence)
                            throw invalid_input("formal_series: resonance in the A_0 = I recursion");
                        Yhat[static_cast<size_t>(l - 1)](i, j) = -E(i, j) / coeff;
                    }
            } else {
                const cmat E = order_coeff(1);
                if (E.norm() > 1e-8 * s)
                    throw internal_error("formal_series: order-1 identity violated in the A_0 = I case");
            }
        }
    }

    FormalSolutionData out;
    out.rho = st.rho;
    out.K = K;
    out.d = dred.array() + 0.5 * A.degree();
    out.Yhat.assign(Yhat.begin() + 1, Yhat.begin() + 1 + K);
    return out;
}

std::vector<double> formal_order_residuals(const MatrixPolynomial& A, const FormalSolutionData& f) {
    const int m = A.dim();
    const cvec dred = f.d_reduced(A.degree());
    std::vector<cmat> Yhat;
    Yhat.reserve(f.Yhat.size() + 1);
    Yhat.push_back(cmat::Identity(m, m));
    Yhat.insert(Yhat.end(), f.Yhat.begin(), f.Yhat.end());
    const Sides sides = assemble(A, Yhat, f.rho, dred, f.K);
    const double s = std::max(1.0, A.scale());
    std::vector<double> res(static_cast<size_t>(f.K) + 1);
    for (int l = 0; l <= f.K; ++l)
        res[static_cast<size_t>(l)] =
            (sides.rhs[static_cast<size_t>(l)] - sides.lhs[static_cast<size_t>(l)]).norm() / s;
    return res;
}

double formal_residual_at(const MatrixPolynomial& A, const FormalSolutionData& f, cx z) {
    const int m = A.dim();
    const cvec dred = f.d_reduced(A.degree());
    cmat Yz = cmat::Identity(m, m);
    cmat Yz1 = cmat::Identity(m, m);
    for (int j = 1; j <= f.K; ++j) {
        Yz += f.Y(j) / std::pow(z, j);
        Yz1 += f.Y(j) / std::pow(z + cx(1, 0), j);
    }
    cmat D = cmat::Zero(m, m);
    for (int i = 0; i < m; ++i) D(i, i) = f.rho(i) * std::pow((z + cx(1, 0)) / z, dred(i));
    const cmat lhs = Yz1 * D;
    const cmat rhs = A.eval(z) * std::pow(z, -A.degree()) * Yz;
    return (rhs - lhs).norm();
}

}  // namespace isomono
