#include "isomono/refactor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <numeric>
#include <sstream>

namespace isomono {

namespace {

cmat invert_guarded(const cmat& M, double cond_bound, const char* role) {
    Eigen::JacobiSVD<cmat> svd(M);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0) || sv(0) / smin > cond_bound) {
        std::ostringstream os;
        os << role << ": matrix is numerically singular (cond > " << cond_bound << ")";
        throw genericity_error(os.str());
    }
    return M.fullPivLu().inverse();
}

void require_gap(const cmat& X, const cmat& Y, const Tolerances& tol, const char* role) {
    const double scale = std::max({1.0, X.norm(), Y.norm()});
    if (spectra_gap(X, Y) <= tol.congruence * scale) {
        std::ostringstream os;
        os << role << ": spectra of the two factors overlap";
        throw genericity_error(os.str());
    }
}

}  // namespace

double spectra_gap(const cmat& X, const cmat& Y) {
    const auto sx = matrix_spectrum(X);
    const auto sy = matrix_spectrum(Y);
    double gap = std::numeric_limits<double>::infinity();
    for (cx a : sx)
        for (cx b : sy) gap = std::min(gap, std::abs(a - b));
    return gap;
}

SwapResult swap_adjacent(const cmat& X, const cmat& Y, const Tolerances& tol) {
    const int m = static_cast<int>(X.rows());
    require_gap(X, Y, tol, "swap_adjacent");
    // Y L - L X = I as an m^2 x m^2 system in vec(L), columns stacked.
    cmat K = cmat::Zero(m * m, m * m);
    for (int c = 0; c < m; ++c) K.block(c * m, c * m, m, m) += Y;
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) {
            // -(X^t (x) I): block (c, r) gets -X(r, c) * I
            for (int d = 0; d < m; ++d) K(c * m + d, r * m + d) -= X(r, c);
        }
    cvec rhs = cvec::Zero(m * m);
    for (int i = 0; i < m; ++i) rhs(i * m + i) = 1;
    Eigen::FullPivLU<cmat> lu(K);
    if (!lu.isInvertible()) throw genericity_error("swap_adjacent: Sylvester system is singular");
    const cvec vecL = lu.solve(rhs);
    cmat L(m, m);
    for (int c = 0; c < m; ++c) L.col(c) = vecL.segment(c * m, m);
    const cmat Linv = invert_guarded(L, tol.sylvester_condition, "swap_adjacent (Lambda)");
    return {X + Linv, Y - Linv};
}

SwapResult swap_adjacent_2x2(const cmat& X, const cmat& Y, const Tolerances& tol) {
    if (X.rows() != 2 || Y.rows() != 2) throw invalid_input("swap_adjacent_2x2: m must be 2");
    const cmat I = cmat::Identity(2, 2);
    const cmat Gs = X + Y - Y.trace() * I;
    const cmat Gt = X + Y - X.trace() * I;
    const cmat Gsi = invert_guarded(Gs, tol.sylvester_condition, "swap_adjacent_2x2 (S conjugator)");
    const cmat Gti = invert_guarded(Gt, tol.sylvester_condition, "swap_adjacent_2x2 (T conjugator)");
    return {Gs * Y * Gsi, Gti * X * Gt};
}

SwapResult swap_via_eigen(const cmat& X, const cmat& Y, const Tolerances& tol) {
    const int m = static_cast<int>(X.rows());
    require_gap(X, Y, tol, "swap_via_eigen");
    if (m == 1) return {Y, X};
    const MatrixPolynomial P = MatrixPolynomial::monic_linear(X) * MatrixPolynomial::monic_linear(Y);
    const auto group = matrix_spectrum(X);
    const cmat T = right_divisor(P, group, tol);
    const cmat S = X + Y - T;
    return {S, T};
}

LeftFactors left_factors_from_right(const cmat& Y, const cmat& T, const Tolerances& tol) {
    const cmat D = Y - T;
    const cmat Di = invert_guarded(D, tol.sylvester_condition, "left_factors_from_right");
    return {D * T * Di, D * Y * Di};
}

RightFactors right_factors_from_left(const cmat& X, const cmat& S, const Tolerances& tol) {
    const cmat D = X - S;
    const cmat Di = invert_guarded(D, tol.sylvester_condition, "right_factors_from_left");
    return {Di * S * D, Di * X * D};
}

std::vector<cmat> permute_product(const std::vector<cmat>& factors, const std::vector<int>& sigma,
                                  const Tolerances& tol) {
    const int N = static_cast<int>(factors.size());
    if (static_cast<int>(sigma.size()) != N) throw invalid_input("permute_product: permutation size mismatch");
    {
        std::vector<int> seen(static_cast<size_t>(N), 0);
        for (int s : sigma) {
            if (s < 0 || s >= N || seen[static_cast<size_t>(s)]++)
                throw invalid_input("permute_product: sigma is not a permutation");
        }
    }
    std::vector<cmat> mats = factors;
    std::vector<int> labels(static_cast<size_t>(N));
    std::iota(labels.begin(), labels.end(), 0);
    // bubble the required label into each position, left to right
    for (int p = 0; p < N; ++p) {
        const int want = sigma[static_cast<size_t>(p)];
        int at = p;
        while (labels[static_cast<size_t>(at)] != want) ++at;
        for (int r = at; r > p; --r) {
            const SwapResult sw = swap_adjacent(mats[static_cast<size_t>(r - 1)], mats[static_cast<size_t>(r)], tol);
            mats[static_cast<size_t>(r - 1)] = sw.S;
            mats[static_cast<size_t>(r)] = sw.T;
            std::swap(labels[static_cast<size_t>(r - 1)], labels[static_cast<size_t>(r)]);
        }
    }
    // return indexed by label: out[i] has the spectrum of factors[i]
    std::vector<cmat> out(static_cast<size_t>(N));
    for (int p = 0; p < N; ++p) out[static_cast<size_t>(labels[static_cast<size_t>(p)])] = mats[static_cast<size_t>(p)];
    return out;
}

}  // namespace isomono
