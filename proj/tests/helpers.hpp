#ifndef ISOMONO_TEST_HELPERS_HPP
#define ISOMONO_TEST_HELPERS_HPP

#include <complex>
#include <vector>

#include "isomono/generate.hpp"
#include "isomono/matrix_polynomial.hpp"

namespace isomono::test {

inline cmat mat2(cx a, cx b, cx c, cx d) {
    cmat M(2, 2);
    M << a, b, c, d;
    return M;
}

inline cmat diag2(cx a, cx b) { return mat2(a, 0, 0, b); }

inline double rel(const cmat& got, const cmat& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
}

/// max relative coefficient difference of two polynomials
inline double poly_diff(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    if (a.degree() != b.degree()) return 1e300;
    double worst = 0;
    const double sc = std::max(1.0, std::max(a.scale(), b.scale()));
    for (int k = 0; k <= a.degree(); ++k) worst = std::max(worst, (a.coeff(k) - b.coeff(k)).norm() / sc);
    return worst;
}

/// relative residual of (z-X)(z-Y) = (z-S)(z-T) at sample points
inline double product_identity_residual(const cmat& X, const cmat& Y, const cmat& S, const cmat& T,
                                        int samples = 5) {
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
        const cx z = cx(0.37 + 1.1 * s, 0.21 - 0.4 * s);
        const int m = static_cast<int>(X.rows());
        const cmat I = cmat::Identity(m, m);
        const cmat lhs = (z * I - X) * (z * I - Y);
        const cmat rhs = (z * I - S) * (z * I - T);
        worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
    }
    return worst;
}

/// multiset distance of two spectra (greedy matching)
inline double spectra_distance(std::vector<cx> a, std::vector<cx> b) {
    double worst = 0;
    for (const cx v : a) {
        double best = 1e300;
        size_t arg = 0;
        for (size_t i = 0; i < b.size(); ++i)
            if (std::abs(b[i] - v) < best) {
                best = std::abs(b[i] - v);
                arg = i;
            }
        if (b.empty()) return 1e300;
        b.erase(b.begin() + static_cast<long>(arg));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace isomono::test

#endif
