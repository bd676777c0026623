#ifndef ISOMONO_FORMAL_HPP
#define ISOMONO_FORMAL_HPP

#include <vector>

#include "isomono/matrix_polynomial.hpp"

namespace isomono {

/// Data of the formal solution at infinity: the diagonal entries rho of
/// A_0 (or ones), the characteristic exponents d, and the series
/// coefficients Yhat_1..Yhat_K of the reduced equation
///   W(z+1) = z^{-n} A(z) W(z),  W(z) = Yhat(z) diag(rho_i^z z^{d_i - n/2}).
/// The stored d follows the convention rho_i (d_i - n/2) = (A_1)_{ii}.
struct FormalSolutionData {
    cvec rho;
    cvec d;
    std::vector<cmat> Yhat;  // Yhat[j-1] is the order-j coefficient
    int K = 0;

    const cmat& Y(int j) const { return Yhat.at(static_cast<size_t>(j - 1)); }
    /// exponents of the reduced (degree-zero) equation, d - n/2
    cvec d_reduced(int n) const { return d.array() - 0.5 * n; }
};

/// d_i = (A_1)_{ii} / rho_i + n/2. Requires A_0 diagonal with distinct
/// nonzero entries, or A_0 = I with A_1 diagonal.
cvec formal_exponents(const MatrixPolynomial& A,
                      const Tolerances& tol = default_tolerances());

/// Runs the order-by-order recursion for the reduced equation up to
/// order K+1 so that Yhat_1..Yhat_K are fully determined.
FormalSolutionData formal_series(const MatrixPolynomial& A, int K,
                                 const Tolerances& tol = default_tolerances());

/// Residuals of the coefficient identities, order by order (0..K),
/// normalized by the polynomial scale.
std::vector<double> formal_order_residuals(const MatrixPolynomial& A,
                                           const FormalSolutionData& f);

/// Frobenius norm of the defining identity evaluated at a concrete z
/// with the series truncated at K; decays like z^{-(K+1)}.
double formal_residual_at(const MatrixPolynomial& A, const FormalSolutionData& f, cx z);

}  // namespace isomono

#endif
