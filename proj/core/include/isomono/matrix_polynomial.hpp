#ifndef ISOMONO_MATRIX_POLYNOMIAL_HPP
#define ISOMONO_MATRIX_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "isomono/types.hpp"

namespace isomono {

/// A(z) = A_0 z^n + A_1 z^{n-1} + ... + A_n with square complex
/// coefficients. coeff(0) is the leading coefficient A_0.
class MatrixPolynomial {
public:
    explicit MatrixPolynomial(std::vector<cmat> coeffs);

    /// z*I - B
    static MatrixPolynomial monic_linear(const cmat& B);
    /// the constant polynomial A_0
    static MatrixPolynomial constant(const cmat& A0);

    int dim() const { return m_; }
    int degree() const { return n_; }
    const cmat& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    const std::vector<cmat>& coeffs() const { return coeffs_; }
    const cmat& leading() const { return coeffs_.front(); }

    /// Horner evaluation of A(z).
    cmat eval(cx z) const;

    /// max_k ||A_k||_F, the scale used to normalize residuals
    double scale() const;

    MatrixPolynomial operator+(const MatrixPolynomial& rhs) const;
    MatrixPolynomial operator*(const MatrixPolynomial& rhs) const;
    /// A(z) |-> A(z + shift)
    MatrixPolynomial shifted(cx shift) const;
    /// Multiply every coefficient by M on the left/right.
    MatrixPolynomial left_mul(const cmat& M) const;
    MatrixPolynomial right_mul(const cmat& M) const;

    /// Drop leading coefficients of norm <= tol * scale; errors if a
    /// dropped coefficient is larger than that.
    MatrixPolynomial truncated(int target_degree, double tol) const;

private:
    int m_;
    int n_;
    std::vector<cmat> coeffs_;
};

/// Coefficients of the scalar polynomial det A(z), constant term first
/// (ascending powers). Computed by evaluation at scaled roots of unity
/// followed by an inverse DFT. The last entry equals det A_0.
std::vector<cx> det_poly(const MatrixPolynomial& A);

/// Evaluate a scalar polynomial given in ascending order.
cx eval_scalar_poly(std::span<const cx> coeffs, cx z);

/// The mn roots of det A(z) = 0, computed as eigenvalues of the block
/// companion linearization of A_0^{-1} A(z). Requires det A_0 != 0.
std::vector<cx> eigenvalues(const MatrixPolynomial& A,
                            const Tolerances& tol = default_tolerances());

/// Unit kernel vector of A(a) for a simple eigenvalue a, normalized so
/// the coordinate of largest modulus is real positive. Simplicity is
/// tested on the two smallest singular values of A(a).
cvec pencil_eigenvector(const MatrixPolynomial& A, cx a,
                        const Tolerances& tol = default_tolerances());

/// Kernel vector of A^t(a), same contract as pencil_eigenvector.
cvec left_kernel_vector(const MatrixPolynomial& A, cx a,
                        const Tolerances& tol = default_tolerances());

/// The matrix B with B v_j = a_j v_j over the pencil eigenvectors of the
/// given eigenvalue group, so that z - B is a right divisor of A.
cmat right_divisor(const MatrixPolynomial& A, std::span<const cx> group,
                   const Tolerances& tol = default_tolerances());

/// Normalized Frobenius norm of A_0 B^n + A_1 B^{n-1} + ... + A_n.
double verify_divisor(const MatrixPolynomial& A, const cmat& B);

/// Quotient of the exact division A(z) = Q(z)(z - B); the remainder norm
/// (normalized) is written to *remainder if given.
MatrixPolynomial divide_right_linear(const MatrixPolynomial& A, const cmat& B,
                                     double* remainder = nullptr);

/// Quotient of A(z) / (z - a); normalized remainder norm to *remainder.
MatrixPolynomial divide_scalar_linear(const MatrixPolynomial& A, cx a,
                                      double* remainder = nullptr);

/// Unique degree-n polynomial with leading coefficient A0 whose right
/// divisors are z - B_i, built by the inductive eigenvector construction.
/// groups[i] lists the eigenvalues of divisor i.
MatrixPolynomial from_right_divisors(const cmat& A0, const std::vector<cmat>& divisors,
                                     const std::vector<std::vector<cx>>& groups,
                                     const Tolerances& tol = default_tolerances());

/// Eigenvalues of a constant matrix, as a vector.
std::vector<cx> matrix_spectrum(const cmat& B);

/// Match the multiset `found` against `expected` greedily; returns the
/// max matching distance. Throws genericity_error when a point of
/// `expected` has two candidates within ambiguity.
double match_spectra(std::span<const cx> expected, std::span<const cx> found,
                     double ambiguity = 1e-6);

}  // namespace isomono

#endif
