#include "isomono/matrix_polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace isomono {

std::string format_complex(cx z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() >= 0) os << "+";
    os << z.imag() << "i";
    return os.str();
}

MatrixPolynomial::MatrixPolynomial(std::vector<cmat> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw invalid_input("matrix polynomial needs at least one coefficient");
    m_ = static_cast<int>(coeffs_.front().rows());
    n_ = static_cast<int>(coeffs_.size()) - 1;
    for (const cmat& c : coeffs_) {
        if (c.rows() != m_ || c.cols() != m_)
            throw invalid_input("matrix polynomial coefficients must be square of equal size");
        if (!finite(c)) throw invalid_input("matrix polynomial coefficient has non-finite entries");
    }
}

MatrixPolynomial MatrixPolynomial::monic_linear(const cmat& B) {
    const auto m = B.rows();
    return MatrixPolynomial({cmat::Identity(m, m), -B});
}

MatrixPolynomial MatrixPolynomial::constant(const cmat& A0) { return MatrixPolynomial({A0}); }

cmat MatrixPolynomial::eval(cx z) const {
    cmat acc = coeffs_.front();
    for (int k = 1; k <= n_; ++k) acc = acc * z + coeffs_[static_cast<size_t>(k)];
    return acc;
}

double MatrixPolynomial::scale() const {
    double s = 0;
    for (const cmat& c : coeffs_) s = std::max(s, c.norm());
    return s;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& rhs) const {
    if (rhs.m_ != m_) throw invalid_input("dimension mismatch in polynomial sum");
    const int n = std::max(n_, rhs.n_);
    std::vector<cmat> c(static_cast<size_t>(n) + 1, cmat::Zero(m_, m_));
    for (int k = 0; k <= n_; ++k) c[static_cast<size_t>(k + n - n_)] += coeffs_[static_cast<size_t>(k)];
    for (int k = 0; k <= rhs.n_; ++k) c[static_cast<size_t>(k + n - rhs.n_)] += rhs.coeffs_[static_cast<size_t>(k)];
    return MatrixPolynomial(std::move(c));
}

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& rhs) const {
    if (rhs.m_ != m_) throw invalid_input("dimension mismatch in polynomial product");
    std::vector<cmat> c(static_cast<size_t>(n_ + rhs.n_) + 1, cmat::Zero(m_, m_));
    for (int a = 0; a <= n_; ++a)
        for (int b = 0; b <= rhs.n_; ++b)
            c[static_cast<size_t>(a + b)] += coeffs_[static_cast<size_t>(a)] * rhs.coeffs_[static_cast<size_t>(b)];
    return MatrixPolynomial(std::move(c));
}

MatrixPolynomial MatrixPolynomial::shifted(cx shift) const {
    // Taylor shift by repeated synthetic division by (z - shift): the
    // successive remainders are the ascending coefficients of A(z + shift).
    std::vector<cmat> work = coeffs_;
    std::vector<cmat> out(coeffs_.size(), cmat::Zero(m_, m_));
    for (int r = n_; r >= 0; --r) {
        std::vector<cmat> quot;
        if (work.size() > 1) {
            quot.reserve(work.size() - 1);
            quot.push_back(work[0]);
            for (size_t k = 1; k + 1 < work.size(); ++k) quot.push_back(quot.back() * shift + work[k]);
        }
        const cmat rem = quot.empty() ? work.back() : quot.back() * shift + work.back();
        out[static_cast<size_t>(r)] = rem;
        work = std::move(quot);
        if (work.empty()) break;
    }
    return MatrixPolynomial(std::move(out));
}

MatrixPolynomial MatrixPolynomial::left_mul(const cmat& M) const {
    std::vector<cmat> c;
    c.reserve(coeffs_.size());
    for (const cmat& a : coeffs_) c.push_back(M * a);
    return MatrixPolynomial(std::move(c));
}

MatrixPolynomial MatrixPolynomial::right_mul(const cmat& M) const {
    std::vector<cmat> c;
    c.reserve(coeffs_.size());
    for (const cmat& a : coeffs_) c.push_back(a * M);
    return MatrixPolynomial(std::move(c));
}

MatrixPolynomial MatrixPolynomial::truncated(int target_degree, double tol) const {
    if (target_degree >= n_) return *this;
    const double gate = tol * std::max(1.0, scale());
    for (int k = 0; k < n_ - target_degree; ++k) {
        const double norm = coeffs_[static_cast<size_t>(k)].norm();
        if (norm > gate) {
            std::ostringstream os;
            os << "truncation would drop a coefficient of norm " << norm << " at degree " << (n_ - k);
            throw internal_error(os.str());
        }
    }
    std::vector<cmat> c(coeffs_.begin() + (n_ - target_degree), coeffs_.end());
    return MatrixPolynomial(std::move(c));
}

cx eval_scalar_poly(std::span<const cx> coeffs, cx z) {
    cx acc = 0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

namespace {

double leading_root_radius(const MatrixPolynomial& A) {
    // Cauchy-style bound on |roots of det A| from the monic form A_0^{-1} A(z).
    const cmat inv = A.leading().fullPivLu().inverse();
    double r = 1.0;
    for (int k = 1; k <= A.degree(); ++k) {
        const double nk = (inv * A.coeff(k)).norm();
        if (nk > 0) r = std::max(r, std::pow(nk, 1.0 / k));
    }
    return 1.0 + r;
}

void require_invertible_leading(const MatrixPolynomial& A) {
    Eigen::JacobiSVD<cmat> svd(A.leading());
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (!(smin > 1e-12 * std::max(1.0, smax)))
        throw invalid_input("leading coefficient A_0 is numerically singular");
}

}  // namespace

std::vector<cx> det_poly(const MatrixPolynomial& A) {
    const int deg = A.dim() * A.degree();
    const int N = deg + 1;
    double r;
    {
        Eigen::JacobiSVD<cmat> svd(A.leading());
        const auto& sv = svd.singularValues();
        const bool invertible = sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0));
        r = invertible ? leading_root_radius(A) : 1.0 + A.scale();
    }
    const cx w = std::exp(cx(0, 2.0 * std::numbers::pi / N));
    std::vector<cx> values(static_cast<size_t>(N));
    for (int s = 0; s < N; ++s) values[static_cast<size_t>(s)] = A.eval(r * std::pow(w, s)).determinant();
    // inverse DFT: c_k = (1 / (N r^k)) sum_s values_s w^{-ks}
    std::vector<cx> coeffs(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) {
        cx acc = 0;
        for (int s = 0; s < N; ++s) acc += values[static_cast<size_t>(s)] * std::pow(w, -k * s);
        coeffs[static_cast<size_t>(k)] = acc / (double(N) * std::pow(r, k));
    }
    return coeffs;
}

std::vector<cx> eigenvalues(const MatrixPolynomial& A, const Tolerances&) {
    require_invertible_leading(A);
    const int m = A.dim(), n = A.degree();
    if (n == 0) return {};
    const cmat inv = A.leading().fullPivLu().inverse();
    const int N = m * n;
    cmat comp = cmat::Zero(N, N);
    for (int b = 0; b + 1 < n; ++b) comp.block(b * m, (b + 1) * m, m, m) = cmat::Identity(m, m);
    for (int b = 0; b < n; ++b) comp.block((n - 1) * m, b * m, m, m) = -inv * A.coeff(n - b);
    Eigen::ComplexEigenSolver<cmat> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw internal_error("companion eigensolver failed");
    std::vector<cx> roots(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) roots[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

namespace {

cvec kernel_vector_impl(const cmat& M, const Tolerances& tol, const char* role) {
    const int m = static_cast<int>(M.rows());
    Eigen::JacobiSVD<cmat> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = std::max(sv(0), 1e-300);
    if (!(sv(m - 1) <= tol.kernel_simplicity * smax))
        throw invalid_input(std::string(role) + ": the given point is not an eigenvalue (no small singular value)");
    if (m >= 2 && !(sv(m - 2) > tol.kernel_simplicity * smax))
        throw genericity_error(std::string(role) + ": eigenvalue is not simple (two small singular values)");
    cvec v = svd.matrixV().col(m - 1);
    // phase normalization: coordinate of largest modulus made real positive
    int imax = 0;
    for (int i = 1; i < m; ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    const cx pivot = v(imax);
    if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
    v.normalize();
    return v;
}

}  // namespace

cvec pencil_eigenvector(const MatrixPolynomial& A, cx a, const Tolerances& tol) {
    return kernel_vector_impl(A.eval(a), tol, "pencil_eigenvector");
}

cvec left_kernel_vector(const MatrixPolynomial& A, cx a, const Tolerances& tol) {
    return kernel_vector_impl(A.eval(a).transpose(), tol, "left_kernel_vector");
}

namespace {

/// V diag(a) V^{-1} with a condition gate on V.
cmat eigenbasis_assemble(const cmat& V, std::span<const cx> values, const Tolerances& tol,
                         const char* role) {
    Eigen::JacobiSVD<cmat> svd(V);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 0) || sv(0) / sv(sv.size() - 1) > tol.eigvec_condition)
        throw genericity_error(std::string(role) + ": eigenvector matrix is ill conditioned (dependent vectors)");
    cmat D = cmat::Zero(V.rows(), V.cols());
    for (int j = 0; j < V.cols(); ++j) D(j, j) = values[static_cast<size_t>(j)];
    return V * D * V.fullPivLu().inverse();
}

}  // namespace

cmat right_divisor(const MatrixPolynomial& A, std::span<const cx> group, const Tolerances& tol) {
    const int m = A.dim();
    if (static_cast<int>(group.size()) != m)
        throw invalid_input("right_divisor: group size must equal the matrix dimension");
    cmat V(m, m);
    for (int j = 0; j < m; ++j) V.col(j) = pencil_eigenvector(A, group[static_cast<size_t>(j)], tol);
    return eigenbasis_assemble(V, group, tol, "right_divisor");
}

double verify_divisor(const MatrixPolynomial& A, const cmat& B) {
    cmat acc = A.leading();
    for (int k = 1; k <= A.degree(); ++k) acc = acc * B + A.coeff(k);
    const double denom = std::max(A.scale(), 1e-300) * std::pow(1.0 + B.norm(), A.degree());
    return acc.norm() / denom;
}

MatrixPolynomial divide_right_linear(const MatrixPolynomial& A, const cmat& B, double* remainder) {
    const int n = A.degree();
    if (n < 1) throw invalid_input("divide_right_linear: polynomial must have degree >= 1");
    std::vector<cmat> q(static_cast<size_t>(n));
    q[0] = A.coeff(0);
    for (int k = 1; k < n; ++k) q[static_cast<size_t>(k)] = q[static_cast<size_t>(k - 1)] * B + A.coeff(k);
    const cmat rem = q[static_cast<size_t>(n - 1)] * B + A.coeff(n);
    if (remainder) *remainder = rem.norm() / std::max(1.0, A.scale());
    return MatrixPolynomial(std::move(q));
}

MatrixPolynomial divide_scalar_linear(const MatrixPolynomial& A, cx a, double* remainder) {
    const int n = A.degree();
    if (n < 1) throw invalid_input("divide_scalar_linear: polynomial must have degree >= 1");
    std::vector<cmat> q(static_cast<size_t>(n));
    q[0] = A.coeff(0);
    for (int k = 1; k < n; ++k) q[static_cast<size_t>(k)] = q[static_cast<size_t>(k - 1)] * a + A.coeff(k);
    const cmat rem = q[static_cast<size_t>(n - 1)] * a + A.coeff(n);
    if (remainder) *remainder = rem.norm() / std::max(1.0, A.scale());
    return MatrixPolynomial(std::move(q));
}

MatrixPolynomial from_right_divisors(const cmat& A0, const std::vector<cmat>& divisors,
                                     const std::vector<std::vector<cx>>& groups,
                                     const Tolerances& tol) {
    const int m = static_cast<int>(A0.rows());
    const int n = static_cast<int>(divisors.size());
    if (static_cast<int>(groups.size()) != n)
        throw invalid_input("from_right_divisors: one eigenvalue group per divisor required");
    require_invertible_leading(MatrixPolynomial::constant(A0));

    MatrixPolynomial Ahat = MatrixPolynomial::monic_linear(divisors.front());
    for (int i = 1; i < n; ++i) {
        const cmat& Bi = divisors[static_cast<size_t>(i)];
        const auto& group = groups[static_cast<size_t>(i)];
        // eigenvectors of B_i ordered by the group values
        Eigen::ComplexEigenSolver<cmat> es(Bi);
        if (es.info() != Eigen::Success) throw internal_error("from_right_divisors: eigensolver failed");
        std::vector<bool> used(static_cast<size_t>(m), false);
        cmat W(m, m);
        const double scale = std::max(1.0, Bi.norm());
        for (int j = 0; j < m; ++j) {
            int best = -1;
            double bestd = std::numeric_limits<double>::infinity();
            for (int s = 0; s < m; ++s) {
                if (used[static_cast<size_t>(s)]) continue;
                const double d = std::abs(es.eigenvalues()(s) - group[static_cast<size_t>(j)]);
                if (d < bestd) { bestd = d; best = s; }
            }
            if (best < 0 || bestd > tol.spectrum_match * scale)
                throw invalid_input("from_right_divisors: divisor spectrum does not match its group");
            used[static_cast<size_t>(best)] = true;
            const cvec v = es.eigenvectors().col(best);
            W.col(j) = Ahat.eval(group[static_cast<size_t>(j)]) * v;
        }
        const cmat X = eigenbasis_assemble(W, groups[static_cast<size_t>(i)], tol, "from_right_divisors");
        Ahat = MatrixPolynomial::monic_linear(X) * Ahat;
    }
    return Ahat.left_mul(A0);
}

std::vector<cx> matrix_spectrum(const cmat& B) {
    Eigen::ComplexEigenSolver<cmat> es(B, false);
    if (es.info() != Eigen::Success) throw internal_error("matrix_spectrum: eigensolver failed");
    std::vector<cx> out(static_cast<size_t>(B.rows()));
    for (int i = 0; i < B.rows(); ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return out;
}

double match_spectra(std::span<const cx> expected, std::span<const cx> found, double ambiguity) {
    if (expected.size() != found.size()) throw invalid_input("match_spectra: size mismatch");
    std::vector<bool> used(found.size(), false);
    double worst = 0;
    for (const cx e : expected) {
        int best = -1, second = -1;
        double bestd = std::numeric_limits<double>::infinity();
        double secondd = std::numeric_limits<double>::infinity();
        for (size_t s = 0; s < found.size(); ++s) {
            if (used[s]) continue;
            const double d = std::abs(found[s] - e);
            if (d < bestd) { secondd = bestd; second = best; bestd = d; best = static_cast<int>(s); }
            else if (d < secondd) { secondd = d; second = static_cast<int>(s); }
        }
        (void)second;
        if (best < 0) throw internal_error("match_spectra: ran out of candidates");
        if (secondd - bestd < ambiguity && secondd < 2 * ambiguity)
            throw genericity_error("match_spectra: ambiguous eigenvalue matching");
        used[static_cast<size_t>(best)] = true;
        worst = std::max(worst, bestd);
    }
    return worst;
}

}  // namespace isomono
