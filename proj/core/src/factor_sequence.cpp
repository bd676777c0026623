#include "isomono/factor_sequence.hpp"

namespace isomono {

LinearFactor LinearFactor::of(cmat Q) {
    LinearFactor f;
    f.spectrum = matrix_spectrum(Q);
    f.Q = std::move(Q);
    return f;
}

FactorSequence::FactorSequence(cmat A0, std::vector<cmat> base, Variant variant, const Tolerances& tol)
    : A0_(std::move(A0)), base_(std::move(base)), variant_(variant) {
    if (base_.empty()) throw invalid_input("factor sequence needs at least one base factor");
    m_ = static_cast<int>(base_.front().rows());
    n_ = static_cast<int>(base_.size());
    for (const cmat& C : base_)
        if (C.rows() != m_ || C.cols() != m_) throw invalid_input("factor sequence: inconsistent dimensions");
    Eigen::FullPivLU<cmat> lu(A0_);
    if (!lu.isInvertible()) throw invalid_input("factor sequence: A_0 must be invertible");
    A0inv_ = lu.inverse();
    // window-level disjointness of the represented types
    SpectrumGroups g;
    g.m = m_;
    g.n = n_;
    for (const cmat& C : base_) g.groups.push_back(matrix_spectrum(C));
    validate_groups(g, variant_, tol);
}

cmat FactorSequence::twist_up(const cmat& Q) const {
    switch (variant_.kind) {
        case VariantKind::difference: return cmat::Identity(m_, m_) + A0_ * Q * A0inv_;
        case VariantKind::q_difference: return variant_.q * (A0_ * Q * A0inv_);
        case VariantKind::autonomous: return A0_ * Q * A0inv_;
    }
    return Q;
}

cmat FactorSequence::twist_down(const cmat& Q) const {
    switch (variant_.kind) {
        case VariantKind::difference: return A0inv_ * (Q - cmat::Identity(m_, m_)) * A0_;
        case VariantKind::q_difference: return A0inv_ * (Q / variant_.q) * A0_;
        case VariantKind::autonomous: return A0inv_ * Q * A0_;
    }
    return Q;
}

cmat FactorSequence::factor_at(long k) const {
    long i = (k - 1) % n_;
    if (i < 0) i += n_;
    long mu = (k - 1 - i) / n_;
    cmat Q = base_[static_cast<size_t>(i)];
    for (; mu > 0; --mu) Q = twist_up(Q);
    for (; mu < 0; ++mu) Q = twist_down(Q);
    return Q;
}

LinearFactor FactorSequence::linear_factor_at(long k) const { return LinearFactor::of(factor_at(k)); }

MatrixPolynomial FactorSequence::window_product(long start) const {
    MatrixPolynomial P = MatrixPolynomial::monic_linear(factor_at(start));
    for (int t = 1; t < n_; ++t) P = P * MatrixPolynomial::monic_linear(factor_at(start + t));
    return P;
}

FactorSequence FactorSequence::rebased_window(long first_pos, const std::vector<cmat>& window) const {
    std::vector<cmat> base(static_cast<size_t>(n_));
    for (int s = 0; s < n_; ++s) {
        const long k = first_pos + s;
        long i = (k - 1) % n_;
        if (i < 0) i += n_;
        long mu = (k - 1 - i) / n_;
        cmat Q = window[static_cast<size_t>(s)];
        for (; mu > 0; --mu) Q = twist_down(Q);
        for (; mu < 0; ++mu) Q = twist_up(Q);
        base[static_cast<size_t>(i)] = std::move(Q);
    }
    FactorSequence out = *this;
    out.base_ = std::move(base);
    return out;
}

namespace {

long normalize_index(long l, int n) {
    long l0 = l % n;
    if (l0 <= 0) l0 += n;
    return l0;  // in 1..n
}

}  // namespace

FactorSequence flow_F(const FactorSequence& seq, long l, const Tolerances& tol) {
    const int n = seq.window();
    const long l0 = normalize_index(l, n);
    std::vector<cmat> W(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) W[static_cast<size_t>(s)] = seq.factor_at(l0 + s);
    // cycle the leading type to the end with n-1 adjacent swaps
    for (int r = 0; r + 1 < n; ++r) {
        const SwapResult sw = swap_adjacent(W[static_cast<size_t>(r)], W[static_cast<size_t>(r + 1)], tol);
        W[static_cast<size_t>(r)] = sw.S;
        W[static_cast<size_t>(r + 1)] = sw.T;
    }
    return seq.rebased_window(l0 + 1, W);
}

FactorSequence inverse_flow_F(const FactorSequence& seq, long l, const Tolerances& tol) {
    const int n = seq.window();
    const long l0 = normalize_index(l, n);
    std::vector<cmat> W(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) W[static_cast<size_t>(s)] = seq.factor_at(l0 + 1 + s);
    // cycle the trailing type to the front
    for (int r = n - 2; r >= 0; --r) {
        const SwapResult sw = swap_adjacent(W[static_cast<size_t>(r)], W[static_cast<size_t>(r + 1)], tol);
        W[static_cast<size_t>(r)] = sw.S;
        W[static_cast<size_t>(r + 1)] = sw.T;
    }
    return seq.rebased_window(l0, W);
}

FactorSequence pi_action(const FactorSequence& seq, const std::vector<int>& sigma, const Tolerances& tol) {
    const int n = seq.window();
    if (static_cast<int>(sigma.size()) != n) throw invalid_input("pi_action: permutation size mismatch");
    std::vector<cmat> W(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) W[static_cast<size_t>(s)] = seq.factor_at(1 + s);
    // after the action, position p carries the type of base factor sigma^{-1}(p)
    std::vector<int> inv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int si = sigma[static_cast<size_t>(i)];
        if (si < 0 || si >= n) throw invalid_input("pi_action: sigma out of range");
        inv[static_cast<size_t>(si)] = i;
    }
    const std::vector<cmat> bylabel = permute_product(W, inv, tol);
    std::vector<cmat> window(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p)
        window[static_cast<size_t>(p)] = bylabel[static_cast<size_t>(inv[static_cast<size_t>(p)])];
    return seq.rebased_window(1, window);
}

}  // namespace isomono
