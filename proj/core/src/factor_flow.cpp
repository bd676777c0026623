#include "isomono/factor_flow.hpp"

namespace isomono {

std::vector<cx> FactorState::expected_spectrum(int i) const {
    return groups.shifted(i, l.at(static_cast<size_t>(i)), variant);
}

FactorState make_factor_state(cmat A0, std::vector<cmat> C, std::vector<std::vector<cx>> groups,
                              Variant variant, const Tolerances& tol) {
    FactorState s;
    s.A0 = std::move(A0);
    s.C = std::move(C);
    s.variant = variant;
    const int n = static_cast<int>(s.C.size());
    if (n == 0) throw invalid_input("factor state needs at least one factor");
    const int m = static_cast<int>(s.C.front().rows());
    Eigen::FullPivLU<cmat> lu(s.A0);
    if (!lu.isInvertible()) throw invalid_input("factor state: A_0 must be invertible");
    s.groups.m = m;
    s.groups.n = n;
    if (groups.empty()) {
        for (const cmat& Ci : s.C) s.groups.groups.push_back(matrix_spectrum(Ci));
    } else {
        s.groups.groups = std::move(groups);
        for (int i = 0; i < n; ++i)
            match_spectra(s.groups.groups[static_cast<size_t>(i)],
                          matrix_spectrum(s.C[static_cast<size_t>(i)]), tol.spectrum_match);
    }
    validate_groups(s.groups, variant, tol);
    s.l.assign(static_cast<size_t>(n), 0);
    return s;
}

MatrixPolynomial to_polynomial(const FactorState& s) {
    MatrixPolynomial P = MatrixPolynomial::monic_linear(s.C.front());
    for (size_t i = 1; i < s.C.size(); ++i) P = P * MatrixPolynomial::monic_linear(s.C[i]);
    return P.left_mul(s.A0);
}

FactorState factor_flow(const FactorState& s, const LatticePoint& target, const Tolerances& tol) {
    const int n = s.order();
    if (static_cast<int>(target.size()) != n)
        throw invalid_input("factor_flow: target must have n coordinates");
    FactorSequence seq(s.A0, s.C, s.variant, tol);
    for (int i = 0; i < n; ++i) {
        const long steps = target[static_cast<size_t>(i)] - s.l[static_cast<size_t>(i)];
        for (long t = 0; t < steps; ++t) seq = flow_F(seq, i + 1, tol);
        for (long t = 0; t > steps; --t) seq = inverse_flow_F(seq, i + 1, tol);
    }
    FactorState out = s;
    out.C = seq.base();
    out.l = target;
    return out;
}

std::vector<FactorState> factor_flow_path(const FactorState& s, const LatticePoint& target,
                                          const Tolerances& tol) {
    const int n = s.order();
    if (static_cast<int>(target.size()) != n)
        throw invalid_input("factor_flow: target must have n coordinates");
    std::vector<FactorState> path{s};
    FactorState cur = s;
    for (int i = 0; i < n; ++i) {
        while (cur.l[static_cast<size_t>(i)] != target[static_cast<size_t>(i)]) {
            LatticePoint next = cur.l;
            next[static_cast<size_t>(i)] += target[static_cast<size_t>(i)] > cur.l[static_cast<size_t>(i)] ? 1 : -1;
            cur = factor_flow(cur, next, tol);
            path.push_back(cur);
        }
    }
    return path;
}

DivisorState b_from_c(const FactorState& s, const LatticePoint& k, const Tolerances& tol) {
    const int n = s.order();
    if (static_cast<int>(k.size()) != n) throw invalid_input("b_from_c: k must have n coordinates");
    DivisorState out;
    out.A0 = s.A0;
    out.groups = s.groups;
    out.variant = s.variant;
    out.k = k;
    out.B.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        LatticePoint t = k;
        for (int j = i + 1; j < n; ++j) --t[static_cast<size_t>(j)];
        const FactorState fi = factor_flow(s, t, tol);
        out.B[static_cast<size_t>(i)] = fi.C[static_cast<size_t>(i)];
    }
    return out;
}

FactorState c_from_b(const DivisorState& s, const LatticePoint& l, const Tolerances& tol) {
    const int n = s.order();
    if (static_cast<int>(l.size()) != n) throw invalid_input("c_from_b: l must have n coordinates");
    FactorState out;
    out.A0 = s.A0;
    out.groups = s.groups;
    out.variant = s.variant;
    out.l = l;
    out.C.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        LatticePoint t = l;
        for (int j = i + 1; j < n; ++j) ++t[static_cast<size_t>(j)];
        const DivisorState di = divisor_flow(s, t, tol);
        out.C[static_cast<size_t>(i)] = di.B[static_cast<size_t>(i)];
    }
    return out;
}

double factor_step_residual(const FactorState& before, const FactorState& after, int index,
                            const Tolerances&) {
    const int n = before.order();
    const int m = before.dim();
    if (index < 0 || index >= n) throw invalid_input("factor_step_residual: index out of range");
    const cmat I = cmat::Identity(m, m);

    const auto shifted_factor = [&](const cmat& C) {
        return MatrixPolynomial::monic_linear(C - I);  // z + 1 - C
    };
    const auto side = [&](const std::vector<cmat>& C, int from_hi, int to_lo) {
        // (z+1-C_{from_hi}) ... (z+1-C_n) A0 (z-C_1) ... (z-C_{to_lo})
        MatrixPolynomial P = MatrixPolynomial::constant(before.A0);
        for (int j = n - 1; j >= from_hi; --j) P = shifted_factor(C[static_cast<size_t>(j)]) * P;
        for (int j = 0; j <= to_lo; ++j) P = P * MatrixPolynomial::monic_linear(C[static_cast<size_t>(j)]);
        return P;
    };

    const MatrixPolynomial lhs = side(before.C, index, index - 1);
    const MatrixPolynomial rhs = side(after.C, index + 1, index);
    double worst = 0;
    const double sc = std::max(lhs.scale(), 1.0);
    for (int k = 0; k <= lhs.degree(); ++k)
        worst = std::max(worst, (lhs.coeff(k) - rhs.coeff(k)).norm() / sc);
    return worst;
}

}  // namespace isomono
