#ifndef ISOMONO_FACTOR_SEQUENCE_HPP
#define ISOMONO_FACTOR_SEQUENCE_HPP

#include <vector>

#include "isomono/refactor.hpp"
#include "isomono/spectrum.hpp"

namespace isomono {

/// z - Q together with its cached spectrum.
struct LinearFactor {
    cmat Q;
    std::vector<cx> spectrum;

    static LinearFactor of(cmat Q);
};

/// A bi-infinite sequence of linear factors p_k = z - Q_k determined by
/// its base window Q_1..Q_n and a twist rule:
///   difference:  Q_{k+n} = I + A_0 Q_k A_0^{-1}
///   q-case:      Q_{k+n} = q A_0 Q_k A_0^{-1}
///   autonomous:  Q_{k+n} = A_0 Q_k A_0^{-1}
class FactorSequence {
public:
    FactorSequence(cmat A0, std::vector<cmat> base, Variant variant,
                   const Tolerances& tol = default_tolerances());

    int window() const { return n_; }
    int dim() const { return m_; }
    const cmat& A0() const { return A0_; }
    const Variant& variant() const { return variant_; }
    const std::vector<cmat>& base() const { return base_; }
    const cmat& base_factor(int i) const { return base_.at(static_cast<size_t>(i)); }

    /// Q_k for any integer position (1-based window, base at k = 1..n).
    cmat factor_at(long k) const;
    /// Same factor with its cached spectrum.
    LinearFactor linear_factor_at(long k) const;
    /// Window product p_start ... p_{start+n-1} as a monic polynomial.
    MatrixPolynomial window_product(long start) const;

    /// A copy whose base is read off from new window values at positions
    /// first_pos .. first_pos+n-1 (untwisted back into slots 1..n).
    FactorSequence rebased_window(long first_pos, const std::vector<cmat>& window) const;

private:
    int m_, n_;
    cmat A0_, A0inv_;
    std::vector<cmat> base_;
    Variant variant_;

    cmat twist_up(const cmat& Q) const;    // Q_k -> Q_{k+n}
    cmat twist_down(const cmat& Q) const;  // Q_k -> Q_{k-n}
};

/// The window flow F_l: refactors every window p_{l+mu n} ... p_{l+(mu+1)n-1}
/// into q_{l+mu n+1} ... q_{l+(mu+1)n}, cycling the leading type to the end.
FactorSequence flow_F(const FactorSequence& seq, long l,
                      const Tolerances& tol = default_tolerances());

FactorSequence inverse_flow_F(const FactorSequence& seq, long l,
                              const Tolerances& tol = default_tolerances());

/// The window-wise permutation action: position p of the base window is
/// refactored to carry the type of base factor sigma^{-1}(p). sigma is a
/// 0-based permutation of {0..n-1} acting as in pi(i + mu n) = sigma(i) + mu n.
FactorSequence pi_action(const FactorSequence& seq, const std::vector<int>& sigma,
                         const Tolerances& tol = default_tolerances());

}  // namespace isomono

#endif
