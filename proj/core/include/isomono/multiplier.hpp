#ifndef ISOMONO_MULTIPLIER_HPP
#define ISOMONO_MULTIPLIER_HPP

#include <optional>
#include <vector>

#include "isomono/matrix_polynomial.hpp"

namespace isomono {

/// lin * z + cst + num / (z - pole); the shape every closed-form
/// elementary multiplier and its inverse fits into.
struct RationalLinear {
    cmat lin, cst;
    bool has_num = false;
    cmat num;
    cx pole{0, 0};

    cmat eval(cx z) const;
};

/// A rational gauge multiplier R(z) with its inverse and a symbolic
/// record of det R(z) = prod (z - zero) / prod (z - pole).
class Multiplier {
public:
    enum class Kind { divisor, elementary_down, elementary_up, paired_roots, paired_exponents };

    Kind kind = Kind::divisor;
    RationalLinear fwd;
    std::optional<RationalLinear> inv;  // absent: invert fwd numerically
    std::vector<cx> det_zeros, det_poles;

    cmat eval(cx z) const { return fwd.eval(z); }
    cmat eval_inv(cx z) const;
    cx det_expected(cx z) const;

    /// max over sample points of ||R(z) R^{-1}(z) - I||
    double inverse_residual(std::span<const cx> samples) const;
    /// max over sample points of |det R(z) - det_expected(z)| (relative)
    double det_residual(std::span<const cx> samples) const;
};

/// Pointwise product R_last ... R_first of a composed transformation.
cmat eval_composed(std::span<const Multiplier> moves, cx z);

}  // namespace isomono

#endif
