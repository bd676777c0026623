#ifndef ISOMONO_ELEMENTARY_HPP
#define ISOMONO_ELEMENTARY_HPP

#include "isomono/formal.hpp"
#include "isomono/multiplier.hpp"

namespace isomono {

struct ElementaryResult {
    Multiplier R;
    MatrixPolynomial A;
};

/// The constant blocks R_0, R_1 of the linear multiplier
/// R(z) = E_i (z - a) + R_0, R^{-1}(z) = I - E_i + R_1 / (z - a),
/// for a kernel vector v and series matrix Q; only the off-diagonal
/// entries of Q and the direction of v enter.
struct MultiplierBlocks {
    cmat R0, R1;
};
MultiplierBlocks elementary_multiplier_blocks(const cvec& v, const cmat& Q, int i);

/// kappa = -1 at the eigenvalue a, delta_i = +1: the root a moves to
/// a - 1 and the exponent d_i grows by one. Requires v_i != 0 for the
/// eigenvector v of A at a.
ElementaryResult elementary_down(const MatrixPolynomial& A, cx a, int i,
                                 const Tolerances& tol = default_tolerances());

/// kappa = +1 at a, delta_i = -1; built from the left kernel vector of
/// A(a) through the transposed-inverse construction.
ElementaryResult elementary_up(const MatrixPolynomial& A, cx a, int i,
                               const Tolerances& tol = default_tolerances());

/// kappa = -1 at a_down and +1 at a_up, exponents fixed;
/// det R(z) = (z - a_down)/(z - a_up - 1). Requires (v, w) != 0.
ElementaryResult elementary_pair_roots(const MatrixPolynomial& A, cx a_down, cx a_up,
                                       const Tolerances& tol = default_tolerances());

/// delta_{i_up} = +1, delta_{j_down} = -1, roots fixed; det R(z) = 1.
/// Requires (Yhat_1)_{i_up, j_down} != 0.
ElementaryResult elementary_pair_exponents(const MatrixPolynomial& A, int i_up, int j_down,
                                           const Tolerances& tol = default_tolerances());

/// The unit group shift: its multiplier is z - B for a right
/// divisor B of A; the transformed polynomial is (z + 1 - B) Ahat(z).
ElementaryResult divisor_shift(const MatrixPolynomial& A, const cmat& B,
                               const Tolerances& tol = default_tolerances());

enum class MoveOrder { forward, reversed };

struct SchlesingerResult {
    MatrixPolynomial A;
    std::vector<Multiplier> moves;
    std::vector<cx> roots;  // root list after all shifts
};

/// Composition of elementary moves realizing root shifts kappa (aligned
/// with `roots`) and exponent shifts delta; sum kappa + sum delta = 0.
/// The decomposition order is deterministic; MoveOrder switches between
/// two schedules (the result is order independent by uniqueness).
SchlesingerResult schlesinger_action(const MatrixPolynomial& A, std::vector<cx> roots,
                                     std::vector<int> kappa, std::vector<int> delta,
                                     MoveOrder order = MoveOrder::forward,
                                     const Tolerances& tol = default_tolerances());

}  // namespace isomono

#endif
