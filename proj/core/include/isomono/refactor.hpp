#ifndef ISOMONO_REFACTOR_HPP
#define ISOMONO_REFACTOR_HPP

#include <vector>

#include "isomono/matrix_polynomial.hpp"

namespace isomono {

/// Result of exchanging two adjacent linear factors:
/// (z - X)(z - Y) = (z - S)(z - T), Sp(S) = Sp(Y), Sp(T) = Sp(X).
struct SwapResult {
    cmat S, T;
};

/// Sylvester route: solve Y L - L X = I, then S = X + L^{-1}, T = Y - L^{-1}.
SwapResult swap_adjacent(const cmat& X, const cmat& Y,
                         const Tolerances& tol = default_tolerances());

/// Closed form for m = 2: S = (X+Y-tr Y) Y (X+Y-tr Y)^{-1} and
/// T = (X+Y-tr X)^{-1} X (X+Y-tr X); used as an independent oracle.
SwapResult swap_adjacent_2x2(const cmat& X, const cmat& Y,
                             const Tolerances& tol = default_tolerances());

/// Eigenvector route: T is the right divisor of (z-X)(z-Y) for the
/// spectrum of X; S recovered from the matching of linear terms.
SwapResult swap_via_eigen(const cmat& X, const cmat& Y,
                          const Tolerances& tol = default_tolerances());

/// Given the right factors Y, T of (z-X)(z-Y) = (z-S)(z-T), recover the
/// left factors: X = (Y-T) T (Y-T)^{-1}, S = (Y-T) Y (Y-T)^{-1}.
struct LeftFactors {
    cmat X, S;
};
LeftFactors left_factors_from_right(const cmat& Y, const cmat& T,
                                    const Tolerances& tol = default_tolerances());

/// Given the left factors X, S: Y = (X-S)^{-1} S (X-S), T = (X-S)^{-1} X (X-S).
struct RightFactors {
    cmat Y, T;
};
RightFactors right_factors_from_left(const cmat& X, const cmat& S,
                                     const Tolerances& tol = default_tolerances());

/// Reorders the product (z-X_1)...(z-X_N) = (z-Y_{sigma(1)})...(z-Y_{sigma(N)})
/// with Sp(Y_i) = Sp(X_i), via adjacent swaps along a bubble-sort word.
/// sigma is 0-based: position p of the new product holds Y_{sigma[p]}.
std::vector<cmat> permute_product(const std::vector<cmat>& factors, const std::vector<int>& sigma,
                                  const Tolerances& tol = default_tolerances());

/// min_{i,j} |lambda_i(X) - lambda_j(Y)|; swaps require this positive.
double spectra_gap(const cmat& X, const cmat& Y);

}  // namespace isomono

#endif
