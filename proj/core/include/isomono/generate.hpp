#ifndef ISOMONO_GENERATE_HPP
#define ISOMONO_GENERATE_HPP

#include <random>

#include "isomono/continuum.hpp"

namespace isomono {

using Rng = std::mt19937_64;

/// entries uniform in the complex unit square [-1,1] + [-1,1]i, scaled
cmat random_matrix(Rng& rng, int m, double scale = 1.0);

/// well conditioned similarity I + c * random
cmat random_conjugator(Rng& rng, int m, double c = 0.4);

/// mn eigenvalues in n groups with the variant's non-congruence margin
/// enforced by construction (imaginary-part slots for the difference
/// case, phase slots for the q-case).
SpectrumGroups random_groups(Rng& rng, int m, int n, const Variant& v);

/// diagonal A_0 with distinct, non-really-ratioed entries (admissible
/// for the formal series and elementary moves)
cmat random_diagonal_A0(Rng& rng, int m);

DivisorState random_divisor_state(Rng& rng, int m, int n, Variant v = Variant::difference(),
                                  bool diagonal_A0 = false,
                                  const Tolerances& tol = default_tolerances());

FactorState random_factor_state(Rng& rng, int m, int n, Variant v = Variant::difference(),
                                bool diagonal_A0 = false,
                                const Tolerances& tol = default_tolerances());

/// degree-n polynomial with diagonal distinct A_0 and generic spectrum,
/// built from random divisors; the groups are returned alongside.
struct RandomPolynomial {
    MatrixPolynomial A;
    SpectrumGroups groups;
};
RandomPolynomial random_polynomial(Rng& rng, int m, int n,
                                   const Tolerances& tol = default_tolerances());

/// residues with unit-scale entries and separated diagonalizable spectra,
/// poles y on a jittered circle; with_Binf adds a distinct diagonal B_inf
ContinuousSystem random_continuous_system(Rng& rng, int m, int n, bool with_Binf,
                                          const Tolerances& tol = default_tolerances());

}  // namespace isomono

#endif
