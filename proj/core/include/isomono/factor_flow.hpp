#ifndef ISOMONO_FACTOR_FLOW_HPP
#define ISOMONO_FACTOR_FLOW_HPP

#include "isomono/divisor_flow.hpp"
#include "isomono/factor_sequence.hpp"

namespace isomono {

/// The ordered factors C_i(l) of S(l) A(z) = A_0 (z - C_1) ... (z - C_n).
struct FactorState {
    cmat A0;
    std::vector<cmat> C;
    SpectrumGroups groups;
    LatticePoint l;
    Variant variant = Variant::difference();

    int dim() const { return groups.m; }
    int order() const { return groups.n; }
    std::vector<cx> expected_spectrum(int i) const;
};

FactorState make_factor_state(cmat A0, std::vector<cmat> C,
                              std::vector<std::vector<cx>> groups = {},
                              Variant variant = Variant::difference(),
                              const Tolerances& tol = default_tolerances());

/// A_0 (z - C_1) ... (z - C_n)
MatrixPolynomial to_polynomial(const FactorState& s);

/// Transport to the target by composing the sequence flows F_i^{+-1}.
FactorState factor_flow(const FactorState& s, const LatticePoint& target,
                        const Tolerances& tol = default_tolerances());

/// Same flow, one coordinate step at a time, recording every state.
std::vector<FactorState> factor_flow_path(const FactorState& s, const LatticePoint& target,
                                          const Tolerances& tol = default_tolerances());

/// Coordinate change: B_i(k) = C_i(k_1, ..., k_i, k_{i+1}-1, ..., k_n-1),
/// realized by running the partial factor flows.
DivisorState b_from_c(const FactorState& s, const LatticePoint& k,
                      const Tolerances& tol = default_tolerances());

/// Inverse change: C_i(l) = B_i(l_1, ..., l_i, l_{i+1}+1, ..., l_n+1).
FactorState c_from_b(const DivisorState& s, const LatticePoint& l,
                     const Tolerances& tol = default_tolerances());

/// Residual of the window relation (the C-coordinate exchange identity)
/// between a state and its image under F_{index+1}, at sample points.
double factor_step_residual(const FactorState& before, const FactorState& after, int index,
                            const Tolerances& tol = default_tolerances());

}  // namespace isomono

#endif
