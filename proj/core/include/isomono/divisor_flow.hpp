#ifndef ISOMONO_DIVISOR_FLOW_HPP
#define ISOMONO_DIVISOR_FLOW_HPP

#include <span>
#include <vector>

#include "isomono/refactor.hpp"
#include "isomono/spectrum.hpp"

namespace isomono {

using LatticePoint = std::vector<long>;

/// The n right-divisor matrices B_i(k) of the flowed polynomial at a
/// lattice point k, with the base eigenvalue groups (at k = 0).
struct DivisorState {
    cmat A0;
    std::vector<cmat> B;
    SpectrumGroups groups;
    LatticePoint k;
    Variant variant = Variant::difference();

    int dim() const { return groups.m; }
    int order() const { return groups.n; }
    /// Expected spectrum of B_i at the current lattice point.
    std::vector<cx> expected_spectrum(int i) const;
};

/// Builds a validated state at k = 0; groups default to the extracted
/// spectra of the B_i.
DivisorState make_divisor_state(cmat A0, std::vector<cmat> B,
                                std::vector<std::vector<cx>> groups = {},
                                Variant variant = Variant::difference(),
                                const Tolerances& tol = default_tolerances());

/// All values B_i(k + eps), eps in {0,1}^n, from the values at k:
/// conjugation steps for the
/// coordinates i with eps_i = 0, the diagonal rule for (1,...,1), and
/// adjacent-factor swaps to peel the remaining corners.
/// cube[mask][i] = B_i(k + eps(mask)) with bit j of mask meaning eps_j = 1.
std::vector<std::vector<cmat>> divisor_cube(const DivisorState& s,
                                            const Tolerances& tol = default_tolerances());

/// Transport the state to an arbitrary target: diagonal moves first,
/// then unit layers filled through divisor_cube.
DivisorState divisor_flow(const DivisorState& s, const LatticePoint& target,
                          const Tolerances& tol = default_tolerances());

/// Same flow, recording a state at every visited lattice point
/// (single-coordinate and diagonal steps).
std::vector<DivisorState> divisor_flow_path(const DivisorState& s, const LatticePoint& target,
                                            const Tolerances& tol = default_tolerances());

/// Residuals of the lattice equations evaluated on stored states:
/// the exchange relations on consecutive single-coordinate steps, the
/// diagonal conjugation rule on (1,...,1) steps, and the spectra law by
/// re-extraction. All norms are normalized by the state scale.
struct ResidualReport {
    double exchange_additive = 0;     // additive exchange relation
    double exchange_multiplicative = 0;     // multiplicative exchange relation
    double diagonal_rule = 0;     // diagonal conjugation rule (or its q / autonomous form)
    double exchange_product = 0;     // quadratic product identity
    double spectra = 0;  // re-extracted eigenvalues vs the shift law
};

ResidualReport check_residuals(std::span<const DivisorState> trajectory,
                               const Tolerances& tol = default_tolerances());

std::string format_lattice(const LatticePoint& k);

}  // namespace isomono

#endif
