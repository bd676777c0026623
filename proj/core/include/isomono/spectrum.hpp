#ifndef ISOMONO_SPECTRUM_HPP
#define ISOMONO_SPECTRUM_HPP

#include <span>
#include <vector>

#include "isomono/types.hpp"

namespace isomono {

enum class VariantKind { difference, q_difference, autonomous };

/// The congruence rule relating the eigenvalue groups along a flow:
/// integer shifts, q-power scalings, or none (autonomous).
struct Variant {
    VariantKind kind = VariantKind::difference;
    cx q{1.0, 0.0};

    static Variant difference() { return {VariantKind::difference, cx{1, 0}}; }
    static Variant q_difference(cx q) { return {VariantKind::q_difference, q}; }
    static Variant autonomous() { return {VariantKind::autonomous, cx{1, 0}}; }

    bool operator==(const Variant& o) const;
    std::string name() const;
};

/// n groups of m eigenvalues a_j^{(i)}; the coordinates of the lattice
/// flows are attached to these groups.
struct SpectrumGroups {
    int m = 0;
    int n = 0;
    std::vector<std::vector<cx>> groups;  // groups[i], i = 0..n-1, each of size m

    std::vector<cx> flattened() const;

    /// Expected spectrum of group i after a lattice shift by k_i:
    /// a - k_i (difference), q^{-k_i} a (q-case), a (autonomous).
    std::vector<cx> shifted(int i, long k_i, const Variant& v) const;
};

/// Shift a single eigenvalue by t lattice units under the variant rule.
cx shift_eigenvalue(cx a, long t, const Variant& v);

/// Checks pairwise distinctness and the variant's non-congruence rule;
/// throws invalid_input naming the offending pair.
void validate_groups(const SpectrumGroups& g, const Variant& v,
                     const Tolerances& tol = default_tolerances());

/// Deterministic default grouping: sort by real part then imaginary
/// part, chunk into n blocks of m.
SpectrumGroups default_grouping(std::vector<cx> eigenvalues, int m, int n);

}  // namespace isomono

#endif
