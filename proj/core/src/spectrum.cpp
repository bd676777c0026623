#include "isomono/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isomono {

bool Variant::operator==(const Variant& o) const {
    if (kind != o.kind) return false;
    if (kind == VariantKind::q_difference) return q == o.q;
    return true;
}

std::string Variant::name() const {
    switch (kind) {
        case VariantKind::difference: return "difference";
        case VariantKind::q_difference: {
            std::ostringstream os;
            os << "q=" << format_complex(q);
            return os.str();
        }
        case VariantKind::autonomous: return "autonomous";
    }
    return "?";
}

std::vector<cx> SpectrumGroups::flattened() const {
    std::vector<cx> out;
    out.reserve(static_cast<size_t>(m) * static_cast<size_t>(n));
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

cx shift_eigenvalue(cx a, long t, const Variant& v) {
    switch (v.kind) {
        case VariantKind::difference: return a - static_cast<double>(t);
        case VariantKind::q_difference: return a * std::pow(v.q, cx(-static_cast<double>(t), 0));
        case VariantKind::autonomous: return a;
    }
    return a;
}

std::vector<cx> SpectrumGroups::shifted(int i, long k_i, const Variant& v) const {
    std::vector<cx> out = groups.at(static_cast<size_t>(i));
    for (cx& a : out) a = shift_eigenvalue(a, k_i, v);
    return out;
}

namespace {

// Distance of a/a' from the set {q^t : |t| <= range}, used for the
// q-case congruence test.
double q_power_distance(cx ratio, cx q, int range) {
    double best = std::abs(ratio - cx(1, 0));
    cx up{1, 0}, dn{1, 0};
    for (int t = 1; t <= range; ++t) {
        up *= q;
        dn /= q;
        best = std::min({best, std::abs(ratio - up), std::abs(ratio - dn)});
    }
    return best;
}

}  // namespace

void validate_groups(const SpectrumGroups& g, const Variant& v, const Tolerances& tol) {
    if (static_cast<int>(g.groups.size()) != g.n)
        throw invalid_input("spectrum groups: expected n groups");
    for (const auto& grp : g.groups)
        if (static_cast<int>(grp.size()) != g.m)
            throw invalid_input("spectrum groups: expected m values per group");
    const auto flat = g.flattened();
    for (size_t a = 0; a < flat.size(); ++a) {
        for (size_t b = a + 1; b < flat.size(); ++b) {
            const bool same_group = (a / static_cast<size_t>(g.m)) == (b / static_cast<size_t>(g.m));
            double dist = 0;
            switch (v.kind) {
                case VariantKind::difference:
                    dist = integer_distance(flat[a] - flat[b]);
                    break;
                case VariantKind::q_difference:
                    if (std::abs(flat[b]) < tol.congruence) {
                        dist = std::abs(flat[a] - flat[b]);
                        break;
                    }
                    dist = q_power_distance(flat[a] / flat[b], v.q, 8);
                    break;
                case VariantKind::autonomous:
                    // only plain disjointness matters; same-group repeats are
                    // excluded by the distinctness check below
                    dist = same_group ? std::abs(flat[a] - flat[b]) : std::abs(flat[a] - flat[b]);
                    break;
            }
            if (std::abs(flat[a] - flat[b]) <= tol.congruence) {
                std::ostringstream os;
                os << "eigenvalues " << format_complex(flat[a]) << " and " << format_complex(flat[b])
                   << " coincide";
                throw invalid_input(os.str());
            }
            if (v.kind != VariantKind::autonomous && dist <= tol.congruence) {
                std::ostringstream os;
                os << "eigenvalues " << format_complex(flat[a]) << " and " << format_complex(flat[b])
                   << " are congruent (" << v.name() << ")";
                throw invalid_input(os.str());
            }
        }
    }
}

SpectrumGroups default_grouping(std::vector<cx> eigenvalues, int m, int n) {
    if (static_cast<int>(eigenvalues.size()) != m * n)
        throw invalid_input("default_grouping: expected m*n eigenvalues");
    std::sort(eigenvalues.begin(), eigenvalues.end(), [](cx a, cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    SpectrumGroups g;
    g.m = m;
    g.n = n;
    g.groups.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g.groups[static_cast<size_t>(i)] =
            std::vector<cx>(eigenvalues.begin() + i * m, eigenvalues.begin() + (i + 1) * m);
    return g;
}

}  // namespace isomono
