#ifndef ISOMONO_IO_HPP
#define ISOMONO_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "isomono/continuum.hpp"
#include "isomono/generate.hpp"

// forward declare to keep nlohmann out of dependent headers
#include <nlohmann/json_fwd.hpp>

namespace isomono {

using json = nlohmann::json;

json matrix_to_json(const cmat& M);
cmat matrix_from_json(const json& j);

/// {"m": ..., "n": ..., "coeffs": [A_0, ..., A_n]}
json poly_to_json(const MatrixPolynomial& A);
MatrixPolynomial poly_from_json(const json& j);

Variant variant_from_string(const std::string& s);

/// On-disk description of a system: exactly one of coefficients,
/// divisors, or factors (or a seed for random generation).
struct SystemConfig {
    enum class Rep { coefficients, divisors, factors, random };
    int m = 0;
    int n = 0;
    cmat A0;
    Rep rep = Rep::random;
    std::vector<cmat> data;
    std::optional<std::vector<std::vector<cx>>> groups;
    Variant variant = Variant::difference();
    std::optional<std::uint64_t> seed;
    Tolerances tol;
};

SystemConfig system_config_from_json(const json& j);
json system_config_to_json(const SystemConfig& c);
SystemConfig load_system_config(const std::string& path);
void save_system_config(const SystemConfig& c, const std::string& path);

/// Instantiations; random configs draw from the seeded generator.
DivisorState divisor_state_from_config(const SystemConfig& c);
FactorState factor_state_from_config(const SystemConfig& c);
MatrixPolynomial polynomial_from_config(const SystemConfig& c);
/// The eigenvalue groups the instantiated system carries.
SpectrumGroups groups_from_config(const SystemConfig& c);

/// {"m","n","Binf" (optional), "B": [...], "x": [...]}
ContinuousSystem continuous_from_json(const json& j);
json continuous_to_json(const ContinuousSystem& s);
ContinuousSystem load_continuous_system(const std::string& path);

/// Trajectory rows {"k": [...], "B": [...], "residuals": {...}}; the
/// residuals of row t are computed on the step from row t-1.
json trajectory_to_json(std::span<const DivisorState> traj, const Tolerances& tol);
void write_trajectory_csv(std::ostream& os, std::span<const DivisorState> traj);

json limit_rows_to_json(std::span<const LimitRow> rows);
void write_limit_csv(std::ostream& os, std::span<const LimitRow> rows);
json transform_rows_to_json(std::span<const TransformLimitRow> rows);
void write_transform_csv(std::ostream& os, std::span<const TransformLimitRow> rows);

std::string format_double17(double v);

}  // namespace isomono

#endif
