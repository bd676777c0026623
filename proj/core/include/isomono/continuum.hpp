#ifndef ISOMONO_CONTINUUM_HPP
#define ISOMONO_CONTINUUM_HPP

#include <optional>

#include "isomono/elementary.hpp"
#include "isomono/factor_flow.hpp"

namespace isomono {

/// d Y / d zeta = (B_inf + sum_k B_k / (zeta - x_k)) Y; B_inf may be
/// absent (the Fuchsian variant).
struct ContinuousSystem {
    int m = 0;
    int n = 0;
    std::optional<cmat> Binf;  // diagonal with distinct entries when present
    std::vector<cmat> B;
    std::vector<cx> x;
    std::vector<std::vector<cx>> spectra;  // cached eigenvalues t_j^{(k)}

    void validate(const Tolerances& tol = default_tolerances()) const;
    static ContinuousSystem make(std::optional<cmat> Binf, std::vector<cmat> B, std::vector<cx> x,
                                 const Tolerances& tol = default_tolerances());
};

struct EmbeddingConfig {
    double epsilon = 0.1;
    std::vector<cx> y;  // pairwise distinct anchors
};

/// drv[j][l] = dB_l / dx_j, including the diagonal rule with the
/// -[B_j, B_inf] term (dropped when B_inf is absent).
std::vector<std::vector<cmat>> schlesinger_rhs(const ContinuousSystem& sys);

/// Fixed-step classical 4th-order integration along a polyline of pole
/// configurations; eigenvalues of each residue are monitored and the
/// step is halved (up to a few retries) when they drift.
ContinuousSystem integrate(const ContinuousSystem& sys, const std::vector<std::vector<cx>>& path,
                           double step, const Tolerances& tol = default_tolerances());

/// The epsilon-embedding: C_i = y_i eps^{-1} I - B_i, A_0 = I + eps B_inf.
FactorState embed(const ContinuousSystem& sys, const EmbeddingConfig& cfg,
                  const Tolerances& tol = default_tolerances());

struct LimitRow {
    double epsilon;
    int i;
    double error;
};

/// Conjecture 5.1 harness: for each epsilon in a halving sequence, run
/// the divisor flow to ([x_1 / eps], ...) and the ODE to y - x, and
/// report || B_i(...) + (x_i - y_i) eps^{-1} + B_i(y - x) || per i.
std::vector<LimitRow> limit_compare(const ContinuousSystem& sys, const EmbeddingConfig& cfg,
                                    const std::vector<double>& x_target, int halvings,
                                    double ode_step = 1e-3,
                                    const Tolerances& tol = default_tolerances(), int jobs = 1);

/// One elementary Schlesinger-transformation datum: pole eigenvalue
/// t_j^{(k)} moves by `sign`, the exponent at infinity in row i by -sign.
struct ElementaryLambda {
    int k;  // pole index, 0-based
    int j;  // eigenvalue index within the pole, 0-based
    int i;  // row index at infinity, 0-based
    int sign;
};

/// Continuous Schlesinger transformation by the closed formulas; also
/// returns the multiplier data used.
struct ContinuousTransform {
    ContinuousSystem sys;
    cmat R0, R1;  // blocks of the multiplier of the first move
    int Ei_index = 0;
    int sign = +1;
};
ContinuousTransform schlesinger_transform_continuous(const ContinuousSystem& sys,
                                                     std::span<const ElementaryLambda> moves,
                                                     const Tolerances& tol = default_tolerances());

struct TransformLimitRow {
    double epsilon;
    int l;
    double error;          // Delta-conjugated divisor error
    double multiplier_gap; // multiplier-block convergence, first move
};

/// Transformation-limit harness: per epsilon, build the embedded polynomial, run
/// the discrete transformation with kappa = -lambda, delta = -lambda_inf,
/// and compare the Delta-conjugated divisors with the continuous side.
std::vector<TransformLimitRow> transform_limit_check(
    const ContinuousSystem& sys, const EmbeddingConfig& cfg,
    const std::vector<std::vector<int>>& lambda_pole, const std::vector<int>& lambda_inf,
    int halvings, const Tolerances& tol = default_tolerances());

/// Decompose balanced integer data into elementary pole/inf pairs.
std::vector<ElementaryLambda> decompose_lambda(const std::vector<std::vector<int>>& lambda_pole,
                                               const std::vector<int>& lambda_inf);

}  // namespace isomono

#endif
