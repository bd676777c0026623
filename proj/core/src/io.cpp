#include "isomono/io.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace isomono {

std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_to_json(const cmat& M) {
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c)
            row.push_back(json{{"re", M(r, c).real()}, {"im", M(r, c).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

cmat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw invalid_input("matrix json: expected a nonempty array of rows");
    const int m = static_cast<int>(j.size());
    const int ncols = static_cast<int>(j.at(0).size());
    cmat M(m, ncols);
    for (int r = 0; r < m; ++r) {
        const json& row = j.at(static_cast<size_t>(r));
        if (static_cast<int>(row.size()) != ncols) throw invalid_input("matrix json: ragged rows");
        for (int c = 0; c < ncols; ++c) {
            const json& e = row.at(static_cast<size_t>(c));
            M(r, c) = cx(e.at("re").get<double>(), e.at("im").get<double>());
        }
    }
    return M;
}

json poly_to_json(const MatrixPolynomial& A) {
    json coeffs = json::array();
    for (const cmat& c : A.coeffs()) coeffs.push_back(matrix_to_json(c));
    return json{{"m", A.dim()}, {"n", A.degree()}, {"coeffs", std::move(coeffs)}};
}

MatrixPolynomial poly_from_json(const json& j) {
    std::vector<cmat> coeffs;
    for (const json& c : j.at("coeffs")) coeffs.push_back(matrix_from_json(c));
    MatrixPolynomial A(std::move(coeffs));
    if (j.contains("m") && j.at("m").get<int>() != A.dim())
        throw invalid_input("polynomial json: m does not match the coefficients");
    if (j.contains("n") && j.at("n").get<int>() != A.degree())
        throw invalid_input("polynomial json: n does not match the coefficients");
    return A;
}

Variant variant_from_string(const std::string& s) {
    if (s == "difference") return Variant::difference();
    if (s == "autonomous") return Variant::autonomous();
    if (s.rfind("q=", 0) == 0) {
        const double q = std::stod(s.substr(2));
        if (q == 0) throw invalid_input("variant: q must be nonzero");
        return Variant::q_difference(cx(q, 0));
    }
    throw invalid_input("variant: expected difference, autonomous, or q=VALUE");
}

namespace {

std::string variant_to_string(const Variant& v) {
    switch (v.kind) {
        case VariantKind::difference: return "difference";
        case VariantKind::autonomous: return "autonomous";
        case VariantKind::q_difference: {
            return "q=" + format_double17(v.q.real());
        }
    }
    return "difference";
}

std::vector<std::vector<cx>> groups_from_json(const json& j, int m, int n) {
    std::vector<std::vector<cx>> groups;
    for (const json& g : j) {
        std::vector<cx> vals;
        for (const json& e : g) vals.push_back(cx(e.at("re").get<double>(), e.at("im").get<double>()));
        groups.push_back(std::move(vals));
    }
    if (static_cast<int>(groups.size()) != n) throw invalid_input("groups json: expected n groups");
    for (const auto& g : groups)
        if (static_cast<int>(g.size()) != m) throw invalid_input("groups json: expected m values per group");
    return groups;
}

json groups_to_json(const std::vector<std::vector<cx>>& groups) {
    json out = json::array();
    for (const auto& g : groups) {
        json row = json::array();
        for (cx a : g) row.push_back(json{{"re", a.real()}, {"im", a.imag()}});
        out.push_back(std::move(row));
    }
    return out;
}

void apply_tolerance_overrides(Tolerances& t, const json& j) {
    const auto get = [&](const char* name, double& field) {
        if (j.contains(name)) field = j.at(name).get<double>();
    };
    get("residual", t.residual);
    get("kernel_simplicity", t.kernel_simplicity);
    get("eigvec_condition", t.eigvec_condition);
    get("congruence", t.congruence);
    get("congruence_margin", t.congruence_margin);
    get("sylvester_condition", t.sylvester_condition);
    get("spectrum_match", t.spectrum_match);
    get("drift", t.drift);
}

json tolerances_to_json(const Tolerances& t) {
    return json{{"residual", t.residual},
                {"kernel_simplicity", t.kernel_simplicity},
                {"eigvec_condition", t.eigvec_condition},
                {"congruence", t.congruence},
                {"congruence_margin", t.congruence_margin},
                {"sylvester_condition", t.sylvester_condition},
                {"spectrum_match", t.spectrum_match},
                {"drift", t.drift}};
}

}  // namespace

SystemConfig system_config_from_json(const json& j) {
    SystemConfig c;
    c.m = j.at("m").get<int>();
    c.n = j.at("n").get<int>();
    if (c.m < 1 || c.n < 1) throw invalid_input("system config: m and n must be positive");

    int reps = 0;
    if (j.contains("coefficients")) {
        c.rep = SystemConfig::Rep::coefficients;
        ++reps;
    }
    if (j.contains("divisors")) {
        c.rep = SystemConfig::Rep::divisors;
        ++reps;
    }
    if (j.contains("factors")) {
        c.rep = SystemConfig::Rep::factors;
        ++reps;
    }
    if (reps > 1)
        throw invalid_input("system config: exactly one of coefficients/divisors/factors allowed");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (reps == 0) {
        if (!c.seed) throw invalid_input("system config: provide a representation or a seed");
        c.rep = SystemConfig::Rep::random;
    }

    if (j.contains("A0")) {
        c.A0 = matrix_from_json(j.at("A0"));
        if (c.A0.rows() != c.m) throw invalid_input("system config: A0 dimension mismatch");
    } else if (c.rep != SystemConfig::Rep::random) {
        c.A0 = cmat::Identity(c.m, c.m);
    }

    if (c.rep != SystemConfig::Rep::random) {
        const char* key = c.rep == SystemConfig::Rep::coefficients ? "coefficients"
                          : c.rep == SystemConfig::Rep::divisors   ? "divisors"
                                                                   : "factors";
        for (const json& mj : j.at(key)) c.data.push_back(matrix_from_json(mj));
        if (static_cast<int>(c.data.size()) != c.n)
            throw invalid_input("system config: expected n matrices in the representation");
        for (const cmat& M : c.data)
            if (M.rows() != c.m || M.cols() != c.m)
                throw invalid_input("system config: representation dimension mismatch");
    }

    if (j.contains("groups")) c.groups = groups_from_json(j.at("groups"), c.m, c.n);
    if (j.contains("variant")) c.variant = variant_from_string(j.at("variant").get<std::string>());
    if (j.contains("tolerances")) apply_tolerance_overrides(c.tol, j.at("tolerances"));
    return c;
}

json system_config_to_json(const SystemConfig& c) {
    json j{{"m", c.m}, {"n", c.n}};
    if (c.A0.size() > 0) j["A0"] = matrix_to_json(c.A0);
    json mats = json::array();
    for (const cmat& M : c.data) mats.push_back(matrix_to_json(M));
    switch (c.rep) {
        case SystemConfig::Rep::coefficients: j["coefficients"] = std::move(mats); break;
        case SystemConfig::Rep::divisors: j["divisors"] = std::move(mats); break;
        case SystemConfig::Rep::factors: j["factors"] = std::move(mats); break;
        case SystemConfig::Rep::random: break;
    }
    if (c.groups) j["groups"] = groups_to_json(*c.groups);
    j["variant"] = variant_to_string(c.variant);
    if (c.seed) j["seed"] = *c.seed;
    j["tolerances"] = tolerances_to_json(c.tol);
    return j;
}

SystemConfig load_system_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open system config: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw invalid_input("system config parse error: " + std::string(e.what()));
    }
    return system_config_from_json(j);
}

void save_system_config(const SystemConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write system config: " + path);
    out << system_config_to_json(c).dump(2) << "\n";
}

namespace {

MatrixPolynomial build_polynomial(const SystemConfig& c, const std::vector<std::vector<cx>>& groups) {
    switch (c.rep) {
        case SystemConfig::Rep::coefficients: {
            std::vector<cmat> coeffs{c.A0};
            coeffs.insert(coeffs.end(), c.data.begin(), c.data.end());
            return MatrixPolynomial(std::move(coeffs));
        }
        case SystemConfig::Rep::divisors:
            return from_right_divisors(c.A0, c.data, groups, c.tol);
        case SystemConfig::Rep::factors: {
            MatrixPolynomial P = MatrixPolynomial::monic_linear(c.data.front());
            for (size_t i = 1; i < c.data.size(); ++i)
                P = P * MatrixPolynomial::monic_linear(c.data[i]);
            return P.left_mul(c.A0);
        }
        case SystemConfig::Rep::random: break;
    }
    throw invalid_input("system config: cannot build a polynomial from a random config directly");
}

}  // namespace

SpectrumGroups groups_from_config(const SystemConfig& c) {
    SpectrumGroups g;
    g.m = c.m;
    g.n = c.n;
    if (c.groups) {
        g.groups = *c.groups;
    } else if (c.rep == SystemConfig::Rep::divisors || c.rep == SystemConfig::Rep::factors) {
        for (const cmat& M : c.data) g.groups.push_back(matrix_spectrum(M));
    } else if (c.rep == SystemConfig::Rep::coefficients) {
        std::vector<cmat> coeffs{c.A0};
        coeffs.insert(coeffs.end(), c.data.begin(), c.data.end());
        g = default_grouping(eigenvalues(MatrixPolynomial(std::move(coeffs)), c.tol), c.m, c.n);
    } else {
        throw invalid_input("groups_from_config: random configs carry their own groups");
    }
    validate_groups(g, c.variant, c.tol);
    return g;
}

DivisorState divisor_state_from_config(const SystemConfig& c) {
    if (c.rep == SystemConfig::Rep::random) {
        Rng rng(*c.seed);
        return random_divisor_state(rng, c.m, c.n, c.variant, false, c.tol);
    }
    const SpectrumGroups g = groups_from_config(c);
    if (c.rep == SystemConfig::Rep::divisors)
        return make_divisor_state(c.A0, c.data, g.groups, c.variant, c.tol);
    if (c.rep == SystemConfig::Rep::factors) {
        const FactorState fs = make_factor_state(c.A0, c.data, g.groups, c.variant, c.tol);
        return b_from_c(fs, LatticePoint(static_cast<size_t>(c.n), 0), c.tol);
    }
    // coefficients: extract the right divisors group by group
    const MatrixPolynomial A = build_polynomial(c, g.groups);
    std::vector<cmat> B(static_cast<size_t>(c.n));
    for (int i = 0; i < c.n; ++i)
        B[static_cast<size_t>(i)] = right_divisor(A, g.groups[static_cast<size_t>(i)], c.tol);
    return make_divisor_state(c.A0, std::move(B), g.groups, c.variant, c.tol);
}

FactorState factor_state_from_config(const SystemConfig& c) {
    if (c.rep == SystemConfig::Rep::random) {
        Rng rng(*c.seed);
        return random_factor_state(rng, c.m, c.n, c.variant, false, c.tol);
    }
    const SpectrumGroups g = groups_from_config(c);
    if (c.rep == SystemConfig::Rep::factors)
        return make_factor_state(c.A0, c.data, g.groups, c.variant, c.tol);
    // peel ordered factors off the polynomial from the right
    MatrixPolynomial A = build_polynomial(c, g.groups);
    std::vector<cmat> C(static_cast<size_t>(c.n));
    for (int i = c.n - 1; i >= 0; --i) {
        C[static_cast<size_t>(i)] = right_divisor(A, g.groups[static_cast<size_t>(i)], c.tol);
        if (i > 0) {
            double rem = 0;
            A = divide_right_linear(A, C[static_cast<size_t>(i)], &rem);
            if (rem > c.tol.residual * 1e3)
                throw internal_error("factor extraction: division by an extracted factor left a remainder");
        }
    }
    return make_factor_state(c.A0, std::move(C), g.groups, c.variant, c.tol);
}

MatrixPolynomial polynomial_from_config(const SystemConfig& c) {
    if (c.rep == SystemConfig::Rep::random) {
        Rng rng(*c.seed);
        return random_polynomial(rng, c.m, c.n, c.tol).A;
    }
    return build_polynomial(c, groups_from_config(c).groups);
}

ContinuousSystem continuous_from_json(const json& j) {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    std::optional<cmat> Binf;
    if (j.contains("Binf") && !j.at("Binf").is_null()) Binf = matrix_from_json(j.at("Binf"));
    std::vector<cmat> B;
    for (const json& mj : j.at("B")) B.push_back(matrix_from_json(mj));
    std::vector<cx> x;
    for (const json& e : j.at("x")) x.push_back(cx(e.at("re").get<double>(), e.at("im").get<double>()));
    if (static_cast<int>(B.size()) != n || static_cast<int>(x.size()) != n)
        throw invalid_input("continuous system json: expected n residues and n poles");
    for (const cmat& Bk : B)
        if (Bk.rows() != m) throw invalid_input("continuous system json: dimension mismatch");
    return ContinuousSystem::make(std::move(Binf), std::move(B), std::move(x));
}

json continuous_to_json(const ContinuousSystem& s) {
    json j{{"m", s.m}, {"n", s.n}};
    if (s.Binf) j["Binf"] = matrix_to_json(*s.Binf);
    json B = json::array();
    for (const cmat& Bk : s.B) B.push_back(matrix_to_json(Bk));
    j["B"] = std::move(B);
    json x = json::array();
    for (cx xk : s.x) x.push_back(json{{"re", xk.real()}, {"im", xk.imag()}});
    j["x"] = std::move(x);
    return j;
}

ContinuousSystem load_continuous_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open continuous system: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw invalid_input("continuous system parse error: " + std::string(e.what()));
    }
    return continuous_from_json(j);
}

json trajectory_to_json(std::span<const DivisorState> traj, const Tolerances& tol) {
    json out = json::array();
    for (size_t t = 0; t < traj.size(); ++t) {
        const DivisorState& s = traj[t];
        json row;
        row["k"] = s.k;
        json B = json::array();
        for (const cmat& Bi : s.B) B.push_back(matrix_to_json(Bi));
        row["B"] = std::move(B);
        const ResidualReport rep =
            t == 0 ? check_residuals(std::span(traj.data(), 1), tol)
                   : check_residuals(std::span(traj.data() + t - 1, 2), tol);
        row["residuals"] = json{{"exchange_additive", rep.exchange_additive},
                                {"exchange_multiplicative", rep.exchange_multiplicative},
                                {"diagonal_rule", rep.diagonal_rule},
                                {"exchange_product", rep.exchange_product},
                                {"spectra", rep.spectra}};
        out.push_back(std::move(row));
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, std::span<const DivisorState> traj) {
    if (traj.empty()) return;
    const int n = traj.front().order();
    const int m = traj.front().dim();
    for (int i = 0; i < n; ++i) os << "k" << (i + 1) << ",";
    os << "block,row,col,re,im\n";
    for (const DivisorState& s : traj) {
        for (int b = 0; b < n; ++b)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    for (int i = 0; i < n; ++i) os << s.k[static_cast<size_t>(i)] << ",";
                    const cx v = s.B[static_cast<size_t>(b)](r, c);
                    os << b << "," << r << "," << c << "," << format_double17(v.real()) << ","
                       << format_double17(v.imag()) << "\n";
                }
    }
}

json limit_rows_to_json(std::span<const LimitRow> rows) {
    json out = json::array();
    for (const LimitRow& r : rows)
        out.push_back(json{{"epsilon", r.epsilon}, {"i", r.i}, {"error", r.error}});
    return out;
}

void write_limit_csv(std::ostream& os, std::span<const LimitRow> rows) {
    os << "epsilon,i,error\n";
    for (const LimitRow& r : rows)
        os << format_double17(r.epsilon) << "," << r.i << "," << format_double17(r.error) << "\n";
}

json transform_rows_to_json(std::span<const TransformLimitRow> rows) {
    json out = json::array();
    for (const TransformLimitRow& r : rows)
        out.push_back(json{{"epsilon", r.epsilon},
                           {"l", r.l},
                           {"error", r.error},
                           {"multiplier_gap", r.multiplier_gap}});
    return out;
}

void write_transform_csv(std::ostream& os, std::span<const TransformLimitRow> rows) {
    os << "epsilon,l,error,multiplier_gap\n";
    for (const TransformLimitRow& r : rows)
        os << format_double17(r.epsilon) << "," << r.l << "," << format_double17(r.error) << ","
           << format_double17(r.multiplier_gap) << "\n";
}

}  // namespace isomono
