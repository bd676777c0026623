// isomono: isomonodromy transformations of linear difference systems.
// Subcommands: run (lattice trajectories), check (invariant suites),
// limit (continuum-limit experiments), transform (Schlesinger action).
//
// Exit codes: 0 success, 1 invariant violation or internal inconsistency,
// 2 validation error, 3 genericity abort, 4 tolerance failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "isomono/io.hpp"

using namespace isomono;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitValidation = 2;
constexpr int kExitGenericity = 3;
constexpr int kExitTolerance = 4;

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            if constexpr (std::is_same_v<T, long>)
                out.push_back(std::stol(item));
            else if constexpr (std::is_same_v<T, int>)
                out.push_back(std::stoi(item));
            else
                out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw invalid_input(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) throw invalid_input(std::string(what) + " list is empty");
    return out;
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw invalid_input("cannot write output file: " + out_path);
    os << payload;
}

struct CommonOpts {
    std::string system;
    std::string out;
    std::string format = "json";
    std::string variant;
    double tol = 0;
    std::int64_t seed = -1;
};

SystemConfig load_config(const CommonOpts& o) {
    SystemConfig c = load_system_config(o.system);
    if (!o.variant.empty()) c.variant = variant_from_string(o.variant);
    if (o.seed >= 0) {
        c.seed = static_cast<std::uint64_t>(o.seed);
        if (c.data.empty()) c.rep = SystemConfig::Rep::random;
    }
    if (o.tol > 0) c.tol.residual = o.tol;
    return c;
}

json factor_trajectory_to_json(std::span<const FactorState> traj, const Tolerances& tol) {
    json out = json::array();
    for (size_t t = 0; t < traj.size(); ++t) {
        const FactorState& s = traj[t];
        json row;
        row["k"] = s.l;
        json C = json::array();
        for (const cmat& Ci : s.C) C.push_back(matrix_to_json(Ci));
        row["C"] = std::move(C);
        double window_identity = 0;
        if (t > 0) {
            const FactorState& prev = traj[t - 1];
            for (int i = 0; i < s.order(); ++i)
                if (s.l[static_cast<size_t>(i)] == prev.l[static_cast<size_t>(i)] + 1)
                    window_identity = std::max(window_identity, factor_step_residual(prev, s, i, tol));
        }
        row["residuals"] = json{{"window_identity", window_identity}};
        out.push_back(std::move(row));
    }
    return out;
}

void write_factor_csv(std::ostream& os, std::span<const FactorState> traj) {
    if (traj.empty()) return;
    const int n = traj.front().order();
    const int m = traj.front().dim();
    for (int i = 0; i < n; ++i) os << "k" << (i + 1) << ",";
    os << "block,row,col,re,im\n";
    for (const FactorState& s : traj)
        for (int b = 0; b < n; ++b)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    for (int i = 0; i < n; ++i) os << s.l[static_cast<size_t>(i)] << ",";
                    const cx v = s.C[static_cast<size_t>(b)](r, c);
                    os << b << "," << r << "," << c << "," << format_double17(v.real()) << ","
                       << format_double17(v.imag()) << "\n";
                }
}

int cmd_run(const CommonOpts& o, const std::string& mode, const std::string& target_text) {
    const SystemConfig cfg = load_config(o);
    const auto target = parse_list<long>(target_text, "target");
    std::string payload;
    if (mode == "divisor") {
        const DivisorState s = divisor_state_from_config(cfg);
        const auto path = divisor_flow_path(s, target, cfg.tol);
        const ResidualReport rep = check_residuals(path, cfg.tol);
        const double worst = std::max({rep.exchange_additive, rep.exchange_multiplicative, rep.diagonal_rule, rep.exchange_product});
        if (o.format == "csv") {
            std::ostringstream os;
            write_trajectory_csv(os, path);
            payload = os.str();
        } else {
            payload = trajectory_to_json(path, cfg.tol).dump(2) + "\n";
        }
        emit(o.out, payload);
        if (worst > std::max(cfg.tol.residual * 10, 1e-8) || rep.spectra > cfg.tol.spectrum_match)
            return kExitTolerance;
    } else if (mode == "factor") {
        const FactorState s = factor_state_from_config(cfg);
        const auto path = factor_flow_path(s, target, cfg.tol);
        if (o.format == "csv") {
            std::ostringstream os;
            write_factor_csv(os, path);
            payload = os.str();
        } else {
            payload = factor_trajectory_to_json(path, cfg.tol).dump(2) + "\n";
        }
        emit(o.out, payload);
    } else {
        throw invalid_input("mode must be divisor or factor");
    }
    return kExitOk;
}

struct CheckResult {
    std::string name;
    double value;
    double threshold;         // at the requested tolerance
    double default_threshold; // at the library defaults
};

void run_refactor_suite(Rng& rng, std::vector<CheckResult>& out, double tol_scale) {
    const FactorState fs = random_factor_state(rng, 2, 2);
    const cmat X = fs.C[0], Y = fs.C[1];
    const SwapResult sw = swap_adjacent(X, Y);
    const SwapResult sw2 = swap_adjacent_2x2(X, Y);
    const SwapResult sw3 = swap_via_eigen(X, Y);
    out.push_back({"refactor.route_sylvester_vs_2x2",
                   std::max((sw.S - sw2.S).norm(), (sw.T - sw2.T).norm()), 1e-8 * tol_scale, 1e-8});
    out.push_back({"refactor.route_sylvester_vs_eigen",
                   std::max((sw.S - sw3.S).norm(), (sw.T - sw3.T).norm()), 1e-8 * tol_scale, 1e-8});
    double prod = 0;
    for (int s = 0; s < 5; ++s) {
        const cx z{0.3 + 0.8 * s, -0.2 + 0.3 * s};
        const cmat I = cmat::Identity(2, 2);
        const cmat lhs = (z * I - X) * (z * I - Y);
        const cmat rhs = (z * I - sw.S) * (z * I - sw.T);
        prod = std::max(prod, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
    }
    out.push_back({"refactor.product_identity", prod, 1e-9 * tol_scale, 1e-9});
    const cmat D = X - sw.S;
    const cmat Yrec = D.fullPivLu().inverse() * sw.S * D;
    out.push_back({"refactor.conjugation_consistency", (Yrec - Y).norm() / std::max(1.0, Y.norm()),
                   1e-9 * tol_scale, 1e-9});
}

void run_flows_suite(Rng& rng, std::vector<CheckResult>& out, double tol_scale) {
    const FactorState fs = random_factor_state(rng, 2, 2);
    const DivisorState ds = b_from_c(fs, {0, 0});
    // spectra law
    const DivisorState moved = divisor_flow(ds, {2, -1});
    double worst_spectra = 0;
    for (int i = 0; i < 2; ++i) {
        const auto found = matrix_spectrum(moved.B[static_cast<size_t>(i)]);
        for (const cx e : moved.expected_spectrum(i)) {
            double best = 1e300;
            for (const cx f : found) best = std::min(best, std::abs(f - e));
            worst_spectra = std::max(worst_spectra, best);
        }
    }
    out.push_back({"flows.spectra_shift_law", worst_spectra, 1e-6 * tol_scale, 1e-6});
    // additivity
    const DivisorState two = divisor_flow(divisor_flow(ds, {1, 0}), {2, -1});
    double add = 0;
    for (int i = 0; i < 2; ++i)
        add = std::max(add, (two.B[static_cast<size_t>(i)] - moved.B[static_cast<size_t>(i)]).norm() /
                                std::max(1.0, moved.B[static_cast<size_t>(i)].norm()));
    out.push_back({"flows.lattice_additivity", add, 1e-7 * tol_scale, 1e-7});
    // route equivalence
    const DivisorState via_c = b_from_c(fs, {2, -1});
    double route = 0;
    for (int i = 0; i < 2; ++i)
        route = std::max(route, (via_c.B[static_cast<size_t>(i)] - moved.B[static_cast<size_t>(i)]).norm() /
                                    std::max(1.0, moved.B[static_cast<size_t>(i)].norm()));
    out.push_back({"flows.route_equivalence", route, 1e-7 * tol_scale, 1e-7});
    // Prop 3.6 multiplier on a formal-series-admissible polynomial
    Rng rng2(rng());
    const auto [A, groups] = random_polynomial(rng2, 2, 2);
    const cmat B0 = right_divisor(A, groups.groups[0]);
    const SchlesingerResult sr = schlesinger_action(A, groups.flattened(), {-1, -1, 0, 0}, {1, 1});
    double mult = 0;
    for (int s = 0; s < 5; ++s) {
        const cx z{0.4 + 0.9 * s, 0.2 - 0.35 * s};
        mult = std::max(mult, (eval_composed(sr.moves, z) - (z * cmat::Identity(2, 2) - B0)).norm());
    }
    out.push_back({"flows.unit_shift_multiplier", mult / std::max(1.0, B0.norm()), 1e-8 * tol_scale, 1e-8});
}

void run_continuum_suite(Rng& rng, std::vector<CheckResult>& out, double tol_scale) {
    const ContinuousSystem sys = random_continuous_system(rng, 2, 2, true);
    const auto drv = schlesinger_rhs(sys);
    double sum_rule = 0;
    for (int j = 0; j < 2; ++j) {
        cmat sum = cmat::Zero(2, 2);
        for (int l = 0; l < 2; ++l) sum += drv[static_cast<size_t>(j)][static_cast<size_t>(l)];
        const cmat want = (*sys.Binf) * sys.B[static_cast<size_t>(j)] - sys.B[static_cast<size_t>(j)] * (*sys.Binf);
        sum_rule = std::max(sum_rule, (sum - want).norm());
    }
    out.push_back({"continuum.rhs_sum_rule", sum_rule, 1e-12 * tol_scale, 1e-12});

    std::vector<cx> x_end = sys.x;
    x_end[0] += cx(0.4, 0);
    const ContinuousSystem evolved = integrate(sys, {x_end}, 1e-3);
    double drift = 0;
    for (int k = 0; k < 2; ++k) {
        const auto found = matrix_spectrum(evolved.B[static_cast<size_t>(k)]);
        for (const cx e : sys.spectra[static_cast<size_t>(k)]) {
            double best = 1e300;
            for (const cx f : found) best = std::min(best, std::abs(f - e));
            drift = std::max(drift, best);
        }
    }
    out.push_back({"continuum.isospectrality", drift, 1e-8 * tol_scale, 1e-8});

    EmbeddingConfig ecfg;
    ecfg.epsilon = 0.1;
    ecfg.y = sys.x;
    const auto rows = limit_compare(sys, ecfg, {0.0, 0.0}, 0);
    double zero_err = 0;
    for (const LimitRow& r : rows) zero_err = std::max(zero_err, r.error);
    out.push_back({"continuum.zero_target_limit", zero_err, 1e-10 * tol_scale, 1e-10});
}

int cmd_check(const CommonOpts& o, const std::string& suite, int seeds) {
    SystemConfig cfg;
    if (!o.system.empty()) {
        cfg = load_config(o);
    } else {
        cfg.m = 2;
        cfg.n = 2;
        cfg.rep = SystemConfig::Rep::random;
        cfg.seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : 12345u;
    }
    const double tol_scale = o.tol > 0 ? o.tol / default_tolerances().residual : 1.0;

    std::vector<CheckResult> results;
    for (int s = 0; s < seeds; ++s) {
        Rng rng((cfg.seed ? *cfg.seed : 12345u) + static_cast<std::uint64_t>(s) * 7919u);
        if (suite == "refactor" || suite == "all") run_refactor_suite(rng, results, tol_scale);
        if (suite == "flows" || suite == "all") run_flows_suite(rng, results, tol_scale);
        if (suite == "continuum" || suite == "all") run_continuum_suite(rng, results, tol_scale);
    }
    if (results.empty()) throw invalid_input("suite must be refactor, flows, continuum, or all");

    bool any_fail = false, invariant_false = false;
    json rows = json::array();
    for (const CheckResult& r : results) {
        const bool pass = r.value <= r.threshold;
        if (!pass) {
            any_fail = true;
            if (r.value > r.default_threshold) invariant_false = true;
        }
        rows.push_back(json{{"name", r.name},
                            {"value", r.value},
                            {"threshold", r.threshold},
                            {"pass", pass}});
    }
    json report{{"suite", suite}, {"checks", rows}, {"pass", !any_fail}};
    emit(o.out, report.dump(2) + "\n");
    if (!any_fail) return kExitOk;
    return invariant_false ? kExitInvariant : kExitTolerance;
}

int cmd_limit(const CommonOpts& o, double epsilon, int halvings, const std::string& target_text,
              const std::string& lambda_pole_text, const std::string& lambda_inf_text, int jobs) {
    const ContinuousSystem sys = load_continuous_system(o.system);
    EmbeddingConfig ecfg;
    ecfg.epsilon = epsilon;
    ecfg.y = sys.x;
    Tolerances tol;
    if (o.tol > 0) tol.residual = o.tol;

    std::string payload;
    if (!lambda_pole_text.empty() || !lambda_inf_text.empty()) {
        if (lambda_pole_text.empty() || lambda_inf_text.empty())
            throw invalid_input("transform check needs both --lambda-pole and --lambda-inf");
        const auto flat = parse_list<int>(lambda_pole_text, "lambda-pole");
        if (static_cast<int>(flat.size()) != sys.n * sys.m)
            throw invalid_input("lambda-pole must have n*m entries (pole-major)");
        std::vector<std::vector<int>> lp(static_cast<size_t>(sys.n));
        for (int k = 0; k < sys.n; ++k)
            lp[static_cast<size_t>(k)] = std::vector<int>(flat.begin() + k * sys.m, flat.begin() + (k + 1) * sys.m);
        const auto li = parse_list<int>(lambda_inf_text, "lambda-inf");
        if (static_cast<int>(li.size()) != sys.m) throw invalid_input("lambda-inf must have m entries");
        const auto rows = transform_limit_check(sys, ecfg, lp, li, halvings, tol);
        if (o.format == "csv") {
            std::ostringstream os;
            write_transform_csv(os, rows);
            payload = os.str();
        } else {
            payload = transform_rows_to_json(rows).dump(2) + "\n";
        }
    } else {
        const auto x_target = parse_list<double>(target_text, "target");
        const auto rows = limit_compare(sys, ecfg, x_target, halvings, 1e-3, tol, jobs);
        if (o.format == "csv") {
            std::ostringstream os;
            write_limit_csv(os, rows);
            payload = os.str();
        } else {
            payload = limit_rows_to_json(rows).dump(2) + "\n";
        }
    }
    emit(o.out, payload);
    return kExitOk;
}

int cmd_transform(const CommonOpts& o, const std::string& kappa_text, const std::string& delta_text) {
    const SystemConfig cfg = load_config(o);
    const MatrixPolynomial A = polynomial_from_config(cfg);
    const SpectrumGroups groups = cfg.rep == SystemConfig::Rep::random
                                      ? [&] {
                                            Rng rng(*cfg.seed);
                                            return random_polynomial(rng, cfg.m, cfg.n, cfg.tol).groups;
                                        }()
                                      : groups_from_config(cfg);
    const auto kappa = parse_list<int>(kappa_text, "kappa");
    const auto delta = parse_list<int>(delta_text, "delta");
    if (static_cast<int>(kappa.size()) != cfg.m * cfg.n)
        throw invalid_input("kappa must have m*n entries (group-major)");
    if (static_cast<int>(delta.size()) != cfg.m) throw invalid_input("delta must have m entries");

    const std::vector<cx> roots = groups.flattened();
    const cvec d_before = formal_exponents(A, cfg.tol);
    const SchlesingerResult res = schlesinger_action(A, roots, kappa, delta, MoveOrder::forward, cfg.tol);
    const cvec d_after = formal_exponents(res.A, cfg.tol);

    // certificate: measured root and exponent shifts
    const std::vector<cx> roots_after = eigenvalues(res.A, cfg.tol);
    std::vector<cx> expected_roots = roots;
    for (size_t i = 0; i < roots.size(); ++i) expected_roots[i] += static_cast<double>(kappa[i]);
    const double root_err = match_spectra(expected_roots, roots_after, cfg.tol.spectrum_match);
    double d_err = 0;
    for (int i = 0; i < cfg.m; ++i)
        d_err = std::max(d_err, std::abs(d_after(i) - d_before(i) - cx(delta[static_cast<size_t>(i)], 0)));
    const double a0_err = (res.A.leading() - A.leading()).norm();

    SystemConfig out_cfg;
    out_cfg.m = cfg.m;
    out_cfg.n = cfg.n;
    out_cfg.A0 = res.A.leading();
    out_cfg.rep = SystemConfig::Rep::coefficients;
    out_cfg.data.assign(res.A.coeffs().begin() + 1, res.A.coeffs().end());
    std::vector<std::vector<cx>> shifted_groups(static_cast<size_t>(cfg.n));
    for (int g = 0; g < cfg.n; ++g)
        for (int j = 0; j < cfg.m; ++j)
            shifted_groups[static_cast<size_t>(g)].push_back(
                roots[static_cast<size_t>(g * cfg.m + j)] +
                static_cast<double>(kappa[static_cast<size_t>(g * cfg.m + j)]));
    out_cfg.groups = shifted_groups;
    out_cfg.variant = cfg.variant;
    out_cfg.tol = cfg.tol;

    json payload = system_config_to_json(out_cfg);
    payload["certificate"] = json{{"root_shift_error", root_err},
                                  {"exponent_shift_error", d_err},
                                  {"leading_coefficient_drift", a0_err},
                                  {"moves", res.moves.size()}};
    emit(o.out, payload.dump(2) + "\n");
    if (root_err > cfg.tol.spectrum_match || d_err > 1e-8 || a0_err > 1e-10 * std::max(1.0, A.leading().norm()))
        return kExitTolerance;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isomonodromy transformations of linear difference systems"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string mode = "divisor", target, suite = "all";
    std::string kappa_text, delta_text, lambda_pole_text, lambda_inf_text;
    double epsilon = 0.1;
    int halvings = 3, jobs = 1, seeds = 1;

    const auto add_common = [&](CLI::App* sub, bool system_required) {
        sub->add_option("--system", common.system, "system JSON file")->required(system_required);
        sub->add_option("--out", common.out, "output path (default stdout)");
        sub->add_option("--format", common.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--variant", common.variant, "difference | q=VALUE | autonomous");
        sub->add_option("--tol", common.tol, "residual tolerance override");
        sub->add_option("--seed", common.seed, "seed for random systems");
    };

    CLI::App* run = app.add_subcommand("run", "run a lattice trajectory");
    add_common(run, true);
    run->add_option("--mode", mode, "divisor|factor")->check(CLI::IsMember({"divisor", "factor"}));
    run->add_option("--target", target, "lattice point k1,...,kn")->required();

    CLI::App* check = app.add_subcommand("check", "run invariant suites");
    add_common(check, false);
    check->add_option("--suite", suite, "refactor|flows|continuum|all")
        ->check(CLI::IsMember({"refactor", "flows", "continuum", "all"}));
    check->add_option("--seeds", seeds, "number of random seeds");

    CLI::App* limit = app.add_subcommand("limit", "continuum limit experiments");
    add_common(limit, true);
    limit->add_option("--epsilon", epsilon, "starting epsilon");
    limit->add_option("--halvings", halvings, "number of epsilon halvings");
    limit->add_option("--target", target, "real targets x1,...,xn");
    limit->add_option("--lambda-pole", lambda_pole_text, "n*m integers, pole-major");
    limit->add_option("--lambda-inf", lambda_inf_text, "m integers");
    limit->add_option("--jobs", jobs, "parallel epsilon levels");

    CLI::App* transform = app.add_subcommand("transform", "apply a Schlesinger transformation");
    add_common(transform, true);
    transform->add_option("--kappa", kappa_text, "m*n root shifts, group-major")->required();
    transform->add_option("--delta", delta_text, "m exponent shifts")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(common, mode, target);
        if (check->parsed()) return cmd_check(common, suite, seeds);
        if (limit->parsed())
            return cmd_limit(common, epsilon, halvings, target, lambda_pole_text, lambda_inf_text, jobs);
        if (transform->parsed()) return cmd_transform(common, kappa_text, delta_text);
    } catch (const invalid_input& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const genericity_error& e) {
        std::cerr << "genericity abort: " << e.what() << "\n";
        return kExitGenericity;
    } catch (const internal_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitValidation;
}
