#include "isomono/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

namespace isomono {

void ContinuousSystem::validate(const Tolerances& tol) const {
    if (static_cast<int>(B.size()) != n || static_cast<int>(x.size()) != n)
        throw invalid_input("continuous system: need n residues and n poles");
    for (size_t a = 0; a < x.size(); ++a)
        for (size_t b = a + 1; b < x.size(); ++b)
            if (std::abs(x[a] - x[b]) < 1e-9)
                throw invalid_input("continuous system: poles " + format_complex(x[a]) + " and " +
                                    format_complex(x[b]) + " coincide");
    for (int k = 0; k < n; ++k) {
        const auto& t = spectra.at(static_cast<size_t>(k));
        for (size_t a = 0; a < t.size(); ++a)
            for (size_t b = a + 1; b < t.size(); ++b) {
                if (integer_distance(t[a] - t[b]) <= tol.congruence)
                    throw invalid_input("continuous system: residue eigenvalues differ by an integer");
            }
    }
    if (Binf) {
        if (Binf->rows() != m) throw invalid_input("continuous system: B_inf dimension mismatch");
        const cmat D = Binf->diagonal().asDiagonal();
        if ((*Binf - D).norm() > 1e-12 * std::max(1.0, Binf->norm()))
            throw invalid_input("continuous system: B_inf must be diagonal (conjugate first)");
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (std::abs((*Binf)(a, a) - (*Binf)(b, b)) < 1e-9)
                    throw invalid_input("continuous system: B_inf entries must be distinct");
    }
}

ContinuousSystem ContinuousSystem::make(std::optional<cmat> Binf, std::vector<cmat> B,
                                        std::vector<cx> x, const Tolerances& tol) {
    ContinuousSystem s;
    s.n = static_cast<int>(B.size());
    if (s.n == 0) throw invalid_input("continuous system: need at least one pole");
    s.m = static_cast<int>(B.front().rows());
    s.Binf = std::move(Binf);
    s.B = std::move(B);
    s.x = std::move(x);
    for (const cmat& Bk : s.B) s.spectra.push_back(matrix_spectrum(Bk));
    s.validate(tol);
    return s;
}

std::vector<std::vector<cmat>> schlesinger_rhs(const ContinuousSystem& sys) {
    const int n = sys.n;
    const auto comm = [](const cmat& X, const cmat& Y) -> cmat { return X * Y - Y * X; };
    std::vector<std::vector<cmat>> drv(static_cast<size_t>(n), std::vector<cmat>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            if (l != j) {
                const cx dx = sys.x[static_cast<size_t>(j)] - sys.x[static_cast<size_t>(l)];
                if (std::abs(dx) < 1e-12) throw invalid_input("schlesinger_rhs: coincident poles");
                drv[static_cast<size_t>(j)][static_cast<size_t>(l)] =
                    comm(sys.B[static_cast<size_t>(j)], sys.B[static_cast<size_t>(l)]) / dx;
            }
        }
        cmat diag = cmat::Zero(sys.m, sys.m);
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            const cx dx = sys.x[static_cast<size_t>(l)] - sys.x[static_cast<size_t>(j)];
            diag += comm(sys.B[static_cast<size_t>(j)], sys.B[static_cast<size_t>(l)]) / dx;
        }
        if (sys.Binf) diag -= comm(sys.B[static_cast<size_t>(j)], *sys.Binf);
        drv[static_cast<size_t>(j)][static_cast<size_t>(j)] = diag;
    }
    return drv;
}

namespace {

std::vector<cmat> flow_rhs(const ContinuousSystem& sys, const std::vector<cx>& xdot) {
    const auto drv = schlesinger_rhs(sys);
    std::vector<cmat> out(static_cast<size_t>(sys.n), cmat::Zero(sys.m, sys.m));
    for (int l = 0; l < sys.n; ++l)
        for (int j = 0; j < sys.n; ++j)
            out[static_cast<size_t>(l)] += xdot[static_cast<size_t>(j)] * drv[static_cast<size_t>(j)][static_cast<size_t>(l)];
    return out;
}

void check_collision(const std::vector<cx>& x) {
    for (size_t a = 0; a < x.size(); ++a)
        for (size_t b = a + 1; b < x.size(); ++b)
            if (std::abs(x[a] - x[b]) < 1e-6)
                throw invalid_input("integrate: pole collision along the path");
}

ContinuousSystem integrate_segment(ContinuousSystem sys, const std::vector<cx>& x_end, double step,
                                   const Tolerances& tol) {
    const int n = sys.n;
    std::vector<cx> xdot(static_cast<size_t>(n));
    double len = 0;
    for (int j = 0; j < n; ++j) {
        xdot[static_cast<size_t>(j)] = x_end[static_cast<size_t>(j)] - sys.x[static_cast<size_t>(j)];
        len = std::max(len, std::abs(xdot[static_cast<size_t>(j)]));
    }
    if (len == 0) return sys;

    const std::vector<std::vector<cx>> base_spectra = sys.spectra;
    const std::vector<cmat> B_start = sys.B;
    const std::vector<cx> x_start = sys.x;

    double h0 = step / len;  // parameter step for unit-speed-by-infinity-norm
    for (int attempt = 0; attempt < 4; ++attempt) {
        const long steps = std::max(1L, std::lround(std::ceil(1.0 / h0)));
        const double h = 1.0 / static_cast<double>(steps);
        sys.B = B_start;
        sys.x = x_start;
        auto at = [&](double t) {
            std::vector<cx> xs(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j)
                xs[static_cast<size_t>(j)] = x_start[static_cast<size_t>(j)] + t * xdot[static_cast<size_t>(j)];
            return xs;
        };
        for (long s = 0; s < steps; ++s) {
            const double t = static_cast<double>(s) * h;
            check_collision(sys.x);
            ContinuousSystem tmp = sys;
            const auto k1 = flow_rhs(tmp, xdot);
            tmp.x = at(t + h / 2);
            for (int l = 0; l < n; ++l)
                tmp.B[static_cast<size_t>(l)] = sys.B[static_cast<size_t>(l)] + (h / 2) * k1[static_cast<size_t>(l)];
            const auto k2 = flow_rhs(tmp, xdot);
            for (int l = 0; l < n; ++l)
                tmp.B[static_cast<size_t>(l)] = sys.B[static_cast<size_t>(l)] + (h / 2) * k2[static_cast<size_t>(l)];
            const auto k3 = flow_rhs(tmp, xdot);
            tmp.x = at(t + h);
            for (int l = 0; l < n; ++l)
                tmp.B[static_cast<size_t>(l)] = sys.B[static_cast<size_t>(l)] + h * k3[static_cast<size_t>(l)];
            const auto k4 = flow_rhs(tmp, xdot);
            for (int l = 0; l < n; ++l)
                sys.B[static_cast<size_t>(l)] +=
                    (h / 6) * (k1[static_cast<size_t>(l)] + 2 * k2[static_cast<size_t>(l)] +
                               2 * k3[static_cast<size_t>(l)] + k4[static_cast<size_t>(l)]);
            sys.x = at(t + h);
        }
        // isospectrality monitor
        double drift = 0;
        for (int k = 0; k < n; ++k) {
            const auto found = matrix_spectrum(sys.B[static_cast<size_t>(k)]);
            for (const cx e : base_spectra[static_cast<size_t>(k)]) {
                double best = std::numeric_limits<double>::infinity();
                for (const cx f : found) best = std::min(best, std::abs(f - e));
                drift = std::max(drift, best);
            }
        }
        if (drift <= tol.drift * std::max(1.0, len) * 10) return sys;
        h0 /= 2;
    }
    throw genericity_error("integrate: eigenvalue drift persists after step halvings (pole nearby?)");
}

}  // namespace

ContinuousSystem integrate(const ContinuousSystem& sys, const std::vector<std::vector<cx>>& path,
                           double step, const Tolerances& tol) {
    if (step <= 0) throw invalid_input("integrate: step must be positive");
    ContinuousSystem cur = sys;
    cur.validate(tol);
    for (const auto& x_end : path) {
        if (static_cast<int>(x_end.size()) != sys.n)
            throw invalid_input("integrate: path nodes must list all n poles");
        cur = integrate_segment(std::move(cur), x_end, step, tol);
    }
    return cur;
}

FactorState embed(const ContinuousSystem& sys, const EmbeddingConfig& cfg, const Tolerances& tol) {
    sys.validate(tol);
    if (cfg.epsilon <= 0) throw invalid_input("embed: epsilon must be positive");
    if (static_cast<int>(cfg.y.size()) != sys.n) throw invalid_input("embed: need n anchors");
    const int m = sys.m;
    const double inv_eps = 1.0 / cfg.epsilon;
    cmat A0 = cmat::Identity(m, m);
    if (sys.Binf) A0 += cfg.epsilon * (*sys.Binf);
    std::vector<cmat> C(static_cast<size_t>(sys.n));
    std::vector<std::vector<cx>> groups(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i) {
        C[static_cast<size_t>(i)] =
            cfg.y[static_cast<size_t>(i)] * inv_eps * cmat::Identity(m, m) - sys.B[static_cast<size_t>(i)];
        for (const cx t : sys.spectra[static_cast<size_t>(i)])
            groups[static_cast<size_t>(i)].push_back(cfg.y[static_cast<size_t>(i)] * inv_eps - t);
    }
    return make_factor_state(std::move(A0), std::move(C), std::move(groups), Variant::difference(), tol);
}

namespace {

std::vector<LimitRow> limit_level(const ContinuousSystem& sys, const EmbeddingConfig& cfg,
                                  const std::vector<double>& x_target, double eps,
                                  const std::vector<cmat>& B_end, const Tolerances& tol) {
    const int m = sys.m, n = sys.n;
    const double inv_eps = 1.0 / eps;
    cmat A0 = cmat::Identity(m, m);
    if (sys.Binf) A0 += eps * (*sys.Binf);
    std::vector<cmat> B0(static_cast<size_t>(n));
    std::vector<std::vector<cx>> groups(static_cast<size_t>(n));
    LatticePoint target(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        B0[static_cast<size_t>(i)] =
            cfg.y[static_cast<size_t>(i)] * inv_eps * cmat::Identity(m, m) - sys.B[static_cast<size_t>(i)];
        for (const cx t : sys.spectra[static_cast<size_t>(i)])
            groups[static_cast<size_t>(i)].push_back(cfg.y[static_cast<size_t>(i)] * inv_eps - t);
        target[static_cast<size_t>(i)] = static_cast<long>(std::floor(x_target[static_cast<size_t>(i)] * inv_eps));
    }
    DivisorState state = make_divisor_state(std::move(A0), std::move(B0), std::move(groups),
                                            Variant::difference(), tol);
    const DivisorState end = divisor_flow(state, target, tol);
    std::vector<LimitRow> rows;
    for (int i = 0; i < n; ++i) {
        const cmat err = end.B[static_cast<size_t>(i)] +
                         (x_target[static_cast<size_t>(i)] - cfg.y[static_cast<size_t>(i)]) * inv_eps *
                             cmat::Identity(m, m) +
                         B_end[static_cast<size_t>(i)];
        rows.push_back({eps, i, err.norm()});
    }
    return rows;
}

}  // namespace

std::vector<LimitRow> limit_compare(const ContinuousSystem& sys, const EmbeddingConfig& cfg,
                                    const std::vector<double>& x_target, int halvings,
                                    double ode_step, const Tolerances& tol, int jobs) {
    sys.validate(tol);
    if (static_cast<int>(x_target.size()) != sys.n)
        throw invalid_input("limit_compare: x_target must have n entries");
    if (static_cast<int>(cfg.y.size()) != sys.n) throw invalid_input("limit_compare: need n anchors");
    for (int i = 0; i < sys.n; ++i)
        if (std::abs(cfg.y[static_cast<size_t>(i)] - sys.x[static_cast<size_t>(i)]) > 1e-9)
            throw invalid_input("limit_compare: the anchors y must equal the system poles");

    // ODE side once: straight segment from y to y - x_target
    std::vector<cx> x_end(static_cast<size_t>(sys.n));
    for (int i = 0; i < sys.n; ++i)
        x_end[static_cast<size_t>(i)] = cfg.y[static_cast<size_t>(i)] - x_target[static_cast<size_t>(i)];
    const ContinuousSystem evolved = integrate(sys, {x_end}, ode_step, tol);

    std::vector<double> eps_levels;
    for (int t = 0; t <= halvings; ++t) eps_levels.push_back(cfg.epsilon / std::pow(2.0, t));

    std::vector<LimitRow> rows;
    if (jobs > 1) {
        std::vector<std::future<std::vector<LimitRow>>> futs;
        for (double eps : eps_levels)
            futs.push_back(std::async(std::launch::async, [&, eps] {
                return limit_level(sys, cfg, x_target, eps, evolved.B, tol);
            }));
        for (auto& f : futs) {
            const auto part = f.get();
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } else {
        for (double eps : eps_levels) {
            const auto part = limit_level(sys, cfg, x_target, eps, evolved.B, tol);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    return rows;
}

std::vector<ElementaryLambda> decompose_lambda(const std::vector<std::vector<int>>& lambda_pole,
                                               const std::vector<int>& lambda_inf) {
    std::vector<std::vector<int>> lp = lambda_pole;
    std::vector<int> li = lambda_inf;
    long balance = std::accumulate(li.begin(), li.end(), 0L);
    for (const auto& row : lp) balance += std::accumulate(row.begin(), row.end(), 0L);
    if (balance != 0) throw invalid_input("lambda data must sum to zero");

    const auto find_pole = [&](int sign) -> std::pair<int, int> {
        for (size_t k = 0; k < lp.size(); ++k)
            for (size_t j = 0; j < lp[k].size(); ++j)
                if (sign * lp[k][j] > 0) return {static_cast<int>(k), static_cast<int>(j)};
        return {-1, -1};
    };
    const auto find_inf = [&](int sign) -> int {
        for (size_t i = 0; i < li.size(); ++i)
            if (sign * li[i] > 0) return static_cast<int>(i);
        return -1;
    };

    std::vector<ElementaryLambda> moves;
    while (true) {
        const auto [kp, jp] = find_pole(+1);
        const auto [kn, jn] = find_pole(-1);
        const int ip = find_inf(+1);
        const int in = find_inf(-1);
        if (kp < 0 && kn < 0 && ip < 0 && in < 0) break;
        if (kp >= 0 && in >= 0) {
            moves.push_back({kp, jp, in, +1});
            --lp[static_cast<size_t>(kp)][static_cast<size_t>(jp)];
            ++li[static_cast<size_t>(in)];
        } else if (kn >= 0 && ip >= 0) {
            moves.push_back({kn, jn, ip, -1});
            ++lp[static_cast<size_t>(kn)][static_cast<size_t>(jn)];
            --li[static_cast<size_t>(ip)];
        } else if (kp >= 0 && kn >= 0) {
            // route a pole-pole pair through infinity row 0
            moves.push_back({kp, jp, 0, +1});
            moves.push_back({kn, jn, 0, -1});
            --lp[static_cast<size_t>(kp)][static_cast<size_t>(jp)];
            ++lp[static_cast<size_t>(kn)][static_cast<size_t>(jn)];
        } else if (ip >= 0 && in >= 0) {
            // route an inf-inf pair through pole (0, 0)
            moves.push_back({0, 0, in, +1});
            moves.push_back({0, 0, ip, -1});
            ++li[static_cast<size_t>(in)];
            --li[static_cast<size_t>(ip)];
        } else {
            throw internal_error("decompose_lambda: stuck despite balance");
        }
    }
    return moves;
}

ContinuousTransform schlesinger_transform_continuous(const ContinuousSystem& sys,
                                                     std::span<const ElementaryLambda> moves,
                                                     const Tolerances& tol) {
    sys.validate(tol);
    if (!sys.Binf) throw invalid_input("continuous Schlesinger transformations need B_inf (the irregular variant)");
    const int m = sys.m, n = sys.n;
    ContinuousSystem cur = sys;
    ContinuousTransform out{cur, cmat(), cmat(), 0, +1};
    bool first = true;

    for (const ElementaryLambda& mv : moves) {
        const int k = mv.k, j = mv.j, i = mv.i;
        if (k < 0 || k >= n || j < 0 || j >= m || i < 0 || i >= m || std::abs(mv.sign) != 1)
            throw invalid_input("elementary lambda datum out of range");
        // Yhat_1 of the formal solution at infinity (off-diagonal part)
        cmat sumB = cmat::Zero(m, m);
        for (const cmat& Bl : cur.B) sumB += Bl;
        cmat Y1 = cmat::Zero(m, m);
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) {
                if (p == q) continue;
                const cx den = (*cur.Binf)(q, q) - (*cur.Binf)(p, p);
                Y1(p, q) = sumB(p, q) / den;
            }
        const cx tkj = cur.spectra[static_cast<size_t>(k)][static_cast<size_t>(j)];
        const cmat Ei = [&] {
            cmat E = cmat::Zero(m, m);
            E(i, i) = 1;
            return E;
        }();
        cmat middle = *cur.Binf;
        for (int l = 0; l < n; ++l) {
            if (l == k) continue;
            middle += cur.B[static_cast<size_t>(l)] / (cur.x[static_cast<size_t>(k)] - cur.x[static_cast<size_t>(l)]);
        }

        std::vector<cmat> Bnew(static_cast<size_t>(n));
        cmat R0, R1;
        if (mv.sign > 0) {
            const cvec v = pencil_eigenvector(
                MatrixPolynomial::monic_linear(cur.B[static_cast<size_t>(k)]), tkj, tol);
            if (std::abs(v(i)) <= 1e-8)
                throw genericity_error("continuous transform: v_i vanishes");
            const auto blocks = elementary_multiplier_blocks(v, Y1, i);
            R0 = blocks.R0;
            R1 = blocks.R1;
            // residue of R' R^{-1} + R B R^{-1} at x_k; the eigenvector
            // relation B_k R1 = t R1 collapses the double pole
            Bnew[static_cast<size_t>(k)] = (cx(1, 0) + tkj) * (Ei * R1) +
                                           R0 * cur.B[static_cast<size_t>(k)] * (cmat::Identity(m, m) - Ei) +
                                           R0 * middle * R1;
            for (int l = 0; l < n; ++l) {
                if (l == k) continue;
                const cx dx = cur.x[static_cast<size_t>(l)] - cur.x[static_cast<size_t>(k)];
                Bnew[static_cast<size_t>(l)] = (dx * Ei + R0) * cur.B[static_cast<size_t>(l)] *
                                               (cmat::Identity(m, m) - Ei + R1 / dx);
            }
            cur.spectra[static_cast<size_t>(k)][static_cast<size_t>(j)] += 1;
        } else {
            const cvec w = left_kernel_vector(
                MatrixPolynomial::monic_linear(cur.B[static_cast<size_t>(k)]), tkj, tol);
            if (std::abs(w(i)) <= 1e-8)
                throw genericity_error("continuous transform: w_i vanishes");
            const auto blocks = elementary_multiplier_blocks(w, cmat(-Y1.transpose()), i);
            R0 = blocks.R0;
            R1 = blocks.R1;
            const cmat R0t = R0.transpose(), R1t = R1.transpose();
            Bnew[static_cast<size_t>(k)] = (tkj - cx(1, 0)) * (R1t * Ei) +
                                           (cmat::Identity(m, m) - Ei) * cur.B[static_cast<size_t>(k)] * R0t +
                                           R1t * middle * R0t;
            for (int l = 0; l < n; ++l) {
                if (l == k) continue;
                const cx dx = cur.x[static_cast<size_t>(l)] - cur.x[static_cast<size_t>(k)];
                Bnew[static_cast<size_t>(l)] = (cmat::Identity(m, m) - Ei + R1t / dx) *
                                               cur.B[static_cast<size_t>(l)] * (dx * Ei + R0t);
            }
            cur.spectra[static_cast<size_t>(k)][static_cast<size_t>(j)] -= 1;
        }
        cur.B = std::move(Bnew);
        if (first) {
            out.R0 = R0;
            out.R1 = R1;
            out.Ei_index = i;
            out.sign = mv.sign;
            first = false;
        }
    }
    out.sys = std::move(cur);
    return out;
}

std::vector<TransformLimitRow> transform_limit_check(
    const ContinuousSystem& sys, const EmbeddingConfig& cfg,
    const std::vector<std::vector<int>>& lambda_pole, const std::vector<int>& lambda_inf,
    int halvings, const Tolerances& tol) {
    sys.validate(tol);
    if (!sys.Binf) throw invalid_input("transform_limit_check needs B_inf (the irregular variant)");
    const int m = sys.m, n = sys.n;
    if (static_cast<int>(lambda_pole.size()) != n || static_cast<int>(lambda_inf.size()) != m)
        throw invalid_input("transform_limit_check: lambda data dimensions mismatch");

    const auto moves = decompose_lambda(lambda_pole, lambda_inf);
    const ContinuousTransform ct = schlesinger_transform_continuous(sys, moves, tol);

    std::vector<TransformLimitRow> rows;
    for (int level = 0; level <= halvings; ++level) {
        const double eps = cfg.epsilon / std::pow(2.0, level);
        const double inv_eps = 1.0 / eps;
        cmat A0 = cmat::Identity(m, m) + eps * (*sys.Binf);
        std::vector<cmat> divisors(static_cast<size_t>(n));
        std::vector<std::vector<cx>> groups(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            divisors[static_cast<size_t>(k)] =
                sys.x[static_cast<size_t>(k)] * inv_eps * cmat::Identity(m, m) - sys.B[static_cast<size_t>(k)];
            for (const cx t : sys.spectra[static_cast<size_t>(k)])
                groups[static_cast<size_t>(k)].push_back(sys.x[static_cast<size_t>(k)] * inv_eps - t);
        }
        const MatrixPolynomial A = from_right_divisors(A0, divisors, groups, tol);

        std::vector<cx> roots;
        std::vector<int> kappa;
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < m; ++j) {
                roots.push_back(groups[static_cast<size_t>(k)][static_cast<size_t>(j)]);
                kappa.push_back(-lambda_pole[static_cast<size_t>(k)][static_cast<size_t>(j)]);
            }
        std::vector<int> delta(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) delta[static_cast<size_t>(i)] = -lambda_inf[static_cast<size_t>(i)];

        const SchlesingerResult sr = schlesinger_action(A, roots, kappa, delta, MoveOrder::forward, tol);

        // multiplier-block gap for the first elementary move
        double gap = 0;
        if (!sr.moves.empty() && !moves.empty()) {
            const Multiplier& first = sr.moves.front();
            const int i = ct.Ei_index;
            if (ct.sign > 0 && first.kind == Multiplier::Kind::elementary_down) {
                const cx a = first.det_zeros.front();
                cmat Ei = cmat::Zero(m, m);
                Ei(i, i) = 1;
                const cmat R0eps = first.fwd.cst + a * Ei;
                cmat D = cmat::Identity(m, m);
                D(i, i) = eps;
                gap = (D * R0eps - ct.R0).norm();
            } else if (ct.sign < 0 && first.kind == Multiplier::Kind::elementary_up) {
                const cx pole = first.det_poles.front();  // a + 1
                cmat Ei = cmat::Zero(m, m);
                Ei(i, i) = 1;
                const cmat R0t = first.inv->cst + pole * Ei;  // R0'^t(eps)
                cmat Dinv = cmat::Identity(m, m);
                Dinv(i, i) = eps;
                gap = (R0t * Dinv - ct.R0.transpose()).norm();
            }
        }

        cmat Delta = cmat::Identity(m, m);
        for (int i = 0; i < m; ++i) Delta(i, i) = std::pow(eps, static_cast<double>(delta[static_cast<size_t>(i)]));
        const cmat DeltaInv = Delta.fullPivLu().inverse();

        for (int l = 0; l < n; ++l) {
            std::vector<cx> shifted;
            for (int j = 0; j < m; ++j)
                shifted.push_back(groups[static_cast<size_t>(l)][static_cast<size_t>(j)] -
                                  cx(lambda_pole[static_cast<size_t>(l)][static_cast<size_t>(j)], 0));
            const cmat Btilde = right_divisor(sr.A, shifted, tol);
            const cmat err = Delta * Btilde * DeltaInv -
                             sys.x[static_cast<size_t>(l)] * inv_eps * cmat::Identity(m, m) +
                             ct.sys.B[static_cast<size_t>(l)];
            rows.push_back({eps, l, err.norm(), gap});
        }
    }
    return rows;
}

}  // namespace isomono
