#include "pwg/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "pwg/errors.hpp"
#include "linsolve.hpp"

namespace pwg {

namespace {

constexpr double kLogClamp = 500.0;
constexpr unsigned kMultiStartSeed = 0x5eedU;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return s;
}

// q_r = exp(t_r) / (1 + sum_s exp(t_s)), overflow-safe.
void q_from_t(std::span<const double> t, std::vector<double>& q) {
    double m = 0.0;
    for (double v : t) m = std::max(m, v);
    double denom = std::exp(-m);
    q.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        q[i] = std::exp(t[i] - m);
        denom += q[i];
    }
    for (double& v : q) v /= denom;
}

std::vector<double> t_from_q(std::span<const double> q) {
    double qsum = 0.0;
    for (double v : q) qsum += v;
    std::vector<double> t(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) t[i] = std::log(q[i]) - std::log(1.0 - qsum);
    return t;
}

}  // namespace

void EnsembleParams::validate() const {
    if (j < 2) throw std::invalid_argument("EnsembleParams: j must be >= 2");
    if (k <= j) throw std::invalid_argument("EnsembleParams: k must exceed j");
    if (M < 1 || M > 8) throw std::invalid_argument("EnsembleParams: M must be in [1, 8]");
}

double entropy_h(std::span<const double> q) {
    double sum = 0.0;
    double h = 0.0;
    for (double v : q) {
        if (v < 0.0) throw std::invalid_argument("entropy_h: negative entry");
        if (v > 0.0) h -= v * std::log(v);
        sum += v;
    }
    if (sum > 1.0 + 1e-12) throw std::invalid_argument("entropy_h: entries sum beyond 1");
    const double rest = std::max(0.0, 1.0 - sum);
    if (rest > 0.0) h -= rest * std::log(rest);
    return h;
}

double alpha_of_q(std::span<const double> q) {
    double w1 = 0.0, w2 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double r = static_cast<double>(i + 1);
        w1 += r * q[i];
        w2 += r * r * q[i];
    }
    if (w2 <= 0.0) throw std::invalid_argument("alpha_of_q: q must have positive mass");
    return w1 * w1 / w2;
}

struct GrowthSolver::State {
    std::vector<double> y;  // log x0
    std::vector<double> t;  // log(q_r / (1 - sum q))
    double lambda = 0.0;
};

GrowthSolver::GrowthSolver(const EnsembleParams& params, const SolverOptions& opts)
    : params_(params), opts_(opts), eval_(PwefSpec{params.M, params.k}) {
    params_.validate();
}

std::vector<double> GrowthSolver::solve_x0_log(std::span<const double> q, std::span<const double> y_init) const {
    const int M = params_.M;
    if (static_cast<int>(q.size()) != M) throw std::invalid_argument("solve_x0: q length mismatch");
    double qsum = 0.0;
    for (double v : q) {
        if (!(v > 0.0)) throw std::invalid_argument("solve_x0: q entries must be strictly positive");
        qsum += v;
    }
    if (qsum >= 1.0) throw std::invalid_argument("solve_x0: q entries must sum below 1");

    std::vector<double> y(static_cast<std::size_t>(M));
    if (!y_init.empty()) {
        if (static_cast<int>(y_init.size()) != M) throw std::invalid_argument("solve_x0: y_init length mismatch");
        y.assign(y_init.begin(), y_init.end());
    } else {
        // Multinomial saddle point of P^k alone: x_r = q_r / (1 - sum q).
        for (int r = 0; r < M; ++r)
            y[static_cast<std::size_t>(r)] = std::log(q[static_cast<std::size_t>(r)] / (1.0 - qsum));
    }

    auto residual = [&](const std::vector<double>& yy, std::vector<double>& F) {
        std::vector<double> x(static_cast<std::size_t>(M));
        for (int r = 0; r < M; ++r)
            x[static_cast<std::size_t>(r)] = std::exp(std::clamp(yy[static_cast<std::size_t>(r)], -kLogClamp, kLogClamp));
        const SignedLogValue B = eval_.eval_B(x);
        for (int r = 1; r <= M; ++r) {
            const SignedLogValue dB = eval_.eval_dB(x, r);
            const double lhs = dB.sign == 0 ? 0.0
                                            : std::exp(yy[static_cast<std::size_t>(r - 1)] + dB.log_mag - B.log_mag) *
                                                  static_cast<double>(dB.sign * B.sign);
            F[static_cast<std::size_t>(r - 1)] = lhs - static_cast<double>(params_.k) * q[static_cast<std::size_t>(r - 1)];
        }
    };
    auto rel_residual = [&](const std::vector<double>& F) {
        double rel = 0.0;
        for (int r = 0; r < M; ++r)
            rel = std::max(rel, std::abs(F[static_cast<std::size_t>(r)]) /
                                    (static_cast<double>(params_.k) * q[static_cast<std::size_t>(r)]));
        return rel;
    };

    std::vector<double> F(static_cast<std::size_t>(M)), Ft(static_cast<std::size_t>(M));
    residual(y, F);
    const double h = 1e-7;
    for (int iter = 0; iter < opts_.max_newton_iter && rel_residual(F) > 0.02 * opts_.tol_inner; ++iter) {
        std::vector<double> J(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
        std::vector<double> yp = y, Fp(static_cast<std::size_t>(M)), Fm(static_cast<std::size_t>(M));
        for (int col = 0; col < M; ++col) {
            yp[static_cast<std::size_t>(col)] = y[static_cast<std::size_t>(col)] + h;
            residual(yp, Fp);
            yp[static_cast<std::size_t>(col)] = y[static_cast<std::size_t>(col)] - h;
            residual(yp, Fm);
            yp[static_cast<std::size_t>(col)] = y[static_cast<std::size_t>(col)];
            for (int row = 0; row < M; ++row)
                J[static_cast<std::size_t>(row) * static_cast<std::size_t>(M) + static_cast<std::size_t>(col)] =
                    (Fp[static_cast<std::size_t>(row)] - Fm[static_cast<std::size_t>(row)]) / (2 * h);
        }
        std::vector<double> rhs(F.size()), step;
        for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        if (!detail::solve_linear_system(J, rhs, step, M))
            throw solver_failure("solve_x0: singular Jacobian", y, rel_residual(F));

        const double base = norm2(F);
        double scale = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opts_.max_backtrack; ++bt) {
            std::vector<double> yt = y;
            for (int r = 0; r < M; ++r)
                yt[static_cast<std::size_t>(r)] = std::clamp(
                    yt[static_cast<std::size_t>(r)] + scale * step[static_cast<std::size_t>(r)], -kLogClamp, kLogClamp);
            residual(yt, Ft);
            if (norm2(Ft) < base * (1.0 - 1e-4 * scale)) {
                y = yt;
                F = Ft;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;  // stalled; the tolerance check below decides
    }
    if (rel_residual(F) > opts_.tol_inner)
        throw solver_failure("solve_x0: did not reach tolerance", y, rel_residual(F));
    return y;
}

std::vector<double> GrowthSolver::solve_x0(std::span<const double> q, std::span<const double> y_init) const {
    std::vector<double> y = solve_x0_log(q, y_init);
    for (double& v : y) v = std::exp(v);
    return y;
}

double GrowthSolver::f_of_q(std::span<const double> q, std::vector<double>* x0_out) const {
    const std::vector<double> y = solve_x0_log(q, {});
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::exp(y[i]);
    const SignedLogValue B = eval_.eval_B(x);
    double f = static_cast<double>(params_.j) / static_cast<double>(params_.k) * B.log_mag;
    for (std::size_t i = 0; i < y.size(); ++i) f -= params_.j * q[i] * y[i];
    f -= (params_.j - 1) * entropy_h(q);
    if (x0_out) *x0_out = x;
    return f;
}

StationaryPoint GrowthSolver::solve_M1(double alpha) const {
    if (params_.M != 1) throw std::invalid_argument("solve_M1: ensemble must have M = 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("solve_M1: alpha must lie in (0,1)");

    // phi(x) = x B'(x)/B(x) - k alpha is negative near 0 and approaches
    // k(1 - alpha) > 0 for large x; bracket then bisect.
    auto phi = [&](double xv) {
        const std::array<double, 1> x{xv};
        const SignedLogValue B = eval_.eval_B(x);
        const SignedLogValue dB = eval_.eval_dB(x, 1);
        const double lhs = dB.sign == 0 ? 0.0
                                        : std::exp(std::log(xv) + dB.log_mag - B.log_mag) *
                                              static_cast<double>(dB.sign * B.sign);
        return lhs - params_.k * alpha;
    };

    double lo = 1e-12;
    double hi = 1.0;
    int grow = 0;
    while (phi(hi) <= 0.0 && grow++ < 600) hi *= 2.0;
    if (grow >= 600) throw solver_failure("solve_M1: failed to bracket x0", {hi}, 0.0);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-16 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double x0 = 0.5 * (lo + hi);

    const std::array<double, 1> x{x0};
    const SignedLogValue B = eval_.eval_B(x);
    const double logx0 = std::log(x0);
    const std::array<double, 1> qv{alpha};
    const double G = static_cast<double>(params_.j) / params_.k * B.log_mag - params_.j * alpha * logx0 -
                     (params_.j - 1) * entropy_h(qv);

    StationaryPoint p;
    p.alpha = alpha;
    p.q = {alpha};
    p.x0 = {x0};
    // The Lagrange row is redundant at M = 1 but determines lambda:
    // d_1 = 2 q - alpha = alpha.
    p.lambda = ((params_.j - 1) * std::log(alpha / (1.0 - alpha)) - params_.j * logx0) / alpha;
    p.G = G;
    p.residual = max_abs(residuals(p));
    return p;
}

void GrowthSolver::full_residual(const State& s, double alpha, std::vector<double>& F) const {
    const int M = params_.M;
    F.resize(static_cast<std::size_t>(2 * M + 1));
    std::vector<double> q;
    q_from_t(s.t, q);
    std::vector<double> x(static_cast<std::size_t>(M));
    for (int r = 0; r < M; ++r)
        x[static_cast<std::size_t>(r)] = std::exp(std::clamp(s.y[static_cast<std::size_t>(r)], -kLogClamp, kLogClamp));

    const SignedLogValue B = eval_.eval_B(x);
    for (int r = 1; r <= M; ++r) {
        const SignedLogValue dB = eval_.eval_dB(x, r);
        const double lhs = dB.sign == 0 ? 0.0
                                        : std::exp(s.y[static_cast<std::size_t>(r - 1)] + dB.log_mag - B.log_mag) *
                                              static_cast<double>(dB.sign * B.sign);
        F[static_cast<std::size_t>(r - 1)] = lhs - static_cast<double>(params_.k) * q[static_cast<std::size_t>(r - 1)];
    }

    double w1 = 0.0, w2 = 0.0;
    for (int r = 1; r <= M; ++r) {
        w1 += r * q[static_cast<std::size_t>(r - 1)];
        w2 += static_cast<double>(r) * r * q[static_cast<std::size_t>(r - 1)];
    }
    for (int r = 1; r <= M; ++r) {
        const double d_r = 2.0 * r * w1 - alpha * static_cast<double>(r) * r;
        F[static_cast<std::size_t>(M + r - 1)] = (params_.j - 1) * s.t[static_cast<std::size_t>(r - 1)] -
                                                 params_.j * s.y[static_cast<std::size_t>(r - 1)] - s.lambda * d_r;
    }
    F[static_cast<std::size_t>(2 * M)] = w1 * w1 - alpha * w2;
}

bool GrowthSolver::newton_full(State& s, double alpha, double* out_residual) const {
    const int M = params_.M;
    const int dim = 2 * M + 1;

    auto apply_step = [&](const State& st, std::span<const double> step, double scale) {
        State out = st;
        for (int r = 0; r < M; ++r)
            out.y[static_cast<std::size_t>(r)] =
                std::clamp(st.y[static_cast<std::size_t>(r)] + scale * step[static_cast<std::size_t>(r)], -kLogClamp, kLogClamp);
        for (int r = 0; r < M; ++r)
            out.t[static_cast<std::size_t>(r)] = std::clamp(
                st.t[static_cast<std::size_t>(r)] + scale * step[static_cast<std::size_t>(M + r)], -kLogClamp, 60.0);
        out.lambda = std::clamp(st.lambda + scale * step[static_cast<std::size_t>(2 * M)], -1e8, 1e8);
        return out;
    };

    std::vector<double> F, Ft;
    full_residual(s, alpha, F);
    const double h = opts_.fd_step;
    for (int iter = 0; iter < opts_.max_newton_iter && max_abs(F) > 0.02 * opts_.tol_outer; ++iter) {
        std::vector<double> J(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
        std::vector<double> Fp, Fm;
        for (int col = 0; col < dim; ++col) {
            std::vector<double> unit(static_cast<std::size_t>(dim), 0.0);
            unit[static_cast<std::size_t>(col)] = 1.0;
            const State sp = apply_step(s, unit, h);
            const State sm = apply_step(s, unit, -h);
            full_residual(sp, alpha, Fp);
            full_residual(sm, alpha, Fm);
            for (int row = 0; row < dim; ++row)
                J[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(col)] =
                    (Fp[static_cast<std::size_t>(row)] - Fm[static_cast<std::size_t>(row)]) / (2 * h);
        }
        std::vector<double> rhs(F.size()), step;
        for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        if (!detail::solve_linear_system(J, rhs, step, dim)) break;

        const double base = norm2(F);
        double scale = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opts_.max_backtrack; ++bt) {
            const State st = apply_step(s, step, scale);
            full_residual(st, alpha, Ft);
            if (norm2(Ft) < base * (1.0 - 1e-4 * scale)) {
                s = st;
                F = Ft;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) break;
    }
    const double res = max_abs(F);
    if (out_residual) *out_residual = res;
    return res <= opts_.tol_outer;
}

StationaryPoint GrowthSolver::finish_point(const State& s, double alpha, double residual) const {
    StationaryPoint p;
    p.alpha = alpha;
    q_from_t(s.t, p.q);
    p.x0.resize(s.y.size());
    for (std::size_t i = 0; i < s.y.size(); ++i) p.x0[i] = std::exp(s.y[i]);
    p.lambda = s.lambda;
    const SignedLogValue B = eval_.eval_B(p.x0);
    double G = static_cast<double>(params_.j) / params_.k * B.log_mag;
    for (std::size_t i = 0; i < s.y.size(); ++i) G -= params_.j * p.q[i] * s.y[i];
    G -= (params_.j - 1) * entropy_h(p.q);
    p.G = G;
    p.residual = residual;
    return p;
}

std::optional<StationaryPoint> GrowthSolver::try_solve(State s, double alpha) const {
    double res = 0.0;
    if (!newton_full(s, alpha, &res)) return std::nullopt;
    return finish_point(s, alpha, res);
}

const GrowthSolver::Anchor& GrowthSolver::anchor() const {
    std::call_once(anchor_once_, [&] {
        const int M = params_.M;
        // Gradient of f in q via the envelope identity: df/dq_r =
        // (j-1) log[q_r/(1-sum q)] - j log x0_r. Newton on this gradient.
        auto grad = [&](const std::vector<double>& t, std::vector<double>& G) {
            std::vector<double> q;
            q_from_t(t, q);
            const std::vector<double> y = solve_x0_log(q, {});
            G.resize(static_cast<std::size_t>(M));
            for (int r = 0; r < M; ++r)
                G[static_cast<std::size_t>(r)] = (params_.j - 1) * t[static_cast<std::size_t>(r)] -
                                                 params_.j * y[static_cast<std::size_t>(r)];
        };

        std::unique_ptr<Anchor> best;
        for (const double mass : {0.5, 0.75, 0.25, 0.9, 0.1}) {
            std::vector<double> q0(static_cast<std::size_t>(M), mass / (M + 1));
            std::vector<double> t = t_from_q(q0);
            std::vector<double> G(static_cast<std::size_t>(M)), Gt(static_cast<std::size_t>(M));
            try {
                grad(t, G);
                const double h = opts_.fd_step;
                bool ok = false;
                for (int iter = 0; iter < 80; ++iter) {
                    if (max_abs(G) <= 1e-10) {
                        ok = true;
                        break;
                    }
                    std::vector<double> J(static_cast<std::size_t>(M) * static_cast<std::size_t>(M));
                    std::vector<double> tp = t, Gp(static_cast<std::size_t>(M)), Gm(static_cast<std::size_t>(M));
                    for (int col = 0; col < M; ++col) {
                        tp[static_cast<std::size_t>(col)] = t[static_cast<std::size_t>(col)] + h;
                        grad(tp, Gp);
                        tp[static_cast<std::size_t>(col)] = t[static_cast<std::size_t>(col)] - h;
                        grad(tp, Gm);
                        tp[static_cast<std::size_t>(col)] = t[static_cast<std::size_t>(col)];
                        for (int row = 0; row < M; ++row)
                            J[static_cast<std::size_t>(row) * static_cast<std::size_t>(M) + static_cast<std::size_t>(col)] =
                                (Gp[static_cast<std::size_t>(row)] - Gm[static_cast<std::size_t>(row)]) / (2 * h);
                    }
                    std::vector<double> rhs(G.size()), step;
                    for (std::size_t i = 0; i < G.size(); ++i) rhs[i] = -G[i];
                    if (!detail::solve_linear_system(J, rhs, step, M)) break;
                    const double base = norm2(G);
                    double scale = 1.0;
                    bool accepted = false;
                    for (int bt = 0; bt <= opts_.max_backtrack; ++bt) {
                        std::vector<double> tt = t;
                        for (int r = 0; r < M; ++r)
                            tt[static_cast<std::size_t>(r)] = std::clamp(
                                tt[static_cast<std::size_t>(r)] + scale * step[static_cast<std::size_t>(r)], -kLogClamp, 60.0);
                        grad(tt, Gt);
                        if (norm2(Gt) < base * (1.0 - 1e-4 * scale)) {
                            t = tt;
                            G = Gt;
                            accepted = true;
                            break;
                        }
                        scale *= 0.5;
                    }
                    if (!accepted) break;
                }
                if (!ok && max_abs(G) > 1e-10) continue;
            } catch (const std::exception&) {
                continue;
            }

            auto a = std::make_unique<Anchor>();
            std::vector<double> q;
            q_from_t(t, q);
            a->q = q;
            a->f = f_of_q(q, &a->x0);
            a->alpha = alpha_of_q(q);
            if (!best || a->f > best->f) best = std::move(a);
        }
        if (!best) throw solver_failure("anchor: unconstrained maximizer not found", {}, 0.0);
        anchor_ = std::move(best);
    });
    return *anchor_;
}

StationaryPoint GrowthSolver::solve_full(double alpha, const StationaryPoint* seed,
                                         std::vector<StationaryPoint>* collect_ties) const {
    if (!(alpha > 0.0)) throw std::invalid_argument("solve_full: alpha must be positive");
    if (alpha > 1.0) throw std::invalid_argument("solve_full: alpha above 1 is infeasible (Cauchy-Schwarz)");
    const int M = params_.M;

    std::vector<StationaryPoint> found;
    auto state_from = [&](const StationaryPoint& p) {
        State s;
        s.y.resize(static_cast<std::size_t>(M));
        for (int r = 0; r < M; ++r) s.y[static_cast<std::size_t>(r)] = std::log(p.x0[static_cast<std::size_t>(r)]);
        s.t = t_from_q(p.q);
        s.lambda = p.lambda;
        return s;
    };

    if (seed != nullptr) {
        if (auto p = try_solve(state_from(*seed), alpha)) found.push_back(*p);
    }

    {
        // Continuation from the unconstrained maximizer's alpha, walking
        // log(alpha) with adaptive step halving so the connected branch is
        // followed through delicate regions. Runs even when a seeded solve
        // succeeded: the two candidates can sit on different branches and
        // the larger f wins.
        try {
            const Anchor& a = anchor();
            State s;
            s.y.resize(static_cast<std::size_t>(M));
            for (int r = 0; r < M; ++r) s.y[static_cast<std::size_t>(r)] = std::log(a.x0[static_cast<std::size_t>(r)]);
            s.t = t_from_q(a.q);
            s.lambda = 0.0;

            double cur = a.alpha;
            const double target = alpha;
            const double dir = target >= cur ? 1.0 : -1.0;
            double step = std::log(1.25);
            bool path_ok = true;
            int guard = 0;
            while (path_ok && std::abs(std::log(target / cur)) > 1e-14 && guard++ < 4000) {
                const double remaining = std::abs(std::log(target / cur));
                const double next = remaining <= step ? target : cur * std::exp(dir * step);
                State trial = s;
                if (newton_full(trial, next, nullptr)) {
                    s = std::move(trial);
                    cur = next;
                    step = std::min(std::log(1.25), step * 2.0);
                } else if (step > 1e-4) {
                    step *= 0.25;
                } else {
                    path_ok = false;
                }
            }
            if (path_ok) {
                if (auto p = try_solve(s, alpha)) found.push_back(*p);
            }
        } catch (const solver_failure&) {
            // fall through to multi-start
        }
    }

    if (found.empty()) {
        // Deterministic pseudo-random starts on the constraint surface.
        std::mt19937 rng(kMultiStartSeed);
        std::uniform_real_distribution<double> unif(0.05, 0.95);
        for (int attempt = 0; attempt < opts_.multi_starts; ++attempt) {
            std::vector<double> u(static_cast<std::size_t>(M));
            for (double& v : u) v = unif(rng);
            double w1 = 0.0, w2 = 0.0;
            for (int r = 1; r <= M; ++r) {
                w1 += r * u[static_cast<std::size_t>(r - 1)];
                w2 += static_cast<double>(r) * r * u[static_cast<std::size_t>(r - 1)];
            }
            const double c = alpha * w2 / (w1 * w1);  // g(c u) = 0 by construction
            std::vector<double> q(static_cast<std::size_t>(M));
            double qsum = 0.0;
            for (int r = 0; r < M; ++r) {
                q[static_cast<std::size_t>(r)] = c * u[static_cast<std::size_t>(r)];
                qsum += q[static_cast<std::size_t>(r)];
            }
            if (qsum >= 0.999) continue;
            State s;
            try {
                s.y = solve_x0_log(q, {});
            } catch (const std::exception&) {
                continue;
            }
            s.t = t_from_q(q);
            // Least-squares lambda from the Lagrange rows.
            double num = 0.0, den = 0.0;
            for (int r = 1; r <= M; ++r) {
                const double d_r = 2.0 * r * (w1 * c) - alpha * static_cast<double>(r) * r;
                const double lhs = (params_.j - 1) * s.t[static_cast<std::size_t>(r - 1)] -
                                   params_.j * s.y[static_cast<std::size_t>(r - 1)];
                num += d_r * lhs;
                den += d_r * d_r;
            }
            s.lambda = den > 0 ? num / den : 0.0;
            if (auto p = try_solve(std::move(s), alpha)) found.push_back(*p);
        }
    }

    if (found.empty())
        throw solver_failure("solve_full: no start converged at alpha=" + std::to_string(alpha), {}, 0.0);

    std::size_t best = 0;
    for (std::size_t i = 1; i < found.size(); ++i)
        if (found[i].G > found[best].G) best = i;
    if (collect_ties) {
        for (const auto& p : found)
            if (p.G >= found[best].G - 1e-9) collect_ties->push_back(p);
    }
    return found[best];
}

std::vector<double> GrowthSolver::residuals(const StationaryPoint& p) const {
    State s;
    s.y.resize(p.x0.size());
    for (std::size_t i = 0; i < p.x0.size(); ++i) s.y[i] = std::log(p.x0[i]);
    s.t = t_from_q(p.q);
    s.lambda = p.lambda;
    std::vector<double> F;
    full_residual(s, p.alpha, F);
    return F;
}

std::vector<double> solve_x0(const EnsembleParams& params, std::span<const double> q, const SolverOptions& opts) {
    return GrowthSolver(params, opts).solve_x0(q);
}

double f_of_q(const EnsembleParams& params, std::span<const double> q, const SolverOptions& opts) {
    return GrowthSolver(params, opts).f_of_q(q);
}

StationaryPoint solve_M1(const EnsembleParams& params, double alpha, const SolverOptions& opts) {
    return GrowthSolver(params, opts).solve_M1(alpha);
}

StationaryPoint solve_full(const EnsembleParams& params, double alpha, const SolverOptions& opts,
                           const StationaryPoint* seed) {
    return GrowthSolver(params, opts).solve_full(alpha, seed);
}

}  // namespace pwg
