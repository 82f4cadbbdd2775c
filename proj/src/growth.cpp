#include "pwg/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "pwg/errors.hpp"

namespace pwg {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_nan() { return "nan"; }

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

std::vector<double> grid_alphas(double alpha_min, double alpha_max, int steps) {
    if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || alpha_max > 1.0)
        throw std::invalid_argument("sweep: require 0 < alpha_min < alpha_max <= 1");
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    std::vector<double> alphas(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        alphas[static_cast<std::size_t>(i)] = alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) / (steps - 1);
    return alphas;
}

CurvePoint solve_point(const GrowthSolver& solver, double alpha, const StationaryPoint* seed) {
    CurvePoint cp;
    cp.alpha = alpha;
    try {
        if (solver.params().M == 1)
            cp.point = solver.solve_M1(alpha);
        else
            cp.point = solver.solve_full(alpha, seed);
        cp.ok = true;
    } catch (const std::exception& e) {
        cp.ok = false;
        cp.message = e.what();
    }
    return cp;
}

// Shared phase structure: a serial continuation pre-pass plants anchor
// points, then every grid point solves independently from its nearest
// anchor. The phase-2 loop is the parallel kernel; run_parallel toggles it.
GrowthCurve sweep_impl(const EnsembleParams& params, double alpha_min, double alpha_max, int steps,
                       const SolverOptions& opts, int threads, bool run_parallel) {
    params.validate();
    const std::vector<double> alphas = grid_alphas(alpha_min, alpha_max, steps);
    GrowthSolver solver(params, opts);

    GrowthCurve curve;
    curve.params = params;
    curve.options = opts;
    curve.points.resize(alphas.size());

    // Phase 1 (serial): anchors every `stride` points, walked outward from
    // the grid index nearest the unconstrained maximizer so each anchor is
    // seeded by its neighbor. M = 1 points are independent scalar solves
    // and need no anchors.
    std::vector<int> anchor_of(alphas.size(), -1);
    std::vector<std::optional<StationaryPoint>> anchors(alphas.size());
    if (params.M > 1) {
        const int stride = std::max(1, steps / 16);
        std::vector<int> anchor_idx;
        for (int i = 0; i < steps; i += stride) anchor_idx.push_back(i);
        if (anchor_idx.back() != steps - 1) anchor_idx.push_back(steps - 1);

        double alpha_hat = 0.5;
        try {
            alpha_hat = solver.anchor().alpha;
        } catch (const std::exception&) {
            // fall back to mid-grid ordering
            alpha_hat = 0.5 * (alpha_min + alpha_max);
        }
        std::size_t start = 0;
        for (std::size_t a = 1; a < anchor_idx.size(); ++a)
            if (std::abs(alphas[static_cast<std::size_t>(anchor_idx[a])] - alpha_hat) <
                std::abs(alphas[static_cast<std::size_t>(anchor_idx[start])] - alpha_hat))
                start = a;

        auto walk = [&](long long from, long long to, long long dir) {
            const StationaryPoint* seed = nullptr;
            StationaryPoint last;
            for (long long a = from; a != to + dir; a += dir) {
                const int gi = anchor_idx[static_cast<std::size_t>(a)];
                try {
                    StationaryPoint p = solver.solve_full(alphas[static_cast<std::size_t>(gi)], seed);
                    anchors[static_cast<std::size_t>(gi)] = p;
                    last = p;
                    seed = &last;
                } catch (const std::exception&) {
                    // leave this anchor empty; dependents fall back to the
                    // solver's internal continuation
                }
            }
        };
        walk(static_cast<long long>(start), static_cast<long long>(anchor_idx.size()) - 1, 1);
        if (start > 0) walk(static_cast<long long>(start), 0, -1);

        // Nearest successful anchor for every grid point.
        std::vector<int> good;
        for (int gi : anchor_idx)
            if (anchors[static_cast<std::size_t>(gi)].has_value()) good.push_back(gi);
        for (int i = 0; i < steps; ++i) {
            int bestg = -1;
            for (int gi : good)
                if (bestg < 0 || std::abs(gi - i) < std::abs(bestg - i)) bestg = gi;
            anchor_of[static_cast<std::size_t>(i)] = bestg;
        }
    }

    // Phase 2: independent per-point solves.
    const int nt = resolve_threads(threads);
    if (run_parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (int i = 0; i < steps; ++i) {
            const int ai = anchor_of[static_cast<std::size_t>(i)];
            if (ai == i && anchors[static_cast<std::size_t>(i)].has_value()) {
                CurvePoint cp;
                cp.alpha = alphas[static_cast<std::size_t>(i)];
                cp.ok = true;
                cp.point = *anchors[static_cast<std::size_t>(i)];
                curve.points[static_cast<std::size_t>(i)] = std::move(cp);
                continue;
            }
            const StationaryPoint* seed = ai >= 0 ? &*anchors[static_cast<std::size_t>(ai)] : nullptr;
            curve.points[static_cast<std::size_t>(i)] = solve_point(solver, alphas[static_cast<std::size_t>(i)], seed);
        }
    } else {
        for (int i = 0; i < steps; ++i) {
            const int ai = anchor_of[static_cast<std::size_t>(i)];
            if (ai == i && anchors[static_cast<std::size_t>(i)].has_value()) {
                CurvePoint cp;
                cp.alpha = alphas[static_cast<std::size_t>(i)];
                cp.ok = true;
                cp.point = *anchors[static_cast<std::size_t>(i)];
                curve.points[static_cast<std::size_t>(i)] = std::move(cp);
                continue;
            }
            const StationaryPoint* seed = ai >= 0 ? &*anchors[static_cast<std::size_t>(ai)] : nullptr;
            curve.points[static_cast<std::size_t>(i)] = solve_point(solver, alphas[static_cast<std::size_t>(i)], seed);
        }
    }

    if (std::none_of(curve.points.begin(), curve.points.end(), [](const CurvePoint& p) { return p.ok; }))
        throw solver_failure("sweep: every grid point failed", {}, 0.0);
    return curve;
}

}  // namespace

StationaryPoint growth_rate(const EnsembleParams& params, double alpha, const SolverOptions& opts) {
    params.validate();
    GrowthSolver solver(params, opts);
    return params.M == 1 ? solver.solve_M1(alpha) : solver.solve_full(alpha);
}

GrowthCurve sweep(const EnsembleParams& params, double alpha_min, double alpha_max, int steps,
                  const SolverOptions& opts, int threads) {
    return sweep_impl(params, alpha_min, alpha_max, steps, opts, threads, true);
}

GrowthCurve sweep_serial(const EnsembleParams& params, double alpha_min, double alpha_max, int steps,
                         const SolverOptions& opts) {
    return sweep_impl(params, alpha_min, alpha_max, steps, opts, 1, false);
}

ThresholdResult threshold(const EnsembleParams& params, const SolverOptions& opts) {
    params.validate();
    GrowthSolver solver(params, opts);
    ThresholdResult res;

    constexpr int kScanPoints = 200;
    struct ScanPoint {
        double alpha = 0.0;
        bool ok = false;
        StationaryPoint p;
    };
    std::vector<ScanPoint> scan(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i)
        scan[static_cast<std::size_t>(i)].alpha = static_cast<double>(i + 1) / kScanPoints;  // 0.005 .. 1.0

    // Walk outward from the unconstrained maximizer so both arms ride the
    // continuation branch, seeding each point from its neighbor.
    int start = kScanPoints - 1;
    if (params.M > 1) {
        double alpha_hat = 0.5;
        try {
            alpha_hat = solver.anchor().alpha;
        } catch (const std::exception&) {
        }
        for (int i = 0; i < kScanPoints; ++i)
            if (std::abs(scan[static_cast<std::size_t>(i)].alpha - alpha_hat) <
                std::abs(scan[static_cast<std::size_t>(start)].alpha - alpha_hat))
                start = i;
    }
    auto solve_arm = [&](int from, int to, int dir) {
        const StationaryPoint* seed = nullptr;
        StationaryPoint last;
        for (int i = from; i != to + dir; i += dir) {
            auto& sp = scan[static_cast<std::size_t>(i)];
            const double a = std::min(sp.alpha, 1.0 - 1e-12);
            try {
                sp.p = params.M == 1 ? solver.solve_M1(a) : solver.solve_full(a, seed);
                sp.ok = true;
                last = sp.p;
                seed = &last;
            } catch (const std::exception&) {
                sp.ok = false;
                ++res.scan_failures;
            }
        }
    };
    solve_arm(start, kScanPoints - 1, 1);
    if (start > 0) solve_arm(start - 1, 0, -1);
    res.scanned = kScanPoints;

    // First sign change: a negative point followed by the next solved point
    // being nonnegative. Failed points in between block refinement.
    int lo = -1, hi = -1;
    bool blocked = false;
    int prev_ok = -1;
    for (int i = 0; i < kScanPoints; ++i) {
        if (!scan[static_cast<std::size_t>(i)].ok) continue;
        if (prev_ok >= 0) {
            const double g0 = scan[static_cast<std::size_t>(prev_ok)].p.G;
            const double g1 = scan[static_cast<std::size_t>(i)].p.G;
            if (g0 < 0.0 && g1 >= 0.0) {
                if (lo < 0) {
                    lo = prev_ok;
                    hi = i;
                    if (i != prev_ok + 1) blocked = true;  // a failed point sits inside the bracket
                } else {
                    res.later_crossings.emplace_back(scan[static_cast<std::size_t>(prev_ok)].alpha,
                                                     scan[static_cast<std::size_t>(i)].alpha);
                }
            }
            if (g0 >= 0.0 && g1 < 0.0 && lo >= 0)
                res.later_crossings.emplace_back(scan[static_cast<std::size_t>(prev_ok)].alpha,
                                                 scan[static_cast<std::size_t>(i)].alpha);
        }
        prev_ok = i;
    }

    if (lo < 0) {
        res.outcome = ThresholdResult::Outcome::no_sign_change;
        res.message = "no sign change of G found on the scanned grid (0,1]";
        return res;
    }
    if (blocked) {
        res.outcome = ThresholdResult::Outcome::blocked;
        res.message = "solver failures inside the bracketing region";
        return res;
    }

    double a_lo = scan[static_cast<std::size_t>(lo)].alpha;
    double a_hi = scan[static_cast<std::size_t>(hi)].alpha;
    StationaryPoint p_lo = scan[static_cast<std::size_t>(lo)].p;
    StationaryPoint p_hi = scan[static_cast<std::size_t>(hi)].p;
    double g_mid = 0.0;
    double a_mid = 0.5 * (a_lo + a_hi);
    while (a_hi - a_lo > opts.tol_threshold) {
        a_mid = 0.5 * (a_lo + a_hi);
        StationaryPoint p_mid;
        try {
            const StationaryPoint* s = (a_mid - a_lo < a_hi - a_mid) ? &p_lo : &p_hi;
            p_mid = params.M == 1 ? solver.solve_M1(a_mid) : solver.solve_full(a_mid, s);
        } catch (const std::exception& e) {
            res.outcome = ThresholdResult::Outcome::blocked;
            res.message = std::string("bisection solve failed: ") + e.what();
            return res;
        }
        g_mid = p_mid.G;
        if (std::abs(g_mid) <= 1e-6) break;
        if (g_mid < 0.0) {
            a_lo = a_mid;
            p_lo = p_mid;
        } else {
            a_hi = a_mid;
            p_hi = p_mid;
        }
    }

    res.outcome = ThresholdResult::Outcome::found;
    res.alpha_star = a_mid;
    res.G_at_star = g_mid;
    return res;
}

std::string curve_to_csv(const GrowthCurve& curve, Units units) {
    const int M = curve.params.M;
    const double scale = units == Units::bits ? 1.0 / std::log(2.0) : 1.0;
    std::ostringstream os;
    os << "alpha," << (units == Units::bits ? "G_bits" : "G_nats");
    for (int r = 1; r <= M; ++r) os << ",q_" << r;
    for (int r = 1; r <= M; ++r) os << ",x0_" << r;
    os << ",lambda,residual,status\n";
    for (const auto& cp : curve.points) {
        os << fmt17(cp.alpha) << ',';
        if (cp.ok) {
            os << fmt17(cp.point.G * scale);
            for (int r = 0; r < M; ++r) os << ',' << fmt17(cp.point.q[static_cast<std::size_t>(r)]);
            for (int r = 0; r < M; ++r) os << ',' << fmt17(cp.point.x0[static_cast<std::size_t>(r)]);
            os << ',' << fmt17(cp.point.lambda) << ',' << fmt17(cp.point.residual) << ",ok\n";
        } else {
            os << fmt_nan();
            for (int r = 0; r < 2 * M; ++r) os << ',' << fmt_nan();
            os << ',' << fmt_nan() << ',' << fmt_nan() << ",failed\n";
        }
    }
    return os.str();
}

std::string curve_to_json(const GrowthCurve& curve, Units units, int threads) {
    const double scale = units == Units::bits ? 1.0 / std::log(2.0) : 1.0;
    nlohmann::ordered_json root;
    root["params"] = {{"j", curve.params.j}, {"k", curve.params.k}, {"M", curve.params.M}};
    root["config"] = {{"tol_inner", curve.options.tol_inner},
                      {"tol_outer", curve.options.tol_outer},
                      {"tol_threshold", curve.options.tol_threshold},
                      {"units", units == Units::bits ? "bits" : "nats"},
                      {"threads", threads}};
    root["alpha_star"] = nullptr;
    if (curve.alpha_star) root["alpha_star"] = *curve.alpha_star;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& cp : curve.points) {
        nlohmann::ordered_json p;
        p["alpha"] = cp.alpha;
        if (cp.ok) {
            p["G"] = cp.point.G * scale;
            p["q"] = cp.point.q;
            p["x0"] = cp.point.x0;
            p["lambda"] = cp.point.lambda;
            p["residual"] = cp.point.residual;
            p["status"] = "ok";
        } else {
            p["status"] = "failed";
            p["message"] = cp.message;
        }
        pts.push_back(std::move(p));
    }
    root["points"] = std::move(pts);
    return root.dump(2) + "\n";
}

std::string gnuplot_script(const GrowthCurve& curve, const std::string& csv_path, Units units) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key left top\n"
       << "set xlabel 'alpha'\n"
       << "set ylabel 'G (" << (units == Units::bits ? "bits" : "nats") << ")'\n"
       << "set grid\n"
       << "plot '" << csv_path << "' using 1:2 every ::1 with lines title '(" << curve.params.j << ','
       << curve.params.k << ") M=" << curve.params.M << "', 0 with lines dt 2 lc 'gray' notitle\n";
    return os.str();
}

}  // namespace pwg
