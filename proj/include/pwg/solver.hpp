#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "pwg/pwef.hpp"

namespace pwg {

/// (j,k)-regular ensemble with cover degree M. Design rate is positive
/// (k > j) and j >= 2.
struct EnsembleParams {
    int j = 3;
    int k = 6;
    int M = 1;

    void validate() const;
};

struct SolverOptions {
    double tol_inner = 1e-11;      // relative residual of the inner x0 solve
    double tol_outer = 1e-9;       // max abs residual of the full system
    double tol_threshold = 1e-7;   // alpha-interval width for threshold bisection
    int max_newton_iter = 60;
    int max_backtrack = 12;
    int multi_starts = 8;
    double fd_step = 1e-6;         // central-difference step in transformed coordinates
};

/// One solved point of the stationarity system. residual is the max
/// absolute value over the 2M+1 equations, with the x0 equations scaled by
/// 1/B (i.e. x_r dB/dx_r / B - k q_r) so the number is meaningful for any k.
struct StationaryPoint {
    double alpha = 0.0;
    std::vector<double> q;
    std::vector<double> x0;
    double lambda = 0.0;
    double G = 0.0;
    double residual = 0.0;
};

/// Multivariate entropy -sum q_r log q_r - (1-sum) log(1-sum), with
/// 0 log 0 = 0. Negative entries or sum > 1 throw std::invalid_argument.
double entropy_h(std::span<const double> q);

/// (sum r q_r)^2 / (sum r^2 q_r).
double alpha_of_q(std::span<const double> q);

/// Solves the stationarity system for one ensemble. Instances are safe to
/// share across threads once constructed (the anchor cache is guarded).
class GrowthSolver {
  public:
    GrowthSolver(const EnsembleParams& params, const SolverOptions& opts = {});

    const EnsembleParams& params() const noexcept { return params_; }
    const SolverOptions& options() const noexcept { return opts_; }

    /// Unique positive solution x0 of x_r dB/dx_r = k q_r B, by damped
    /// Newton in log coordinates. Optional y_init overrides the default
    /// start (used by the uniqueness probe). Throws solver_failure with the
    /// last iterate on non-convergence.
    std::vector<double> solve_x0(std::span<const double> q, std::span<const double> y_init = {}) const;

    /// f(q) = (j/k) log B(x0) - j sum q_r log x0_r - (j-1) h(q) with x0
    /// from solve_x0. Optionally returns x0.
    double f_of_q(std::span<const double> q, std::vector<double>* x0_out = nullptr) const;

    /// M=1 closed form: scalar bisection for x0, then the growth rate
    /// directly. alpha must lie in (0,1).
    StationaryPoint solve_M1(double alpha) const;

    /// Full 2M+1 Lagrange system at the given alpha. Seeded solves run one
    /// Newton; seedless solves walk a short continuation path from the
    /// unconstrained maximizer, with deterministic multi-starts as the
    /// fallback. With collect_ties, every converged stationary point whose
    /// f lies within 1e-9 of the best is appended.
    StationaryPoint solve_full(double alpha, const StationaryPoint* seed = nullptr,
                               std::vector<StationaryPoint>* collect_ties = nullptr) const;

    struct Anchor {
        std::vector<double> q;
        std::vector<double> x0;
        double f = 0.0;
        double alpha = 0.0;
    };

    /// Unconstrained maximizer of f over the open simplex (computed once,
    /// cached). Seeds the continuation and pins the curve maximum.
    const Anchor& anchor() const;

    /// Residuals of the 2M+1 equations at an arbitrary point (scaled
    /// stationarity, Lagrange rows, constraint), for verification.
    std::vector<double> residuals(const StationaryPoint& p) const;

  private:
    struct State;  // transformed unknowns (y, t, lambda)

    void full_residual(const State& s, double alpha, std::vector<double>& F) const;
    bool newton_full(State& s, double alpha, double* out_residual) const;
    std::optional<StationaryPoint> try_solve(State s, double alpha) const;
    StationaryPoint finish_point(const State& s, double alpha, double residual) const;
    std::vector<double> solve_x0_log(std::span<const double> q, std::span<const double> y_init) const;

    EnsembleParams params_;
    SolverOptions opts_;
    PwefEvaluator eval_;

    mutable std::once_flag anchor_once_;
    mutable std::unique_ptr<Anchor> anchor_;
};

/// Free-function conveniences mirroring the class operations.
std::vector<double> solve_x0(const EnsembleParams& params, std::span<const double> q, const SolverOptions& opts = {});
double f_of_q(const EnsembleParams& params, std::span<const double> q, const SolverOptions& opts = {});
StationaryPoint solve_M1(const EnsembleParams& params, double alpha, const SolverOptions& opts = {});
StationaryPoint solve_full(const EnsembleParams& params, double alpha, const SolverOptions& opts = {},
                           const StationaryPoint* seed = nullptr);

}  // namespace pwg
