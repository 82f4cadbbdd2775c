#pragma once

#include <optional>
#include <string>

#include "pwg/solver.hpp"

namespace pwg {

enum class Units { nats, bits };

struct CurvePoint {
    double alpha = 0.0;
    bool ok = false;
    StationaryPoint point;  // valid when ok
    std::string message;    // failure note when !ok
};

struct GrowthCurve {
    EnsembleParams params;
    SolverOptions options;
    std::vector<CurvePoint> points;  // strictly increasing alpha
    std::optional<double> alpha_star;
};

/// One growth-rate point: solve_M1 for M = 1, the full system otherwise.
StationaryPoint growth_rate(const EnsembleParams& params, double alpha, const SolverOptions& opts = {});

/// Uniform alpha grid swept with a serial continuation pre-pass that plants
/// anchor seeds, then independent per-point solves (OpenMP). Failed points
/// are recorded with failure markers, never dropped. Throws if every point
/// failed. Results do not depend on the thread count.
GrowthCurve sweep(const EnsembleParams& params, double alpha_min, double alpha_max, int steps,
                  const SolverOptions& opts = {}, int threads = 0);

/// Single-threaded reference running the identical phase structure; kept
/// for testing and benchmarks.
GrowthCurve sweep_serial(const EnsembleParams& params, double alpha_min, double alpha_max, int steps,
                         const SolverOptions& opts = {});

struct ThresholdResult {
    enum class Outcome { found, no_sign_change, blocked };
    Outcome outcome = Outcome::no_sign_change;
    double alpha_star = 0.0;  // valid when found
    double G_at_star = 0.0;
    // Additional sign-change brackets seen after the first one.
    std::vector<std::pair<double, double>> later_crossings;
    int scanned = 0;
    int scan_failures = 0;
    std::string message;
};

/// Left-most zero of G: coarse 200-point scan for the first sign change,
/// then bisection to |G| <= 1e-6 or an alpha interval of tol_threshold.
/// Refinement refuses to bisect across failed scan points (Outcome::blocked).
ThresholdResult threshold(const EnsembleParams& params, const SolverOptions& opts = {});

/// CSV: header `alpha,G_nats,q_1..q_M,x0_1..x0_M,lambda,residual,status`,
/// one row per grid point, 17-significant-digit decimal fields, LF endings.
/// With Units::bits the rate column is G_bits.
std::string curve_to_csv(const GrowthCurve& curve, Units units = Units::nats);

/// JSON mirror of the CSV fields plus a configuration echo.
std::string curve_to_json(const GrowthCurve& curve, Units units = Units::nats, int threads = 0);

/// gnuplot script plotting the CSV written at csv_path.
std::string gnuplot_script(const GrowthCurve& curve, const std::string& csv_path, Units units = Units::nats);

}  // namespace pwg
