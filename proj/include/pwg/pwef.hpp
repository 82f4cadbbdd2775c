#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pwg/polynomial.hpp"

namespace pwg {

/// Parameters of the single parity-check (SPC) enumerator: cover degree M
/// and code length k. Validation caps: 1 <= M <= 8, 2 <= k <= 1e6 (beyond
/// that the U-set enumeration and double-precision evaluation degrade).
struct PwefSpec {
    int M = 1;
    long long k = 2;

    void validate() const;
};

/// A real number kept as (sign, log|value|) so that quantities like
/// (P(x))^k stay representable for k up to 1e6 and the sign of (Q(x))^k is
/// tracked exactly. sign is -1, 0, or +1; log_mag is -inf when sign == 0.
struct SignedLogValue {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static SignedLogValue zero() { return {}; }
    static SignedLogValue from_double(double v);
    static SignedLogValue from_log(int sign, double log_mag);

    double to_double() const;
    SignedLogValue negated() const { return {-sign, log_mag}; }

    friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b);
    friend SignedLogValue operator+(const SignedLogValue& a, const SignedLogValue& b);
    friend SignedLogValue operator-(const SignedLogValue& a, const SignedLogValue& b) { return a + b.negated(); }
};

/// Diagnostics from a log-domain evaluation. q_power_zero records that
/// |Q(x)| fell below 1e-300 and the Q-power term was treated as exactly 0
/// (x near the odd-index cancellation locus is legitimate in solver
/// iterations and must not produce -inf noise).
struct EvalFlags {
    bool q_power_zero = false;
};

/// P(x) = 1 + x_1 + ... + x_M as an exact polynomial.
SparsePoly build_P(const PwefSpec& spec);

/// Q(x) = 1 - x_1 + x_2 - x_3 + ... as an exact polynomial.
SparsePoly build_Q(const PwefSpec& spec);

/// Exclusion polynomial T built by the level recursion with T = 0 for
/// M = 1. Level m > 1 adds x_m * sum over integer vectors v >= 0 of length
/// m-1 with sum_r r*v_r < m and sum_{r odd} v_r + m even, each weighted by
/// the multinomial choosing 1 position of value m and v_r positions of
/// value r out of k.
SparsePoly build_T(const PwefSpec& spec);

/// Exact enumerator B = (P^k + Q^k)/2 - T. Intended for small k: the
/// expansion inherits the pow() term-count guard.
SparsePoly build_B(const PwefSpec& spec);

/// Membership in the type support set:
///   (1) all u_r >= 0 and sum u_r <= k,
///   (2) sum of odd-indexed u_r is even,
///   (3) if the largest index c with u_c != 0 has u_c == 1, then
///       c <= sum_{r<c} r*u_r.
/// Every coefficient of B equals multinomial(k; u) exactly when u passes.
bool membership_S(std::span<const long long> u, const PwefSpec& spec);

/// Cached evaluator for B and its partials at positive points, computed in
/// the signed-log domain without expanding (P)^k. T and its derivatives are
/// kept exact and evaluated by direct term iteration.
class PwefEvaluator {
  public:
    explicit PwefEvaluator(const PwefSpec& spec);

    const PwefSpec& spec() const noexcept { return spec_; }

    /// B(x) for strictly positive x. Relative error <= 1e-10 against exact
    /// rational evaluation for small k.
    SignedLogValue eval_B(std::span<const double> x, EvalFlags* flags = nullptr) const;

    /// dB/dx_r (1-based r) via k/2 [P^{k-1} + (-1)^r Q^{k-1}] - dT/dx_r.
    SignedLogValue eval_dB(std::span<const double> x, int r, EvalFlags* flags = nullptr) const;

  private:
    void check_point(std::span<const double> x) const;
    SignedLogValue eval_T_poly(const SparsePoly& poly, std::span<const double> logx) const;

    PwefSpec spec_;
    SparsePoly T_;
    std::vector<SparsePoly> dT_;  // indexed r-1
};

/// One-shot conveniences over PwefEvaluator.
SignedLogValue eval_B(const PwefSpec& spec, std::span<const double> x, EvalFlags* flags = nullptr);
SignedLogValue eval_dB(const PwefSpec& spec, std::span<const double> x, int r, EvalFlags* flags = nullptr);

}  // namespace pwg
