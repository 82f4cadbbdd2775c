#include "pwg/pwef.hpp"

#include <algorithm>
#include <limits>

namespace pwg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Enumerates integer vectors v >= 0 of length len with sum_r r*v_r <= budget.
template <typename Fn>
void for_each_weighted_vector(int len, long long budget, std::vector<long long>& v, int pos, const Fn& fn) {
    if (pos == len) {
        fn(v);
        return;
    }
    const long long weight = pos + 1;
    for (long long val = 0; val * weight <= budget; ++val) {
        v[static_cast<std::size_t>(pos)] = val;
        for_each_weighted_vector(len, budget - val * weight, v, pos + 1, fn);
    }
    v[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

void PwefSpec::validate() const {
    if (M < 1 || M > 8) throw std::invalid_argument("PwefSpec: M must be in [1, 8]");
    if (k < 2 || k > 1'000'000) throw std::invalid_argument("PwefSpec: k must be in [2, 1e6]");
}

SignedLogValue SignedLogValue::from_double(double v) {
    if (v == 0.0) return zero();
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

SignedLogValue SignedLogValue::from_log(int sign, double log_mag) {
    if (sign == 0) return zero();
    return {sign > 0 ? 1 : -1, log_mag};
}

double SignedLogValue::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
}

SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
    if (a.sign == 0 || b.sign == 0) return SignedLogValue::zero();
    return {a.sign * b.sign, a.log_mag + b.log_mag};
}

SignedLogValue operator+(const SignedLogValue& a, const SignedLogValue& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const SignedLogValue& hi = a.log_mag >= b.log_mag ? a : b;
    const SignedLogValue& lo = a.log_mag >= b.log_mag ? b : a;
    const double d = lo.log_mag - hi.log_mag;  // <= 0
    if (hi.sign == lo.sign) return {hi.sign, hi.log_mag + std::log1p(std::exp(d))};
    const double x = std::exp(d);
    if (x >= 1.0) return SignedLogValue::zero();  // exact cancellation
    return {hi.sign, hi.log_mag + std::log1p(-x)};
}

SparsePoly build_P(const PwefSpec& spec) {
    spec.validate();
    SparsePoly p = SparsePoly::constant(spec.M, 1);
    for (int r = 1; r <= spec.M; ++r) {
        ExponentVec e(static_cast<std::size_t>(spec.M), 0);
        e[static_cast<std::size_t>(r - 1)] = 1;
        p.add_term(e, 1);
    }
    return p;
}

SparsePoly build_Q(const PwefSpec& spec) {
    spec.validate();
    SparsePoly q = SparsePoly::constant(spec.M, 1);
    for (int r = 1; r <= spec.M; ++r) {
        ExponentVec e(static_cast<std::size_t>(spec.M), 0);
        e[static_cast<std::size_t>(r - 1)] = 1;
        q.add_term(e, (r % 2 == 0) ? 1 : -1);
    }
    return q;
}

SparsePoly build_T(const PwefSpec& spec) {
    spec.validate();
    SparsePoly t(spec.M);
    // Level m collects the types whose largest nonzero entry sits at index m
    // with count exactly 1 and weighted prefix sum below m.
    for (int m = 2; m <= spec.M; ++m) {
        std::vector<long long> v(static_cast<std::size_t>(m - 1), 0);
        for_each_weighted_vector(m - 1, m - 1, v, 0, [&](const std::vector<long long>& vv) {
            long long odd_sum = 0;
            for (std::size_t i = 0; i < vv.size(); i += 2) odd_sum += vv[i];
            if ((odd_sum + m) % 2 != 0) return;
            std::vector<long long> parts;
            parts.reserve(vv.size() + 1);
            parts.push_back(1);
            parts.insert(parts.end(), vv.begin(), vv.end());
            const BigInt c = multinomial(spec.k, parts);
            if (c == 0) return;
            ExponentVec e(static_cast<std::size_t>(spec.M), 0);
            for (std::size_t i = 0; i < vv.size(); ++i) e[i] = static_cast<int>(vv[i]);
            e[static_cast<std::size_t>(m - 1)] = 1;
            t.add_term(e, c);
        });
    }
    return t;
}

SparsePoly build_B(const PwefSpec& spec) {
    spec.validate();
    const SparsePoly half_sum =
        (build_P(spec).pow(static_cast<unsigned long long>(spec.k)) + build_Q(spec).pow(static_cast<unsigned long long>(spec.k)))
            .divided_exact(2);
    return half_sum - build_T(spec);
}

bool membership_S(std::span<const long long> u, const PwefSpec& spec) {
    spec.validate();
    if (static_cast<int>(u.size()) != spec.M) throw std::invalid_argument("membership_S: type vector length mismatch");
    long long total = 0;
    long long odd_sum = 0;
    int top = 0;  // largest 1-based index with u_r != 0
    for (int r = 1; r <= spec.M; ++r) {
        const long long ur = u[static_cast<std::size_t>(r - 1)];
        if (ur < 0) throw std::invalid_argument("membership_S: negative entry");
        total += ur;
        if (r % 2 == 1) odd_sum += ur;
        if (ur != 0) top = r;
    }
    if (total > spec.k) return false;
    if (odd_sum % 2 != 0) return false;
    if (top > 0 && u[static_cast<std::size_t>(top - 1)] == 1) {
        long long weighted_prefix = 0;
        for (int r = 1; r < top; ++r) weighted_prefix += static_cast<long long>(r) * u[static_cast<std::size_t>(r - 1)];
        if (top > weighted_prefix) return false;
    }
    return true;
}

PwefEvaluator::PwefEvaluator(const PwefSpec& spec) : spec_(spec), T_(build_T(spec)) {
    dT_.reserve(static_cast<std::size_t>(spec_.M));
    for (int r = 1; r <= spec_.M; ++r) dT_.push_back(T_.partial_derivative(r));
}

void PwefEvaluator::check_point(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != spec_.M) throw std::invalid_argument("PwefEvaluator: point length mismatch");
    for (double v : x)
        if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("PwefEvaluator: point entries must be strictly positive");
}

// T and its partials have nonnegative coefficients, so a plain log-sum-exp
// over terms is stable for any positive point.
SignedLogValue PwefEvaluator::eval_T_poly(const SparsePoly& poly, std::span<const double> logx) const {
    SignedLogValue acc = SignedLogValue::zero();
    for (const auto& [e, c] : poly.terms()) {
        double lt = log_big(c);
        for (std::size_t i = 0; i < e.size(); ++i) lt += e[i] * logx[i];
        acc = acc + SignedLogValue::from_log(1, lt);
    }
    return acc;
}

namespace {

// log(1 + sum exp(logx_r)) without overflow; result >= 0.
double log_P_of(std::span<const double> logx) {
    double m = 0.0;
    for (double v : logx) m = std::max(m, v);
    double s = std::exp(-m);
    for (double v : logx) s += std::exp(v - m);
    return m + std::log(s);
}

// sign and log|Q| with Q = 1 + sum (-1)^r x_r, scaled by the largest entry
// to stay finite for extreme x.
void log_Q_of(std::span<const double> x, std::span<const double> logx, int& sign, double& log_mag) {
    double m = 0.0;
    for (double v : logx) m = std::max(m, v);
    const double scale = std::exp(-m);
    double s = scale;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi_scaled = std::exp(logx[i] - m);
        s += (i % 2 == 0) ? -xi_scaled : xi_scaled;  // 1-based odd index carries the minus
    }
    if (s == 0.0) {
        sign = 0;
        log_mag = kNegInf;
        return;
    }
    sign = s > 0 ? 1 : -1;
    log_mag = m + std::log(std::abs(s));
}

}  // namespace

SignedLogValue PwefEvaluator::eval_B(std::span<const double> x, EvalFlags* flags) const {
    check_point(x);
    std::vector<double> logx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) logx[i] = std::log(x[i]);

    const double log2 = std::log(2.0);
    const double logP = log_P_of(logx);
    int sQ;
    double logQ;
    log_Q_of(x, logx, sQ, logQ);

    const SignedLogValue p_term = SignedLogValue::from_log(1, spec_.k * logP - log2);
    SignedLogValue q_term;
    if (sQ == 0 || logQ < std::log(1e-300)) {
        q_term = SignedLogValue::zero();
        if (flags) flags->q_power_zero = true;
    } else {
        const int sign = (spec_.k % 2 == 0) ? 1 : sQ;
        q_term = SignedLogValue::from_log(sign, spec_.k * logQ - log2);
    }
    const SignedLogValue t_val = eval_T_poly(T_, logx);
    return p_term + q_term - t_val;
}

SignedLogValue PwefEvaluator::eval_dB(std::span<const double> x, int r, EvalFlags* flags) const {
    check_point(x);
    if (r < 1 || r > spec_.M) throw std::out_of_range("PwefEvaluator::eval_dB: variable index out of range");
    std::vector<double> logx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) logx[i] = std::log(x[i]);

    const double log_half_k = std::log(static_cast<double>(spec_.k)) - std::log(2.0);
    const double logP = log_P_of(logx);
    int sQ;
    double logQ;
    log_Q_of(x, logx, sQ, logQ);

    const SignedLogValue p_term = SignedLogValue::from_log(1, log_half_k + (spec_.k - 1) * logP);
    SignedLogValue q_term;
    if (sQ == 0 || logQ < std::log(1e-300)) {
        q_term = SignedLogValue::zero();
        if (flags) flags->q_power_zero = true;
    } else {
        int sign = ((spec_.k - 1) % 2 == 0) ? 1 : sQ;
        if (r % 2 == 1) sign = -sign;  // the (-1)^r factor
        q_term = SignedLogValue::from_log(sign, log_half_k + (spec_.k - 1) * logQ);
    }
    const SignedLogValue t_val = eval_T_poly(dT_[static_cast<std::size_t>(r - 1)], logx);
    return p_term + q_term - t_val;
}

SignedLogValue eval_B(const PwefSpec& spec, std::span<const double> x, EvalFlags* flags) {
    return PwefEvaluator(spec).eval_B(x, flags);
}

SignedLogValue eval_dB(const PwefSpec& spec, std::span<const double> x, int r, EvalFlags* flags) {
    return PwefEvaluator(spec).eval_dB(x, r, flags);
}

}  // namespace pwg
