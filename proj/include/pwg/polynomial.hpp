#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pwg/errors.hpp"

namespace pwg {

using BigInt = boost::multiprecision::cpp_int;

// Exponent vector of a monomial x_1^{e_1} ... x_M^{e_M}. Length must equal
// the ambient variable count of the polynomial holding it; entries >= 0.
using ExponentVec = std::vector<int>;

/// Natural log of a positive big integer, accurate to ~1e-15 relative.
double log_big(const BigInt& v);

/// Exact sparse multivariate polynomial in a fixed number of variables with
/// arbitrary-precision integer coefficients. Zero coefficients are never
/// stored; term order is lexicographic in the exponent vector, which makes
/// iteration (and the dump format) deterministic.
///
/// Values are immutable in normal use: all arithmetic returns new objects,
/// so sharing across threads is safe.
class SparsePoly {
  public:
    using TermMap = std::map<ExponentVec, BigInt>;

    explicit SparsePoly(int vars);

    static SparsePoly constant(int vars, BigInt c);
    static SparsePoly monomial(int vars, ExponentVec e, BigInt c);

    int vars() const noexcept { return vars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    /// Exact coefficient of the given exponent vector; 0 if absent.
    BigInt coeff(const ExponentVec& e) const;

    /// Adds c * x^e, merging with any existing term and pruning zeros.
    void add_term(const ExponentVec& e, const BigInt& c);

    SparsePoly operator-() const;
    SparsePoly& operator+=(const SparsePoly& rhs);
    SparsePoly& operator-=(const SparsePoly& rhs);
    friend SparsePoly operator+(SparsePoly lhs, const SparsePoly& rhs) { return lhs += rhs; }
    friend SparsePoly operator-(SparsePoly lhs, const SparsePoly& rhs) { return lhs -= rhs; }
    friend SparsePoly operator*(const SparsePoly& lhs, const SparsePoly& rhs);
    friend bool operator==(const SparsePoly& lhs, const SparsePoly& rhs) = default;

    SparsePoly& operator*=(const BigInt& scalar);

    /// Exact division of every coefficient; throws std::invalid_argument if
    /// any coefficient is not divisible.
    SparsePoly divided_exact(const BigInt& divisor) const;

    /// n-th power by repeated squaring; pow(0) is the constant 1. The term
    /// count of every intermediate is capped: exceeding max_terms throws
    /// resource_limit_error (expansion of large powers is an oracle-only
    /// path and must fail loudly instead of thrashing).
    SparsePoly pow(unsigned long long n, std::size_t max_terms = 4'000'000) const;

    /// Formal partial derivative with respect to variable r (1-based,
    /// 1 <= r <= vars()). Out-of-range r throws std::out_of_range.
    SparsePoly partial_derivative(int r) const;

    /// Evaluation with double coefficients; intended for small polynomials.
    double eval(std::span<const double> x) const;

    /// Exact evaluation at an integer point.
    BigInt eval_int(std::span<const long long> x) const;

    /// Dump format: one term per line, "coefficient<TAB>e_1,e_2,...,e_M",
    /// lexicographically sorted by exponent vector, LF line endings.
    std::string dump() const;

  private:
    void check_same_vars(const SparsePoly& other) const;

    int vars_;
    TermMap terms_;
};

/// Falling-factorial multinomial k! / ((k - sum(parts))! * prod(parts!)).
/// Returns 0 when sum(parts) > k. Exact.
BigInt multinomial(long long k, std::span<const long long> parts);

/// Exact coefficient of x^target in (base)^n without expanding the full
/// power: iterative products truncated to the target box (exponents only
/// grow, so terms beyond the target cannot contribute). Requires base to
/// have no negative exponents, which SparsePoly already guarantees.
BigInt coeff_of_power(const SparsePoly& base, unsigned long long n, const ExponentVec& target);

}  // namespace pwg
