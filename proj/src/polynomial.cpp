#include "pwg/polynomial.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pwg {

double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 900) return std::log(v.convert_to<double>());
    // Take the top 64 bits as a double mantissa and add the shifted-out scale.
    const unsigned shift = bits - 64;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

SparsePoly::SparsePoly(int vars) : vars_(vars) {
    if (vars < 0) throw std::invalid_argument("SparsePoly: negative variable count");
}

SparsePoly SparsePoly::constant(int vars, BigInt c) {
    SparsePoly p(vars);
    if (c != 0) p.terms_.emplace(ExponentVec(static_cast<std::size_t>(vars), 0), std::move(c));
    return p;
}

SparsePoly SparsePoly::monomial(int vars, ExponentVec e, BigInt c) {
    SparsePoly p(vars);
    p.add_term(e, c);
    return p;
}

void SparsePoly::check_same_vars(const SparsePoly& other) const {
    if (vars_ != other.vars_)
        throw std::invalid_argument("SparsePoly: mismatched variable counts (" + std::to_string(vars_) + " vs " +
                                    std::to_string(other.vars_) + ")");
}

BigInt SparsePoly::coeff(const ExponentVec& e) const {
    if (static_cast<int>(e.size()) != vars_)
        throw std::invalid_argument("SparsePoly::coeff: exponent vector length mismatch");
    auto it = terms_.find(e);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void SparsePoly::add_term(const ExponentVec& e, const BigInt& c) {
    if (static_cast<int>(e.size()) != vars_)
        throw std::invalid_argument("SparsePoly::add_term: exponent vector length mismatch");
    for (int exp : e)
        if (exp < 0) throw std::invalid_argument("SparsePoly::add_term: negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& rhs) {
    check_same_vars(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& rhs) {
    check_same_vars(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

SparsePoly operator*(const SparsePoly& lhs, const SparsePoly& rhs) {
    lhs.check_same_vars(rhs);
    SparsePoly out(lhs.vars_);
    ExponentVec e(static_cast<std::size_t>(lhs.vars_));
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (int i = 0; i < lhs.vars_; ++i) e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

SparsePoly& SparsePoly::operator*=(const BigInt& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
}

SparsePoly SparsePoly::divided_exact(const BigInt& divisor) const {
    if (divisor == 0) throw std::invalid_argument("SparsePoly::divided_exact: division by zero");
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (c % divisor != 0) throw std::invalid_argument("SparsePoly::divided_exact: coefficient not divisible");
        out.terms_.emplace(e, c / divisor);
    }
    return out;
}

SparsePoly SparsePoly::pow(unsigned long long n, std::size_t max_terms) const {
    SparsePoly result = constant(vars_, 1);
    SparsePoly base = *this;
    while (n > 0) {
        if (n & 1ULL) {
            result = result * base;
            if (result.term_count() > max_terms)
                throw resource_limit_error("SparsePoly::pow: term count exceeds cap of " + std::to_string(max_terms));
        }
        n >>= 1ULL;
        if (n > 0) {
            base = base * base;
            if (base.term_count() > max_terms)
                throw resource_limit_error("SparsePoly::pow: term count exceeds cap of " + std::to_string(max_terms));
        }
    }
    return result;
}

SparsePoly SparsePoly::partial_derivative(int r) const {
    if (r < 1 || r > vars_) throw std::out_of_range("SparsePoly::partial_derivative: variable index out of range");
    const std::size_t idx = static_cast<std::size_t>(r - 1);
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        ExponentVec de = e;
        de[idx] -= 1;
        out.terms_.emplace(std::move(de), c * e[idx]);
    }
    return out;
}

double SparsePoly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != vars_) throw std::invalid_argument("SparsePoly::eval: point length mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.convert_to<double>();
        for (int i = 0; i < vars_; ++i)
            for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) t *= x[static_cast<std::size_t>(i)];
        acc += t;
    }
    return acc;
}

BigInt SparsePoly::eval_int(std::span<const long long> x) const {
    if (static_cast<int>(x.size()) != vars_) throw std::invalid_argument("SparsePoly::eval_int: point length mismatch");
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = c;
        for (int i = 0; i < vars_; ++i)
            for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) t *= x[static_cast<std::size_t>(i)];
        acc += t;
    }
    return acc;
}

std::string SparsePoly::dump() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        os << c.str() << '\t';
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << ',';
            os << e[i];
        }
        os << '\n';
    }
    return os.str();
}

BigInt coeff_of_power(const SparsePoly& base, unsigned long long n, const ExponentVec& target) {
    if (static_cast<int>(target.size()) != base.vars())
        throw std::invalid_argument("coeff_of_power: target length mismatch");
    for (int e : target)
        if (e < 0) return 0;
    if (n == 0) {
        for (int e : target)
            if (e != 0) return 0;
        return 1;
    }

    const int vars = base.vars();
    auto in_box = [&](const ExponentVec& e) {
        for (int i = 0; i < vars; ++i)
            if (e[static_cast<std::size_t>(i)] > target[static_cast<std::size_t>(i)]) return false;
        return true;
    };

    SparsePoly::TermMap truncated_base;
    for (const auto& [e, c] : base.terms())
        if (in_box(e)) truncated_base.emplace(e, c);
    if (truncated_base.empty()) return 0;

    SparsePoly::TermMap acc;
    acc.emplace(ExponentVec(static_cast<std::size_t>(vars), 0), BigInt(1));
    ExponentVec sum(static_cast<std::size_t>(vars));
    for (unsigned long long step = 0; step < n; ++step) {
        SparsePoly::TermMap next;
        for (const auto& [ea, ca] : acc) {
            for (const auto& [eb, cb] : truncated_base) {
                bool ok = true;
                for (int i = 0; i < vars; ++i) {
                    sum[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
                    if (sum[static_cast<std::size_t>(i)] > target[static_cast<std::size_t>(i)]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                auto [it, inserted] = next.emplace(sum, ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        }
        acc = std::move(next);
        if (acc.empty()) return 0;
    }
    const auto it = acc.find(target);
    return it == acc.end() ? BigInt(0) : it->second;
}

BigInt multinomial(long long k, std::span<const long long> parts) {
    if (k < 0) throw std::invalid_argument("multinomial: negative k");
    long long total = 0;
    for (long long p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        total += p;
    }
    if (total > k) return 0;
    BigInt num = 1;
    for (long long i = 0; i < total; ++i) num *= (k - i);
    BigInt den = 1;
    for (long long p : parts)
        for (long long i = 2; i <= p; ++i) den *= i;
    return num / den;
}

}  // namespace pwg
