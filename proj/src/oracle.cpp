#include "pwg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pwg/errors.hpp"
#include "linsolve.hpp"

namespace pwg {

namespace {

constexpr double kScanCap = 1e7;
constexpr double kCoverCap = 1e8;

int resolve_threads(int threads) {
#ifdef _OPENMP
    return threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(int m_, int n_, std::vector<uint8_t> entries_)
    : m(m_), n(n_), entries(std::move(entries_)) {
    if (m < 1 || n < 1) throw std::invalid_argument("ParityCheckMatrix: empty dimensions");
    if (entries.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
        throw std::invalid_argument("ParityCheckMatrix: entry count mismatch");
    rows.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            const uint8_t v = at(j, i);
            if (v > 1) throw std::invalid_argument("ParityCheckMatrix: entries must be binary");
            if (v) rows[static_cast<std::size_t>(j)].push_back(i);
        }
        if (rows[static_cast<std::size_t>(j)].empty()) throw std::invalid_argument("ParityCheckMatrix: empty row");
    }
}

ParityCheckMatrix ParityCheckMatrix::spc(int k) {
    return ParityCheckMatrix(1, k, std::vector<uint8_t>(static_cast<std::size_t>(k), 1));
}

double awgn_pseudoweight(std::span<const int> z) {
    double sum = 0.0, sq = 0.0;
    for (int v : z) {
        if (v < 0) throw std::domain_error("awgn_pseudoweight: negative entry");
        sum += v;
        sq += static_cast<double>(v) * v;
    }
    if (sq == 0.0) throw std::domain_error("awgn_pseudoweight: undefined for the all-zero vector");
    return sum * sum / sq;
}

bool in_fundamental_cone(std::span<const int> z, const ParityCheckMatrix& H) {
    if (static_cast<int>(z.size()) != H.n) throw std::invalid_argument("in_fundamental_cone: length mismatch");
    for (const auto& row : H.rows) {
        long long row_sum = 0;
        int row_max = 0;
        for (int i : row) {
            row_sum += z[static_cast<std::size_t>(i)];
            row_max = std::max(row_max, z[static_cast<std::size_t>(i)]);
        }
        // sum_{l != i} z_l >= z_i for every i in the row; binding at the max.
        if (row_sum < 2LL * row_max) return false;
    }
    return true;
}

bool is_pseudocodeword(std::span<const int> z, const ParityCheckMatrix& H) {
    if (static_cast<int>(z.size()) != H.n) throw std::invalid_argument("is_pseudocodeword: length mismatch");
    for (const auto& row : H.rows) {
        long long row_sum = 0;
        for (int i : row) row_sum += z[static_cast<std::size_t>(i)];
        if (row_sum % 2 != 0) return false;
    }
    return in_fundamental_cone(z, H);
}

std::vector<long long> type_of(std::span<const int> z, int M) {
    std::vector<long long> u(static_cast<std::size_t>(M), 0);
    for (int v : z) {
        if (v < 0 || v > M) throw std::domain_error("type_of: entry outside 0..M");
        if (v > 0) ++u[static_cast<std::size_t>(v - 1)];
    }
    return u;
}

namespace {

void decode_index(long long idx, int base, int n, Pseudocodeword& z) {
    for (int i = n - 1; i >= 0; --i) {
        z[static_cast<std::size_t>(i)] = static_cast<int>(idx % base);
        idx /= base;
    }
}

long long checked_scan_size(const ParityCheckMatrix& H, int M) {
    if (M < 1) throw std::invalid_argument("enumerate_pseudocodewords: M must be positive");
    double total = 1.0;
    for (int i = 0; i < H.n; ++i) total *= static_cast<double>(M + 1);
    if (total > kScanCap)
        throw resource_limit_error("enumerate_pseudocodewords: (M+1)^n = " + std::to_string(total) + " exceeds cap 1e7");
    long long size = 1;
    for (int i = 0; i < H.n; ++i) size *= (M + 1);
    return size;
}

}  // namespace

std::vector<Pseudocodeword> enumerate_pseudocodewords_serial(const ParityCheckMatrix& H, int M) {
    const long long total = checked_scan_size(H, M);
    std::vector<Pseudocodeword> out;
    Pseudocodeword z(static_cast<std::size_t>(H.n));
    for (long long idx = 0; idx < total; ++idx) {
        decode_index(idx, M + 1, H.n, z);
        if (is_pseudocodeword(z, H)) out.push_back(z);
    }
    return out;
}

std::vector<Pseudocodeword> enumerate_pseudocodewords(const ParityCheckMatrix& H, int M, int threads) {
    const long long total = checked_scan_size(H, M);
    // Fixed chunk count: the merged output must not depend on how many
    // worker threads ran the scan.
    const int chunks = static_cast<int>(std::min<long long>(total, 128));
    std::vector<std::vector<Pseudocodeword>> buckets(static_cast<std::size_t>(chunks));
    const long long width = (total + chunks - 1) / chunks;
    const int nt = resolve_threads(threads);

#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int c = 0; c < chunks; ++c) {
        const long long lo = static_cast<long long>(c) * width;
        const long long hi = std::min(total, lo + width);
        Pseudocodeword z(static_cast<std::size_t>(H.n));
        auto& bucket = buckets[static_cast<std::size_t>(c)];
        for (long long idx = lo; idx < hi; ++idx) {
            decode_index(idx, M + 1, H.n, z);
            if (is_pseudocodeword(z, H)) bucket.push_back(z);
        }
    }

    std::vector<Pseudocodeword> out;
    for (auto& bucket : buckets)
        out.insert(out.end(), std::make_move_iterator(bucket.begin()), std::make_move_iterator(bucket.end()));
    return out;
}

namespace {

std::vector<std::vector<int>> all_permutations(int M) {
    std::vector<int> perm(static_cast<std::size_t>(M));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return perms;  // perms[0] is the identity
}

}  // namespace

std::vector<Pseudocodeword> enumerate_cover_codewords(const ParityCheckMatrix& H, int M, bool fix_check_gauge) {
    if (M < 1) throw std::invalid_argument("enumerate_cover_codewords: M must be positive");

    struct Edge {
        int j, i;
    };
    std::vector<Edge> edges;
    std::vector<int> first_edge_of_check(static_cast<std::size_t>(H.m), -1);
    for (int j = 0; j < H.m; ++j)
        for (int i : H.rows[static_cast<std::size_t>(j)]) {
            if (first_edge_of_check[static_cast<std::size_t>(j)] < 0)
                first_edge_of_check[static_cast<std::size_t>(j)] = static_cast<int>(edges.size());
            edges.push_back({j, i});
        }

    const auto perms = all_permutations(M);
    const int lifted_bits = M * H.n;
    if (lifted_bits > 62) throw resource_limit_error("enumerate_cover_codewords: lifted code length exceeds 62 bits");

    double work = std::pow(2.0, static_cast<double>(lifted_bits));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const bool fixed = fix_check_gauge && first_edge_of_check[static_cast<std::size_t>(edges[e].j)] == static_cast<int>(e);
        if (!fixed) work *= static_cast<double>(perms.size());
    }
    if (work > kCoverCap)
        throw resource_limit_error("enumerate_cover_codewords: (M!)^E * 2^(Mn) = " + std::to_string(work) +
                                   " exceeds cap 1e8");

    // Odometer over permutation choices, one digit per edge; gauge-fixed
    // edges stay pinned to the identity.
    std::vector<std::size_t> choice(edges.size(), 0);
    std::set<Pseudocodeword> found;
    const uint64_t word_count = 1ULL << lifted_bits;
    std::vector<uint64_t> row_masks(static_cast<std::size_t>(H.m) * static_cast<std::size_t>(M));

    while (true) {
        // Check copy (j, j*) is adjacent to copy pi^{-1}(j*) of every
        // variable in row j; bit layout is variable-major.
        std::fill(row_masks.begin(), row_masks.end(), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& perm = perms[choice[e]];
            for (int istar = 0; istar < M; ++istar) {
                const int jstar = perm[static_cast<std::size_t>(istar)];
                const int bit = edges[e].i * M + istar;
                row_masks[static_cast<std::size_t>(edges[e].j) * static_cast<std::size_t>(M) + static_cast<std::size_t>(jstar)] |=
                    (1ULL << bit);
            }
        }

        for (uint64_t p = 0; p < word_count; ++p) {
            bool ok = true;
            for (uint64_t mask : row_masks) {
                if (std::popcount(p & mask) % 2 != 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            Pseudocodeword z(static_cast<std::size_t>(H.n));
            for (int i = 0; i < H.n; ++i) {
                const uint64_t var_mask = ((1ULL << M) - 1ULL) << (i * M);
                z[static_cast<std::size_t>(i)] = std::popcount(p & var_mask);
            }
            found.insert(std::move(z));
        }

        std::size_t e = 0;
        for (; e < edges.size(); ++e) {
            const bool fixed = fix_check_gauge && first_edge_of_check[static_cast<std::size_t>(edges[e].j)] == static_cast<int>(e);
            if (fixed) continue;
            if (++choice[e] < perms.size()) break;
            choice[e] = 0;
        }
        if (e == edges.size()) break;
    }

    return {found.begin(), found.end()};
}

namespace {

// log of a nonnegative-coefficient polynomial at a positive point (given in
// log coordinates), by log-sum-exp over terms.
double log_eval_nonneg(const SparsePoly& R, std::span<const double> logx) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(R.term_count());
    for (const auto& [e, c] : R.terms()) {
        double lt = log_big(c);
        for (std::size_t i = 0; i < e.size(); ++i) lt += e[i] * logx[i];
        logs.push_back(lt);
        best = std::max(best, lt);
    }
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (double lt : logs) s += std::exp(lt - best);
    return best + std::log(s);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double t : v) m = std::max(m, std::abs(t));
    return m;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return s;
}

// Newton solve of x_r dR/dx_r = xi_r R in log coordinates; returns log x0.
std::vector<double> solve_lemma_stationary(const SparsePoly& R, std::span<const double> xi) {
    const int M = R.vars();
    std::vector<SparsePoly> dR;
    dR.reserve(static_cast<std::size_t>(M));
    for (int r = 1; r <= M; ++r) dR.push_back(R.partial_derivative(r));

    auto residual = [&](const std::vector<double>& y, std::vector<double>& F) {
        const double logR = log_eval_nonneg(R, y);
        for (int r = 0; r < M; ++r) {
            const double logd = log_eval_nonneg(dR[static_cast<std::size_t>(r)], y);
            F[static_cast<std::size_t>(r)] =
                std::exp(y[static_cast<std::size_t>(r)] + logd - logR) - xi[static_cast<std::size_t>(r)];
        }
    };

    std::vector<double> y(static_cast<std::size_t>(M), 0.0);
    std::vector<double> F(static_cast<std::size_t>(M)), Ft(static_cast<std::size_t>(M));
    residual(y, F);
    const double h = 1e-7;
    for (int iter = 0; iter < 200 && max_abs(F) >= 1e-13; ++iter) {
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
        std::vector<double> rhs(static_cast<std::size_t>(M)), step;
        for (int r = 0; r < M; ++r) rhs[static_cast<std::size_t>(r)] = -F[static_cast<std::size_t>(r)];
        if (!detail::solve_linear_system(J, rhs, step, M))
            throw solver_failure("lemma stationary solve: singular Jacobian", y, max_abs(F));

        const double base = norm2(F);
        double scale = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> yt = y;
            for (int r = 0; r < M; ++r) yt[static_cast<std::size_t>(r)] += scale * step[static_cast<std::size_t>(r)];
            residual(yt, Ft);
            if (norm2(Ft) < base * (1.0 - 1e-4 * scale)) {
                y = yt;
                F = Ft;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted) throw solver_failure("lemma stationary solve: stalled", y, max_abs(F));
    }
    if (max_abs(F) > 1e-9) throw solver_failure("lemma stationary solve: did not converge", y, max_abs(F));
    return y;
}

bool integral_exponent(std::span<const Rational> xi, long long ell, std::vector<long long>& e) {
    e.clear();
    for (const Rational& x : xi) {
        const Rational scaled = x * ell;
        if (scaled.denominator() != 1) return false;
        e.push_back(scaled.numerator());
    }
    return true;
}

}  // namespace

LemmaReport verify_lemma_asymptotics(const SparsePoly& R, std::span<const Rational> xi,
                                     std::span<const long long> requested_ells, bool snap_to_valid) {
    if (static_cast<int>(xi.size()) != R.vars())
        throw std::invalid_argument("verify_lemma_asymptotics: xi length must match variable count");
    for (const Rational& x : xi)
        if (x <= 0) throw std::invalid_argument("verify_lemma_asymptotics: xi entries must be positive");
    for (const auto& [e, c] : R.terms())
        if (c < 0) throw std::invalid_argument("verify_lemma_asymptotics: R must have nonnegative coefficients");

    LemmaReport report;
    report.requested.assign(requested_ells.begin(), requested_ells.end());

    auto coeff_at = [&](long long ell, const std::vector<long long>& e) -> BigInt {
        for (long long v : e)
            if (v < 0) return 0;
        const SparsePoly power = R.pow(static_cast<unsigned long long>(ell));
        ExponentVec ev(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ev[i] = static_cast<int>(e[i]);
        return power.coeff(ev);
    };

    std::vector<long long> tested;
    std::vector<long long> e;
    for (long long ell : requested_ells) {
        if (ell < 1) throw std::invalid_argument("verify_lemma_asymptotics: ell must be positive");
        long long chosen = ell;
        if (snap_to_valid) {
            bool ok = false;
            for (long long delta = 0; delta <= ell / 2 && !ok; ++delta) {
                for (const long long cand : {ell + delta, ell - delta}) {
                    if (cand < 1) continue;
                    if (integral_exponent(xi, cand, e) && coeff_at(cand, e) > 0) {
                        chosen = cand;
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) continue;  // nothing valid near this request
        }
        tested.push_back(chosen);
    }
    std::sort(tested.begin(), tested.end());
    tested.erase(std::unique(tested.begin(), tested.end()), tested.end());
    report.tested = tested;

    std::vector<double> xid(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) xid[i] = boost::rational_cast<double>(xi[i]);
    const std::vector<double> y0 = solve_lemma_stationary(R, xid);
    report.x0.resize(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) report.x0[i] = std::exp(y0[i]);
    double limit = log_eval_nonneg(R, y0);
    for (std::size_t i = 0; i < y0.size(); ++i) limit -= xid[i] * y0[i];
    report.limit_value = limit;

    bool any_positive = false;
    for (long long ell : tested) {
        LemmaPoint pt;
        pt.ell = ell;
        if (integral_exponent(xi, ell, e)) {
            pt.exponent = e;
            const BigInt c = coeff_at(ell, e);
            if (c > 0) {
                pt.coeff_positive = true;
                pt.finite_value = log_big(c) / static_cast<double>(ell);
                pt.gap = limit - pt.finite_value;
                any_positive = true;
            }
        }
        report.points.push_back(std::move(pt));
    }
    report.empty_branch = !any_positive;

    // Gap shrinkage with an O(log ell / ell) allowance between consecutive
    // valid points.
    bool monotone = any_positive;
    const LemmaPoint* prev = nullptr;
    for (const auto& pt : report.points) {
        if (!pt.coeff_positive) continue;
        if (prev != nullptr) {
            const double wiggle = std::log(static_cast<double>(prev->ell)) / static_cast<double>(prev->ell);
            if (pt.gap > prev->gap + wiggle) monotone = false;
        }
        prev = &pt;
        report.final_gap = pt.gap;
    }
    report.monotone_ok = monotone;
    return report;
}

std::vector<long long> lemma_default_ells(const SparsePoly& R, std::span<const Rational> xi, long long ell_max) {
    if (ell_max < 1) throw std::invalid_argument("lemma_default_ells: ell_max must be positive");
    long long t0 = 1;
    for (const Rational& x : xi) t0 = std::lcm(t0, x.denominator());

    std::vector<long long> e;
    auto valid = [&](long long ell) {
        if (!integral_exponent(xi, ell, e)) return false;
        for (long long v : e)
            if (v < 0) return false;
        const SparsePoly power = R.pow(static_cast<unsigned long long>(ell));
        ExponentVec ev(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ev[i] = static_cast<int>(e[i]);
        return power.coeff(ev) > 0;
    };

    long long t = 0;
    for (long long cand = t0; cand <= ell_max; cand += t0) {
        if (valid(cand)) {
            t = cand;
            break;
        }
    }
    if (t == 0) return {};

    std::vector<long long> ells;
    for (long long ell = t; ell <= ell_max; ell *= 2) ells.push_back(ell);
    const long long last = (ell_max / t) * t;
    if (last >= t && (ells.empty() || ells.back() != last)) ells.push_back(last);
    return ells;
}

}  // namespace pwg
