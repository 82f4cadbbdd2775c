#pragma once

#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "pwg/polynomial.hpp"

namespace pwg {

using Rational = boost::rational<long long>;

/// Binary parity-check matrix with precomputed row supports. Every row must
/// be nonempty.
struct ParityCheckMatrix {
    int m = 0;
    int n = 0;
    std::vector<uint8_t> entries;           // row-major, m*n
    std::vector<std::vector<int>> rows;     // I_j: column indices with a 1

    ParityCheckMatrix(int m, int n, std::vector<uint8_t> entries);

    uint8_t at(int j, int i) const { return entries[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)]; }

    /// Single parity-check code of length k: a 1 x k all-ones matrix.
    static ParityCheckMatrix spc(int k);
};

using Pseudocodeword = std::vector<int>;

/// (sum z_i)^2 / sum z_i^2. Throws std::domain_error for the all-zero vector.
double awgn_pseudoweight(std::span<const int> z);

/// All cone inequalities: for every row j and every i in its support,
/// the sum of the other supported entries is at least z_i.
bool in_fundamental_cone(std::span<const int> z, const ParityCheckMatrix& H);

/// Cone membership plus even parity of every row sum (H over the integers).
bool is_pseudocodeword(std::span<const int> z, const ParityCheckMatrix& H);

/// Type vector u of length M: u_r = number of entries of z equal to r.
/// Entries above M throw std::domain_error.
std::vector<long long> type_of(std::span<const int> z, int M);

/// Exhaustive scan of {0..M}^n for cone+parity vectors, ascending
/// lexicographic order. Precondition (hard cap): (M+1)^n <= 1e7.
/// threads = 0 uses the OpenMP default; results are independent of the
/// thread count.
std::vector<Pseudocodeword> enumerate_pseudocodewords(const ParityCheckMatrix& H, int M, int threads = 0);

/// Single-threaded reference for the scan above; kept for testing and for
/// the benchmark comparison.
std::vector<Pseudocodeword> enumerate_pseudocodewords_serial(const ParityCheckMatrix& H, int M);

/// Exhaustive lift-and-project: every choice of one permutation of {1..M}
/// per Tanner-graph edge, every codeword of the lifted code, projected to
/// counts and deduplicated. Precondition: (M!)^E * 2^(M n) <= 1e8.
/// fix_check_gauge = true pins the first edge of every check to the
/// identity permutation (a relabelling of check copies), shrinking the loop
/// by (M!)^m; the default is the fully exhaustive loop.
std::vector<Pseudocodeword> enumerate_cover_codewords(const ParityCheckMatrix& H, int M, bool fix_check_gauge = false);

struct LemmaPoint {
    long long ell = 0;
    std::vector<long long> exponent;  // xi * ell
    bool coeff_positive = false;
    double finite_value = 0.0;  // (1/ell) log coeff, when positive
    double gap = 0.0;           // limit - finite_value
};

struct LemmaReport {
    std::vector<long long> requested;
    std::vector<long long> tested;        // after optional snapping, deduplicated ascending
    std::vector<LemmaPoint> points;       // one per tested ell
    bool empty_branch = false;            // no tested ell had a positive coefficient
    bool monotone_ok = false;             // gaps shrink, allowing log(ell)/ell wiggle
    double limit_value = 0.0;             // log R(x0) - sum xi_r log x0_r
    std::vector<double> x0;
    double final_gap = 0.0;               // gap at the largest valid tested ell
};

/// Compares exact coefficient growth of (R)^ell against the stationary-point
/// limit. R must have nonnegative coefficients. For each requested ell the
/// coefficient of x^(xi*ell) in (R)^ell is extracted exactly; ell values
/// where xi*ell is not integral are invalid. With snap_to_valid, each
/// requested ell is moved to the nearest ell with integral exponent and a
/// positive coefficient (searching a window of +-ell/2); without it,
/// invalid or zero-coefficient entries feed the empty-branch report.
LemmaReport verify_lemma_asymptotics(const SparsePoly& R, std::span<const Rational> xi,
                                     std::span<const long long> requested_ells, bool snap_to_valid);

/// Default test ladder for a CLI run: multiples t*2^i of the fundamental
/// period t (smallest valid ell), capped at ell_max, plus the largest valid
/// ell <= ell_max.
std::vector<long long> lemma_default_ells(const SparsePoly& R, std::span<const Rational> xi, long long ell_max);

}  // namespace pwg
