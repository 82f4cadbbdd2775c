#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pwg::detail {

// Dense n x n solve by Gaussian elimination with partial pivoting. A is
// row-major and clobbered, as is b. Returns false on a (near-)singular
// pivot. Sizes here are tiny (2M+1 <= 17), so no factorization library is
// warranted.
inline bool solve_linear_system(std::vector<double>& A, std::vector<double>& b, std::vector<double>& x, int n) {
    auto at = [&](int r, int c) -> double& { return A[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)]; };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
        if (std::abs(at(piv, col)) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(at(piv, c), at(col, c));
            std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = at(r, col) / at(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) at(r, c) -= f * at(col, c);
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) s -= at(r, c) * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = s / at(r, r);
    }
    return true;
}

}  // namespace pwg::detail
