#pragma once

#include <optional>
#include <vector>

#include "quiverpoly/rational.hpp"

namespace quiverpoly {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix to_rational_matrix(const std::vector<std::vector<int>>& m) {
    RationalMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].assign(m[i].begin(), m[i].end());
    }
    return out;
}

/// Exact rank by Gaussian elimination over the rationals.
inline int matrix_rank(RationalMatrix m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t pivot = pivot_row;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[pivot_row]);
        for (std::size_t r = pivot_row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[pivot_row][col];
            for (std::size_t c = col; c < cols; ++c) {
                m[r][c] -= factor * m[pivot_row][c];
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

/// Solve the square system A x = b exactly; nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve_square(RationalMatrix a,
                                                         std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace quiverpoly
