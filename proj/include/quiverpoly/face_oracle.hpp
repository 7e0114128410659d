#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "quiverpoly/linalg.hpp"
#include "quiverpoly/parallel.hpp"
#include "quiverpoly/polytope.hpp"
#include "quiverpoly/simplex.hpp"

namespace quiverpoly {

/// Independent hull-side verifier: the points indexed by `subset` span a
/// proper face iff some linear functional is constant on them and strictly
/// smaller on every other point. Strictness is encoded as slack >= 1, which
/// loses nothing because separating functionals scale.
inline bool face_oracle(const VertexMatrix& vm, const std::vector<int>& subset) {
    if (subset.empty()) throw StructureError("face_oracle: empty subset");
    const int n = static_cast<int>(vm.points.size());
    const int d = vm.dimension;
    std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
    for (int i : subset) {
        if (i < 0 || i >= n) throw DimensionError("face_oracle: point index out of range");
        in_subset[static_cast<std::size_t>(i)] = 1;
    }
    if (static_cast<int>(subset.size()) == n) return false;  // not a proper face

    LpBuilder builder;
    std::vector<int> functional(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) functional[static_cast<std::size_t>(j)] = builder.add_variable(VarKind::free_sign);
    int offset = builder.add_variable(VarKind::free_sign);

    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, Rational>> terms;
        for (int j = 0; j < d; ++j) {
            int coefficient = vm.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (coefficient != 0) terms.push_back({functional[static_cast<std::size_t>(j)], coefficient});
        }
        terms.push_back({offset, -1});
        if (in_subset[static_cast<std::size_t>(i)]) {
            builder.add_constraint(std::move(terms), Relation::equal, 0);
        } else {
            builder.add_constraint(std::move(terms), Relation::less_equal, -1);
        }
    }
    return builder.solve().status == LpStatus::optimal;
}

/// Counts, for each l = 1..up_to, the l-subsets of points that span a face.
/// A k-neighborly polytope on n vertices has count(l) = C(n, l) for l <= k.
inline std::vector<std::uint64_t> f_vector_oracle(const VertexMatrix& vm, int up_to, int jobs = 1,
                                                  std::uint64_t max_subsets = 5000000) {
    const int n = static_cast<int>(vm.points.size());
    if (n > 63) throw CapacityError("f_vector_oracle: too many points");
    std::vector<std::uint64_t> counts;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (int level = 1; level <= up_to && level <= n; ++level) {
        std::vector<std::vector<int>> subsets;
        std::uint64_t mask = (std::uint64_t{1} << level) - 1;
        for (;;) {
            if (subsets.size() >= max_subsets) {
                throw CapacityError("f_vector_oracle: subset budget exhausted");
            }
            std::vector<int> subset;
            for (int i = 0; i < n; ++i) {
                if (mask >> i & 1) subset.push_back(i);
            }
            subsets.push_back(std::move(subset));
            std::uint64_t next = detail::next_subset_colex(mask);
            if (next > full) break;
            mask = next;
        }
        std::vector<char> spans(subsets.size(), 0);
        parallel_for(subsets.size(), jobs, [&](std::size_t i) {
            spans[i] = face_oracle(vm, subsets[i]) ? 1 : 0;
        });
        std::uint64_t count = 0;
        for (char s : spans) count += s;
        counts.push_back(count);
    }
    return counts;
}

/// Vertices of {x : rows . x <= 1} by exhaustive enumeration of square
/// subsystems. Exponential in d; intended for small consistency checks.
inline std::vector<std::vector<Rational>> enumerate_polytope_vertices(
    const std::vector<std::vector<int>>& rows) {
    const int m = static_cast<int>(rows.size());
    const int d = m == 0 ? 0 : static_cast<int>(rows[0].size());
    std::vector<std::vector<Rational>> vertices;
    if (d == 0 || m < d) return vertices;
    std::vector<int> pick(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        RationalMatrix square(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])][static_cast<std::size_t>(c)];
            }
        }
        if (auto x = solve_square(square, std::vector<Rational>(static_cast<std::size_t>(d), Rational(1)))) {
            bool feasible = true;
            for (int r = 0; r < m && feasible; ++r) {
                Rational value = 0;
                for (int c = 0; c < d; ++c) {
                    value += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                             (*x)[static_cast<std::size_t>(c)];
                }
                feasible = value <= 1;
            }
            if (feasible &&
                std::find(vertices.begin(), vertices.end(), *x) == vertices.end()) {
                vertices.push_back(*x);
            }
        }
        int pos = d - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == m - d + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < d; ++i) {
            pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return vertices;
}

}  // namespace quiverpoly
