#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quiverpoly/cycle_basis.hpp"
#include "quiverpoly/parallel.hpp"
#include "quiverpoly/polytope.hpp"
#include "quiverpoly/simplex.hpp"

namespace quiverpoly {

/// d x n integer matrix whose columns are the dual-polytope vertices in
/// canonical arrow order.
struct SensingMatrix {
    std::vector<std::vector<int>> matrix;  // d rows, n columns
    std::vector<int> tree_arrows;          // provenance
    std::string source_label;

    int rows() const { return static_cast<int>(matrix.size()); }
    int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }

    /// Nonzero fraction; the construction keeps this well below 1.
    Rational sparsity() const {
        long nonzero = 0;
        for (const auto& row : matrix) {
            for (int v : row) nonzero += v != 0;
        }
        return Rational(nonzero) / Rational(static_cast<long>(rows()) * cols());
    }
};

/// Columns are dual vertices; refuses to build unless the guarantee chain
/// (canonical weight generic, pair tight) holds.
inline SensingMatrix build_sensing_matrix(const Quiver& q, const CycleBasis& basis,
                                          std::string source_label = {}) {
    Weight delta = canonical_weight(q);
    StabilityContext context(q, delta);
    GenericityDecision genericity = decide_genericity(context);
    if (!genericity.definitive || !genericity.generic) {
        throw GuaranteeError("build_sensing_matrix: canonical weight is not generic" +
                             std::string(genericity.definitive ? "" : " (undecided at capacity)") +
                             "; the recovery guarantee chain needs genericity");
    }
    TightnessResult tightness = is_tight_with_context(context);
    if (!tightness.tight) {
        throw GuaranteeError("build_sensing_matrix: (Q, delta) is not tight; offending arrow " +
                             std::to_string(*tightness.offending_arrow));
    }
    VertexMatrix vm = dual_vertices(q, basis);
    SensingMatrix sensing;
    sensing.tree_arrows = vm.tree_arrows;
    sensing.source_label = std::move(source_label);
    sensing.matrix.assign(static_cast<std::size_t>(vm.dimension),
                          std::vector<int>(vm.points.size(), 0));
    for (std::size_t col = 0; col < vm.points.size(); ++col) {
        for (int row = 0; row < vm.dimension; ++row) {
            sensing.matrix[static_cast<std::size_t>(row)][col] = vm.points[col][static_cast<std::size_t>(row)];
        }
    }
    return sensing;
}

/// argmin sum(x) subject to A x = y, x >= 0, solved exactly.
inline LpSolution lp_min_l1_nonneg(const SensingMatrix& a, const std::vector<Rational>& y,
                                   SimplexOptions options = {}) {
    if (static_cast<int>(y.size()) != a.rows()) {
        throw DimensionError("lp_min_l1_nonneg: measurement length mismatch");
    }
    StandardLp lp;
    lp.c.assign(static_cast<std::size_t>(a.cols()), Rational(1));
    lp.b = y;
    lp.a.assign(static_cast<std::size_t>(a.rows()),
                std::vector<Rational>(static_cast<std::size_t>(a.cols()), Rational(0)));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            lp.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    LpSolution solution = solve_standard(lp, options);
    if (solution.status == LpStatus::unbounded) {
        throw SolverError("lp_min_l1_nonneg: nonnegative objective cannot be unbounded");
    }
    return solution;
}

/// Uniqueness of the l1 minimizer via coordinate-wise bounding LPs over the
/// optimal face {A x = y, x >= 0, sum(x) = value}.
inline bool check_unique(const SensingMatrix& a, const std::vector<Rational>& y,
                         const Rational& optimal_value, SimplexOptions options = {}) {
    const int n = a.cols();
    StandardLp lp;
    lp.b = y;
    lp.a.assign(static_cast<std::size_t>(a.rows()),
                std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < n; ++j) {
            lp.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    lp.a.push_back(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
    lp.b.push_back(optimal_value);
    lp.c.assign(static_cast<std::size_t>(n), Rational(0));
    for (int j = 0; j < n; ++j) {
        lp.c[static_cast<std::size_t>(j)] = 1;
        LpSolution lower = solve_standard(lp, options);
        lp.c[static_cast<std::size_t>(j)] = -1;
        LpSolution upper = solve_standard(lp, options);
        lp.c[static_cast<std::size_t>(j)] = 0;
        if (lower.status != LpStatus::optimal || upper.status != LpStatus::optimal) {
            throw SolverError("check_unique: optimal face unexpectedly empty");
        }
        if (lower.objective != -upper.objective) return false;  // min x_j < max x_j
    }
    return true;
}

struct RecoveryInstance {
    std::vector<int> support;            // ascending indices
    std::vector<Rational> coefficients;  // positive, aligned with support
};

struct RecoveryInstanceResult {
    RecoveryInstance instance;
    bool recovered = false;
    bool unique = false;
    long pivots = 0;
    double time_ms = 0.0;  // informational; excluded from deterministic output
};

struct RecoveryReport {
    int k = 0;
    int trials_per_support = 0;
    std::uint64_t seed = 0;
    int guaranteed_k = 0;  // jow certificate; instances this sparse must succeed
    std::vector<RecoveryInstanceResult> instances;
    std::uint64_t recovered_count = 0;
    std::uint64_t unique_count = 0;
    Rational sparsity = 0;

    double success_rate() const {
        if (instances.empty()) return 1.0;
        std::uint64_t good = 0;
        for (const auto& r : instances) good += r.recovered && r.unique;
        return static_cast<double>(good) / static_cast<double>(instances.size());
    }
};

inline std::string describe_instance(const RecoveryInstance& instance) {
    std::string out = "support=[";
    for (std::size_t i = 0; i < instance.support.size(); ++i) {
        out += (i ? "," : "") + std::to_string(instance.support[i]);
    }
    out += "] coefficients=[";
    for (std::size_t i = 0; i < instance.coefficients.size(); ++i) {
        out += (i ? "," : "") + to_string(instance.coefficients[i]);
    }
    return out + "]";
}

/// Exhaustive sweep over every support of size 1..k with deterministic
/// positive rational coefficients (numerators 1..100 over denominator 7,
/// drawn from one seeded stream in iteration order). Any failed instance
/// within the certified neighborliness is an error carrying the instance.
inline RecoveryReport recovery_sweep(const Quiver& q, int k, int trials_per_support,
                                     std::uint64_t seed, int jobs = 1,
                                     std::optional<std::uint64_t> tree_seed = {},
                                     std::string source_label = {}) {
    if (k < 1) throw StructureError("recovery_sweep: k must be at least 1");
    if (trials_per_support < 1) throw StructureError("recovery_sweep: trials must be positive");
    CycleBasis basis = cycle_basis(q, tree_seed);
    SensingMatrix sensing = build_sensing_matrix(q, basis, std::move(source_label));
    const int n = sensing.cols();
    if (k > n) throw StructureError("recovery_sweep: k exceeds the number of columns");

    RecoveryReport report;
    report.k = k;
    report.trials_per_support = trials_per_support;
    report.seed = seed;
    report.sparsity = sensing.sparsity();
    report.guaranteed_k = max_neighborliness_jow(q, canonical_weight(q)).k_max;

    // Materialize all instances first so the coefficient stream is
    // independent of the worker count.
    std::mt19937_64 rng(seed);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (int size = 1; size <= k; ++size) {
        std::uint64_t mask = (std::uint64_t{1} << size) - 1;
        for (;;) {
            for (int trial = 0; trial < trials_per_support; ++trial) {
                RecoveryInstanceResult result;
                for (int i = 0; i < n; ++i) {
                    if (mask >> i & 1) result.instance.support.push_back(i);
                }
                for (std::size_t i = 0; i < result.instance.support.size(); ++i) {
                    result.instance.coefficients.push_back(
                        Rational(1 + static_cast<long>(rng() % 100), 7));
                }
                report.instances.push_back(std::move(result));
            }
            std::uint64_t next = detail::next_subset_colex(mask);
            if (next > full) break;
            mask = next;
        }
    }

    parallel_for(report.instances.size(), jobs, [&](std::size_t index) {
        RecoveryInstanceResult& result = report.instances[index];
        auto start = std::chrono::steady_clock::now();

        std::vector<Rational> y(static_cast<std::size_t>(sensing.rows()), Rational(0));
        for (std::size_t s = 0; s < result.instance.support.size(); ++s) {
            int column = result.instance.support[s];
            for (int row = 0; row < sensing.rows(); ++row) {
                y[static_cast<std::size_t>(row)] +=
                    result.instance.coefficients[s] *
                    sensing.matrix[static_cast<std::size_t>(row)][static_cast<std::size_t>(column)];
            }
        }

        LpSolution solution = lp_min_l1_nonneg(sensing, y);
        result.pivots = solution.pivots;
        if (solution.status == LpStatus::optimal) {
            std::vector<Rational> expected(static_cast<std::size_t>(sensing.cols()), Rational(0));
            for (std::size_t s = 0; s < result.instance.support.size(); ++s) {
                expected[static_cast<std::size_t>(result.instance.support[s])] =
                    result.instance.coefficients[s];
            }
            result.recovered = solution.x == expected;
            result.unique = check_unique(sensing, y, solution.objective);
        }
        result.time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    });

    for (const RecoveryInstanceResult& result : report.instances) {
        report.recovered_count += result.recovered;
        report.unique_count += result.unique;
        if (static_cast<int>(result.instance.support.size()) <= report.guaranteed_k &&
            !(result.recovered && result.unique)) {
            throw GuaranteeError("recovery_sweep: guaranteed instance failed: " +
                                 describe_instance(result.instance));
        }
    }
    return report;
}

}  // namespace quiverpoly
