#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "quiverpoly/linalg.hpp"
#include "quiverpoly/simplex.hpp"

using namespace quiverpoly;

namespace {

// Independent LP oracle: enumerate every basic solution (all column subsets
// of size rank), keep the feasible ones, and take the best objective. Valid
// because a feasible bounded standard-form LP attains its optimum at a basic
// feasible solution.
struct OracleOutcome {
    bool feasible = false;
    bool bounded_optimum_found = false;
    Rational best = 0;
};

OracleOutcome lp_oracle(const StandardLp& lp) {
    OracleOutcome out;
    const int m = static_cast<int>(lp.a.size());
    const int n = m == 0 ? static_cast<int>(lp.c.size()) : static_cast<int>(lp.a[0].size());
    if (m == 0) {
        out.feasible = true;
        out.bounded_optimum_found = true;
        out.best = 0;
        return out;
    }
    std::vector<int> cols(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cols[static_cast<std::size_t>(i)] = i;
    for (;;) {
        RationalMatrix square(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) {
                square[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    lp.a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])];
            }
        }
        if (auto x_b = solve_square(square, lp.b)) {
            bool nonneg = true;
            for (const Rational& v : *x_b) nonneg = nonneg && v >= 0;
            if (nonneg) {
                Rational value = 0;
                for (int c = 0; c < m; ++c) {
                    value += lp.c[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])] *
                             (*x_b)[static_cast<std::size_t>(c)];
                }
                if (!out.feasible || value < out.best) out.best = value;
                out.feasible = true;
                out.bounded_optimum_found = true;
            }
        }
        int pos = m - 1;
        while (pos >= 0 && cols[static_cast<std::size_t>(pos)] == n - m + pos) --pos;
        if (pos < 0) break;
        ++cols[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < m; ++i) {
            cols[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("basic optimal LP") {
    // min x0 + 2 x1  s.t.  x0 + x1 = 1
    StandardLp lp;
    lp.a = {{1, 1}};
    lp.b = {1};
    lp.c = {1, 2};
    LpSolution sol = solve_standard(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == 1);
    CHECK(sol.x == std::vector<Rational>{1, 0});
}

TEST_CASE("degenerate and redundant rows") {
    // Duplicate constraint; solution still unique.
    StandardLp lp;
    lp.a = {{1, 1}, {1, 1}, {1, -1}};
    lp.b = {1, 1, 0};
    lp.c = {0, 1};
    LpSolution sol = solve_standard(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == Rational(1, 2));
}

TEST_CASE("infeasible LP yields a Farkas certificate") {
    // x0 + x1 = 1, x0 + x1 = 2 cannot both hold.
    StandardLp lp;
    lp.a = {{1, 1}, {1, 1}};
    lp.b = {1, 2};
    lp.c = {0, 0};
    LpSolution sol = solve_standard(lp);
    REQUIRE(sol.status == LpStatus::infeasible);
    REQUIRE(sol.farkas.size() == 2);
    // y.A <= 0 componentwise and y.b > 0.
    for (std::size_t j = 0; j < 2; ++j) {
        Rational column = sol.farkas[0] * lp.a[0][j] + sol.farkas[1] * lp.a[1][j];
        CHECK(column <= 0);
    }
    CHECK(sol.farkas[0] * lp.b[0] + sol.farkas[1] * lp.b[1] > 0);
}

TEST_CASE("negative rhs rows are handled") {
    // -x0 = -3  =>  x0 = 3.
    StandardLp lp;
    lp.a = {{-1, 0}};
    lp.b = {-3};
    lp.c = {1, 1};
    LpSolution sol = solve_standard(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.x[0] == 3);
    CHECK(sol.objective == 3);
}

TEST_CASE("unbounded LP detected") {
    // min -x0 s.t. x0 - x1 = 0: push both to infinity.
    StandardLp lp;
    lp.a = {{1, -1}};
    lp.b = {0};
    lp.c = {-1, 0};
    LpSolution sol = solve_standard(lp);
    CHECK(sol.status == LpStatus::unbounded);
}

TEST_CASE("pivot cap throws") {
    StandardLp lp;
    lp.a = {{1, 1, 1}};
    lp.b = {1};
    lp.c = {3, 2, 1};
    SimplexOptions opts;
    opts.max_pivots = 0;
    CHECK_THROWS_AS(solve_standard(lp, opts), SolverError);
}

TEST_CASE("builder handles free variables and inequalities") {
    // min y  s.t.  y >= x - 2, y >= -x + 2, x = 5  (x, y free): optimum y = 3.
    LpBuilder builder;
    int x = builder.add_variable(VarKind::free_sign);
    int y = builder.add_variable(VarKind::free_sign);
    builder.set_objective(y, 1);
    builder.add_constraint({{x, 1}, {y, -1}}, Relation::less_equal, 2);
    builder.add_constraint({{x, -1}, {y, -1}}, Relation::less_equal, -2);
    builder.add_constraint({{x, 1}}, Relation::equal, 5);
    LpSolution sol = builder.solve();
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.x[static_cast<std::size_t>(x)] == 5);
    CHECK(sol.x[static_cast<std::size_t>(y)] == 3);
    CHECK(sol.objective == 3);
}

TEST_CASE("simplex agrees with basic-solution enumeration on random LPs") {
    std::mt19937_64 rng(4242);
    int bounded_checked = 0;
    int infeasible_checked = 0;
    for (int t = 0; t < 200; ++t) {
        int m = 1 + static_cast<int>(rng() % 3);
        int n = m + static_cast<int>(rng() % 4);
        StandardLp lp;
        lp.a.assign(static_cast<std::size_t>(m),
                    std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
        lp.b.assign(static_cast<std::size_t>(m), Rational(0));
        lp.c.assign(static_cast<std::size_t>(n), Rational(0));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                lp.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<int>(rng() % 7) - 3;
            }
            lp.b[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 9) - 4;
        }
        // Nonnegative costs keep the LP bounded, so oracle and solver are
        // comparable whenever the LP is feasible.
        for (int j = 0; j < n; ++j) {
            lp.c[static_cast<std::size_t>(j)] = static_cast<int>(rng() % 5);
        }
        OracleOutcome oracle = lp_oracle(lp);
        LpSolution sol = solve_standard(lp);
        if (oracle.feasible) {
            REQUIRE(sol.status == LpStatus::optimal);
            REQUIRE(sol.objective == oracle.best);
            // The reported optimizer must be feasible and achieve the value.
            Rational check_value = 0;
            for (int j = 0; j < n; ++j) {
                REQUIRE(sol.x[static_cast<std::size_t>(j)] >= 0);
                check_value += lp.c[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
            }
            REQUIRE(check_value == sol.objective);
            for (int i = 0; i < m; ++i) {
                Rational row_value = 0;
                for (int j = 0; j < n; ++j) {
                    row_value += lp.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                 sol.x[static_cast<std::size_t>(j)];
                }
                REQUIRE(row_value == lp.b[static_cast<std::size_t>(i)]);
            }
            ++bounded_checked;
        } else {
            REQUIRE(sol.status == LpStatus::infeasible);
            // Verify the Farkas certificate.
            Rational yb = 0;
            for (int i = 0; i < m; ++i) yb += sol.farkas[static_cast<std::size_t>(i)] * lp.b[static_cast<std::size_t>(i)];
            REQUIRE(yb > 0);
            for (int j = 0; j < n; ++j) {
                Rational ya = 0;
                for (int i = 0; i < m; ++i) {
                    ya += sol.farkas[static_cast<std::size_t>(i)] * lp.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
                REQUIRE(ya <= 0);
            }
            ++infeasible_checked;
        }
    }
    // Make sure the random mix exercised both branches.
    CHECK(bounded_checked > 20);
    CHECK(infeasible_checked > 20);
}
