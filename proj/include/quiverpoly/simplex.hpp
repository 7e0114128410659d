#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quiverpoly/errors.hpp"
#include "quiverpoly/linalg.hpp"
#include "quiverpoly/rational.hpp"

namespace quiverpoly {

/// min c.x  subject to  A x = b,  x >= 0.
struct StandardLp {
    RationalMatrix a;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational objective = 0;           // meaningful when optimal
    std::vector<Rational> x;          // meaningful when optimal
    long pivots = 0;
    std::vector<Rational> farkas;     // when infeasible: y with y.A <= 0 and y.b > 0
};

struct SimplexOptions {
    long max_pivots = 1000000;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule
/// (lowest-index entering variable, lowest-index leaving variable among
/// ratio-test ties) rules out cycling, so the pivot cap is a tripwire for
/// bugs rather than a tuning knob.
class SimplexSolver {
  public:
    explicit SimplexSolver(const StandardLp& lp, SimplexOptions options = {})
        : options_(options),
          num_vars_(lp.a.empty() ? lp.c.size() : lp.a[0].size()),
          num_rows_(lp.a.size()) {
        if (lp.c.size() != num_vars_) throw SolverError("simplex: cost length mismatch");
        if (lp.b.size() != num_rows_) throw SolverError("simplex: rhs length mismatch");
        costs_ = lp.c;
        row_sign_.assign(num_rows_, 1);
        tableau_.assign(num_rows_, std::vector<Rational>(num_vars_ + num_rows_ + 1, Rational(0)));
        basis_.resize(num_rows_);
        for (std::size_t i = 0; i < num_rows_; ++i) {
            if (lp.a[i].size() != num_vars_) throw SolverError("simplex: ragged matrix");
            int flip = lp.b[i] < 0 ? -1 : 1;
            row_sign_[i] = flip;
            for (std::size_t j = 0; j < num_vars_; ++j) tableau_[i][j] = flip * lp.a[i][j];
            tableau_[i][num_vars_ + i] = 1;  // artificial
            tableau_[i].back() = flip * lp.b[i];
            basis_[i] = static_cast<int>(num_vars_ + i);
        }
    }

    LpSolution solve() {
        LpSolution result;
        // Phase 1: minimize the sum of artificials.
        std::vector<Rational> phase1_costs(num_vars_ + num_rows_, Rational(0));
        for (std::size_t i = 0; i < num_rows_; ++i) phase1_costs[num_vars_ + i] = 1;
        compute_reduced_costs(phase1_costs);
        if (!run(/*allow_artificials=*/true, result)) {
            throw SolverError("simplex: phase 1 reported unbounded");
        }
        if (objective_ > 0) {
            result.status = LpStatus::infeasible;
            result.farkas = extract_farkas();
            return result;
        }
        drive_out_artificials();

        // Phase 2 with the real costs; artificials may not re-enter.
        std::vector<Rational> phase2_costs(num_vars_ + num_rows_, Rational(0));
        for (std::size_t j = 0; j < num_vars_; ++j) phase2_costs[j] = costs_[j];
        compute_reduced_costs(phase2_costs);
        bool bounded = run(/*allow_artificials=*/false, result);
        if (!bounded) {
            result.status = LpStatus::unbounded;
            return result;
        }
        result.status = LpStatus::optimal;
        result.objective = objective_;
        result.x.assign(num_vars_, Rational(0));
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < num_vars_) {
                result.x[static_cast<std::size_t>(basis_[i])] = tableau_[i].back();
            }
        }
        return result;
    }

  private:
    std::size_t width() const { return num_vars_ + num_rows_ + 1; }

    void compute_reduced_costs(const std::vector<Rational>& costs) {
        reduced_.assign(num_vars_ + num_rows_, Rational(0));
        objective_ = 0;
        for (std::size_t j = 0; j < reduced_.size(); ++j) reduced_[j] = costs[j];
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            const Rational& cb = costs[static_cast<std::size_t>(basis_[i])];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < reduced_.size(); ++j) {
                if (tableau_[i][j] != 0) reduced_[j] -= cb * tableau_[i][j];
            }
            objective_ += cb * tableau_[i].back();
        }
    }

    // Returns false when the objective is unbounded below.
    bool run(bool allow_artificials, LpSolution& result) {
        const std::size_t limit = allow_artificials ? num_vars_ + num_rows_ : num_vars_;
        for (;;) {
            // Entering: lowest index with negative reduced cost.
            std::size_t entering = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (reduced_[j] < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == limit) return true;  // optimal

            // Ratio test; ties broken by lowest basic variable index.
            std::size_t leaving_row = tableau_.size();
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < tableau_.size(); ++i) {
                if (tableau_[i][entering] <= 0) continue;
                Rational ratio = tableau_[i].back() / tableau_[i][entering];
                if (leaving_row == tableau_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving_row])) {
                    leaving_row = i;
                    best_ratio = ratio;
                }
            }
            if (leaving_row == tableau_.size()) return false;  // unbounded

            pivot(leaving_row, entering);
            if (++result.pivots > options_.max_pivots) {
                throw SolverError("simplex: pivot cap exceeded");
            }
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rational inv = tableau_[row][col];
        for (std::size_t j = 0; j < width(); ++j) tableau_[row][j] /= inv;
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (i == row || tableau_[i][col] == 0) continue;
            Rational factor = tableau_[i][col];
            for (std::size_t j = 0; j < width(); ++j) {
                if (tableau_[row][j] != 0) tableau_[i][j] -= factor * tableau_[row][j];
            }
        }
        if (reduced_[col] != 0) {
            Rational factor = reduced_[col];
            for (std::size_t j = 0; j < reduced_.size(); ++j) {
                if (tableau_[row][j] != 0) reduced_[j] -= factor * tableau_[row][j];
            }
            objective_ += factor * tableau_[row].back();
        }
        basis_[row] = static_cast<int>(col);
    }

    /// Simplex multipliers of the optimal phase-1 tableau, signs restored to
    /// the caller's row orientation. y_i = 1 - reduced_cost(artificial_i).
    std::vector<Rational> extract_farkas() const {
        std::vector<Rational> y(num_rows_);
        for (std::size_t i = 0; i < num_rows_; ++i) {
            y[i] = (Rational(1) - reduced_[num_vars_ + i]) * row_sign_[i];
        }
        return y;
    }

    /// Pivot zero-level artificials out of the basis; redundant rows are
    /// dropped entirely.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < tableau_.size();) {
            if (static_cast<std::size_t>(basis_[i]) < num_vars_) {
                ++i;
                continue;
            }
            std::size_t col = num_vars_;
            for (std::size_t j = 0; j < num_vars_; ++j) {
                if (tableau_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == num_vars_) {
                tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                pivot(i, col);
                ++i;
            }
        }
    }

    SimplexOptions options_;
    std::size_t num_vars_;
    std::size_t num_rows_;
    std::vector<Rational> costs_;
    std::vector<int> row_sign_;
    RationalMatrix tableau_;
    std::vector<int> basis_;
    std::vector<Rational> reduced_;
    Rational objective_ = 0;
};

inline LpSolution solve_standard(const StandardLp& lp, SimplexOptions options = {}) {
    return SimplexSolver(lp, options).solve();
}

enum class VarKind { non_negative, free_sign };
enum class Relation { less_equal, equal, greater_equal };

/// Small model builder: free variables are split into differences of
/// non-negative pairs, inequalities get slack columns, then the result is
/// handed to the standard-form solver.
class LpBuilder {
  public:
    int add_variable(VarKind kind) {
        variables_.push_back(kind);
        int id = static_cast<int>(variables_.size()) - 1;
        column_of_.push_back(next_column_);
        next_column_ += (kind == VarKind::free_sign) ? 2 : 1;
        objective_.push_back(0);
        return id;
    }

    void set_objective(int var, Rational coefficient) {
        objective_[static_cast<std::size_t>(var)] = std::move(coefficient);
    }

    void add_constraint(std::vector<std::pair<int, Rational>> terms, Relation relation,
                        Rational rhs) {
        constraints_.push_back({std::move(terms), relation, std::move(rhs)});
    }

    LpSolution solve(SimplexOptions options = {}) const {
        std::size_t slack_count = 0;
        for (const ConstraintRow& row : constraints_) {
            if (row.relation != Relation::equal) ++slack_count;
        }
        const std::size_t n = next_column_ + slack_count;
        StandardLp lp;
        lp.c.assign(n, Rational(0));
        for (std::size_t v = 0; v < variables_.size(); ++v) {
            lp.c[column_of_[v]] = objective_[v];
            if (variables_[v] == VarKind::free_sign) lp.c[column_of_[v] + 1] = -objective_[v];
        }
        std::size_t slack = next_column_;
        for (const ConstraintRow& row : constraints_) {
            std::vector<Rational> a(n, Rational(0));
            for (const auto& [var, coeff] : row.terms) {
                a[column_of_[static_cast<std::size_t>(var)]] += coeff;
                if (variables_[static_cast<std::size_t>(var)] == VarKind::free_sign) {
                    a[column_of_[static_cast<std::size_t>(var)] + 1] -= coeff;
                }
            }
            if (row.relation == Relation::less_equal) a[slack++] = 1;
            if (row.relation == Relation::greater_equal) a[slack++] = -1;
            lp.a.push_back(std::move(a));
            lp.b.push_back(row.rhs);
        }
        LpSolution sol = solve_standard(lp, options);
        if (sol.status == LpStatus::optimal) {
            std::vector<Rational> user(variables_.size());
            for (std::size_t v = 0; v < variables_.size(); ++v) {
                user[v] = sol.x[column_of_[v]];
                if (variables_[v] == VarKind::free_sign) user[v] -= sol.x[column_of_[v] + 1];
            }
            sol.x = std::move(user);
        }
        return sol;
    }

  private:
    struct ConstraintRow {
        std::vector<std::pair<int, Rational>> terms;
        Relation relation;
        Rational rhs;
    };

    std::vector<VarKind> variables_;
    std::vector<std::size_t> column_of_;
    std::vector<Rational> objective_;
    std::vector<ConstraintRow> constraints_;
    std::size_t next_column_ = 0;
};

}  // namespace quiverpoly
