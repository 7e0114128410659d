// Acceptance suite: one pass/fail line per criterion, exact checks only.
// Returns nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quiverpoly/connectivity.hpp"
#include "quiverpoly/cycle_basis.hpp"
#include "quiverpoly/face_oracle.hpp"
#include "quiverpoly/linalg.hpp"
#include "quiverpoly/polytope.hpp"
#include "quiverpoly/sensing.hpp"
#include "quiverpoly/simplex.hpp"
#include "quiverpoly/stability.hpp"
#include "test_support.hpp"

using namespace quiverpoly;

namespace {

struct Failure {
    std::string message;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure{message};
}

int jobs() {
    return std::max(1u, std::thread::hardware_concurrency());
}

const std::vector<std::pair<int, int>> kSuite = {{2, 3}, {3, 4}, {2, 5}, {3, 5}, {4, 5}};

std::uint64_t binomial(int n, int k) {
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

std::string pair_name(int p, int q) {
    return "Q_{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

// Criterion 1: generator suite — genericity, tightness, dimensions, vertex
// counts, and exact neighborliness with a failing witness at min(p,q).
void criterion1() {
    for (auto [p, q] : kSuite) {
        Quiver quiver = generate_bipartite(p, q);
        Weight delta = canonical_weight(quiver);
        const std::string name = pair_name(p, q);
        const int expected_k = std::min(p, q) - 1;

        require(is_generic(quiver, delta, GenericityMode::fast).generic, name + ": delta not generic");
        if (quiver.arrow_count() <= 20) {
            require(is_generic(quiver, delta, GenericityMode::exhaustive).generic,
                    name + ": exhaustive genericity disagrees");
        }
        require(is_tight(quiver, delta).tight, name + ": not tight");

        CycleBasis basis = cycle_basis(quiver);
        VertexMatrix vm = dual_vertices(quiver, basis);
        require(vm.dimension == p * q - p - q + 1, name + ": wrong dimension");
        require(static_cast<int>(vm.points.size()) == p * q, name + ": wrong vertex count");

        NeighborlinessCertificate sub = max_neighborliness_subquiver(quiver, delta);
        NeighborlinessCertificate jow = max_neighborliness_jow(quiver, delta);
        require(!sub.conditional && !jow.conditional, name + ": certificates conditional");
        require(sub.k_max >= expected_k, name + ": subquiver k below bound");
        require(jow.k_max >= expected_k, name + ": jow k below bound");
        require(sub.k_max == expected_k, name + ": subquiver k not exact");
        require(jow.k_max == expected_k, name + ": jow k not exact");

        require(sub.failing_witness.has_value(), name + ": no failing witness");
        require(static_cast<int>(sub.failing_witness->size()) == std::min(p, q),
                name + ": failing witness has wrong size");
        ArrowMask removal = 0;
        for (int i : *sub.failing_witness) removal |= ArrowMask{1} << i;
        require(qp_test::oracle_stability(quiver, full_arrow_mask(quiver) & ~removal, delta) !=
                    qp_test::OracleStatus::stable,
                name + ": witness removal is stable under the oracle");
    }
}

// Criterion 2: method agreement, plus hull-oracle confirmation of the exact
// neighborliness for Q_{2,3} and Q_{3,4}.
void criterion2() {
    for (auto [p, q] : kSuite) {
        Quiver quiver = generate_bipartite(p, q);
        Weight delta = canonical_weight(quiver);
        const std::string name = pair_name(p, q);
        int k_sub = max_neighborliness_subquiver(quiver, delta).k_max;
        int k_jow = max_neighborliness_jow(quiver, delta).k_max;
        int codim = unstable_codim(quiver, delta).codim;
        require(k_sub == k_jow, name + ": methods disagree");
        require(k_sub == codim - 1, name + ": codim identity fails");
    }
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}}) {
        Quiver quiver = generate_bipartite(p, q);
        Weight delta = canonical_weight(quiver);
        const std::string name = pair_name(p, q);
        const int n = p * q;
        int k_max = max_neighborliness_subquiver(quiver, delta).k_max;
        VertexMatrix vm = dual_vertices(quiver, cycle_basis(quiver));
        std::vector<std::uint64_t> counts = f_vector_oracle(vm, k_max + 1, jobs());
        for (int level = 1; level <= k_max; ++level) {
            require(counts[static_cast<std::size_t>(level - 1)] == binomial(n, level),
                    name + ": oracle count at level " + std::to_string(level) + " not full");
        }
        require(counts[static_cast<std::size_t>(k_max)] < binomial(n, k_max + 1),
                name + ": oracle count at level " + std::to_string(k_max + 1) + " is full");
    }
}

// Criterion 3: edge-connectivity lower bound k >= floor(r/2) - 1 on the suite
// plus the complete tripartite (2,3,5) quiver.
void criterion3() {
    auto check = [](const Quiver& quiver, const std::string& name) {
        Weight delta = canonical_weight(quiver);
        GenericityDecision genericity = decide_genericity(StabilityContext(quiver, delta));
        Weight theta = delta;
        bool perturbed = false;
        if (!(genericity.definitive && genericity.generic)) {
            theta = perturb_to_generic(quiver, delta);
            perturbed = true;
        }
        int r = edge_connectivity(quiver);
        int k = max_neighborliness_subquiver(quiver, theta).k_max;
        int bound = r / 2 - 1;
        require(k >= bound, name + ": k=" + std::to_string(k) + " below floor(r/2)-1=" +
                                std::to_string(bound) + (perturbed ? " (perturbed)" : ""));
    };
    for (auto [p, q] : kSuite) check(generate_bipartite(p, q), pair_name(p, q));
    check(generate_multipartite({2, 3, 5}), "K_{2,3,5}");
}

// Criterion 4: vertex-matrix invariants and the facet presentation re-derived
// from the hull of the dual vertices.
void criterion4() {
    for (auto [p, q] : kSuite) {
        Quiver quiver = generate_bipartite(p, q);
        const std::string name = pair_name(p, q);
        CycleBasis basis = cycle_basis(quiver);
        FacetPresentation presentation = facet_presentation(quiver, basis);
        VertexMatrix vm = dual_vertices(quiver, basis);
        const int d = vm.dimension;

        for (const auto& point : vm.points) {
            for (int entry : point) {
                require(entry >= -1 && entry <= 1, name + ": entry outside {-1,0,1}");
            }
        }
        for (std::size_t i = 0; i < vm.points.size(); ++i) {
            for (std::size_t j = i + 1; j < vm.points.size(); ++j) {
                require(vm.points[i] != vm.points[j], name + ": duplicate rows");
            }
        }
        require(matrix_rank(to_rational_matrix(vm.points)) == d, name + ": rank deficient");
        require(vm.points == presentation.rows, name + ": points differ from facet rows");

        // {x : A x <= 1} is bounded (it is the shifted flow polytope), so the
        // polar of the hull of the rows is exactly that system; every row
        // being a hull vertex makes each inequality facet-defining, i.e. the
        // re-derived facet presentation is A x <= 1 up to row order.
        for (int j = 0; j < d; ++j) {
            for (int direction : {1, -1}) {
                LpBuilder builder;
                std::vector<int> x;
                for (int c = 0; c < d; ++c) x.push_back(builder.add_variable(VarKind::free_sign));
                builder.set_objective(x[static_cast<std::size_t>(j)], direction);
                for (const auto& row : presentation.rows) {
                    std::vector<std::pair<int, Rational>> terms;
                    for (int c = 0; c < d; ++c) {
                        if (row[static_cast<std::size_t>(c)] != 0) {
                            terms.push_back({x[static_cast<std::size_t>(c)], row[static_cast<std::size_t>(c)]});
                        }
                    }
                    builder.add_constraint(std::move(terms), Relation::less_equal, 1);
                }
                require(builder.solve().status == LpStatus::optimal,
                        name + ": facet system unbounded in coordinate " + std::to_string(j));
            }
        }
        for (std::size_t i = 0; i < vm.points.size(); ++i) {
            require(face_oracle(vm, {static_cast<int>(i)}),
                    name + ": point " + std::to_string(i) + " is not a hull vertex");
        }
    }
}

// Criterion 5: Q_{2,2} non-genericity detection and perturbation.
void criterion5() {
    Quiver quiver = generate_bipartite(2, 2);
    Weight delta = canonical_weight(quiver);
    GenericityResult result = is_generic(quiver, delta, GenericityMode::exhaustive);
    require(!result.generic, "Q_{2,2}: delta reported generic");
    require(result.semistable_mask.has_value(), "Q_{2,2}: no witness mask");
    StabilityVerdict verdict = stability(quiver, *result.semistable_mask, delta);
    require(verdict.status == StabilityStatus::strictly_semistable,
            "Q_{2,2}: witness mask is not strictly semistable");

    Weight theta = perturb_to_generic(quiver, delta);
    Rational distance = 0;
    for (int i = 0; i < delta.size(); ++i) distance += abs(theta[i] - delta[i]);
    require(distance < 1, "Q_{2,2}: perturbation moved too far");
    require(is_generic(quiver, theta, GenericityMode::exhaustive).generic,
            "Q_{2,2}: perturbed weight fails the exhaustive scan");
}

// Criterion 6: exhaustive recovery sweeps.
void criterion6() {
    RecoveryReport report34 = recovery_sweep(generate_bipartite(3, 4), 2, 1, 0, jobs());
    require(report34.instances.size() == 78, "Q_{3,4}: expected 78 supports");
    require(report34.recovered_count == 78 && report34.unique_count == 78,
            "Q_{3,4}: some support failed");
    require(report34.success_rate() == 1.0, "Q_{3,4}: success rate below 1");

    RecoveryReport report45 = recovery_sweep(generate_bipartite(4, 5), 3, 1, 0, jobs());
    require(report45.instances.size() == 1350, "Q_{4,5}: expected 1350 supports");
    require(report45.recovered_count == 1350 && report45.unique_count == 1350,
            "Q_{4,5}: some support failed");
    require(report45.success_rate() == 1.0, "Q_{4,5}: success rate below 1");
}

// Criterion 7: property corpus of 50 random connected acyclic quivers.
void criterion7() {
    std::mt19937_64 rng(777);
    int checked = 0;
    while (checked < 50) {
        Quiver quiver = qp_test::random_connected_acyclic_quiver(rng, 8, 14);
        Weight delta = canonical_weight(quiver);
        CycleBasis basis = cycle_basis(quiver);
        const int d = quiver.arrow_count() - quiver.vertex_count() + 1;
        require(basis.dimension() == d, "corpus: wrong basis dimension");

        RationalMatrix rows;
        std::vector<Rational> combo(static_cast<std::size_t>(quiver.arrow_count()), Rational(0));
        for (const Circulation& f : basis.circulations) {
            require(is_circulation(quiver, f), "corpus: basis element not a circulation");
            rows.push_back(std::vector<Rational>(f.values.begin(), f.values.end()));
            int coeff = static_cast<int>(rng() % 11) - 5;
            for (int a = 0; a < quiver.arrow_count(); ++a) {
                combo[static_cast<std::size_t>(a)] += coeff * f[a];
            }
        }
        if (d > 0) require(matrix_rank(rows) == d, "corpus: basis rank deficient");
        require(incidence(quiver, combo) == Weight::zero(quiver.vertex_count()),
                "corpus: combination escapes the incidence kernel");

        ArrowMask mask = rng() & full_arrow_mask(quiver);
        require(successor_closed_sets(quiver, mask) ==
                    qp_test::oracle_successor_closed_sets(quiver, mask),
                "corpus: successor-closed enumeration mismatch");

        GenericityResult fast = is_generic(quiver, delta, GenericityMode::fast);
        GenericityResult exhaustive = is_generic(quiver, delta, GenericityMode::exhaustive);
        if (fast.generic) {
            require(exhaustive.generic, "corpus: fast generic but exhaustive disagrees");
        }

        if (!delta.is_zero()) {
            int codim = unstable_codim(quiver, delta).codim;
            if (exhaustive.generic && codim >= 2) {
                require(is_tight(quiver, delta).tight,
                        "corpus: generic weight with codim >= 2 is not tight");
            }
        }
        ++checked;
    }
}

struct Criterion {
    int number;
    std::string description;
    std::function<void()> run;
    double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "bipartite suite: generic, tight, dimensions, exact neighborliness", criterion1, 300},
        {2, "method agreement incl. hull oracle on Q_{2,3} and Q_{3,4}", criterion2, 600},
        {3, "edge-connectivity bound k >= floor(r/2)-1 (suite + K_{2,3,5})", criterion3, 0},
        {4, "vertex-matrix invariants and re-derived facet presentation", criterion4, 0},
        {5, "Q_{2,2} non-genericity detection and perturbation", criterion5, 0},
        {6, "recovery sweeps: Q_{3,4} k=2 (78), Q_{4,5} k=3 (1350)", criterion6, 1800},
        {7, "property corpus: 50 random connected acyclic quivers", criterion7, 0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string failure_message;
        try {
            criterion.run();
        } catch (const Failure& f) {
            failure_message = f.message;
        } catch (const std::exception& e) {
            failure_message = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = criterion.budget_seconds == 0 || elapsed <= criterion.budget_seconds;
        bool pass = failure_message.empty() && in_budget;
        std::ostringstream line;
        line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.number << ": "
             << criterion.description << " (" << elapsed << "s";
        if (criterion.budget_seconds > 0) line << " / budget " << criterion.budget_seconds << "s";
        line << ")";
        if (!failure_message.empty()) line << " -- " << failure_message;
        if (failure_message.empty() && !in_budget) line << " -- over time budget";
        std::cout << line.str() << std::endl;
        failures += !pass;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
