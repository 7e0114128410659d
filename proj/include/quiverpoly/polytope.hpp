#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quiverpoly/cycle_basis.hpp"
#include "quiverpoly/linalg.hpp"
#include "quiverpoly/quiver.hpp"
#include "quiverpoly/stability.hpp"

namespace quiverpoly {

/// Best-effort genericity decision: the fast certificate when it fires,
/// otherwise the exhaustive scan when capacity allows. `definitive` is false
/// only when neither route could settle the question.
struct GenericityDecision {
    bool generic = false;
    bool definitive = false;
    GenericityResult detail;
};

inline GenericityDecision decide_genericity(const StabilityContext& context) {
    GenericityResult fast = is_generic_with_context(context, GenericityMode::fast);
    if (fast.generic) return {true, true, fast};
    if (context.quiver().arrow_count() <= 24) {
        GenericityResult exhaustive = is_generic_with_context(context, GenericityMode::exhaustive);
        return {exhaustive.generic, true, exhaustive};
    }
    return {false, false, fast};
}

/// The inequality system A x <= 1 cutting out the flow polytope translated so
/// the all-ones flow sits at the origin. Row i is the negated evaluation of
/// the cycle-basis circulations on arrow i.
struct FacetPresentation {
    std::vector<std::vector<int>> rows;  // |Q1| x d, entries in {-1,0,1}
    std::vector<int> tree_arrows;
    std::vector<int> non_tree_arrows;
    bool tight = true;  // false: rows need not all be dual-polytope vertices
};

inline FacetPresentation facet_presentation(const Quiver& q, const CycleBasis& basis) {
    require_connected_acyclic(q, "facet_presentation");
    const int d = basis.dimension();
    FacetPresentation presentation;
    presentation.tree_arrows = basis.tree_arrows;
    presentation.non_tree_arrows = basis.non_tree_arrows;
    presentation.rows.assign(static_cast<std::size_t>(q.arrow_count()),
                             std::vector<int>(static_cast<std::size_t>(d), 0));
    for (int j = 0; j < d; ++j) {
        const Circulation& f = basis.circulations[static_cast<std::size_t>(j)];
        for (int i = 0; i < q.arrow_count(); ++i) {
            presentation.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                -static_cast<int>(f[i]);
        }
    }
    presentation.tight = is_tight(q, canonical_weight(q)).tight;
    return presentation;
}

/// The |Q1| candidate vertices of the dual flow polytope, one per arrow;
/// point i is row i of the facet presentation.
struct VertexMatrix {
    std::vector<std::vector<int>> points;  // n x d
    int dimension = 0;
    std::vector<int> tree_arrows;
    std::vector<int> non_tree_arrows;
    bool tight = true;
};

inline VertexMatrix dual_vertices(const Quiver& q, const CycleBasis& basis) {
    FacetPresentation presentation = facet_presentation(q, basis);
    VertexMatrix vm;
    vm.points = presentation.rows;
    vm.dimension = basis.dimension();
    vm.tree_arrows = presentation.tree_arrows;
    vm.non_tree_arrows = presentation.non_tree_arrows;
    vm.tight = presentation.tight;

    for (std::size_t i = 0; i < vm.points.size(); ++i) {
        for (std::size_t j = i + 1; j < vm.points.size(); ++j) {
            if (vm.points[i] == vm.points[j]) {
                throw IntegrityError("dual_vertices: points " + std::to_string(i) + " and " +
                                     std::to_string(j) +
                                     " coincide (tightness violation?)");
            }
        }
    }
    if (matrix_rank(to_rational_matrix(vm.points)) != vm.dimension) {
        throw IntegrityError("dual_vertices: point matrix is rank deficient");
    }
    return vm;
}

enum class NeighborlinessMethod { stable_subquiver, jow_codim, hull_oracle };

inline const char* to_string(NeighborlinessMethod m) {
    switch (m) {
        case NeighborlinessMethod::stable_subquiver: return "stable-subquiver";
        case NeighborlinessMethod::jow_codim: return "jow-codim";
        case NeighborlinessMethod::hull_oracle: return "hull-oracle";
    }
    return "?";
}

struct NeighborlinessCertificate {
    int k_max = 0;
    NeighborlinessMethod method = NeighborlinessMethod::stable_subquiver;
    std::optional<std::vector<int>> failing_witness;  // (k_max+1)-subset, when found
    bool conditional = false;  // genericity/tightness preconditions unmet
};

/// Largest k such that removing any l <= k arrows leaves a stable subquiver.
/// The search walks l = 1, 2, ... (colex within each level) and stops at the
/// first failing subset, which becomes the witness.
inline NeighborlinessCertificate max_neighborliness_subquiver(const Quiver& q,
                                                              const Weight& theta,
                                                              std::uint64_t max_subsets = 50000000) {
    StabilityContext context(q, theta);
    NeighborlinessCertificate certificate;
    certificate.method = NeighborlinessMethod::stable_subquiver;
    GenericityDecision genericity = decide_genericity(context);
    certificate.conditional =
        !(genericity.definitive && genericity.generic && is_tight_with_context(context).tight);

    const int m = q.arrow_count();
    const ArrowMask full = full_arrow_mask(q);
    std::uint64_t checked = 0;
    for (int level = 1; level <= m; ++level) {
        ArrowMask subset = (ArrowMask{1} << level) - 1;
        for (;;) {
            if (++checked > max_subsets) {
                throw CapacityError("max_neighborliness_subquiver: subset budget exhausted at size " +
                                    std::to_string(level));
            }
            if (context.verdict(full & ~subset).status != StabilityStatus::stable) {
                certificate.k_max = level - 1;
                std::vector<int> witness;
                for (int i = 0; i < m; ++i) {
                    if (subset >> i & 1) witness.push_back(i);
                }
                certificate.failing_witness = std::move(witness);
                return certificate;
            }
            ArrowMask next = detail::next_subset_colex(subset);
            if (next > full) break;
            subset = next;
        }
    }
    // Unreachable for nonzero theta: removing all arrows is unstable.
    throw StructureError("max_neighborliness_subquiver: no failing subset found");
}

/// Codimension route (Jow's criterion): the normal fan is k-neighborly
/// exactly when the unstable locus has codimension at least k+1, so
/// k_max = codim - 1. Valid for generic tight weights that are either the
/// canonical weight or a perturbation of it; otherwise the certificate is
/// marked conditional.
inline NeighborlinessCertificate max_neighborliness_jow(const Quiver& q, const Weight& theta,
                                                        bool theta_from_perturbation = false,
                                                        std::uint64_t max_subsets = 50000000) {
    StabilityContext context(q, theta);
    CodimCertificate codim = unstable_codim_with_context(context, max_subsets);

    NeighborlinessCertificate certificate;
    certificate.method = NeighborlinessMethod::jow_codim;
    certificate.k_max = codim.codim - 1;
    certificate.failing_witness = codim.witness_removal;

    GenericityDecision genericity = decide_genericity(context);
    bool anticanonical_or_perturbed = theta_from_perturbation || theta == canonical_weight(q);
    certificate.conditional = !(genericity.definitive && genericity.generic &&
                                is_tight_with_context(context).tight && anticanonical_or_perturbed);
    return certificate;
}

}  // namespace quiverpoly
