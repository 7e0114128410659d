#pragma once

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quiverpoly/connectivity.hpp"
#include "quiverpoly/cycle_basis.hpp"
#include "quiverpoly/face_oracle.hpp"
#include "quiverpoly/io.hpp"
#include "quiverpoly/polytope.hpp"
#include "quiverpoly/sensing.hpp"
#include "quiverpoly/stability.hpp"

namespace quiverpoly {

/// Consolidated certification of one weighted quiver: graph diagnostics,
/// genericity/tightness of the weight actually used (the canonical one, or a
/// perturbation when that is not generic), unstable-locus codimension, both
/// neighborliness certificates, and the bound comparisons.
struct CertificateReport {
    std::string source;
    std::uint64_t tree_seed = 0;
    int vertex_count = 0;
    int arrow_count = 0;
    bool connected = false;
    bool acyclic = false;
    std::string error;  // set when certification could not proceed

    int edge_connectivity_r = 0;
    std::optional<Weight> delta;
    bool delta_generic = false;
    std::string delta_generic_mode;  // "fast" or "exhaustive"
    std::optional<ArrowMask> delta_semistable_witness;

    std::optional<Weight> theta;  // weight used for the certificates
    bool perturbed = false;
    std::string perturbation_note;

    bool theta_generic = false;
    bool tight = false;
    std::optional<int> tightness_offender;
    std::optional<StabilityWitness> tightness_witness;
    std::vector<int> tree_arrows;

    int dual_dimension = 0;       // |Q1| - |Q0| + 1
    int dual_vertex_count = 0;    // |Q1| when the vertex matrix checks out
    bool vertex_matrix_ok = false;

    std::optional<CodimCertificate> codim;
    std::optional<NeighborlinessCertificate> subquiver;
    std::optional<NeighborlinessCertificate> jow;

    // k_max >= floor(r/2) - 1 (the provable bound); the floor(r/2) variant is
    // reported as informational only.
    bool connectivity_bound_ok = false;
    int connectivity_bound = 0;
    bool meets_informational_bound = false;

    std::optional<int> bipartite_expected_k;  // min(p,q)-1 for coprime sides
    std::optional<bool> bipartite_exact;

    bool conditional = false;
};

struct ReportOptions {
    std::uint64_t tree_seed = 0;
    std::uint64_t max_subsets = 50000000;
};

inline CertificateReport certify(const QuiverSource& source, ReportOptions options = {}) {
    CertificateReport report;
    report.source = source.label;
    report.tree_seed = options.tree_seed;
    const Quiver& q = source.quiver;
    report.vertex_count = q.vertex_count();
    report.arrow_count = q.arrow_count();
    Diagnostics diagnostics = validate(q);
    report.connected = diagnostics.connected;
    report.acyclic = diagnostics.acyclic;
    if (!diagnostics.connected || !diagnostics.acyclic) {
        report.error = diagnostics.connected ? "quiver has a directed cycle"
                                             : "quiver is disconnected";
        return report;
    }

    report.edge_connectivity_r = edge_connectivity(q);
    Weight delta = canonical_weight(q);
    report.delta = delta;

    StabilityContext delta_context(q, delta);
    GenericityDecision delta_generic = decide_genericity(delta_context);
    report.delta_generic = delta_generic.definitive && delta_generic.generic;
    report.delta_generic_mode =
        delta_generic.detail.mode == GenericityMode::fast ? "fast" : "exhaustive";
    report.delta_semistable_witness = delta_generic.detail.semistable_mask;

    Weight theta = delta;
    if (!report.delta_generic) {
        try {
            theta = perturb_to_generic(q, delta);
            report.perturbed = true;
        } catch (const Error& e) {
            report.perturbation_note = e.what();
        }
    }
    report.theta = theta;

    StabilityContext context(q, theta);
    GenericityDecision genericity = decide_genericity(context);
    report.theta_generic = genericity.definitive && genericity.generic;
    TightnessResult tightness = is_tight_with_context(context);
    report.tight = tightness.tight;
    report.tightness_offender = tightness.offending_arrow;
    if (tightness.offending_verdict && tightness.offending_verdict->witness) {
        report.tightness_witness = tightness.offending_verdict->witness;
    }

    report.dual_dimension = q.arrow_count() - q.vertex_count() + 1;
    CycleBasis basis = cycle_basis(q, options.tree_seed ? std::optional<std::uint64_t>(options.tree_seed)
                                                        : std::nullopt);
    report.tree_arrows = basis.tree_arrows;
    try {
        VertexMatrix vm = dual_vertices(q, basis);
        report.dual_vertex_count = static_cast<int>(vm.points.size());
        report.vertex_matrix_ok = true;
    } catch (const IntegrityError&) {
        report.dual_vertex_count = 0;
        report.vertex_matrix_ok = false;
    }

    report.codim = unstable_codim_with_context(context, options.max_subsets);
    report.subquiver = max_neighborliness_subquiver(q, theta, options.max_subsets);
    report.jow = max_neighborliness_jow(q, theta, report.perturbed, options.max_subsets);

    const int k = report.subquiver->k_max;
    report.connectivity_bound = report.edge_connectivity_r / 2 - 1;
    report.connectivity_bound_ok = k >= report.connectivity_bound;
    report.meets_informational_bound = k >= report.edge_connectivity_r / 2;

    if (source.bipartite) {
        auto [p, qq] = *source.bipartite;
        if (std::gcd(p, qq) == 1) {
            report.bipartite_expected_k = std::min(p, qq) - 1;
            report.bipartite_exact =
                k == *report.bipartite_expected_k && report.jow->k_max == *report.bipartite_expected_k;
        }
    }

    report.conditional = !report.theta_generic || !report.tight || !report.vertex_matrix_ok ||
                         report.subquiver->conditional || report.jow->conditional;
    return report;
}

inline Json report_to_json(const CertificateReport& report) {
    Json j;
    j["source"] = report.source;
    j["tree_seed"] = report.tree_seed;
    j["quiver"] = Json{{"vertices", report.vertex_count}, {"arrows", report.arrow_count}};
    j["connected"] = report.connected;
    j["acyclic"] = report.acyclic;
    if (!report.error.empty()) {
        j["error"] = report.error;
        return j;
    }
    j["edge_connectivity"] = report.edge_connectivity_r;
    j["delta"] = weight_to_json(*report.delta);
    Json delta_generic{{"value", report.delta_generic}, {"mode", report.delta_generic_mode}};
    if (report.delta_semistable_witness) {
        Json witness = Json::array();
        for (int i = 0; i < report.arrow_count; ++i) {
            if (*report.delta_semistable_witness >> i & 1) witness.push_back(i);
        }
        delta_generic["semistable_subquiver"] = witness;
    }
    j["delta_generic"] = delta_generic;
    j["theta"] = weight_to_json(*report.theta);
    j["perturbed"] = report.perturbed;
    if (!report.perturbation_note.empty()) j["perturbation_note"] = report.perturbation_note;
    j["theta_generic"] = report.theta_generic;
    Json tight{{"value", report.tight}};
    if (report.tightness_offender) tight["offending_arrow"] = *report.tightness_offender;
    if (report.tightness_witness) {
        Json vertices = Json::array();
        for (int i = 0; i < report.vertex_count; ++i) {
            if (report.tightness_witness->vertex_set >> i & 1) vertices.push_back(i);
        }
        tight["witness_vertices"] = vertices;
        tight["witness_sum"] = rational_to_json(report.tightness_witness->total);
    }
    j["tight"] = tight;
    j["tree_arrows"] = report.tree_arrows;
    j["dimension"] = report.dual_dimension;
    j["dual_vertices"] = report.dual_vertex_count;
    j["vertex_matrix_ok"] = report.vertex_matrix_ok;
    if (report.codim) {
        j["unstable_codim"] = Json{{"value", report.codim->codim},
                                   {"witness_removal", report.codim->witness_removal},
                                   {"exhaustive_below", report.codim->exhaustive_below}};
    }
    auto certificate_json = [](const NeighborlinessCertificate& c) {
        Json out{{"k_max", c.k_max}, {"method", to_string(c.method)}, {"conditional", c.conditional}};
        if (c.failing_witness) out["failing_witness"] = *c.failing_witness;
        return out;
    };
    Json neighborliness;
    if (report.subquiver) neighborliness["stable_subquiver"] = certificate_json(*report.subquiver);
    if (report.jow) neighborliness["jow_codim"] = certificate_json(*report.jow);
    j["neighborliness"] = neighborliness;
    j["edge_connectivity_bound"] = Json{{"r", report.edge_connectivity_r},
                                        {"k_lower_bound", report.connectivity_bound},
                                        {"satisfied", report.connectivity_bound_ok},
                                        {"informational_bound", report.edge_connectivity_r / 2},
                                        {"meets_informational", report.meets_informational_bound}};
    if (report.bipartite_expected_k) {
        j["bipartite_exactness"] = Json{{"expected_k", *report.bipartite_expected_k},
                                        {"satisfied", *report.bipartite_exact}};
    }
    j["conditional"] = report.conditional;
    return j;
}

inline std::string report_to_text(const CertificateReport& report) {
    std::ostringstream out;
    out << "source: " << report.source << "\n";
    out << "quiver: " << report.vertex_count << " vertices, " << report.arrow_count
        << " arrows\n";
    out << "connected: " << (report.connected ? "yes" : "no")
        << ", acyclic: " << (report.acyclic ? "yes" : "no") << "\n";
    if (!report.error.empty()) {
        out << "error: " << report.error << "\n";
        return out.str();
    }
    out << "edge connectivity r = " << report.edge_connectivity_r << "\n";
    out << "canonical weight generic: " << (report.delta_generic ? "yes" : "no") << " ("
        << report.delta_generic_mode << ")\n";
    if (report.perturbed) {
        out << "using perturbed weight:";
        for (const Rational& v : report.theta->values()) out << " " << to_string(v);
        out << "\n";
    }
    out << "tight: " << (report.tight ? "yes" : "no");
    if (report.tightness_offender) out << " (offending arrow " << *report.tightness_offender << ")";
    out << "\n";
    out << "dual polytope: dimension " << report.dual_dimension << ", vertices "
        << report.dual_vertex_count << "\n";
    if (report.codim) out << "unstable codim: " << report.codim->codim << "\n";
    if (report.subquiver) {
        out << "k_max (stable-subquiver): " << report.subquiver->k_max
            << (report.subquiver->conditional ? " [conditional]" : "") << "\n";
    }
    if (report.jow) {
        out << "k_max (jow-codim): " << report.jow->k_max
            << (report.jow->conditional ? " [conditional]" : "") << "\n";
    }
    out << "edge-connectivity bound k >= " << report.connectivity_bound << ": "
        << (report.connectivity_bound_ok ? "satisfied" : "VIOLATED") << "\n";
    if (report.bipartite_expected_k) {
        out << "bipartite exact k = " << *report.bipartite_expected_k << ": "
            << (*report.bipartite_exact ? "confirmed" : "NOT CONFIRMED") << "\n";
    }
    out << "conditional: " << (report.conditional ? "yes" : "no") << "\n";
    return out.str();
}

inline Json recovery_report_to_json(const RecoveryReport& report) {
    Json j;
    j["k"] = report.k;
    j["trials_per_support"] = report.trials_per_support;
    j["seed"] = report.seed;
    j["guaranteed_k"] = report.guaranteed_k;
    j["instances"] = Json::array();
    for (const RecoveryInstanceResult& r : report.instances) {
        Json coefficients = Json::array();
        for (const Rational& c : r.instance.coefficients) coefficients.push_back(rational_to_json(c));
        j["instances"].push_back(Json{{"support", r.instance.support},
                                      {"coefficients", coefficients},
                                      {"recovered", r.recovered},
                                      {"unique", r.unique},
                                      {"pivots", r.pivots}});
    }
    j["recovered_count"] = report.recovered_count;
    j["unique_count"] = report.unique_count;
    j["instance_count"] = report.instances.size();
    j["success_rate"] = report.success_rate();
    j["matrix_sparsity"] = rational_to_json(report.sparsity);
    return j;
}

}  // namespace quiverpoly
