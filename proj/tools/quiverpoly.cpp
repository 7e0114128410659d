// Command-line front end: certification reports, vertex/facet exports,
// compressed-sensing sweeps, and weight perturbation for quivers given as
// files or generator specs (bipartite:p,q / multipartite:p1,p2,...).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "quiverpoly/connectivity.hpp"
#include "quiverpoly/cycle_basis.hpp"
#include "quiverpoly/io.hpp"
#include "quiverpoly/polytope.hpp"
#include "quiverpoly/report.hpp"
#include "quiverpoly/sensing.hpp"

namespace {

using namespace quiverpoly;

int log_level() {
    const char* env = std::getenv("QUIVERPOLY_LOG");
    if (!env) return 0;
    try {
        return std::stoi(env);
    } catch (const std::exception&) {
        return 0;
    }
}

void log_info(const std::string& message) {
    if (log_level() >= 1) std::cerr << "[quiverpoly] " << message << "\n";
}

struct CommonOptions {
    std::string source;
    std::uint64_t tree_seed = 0;
    std::string format = "json";
    std::string out_path;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    int max_vertices = 24;
    int max_arrows = 63;
};

void add_common_options(CLI::App* cmd, CommonOptions& options) {
    cmd->add_option("source", options.source,
                    "quiver file, `bipartite:p,q`, or `multipartite:p1,p2,...`")
        ->required();
    cmd->add_option("--tree-seed", options.tree_seed,
                    "seed permuting spanning-tree growth (0 = lowest arrow index first)");
    cmd->add_option("--format", options.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", options.out_path, "write output to FILE instead of stdout");
    cmd->add_option("--jobs", options.jobs, "worker cap for parallel stages")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-vertices", options.max_vertices, "vertex capacity cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-arrows", options.max_arrows, "arrow capacity cap")
        ->check(CLI::PositiveNumber);
}

QuiverSource load_checked(const CommonOptions& options) {
    QuiverSource source = load_quiver_source(options.source);
    if (source.quiver.vertex_count() > options.max_vertices) {
        throw CapacityError("quiver exceeds --max-vertices (" +
                            std::to_string(source.quiver.vertex_count()) + " > " +
                            std::to_string(options.max_vertices) + ")");
    }
    if (source.quiver.arrow_count() > options.max_arrows) {
        throw CapacityError("quiver exceeds --max-arrows (" +
                            std::to_string(source.quiver.arrow_count()) + " > " +
                            std::to_string(options.max_arrows) + ")");
    }
    log_info("loaded " + source.label + ": " + std::to_string(source.quiver.vertex_count()) +
             " vertices, " + std::to_string(source.quiver.arrow_count()) + " arrows");
    return source;
}

void emit(const CommonOptions& options, const std::string& payload) {
    if (options.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(options.out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write to " + options.out_path);
    out << payload;
}

std::optional<std::uint64_t> seed_argument(const CommonOptions& options) {
    return options.tree_seed ? std::optional<std::uint64_t>(options.tree_seed) : std::nullopt;
}

int run_report(const CommonOptions& options) {
    QuiverSource source = load_checked(options);
    ReportOptions report_options;
    report_options.tree_seed = options.tree_seed;
    CertificateReport report = certify(source, report_options);
    if (options.format == "csv") throw ParseError("report has no CSV rendering");
    emit(options, options.format == "text" ? report_to_text(report)
                                           : report_to_json(report).dump(2) + "\n");
    if (!report.error.empty()) throw StructureError(report.error);
    return 0;
}

int run_vertices(const CommonOptions& options) {
    QuiverSource source = load_checked(options);
    CycleBasis basis = cycle_basis(source.quiver, seed_argument(options));
    VertexMatrix vm = dual_vertices(source.quiver, basis);
    if (options.format == "json") {
        Json j;
        j["source"] = source.label;
        j["dimension"] = vm.dimension;
        j["tight"] = vm.tight;
        j["tree_arrows"] = vm.tree_arrows;
        j["non_tree_arrows"] = vm.non_tree_arrows;
        j["points"] = vm.points;
        emit(options, j.dump(2) + "\n");
    } else {
        emit(options, matrix_to_csv(vm.points));
    }
    return 0;
}

int run_facets(const CommonOptions& options) {
    QuiverSource source = load_checked(options);
    CycleBasis basis = cycle_basis(source.quiver, seed_argument(options));
    FacetPresentation presentation = facet_presentation(source.quiver, basis);
    if (options.format == "json") {
        Json j;
        j["source"] = source.label;
        j["tight"] = presentation.tight;
        j["tree_arrows"] = presentation.tree_arrows;
        j["non_tree_arrows"] = presentation.non_tree_arrows;
        j["rows"] = presentation.rows;
        j["rhs"] = 1;
        emit(options, j.dump(2) + "\n");
    } else {
        emit(options, matrix_to_csv(presentation.rows));
    }
    return 0;
}

int run_sense(const CommonOptions& options, int k, std::uint64_t seed, int trials) {
    QuiverSource source = load_checked(options);
    log_info("sweep: k=" + std::to_string(k) + " trials=" + std::to_string(trials));
    RecoveryReport report = recovery_sweep(source.quiver, k, trials, seed, options.jobs,
                                           seed_argument(options), source.label);
    if (options.format == "csv") throw ParseError("sense has no CSV rendering");
    if (options.format == "text") {
        std::ostringstream text;
        text << "instances: " << report.instances.size() << "\n"
             << "recovered: " << report.recovered_count << "\n"
             << "unique: " << report.unique_count << "\n"
             << "success rate: " << report.success_rate() << "\n";
        emit(options, text.str());
    } else {
        Json j = recovery_report_to_json(report);
        j["source"] = source.label;
        emit(options, j.dump(2) + "\n");
    }
    return 0;
}

int run_perturb(const CommonOptions& options) {
    QuiverSource source = load_checked(options);
    Weight delta = canonical_weight(source.quiver);
    Weight theta = perturb_to_generic(source.quiver, delta);
    Rational distance = 0;
    for (int i = 0; i < delta.size(); ++i) distance += abs(theta[i] - delta[i]);
    if (options.format == "text") {
        std::ostringstream text;
        text << "theta:";
        for (const Rational& v : theta.values()) text << " " << to_string(v);
        text << "\nl1 distance from canonical: " << to_string(distance) << "\n";
        emit(options, text.str());
    } else {
        Json j;
        j["source"] = source.label;
        j["delta"] = weight_to_json(delta);
        j["theta"] = weight_to_json(theta);
        j["perturbed"] = theta != delta;
        j["l1_distance"] = rational_to_json(distance);
        emit(options, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual flow polytopes of acyclic quivers: neighborliness certificates and "
                 "exact-LP sensing demos"};
    app.require_subcommand(1);

    CommonOptions report_options, vertices_options, facets_options, sense_options,
        perturb_options;
    int k = 1;
    std::uint64_t sweep_seed = 0;
    int trials = 1;

    add_common_options(app.add_subcommand("report", "certify a quiver end to end"),
                       report_options);
    add_common_options(app.add_subcommand("vertices", "export the dual-polytope vertex matrix"),
                       vertices_options);
    add_common_options(app.add_subcommand("facets", "export the facet presentation A x <= 1"),
                       facets_options);
    CLI::App* sense = app.add_subcommand("sense", "exhaustive sparse-recovery sweep");
    add_common_options(sense, sense_options);
    sense->add_option("--k", k, "max support size")->required()->check(CLI::PositiveNumber);
    sense->add_option("--seed", sweep_seed, "coefficient stream seed");
    sense->add_option("--trials", trials, "instances per support")->check(CLI::PositiveNumber);
    add_common_options(app.add_subcommand("perturb", "find a nearby generic weight"),
                       perturb_options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("report")) return run_report(report_options);
        if (app.got_subcommand("vertices")) return run_vertices(vertices_options);
        if (app.got_subcommand("facets")) return run_facets(facets_options);
        if (app.got_subcommand("sense")) return run_sense(sense_options, k, sweep_seed, trials);
        if (app.got_subcommand("perturb")) return run_perturb(perturb_options);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const GuaranteeError& e) {
        std::cerr << "guarantee failure: " << e.what() << "\n";
        return 4;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 4;
    } catch (const SearchError& e) {
        std::cerr << "search failure: " << e.what() << "\n";
        return 4;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
