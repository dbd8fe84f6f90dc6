// Python bindings: the main operations behind a JSON-string API, mirroring
// the command-line subcommands one to one.  The dict-friendly wrappers live
// in python/cubecert/__init__.py; everything here stays string in, string
// out so the binding layer adds no semantics of its own.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

#include "cubecert/blowup.hpp"
#include "cubecert/branch.hpp"
#include "cubecert/error.hpp"
#include "cubecert/homology.hpp"
#include "cubecert/json_io.hpp"
#include "cubecert/morse.hpp"
#include "cubecert/pipeline.hpp"
#include "cubecert/presentation.hpp"
#include "cubecert/simplicial.hpp"

namespace py = pybind11;
using namespace cubecert;
using json = nlohmann::ordered_json;

namespace {

std::array<int, 3> triple(const std::vector<int>& v, const char* what) {
    if (v.size() != 3)
        throw InputError(std::string(what) + " must have exactly 3 entries");
    return {v[0], v[1], v[2]};
}

json link_rows(const LinkReport& r) {
    json rows = json::array();
    for (const LinkReportRow& row : r.rows)
        rows.push_back({{"pattern", row.pattern},
                        {"vertices", row.vertices},
                        {"classes", row.classes},
                        {"failures", row.failures},
                        {"first_failure", row.first_failure}});
    return {{"ok", r.ok},
            {"vertices_checked", r.vertices_checked},
            {"isomorphism_checks", r.iso_checks},
            {"rows", rows}};
}

json morse_rows(const MorseLinkReport& r) {
    json rows = json::array();
    for (const MorseLinkRow& row : r.rows)
        rows.push_back({{"pattern", row.pattern},
                        {"vertices", row.vertices},
                        {"classes", row.classes},
                        {"failures", row.failures},
                        {"first_failure", row.first_failure}});
    return {{"ok", r.ok},
            {"vertices_checked", r.vertices_checked},
            {"isomorphism_checks", r.iso_checks},
            {"census_classes", r.census.size()},
            {"rows", rows},
            {"failures", r.failures}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "cubecert core: blowup, height and branched-cover verification for "
        "tripartite complexes (JSON-string API)";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<VerificationError>(m, "VerificationError");

    // --- simplicial -----------------------------------------------------------

    m.def("nlcp", [](const std::string& k) {
        const NlcpResult r = has_nlcp(complex_from_json(k));
        return json{{"ok", r.ok}, {"reason", r.reason}}.dump();
    });
    m.def("flag", [](const std::string& k) {
        return json{{"flag", is_flag(complex_from_json(k))}}.dump();
    });
    m.def("components", [](const std::string& k) {
        return json{{"components", complex_from_json(k).component_count()}}
            .dump();
    });
    m.def("subdivide", [](const std::string& k) {
        return complex_to_json(barycentric_subdivision(complex_from_json(k)).complex);
    });
    m.def("octahedralise", [](const std::string& k) {
        return complex_to_json(octahedralise(complex_from_json(k)).complex);
    });
    m.def("join_complexes", [](const std::string& a, const std::string& b) {
        return complex_to_json(join(complex_from_json(a), complex_from_json(b)));
    });
    m.def("link_of", [](const std::string& k, const std::vector<std::string>& face) {
        const SimplicialComplex K = complex_from_json(k);
        return complex_to_json(link(K, face));
    });
    m.def("isomorphic", [](const std::string& a, const std::string& b) {
        return json{{"isomorphic", is_isomorphic(complex_from_json(a),
                                                 complex_from_json(b))}}
            .dump();
    });
    m.def("random_complex",
          [](std::uint64_t seed, int vertices, double density) {
              return complex_to_json(
                  random_flag_nlcp_complex(seed, vertices, density));
          },
          py::arg("seed"), py::arg("vertices") = 8, py::arg("density") = 0.5);

    // --- homology and the fundamental group ------------------------------------

    m.def("homology_of",
          [](const std::string& k, int dim) {
              return homology_to_json(homology(complex_from_json(k), dim));
          },
          py::arg("complex"), py::arg("dim") = 1);
    m.def("pi1", [](const std::string& k) {
        const Presentation p =
            fundamental_group_presentation(complex_from_json(k), 0);
        return json{{"generators", p.generators.size()},
                    {"relations", p.relations.size()},
                    {"presentation", presentation_to_text(p)}}
            .dump();
    });

    // --- blowup -----------------------------------------------------------------

    m.def("blowup_manifest_of",
          [](const std::string& l, const std::vector<int>& parts) {
              const BlowupInputs in = make_blowup_inputs(
                  complex_from_json(l), triple(parts, "part sizes"));
              const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
              const LinkReport links = verify_vertex_links(X, in);
              const NpcReport npc = verify_npc(X);
              const BranchLocus Y = branch_locus(X);
              const BranchingCertificate cert = verify_branching_locus(X, Y);
              return blowup_manifest(X, &links, &npc, &cert);
          },
          py::arg("l"), py::arg("parts") = std::vector<int>{4, 4, 4});
    m.def("verify_links",
          [](const std::string& l, const std::vector<int>& parts) {
              const BlowupInputs in = make_blowup_inputs(
                  complex_from_json(l), triple(parts, "part sizes"));
              const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
              const LinkReport links = verify_vertex_links(X, in);
              const MorseLinkReport morse =
                  verify_morse_links(X, make_morse_signs(in), in);
              return json{{"vertex_links", link_rows(links)},
                          {"morse_links", morse_rows(morse)}}
                  .dump();
          },
          py::arg("l"), py::arg("parts") = std::vector<int>{4, 4, 4});

    // --- branched-cover certificates ---------------------------------------------

    m.def("monodromy_certificates",
          [](const std::string& l, const std::vector<int>& parts,
             const std::vector<int>& primes) {
              const BlowupInputs in = make_blowup_inputs(
                  complex_from_json(l), triple(parts, "part sizes"));
              const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
              const std::array<int, 3> qs = resolve_monodromy_primes(
                  triple(primes, "primes"),
                  monodromy_valence_bounds(in.gamma_a, in.twice.complex));
              const std::array<int, 3> removed{3, 1, 2};
              json pairs = json::array();
              bool ok = true;
              for (std::size_t t = 0; t < 3; ++t) {
                  const ProjectionGraph g = project_graphs(X, removed[t]);
                  const EdgeLabeling lab = label_graph(g, qs[t]);
                  const FourLoopReport fr = four_loop_certificates(g, lab);
                  ok = ok && fr.ok && commutator_identity_check(lab.pair);
                  pairs.push_back(
                      json::parse(four_loop_certificates_json(g, lab, fr)));
              }
              return json{{"ok", ok}, {"pairs", pairs}}.dump();
          },
          py::arg("l"), py::arg("parts") = std::vector<int>{4, 4, 4},
          py::arg("primes") = std::vector<int>{0, 0, 0});
    m.def("ordering",
          [](const std::string& gamma, const std::vector<std::string>& set,
             std::size_t budget) {
              const SimplicialComplex K = complex_from_json(gamma);
              std::vector<Vertex> V;
              for (const std::string& lab : set) V.push_back(K.id_of(lab));
              const OrderingResult r = find_four_cycle_ordering(K, V, budget);
              json order = json::array();
              for (Vertex v : r.ordering) order.push_back(K.label(v));
              return json{{"found", r.found},
                          {"budget_exhausted", r.budget_exhausted},
                          {"ordering", order},
                          {"witness", r.witness}}
                  .dump();
          },
          py::arg("gamma"), py::arg("set"), py::arg("budget") = 100000);

    // --- the full drive ------------------------------------------------------------

    m.def("run_pipeline",
          [](const std::string& l_path, const std::vector<int>& parts,
             const std::vector<int>& primes, int window_radius,
             std::uint64_t seed, const std::string& out_dir, bool strict) {
              PipelineConfig cfg;
              cfg.l_path = l_path;
              cfg.a_part_sizes = triple(parts, "part sizes");
              cfg.q_primes = triple(primes, "primes");
              cfg.window_radius = window_radius;
              cfg.seed = seed;
              cfg.out_dir = out_dir;
              cfg.strict = strict;
              return report_to_json(run_pipeline(cfg));
          },
          py::arg("l_path"), py::arg("parts") = std::vector<int>{4, 4, 4},
          py::arg("primes") = std::vector<int>{0, 0, 0},
          py::arg("window_radius") = 1, py::arg("seed") = 0,
          py::arg("out_dir") = std::string(), py::arg("strict") = true);
}
