// Command-line front end: every module operation as a thin JSON-in/JSON-out
// subcommand plus the full pipeline drive.  Exit codes: 0 all checks pass,
// 1 a verified claim is false, 2 bad input, 3 precondition misuse.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <iostream>
#include <sstream>
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

namespace {

using json = nlohmann::ordered_json;
using namespace cubecert;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::array<int, 3> parse_triple(const std::string& s, const char* what) {
    const std::vector<std::string> parts = split_list(s);
    if (parts.size() != 3)
        throw InputError(std::string(what) + " must be three comma-separated "
                                             "integers");
    std::array<int, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        try {
            out[i] = std::stoi(parts[i]);
        } catch (const std::exception&) {
            throw InputError(std::string(what) + " must be integers");
        }
    }
    return out;
}

std::array<int, 3> parse_primes(const std::string& s) {
    if (s == "auto") return {0, 0, 0};
    return parse_triple(s, "--primes");
}

Face face_from_labels(const SimplicialComplex& K, const std::string& csv) {
    return K.face_of_labels(split_list(csv));
}

json link_report_json(const LinkReport& r) {
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

json morse_report_json(const MorseLinkReport& r) {
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

// shared option bundle for the subcommands that build a blowup from a base
// complex file
struct BlowupArgs {
    std::string l_path;
    std::string parts = "4,4,4";

    void attach(CLI::App* sc) {
        sc->add_option("--l", l_path, "base complex file (canonical JSON)")
            ->required();
        sc->add_option("--parts", parts,
                       "A-side part sizes, e.g. 4,4,4");
    }
    BlowupInputs inputs() const {
        return make_blowup_inputs(complex_from_file(l_path),
                                  parse_triple(parts, "--parts"));
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cubecert: blowup, height and branched-cover verification for "
        "tripartite complexes"};
    app.require_subcommand(1);
    int exit_status = 0;

    // --- simplicial operations ---------------------------------------------

    {
        auto* sc = app.add_subcommand("nlcp",
                                      "connectivity / no-local-cut-point test");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            const NlcpResult r = has_nlcp(complex_from_file(*file));
            emit({{"ok", r.ok}, {"reason", r.reason}});
        });
    }
    {
        auto* sc = app.add_subcommand("flag", "flag (clique) test");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            emit({{"flag", is_flag(complex_from_file(*file))}});
        });
    }
    {
        auto* sc = app.add_subcommand("components", "connected component count");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            emit({{"components",
                   complex_from_file(*file).component_count()}});
        });
    }
    {
        auto* sc = app.add_subcommand("verify-partite",
                                      "check the stored partite structure");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            emit({{"partite", verify_partite(complex_from_file(*file))}});
        });
    }
    {
        auto* sc = app.add_subcommand("link", "link of a face");
        auto file = std::make_shared<std::string>();
        auto face = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--face", *face, "vertex labels, comma-separated")
            ->required();
        sc->callback([file, face]() {
            const SimplicialComplex K = complex_from_file(*file);
            std::cout << complex_to_json(link(K, face_from_labels(K, *face)));
        });
    }
    {
        auto* sc = app.add_subcommand("star", "closed star of a face");
        auto file = std::make_shared<std::string>();
        auto face = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--face", *face, "vertex labels, comma-separated")
            ->required();
        sc->callback([file, face]() {
            const SimplicialComplex K = complex_from_file(*file);
            std::cout << complex_to_json(star(K, face_from_labels(K, *face)));
        });
    }
    {
        auto* sc = app.add_subcommand("join", "join of two complexes");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        sc->add_option("--file", *a, "first complex file")->required();
        sc->add_option("--file2", *b, "second complex file")->required();
        sc->callback([a, b]() {
            std::cout << complex_to_json(
                join(complex_from_file(*a), complex_from_file(*b)));
        });
    }
    {
        auto* sc = app.add_subcommand("subdivide", "barycentric subdivision");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            std::cout << complex_to_json(
                barycentric_subdivision(complex_from_file(*file)).complex);
        });
    }
    {
        auto* sc = app.add_subcommand("octahedralise",
                                      "octahedralisation (spherical double)");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "complex file")->required();
        sc->callback([file]() {
            std::cout << complex_to_json(
                octahedralise(complex_from_file(*file)).complex);
        });
    }
    {
        auto* sc = app.add_subcommand("iso", "exact isomorphism test");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto bound = std::make_shared<std::size_t>(10000);
        sc->add_option("--file", *a, "first complex file")->required();
        sc->add_option("--file2", *b, "second complex file")->required();
        sc->add_option("--face-bound", *bound, "size guard for the search");
        sc->callback([a, b, bound]() {
            emit({{"isomorphic",
                   is_isomorphic(complex_from_file(*a), complex_from_file(*b),
                                 *bound)}});
        });
    }
    {
        auto* sc = app.add_subcommand(
            "random-complex", "seeded random connected flag complex with nlcp");
        auto seed = std::make_shared<std::uint64_t>(0);
        auto n = std::make_shared<int>(8);
        auto density = std::make_shared<double>(0.5);
        sc->add_option("--seed", *seed, "RNG seed");
        sc->add_option("--vertices", *n, "vertex count");
        sc->add_option("--density", *density, "edge density in [0,1]");
        sc->callback([seed, n, density]() {
            std::cout << complex_to_json(
                random_flag_nlcp_complex(*seed, *n, *density));
        });
    }

    // --- homology ------------------------------------------------------------

    {
        auto* sc = app.add_subcommand("homology", "reduced homology of a complex");
        auto file = std::make_shared<std::string>();
        auto dim = std::make_shared<int>(1);
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--dim", *dim, "dimension");
        sc->callback([file, dim]() {
            std::cout << homology_to_json(
                             homology(complex_from_file(*file), *dim))
                      << "\n";
        });
    }
    {
        auto* sc = app.add_subcommand(
            "snf", "Smith normal form of {\"matrix\": [[...]]}");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "matrix file")->required();
        sc->callback([file]() {
            const json j = json::parse(read_text_file(*file), nullptr, false);
            if (j.is_discarded() || !j.contains("matrix") ||
                !j["matrix"].is_array())
                throw InputError("expected a JSON object with a \"matrix\" "
                                 "array of integer rows");
            const auto& rows = j["matrix"];
            const std::size_t r = rows.size();
            const std::size_t c = r == 0 ? 0 : rows[0].size();
            IntegerMatrix M(r, c);
            for (std::size_t i = 0; i < r; ++i) {
                if (rows[i].size() != c)
                    throw InputError("matrix rows have unequal lengths");
                for (std::size_t k = 0; k < c; ++k)
                    M.set(i, k, Int(rows[i][k].get<long long>()));
            }
            const SNFResult s = smith_normal_form(M);
            std::ostringstream out;
            out << "{\"rank\":" << s.rank << ",\"divisors\":[";
            for (std::size_t i = 0; i < s.divisors.size(); ++i)
                out << (i ? "," : "") << s.divisors[i];
            out << "]}";
            std::cout << out.str() << "\n";
        });
    }

    // --- fundamental group ---------------------------------------------------

    {
        auto* sc = app.add_subcommand(
            "pi1", "edge-path presentation of the fundamental group");
        auto file = std::make_shared<std::string>();
        auto base = std::make_shared<std::uint32_t>(0);
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--basepoint", *base, "basepoint vertex id");
        sc->callback([file, base]() {
            const Presentation p = fundamental_group_presentation(
                complex_from_file(*file), *base);
            emit({{"generators", p.generators.size()},
                  {"relations", p.relations.size()},
                  {"presentation", presentation_to_text(p)}});
        });
    }
    {
        auto* sc = app.add_subcommand(
            "abelianization", "first homology via the group presentation");
        auto file = std::make_shared<std::string>();
        auto base = std::make_shared<std::uint32_t>(0);
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--basepoint", *base, "basepoint vertex id");
        sc->callback([file, base]() {
            std::cout << homology_to_json(
                             abelianization(fundamental_group_presentation(
                                 complex_from_file(*file), *base)))
                      << "\n";
        });
    }
    {
        auto* sc = app.add_subcommand(
            "simplify-presentation",
            "sound Tietze simplification of a presentation text file");
        auto file = std::make_shared<std::string>();
        sc->add_option("--file", *file, "presentation text file")->required();
        sc->callback([file]() {
            const Presentation p =
                tietze_simplify(presentation_from_text(read_text_file(*file)));
            emit({{"generators", p.generators.size()},
                  {"relations", p.relations.size()},
                  {"presentation", presentation_to_text(p)}});
        });
    }

    // --- blowup and its verification passes -----------------------------------

    {
        auto* sc = app.add_subcommand("blowup",
                                      "build the blowup of a base complex");
        auto args = std::make_shared<BlowupArgs>();
        auto manifest = std::make_shared<bool>(false);
        args->attach(sc);
        sc->add_flag("--emit-manifest", *manifest,
                     "run all verification passes and print the manifest");
        sc->callback([args, manifest, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            if (*manifest) {
                const LinkReport links = verify_vertex_links(X, in);
                const NpcReport npc = verify_npc(X);
                const BranchLocus Y = branch_locus(X);
                const BranchingCertificate cert = verify_branching_locus(X, Y);
                std::cout << blowup_manifest(X, &links, &npc, &cert);
                if (!(links.ok && npc.ok && cert.ok)) exit_status = 1;
                return;
            }
            json cells = json::array();
            for (int k = 0; k <= 3; ++k) cells.push_back(X.cell_count(k));
            emit({{"cells_by_dim", cells}, {"patterns", X.pattern_counts()}});
        });
    }
    {
        auto* sc = app.add_subcommand(
            "verify-links",
            "check every vertex link and every ascending/descending link "
            "against its predicted model");
        auto args = std::make_shared<BlowupArgs>();
        args->attach(sc);
        sc->callback([args, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            const LinkReport links = verify_vertex_links(X, in);
            const MorseSigns signs = make_morse_signs(in);
            const MorseLinkReport morse = verify_morse_links(X, signs, in);
            emit({{"vertex_links", link_report_json(links)},
                  {"morse_links", morse_report_json(morse)}});
            if (!(links.ok && morse.ok)) exit_status = 1;
        });
    }
    {
        auto* sc = app.add_subcommand("branch-locus",
                                      "branching locus and its certificate");
        auto args = std::make_shared<BlowupArgs>();
        args->attach(sc);
        sc->callback([args, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            const BranchLocus Y = branch_locus(X);
            const BranchingCertificate cert = verify_branching_locus(X, Y);
            emit({{"vertices", Y.vertex_ids.size()},
                  {"edges", Y.edge_cells.size()},
                  {"edges_by_direction", Y.edges_by_direction},
                  {"dimension", Y.dim},
                  {"certificate",
                   {{"ok", cert.ok},
                    {"degenerate", cert.degenerate},
                    {"vertices_checked", cert.vertices_checked},
                    {"edges_checked", cert.edges_checked},
                    {"failures", cert.failures}}}});
            if (!cert.ok) exit_status = 1;
        });
    }
    {
        auto* sc = app.add_subcommand(
            "morse-report",
            "edge orientation, link census and a cyclic-cover window");
        auto args = std::make_shared<BlowupArgs>();
        auto radius = std::make_shared<int>(1);
        args->attach(sc);
        sc->add_option("--radius", *radius, "window radius around level 0");
        sc->callback([args, radius, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            const MorseSigns signs = make_morse_signs(in);
            const EdgeOrientations o = orient_edges(X, signs);
            const MorseLinkReport morse = verify_morse_links(X, signs, in);
            const LevelWindow w = cyclic_cover_window(X, o, *radius);
            emit({{"oriented_edges", o.toward_b.size()},
                  {"morse_links", morse_report_json(morse)},
                  {"window",
                   {{"levels", {w.lo, w.hi}},
                    {"level_gcd", w.level_gcd},
                    {"vertices", w.vertices.size()},
                    {"edges", w.edges.size()},
                    {"squares", w.squares.size()},
                    {"cubes", w.cube_count}}}});
            if (!morse.ok) exit_status = 1;
        });
    }

    // --- branched-cover certificates -------------------------------------------

    {
        auto* sc = app.add_subcommand(
            "monodromy",
            "label the three projection graphs and certify all four-loop "
            "monodromies");
        auto args = std::make_shared<BlowupArgs>();
        auto primes = std::make_shared<std::string>("auto");
        args->attach(sc);
        sc->add_option("--primes", *primes,
                       "auto or three primes, e.g. 13,17,19");
        sc->callback([args, primes, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            const std::array<int, 3> qs = resolve_monodromy_primes(
                parse_primes(*primes),
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
            emit({{"ok", ok}, {"pairs", pairs}});
            if (!ok) exit_status = 1;
        });
    }
    {
        auto* sc = app.add_subcommand(
            "link-covers",
            "branched covers of every projection corner cone");
        auto args = std::make_shared<BlowupArgs>();
        auto primes = std::make_shared<std::string>("auto");
        args->attach(sc);
        sc->add_option("--primes", *primes,
                       "auto or three primes, e.g. 13,17,19");
        sc->callback([args, primes, &exit_status]() {
            const BlowupInputs in = args->inputs();
            const CubeComplex X = build_blowup(in.gamma_a, in.twice.complex);
            const std::array<int, 3> qs = resolve_monodromy_primes(
                parse_primes(*primes),
                monodromy_valence_bounds(in.gamma_a, in.twice.complex));
            json pairs = json::array();
            bool ok = true;
            for (const LinkCoverSummary& s : link_cover_summaries(X, qs)) {
                ok = ok && s.single_lift == s.corners;
                pairs.push_back({{"pair", s.pair},
                                 {"removed_coordinate", s.removed_coordinate},
                                 {"q", s.q},
                                 {"corners", s.corners},
                                 {"single_lift_corners", s.single_lift},
                                 {"covered_vertices", s.covered_vertices}});
            }
            emit({{"ok", ok}, {"pairs", pairs}});
            if (!ok) exit_status = 1;
        });
    }
    {
        auto* sc = app.add_subcommand(
            "ordering",
            "search a shelling order of a vertex set in a complex");
        auto file = std::make_shared<std::string>();
        auto set = std::make_shared<std::string>();
        auto budget = std::make_shared<std::size_t>(100000);
        sc->add_option("--file", *file, "complex file")->required();
        sc->add_option("--set", *set, "vertex labels, comma-separated")
            ->required();
        sc->add_option("--budget", *budget, "search budget");
        sc->callback([file, set, budget, &exit_status]() {
            const SimplicialComplex K = complex_from_file(*file);
            std::vector<Vertex> V;
            for (const std::string& lab : split_list(*set))
                V.push_back(K.id_of(lab));
            const OrderingResult r = find_four_cycle_ordering(K, V, *budget);
            json order = json::array();
            for (Vertex v : r.ordering) order.push_back(K.label(v));
            emit({{"found", r.found},
                  {"budget_exhausted", r.budget_exhausted},
                  {"ordering", order},
                  {"witness", r.witness}});
            if (!r.found) exit_status = 1;
        });
    }

    // --- the full drive ---------------------------------------------------------

    {
        auto* sc = app.add_subcommand("pipeline",
                                      "run every stage and print the report");
        auto cfg = std::make_shared<PipelineConfig>();
        auto parts = std::make_shared<std::string>("4,4,4");
        auto primes = std::make_shared<std::string>("auto");
        auto lab = std::make_shared<bool>(false);
        sc->add_option("--l", cfg->l_path, "base complex file")->required();
        sc->add_option("--parts", *parts, "A-side part sizes");
        sc->add_option("--primes", *primes,
                       "auto or three primes for the monodromy stage");
        sc->add_option("--radius", cfg->window_radius, "window radius");
        sc->add_option("--seed", cfg->seed, "seed echoed into the report");
        sc->add_option("--out", cfg->out_dir, "artifact directory");
        sc->add_flag("--lab", *lab, "allow part sizes below the strict regime");
        sc->callback([cfg, parts, primes, lab, &exit_status]() {
            cfg->a_part_sizes = parse_triple(*parts, "--parts");
            cfg->q_primes = parse_primes(*primes);
            cfg->strict = !*lab;
            const PipelineReport r = run_pipeline(*cfg);
            std::cout << report_to_json(r);
            if (!r.ok) exit_status = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        const char* kind = e.kind() == ErrorKind::input ? "input"
                           : e.kind() == ErrorKind::precondition
                               ? "precondition"
                               : "verification";
        std::cerr << json{{"error", e.what()}, {"kind", kind}}.dump() << "\n";
        return exit_code_for(e.kind());
    }
    return exit_status;
}
