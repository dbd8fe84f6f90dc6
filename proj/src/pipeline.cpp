#include "cubecert/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "cubecert/blowup.hpp"
#include "cubecert/branch.hpp"
#include "cubecert/error.hpp"
#include "cubecert/json_io.hpp"
#include "cubecert/presentation.hpp"

namespace cubecert {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Worker pool for within-stage scans.  Stages themselves stay sequential;
// only independent per-item work (covers, ordering searches) fans out, and
// results land in preallocated slots so the output order is deterministic.
// ---------------------------------------------------------------------------

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> hold(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Stage harness: runs bodies in order, stops at the first failure, and
// keeps every stage's numbers as a JSON object.  A VerificationError inside
// a body is a failing verdict, not a crash; input and precondition errors
// propagate to the caller untouched.
// ---------------------------------------------------------------------------

struct StageOutcome {
    bool pass = false;
    std::string detail;
};

struct Drive {
    PipelineReport rep;
    bool stopped = false;

    void stage(const std::string& name, std::vector<std::string> cites,
               const std::function<StageOutcome(json&)>& body) {
        if (stopped) return;
        PipelineStage s;
        s.name = name;
        s.cites = std::move(cites);
        json data = json::object();
        StageOutcome out;
        try {
            out = body(data);
        } catch (const VerificationError& e) {
            out.pass = false;
            out.detail = e.what();
        }
        s.verdict = out.pass ? "pass" : "fail";
        s.detail = out.detail;
        s.data = data.dump();
        rep.stages.push_back(std::move(s));
        if (!out.pass) {
            stopped = true;
            rep.ok = false;
        }
    }
};

// ---------------------------------------------------------------------------
// Small shared helpers.
// ---------------------------------------------------------------------------

// per-part vertex counts of a partite complex, index 0 unused
std::vector<std::size_t> part_sizes(const SimplicialComplex& K) {
    std::vector<std::size_t> n(static_cast<std::size_t>(K.part_count()) + 1, 0);
    for (Vertex v = 0; v < K.vertex_count(); ++v)
        ++n[static_cast<std::size_t>(K.part(v))];
    return n;
}

int next_prime_above(int bound, const std::set<int>& used) {
    for (int q = bound + 1;; ++q)
        if (is_prime(q) && !used.count(q)) return q;
}

// The three projection pairs in reporting order with the coordinate each
// one removes: (1,2) drops 3, (2,3) drops 1, (3,1) drops 2.
constexpr std::array<std::array<int, 2>, 3> kPairs{{{1, 2}, {2, 3}, {3, 1}}};
constexpr std::array<int, 3> kRemoved{3, 1, 2};

// link-vertex label of the edge direction at vertex v along coordinate k
std::string direction_label_at(const CubeComplex& X, const CubeVertex& v,
                               const Cell& e, int k) {
    const auto ku = static_cast<std::size_t>(k);
    const Side opp = v.side[ku] == Side::A ? Side::B : Side::A;
    const Vertex u = static_cast<Vertex>(opp == Side::A ? e.a[ku] : e.b[ku]);
    return std::to_string(k + 1) + (opp == Side::A ? "A:" : "B:") +
           (opp == Side::A ? X.gamma_a().label(u) : X.gamma_b().label(u));
}

int edge_coordinate(const Cell& e) {
    for (int t = 0; t < 3; ++t)
        if (e.a[static_cast<std::size_t>(t)] >= 0 &&
            e.b[static_cast<std::size_t>(t)] >= 0)
            return t;
    return -1;
}

// Cone on the instance grid of a projection corner: one vertex per A-side
// row and B-side column, one edge per square through the corner, plus the
// corner itself as apex.  The fiber transport of a grid edge is the
// monodromy of the two-step retract path across its square.
struct CornerWheel {
    SimplicialComplex wheel;
    Vertex apex = 0;
    GraphMonodromy mono;
};

CornerWheel corner_wheel(const ProjectionGraph& g, const EdgeLabeling& L,
                         const ProjectionGraph::Corner& c,
                         const SimplicialComplex& gamma_a,
                         const SimplicialComplex& gamma_b) {
    const std::string apex_label = "corner " + c.label;
    std::vector<std::vector<std::string>> faces;
    for (const auto& [a, w] : c.squares)
        faces.push_back({apex_label, "A:" + gamma_a.label(a),
                         "B:" + gamma_b.label(w)});
    CornerWheel out;
    out.wheel = build_complex(faces);
    out.apex = out.wheel.id_of(apex_label);
    out.mono.degree = L.pair.q;

    auto node = [&](std::int32_t ai, std::int32_t aj, std::int32_t bi,
                    std::int32_t bj) {
        const auto it = g.node_index.find({ai, aj, bi, bj});
        if (it == g.node_index.end())
            throw VerificationError("projection node missing for corner " +
                                    c.label);
        return it->second;
    };
    auto edge_perm = [&](std::uint32_t u, std::uint32_t v) {
        const auto it = g.edge_index.find(std::minmax(u, v));
        if (it == g.edge_index.end())
            throw VerificationError("projection edge missing for corner " +
                                    c.label);
        return edge_permutation(g, L, it->second);
    };

    for (const auto& [a, w] : c.squares) {
        const auto sa = static_cast<std::int32_t>(a);
        const auto sw = static_cast<std::int32_t>(w);
        const std::uint32_t aa = node(sa, static_cast<std::int32_t>(c.aj), -1, -1);
        const std::uint32_t ab = node(sa, -1, -1, sw);
        const std::uint32_t bb = node(-1, -1, static_cast<std::int32_t>(c.bi), sw);
        // beta step AA -> AB, then alpha step AB -> BB; both edges store the
        // A-side end of their varying coordinate first, so the labeled
        // permutations already run in that direction
        Perm t = compose(edge_perm(aa, ab), edge_perm(ab, bb));
        Vertex u = out.wheel.id_of("A:" + gamma_a.label(a));
        Vertex v = out.wheel.id_of("B:" + gamma_b.label(w));
        if (u > v) {
            t = inverse_perm(t);
            std::swap(u, v);
        }
        out.mono.edge_perm.emplace(std::pair<Vertex, Vertex>{u, v}, std::move(t));
    }
    return out;
}

}  // namespace

int worker_count() {
    const char* env = std::getenv("CUBECERT_WORKERS");
    if (env != nullptr) {
        const int n = std::atoi(env);
        return std::clamp(n, 1, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

std::array<int, 3> monodromy_valence_bounds(const SimplicialComplex& gamma_a,
                                            const SimplicialComplex& gamma_b) {
    const std::vector<std::size_t> na = part_sizes(gamma_a);
    const std::vector<std::size_t> nb = part_sizes(gamma_b);
    std::array<int, 3> bounds{};
    for (std::size_t t = 0; t < 3; ++t) {
        const auto i = static_cast<std::size_t>(kPairs[t][0]);
        const auto j = static_cast<std::size_t>(kPairs[t][1]);
        bounds[t] = static_cast<int>(std::max({na[i], na[j], nb[i], nb[j]}));
    }
    return bounds;
}

std::array<int, 3> resolve_monodromy_primes(const std::array<int, 3>& requested,
                                            const std::array<int, 3>& bounds) {
    std::array<int, 3> qs{};
    const bool automatic =
        requested[0] == 0 && requested[1] == 0 && requested[2] == 0;
    std::set<int> used;
    for (std::size_t t = 0; t < 3; ++t) {
        if (automatic) {
            qs[t] = next_prime_above(bounds[t], used);
        } else {
            qs[t] = requested[t];
            if (!is_prime(qs[t]))
                throw InputError("monodromy modulus " + std::to_string(qs[t]) +
                                 " is not prime");
            if (qs[t] <= bounds[t])
                throw InputError("monodromy modulus " + std::to_string(qs[t]) +
                                 " does not exceed the valence bound " +
                                 std::to_string(bounds[t]));
            if (used.count(qs[t]))
                throw InputError("monodromy moduli must be pairwise distinct");
        }
        used.insert(qs[t]);
    }
    return qs;
}

std::vector<LinkCoverSummary> link_cover_summaries(
    const CubeComplex& X, const std::array<int, 3>& q_primes) {
    std::vector<LinkCoverSummary> out;
    for (std::size_t t = 0; t < 3; ++t) {
        const ProjectionGraph g = project_graphs(X, kRemoved[t]);
        const EdgeLabeling lab = label_graph(g, q_primes[t]);
        std::vector<std::size_t> lifts(g.corners.size(), 0);
        std::vector<std::size_t> covered(g.corners.size(), 0);
        parallel_for(g.corners.size(), [&](std::size_t ci) {
            const CornerWheel cw =
                corner_wheel(g, lab, g.corners[ci], X.gamma_a(), X.gamma_b());
            const BranchedCover bc =
                branched_link_cover(cw.wheel, {cw.apex}, cw.mono);
            lifts[ci] = bc.lifts_per_branch.at(0);
            covered[ci] = bc.covered_vertices;
        });
        LinkCoverSummary s;
        s.pair = kPairs[t];
        s.removed_coordinate = kRemoved[t];
        s.q = lab.pair.q;
        s.corners = g.corners.size();
        for (std::size_t ci = 0; ci < g.corners.size(); ++ci) {
            s.single_lift += lifts[ci] == 1;
            s.covered_vertices += covered[ci];
        }
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ascending/descending ordering searches over the locus vertex classes.
// ---------------------------------------------------------------------------

std::vector<OrderingClassResult> ordering_search_census(
    const CubeComplex& X, const MorseSigns& signs, const BlowupInputs& in,
    std::size_t budget) {
    const BranchLocus Y = branch_locus(X);

    std::map<std::size_t, std::vector<std::uint32_t>> locus_edges_at;
    for (std::uint32_t e : Y.edge_cells)
        for (std::size_t corner : X.corners(X.cells(1)[e]))
            locus_edges_at[corner].push_back(e);

    // B-side coordinates trace through both octahedralisations to a vertex
    // of the subdivision; together with the signs this keys the isomorphism
    // class of the vertex's ascending and descending links.
    auto trace = [&](Vertex b) {
        return in.once.base[in.twice.base[b]];
    };
    std::map<std::string, std::uint32_t> representative;
    std::map<std::string, std::size_t> members;
    for (std::uint32_t vi : Y.vertex_ids) {
        const CubeVertex& v = X.vertices()[vi];
        std::string key = X.pattern(vi);
        for (std::size_t c = 0; c < 3; ++c) {
            if (v.side[c] == Side::A)
                key += "|a" +
                       std::to_string(signs.a_sign.at(X.gamma_a().label(v.coord[c])));
            else
                key += "|b" + std::to_string(trace(v.coord[c])) + "s" +
                       std::to_string(signs.b_sign.at(X.gamma_b().label(v.coord[c])));
        }
        representative.emplace(key, vi);
        ++members[key];
    }

    std::vector<std::pair<std::string, std::uint32_t>> classes(
        representative.begin(), representative.end());
    std::vector<OrderingClassResult> results(classes.size() * 2);
    parallel_for(classes.size(), [&](std::size_t idx) {
        const auto& [key, vi] = classes[idx];
        const CubeVertex& v = X.vertices()[vi];
        for (int side = 0; side < 2; ++side) {
            const SimplicialComplex lk = side == 0
                                             ? ascending_link(X, signs, vi)
                                             : descending_link(X, signs, vi);
            std::vector<Vertex> dirs;
            const auto it = locus_edges_at.find(vi);
            if (it != locus_edges_at.end()) {
                for (std::uint32_t ei : it->second) {
                    const Cell& e = X.cells(1)[ei];
                    const std::string lab =
                        direction_label_at(X, v, e, edge_coordinate(e));
                    if (lk.has_label(lab)) dirs.push_back(lk.id_of(lab));
                }
            }
            std::sort(dirs.begin(), dirs.end());
            OrderingClassResult& r = results[idx * 2 + static_cast<std::size_t>(side)];
            r.cls = key;
            r.side = side == 0 ? "ascending" : "descending";
            r.members = members.at(key);
            r.branch_directions = dirs.size();
            if (!dirs.empty()) {
                const OrderingResult o = find_four_cycle_ordering(lk, dirs, budget);
                r.found = o.found;
                r.budget_exhausted = o.budget_exhausted;
                r.witness = o.witness;
            }
        }
    });
    return results;
}

// ---------------------------------------------------------------------------
// The drive.
// ---------------------------------------------------------------------------

PipelineReport run_pipeline(const PipelineConfig& cfg) {
    for (int s : cfg.a_part_sizes) {
        if (s < 1) throw InputError("A-side part sizes must be positive");
        if (cfg.strict && s < 4)
            throw InputError(
                "strict mode requires every A-side part to have at least 4 "
                "vertices; rerun in lab mode for smaller instances");
    }
    if (cfg.window_radius < 0)
        throw InputError("window radius must be nonnegative");

    Drive d;
    d.rep.ok = true;
    d.rep.mode = cfg.strict ? "strict" : "lab";
    if (!cfg.strict)
        d.rep.banner = {
            "LAB MODE: part sizes below the full-size regime are allowed.",
            "Verdicts exercise the machinery on a small instance and are not",
            "evidence for the full-size hypotheses."};

    {
        json c;
        c["l_path"] = cfg.l_path;
        c["a_part_sizes"] = cfg.a_part_sizes;
        const bool automatic = cfg.q_primes[0] == 0 && cfg.q_primes[1] == 0 &&
                               cfg.q_primes[2] == 0;
        if (automatic)
            c["q_primes"] = "auto";
        else
            c["q_primes"] = cfg.q_primes;
        c["morse_signs"] = cfg.morse_signs.has_value() ? "custom" : "default";
        c["window_radius"] = cfg.window_radius;
        c["seed"] = cfg.seed;
        c["out_dir"] = cfg.out_dir;
        c["strict"] = cfg.strict;
        d.rep.config = c.dump();
    }

    // state carried across stages
    SimplicialComplex L;
    BlowupInputs in;
    std::optional<CubeComplex> X;
    MorseSigns signs;
    std::optional<EdgeOrientations> orient;
    std::optional<LinkReport> link_report;
    std::optional<NpcReport> npc_report;
    std::optional<BranchLocus> locus;
    std::optional<BranchingCertificate> branching;
    std::optional<MorseLinkReport> morse_report;
    std::array<int, 3> primes{0, 0, 0};
    std::vector<std::string> monodromy_artifacts;  // per-pair certificate JSON

    d.stage("input", {}, [&](json& data) {
        L = complex_from_file(cfg.l_path);
        if (L.dim() > 2)
            throw InputError("the base complex must be at most 2-dimensional");
        if (L.vertex_count() == 0)
            throw InputError("the base complex has no vertices");
        data["path"] = cfg.l_path;
        data["vertices"] = L.vertex_count();
        data["maximal_faces"] = L.maximal_faces().size();
        data["dimension"] = L.dim();
        return StageOutcome{true, "parsed a " + std::to_string(L.dim()) +
                                      "-dimensional base complex with " +
                                      std::to_string(L.vertex_count()) +
                                      " vertices"};
    });

    d.stage("nlcp", {"input"}, [&](json& data) {
        const NlcpResult r = has_nlcp(L);
        data["ok"] = r.ok;
        if (!r.ok) data["reason"] = r.reason;
        return StageOutcome{r.ok, r.ok
                                      ? "the base complex is connected with no "
                                        "local cut points"
                                      : "rejected: " + r.reason};
    });

    d.stage("subdivision", {"input"}, [&](json& data) {
        in = make_blowup_inputs(L, cfg.a_part_sizes);
        const SimplicialComplex& Lp = in.subdivision.complex;
        data["vertices"] = Lp.vertex_count();
        data["parts"] = part_sizes(Lp);
        json faces = json::array();
        for (int k = 0; k <= Lp.dim(); ++k) faces.push_back(Lp.face_count(k));
        data["faces_by_dim"] = faces;
        const bool partite = verify_partite(Lp);
        data["partite"] = partite;
        return StageOutcome{partite,
                            partite ? "the barycentric subdivision is partite "
                                      "by barycenter dimension"
                                    : "the subdivision is not partite"};
    });

    d.stage("octahedralisation", {"subdivision"}, [&](json& data) {
        const SimplicialComplex& Lp = in.subdivision.complex;
        const SimplicialComplex& S1 = in.once.complex;
        const SimplicialComplex& S2 = in.twice.complex;
        data["once_vertices"] = S1.vertex_count();
        data["twice_vertices"] = S2.vertex_count();
        data["twice_parts"] = part_sizes(S2);
        // count laws: every level doubles vertices and scales k-faces by
        // 2^(k+1)
        for (int k = 0; k <= Lp.dim(); ++k) {
            if (S1.face_count(k) != Lp.face_count(k) << (k + 1))
                return StageOutcome{false,
                                    "face count law fails at the first "
                                    "octahedralisation in dimension " +
                                        std::to_string(k)};
            if (S2.face_count(k) != S1.face_count(k) << (k + 1))
                return StageOutcome{false,
                                    "face count law fails at the second "
                                    "octahedralisation in dimension " +
                                        std::to_string(k)};
        }
        return StageOutcome{true,
                            "both octahedralisation count laws hold up to "
                            "dimension " +
                                std::to_string(Lp.dim())};
    });

    d.stage("blowup", {"octahedralisation"}, [&](json& data) {
        X.emplace(build_blowup(in.gamma_a, in.twice.complex));
        json cells = json::array();
        for (int k = 0; k <= 3; ++k) cells.push_back(X->cell_count(k));
        data["cells_by_dim"] = cells;
        data["patterns"] = X->pattern_counts();
        return StageOutcome{true, "built the blowup with " +
                                      std::to_string(X->cell_count(0)) +
                                      " vertices and " +
                                      std::to_string(X->cell_count(3)) +
                                      " cubes"};
    });

    d.stage("vertex-links", {"blowup", "subdivision"}, [&](json& data) {
        link_report = verify_vertex_links(*X, in);
        data["vertices_checked"] = link_report->vertices_checked;
        data["isomorphism_checks"] = link_report->iso_checks;
        json rows = json::array();
        for (const LinkReportRow& r : link_report->rows)
            rows.push_back({{"pattern", r.pattern},
                            {"vertices", r.vertices},
                            {"classes", r.classes},
                            {"failures", r.failures},
                            {"first_failure", r.first_failure}});
        data["rows"] = rows;
        return StageOutcome{
            link_report->ok,
            link_report->ok
                ? "all " + std::to_string(link_report->vertices_checked) +
                      " vertex links match their predicted class models"
                : "a vertex link deviates from its predicted model"};
    });

    d.stage("npc", {"blowup"}, [&](json& data) {
        npc_report = verify_npc(*X);
        data["vertices_checked"] = npc_report->vertices_checked;
        data["failures"] = npc_report->failures;
        return StageOutcome{npc_report->ok,
                            npc_report->ok
                                ? "every vertex link is flag"
                                : "a vertex link fails the flag condition"};
    });

    d.stage("hyperplanes", {"blowup"}, [&](json& data) {
        const auto classes = hyperplane_directions(*X);
        json rows = json::array();
        std::size_t dual = 0;
        for (const HyperplaneClass& h : classes) {
            rows.push_back({{"direction", h.direction},
                            {"hyperplanes", h.hyperplanes},
                            {"dual_edges", h.dual_edges}});
            dual += h.dual_edges;
        }
        data["classes"] = rows;
        data["dual_edges_total"] = dual;
        const bool covers = dual == X->cell_count(1);
        return StageOutcome{covers,
                            covers ? "the three direction classes partition "
                                     "all edges"
                                   : "hyperplane duals do not partition the "
                                     "edges"};
    });

    d.stage("morse-orientation", {"blowup"}, [&](json& data) {
        signs = cfg.morse_signs.has_value() ? *cfg.morse_signs
                                            : make_morse_signs(in);
        // strict regime: at least two vertices of each sign in every A part
        std::map<int, std::pair<std::size_t, std::size_t>> census;
        for (Vertex v = 0; v < in.gamma_a.vertex_count(); ++v) {
            const auto it = signs.a_sign.find(in.gamma_a.label(v));
            if (it == signs.a_sign.end())
                throw InputError("morse sign missing for an A-side vertex");
            auto& [pos, neg] = census[in.gamma_a.part(v)];
            (it->second > 0 ? pos : neg) += 1;
        }
        json parts = json::object();
        for (const auto& [p, pn] : census) {
            parts[std::to_string(p)] = {{"positive", pn.first},
                                        {"negative", pn.second}};
            if (cfg.strict && (pn.first < 2 || pn.second < 2))
                throw InputError(
                    "strict mode requires at least two vertices of each sign "
                    "per A-side part; rerun in lab mode");
        }
        data["a_sign_census"] = parts;
        orient.emplace(orient_edges(*X, signs));
        data["oriented_edges"] = orient->toward_b.size();
        return StageOutcome{true,
                            "every square has zero weight sum under the "
                            "induced edge orientation"};
    });

    d.stage("morse-links", {"morse-orientation", "vertex-links"},
            [&](json& data) {
        morse_report = verify_morse_links(*X, signs, in);
        data["vertices_checked"] = morse_report->vertices_checked;
        data["isomorphism_checks"] = morse_report->iso_checks;
        data["census_classes"] = morse_report->census.size();
        json rows = json::array();
        for (const MorseLinkRow& r : morse_report->rows)
            rows.push_back({{"pattern", r.pattern},
                            {"vertices", r.vertices},
                            {"classes", r.classes},
                            {"failures", r.failures},
                            {"first_failure", r.first_failure}});
        data["rows"] = rows;
        data["failures"] = morse_report->failures;
        return StageOutcome{
            morse_report->ok,
            morse_report->ok
                ? "all ascending and descending links match their predicted "
                  "models across " +
                      std::to_string(morse_report->census.size()) + " classes"
                : "an ascending or descending link deviates from its model"};
    });

    d.stage("windows", {"morse-orientation"}, [&](json& data) {
        const LevelWindow w =
            cyclic_cover_window(*X, *orient, cfg.window_radius);
        data["radius"] = cfg.window_radius;
        data["levels"] = {w.lo, w.hi};
        data["level_gcd"] = w.level_gcd;
        data["vertices"] = w.vertices.size();
        data["edges"] = w.edges.size();
        data["squares"] = w.squares.size();
        data["cubes"] = w.cube_count;
        return StageOutcome{true, "built the level window [" +
                                      std::to_string(w.lo) + ", " +
                                      std::to_string(w.hi) +
                                      "] of the infinite cyclic cover"};
    });

    d.stage("branch-locus", {"blowup", "npc"}, [&](json& data) {
        locus = branch_locus(*X);
        branching = verify_branching_locus(*X, *locus);
        data["vertices"] = locus->vertex_ids.size();
        data["edges"] = locus->edge_cells.size();
        data["edges_by_direction"] = locus->edges_by_direction;
        data["dimension"] = locus->dim;
        data["vertices_checked"] = branching->vertices_checked;
        data["edges_checked"] = branching->edges_checked;
        data["failures"] = branching->failures;
        data["degenerate"] = branching->degenerate;
        return StageOutcome{branching->ok,
                            branching->ok
                                ? "the locus is a graph with connected "
                                  "complements and isolated directions"
                                : "a branched-cover hypothesis fails on the "
                                  "locus"};
    });

    d.stage("monodromy", {"branch-locus"}, [&](json& data) {
        const std::array<int, 3> bounds =
            monodromy_valence_bounds(in.gamma_a, in.twice.complex);
        primes = resolve_monodromy_primes(cfg.q_primes, bounds);
        data["valence_bounds"] = bounds;
        data["q_primes"] = primes;
        json pairs = json::array();
        bool all_ok = true;
        std::size_t loops_total = 0;
        for (std::size_t t = 0; t < 3; ++t) {
            const ProjectionGraph g = project_graphs(*X, kRemoved[t]);
            const EdgeLabeling lab = label_graph(g, primes[t]);
            const FourLoopReport fr = four_loop_certificates(g, lab);
            const bool comm = commutator_identity_check(lab.pair);
            monodromy_artifacts.push_back(
                four_loop_certificates_json(g, lab, fr));
            pairs.push_back({{"pair", kPairs[t]},
                             {"removed_coordinate", kRemoved[t]},
                             {"q", lab.pair.q},
                             {"l", lab.pair.l},
                             {"corners", fr.corners},
                             {"four_loops", fr.loops},
                             {"transitive_loops", fr.transitive_loops},
                             {"commutator_identity", comm},
                             {"ok", fr.ok},
                             {"failures", fr.failures}});
            all_ok = all_ok && fr.ok && comm;
            loops_total += fr.loops;
        }
        data["pairs"] = pairs;
        return StageOutcome{all_ok,
                            all_ok ? "all " + std::to_string(loops_total) +
                                         " four-loop monodromies are full "
                                         "cycles and the commutator identity "
                                         "holds for every modulus"
                                   : "a four-loop monodromy or commutator "
                                     "identity check failed"};
    });

    d.stage("link-covers", {"monodromy"}, [&](json& data) {
        const auto summaries = link_cover_summaries(*X, primes);
        json pairs = json::array();
        bool all_single = true;
        for (const LinkCoverSummary& s : summaries) {
            all_single = all_single && s.single_lift == s.corners;
            pairs.push_back({{"pair", s.pair},
                             {"q", s.q},
                             {"corners", s.corners},
                             {"single_lift_corners", s.single_lift},
                             {"covered_vertices", s.covered_vertices}});
        }
        data["pairs"] = pairs;
        return StageOutcome{all_single,
                            all_single ? "every corner cone has a unique "
                                         "lift in its branched link cover"
                                       : "a corner cone lifts to several "
                                         "components"};
    });

    d.stage("orderings", {"morse-links", "branch-locus"}, [&](json& data) {
        const auto results = ordering_search_census(*X, signs, in, 100000);
        std::size_t searched = 0, found = 0, exhausted = 0, skipped = 0;
        json rows = json::array();
        for (const OrderingClassResult& r : results) {
            if (r.branch_directions == 0) {
                ++skipped;
                continue;
            }
            ++searched;
            found += r.found;
            exhausted += r.budget_exhausted;
            json row = {{"class", r.cls},
                        {"side", r.side},
                        {"members", r.members},
                        {"branch_directions", r.branch_directions},
                        {"found", r.found}};
            if (!r.found) row["witness"] = r.witness;
            rows.push_back(std::move(row));
        }
        data["classes_searched"] = searched;
        data["classes_without_branch_directions"] = skipped;
        data["orderings_found"] = found;
        data["budget_exhausted"] = exhausted;
        data["rows"] = rows;
        const bool ok = found == searched && exhausted == 0;
        return StageOutcome{ok,
                            ok ? "a shelling order of the branch directions "
                                 "exists in all " +
                                     std::to_string(searched) +
                                     " link classes"
                               : "an ordering search failed or ran out of "
                                 "budget"};
    });

    std::string finiteness_json;
    d.stage("finiteness", {"morse-links"}, [&](json& data) {
        // the base group: sound simplification of the edge-path presentation;
        // an empty simplified presentation certifies triviality
        const Presentation p = fundamental_group_presentation(L, 0);
        const Presentation simp = tietze_simplify(p);
        const bool trivial = simp.generators.empty();
        data["base_group_generators"] = simp.generators.size();
        data["base_group_trivial"] = trivial;

        FinitenessAssumptions fa;
        fa.links_simply_connected = trivial;
        fa.links_note =
            trivial ? "the edge-path presentation of the base simplifies to "
                      "the empty presentation, and every census model is a "
                      "join of nonempty complexes"
                    : "no simple-connectivity certificate: the base "
                      "presentation did not simplify to the empty "
                      "presentation";
        fa.base_group_perfect_nontrivial = false;
        fa.base_note =
            "perfection and nontriviality of the base group are recorded "
            "assumptions, never decided here; no certificate was supplied";
        d.rep.assumptions.push_back(
            std::string("links_simply_connected = ") +
            (fa.links_simply_connected ? "true" : "false") + ": " +
            fa.links_note);
        d.rep.assumptions.push_back("base_group_perfect_nontrivial = false: " +
                                    fa.base_note);

        finiteness_json = finiteness_report(morse_report->census, fa);
        const json fin = json::parse(finiteness_json);
        data["report"] = fin;
        return StageOutcome{true, "verdict: " +
                                      fin.at("verdict").get<std::string>()};
    });

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        std::vector<std::pair<std::string, std::string>> artifacts;
        artifacts.emplace_back("report.json", report_to_json(d.rep));
        if (X.has_value())
            artifacts.emplace_back(
                "blowup_manifest.json",
                blowup_manifest(*X,
                                link_report.has_value() ? &*link_report : nullptr,
                                npc_report.has_value() ? &*npc_report : nullptr,
                                branching.has_value() ? &*branching : nullptr));
        for (std::size_t t = 0; t < monodromy_artifacts.size(); ++t)
            artifacts.emplace_back("monodromy_" +
                                       std::to_string(kPairs[t][0]) +
                                       std::to_string(kPairs[t][1]) + ".json",
                                   monodromy_artifacts[t]);
        if (!finiteness_json.empty())
            artifacts.emplace_back("finiteness.json", finiteness_json);

        json index = json::array();
        for (const auto& [name, text] : artifacts) {
            write_text_file((fs::path(cfg.out_dir) / name).string(), text);
            index.push_back({{"file", name}, {"bytes", text.size()}});
        }
        write_text_file((fs::path(cfg.out_dir) / "manifest.json").string(),
                        json{{"artifacts", index}}.dump(2) + "\n");
    }

    return d.rep;
}

std::string report_to_json(const PipelineReport& r) {
    json j;
    j["tool"] = "cubecert";
    j["mode"] = r.mode;
    if (!r.banner.empty()) j["banner"] = r.banner;
    j["config"] = r.config.empty() ? json::object() : json::parse(r.config);
    j["ok"] = r.ok;
    j["stages"] = json::array();
    for (const PipelineStage& s : r.stages)
        j["stages"].push_back({{"name", s.name},
                               {"verdict", s.verdict},
                               {"detail", s.detail},
                               {"citations", s.cites},
                               {"data", json::parse(s.data)}});
    j["assumptions"] = r.assumptions;
    return j.dump(2) + "\n";
}

}  // namespace cubecert
