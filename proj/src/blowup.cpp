#include "cubecert/blowup.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cubecert/error.hpp"
#include "cubecert/json_io.hpp"

namespace cubecert {

namespace {

constexpr std::size_t kFailureCap = 20;

std::uint64_t encode_vertex(const CubeVertex& v) {
    std::uint64_t key = 0;
    for (int i = 0; i < 3; ++i)
        key |= ((std::uint64_t(v.coord[i]) << 1) |
                (v.side[i] == Side::B ? 1u : 0u))
               << (21 * i);
    return key;
}

// cyclic companion coordinates of an edge direction k: the locus constraint
// fixes coordinate i on the B side and coordinate j on the A side
void locus_companions(int k, int& i, int& j) {
    i = (k + 1) % 3;
    j = (k + 2) % 3;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

unsigned worker_count() {
    if (const char* env = std::getenv("CUBECERT_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 64) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
}

// Run fn(begin, end) over a partition of [0, n); fn must only touch its own
// slice of any shared output.
void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 256) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(n, w * chunk), hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(fn, lo, hi);
    }
    for (auto& t : pool) t.join();
}

// label of the link vertex in direction `coord` toward generator vertex u
std::string direction_label(const CubeComplex& X, int coord, Side side, Vertex u) {
    return std::to_string(coord + 1) + (side == Side::A ? "A:" : "B:") +
           (side == Side::A ? X.gamma_a().label(u) : X.gamma_b().label(u));
}

}  // namespace

CubeComplex::CubeComplex(SimplicialComplex gamma_a, SimplicialComplex gamma_b,
                         std::vector<CubeVertex> vertices,
                         std::array<std::vector<Cell>, 4> cells_by_dim)
    : gamma_a_(std::move(gamma_a)),
      gamma_b_(std::move(gamma_b)),
      vertices_(std::move(vertices)),
      cells_(std::move(cells_by_dim)) {
    index_.reserve(vertices_.size() * 2);
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
        const CubeVertex& v = vertices_[i];
        if (!index_.emplace(encode_vertex(v), i).second)
            throw InputError("duplicate blowup vertex " + vertex_name(i));
        if (!gamma_a_.contains(delta_a(i)) || !gamma_b_.contains(delta_b(i)))
            throw InputError("vertex " + vertex_name(i) +
                             " fails the simplex test");
        ++pattern_counts_[pattern(i)];
    }
    for (int d = 0; d < 4; ++d)
        incident_[d].assign(vertices_.size(), {});
    for (int d = 1; d <= 3; ++d)
        for (std::uint32_t c = 0; c < cells_[d].size(); ++c) {
            if (cells_[d][c].dim() != d)
                throw InputError("cell stored under wrong dimension");
            for (std::size_t corner : corners(cells_[d][c])) {
                if (corner == SIZE_MAX)
                    throw InputError("cell corner is not a stored vertex");
                incident_[d][corner].push_back(c);
            }
        }
}

std::size_t CubeComplex::find_vertex(const CubeVertex& v) const {
    auto it = index_.find(encode_vertex(v));
    return it == index_.end() ? SIZE_MAX : it->second;
}

bool CubeComplex::has_vertex(const CubeVertex& v) const {
    return find_vertex(v) != SIZE_MAX;
}

std::string CubeComplex::vertex_name(std::size_t v) const {
    const CubeVertex& cv = vertices_.at(v);
    std::string out = "(";
    for (int i = 0; i < 3; ++i) {
        if (i) out += ",";
        out += cv.side[i] == Side::A ? gamma_a_.label(cv.coord[i])
                                     : gamma_b_.label(cv.coord[i]);
    }
    return out + ")";
}

std::string CubeComplex::pattern_of(const CubeVertex& v) {
    std::string p;
    for (int i = 0; i < 3; ++i) p += v.side[i] == Side::A ? 'A' : 'B';
    return p;
}

std::string CubeComplex::pattern(std::size_t v) const {
    return pattern_of(vertices_.at(v));
}

Face CubeComplex::delta_a(std::size_t v) const {
    Face f;
    const CubeVertex& cv = vertices_.at(v);
    for (int i = 0; i < 3; ++i)
        if (cv.side[i] == Side::A) f.push_back(cv.coord[i]);
    std::sort(f.begin(), f.end());
    return f;
}

Face CubeComplex::delta_b(std::size_t v) const {
    Face f;
    const CubeVertex& cv = vertices_.at(v);
    for (int i = 0; i < 3; ++i)
        if (cv.side[i] == Side::B) f.push_back(cv.coord[i]);
    std::sort(f.begin(), f.end());
    return f;
}

std::vector<std::size_t> CubeComplex::corners(const Cell& c) const {
    std::vector<int> edge_coords;
    for (int i = 0; i < 3; ++i)
        if (c.a[i] >= 0 && c.b[i] >= 0) edge_coords.push_back(i);
    std::vector<std::size_t> out;
    out.reserve(std::size_t{1} << edge_coords.size());
    for (std::uint32_t mask = 0; mask < (1u << edge_coords.size()); ++mask) {
        CubeVertex v{};
        for (int i = 0; i < 3; ++i) {
            if (c.a[i] >= 0 && c.b[i] >= 0) {
                std::size_t pos = 0;
                while (edge_coords[pos] != i) ++pos;
                bool takeB = (mask >> pos) & 1;
                v.coord[i] = static_cast<Vertex>(takeB ? c.b[i] : c.a[i]);
                v.side[i] = takeB ? Side::B : Side::A;
            } else if (c.a[i] >= 0) {
                v.coord[i] = static_cast<Vertex>(c.a[i]);
                v.side[i] = Side::A;
            } else {
                v.coord[i] = static_cast<Vertex>(c.b[i]);
                v.side[i] = Side::B;
            }
        }
        out.push_back(find_vertex(v));
    }
    return out;
}

CubeComplex build_blowup(const SimplicialComplex& gamma_a,
                         const SimplicialComplex& gamma_b) {
    for (const SimplicialComplex* g : {&gamma_a, &gamma_b}) {
        if (!is_flag(*g))
            throw PreconditionError("build_blowup: generator complex is not flag");
        if (!g->has_parts() || g->part_count() != 3 || !verify_partite(*g))
            throw PreconditionError("build_blowup: generator complex is not tripartite");
    }

    // bucket the faces of each generator by the bitmask of parts they touch
    struct MaskedFace {
        std::array<std::int32_t, 3> at{-1, -1, -1};
    };
    auto bucket = [](const SimplicialComplex& g) {
        std::array<std::vector<MaskedFace>, 8> by_mask;
        for (int k = -1; k <= g.dim(); ++k)
            for (const Face& f : g.faces(k)) {
                MaskedFace mf;
                int mask = 0;
                for (Vertex v : f) {
                    int p = g.part(v) - 1;
                    mask |= 1 << p;
                    mf.at[p] = static_cast<std::int32_t>(v);
                }
                by_mask[mask].push_back(mf);
            }
        return by_mask;
    };
    auto by_a = bucket(gamma_a), by_b = bucket(gamma_b);

    std::vector<CubeVertex> vertices;
    std::array<std::vector<Cell>, 4> cells;
    for (int ma = 0; ma < 8; ++ma)
        for (int mb = 0; mb < 8; ++mb) {
            if ((ma | mb) != 7) continue;
            int overlap = ma & mb;
            for (const MaskedFace& fa : by_a[ma])
                for (const MaskedFace& fb : by_b[mb]) {
                    if (overlap == 0) {
                        CubeVertex v{};
                        for (int i = 0; i < 3; ++i) {
                            if (ma & (1 << i)) {
                                v.coord[i] = static_cast<Vertex>(fa.at[i]);
                                v.side[i] = Side::A;
                            } else {
                                v.coord[i] = static_cast<Vertex>(fb.at[i]);
                                v.side[i] = Side::B;
                            }
                        }
                        vertices.push_back(v);
                    } else {
                        Cell c;
                        c.a = fa.at;
                        c.b = fb.at;
                        cells[std::popcount(static_cast<unsigned>(overlap))]
                            .push_back(c);
                    }
                }
        }
    return CubeComplex(gamma_a, gamma_b, std::move(vertices), std::move(cells));
}

namespace {

// Direct link: one simplex per incident cell, vertices tagged by direction.
SimplicialComplex direct_link(const CubeComplex& X, std::size_t vi) {
    const CubeVertex& v = X.vertices()[vi];
    std::vector<std::vector<std::string>> faces;
    std::map<std::string, int> parts;
    for (int d = 1; d <= 3; ++d)
        for (std::uint32_t ci : X.incident(d, vi)) {
            const Cell& c = X.cells(d)[ci];
            std::vector<std::string> face;
            for (int i = 0; i < 3; ++i) {
                if (c.a[i] < 0 || c.b[i] < 0) continue;  // fixed coordinate
                Side opp = v.side[i] == Side::A ? Side::B : Side::A;
                Vertex u = static_cast<Vertex>(opp == Side::A ? c.a[i] : c.b[i]);
                std::string label = direction_label(X, i, opp, u);
                parts[label] = i + 1;
                face.push_back(std::move(label));
            }
            faces.push_back(std::move(face));
        }
    return build_complex(faces, parts);
}

// The join of the generator links, expressed over the same direction labels
// so it can be compared to the direct link by plain equality.
SimplicialComplex formula_link(const CubeComplex& X, std::size_t vi) {
    const SimplicialComplex LkA = link(X.gamma_a(), X.delta_a(vi));
    const SimplicialComplex LkB = link(X.gamma_b(), X.delta_b(vi));
    std::vector<std::string> labels;
    std::vector<int> part_of;
    std::vector<std::string> la(LkA.vertex_count()), lb(LkB.vertex_count());
    for (Vertex u = 0; u < LkA.vertex_count(); ++u)
        la[u] = direction_label(X, LkA.part(u) - 1, Side::A,
                                X.gamma_a().id_of(LkA.label(u)));
    for (Vertex u = 0; u < LkB.vertex_count(); ++u)
        lb[u] = direction_label(X, LkB.part(u) - 1, Side::B,
                                X.gamma_b().id_of(LkB.label(u)));

    std::vector<std::vector<std::string>> faces;
    std::map<std::string, int> parts;
    for (Vertex u = 0; u < LkA.vertex_count(); ++u) parts[la[u]] = LkA.part(u);
    for (Vertex u = 0; u < LkB.vertex_count(); ++u) parts[lb[u]] = LkB.part(u);
    auto mfa = LkA.maximal_faces(), mfb = LkB.maximal_faces();
    if (mfa.empty()) mfa.push_back({});
    if (mfb.empty()) mfb.push_back({});
    for (const Face& fa : mfa)
        for (const Face& fb : mfb) {
            std::vector<std::string> face;
            for (Vertex u : fa) face.push_back(la[u]);
            for (Vertex u : fb) face.push_back(lb[u]);
            faces.push_back(std::move(face));
        }
    return build_complex(faces, parts);
}

}  // namespace

SimplicialComplex vertex_link(const CubeComplex& X, std::size_t v) {
    if (v >= X.vertices().size())
        throw InputError("vertex_link: vertex index out of range");
    SimplicialComplex direct = direct_link(X, v);
    if (!(direct == formula_link(X, v)))
        throw VerificationError("link law violated at vertex " + X.vertex_name(v) +
                                ": direct link differs from the join of the "
                                "generator links");
    return direct;
}

BlowupInputs make_blowup_inputs(const SimplicialComplex& L,
                                const std::array<int, 3>& a_part_sizes) {
    if (L.dim() < 0 || L.dim() > 2)
        throw InputError("make_blowup_inputs: base complex must have dimension 0..2");
    for (int n : a_part_sizes)
        if (n < 1) throw InputError("make_blowup_inputs: part sizes must be >= 1");

    BlowupInputs in;
    in.base = L;
    in.subdivision = barycentric_subdivision(L);
    in.once = octahedralise(in.subdivision.complex);
    in.twice = octahedralise(in.once.complex);

    // complete tripartite complex: one maximal face per transversal triple
    std::vector<std::string> labels;
    std::vector<int> parts;
    for (int p = 0; p < 3; ++p)
        for (int i = 1; i <= a_part_sizes[p]; ++i) {
            labels.push_back("a" + std::to_string(p + 1) + "_" + std::to_string(i));
            parts.push_back(p + 1);
        }
    std::vector<Face> maximal;
    int n1 = a_part_sizes[0], n2 = a_part_sizes[1], n3 = a_part_sizes[2];
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n3; ++k)
                maximal.push_back(Face{static_cast<Vertex>(i),
                                       static_cast<Vertex>(n1 + j),
                                       static_cast<Vertex>(n1 + n2 + k)});
    in.gamma_a = SimplicialComplex::from_parts(std::move(labels),
                                               std::move(maximal), std::move(parts));
    return in;
}

LinkReport verify_vertex_links(const CubeComplex& X, const BlowupInputs& in) {
    if (!(X.gamma_a() == in.gamma_a) || !(X.gamma_b() == in.twice.complex))
        throw PreconditionError(
            "verify_vertex_links: blowup was not built from these inputs");
    // gamma_a must really be the join of its parts for the per-pattern
    // prediction to apply
    for (Vertex u = 0; u < in.gamma_a.vertex_count(); ++u)
        for (Vertex w = u + 1; w < in.gamma_a.vertex_count(); ++w)
            if (in.gamma_a.part(u) != in.gamma_a.part(w) &&
                !in.gamma_a.adjacent(u, w))
                throw PreconditionError(
                    "verify_vertex_links: gamma_a is not a complete tripartite "
                    "complex");

    // discrete per-part factors of gamma_a, reused across predictions
    std::array<SimplicialComplex, 3> part_factor;
    for (int p = 0; p < 3; ++p) {
        std::vector<std::string> verts;
        for (Vertex u = 0; u < in.gamma_a.vertex_count(); ++u)
            if (in.gamma_a.part(u) == p + 1) verts.push_back(in.gamma_a.label(u));
        part_factor[p] = build_complex({}, {}, verts);
    }

    LinkReport rep;
    std::map<std::string, LinkReportRow> rows;
    std::map<std::string, bool> verdict_by_class;
    for (std::size_t vi = 0; vi < X.vertices().size(); ++vi) {
        SimplicialComplex lk = vertex_link(X, vi);  // includes the exact law check
        ++rep.vertices_checked;
        const CubeVertex& v = X.vertices()[vi];
        std::string pat = X.pattern(vi);

        // trace the B-side coordinates back to a chain of faces of L: strip
        // both octahedralisation signs to land in the subdivision L'
        Face chain;
        for (int i = 0; i < 3; ++i)
            if (v.side[i] == Side::B)
                chain.push_back(in.once.base[in.twice.base[v.coord[i]]]);
        std::sort(chain.begin(), chain.end());

        std::string key = pat + "/";
        for (Vertex c : chain) key += std::to_string(c) + ",";

        LinkReportRow& row = rows[pat];
        row.pattern = pat;
        ++row.vertices;
        auto seen = verdict_by_class.find(key);
        bool pass;
        if (seen == verdict_by_class.end()) {
            // prediction: unused gamma_a parts joined with the doubly
            // octahedralised link of the chain in L'
            SimplicialComplex expected =
                octahedralise(octahedralise(link(in.subdivision.complex, chain))
                                  .complex)
                    .complex;
            for (int i = 0; i < 3; ++i)
                if (v.side[i] == Side::B) expected = join(expected, part_factor[i]);
            pass = is_isomorphic(lk, expected);
            ++rep.iso_checks;
            verdict_by_class[key] = pass;
            ++row.classes;
        } else {
            pass = seen->second;
        }
        if (!pass) {
            ++row.failures;
            if (row.first_failure.empty()) row.first_failure = X.vertex_name(vi);
            rep.ok = false;
        }
    }
    for (auto& [pat, row] : rows) rep.rows.push_back(row);
    return rep;
}

NpcReport verify_npc(const CubeComplex& X) {
    const std::size_t n = X.vertices().size();
    std::vector<std::uint8_t> flag_ok(n, 1);
    // read the links straight off the incident cells: the curvature check
    // stays meaningful even on complexes where the link law is broken
    parallel_ranges(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t vi = lo; vi < hi; ++vi)
            flag_ok[vi] = is_flag(direct_link(X, vi)) ? 1 : 0;
    });
    NpcReport rep;
    rep.vertices_checked = n;
    for (std::size_t vi = 0; vi < n; ++vi)
        if (!flag_ok[vi]) {
            rep.ok = false;
            if (rep.failures.size() < kFailureCap)
                rep.failures.push_back(X.vertex_name(vi));
        }
    return rep;
}

namespace {

int edge_direction(const Cell& e) {
    for (int i = 0; i < 3; ++i)
        if (e.a[i] >= 0 && e.b[i] >= 0) return i;
    throw InputError("cell is not an edge");
}

}  // namespace

std::array<HyperplaneClass, 3> hyperplane_directions(const CubeComplex& X) {
    const auto& edges = X.cells(1);
    // midpoints of opposite edges of every square are identified; the
    // classes of this relation are the hyperplanes
    std::vector<std::uint32_t> parent(edges.size());
    for (std::uint32_t e = 0; e < edges.size(); ++e) parent[e] = e;
    std::function<std::uint32_t(std::uint32_t)> find =
        [&](std::uint32_t e) -> std::uint32_t {
        while (parent[e] != e) e = parent[e] = parent[parent[e]];
        return e;
    };

    // locate edge cells by their corner pair
    std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> edge_index;
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        auto cs = X.corners(edges[e]);
        edge_index[{std::min(cs[0], cs[1]), std::max(cs[0], cs[1])}] = e;
    }
    auto edge_at = [&](const Cell& c) {
        auto cs = X.corners(c);
        return edge_index.at({std::min(cs[0], cs[1]), std::max(cs[0], cs[1])});
    };

    for (const Cell& sq : X.cells(2)) {
        int d1 = -1, d2 = -1;
        for (int i = 0; i < 3; ++i)
            if (sq.a[i] >= 0 && sq.b[i] >= 0) (d1 < 0 ? d1 : d2) = i;
        if (d1 == d2)
            throw VerificationError("square with a repeated edge direction");
        // opposite boundary edges: freeze one of the two edge coordinates
        for (int frozen : {d1, d2}) {
            Cell ea = sq, eb = sq;
            ea.b[frozen] = -1;  // frozen at the A corner
            eb.a[frozen] = -1;  // frozen at the B corner
            std::uint32_t x = find(edge_at(ea)), y = find(edge_at(eb));
            if (x != y) parent[x] = y;
        }
    }

    // every hyperplane must be single-direction; tally per direction
    std::map<std::uint32_t, int> rep_dir;
    std::array<HyperplaneClass, 3> out;
    for (int d = 0; d < 3; ++d) out[d].direction = d + 1;
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        int d = edge_direction(edges[e]);
        std::uint32_t r = find(e);
        auto it = rep_dir.find(r);
        if (it == rep_dir.end()) {
            rep_dir[r] = d;
            ++out[d].hyperplanes;
        } else if (it->second != d) {
            throw VerificationError("hyperplane with mixed edge directions");
        }
        ++out[d].dual_edges;
    }
    return out;
}

BranchLocus branch_locus(const CubeComplex& X) {
    BranchLocus Y;
    for (std::uint32_t vi = 0; vi < X.vertices().size(); ++vi) {
        const std::string pat = X.pattern(vi);
        if (pat != "AAA" && pat != "BBB") Y.vertex_ids.push_back(vi);
    }
    for (std::uint32_t e = 0; e < X.cells(1).size(); ++e) {
        const Cell& c = X.cells(1)[e];
        int k = edge_direction(c), i, j;
        locus_companions(k, i, j);
        bool i_is_B = c.b[i] >= 0 && c.a[i] < 0;
        bool j_is_A = c.a[j] >= 0 && c.b[j] < 0;
        if (i_is_B && j_is_A) {
            Y.edge_cells.push_back(e);
            ++Y.edges_by_direction[k];
        }
    }
    if (!Y.edge_cells.empty())
        Y.dim = 1;
    else if (!Y.vertex_ids.empty())
        Y.dim = 0;
    return Y;
}

namespace {

// link of an edge: one simplex per cell properly containing it, vertices
// tagged by direction exactly as in the vertex link
SimplicialComplex edge_link(const CubeComplex& X, const Cell& e) {
    int k = edge_direction(e);
    auto cs = X.corners(e);
    std::vector<std::vector<std::string>> faces;
    std::map<std::string, int> parts;
    for (int d = 2; d <= 3; ++d)
        for (std::uint32_t ci : X.incident(d, cs[0])) {
            const Cell& c = X.cells(d)[ci];
            bool contains = true;
            for (int i = 0; i < 3 && contains; ++i) {
                if (e.a[i] >= 0 && c.a[i] != e.a[i]) contains = false;
                if (e.b[i] >= 0 && c.b[i] != e.b[i]) contains = false;
            }
            if (!contains) continue;
            std::vector<std::string> face;
            for (int i = 0; i < 3; ++i) {
                if (i == k || c.a[i] < 0 || c.b[i] < 0) continue;
                // the side the edge does not already hold
                Side opp = e.a[i] >= 0 ? Side::B : Side::A;
                Vertex u = static_cast<Vertex>(opp == Side::A ? c.a[i] : c.b[i]);
                std::string label = direction_label(X, i, opp, u);
                parts[label] = i + 1;
                face.push_back(std::move(label));
            }
            faces.push_back(std::move(face));
        }
    return build_complex(faces, parts);
}

}  // namespace

BranchingCertificate verify_branching_locus(const CubeComplex& X,
                                            const BranchLocus& Y) {
    BranchingCertificate cert;
    if (Y.vertex_ids.empty() && Y.edge_cells.empty()) {
        cert.degenerate = true;
        return cert;
    }
    auto fail = [&](const std::string& msg) {
        cert.ok = false;
        if (cert.failures.size() < kFailureCap) cert.failures.push_back(msg);
    };

    // Y-edges per vertex
    std::vector<std::vector<std::uint32_t>> y_edges_at(X.vertices().size());
    for (std::uint32_t e : Y.edge_cells)
        for (std::size_t corner : X.corners(X.cells(1)[e]))
            y_edges_at[corner].push_back(e);

    for (std::uint32_t vi : Y.vertex_ids) {
        ++cert.vertices_checked;
        SimplicialComplex lk = vertex_link(X, vi);
        const CubeVertex& v = X.vertices()[vi];

        // directions of the locus edges at this vertex
        std::vector<Vertex> y_dirs;
        std::set<int> y_parts;
        for (std::uint32_t ei : y_edges_at[vi]) {
            const Cell& e = X.cells(1)[ei];
            int k = edge_direction(e);
            Side opp = v.side[k] == Side::A ? Side::B : Side::A;
            Vertex u = static_cast<Vertex>(opp == Side::A ? e.a[k] : e.b[k]);
            y_dirs.push_back(lk.id_of(direction_label(X, k, opp, u)));
            y_parts.insert(k + 1);
        }

        // (b) locus directions lie in one coordinate part, pairwise non-adjacent
        if (y_parts.size() > 1)
            fail("locus edges at " + X.vertex_name(vi) +
                 " span several coordinate parts");
        for (std::size_t x = 0; x < y_dirs.size(); ++x)
            for (std::size_t y = x + 1; y < y_dirs.size(); ++y)
                if (lk.adjacent(y_dirs[x], y_dirs[y]))
                    fail("adjacent locus directions at " + X.vertex_name(vi));

        // (a) vertex case: the link minus the locus directions must be
        // non-empty and connected
        std::vector<Vertex> keep;
        for (Vertex u = 0; u < lk.vertex_count(); ++u)
            if (std::find(y_dirs.begin(), y_dirs.end(), u) == y_dirs.end())
                keep.push_back(u);
        SimplicialComplex rest = full_subcomplex(lk, keep);
        if (rest.vertex_count() == 0)
            fail("link of " + X.vertex_name(vi) + " is exhausted by the locus");
        else if (rest.component_count() != 1)
            fail("link of " + X.vertex_name(vi) +
                 " minus the locus is disconnected");
    }

    // (a) edge case: the locus has no cells above dimension 1, so its own
    // link contribution is empty and the whole edge link must qualify
    for (std::uint32_t ei : Y.edge_cells) {
        ++cert.edges_checked;
        SimplicialComplex lk = edge_link(X, X.cells(1)[ei]);
        auto cs = X.corners(X.cells(1)[ei]);
        std::string name =
            X.vertex_name(cs[0]) + "-" + X.vertex_name(cs[1]);
        if (lk.vertex_count() == 0)
            fail("locus edge " + name + " has empty link");
        else if (lk.component_count() != 1)
            fail("locus edge " + name + " has disconnected link");
    }
    return cert;
}

std::string blowup_manifest(const CubeComplex& X, const LinkReport* links,
                            const NpcReport* npc,
                            const BranchingCertificate* branching) {
    nlohmann::ordered_json m;
    m["inputs"]["gamma_a"] = {
        {"hash", hex64(fnv1a(complex_to_json(X.gamma_a())))},
        {"vertices", X.gamma_a().vertex_count()}};
    m["inputs"]["gamma_b"] = {
        {"hash", hex64(fnv1a(complex_to_json(X.gamma_b())))},
        {"vertices", X.gamma_b().vertex_count()}};
    m["cells"] = {{"vertices", X.cell_count(0)},
                  {"edges", X.cell_count(1)},
                  {"squares", X.cell_count(2)},
                  {"cubes", X.cell_count(3)}};
    m["patterns"] = nlohmann::ordered_json::object();
    for (const auto& [pat, count] : X.pattern_counts()) m["patterns"][pat] = count;
    auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
    m["verdicts"]["links"] = links ? verdict(links->ok) : "not run";
    m["verdicts"]["npc"] = npc ? verdict(npc->ok) : "not run";
    m["verdicts"]["branching"] = branching ? verdict(branching->ok) : "not run";
    return m.dump(2) + "\n";
}

}  // namespace cubecert
