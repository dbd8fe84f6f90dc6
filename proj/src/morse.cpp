#include "cubecert/morse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "cubecert/error.hpp"

namespace cubecert {

namespace {

constexpr std::size_t kFailureCap = 20;

int sign_of(const std::map<std::string, int>& signs, const std::string& label) {
    auto it = signs.find(label);
    if (it == signs.end() || (it->second != 1 && it->second != -1))
        throw PreconditionError("morse signs are not total: no sign for '" +
                                label + "'");
    return it->second;
}

// first-half-positive split of one generator, per part, in label order
void half_split(const SimplicialComplex& g, std::map<std::string, int>& out) {
    std::map<int, std::vector<Vertex>> by_part;
    for (Vertex v = 0; v < g.vertex_count(); ++v) by_part[g.part(v)].push_back(v);
    for (auto& [p, vs] : by_part) {
        std::size_t plus = (vs.size() + 1) / 2;  // ids are already label-sorted
        for (std::size_t i = 0; i < vs.size(); ++i)
            out[g.label(vs[i])] = i < plus ? 1 : -1;
    }
}

// direction-label parsing: "<coord+1><A|B>:<generator label>"
struct Direction {
    int coord;
    Side side;
    std::string gen;
};
Direction parse_direction(const std::string& label) {
    return {label[0] - '1', label[1] == 'A' ? Side::A : Side::B, label.substr(3)};
}

// does the edge from v toward this link direction point away from v?
bool outgoing(const CubeComplex& X, const MorseSigns& signs, const CubeVertex& v,
              const Direction& d) {
    if (v.side[d.coord] == Side::A) {
        // v supplies the A corner, the direction vertex the B corner
        return sign_of(signs.a_sign, X.gamma_a().label(v.coord[d.coord])) ==
               sign_of(signs.b_sign, d.gen);
    }
    return sign_of(signs.a_sign, d.gen) !=
           sign_of(signs.b_sign, X.gamma_b().label(v.coord[d.coord]));
}

SimplicialComplex half_link(const CubeComplex& X, const MorseSigns& signs,
                            std::size_t v, bool want_outgoing) {
    SimplicialComplex lk = vertex_link(X, v);
    const CubeVertex& cv = X.vertices()[v];
    std::vector<Vertex> keep;
    for (Vertex u = 0; u < lk.vertex_count(); ++u)
        if (outgoing(X, signs, cv, parse_direction(lk.label(u))) == want_outgoing)
            keep.push_back(u);
    return full_subcomplex(lk, keep);
}

// canonical 6-int key of a cell, for edge lookup by descriptor
std::array<std::int32_t, 6> cell_key(const Cell& c) {
    return {c.a[0], c.a[1], c.a[2], c.b[0], c.b[1], c.b[2]};
}

std::map<std::array<std::int32_t, 6>, std::uint32_t> edge_index(
    const CubeComplex& X) {
    std::map<std::array<std::int32_t, 6>, std::uint32_t> idx;
    for (std::uint32_t e = 0; e < X.cells(1).size(); ++e)
        idx[cell_key(X.cells(1)[e])] = e;
    return idx;
}

int edge_direction(const Cell& e) {
    for (int k = 0; k < 3; ++k)
        if (e.a[k] >= 0 && e.b[k] >= 0) return k;
    throw InputError("cell is not an edge");
}

// endpoints of an edge ordered (A-side corner, B-side corner)
std::array<std::uint32_t, 2> edge_ends(const CubeComplex& X, std::uint32_t e) {
    const Cell& c = X.cells(1)[e];
    int k = edge_direction(c);
    auto cs = X.corners(c);
    auto c0 = static_cast<std::uint32_t>(cs[0]);
    auto c1 = static_cast<std::uint32_t>(cs[1]);
    if (X.vertices()[cs[0]].side[k] == Side::A) return {c0, c1};
    return {c1, c0};
}

int mod_floor(int x, int d) { return ((x % d) + d) % d; }

// plain union-find over window vertices
struct Dsu {
    std::vector<std::uint32_t> up;
    explicit Dsu(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[a] = b;
        return true;
    }
};

}  // namespace

MorseSigns make_morse_signs(const SimplicialComplex& gamma_a,
                            const SimplicialComplex& gamma_b) {
    MorseSigns s;
    half_split(gamma_a, s.a_sign);
    half_split(gamma_b, s.b_sign);
    return s;
}

MorseSigns make_morse_signs(const BlowupInputs& in) {
    MorseSigns s;
    half_split(in.gamma_a, s.a_sign);
    const auto& twice = in.twice;
    for (Vertex v = 0; v < twice.complex.vertex_count(); ++v)
        s.b_sign[twice.complex.label(v)] = twice.sign[v];
    return s;
}

EdgeOrientations orient_edges(const CubeComplex& X, const MorseSigns& signs) {
    EdgeOrientations o;
    o.toward_b.reserve(X.cells(1).size());
    for (const Cell& e : X.cells(1)) {
        int k = edge_direction(e);
        int sa = sign_of(signs.a_sign, X.gamma_a().label(e.a[k]));
        int sb = sign_of(signs.b_sign, X.gamma_b().label(e.b[k]));
        o.toward_b.push_back(sa == sb ? 1 : -1);
    }
    // weight-sum law around every square, through the stored values
    auto idx = edge_index(X);
    for (const Cell& s : X.cells(2)) {
        int k1 = -1, k2 = -1;
        for (int k = 0; k < 3; ++k)
            if (s.a[k] >= 0 && s.b[k] >= 0) (k1 < 0 ? k1 : k2) = k;
        Cell bottom = s, top = s, left = s, right = s;
        bottom.b[k2] = -1;
        top.a[k2] = -1;
        left.b[k1] = -1;
        right.a[k1] = -1;
        int sum = o.toward_b[idx.at(cell_key(bottom))] +
                  o.toward_b[idx.at(cell_key(right))] -
                  o.toward_b[idx.at(cell_key(top))] -
                  o.toward_b[idx.at(cell_key(left))];
        if (sum != 0)
            throw VerificationError(
                "edge weights do not sum to zero around a square");
    }
    return o;
}

SimplicialComplex ascending_link(const CubeComplex& X, const MorseSigns& signs,
                                 std::size_t v) {
    return half_link(X, signs, v, true);
}

SimplicialComplex descending_link(const CubeComplex& X, const MorseSigns& signs,
                                  std::size_t v) {
    return half_link(X, signs, v, false);
}

MorseLinkReport verify_morse_links(const CubeComplex& X, const MorseSigns& signs,
                                   const BlowupInputs& in) {
    if (!(X.gamma_a() == in.gamma_a) || !(X.gamma_b() == in.twice.complex))
        throw PreconditionError(
            "verify_morse_links: complex was not built from the bundled "
            "generators");
    const SimplicialComplex& ga = X.gamma_a();
    const SimplicialComplex& gb = X.gamma_b();

    // sign census of the A-side parts: count[part][0] = positive vertices
    std::array<std::array<std::size_t, 2>, 4> a_census{};
    for (Vertex u = 0; u < ga.vertex_count(); ++u) {
        int s = sign_of(signs.a_sign, ga.label(u));
        ++a_census[static_cast<std::size_t>(ga.part(u))][s > 0 ? 0 : 1];
    }

    MorseLinkReport report;
    struct ClassData {
        CensusRow row;
        bool iso_ok = true;
    };
    std::map<std::string, ClassData> classes;
    std::map<std::string, MorseLinkRow> rows;

    auto fail = [&](MorseLinkRow& row, const std::string& msg) {
        ++row.failures;
        if (row.first_failure.empty()) row.first_failure = msg;
        if (report.failures.size() < kFailureCap) report.failures.push_back(msg);
    };

    // predicted model of one half-link: the once-octahedralised link of the
    // chain in the subdivision, joined with one discrete sign-filtered
    // A-part per B-side coordinate
    auto model = [&](const Face& chain, const std::string& pattern,
                     const std::string& signstr, bool asc) {
        SimplicialComplex m =
            octahedralise(link(in.subdivision.complex, chain)).complex;
        for (int i = 0; i < 3; ++i) {
            if (pattern[static_cast<std::size_t>(i)] != 'B') continue;
            int bs = signstr[static_cast<std::size_t>(i)] == '+' ? 1 : -1;
            // ascending wants disagreeing A-signs, descending agreeing ones
            bool want_plus = asc ? bs < 0 : bs > 0;
            std::size_t n =
                a_census[static_cast<std::size_t>(i + 1)][want_plus ? 0 : 1];
            std::vector<std::string> vs;
            for (std::size_t t = 0; t < n; ++t)
                vs.push_back("c" + std::to_string(i + 1) + "_" + std::to_string(t));
            m = join(m, build_complex({}, {}, vs));
        }
        return m;
    };

    for (std::size_t v = 0; v < X.cell_count(0); ++v) {
        const CubeVertex& cv = X.vertices()[v];
        std::string pattern = X.pattern(v);
        MorseLinkRow& row = rows[pattern];
        row.pattern = pattern;
        ++row.vertices;
        ++report.vertices_checked;

        SimplicialComplex lk = vertex_link(X, v);  // exact link law inside
        Face chain;
        std::string signstr;
        for (int i = 0; i < 3; ++i) {
            if (cv.side[i] == Side::A) {
                signstr +=
                    sign_of(signs.a_sign, ga.label(cv.coord[i])) > 0 ? '+' : '-';
            } else {
                signstr +=
                    sign_of(signs.b_sign, gb.label(cv.coord[i])) > 0 ? '+' : '-';
                chain.push_back(in.once.base[in.twice.base[cv.coord[i]]]);
            }
        }
        std::sort(chain.begin(), chain.end());

        std::vector<Vertex> up, down;
        std::array<std::size_t, 3> up_at{}, down_at{};
        for (Vertex u = 0; u < lk.vertex_count(); ++u) {
            Direction d = parse_direction(lk.label(u));
            if (outgoing(X, signs, cv, d)) {
                up.push_back(u);
                ++up_at[static_cast<std::size_t>(d.coord)];
            } else {
                down.push_back(u);
                ++down_at[static_cast<std::size_t>(d.coord)];
            }
        }
        // per-coordinate laws: at a B-side coordinate the ascending count is
        // the number of opposite-signed A-part vertices
        for (int i = 0; i < 3; ++i) {
            if (cv.side[i] != Side::B) continue;
            int bs = sign_of(signs.b_sign, gb.label(cv.coord[i]));
            std::size_t expect =
                a_census[static_cast<std::size_t>(i + 1)][bs > 0 ? 1 : 0];
            if (up_at[static_cast<std::size_t>(i)] != expect)
                fail(row, "vertex " + X.vertex_name(v) + ": coordinate " +
                              std::to_string(i + 1) + " has " +
                              std::to_string(up_at[static_cast<std::size_t>(i)]) +
                              " ascending directions, expected " +
                              std::to_string(expect));
            std::size_t total = a_census[static_cast<std::size_t>(i + 1)][0] +
                                a_census[static_cast<std::size_t>(i + 1)][1];
            if (up_at[static_cast<std::size_t>(i)] +
                    down_at[static_cast<std::size_t>(i)] !=
                total)
                fail(row, "vertex " + X.vertex_name(v) + ": coordinate " +
                              std::to_string(i + 1) +
                              " directions do not partition the part");
        }

        std::string chain_str;
        for (Vertex c : chain) chain_str += std::to_string(c) + ",";
        std::string base_key = pattern + "/" + chain_str + "/" + signstr;
        for (bool asc : {true, false}) {
            std::string key = base_key + (asc ? "/asc" : "/desc");
            auto it = classes.find(key);
            if (it == classes.end()) {
                SimplicialComplex direct =
                    full_subcomplex(lk, asc ? up : down);
                SimplicialComplex predicted = model(chain, pattern, signstr, asc);
                ClassData cd;
                cd.iso_ok = is_isomorphic(direct, predicted);
                ++report.iso_checks;
                ++row.classes;
                cd.row.representative = key;
                cd.row.connected = direct.component_count() == 1;
                cd.row.h1 = homology(direct, 1);
                cd.row.full_shape = chain.empty();
                if (!cd.iso_ok)
                    fail(row, "class " + key +
                                  ": computed link is not isomorphic to the "
                                  "predicted model");
                it = classes.emplace(key, std::move(cd)).first;
            }
            ++it->second.row.count;
        }
    }

    for (auto& [pat, row] : rows) report.rows.push_back(row);
    for (auto& [key, cd] : classes) report.census.push_back(cd.row);
    report.ok = true;
    for (const auto& row : report.rows)
        if (row.failures) report.ok = false;
    return report;
}

LevelWindow cyclic_cover_window(const CubeComplex& X, const EdgeOrientations& o,
                                int radius) {
    if (radius < 0) throw InputError("window radius must be nonnegative");
    if (o.toward_b.size() != X.cells(1).size())
        throw PreconditionError("edge orientations do not match the complex");
    const std::size_t n = X.cell_count(0);
    LevelWindow W;
    W.lo = -radius;
    W.hi = radius;

    std::vector<std::array<std::uint32_t, 2>> ends(X.cells(1).size());
    for (std::uint32_t e = 0; e < X.cells(1).size(); ++e) ends[e] = edge_ends(X, e);

    // potentials per component by BFS; weights go A corner -> B corner
    std::vector<int> phi(n, 0);
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::deque<std::uint32_t> q{root};
        while (!q.empty()) {
            std::uint32_t u = q.front();
            q.pop_front();
            for (std::uint32_t e : X.incident(1, u)) {
                std::uint32_t other = ends[e][0] == u ? ends[e][1] : ends[e][0];
                int delta = ends[e][0] == u ? o.toward_b[e] : -o.toward_b[e];
                if (seen[other]) continue;
                seen[other] = 1;
                phi[other] = phi[u] + delta;
                q.push_back(other);
            }
        }
    }
    int d = 0;
    for (std::uint32_t e = 0; e < ends.size(); ++e)
        d = std::gcd(d, std::abs(phi[ends[e][0]] + o.toward_b[e] - phi[ends[e][1]]));
    W.level_gcd = d;

    // vertex lifts, in (base vertex, level) order
    std::map<std::pair<std::uint32_t, int>, std::uint32_t> vid;
    std::vector<std::vector<std::pair<int, std::uint32_t>>> lifts_of(n);
    auto add_lift = [&](std::uint32_t v, int k) {
        std::uint32_t id = static_cast<std::uint32_t>(W.vertices.size());
        vid[{v, k}] = id;
        lifts_of[v].push_back({k, id});
        W.vertices.push_back({v, k});
    };
    for (std::uint32_t v = 0; v < n; ++v) {
        if (d == 0) {
            if (phi[v] >= W.lo && phi[v] <= W.hi) add_lift(v, phi[v]);
        } else {
            for (int k = W.lo + mod_floor(phi[v] - W.lo, d); k <= W.hi; k += d)
                add_lift(v, k);
        }
    }

    // edge lifts, keyed by (base edge, lifted A corner)
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> weid;
    for (std::uint32_t e = 0; e < ends.size(); ++e)
        for (auto [lvl, wa] : lifts_of[ends[e][0]]) {
            auto it = vid.find({ends[e][1], lvl + o.toward_b[e]});
            if (it == vid.end()) continue;
            weid[{e, wa}] = static_cast<std::uint32_t>(W.edges.size());
            W.edges.push_back({wa, it->second});
            W.edge_base.push_back(e);
        }

    auto idx = edge_index(X);
    // square lifts: anchor at the lift of the all-A corner
    for (const Cell& s : X.cells(2)) {
        int k1 = -1, k2 = -1;
        for (int k = 0; k < 3; ++k)
            if (s.a[k] >= 0 && s.b[k] >= 0) (k1 < 0 ? k1 : k2) = k;
        std::array<std::uint32_t, 4> corner{};  // index bit0 = k1 side, bit1 = k2
        for (std::uint32_t c : X.corners(s)) {
            const CubeVertex& cv = X.vertices()[c];
            int b = (cv.side[k1] == Side::B ? 1 : 0) +
                    (cv.side[k2] == Side::B ? 2 : 0);
            corner[static_cast<std::size_t>(b)] = c;
        }
        Cell bottom = s, top = s, left = s, right = s;
        bottom.b[k2] = -1;
        top.a[k2] = -1;
        left.b[k1] = -1;
        right.a[k1] = -1;
        std::uint32_t eB = idx.at(cell_key(bottom)), eT = idx.at(cell_key(top));
        std::uint32_t eL = idx.at(cell_key(left)), eR = idx.at(cell_key(right));
        int wb = o.toward_b[eB], wl = o.toward_b[eL], wr = o.toward_b[eR];
        for (auto [lvl, wAA] : lifts_of[corner[0]]) {
            auto iBA = vid.find({corner[1], lvl + wb});
            auto iAB = vid.find({corner[2], lvl + wl});
            auto iBB = vid.find({corner[3], lvl + wb + wr});
            if (iBA == vid.end() || iAB == vid.end() || iBB == vid.end()) continue;
            W.squares.push_back({weid.at({eB, wAA}), weid.at({eR, iBA->second}),
                                 weid.at({eT, iAB->second}),
                                 weid.at({eL, wAA})});
        }
    }

    // 3-cells are only counted
    for (const Cell& c : X.cells(3)) {
        std::array<int, 3> step{};
        for (int k = 0; k < 3; ++k) {
            Cell e = c;
            for (int j = 0; j < 3; ++j)
                if (j != k) e.b[j] = -1;  // freeze the other coordinates at A
            step[k] = o.toward_b[idx.at(cell_key(e))];
        }
        std::array<std::uint32_t, 8> corner{};
        std::array<int, 8> rel{};
        for (std::uint32_t cn : X.corners(c)) {
            const CubeVertex& cv = X.vertices()[cn];
            int b = 0, r = 0;
            for (int k = 0; k < 3; ++k)
                if (cv.side[k] == Side::B) {
                    b |= 1 << k;
                    r += step[k];
                }
            corner[static_cast<std::size_t>(b)] = cn;
            rel[static_cast<std::size_t>(b)] = r;
        }
        for (auto [lvl, w0] : lifts_of[corner[0]]) {
            (void)w0;
            bool all = true;
            for (int b = 1; b < 8 && all; ++b)
                all = vid.count({corner[static_cast<std::size_t>(b)],
                                 lvl + rel[static_cast<std::size_t>(b)]}) > 0;
            if (all) ++W.cube_count;
        }
    }
    return W;
}

LevelComparison level_inclusion_homology(const CubeComplex& X,
                                         const MorseSigns& signs,
                                         const LevelWindow& small,
                                         const LevelWindow& big) {
    if (small.lo < big.lo || small.hi > big.hi)
        throw PreconditionError("small window range is not inside the big one");
    std::map<std::pair<std::uint32_t, int>, std::uint32_t> bigvid;
    for (std::uint32_t i = 0; i < big.vertices.size(); ++i)
        bigvid[big.vertices[i]] = i;
    std::vector<std::uint32_t> into(small.vertices.size());
    for (std::uint32_t i = 0; i < small.vertices.size(); ++i) {
        auto it = bigvid.find(small.vertices[i]);
        if (it == bigvid.end())
            throw PreconditionError(
                "windows disagree: a small-window vertex has no lift in the "
                "big window");
        into[i] = it->second;
    }

    LevelComparison out;
    out.added_vertices = big.vertices.size() - small.vertices.size();

    // H0: the component map must be a bijection
    Dsu ds(small.vertices.size()), db(big.vertices.size());
    for (const auto& e : small.edges) ds.unite(e[0], e[1]);
    for (const auto& e : big.edges) db.unite(e[0], e[1]);
    std::set<std::uint32_t> comps_small, comps_big, hit;
    for (std::uint32_t i = 0; i < small.vertices.size(); ++i)
        comps_small.insert(ds.find(i));
    for (std::uint32_t i = 0; i < big.vertices.size(); ++i)
        comps_big.insert(db.find(i));
    std::map<std::uint32_t, std::uint32_t> comp_map;
    bool injective = true;
    for (std::uint32_t i = 0; i < small.vertices.size(); ++i) {
        std::uint32_t sc = ds.find(i), bc = db.find(into[i]);
        auto [it, fresh] = comp_map.emplace(sc, bc);
        (void)it;
        if (fresh && hit.count(bc)) injective = false;
        hit.insert(bc);
    }
    out.small_components = comps_small.size();
    out.big_components = comps_big.size();
    out.h0_iso = injective && hit.size() == comps_big.size() &&
                 comp_map.size() == comps_small.size();

    // H1 surjectivity over the big window's non-tree edge coordinates
    Dsu forest(big.vertices.size());
    std::vector<std::uint32_t> nt;  // non-tree big edges
    std::map<std::uint32_t, std::size_t> nt_row;
    for (std::uint32_t e = 0; e < big.edges.size(); ++e)
        if (!forest.unite(big.edges[e][0], big.edges[e][1])) {
            nt_row[e] = nt.size();
            nt.push_back(e);
        }
    out.h1_rank_big = nt.size();
    if (nt.empty()) {
        out.h1_onto = true;
    } else {
        // boundaries of the big squares, projected to non-tree coordinates
        std::vector<std::map<std::size_t, Int>> cols;
        for (const auto& s : big.squares) {
            std::map<std::size_t, Int> col;
            auto put = [&](std::uint32_t e, int c) {
                auto it = nt_row.find(e);
                if (it == nt_row.end()) return;
                col[it->second] += c;
                if (col[it->second] == 0) col.erase(it->second);
            };
            put(s[0], 1);
            put(s[1], 1);
            put(s[2], -1);
            put(s[3], -1);
            if (!col.empty()) cols.push_back(std::move(col));
        }
        // fundamental cycles of the small window, pushed into the big one
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> big_edge;
        for (std::uint32_t e = 0; e < big.edges.size(); ++e)
            big_edge[{big.edges[e][0], big.edges[e][1]}] = e;
        // BFS forest of the small window with parent edges
        std::vector<std::int64_t> parent_edge(small.vertices.size(), -1);
        std::vector<std::uint32_t> parent(small.vertices.size(), 0);
        std::vector<int> depth(small.vertices.size(), -1);
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(
            small.vertices.size());  // (other, edge)
        for (std::uint32_t e = 0; e < small.edges.size(); ++e) {
            adj[small.edges[e][0]].push_back({small.edges[e][1], e});
            adj[small.edges[e][1]].push_back({small.edges[e][0], e});
        }
        for (std::uint32_t root = 0; root < small.vertices.size(); ++root) {
            if (depth[root] >= 0) continue;
            depth[root] = 0;
            std::deque<std::uint32_t> q{root};
            while (!q.empty()) {
                std::uint32_t u = q.front();
                q.pop_front();
                for (auto [w, e] : adj[u])
                    if (depth[w] < 0) {
                        depth[w] = depth[u] + 1;
                        parent[w] = u;
                        parent_edge[w] = e;
                        q.push_back(w);
                    }
            }
        }
        std::set<std::uint32_t> small_tree;
        for (std::uint32_t v = 0; v < small.vertices.size(); ++v)
            if (parent_edge[v] >= 0)
                small_tree.insert(static_cast<std::uint32_t>(parent_edge[v]));
        for (std::uint32_t f = 0; f < small.edges.size(); ++f) {
            if (small_tree.count(f)) continue;
            // cycle = f plus the tree path from head back to tail
            std::map<std::uint32_t, int> cyc;  // small edge -> coefficient
            cyc[f] += 1;
            std::uint32_t x = small.edges[f][1], y = small.edges[f][0];
            while (x != y) {
                if (depth[x] < depth[y]) std::swap(x, y);
                std::uint32_t e = static_cast<std::uint32_t>(parent_edge[x]);
                // traversing x -> parent(x): +1 when x is the edge's tail
                cyc[e] += small.edges[e][0] == x ? 1 : -1;
                x = parent[x];
            }
            std::map<std::size_t, Int> col;
            for (auto [e, c] : cyc) {
                if (c == 0) continue;
                std::uint32_t be = big_edge.at(
                    {into[small.edges[e][0]], into[small.edges[e][1]]});
                auto it = nt_row.find(be);
                if (it != nt_row.end()) col[it->second] += c;
            }
            for (auto it = col.begin(); it != col.end();)
                it = it->second == 0 ? col.erase(it) : std::next(it);
            if (!col.empty()) cols.push_back(std::move(col));
        }
        IntegerMatrix M(nt.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [r, val] : cols[j]) M.set(r, j, val);
        SNFResult snf = smith_normal_form(M);
        out.h1_onto = snf.rank == nt.size();
        for (const Int& dv : snf.divisors)
            if (dv != 1) out.h1_onto = false;
    }

    // hypothesis: every added vertex has nonempty connected asc/desc links
    std::vector<std::uint8_t> in_image(big.vertices.size(), 0);
    for (std::uint32_t i : into) in_image[i] = 1;
    std::map<std::uint32_t, bool> cache;
    out.shells_connected = true;
    for (std::uint32_t i = 0; i < big.vertices.size(); ++i) {
        if (in_image[i]) continue;
        std::uint32_t base = big.vertices[i].first;
        auto it = cache.find(base);
        if (it == cache.end()) {
            bool good =
                ascending_link(X, signs, base).component_count() == 1 &&
                descending_link(X, signs, base).component_count() == 1;
            it = cache.emplace(base, good).first;
        }
        if (!it->second) {
            out.shells_connected = false;
            break;
        }
    }

    if (out.shells_connected && !(out.h0_iso && out.h1_onto))
        throw VerificationError(
            "window inclusion: all added links are connected but the "
            "homology conclusion fails (H0 iso: " +
            std::string(out.h0_iso ? "yes" : "no") +
            ", H1 onto: " + std::string(out.h1_onto ? "yes" : "no") + ")");
    return out;
}

std::string finiteness_report(const std::vector<CensusRow>& census,
                              const FinitenessAssumptions& assumptions) {
    nlohmann::ordered_json j;
    j["census"] = nlohmann::ordered_json::array();
    for (const auto& row : census) {
        nlohmann::ordered_json r;
        r["representative"] = row.representative;
        r["count"] = row.count;
        r["connected"] = row.connected;
        r["h1"] = {{"betti", row.h1.betti}, {"torsion", nlohmann::json::array()}};
        for (const auto& t : row.h1.torsion)
            r["h1"]["torsion"].push_back(t.convert_to<long long>());
        r["full_shape"] = row.full_shape;
        j["census"].push_back(r);
    }

    auto line = [](const std::string& verdict, std::vector<std::string> computed,
                   std::vector<std::string> assumed) {
        nlohmann::ordered_json l;
        l["verdict"] = verdict;
        l["computed"] = computed;
        l["assumed"] = assumed;
        return l;
    };
    j["lines"] = nlohmann::ordered_json::array();
    std::string final_verdict;

    const CensusRow* disconnected = nullptr;
    for (const auto& row : census)
        if (!row.connected) {
            disconnected = &row;
            break;
        }
    if (census.empty()) {
        j["lines"].push_back(line("no finiteness conclusion",
                                  {"link census is empty"}, {}));
        final_verdict = "no finiteness conclusion";
    } else if (disconnected) {
        j["lines"].push_back(line(
            "no finiteness conclusion",
            {"link class '" + disconnected->representative + "' is disconnected"},
            {}));
        final_verdict = "no finiteness conclusion";
    } else {
        std::string connectivity = "all " + std::to_string(census.size()) +
                                   " link classes are nonempty and connected";
        j["lines"].push_back(line("connectivity evidence", {connectivity}, {}));
        final_verdict = "connectivity evidence only";
        if (assumptions.links_simply_connected) {
            j["lines"].push_back(
                line("finitely presented", {connectivity},
                     {"links simply connected: " + assumptions.links_note}));
            final_verdict = "finitely presented";
        }
        if (assumptions.base_group_perfect_nontrivial) {
            const CensusRow* witness = nullptr;
            for (const auto& row : census)
                if (row.full_shape && row.h1.trivial()) {
                    witness = &row;
                    break;
                }
            if (witness) {
                j["lines"].push_back(line(
                    "FP2 but not finitely presented",
                    {"full-shape link class '" + witness->representative +
                         "' has trivial first homology",
                     connectivity},
                    {"base group nontrivial and perfect: " +
                     assumptions.base_note}));
                final_verdict = "FP2 but not finitely presented";
            }
        }
    }
    j["verdict"] = final_verdict;
    j["assumptions"] = {
        {"links_simply_connected", assumptions.links_simply_connected},
        {"links_note", assumptions.links_note},
        {"base_group_perfect_nontrivial",
         assumptions.base_group_perfect_nontrivial},
        {"base_note", assumptions.base_note}};
    return j.dump(2) + "\n";
}

}  // namespace cubecert
