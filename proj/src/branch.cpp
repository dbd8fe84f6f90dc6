#include "cubecert/branch.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "cubecert/error.hpp"

namespace cubecert {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// permutations
// ---------------------------------------------------------------------------

Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& f, const Perm& g) {
    if (f.size() != g.size())
        throw InputError("cannot compose permutations of different degrees");
    Perm r(f.size());
    for (std::size_t x = 0; x < f.size(); ++x)
        r[x] = g[static_cast<std::size_t>(f[x])];
    return r;
}

Perm inverse_perm(const Perm& f) {
    Perm r(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) r[static_cast<std::size_t>(f[x])] = static_cast<int>(x);
    return r;
}

Perm perm_power(const Perm& f, int e) {
    Perm base = e < 0 ? inverse_perm(f) : f;
    int k = e < 0 ? -e : e;
    Perm acc = identity_perm(static_cast<int>(f.size()));
    while (k > 0) {  // binary powering; degrees here are tiny but free anyway
        if (k & 1) acc = compose(acc, base);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

bool is_identity(const Perm& f) {
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f[x] != static_cast<int>(x)) return false;
    return true;
}

std::vector<int> cycle_type(const Perm& f) {
    std::vector<int> lens;
    std::vector<bool> seen(f.size(), false);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        std::size_t y = x;
        while (!seen[y]) {
            seen[y] = true;
            y = static_cast<std::size_t>(f[y]);
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

bool is_single_cycle(const Perm& f) {
    return !f.empty() && cycle_type(f).size() == 1;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

long long pow_mod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

int multiplicative_order(int l, int q) {
    long long x = 1;
    for (int k = 1; k < q; ++k) {
        x = x * l % q;
        if (x == 1) return k;
    }
    return 0;  // not a unit
}

}  // namespace

int smallest_primitive_root(int q) {
    if (!is_prime(q)) throw InputError("primitive roots need a prime modulus");
    if (q == 2) return 1;
    for (int l = 2; l < q; ++l)
        if (multiplicative_order(l, q) == q - 1) return l;
    throw VerificationError("no primitive root found mod " + std::to_string(q));
}

PermPair make_perm_pair(int q, int l) {
    if (!is_prime(q))
        throw InputError("q = " + std::to_string(q) + " is not prime");
    if (l <= 0 || l >= q || multiplicative_order(l, q) != q - 1)
        throw InputError("l = " + std::to_string(l) +
                         " is not a primitive root mod " + std::to_string(q));
    PermPair p;
    p.q = q;
    p.l = l;
    p.alpha.resize(static_cast<std::size_t>(q));
    p.beta.resize(static_cast<std::size_t>(q));
    for (int x = 0; x < q; ++x) {
        p.alpha[static_cast<std::size_t>(x)] = (x + 1) % q;
        p.beta[static_cast<std::size_t>(x)] = static_cast<int>(static_cast<long long>(x) * l % q);
    }
    // the defining conjugation law, recomputed from the tables
    Perm conj = compose(compose(inverse_perm(p.beta), p.alpha), p.beta);
    if (conj != perm_power(p.alpha, l))
        throw VerificationError("conjugation law beta^-1 alpha beta = alpha^l failed");
    return p;
}

bool commutator_identity_check(const PermPair& p) {
    const int q = p.q;
    for (int a = 1; a < q; ++a) {
        const Perm A = perm_power(p.alpha, a);
        for (int b = 1; b < q - 1; ++b) {
            const Perm B = perm_power(p.beta, b);
            const Perm comm =
                compose(compose(compose(inverse_perm(A), inverse_perm(B)), A), B);
            const int e = static_cast<int>(
                static_cast<long long>(a) * ((pow_mod(p.l, b, q) - 1 + q) % q) % q);
            if (comm != perm_power(p.alpha, e)) return false;
            if (!is_single_cycle(comm)) return false;  // order q exactly
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// projection graphs
// ---------------------------------------------------------------------------

namespace {

using Key4 = std::array<std::int32_t, 4>;  // a_i, a_j, b_i, b_j; -1 = absent

int key_dim(const Key4& k) {
    return int(k[0] >= 0 && k[2] >= 0) + int(k[1] >= 0 && k[3] >= 0);
}

// class of a vertex key by sides: 0 A.A, 1 A.B, 2 B.B, 3 B.A (the removed one)
int key_class(const Key4& k) {
    const bool ai = k[0] >= 0, aj = k[1] >= 0;
    if (ai && aj) return 0;
    if (ai) return 1;
    if (aj) return 3;
    return 2;
}

}  // namespace

ProjectionGraph project_graphs(const CubeComplex& X, int k) {
    if (k < 1 || k > 3)
        throw InputError("coordinate to project away must be 1, 2 or 3");
    const int k0 = k - 1;
    const int gi = (k0 + 1) % 3, gj = (k0 + 2) % 3;  // kept coords, 0-based

    ProjectionGraph g;
    g.removed_coord = k;
    g.coords = {gi + 1, gj + 1};
    for (int t = 0; t < 2; ++t) {
        const int part = (t == 0 ? gi : gj) + 1;
        for (Vertex v = 0; v < X.gamma_a().vertex_count(); ++v)
            g.a_part_size[static_cast<std::size_t>(t)] += X.gamma_a().part(v) == part;
        for (Vertex v = 0; v < X.gamma_b().vertex_count(); ++v)
            g.b_part_size[static_cast<std::size_t>(t)] += X.gamma_b().part(v) == part;
    }
    const std::size_t nai = g.a_part_size[0], naj = g.a_part_size[1];
    const std::size_t nbi = g.b_part_size[0], nbj = g.b_part_size[1];
    g.xi_vertices = nai * naj + nai * nbj + nbi * nbj;
    g.xi_edges = nai * nbi * nbj + nai * naj * nbj;

    // project every cell of X and bucket the distinct images by dimension
    std::set<Key4> keys;
    for (const CubeVertex& v : X.vertices()) {
        Key4 key{-1, -1, -1, -1};
        for (int t = 0; t < 2; ++t) {
            const int c = t == 0 ? gi : gj;
            if (v.side[static_cast<std::size_t>(c)] == Side::A)
                key[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(v.coord[static_cast<std::size_t>(c)]);
            else
                key[static_cast<std::size_t>(t + 2)] = static_cast<std::int32_t>(v.coord[static_cast<std::size_t>(c)]);
        }
        keys.insert(key);
    }
    for (int d = 1; d <= 3; ++d)
        for (const Cell& c : X.cells(d))
            keys.insert(Key4{c.a[static_cast<std::size_t>(gi)], c.a[static_cast<std::size_t>(gj)],
                             c.b[static_cast<std::size_t>(gi)], c.b[static_cast<std::size_t>(gj)]});

    std::vector<Key4> verts, edges, squares;
    for (const Key4& key : keys) {
        switch (key_dim(key)) {
            case 0: verts.push_back(key); break;
            case 1: edges.push_back(key); break;
            default: squares.push_back(key); break;
        }
    }
    g.rho_vertices = verts.size();
    g.rho_edges = edges.size();
    g.rho_squares = squares.size();

    // Lambda nodes: everything except the B.A corners
    std::map<Key4, std::uint32_t> corner_index;
    for (const Key4& key : verts) {
        const int cls = key_class(key);
        if (cls == 3) {
            corner_index.emplace(key, static_cast<std::uint32_t>(g.corners.size()));
            ProjectionGraph::Corner c;
            c.bi = static_cast<Vertex>(key[2]);
            c.aj = static_cast<Vertex>(key[1]);
            c.label = "(" + X.gamma_b().label(c.bi) + "|" + X.gamma_a().label(c.aj) + ")";
            g.corners.push_back(std::move(c));
            continue;
        }
        ProjectionGraph::Node n;
        n.cls = cls;
        for (int t = 0; t < 2; ++t) {
            if (key[static_cast<std::size_t>(t)] >= 0) {
                n.coord[static_cast<std::size_t>(t)] = static_cast<Vertex>(key[static_cast<std::size_t>(t)]);
                n.side[static_cast<std::size_t>(t)] = Side::A;
            } else {
                n.coord[static_cast<std::size_t>(t)] = static_cast<Vertex>(key[static_cast<std::size_t>(t + 2)]);
                n.side[static_cast<std::size_t>(t)] = Side::B;
            }
        }
        n.label = "(" +
                  (n.side[0] == Side::A ? X.gamma_a().label(n.coord[0])
                                        : X.gamma_b().label(n.coord[0])) +
                  "|" +
                  (n.side[1] == Side::A ? X.gamma_a().label(n.coord[1])
                                        : X.gamma_b().label(n.coord[1])) +
                  ")";
        g.node_index.emplace(key, static_cast<std::uint32_t>(g.nodes.size()));
        g.nodes.push_back(std::move(n));
    }

    // Lambda edges: the image edges avoiding the removed corners.  [0] holds
    // the A-side endpoint of the varying coordinate, which orients every
    // edge A -> B for the labeling below.
    for (const Key4& key : edges) {
        const int t = (key[0] >= 0 && key[2] >= 0) ? 0 : 1;  // varying slot
        Key4 ka = key, kb = key;
        ka[static_cast<std::size_t>(t + 2)] = -1;  // A endpoint
        kb[static_cast<std::size_t>(t)] = -1;      // B endpoint
        if (key_class(ka) == 3 || key_class(kb) == 3) continue;
        const auto ia = g.node_index.find(ka), ib = g.node_index.find(kb);
        if (ia == g.node_index.end() || ib == g.node_index.end())
            throw VerificationError("projected edge with a missing endpoint");
        const auto eid = static_cast<std::uint32_t>(g.edges.size());
        g.edges.push_back({ia->second, ib->second});
        g.family.push_back(t);  // varying first coordinate = alpha family
        g.edge_index.emplace(std::minmax(ia->second, ib->second), eid);
    }

    // squares: verify the one-removable-corner law and collect corner stars
    for (const Key4& key : squares) {
        int removable = 0;
        Key4 ba{-1, -1, -1, -1};
        for (int s0 = 0; s0 < 2; ++s0)
            for (int s1 = 0; s1 < 2; ++s1) {
                const Key4 corner{s0 == 0 ? key[0] : std::int32_t(-1),
                                  s1 == 0 ? key[1] : std::int32_t(-1),
                                  s0 == 0 ? std::int32_t(-1) : key[2],
                                  s1 == 0 ? std::int32_t(-1) : key[3]};
                if (!keys.count(corner))
                    throw VerificationError("projected square with a missing corner");
                if (key_class(corner) == 3) {
                    ++removable;
                    ba = corner;
                }
            }
        if (removable != 1)
            throw VerificationError("projected square without exactly one removable corner");
        g.corners[corner_index.at(ba)].squares.emplace(static_cast<Vertex>(key[0]),
                                                       static_cast<Vertex>(key[3]));
    }
    for (auto& c : g.corners) {
        std::set<Vertex> as, ws;
        for (const auto& [a, w] : c.squares) {
            as.insert(a);
            ws.insert(w);
        }
        c.a_vals.assign(as.begin(), as.end());
        c.w_vals.assign(ws.begin(), ws.end());
    }
    return g;
}

// ---------------------------------------------------------------------------
// labeling and monodromy
// ---------------------------------------------------------------------------

EdgeLabeling label_graph(const ProjectionGraph& g, int q) {
    const std::size_t bound = std::max({g.a_part_size[0], g.a_part_size[1],
                                        g.b_part_size[0], g.b_part_size[1]});
    if (static_cast<std::size_t>(q) <= bound)
        throw InputError("q = " + std::to_string(q) +
                         " does not exceed the valence bound " + std::to_string(bound));

    EdgeLabeling L;
    L.pair = make_perm_pair(q, smallest_primitive_root(q));
    L.exponent.resize(g.edges.size());

    // ranks are taken inside the generator parts the two coordinates draw from
    // (the graph does not keep the generators, so rebuild them from the nodes)
    std::map<Vertex, int> rank_ai, rank_aj, rank_bj;
    {
        std::set<Vertex> ai, aj, bj;
        for (const auto& n : g.nodes) {
            if (n.side[0] == Side::A) ai.insert(n.coord[0]);
            if (n.side[1] == Side::A)
                aj.insert(n.coord[1]);
            else
                bj.insert(n.coord[1]);
        }
        int r = 1;
        for (Vertex v : ai) rank_ai[v] = r++;
        r = 1;
        for (Vertex v : aj) rank_aj[v] = r++;
        r = 1;
        for (Vertex v : bj) rank_bj[v] = r++;
    }

    // alpha edges carry the rank of their A-part endpoint; beta edges a
    // Latin-square mix of both ranks, so exponents are distinct both per
    // target (the labeling invariant) and per source (what makes the
    // four-loop monodromies nontrivial)
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& tail = g.nodes[g.edges[e][0]];
        const auto& head = g.nodes[g.edges[e][1]];
        if (g.family[e] == 0) {
            L.exponent[e] = rank_ai.at(tail.coord[0]);
        } else {
            const int s = (rank_aj.at(tail.coord[1]) + rank_bj.at(head.coord[1])) % (q - 1);
            L.exponent[e] = s == 0 ? q - 1 : s;
        }
    }

    // exhaustive distinctness of incoming labels, as permutations
    std::map<std::pair<std::uint32_t, int>, std::set<int>> seen;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int residue = g.family[e] == 0 ? L.exponent[e] % q : L.exponent[e] % (q - 1);
        if (!seen[{g.edges[e][1], g.family[e]}].insert(residue).second)
            throw VerificationError("duplicate incoming label at " +
                                    g.nodes[g.edges[e][1]].label);
    }
    return L;
}

Perm edge_permutation(const ProjectionGraph& g, const EdgeLabeling& L,
                      std::uint32_t e) {
    if (e >= g.edges.size()) throw InputError("edge id out of range");
    return perm_power(g.family[e] == 0 ? L.pair.alpha : L.pair.beta,
                      L.exponent[e]);
}

namespace {

std::optional<Perm> walk_loop(const ProjectionGraph& g, const EdgeLabeling& L,
                              const std::vector<std::uint32_t>& loop,
                              std::uint32_t start) {
    std::uint32_t cur = start;
    Perm acc = identity_perm(L.pair.q);
    for (std::uint32_t e : loop) {
        const auto [u, v] = std::pair(g.edges[e][0], g.edges[e][1]);
        if (cur == u) {
            acc = compose(acc, edge_permutation(g, L, e));
            cur = v;
        } else if (cur == v) {
            acc = compose(acc, inverse_perm(edge_permutation(g, L, e)));
            cur = u;
        } else {
            return std::nullopt;
        }
    }
    if (cur != start) return std::nullopt;
    return acc;
}

}  // namespace

Perm monodromy_of_loop(const ProjectionGraph& g, const EdgeLabeling& L,
                       const std::vector<std::uint32_t>& loop) {
    if (loop.empty()) throw InputError("empty edge path");
    for (std::uint32_t e : loop)
        if (e >= g.edges.size()) throw InputError("edge id out of range");
    if (auto m = walk_loop(g, L, loop, g.edges[loop[0]][0])) return *m;
    if (auto m = walk_loop(g, L, loop, g.edges[loop[0]][1])) return *m;
    throw InputError("edges do not chain into a closed loop");
}

// ---------------------------------------------------------------------------
// four-loop certificates
// ---------------------------------------------------------------------------

namespace {

std::optional<std::uint32_t> find_edge(const ProjectionGraph& g, std::uint32_t u,
                                       std::uint32_t v) {
    const auto it = g.edge_index.find(std::minmax(u, v));
    if (it == g.edge_index.end()) return std::nullopt;
    return it->second;
}

// The 8-edge retract loop of one 4-cycle (a1, w1, a2, w2) in the link of a
// removed corner: each square (a, w) contributes its two surviving edges.
// Returns nullopt when a node or edge is missing (reported by the caller).
std::optional<std::vector<std::uint32_t>> retract_loop(
    const ProjectionGraph& g, const ProjectionGraph::Corner& c, Vertex a1,
    Vertex a2, Vertex w1, Vertex w2) {
    const auto node = [&](const Key4& k) -> std::optional<std::uint32_t> {
        const auto it = g.node_index.find(k);
        if (it == g.node_index.end()) return std::nullopt;
        return it->second;
    };
    const auto aa = [&](Vertex a) {
        return node({static_cast<std::int32_t>(a), static_cast<std::int32_t>(c.aj), -1, -1});
    };
    const auto ab = [&](Vertex a, Vertex w) {
        return node({static_cast<std::int32_t>(a), -1, -1, static_cast<std::int32_t>(w)});
    };
    const auto bb = [&](Vertex w) {
        return node({-1, -1, static_cast<std::int32_t>(c.bi), static_cast<std::int32_t>(w)});
    };
    std::vector<std::uint32_t> loop;
    for (const auto& [a, w, rev] :
         {std::tuple(a1, w1, false), std::tuple(a2, w1, true),
          std::tuple(a2, w2, false), std::tuple(a1, w2, true)}) {
        const auto naa = aa(a), nab = ab(a, w), nbb = bb(w);
        if (!naa || !nab || !nbb) return std::nullopt;
        const auto beta = find_edge(g, *naa, *nab), alpha = find_edge(g, *nab, *nbb);
        if (!beta || !alpha) return std::nullopt;
        if (rev) {  // traversed from the B.B node back to the A.A node
            loop.push_back(*alpha);
            loop.push_back(*beta);
        } else {
            loop.push_back(*beta);
            loop.push_back(*alpha);
        }
    }
    return loop;
}

// Enumerate every 4-cycle of every corner link; the callback returns false
// to stop early (used for JSON sampling).
template <typename F>
void for_each_four_loop(const ProjectionGraph& g, F&& visit) {
    for (std::size_t ci = 0; ci < g.corners.size(); ++ci) {
        const auto& c = g.corners[ci];
        for (std::size_t x = 0; x < c.a_vals.size(); ++x)
            for (std::size_t y = x + 1; y < c.a_vals.size(); ++y)
                for (std::size_t s = 0; s < c.w_vals.size(); ++s)
                    for (std::size_t t = s + 1; t < c.w_vals.size(); ++t) {
                        const Vertex a1 = c.a_vals[x], a2 = c.a_vals[y];
                        const Vertex w1 = c.w_vals[s], w2 = c.w_vals[t];
                        if (!c.squares.count({a1, w1}) || !c.squares.count({a1, w2}) ||
                            !c.squares.count({a2, w1}) || !c.squares.count({a2, w2}))
                            continue;
                        if (!visit(ci, a1, a2, w1, w2)) return;
                    }
    }
}

}  // namespace

FourLoopReport four_loop_certificates(const ProjectionGraph& g,
                                      const EdgeLabeling& L) {
    constexpr std::size_t kFailureCap = 20;
    FourLoopReport r;
    r.corners = g.corners.size();
    for_each_four_loop(g, [&](std::size_t ci, Vertex a1, Vertex a2, Vertex w1,
                              Vertex w2) {
        ++r.loops;
        const auto fail = [&](const std::string& what) {
            if (r.failures.size() < kFailureCap) {
                std::ostringstream os;
                os << g.corners[ci].label << " a=(" << a1 << "," << a2 << ") w=("
                   << w1 << "," << w2 << "): " << what;
                r.failures.push_back(os.str());
            }
        };
        const auto loop = retract_loop(g, g.corners[ci], a1, a2, w1, w2);
        if (!loop) {
            fail("retract loop incomplete");
            return true;
        }
        if (!is_single_cycle(monodromy_of_loop(g, L, *loop)))
            fail("monodromy is not a single cycle");
        else
            ++r.transitive_loops;
        return true;
    });
    r.ok = r.failures.empty() && r.transitive_loops == r.loops;
    return r;
}

std::string four_loop_certificates_json(const ProjectionGraph& g,
                                        const EdgeLabeling& L,
                                        const FourLoopReport& r,
                                        std::size_t sample_cap) {
    ordered_json j;
    j["projection"] = {{"removed_coordinate", g.removed_coord},
                       {"pair", {g.coords[0], g.coords[1]}}};
    j["q"] = L.pair.q;
    j["l"] = L.pair.l;
    ordered_json labels = ordered_json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        labels.push_back({{"from", g.nodes[g.edges[e][0]].label},
                          {"to", g.nodes[g.edges[e][1]].label},
                          {"family", g.family[e] == 0 ? "alpha" : "beta"},
                          {"exponent", L.exponent[e]}});
    j["labels"] = std::move(labels);
    ordered_json sample = ordered_json::array();
    for_each_four_loop(g, [&](std::size_t ci, Vertex a1, Vertex a2, Vertex w1,
                              Vertex w2) {
        if (sample.size() >= sample_cap) return false;
        const auto loop = retract_loop(g, g.corners[ci], a1, a2, w1, w2);
        ordered_json row;
        row["corner"] = g.corners[ci].label;
        if (loop) {
            ordered_json path = ordered_json::array();
            for (std::uint32_t e : *loop)
                path.push_back(g.nodes[g.edges[e][0]].label + " - " +
                               g.nodes[g.edges[e][1]].label);
            row["path"] = std::move(path);
            const Perm m = monodromy_of_loop(g, L, *loop);
            row["cycle_type"] = cycle_type(m);
            row["transitive"] = is_single_cycle(m);
        } else {
            row["error"] = "retract loop incomplete";
        }
        sample.push_back(std::move(row));
        return true;
    });
    j["loops"] = {{"total", r.loops},
                  {"transitive", r.transitive_loops},
                  {"all_transitive", r.ok},
                  {"sample", std::move(sample)}};
    j["failures"] = r.failures;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// branched covers of link graphs
// ---------------------------------------------------------------------------

namespace {

struct MiniDsu {
    std::vector<std::uint32_t> parent;
    explicit MiniDsu(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

// orbits of the subgroup generated by `gens` acting on {0..deg-1}
std::size_t orbit_count(const std::vector<Perm>& gens, int deg) {
    MiniDsu dsu(static_cast<std::size_t>(deg));
    for (const Perm& p : gens)
        for (int x = 0; x < deg; ++x)
            dsu.unite(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(p[static_cast<std::size_t>(x)]));
    std::set<std::uint32_t> roots;
    for (int x = 0; x < deg; ++x) roots.insert(dsu.find(static_cast<std::uint32_t>(x)));
    return roots.size();
}

}  // namespace

BranchedCover branched_link_cover(const SimplicialComplex& link,
                                  const std::vector<Vertex>& branch_set,
                                  const GraphMonodromy& mono) {
    const std::size_t n = link.vertex_count();
    std::set<Vertex> branch(branch_set.begin(), branch_set.end());
    if (branch.size() != branch_set.size())
        throw InputError("repeated vertex in the branch set");
    for (Vertex b : branch_set)
        if (b >= n) throw InputError("branch vertex id out of range");
    for (Vertex b1 : branch_set)
        for (Vertex b2 : branch_set)
            if (b1 < b2 && link.adjacent(b1, b2))
                throw PreconditionError("branch vertices " + link.label(b1) +
                                        " and " + link.label(b2) + " are adjacent");
    if (mono.degree < 1) throw InputError("cover degree must be positive");
    const int deg = mono.degree;
    for (const auto& [key, p] : mono.edge_perm) {
        if (key.first >= key.second || key.second >= n)
            throw InputError("monodromy edges must be ordered pairs of vertex ids");
        std::vector<bool> hit(static_cast<std::size_t>(deg), false);
        bool bijection = p.size() == static_cast<std::size_t>(deg);
        for (int x : p)
            if (x < 0 || x >= deg || hit[static_cast<std::size_t>(x)])
                bijection = false;
            else
                hit[static_cast<std::size_t>(x)] = true;
        if (!bijection)
            throw InputError("monodromy entry is not a permutation of the fiber");
    }

    std::vector<Vertex> complement;
    for (Vertex v = 0; v < n; ++v)
        if (!branch.count(v)) complement.push_back(v);
    const SimplicialComplex G = full_subcomplex(link, complement);
    if (G.dim() > 1)
        throw PreconditionError("the complement of the branch set is not a graph");

    const auto transport = [&](Vertex u, Vertex v) {  // fiber map along u -> v
        const auto it = mono.edge_perm.find(std::minmax(u, v));
        const Perm p = it == mono.edge_perm.end() ? identity_perm(deg) : it->second;
        return u < v ? p : inverse_perm(p);
    };
    const auto lift_label = [&](Vertex v, int s) {
        return link.label(v) + "@" + std::to_string(s);
    };

    std::vector<std::vector<std::string>> faces;
    std::vector<std::string> isolated;
    for (Vertex v : complement) {
        const Vertex gv = G.id_of(link.label(v));
        if (G.neighbors()[gv].empty())
            for (int s = 0; s < deg; ++s) isolated.push_back(lift_label(v, s));
    }
    for (const Face& e : G.faces(1)) {
        const Vertex u = link.id_of(G.label(e[0])), v = link.id_of(G.label(e[1]));
        const Perm p = transport(u, v);
        for (int s = 0; s < deg; ++s)
            faces.push_back({lift_label(u, s), lift_label(v, p[static_cast<std::size_t>(s)])});
    }

    // branch vertices: lift the link of each one edgewise, cone off every
    // connected component of the lift with a fresh vertex, and cross-check
    // the component count against the orbits of the fiber action
    BranchedCover out;
    for (Vertex b : branch_set) {
        const std::vector<Vertex>& lb = link.neighbors()[b];
        std::map<Vertex, std::size_t> pos;
        for (std::size_t i = 0; i < lb.size(); ++i) pos[lb[i]] = i;
        std::vector<std::array<Vertex, 2>> lb_edges;
        for (std::size_t i = 0; i < lb.size(); ++i)
            for (std::size_t k = i + 1; k < lb.size(); ++k) {
                Face f{b, lb[i], lb[k]};
                std::sort(f.begin(), f.end());
                if (link.contains(f)) lb_edges.push_back({lb[i], lb[k]});
            }

        if (lb.empty()) {  // isolated branch vertex: a cone over nothing
            isolated.push_back(link.label(b) + "@c0");
            out.lifts_per_branch.push_back(1);
            continue;
        }

        MiniDsu dsu(lb.size() * static_cast<std::size_t>(deg));
        const auto id = [&](Vertex v, int s) {
            return static_cast<std::uint32_t>(pos.at(v) * static_cast<std::size_t>(deg) +
                                              static_cast<std::size_t>(s));
        };
        for (const auto& [u, w] : lb_edges) {
            const Perm p = transport(u, w);
            for (int s = 0; s < deg; ++s) dsu.unite(id(u, s), id(w, p[static_cast<std::size_t>(s)]));
        }
        std::map<std::uint32_t, std::size_t> comp_of;  // root -> cone index
        for (std::size_t i = 0; i < lb.size() * static_cast<std::size_t>(deg); ++i) {
            const std::uint32_t root = dsu.find(static_cast<std::uint32_t>(i));
            comp_of.emplace(root, comp_of.size());
        }

        // independent count: per component of the base link graph, the orbits
        // of the monodromies of its fundamental cycles acting on the fiber
        {
            MiniDsu base(lb.size());
            for (const auto& [u, w] : lb_edges) base.unite(static_cast<std::uint32_t>(pos[u]), static_cast<std::uint32_t>(pos[w]));
            std::map<std::uint32_t, std::vector<std::array<Vertex, 2>>> by_comp;
            for (const auto& e : lb_edges) by_comp[base.find(static_cast<std::uint32_t>(pos[e[0]]))].push_back(e);
            std::set<std::uint32_t> base_roots;
            for (std::size_t i = 0; i < lb.size(); ++i) base_roots.insert(base.find(static_cast<std::uint32_t>(i)));
            std::size_t expect = 0;
            for (std::uint32_t root : base_roots) {
                // spanning tree transport from the root vertex of the piece
                std::map<Vertex, Perm> T;
                const Vertex r0 = lb[root];
                T[r0] = identity_perm(deg);
                bool grew = true;
                std::vector<Perm> gens;
                while (grew) {
                    grew = false;
                    for (const auto& [u, w] : by_comp[root]) {
                        if (T.count(u) && !T.count(w)) {
                            T[w] = compose(T.at(u), transport(u, w));
                            grew = true;
                        } else if (T.count(w) && !T.count(u)) {
                            T[u] = compose(T.at(w), transport(w, u));
                            grew = true;
                        }
                    }
                }
                for (const auto& [u, w] : by_comp[root])
                    gens.push_back(compose(compose(T.at(u), transport(u, w)),
                                           inverse_perm(T.at(w))));
                expect += orbit_count(gens, deg);
            }
            if (expect != comp_of.size())
                throw VerificationError(
                    "fiber orbits disagree with the lifted link components at " +
                    link.label(b));
        }

        std::vector<std::set<std::string>> cone_members(comp_of.size());
        for (std::size_t i = 0; i < lb.size(); ++i)
            for (int s = 0; s < deg; ++s)
                cone_members[comp_of.at(dsu.find(id(lb[i], s)))].insert(
                    lift_label(lb[i], s));
        for (std::size_t c = 0; c < cone_members.size(); ++c) {
            const std::string apex = link.label(b) + "@c" + std::to_string(c);
            for (const std::string& m : cone_members[c]) faces.push_back({apex, m});
        }
        for (const auto& [u, w] : lb_edges) {
            const Perm p = transport(u, w);
            for (int s = 0; s < deg; ++s) {
                const std::string apex =
                    link.label(b) + "@c" +
                    std::to_string(comp_of.at(dsu.find(id(u, s))));
                faces.push_back({apex, lift_label(u, s),
                                 lift_label(w, p[static_cast<std::size_t>(s)])});
            }
        }
        out.lifts_per_branch.push_back(cone_members.size());
    }

    out.covered_vertices = complement.size() * static_cast<std::size_t>(deg);
    out.complex = build_complex(faces, {}, isolated);
    return out;
}

// ---------------------------------------------------------------------------
// ordering search
// ---------------------------------------------------------------------------

namespace {

// The link of v intersected with the union of the closed stars of `chosen`;
// for an empty `chosen` this is the link itself.
SimplicialComplex shelled_link(const SimplicialComplex& gamma, Vertex v,
                               const std::vector<Vertex>& chosen) {
    const SimplicialComplex lk = link(gamma, Face{v});
    if (chosen.empty()) return lk;
    std::vector<std::vector<std::string>> faces;
    std::vector<std::string> verts;
    for (int d = 0; d <= lk.dim(); ++d) {
        for (const Face& f : lk.faces(d)) {
            Face gf;  // the same face in gamma's ids
            for (Vertex x : f) gf.push_back(gamma.id_of(lk.label(x)));
            std::sort(gf.begin(), gf.end());
            bool in_star = false;
            for (Vertex u : chosen) {
                if (std::binary_search(gf.begin(), gf.end(), u)) {
                    in_star = true;
                    break;
                }
                Face uf = gf;
                uf.insert(std::lower_bound(uf.begin(), uf.end(), u), u);
                if (gamma.contains(uf)) {
                    in_star = true;
                    break;
                }
            }
            if (!in_star) continue;
            if (d == 0)
                verts.push_back(lk.label(f[0]));
            else
                faces.push_back(lk.face_labels(f));
        }
    }
    return build_complex(faces, {}, verts);
}

// every edge must lie on a simple 4-cycle within L
std::optional<std::string> edge_off_four_cycle(const SimplicialComplex& L) {
    const auto& nb = L.neighbors();
    for (const Face& e : L.faces(1)) {
        const Vertex u = e[0], w = e[1];
        bool on_cycle = false;
        for (Vertex x : nb[w]) {
            if (x == u) continue;
            for (Vertex y : nb[u]) {
                if (y == w || y == x) continue;
                if (L.adjacent(x, y)) {
                    on_cycle = true;
                    break;
                }
            }
            if (on_cycle) break;
        }
        if (!on_cycle)
            return "edge {" + L.label(u) + "," + L.label(w) + "} lies on no 4-cycle";
    }
    return std::nullopt;
}

}  // namespace

OrderingResult find_four_cycle_ordering(const SimplicialComplex& gamma,
                                        const std::vector<Vertex>& V,
                                        std::size_t budget) {
    if (V.empty()) throw InputError("ordering search needs a nonempty vertex set");
    {
        std::set<Vertex> s(V.begin(), V.end());
        if (s.size() != V.size()) throw InputError("repeated vertex in the ordering set");
        for (Vertex v : V)
            if (v >= gamma.vertex_count()) throw InputError("vertex id out of range");
    }

    OrderingResult res;
    std::set<std::vector<Vertex>> dead;  // sorted chosen sets with no extension
    std::vector<Vertex> order;
    std::vector<std::string> deepest_witness;
    std::size_t deepest = 0;
    bool out_of_budget = false;

    const auto reason_for = [&](Vertex v) -> std::optional<std::string> {
        const SimplicialComplex L = shelled_link(gamma, v, order);
        if (L.vertex_count() == 0) return "empty shelled link";
        if (L.component_count() != 1) return "shelled link is disconnected";
        if (!order.empty())
            if (auto bad = edge_off_four_cycle(L)) return bad;
        return std::nullopt;
    };

    const std::function<bool()> dfs = [&]() -> bool {
        if (order.size() == V.size()) return true;
        std::vector<Vertex> key = order;
        std::sort(key.begin(), key.end());
        if (dead.count(key)) return false;
        std::vector<std::string> local;
        for (Vertex v : V) {
            if (std::find(order.begin(), order.end(), v) != order.end()) continue;
            if (budget == 0) {
                out_of_budget = true;
                return false;
            }
            --budget;
            if (auto why = reason_for(v)) {
                local.push_back(gamma.label(v) + ": " + *why);
                continue;
            }
            order.push_back(v);
            if (dfs()) return true;
            order.pop_back();
            if (out_of_budget) return false;
            local.push_back(gamma.label(v) + ": every continuation is blocked");
        }
        if (order.size() >= deepest) {
            deepest = order.size();
            std::vector<std::string> w;
            std::string prefix = "after [";
            for (std::size_t i = 0; i < order.size(); ++i)
                prefix += (i ? " " : "") + gamma.label(order[i]);
            prefix += "]";
            w.push_back(prefix);
            w.insert(w.end(), local.begin(), local.end());
            deepest_witness = std::move(w);
        }
        dead.insert(std::move(key));
        return false;
    };

    if (dfs()) {
        res.found = true;
        res.ordering = order;
    } else {
        res.budget_exhausted = out_of_budget;
        res.witness = deepest_witness;
    }
    return res;
}

}  // namespace cubecert
