#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cubecert/blowup.hpp"
#include "cubecert/simplicial.hpp"

namespace cubecert {

// ---------------------------------------------------------------------------
// Branched-cover machinery: concrete permutation pairs, projections of the
// blowup onto two coordinates, edge labelings with their monodromy
// certificates, branched covers of link graphs, and the ordering search
// used for the connectivity argument.
// ---------------------------------------------------------------------------

// Permutations of {0..n-1}; composition is left-to-right: (fg)(x) = g(f(x)).
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& f, const Perm& g);
Perm inverse_perm(const Perm& f);
Perm perm_power(const Perm& f, int e);  // e may be negative
bool is_identity(const Perm& f);
// Sorted (descending) cycle lengths.
std::vector<int> cycle_type(const Perm& f);
// True iff f is a single cycle through all points (a transitive cyclic action).
bool is_single_cycle(const Perm& f);

bool is_prime(int n);
// Smallest generator of the multiplicative group mod q; InputError when q is
// not an odd prime.
int smallest_primitive_root(int q);

// alpha = x+1 and beta = x*l on Z/q, so beta^-1 alpha beta = alpha^l.
// The conjugation identity is recomputed and asserted on construction.
struct PermPair {
    int q = 0;
    int l = 0;
    Perm alpha, beta;
};
PermPair make_perm_pair(int q, int l);

// Exhaustive check of [alpha^a, beta^b] = alpha^(a(l^b - 1)) for all
// 0 < a < q, 0 < b < q-1, including that each commutator has order q.
bool commutator_identity_check(const PermPair& p);

// Projection of the blowup away from one coordinate.  The image is a square
// complex over the two kept coordinates; removing the open stars of its
// corners with (B, A) sides leaves the retract graph Lambda, whose edges
// split into the alpha family (the first kept coordinate varies, the second
// is B-side) and the beta family (the second varies, the first is A-side).
struct ProjectionGraph {
    int removed_coord = 0;        // 1-based coordinate that was projected away
    std::array<int, 2> coords{};  // the kept coordinates, 1-based, cyclic order

    struct Node {
        std::array<Vertex, 2> coord;  // generator vertex ids per kept coordinate
        std::array<Side, 2> side;
        std::string label;
        int cls = 0;  // 0 = A.A, 1 = A.B, 2 = B.B
    };
    std::vector<Node> nodes;                        // Lambda vertices
    std::vector<std::array<std::uint32_t, 2>> edges;  // [0] = A end of the
                                                      // varying coordinate
    std::vector<int> family;                          // 0 = alpha, 1 = beta
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_index;

    // removed corners with their star data: incident squares pair an A-part
    // vertex of the first coordinate with a B-part neighbor on the second
    struct Corner {
        Vertex bi = 0;  // B-side generator at the first kept coordinate
        Vertex aj = 0;  // A-side generator at the second
        std::string label;
        std::vector<Vertex> a_vals;                  // distinct square partners
        std::vector<Vertex> w_vals;
        std::set<std::pair<Vertex, Vertex>> squares;  // (a, w) pairs present
    };
    std::vector<Corner> corners;

    // node lookup by (a_i, a_j, b_i, b_j) slots, -1 for the absent side
    std::map<std::array<std::int32_t, 4>, std::uint32_t> node_index;

    // bookkeeping: the projected complex and the abstract ambient graph
    std::size_t rho_vertices = 0, rho_edges = 0, rho_squares = 0;
    std::size_t xi_vertices = 0, xi_edges = 0;
    std::array<std::size_t, 2> a_part_size{}, b_part_size{};
};
// k is the 1-based coordinate to project away; the kept pair follows the
// cyclic order (k+1, k+2).
ProjectionGraph project_graphs(const CubeComplex& X, int k);

// Rank labeling of a projection graph: alpha edges carry the rank of their
// A-part endpoint, beta edges a Latin-square combination of the ranks of
// their two varying endpoints, so labels into a target vertex are pairwise
// distinct (verified exhaustively) and the four-loop monodromies below are
// forced away from the identity.  Requires q prime and larger than every
// part size involved (the valence bound).
struct EdgeLabeling {
    PermPair pair;
    std::vector<int> exponent;  // per Lambda edge, in label order
};
EdgeLabeling label_graph(const ProjectionGraph& g, int q);

// Permutation of one edge (a power of alpha or beta by family).
Perm edge_permutation(const ProjectionGraph& g, const EdgeLabeling& L,
                      std::uint32_t e);

// Ordered product of edge labels along a closed edge path, inverting
// against the edge orientation.  InputError when the edges do not chain
// into a closed loop.
Perm monodromy_of_loop(const ProjectionGraph& g, const EdgeLabeling& L,
                       const std::vector<std::uint32_t>& loop);

// Every 4-cycle in the link of every removed corner, realized as the
// 8-edge retract loop in Lambda; the certificate records whether each
// monodromy is a single q-cycle (hence a transitive fiber action).
struct FourLoopReport {
    bool ok = false;
    std::size_t corners = 0;
    std::size_t loops = 0;
    std::size_t transitive_loops = 0;
    std::vector<std::string> failures;
};
FourLoopReport four_loop_certificates(const ProjectionGraph& g,
                                      const EdgeLabeling& L);
// Deterministic JSON certificate: q, l, the label table, aggregate counts
// and a capped sample of per-loop cycle types.
std::string four_loop_certificates_json(const ProjectionGraph& g,
                                        const EdgeLabeling& L,
                                        const FourLoopReport& r,
                                        std::size_t sample_cap = 25);

// Fiberwise transport data for a graph cover: one permutation of {0..deg-1}
// per edge, keyed by the ordered vertex pair (u, v) with u < v; missing
// edges transport by the identity.
struct GraphMonodromy {
    int degree = 1;
    std::map<std::pair<Vertex, Vertex>, Perm> edge_perm;
};

// Branched cover of a complex whose non-branch part is a graph: the graph
// is covered fiberwise, then every connected lift of the link of each
// branch vertex is coned off by a fresh vertex.  Preconditions: branch
// vertices pairwise non-adjacent, and the complement a complex of
// dimension <= 1.  The per-branch lift counts are cross-checked against
// the orbit count of the monodromy action on the fiber; a mismatch throws
// VerificationError.
struct BranchedCover {
    SimplicialComplex complex;
    std::vector<std::size_t> lifts_per_branch;
    std::size_t covered_vertices = 0;  // lifts of non-branch vertices
};
BranchedCover branched_link_cover(const SimplicialComplex& link,
                                  const std::vector<Vertex>& branch_set,
                                  const GraphMonodromy& mono);

// Ordering search: arrange V so that the link of each vertex, intersected
// with the union of the closed stars of the earlier ones, is nonempty,
// connected, and has every edge on a 4-cycle inside it (for the first
// vertex: nonempty connected link).  Depth-first with memoized dead
// prefixes; `witness` describes the deepest blocked prefix on failure.
struct OrderingResult {
    bool found = false;
    bool budget_exhausted = false;
    std::vector<Vertex> ordering;
    std::vector<std::string> witness;
};
OrderingResult find_four_cycle_ordering(const SimplicialComplex& gamma,
                                        const std::vector<Vertex>& V,
                                        std::size_t budget = 100000);

}  // namespace cubecert
