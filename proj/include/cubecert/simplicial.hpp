#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cubecert/error.hpp"

namespace cubecert {

// Vertices are small integer ids local to one complex; the cross-complex
// identity of a vertex is its string label.  Faces are strictly increasing
// id sequences.  The empty face (dimension -1) belongs to every complex.
using Vertex = std::uint32_t;
using Face = std::vector<Vertex>;

// Finite abstract simplicial complex stored by its maximal faces, with a
// closure-query API and lazily materialized per-dimension face lists.
// Optionally carries a partite structure (1-based part index per vertex).
// Immutable after construction: all queries are const and thread-safe.
class SimplicialComplex {
public:
    // The empty complex: no vertices, only the empty face, dimension -1.
    SimplicialComplex();

    // Normalizing constructor over label data.  Faces may be given in any
    // order and with redundant (contained) entries; `extra_vertices` adds
    // isolated vertices not covered by `faces`.  Throws InputError on a
    // repeated vertex within one face, or a part index < 1.
    SimplicialComplex(const std::vector<std::vector<std::string>>& faces,
                      const std::map<std::string, int>& parts = {},
                      const std::vector<std::string>& extra_vertices = {});

    // Fast path: `maximal` are sorted id-faces forming an antichain over a
    // fixed label table.  No normalization besides sorting of the face list;
    // callers (subdivision, octahedralisation, blowup links) guarantee the
    // antichain property.
    static SimplicialComplex from_parts(std::vector<std::string> labels,
                                        std::vector<Face> maximal,
                                        std::vector<int> part_of = {});

    int dim() const { return dim_; }
    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(v); }
    bool has_label(const std::string& s) const;
    Vertex id_of(const std::string& label) const;  // InputError when absent

    const std::vector<Face>& maximal_faces() const { return maximal_; }

    // Closure query: is the (sorted, id-based) face a subset of some
    // maximal face?  The empty face is always contained.
    bool contains(const Face& f) const;

    // All k-faces, sorted; computed on first use and cached.  k = -1 gives
    // the singleton list {empty face} on a nonvoid complex.
    const std::vector<Face>& faces(int k) const;
    std::size_t face_count(int k) const { return faces(k).size(); }
    // Total number of nonempty faces (used for isomorphism size bounds).
    std::size_t total_face_count() const;

    bool adjacent(Vertex u, Vertex v) const;
    const std::vector<std::vector<Vertex>>& neighbors() const;

    bool has_parts() const { return !part_.empty(); }
    int part(Vertex v) const;   // 1-based; PreconditionError when unset
    int part_count() const;     // max part index, 0 when unset
    const std::vector<int>& part_vector() const { return part_; }

    // Number of connected components of the 1-skeleton (isolated vertices
    // count); 0 for the empty complex.
    std::size_t component_count() const;
    // Component id per vertex, contiguous from 0, in vertex-id order.
    std::vector<std::size_t> component_ids() const;

    // Sorted labels of a face, for messages and serialization.
    std::vector<std::string> face_labels(const Face& f) const;
    Face face_of_labels(const std::vector<std::string>& ls) const;

    bool operator==(const SimplicialComplex& other) const;

private:
    std::vector<std::string> labels_;        // id -> label, sorted by label
    std::map<std::string, Vertex> index_;    // label -> id
    std::vector<Face> maximal_;              // sorted list of sorted faces
    std::vector<int> part_;                  // 1-based, empty when no parts
    int dim_ = -1;

    std::vector<std::vector<std::uint32_t>> vertex_to_maximal_;  // incidence
    std::vector<std::vector<Vertex>> nbrs_;

    // Lazy per-dimension face lists.  Behind a shared_ptr so copies stay
    // cheap and share one cache; the underlying complex data is immutable.
    struct FaceCache {
        std::mutex m;
        std::vector<std::optional<std::vector<Face>>> per_dim;
    };
    mutable std::shared_ptr<FaceCache> cache_;

    void finalize();  // builds incidence, adjacency, dim
};

// ---------------------------------------------------------------------------
// Operations.  All are pure functions of their inputs.
// ---------------------------------------------------------------------------

// Normalized complex from label faces; redundant faces removed.
SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& faces,
                                const std::map<std::string, int>& parts = {},
                                const std::vector<std::string>& extra_vertices = {});

// Lk(s, K) = { t : t disjoint from s, t U s in K }, labels preserved.
// The link of the empty face is K itself.  Throws PreconditionError when
// s is not a face of K.
SimplicialComplex link(const SimplicialComplex& K, const Face& s);
SimplicialComplex link(const SimplicialComplex& K, const std::vector<std::string>& s);

// Closed star: all faces of all cofaces of s (s itself included).
SimplicialComplex star(const SimplicialComplex& K, const Face& s);

// Full subcomplex spanned by a vertex subset (faces entirely inside it).
SimplicialComplex full_subcomplex(const SimplicialComplex& K,
                                  const std::vector<Vertex>& verts);

// Join: faces are all unions of a face of K1 and a face of K2.  Label
// collisions are resolved deterministically by prefixing "l:" / "r:".
// Part indices of K2 shift by K1's part count, so a join of partite
// complexes is partite (an empty factor counts as trivially partite);
// when exactly one factor with vertices has parts the result has none.
SimplicialComplex join(const SimplicialComplex& K1, const SimplicialComplex& K2);

// Flag test: every clique of the 1-skeleton spans a face.
bool is_flag(const SimplicialComplex& K);

// Barycentric subdivision: vertices are nonempty faces of K (labelled
// "{l1|l2|...}"), faces are chains.  Parts: barycenter of a d-face sits in
// part d+1, giving a (dim+1)-partite structure.
struct SubdivisionResult {
    SimplicialComplex complex;
    // For each subdivision vertex id, the K-face it is the barycenter of.
    std::vector<Face> barycenter_of;
};
SubdivisionResult barycentric_subdivision(const SimplicialComplex& K);

// Octahedralisation S(K): vertices v+ and v- per vertex v of K, faces all
// sign choices over faces of K.  Parts are inherited from the base vertex.
struct OctahedralisationResult {
    SimplicialComplex complex;
    std::vector<Vertex> base;  // S(K) vertex id -> K vertex id
    std::vector<int> sign;     // S(K) vertex id -> +1 / -1
};
OctahedralisationResult octahedralise(const SimplicialComplex& K);

// "No local cut points": connected, and every vertex link is connected
// with at least 2 vertices.  The reason string names the first defect.
struct NlcpResult {
    bool ok = false;
    std::string reason;
};
NlcpResult has_nlcp(const SimplicialComplex& K);

// True iff K's own partite structure is total and no edge joins two
// vertices of the same part.  Throws PreconditionError when K has no parts.
bool verify_partite(const SimplicialComplex& K);

// Exact isomorphism test (face-structure-preserving vertex bijection) by
// color refinement plus individualization backtracking; every candidate
// bijection is verified against the maximal-face sets before acceptance.
// Throws PreconditionError when either complex exceeds `face_bound` faces.
bool is_isomorphic(const SimplicialComplex& K1, const SimplicialComplex& K2,
                   std::size_t face_bound = 10000);

// Clique complex of a seeded random graph, rejection-sampled until it is
// connected with nlcp; deterministic per seed.  Throws PreconditionError
// when n_vertices < 4 or the sampling budget (500 draws) is exhausted.
SimplicialComplex random_flag_nlcp_complex(std::uint64_t seed, int n_vertices,
                                           double edge_density);

}  // namespace cubecert
