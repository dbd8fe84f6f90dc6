#pragma once

// Exact integer simplicial homology: sparse boundary matrices, Smith normal
// form with arbitrary-precision arithmetic, and the reduced homology groups
// derived from them.  Every connectivity or H_1 claim elsewhere in the
// toolkit ultimately bottoms out here, so all arithmetic is exact.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubecert/simplicial.hpp"

namespace cubecert {

using Int = boost::multiprecision::cpp_int;

// Sparse integer matrix; absent entries are zero.  Entries are kept in a
// row-major ordered map so the debug dump is deterministic.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Int v);          // v = 0 erases
    void add(std::size_t r, std::size_t c, const Int& v);   // accumulate

    const std::map<std::pair<std::size_t, std::size_t>, Int>& entries() const {
        return entries_;
    }
    std::size_t nonzero_count() const { return entries_.size(); }

    // Coordinate-triplet text dump, one "row col value" line per nonzero,
    // in row-major order.
    std::string dump() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, Int> entries_;
};

// Divisors form a divisibility chain d1 | d2 | ...; rank = divisors.size().
struct SNFResult {
    std::vector<Int> divisors;
    std::size_t rank = 0;
};

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Int> torsion;  // entries >= 2, ascending divisibility chain
    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

// Boundary matrices of the augmented (reduced) chain complex: result[k] is
// the map from k-chains to (k-1)-chains for k = 0..dim, rows and columns
// indexed by the position of each face in K.faces(k-1) / K.faces(k).  The
// unique (-1)-face is the empty face, so result[0] is the 1 x |V|
// augmentation row.  Signs alternate over the ascending vertex order.
std::vector<IntegerMatrix> boundary_matrices(const SimplicialComplex& K);

// Smith normal form over the integers: sparse elimination on +-1 pivots
// chosen by Markowitz cost first, dense reduction on whatever remains.
// Matrices with at most dense_threshold cells skip the sparse phase.
SNFResult smith_normal_form(const IntegerMatrix& M, std::size_t dense_threshold = 256);

// Reduced homology in dimension i by rank-nullity on the SNFs of the
// adjacent boundary maps.  Dimensions outside [0, dim] give the zero group.
HomologyGroup homology(const SimplicialComplex& K, int i);

// Number of connected components of the 1-skeleton, by union-find.  Always
// equals reduced b_0 + 1 on non-empty complexes.
std::size_t connected_components(const SimplicialComplex& K);

// {"betti":n, "torsion":[...]} serialization.
std::string homology_to_json(const HomologyGroup& H);

}  // namespace cubecert
