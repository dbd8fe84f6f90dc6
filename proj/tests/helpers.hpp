#pragma once

// Small complex builders shared by the test binaries.

#include <map>
#include <string>
#include <vector>

#include "cubecert/simplicial.hpp"

namespace testutil {

using cubecert::SimplicialComplex;
using cubecert::build_complex;

// n isolated vertices "<prefix>1".."<prefix>n"
// Discrete set on n vertices, carrying a one-part partite structure so
// joins of discrete sets compose into genuinely multipartite complexes.
inline SimplicialComplex discrete(int n, const std::string& prefix = "p") {
    std::vector<std::string> verts;
    std::map<std::string, int> parts;
    for (int i = 1; i <= n; ++i) {
        verts.push_back(prefix + std::to_string(i));
        parts[verts.back()] = 1;
    }
    return build_complex({}, parts, verts);
}

inline SimplicialComplex cycle(int n, const std::string& prefix = "c") {
    std::vector<std::vector<std::string>> faces;
    for (int i = 0; i < n; ++i)
        faces.push_back({prefix + std::to_string(i), prefix + std::to_string((i + 1) % n)});
    return build_complex(faces);
}

inline SimplicialComplex path_graph(int n, const std::string& prefix = "q") {
    std::vector<std::vector<std::string>> faces;
    for (int i = 0; i + 1 < n; ++i)
        faces.push_back({prefix + std::to_string(i), prefix + std::to_string(i + 1)});
    return build_complex(faces);
}

// full simplex on the given labels
inline SimplicialComplex simplex(const std::vector<std::string>& labels) {
    return build_complex({labels});
}

// boundary of the simplex on the given labels (all proper faces)
inline SimplicialComplex simplex_boundary(const std::vector<std::string>& labels) {
    std::vector<std::vector<std::string>> faces;
    for (std::size_t skip = 0; skip < labels.size(); ++skip) {
        std::vector<std::string> f;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (i != skip) f.push_back(labels[i]);
        faces.push_back(std::move(f));
    }
    return build_complex(faces);
}

// The minimal (6-vertex) triangulation of the projective plane, i.e. the
// antipodal quotient of the icosahedron.
inline SimplicialComplex projective_plane() {
    return build_complex({{"1", "2", "3"},
                          {"1", "3", "4"},
                          {"1", "4", "5"},
                          {"1", "2", "6"},
                          {"1", "5", "6"},
                          {"2", "3", "5"},
                          {"2", "4", "5"},
                          {"2", "4", "6"},
                          {"3", "4", "6"},
                          {"3", "5", "6"}});
}

}  // namespace testutil
