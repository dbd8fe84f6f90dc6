#include "cubecert/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cubecert {

Int IntegerMatrix::get(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Int(0) : it->second;
}

void IntegerMatrix::set(std::size_t r, std::size_t c, Int v) {
    if (v == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = std::move(v);
}

void IntegerMatrix::add(std::size_t r, std::size_t c, const Int& v) {
    auto it = entries_.find({r, c});
    if (it == entries_.end()) {
        if (v != 0) entries_.emplace(std::make_pair(r, c), v);
        return;
    }
    it->second += v;
    if (it->second == 0) entries_.erase(it);
}

std::string IntegerMatrix::dump() const {
    std::ostringstream out;
    for (const auto& [rc, v] : entries_)
        out << rc.first << ' ' << rc.second << ' ' << v << '\n';
    return out.str();
}

namespace {

// Single boundary map from k-chains to (k-1)-chains of the augmented
// complex; see boundary_matrices for the conventions.
IntegerMatrix boundary_matrix(const SimplicialComplex& K, int k) {
    const auto& cols = K.faces(k);
    const auto& rows = K.faces(k - 1);
    IntegerMatrix M(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Face& f = cols[c];
        for (std::size_t j = 0; j < f.size(); ++j) {
            Face sub = f;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(j));
            auto it = std::lower_bound(rows.begin(), rows.end(), sub);
            M.set(static_cast<std::size_t>(it - rows.begin()), c,
                  j % 2 == 0 ? 1 : -1);
        }
    }
    return M;
}

// Dense Smith normal form used on whatever the sparse phase leaves behind.
// Textbook: pull the smallest entry into the corner, run Euclidean row and
// column reductions until the cross clears, enforce divisibility, advance.
std::vector<Int> dense_snf(std::vector<std::vector<Int>> M) {
    std::vector<Int> out;
    const std::size_t nr = M.size();
    const std::size_t nc = nr ? M[0].size() : 0;
    for (std::size_t t = 0; t < nr && t < nc; ++t) {
        for (;;) {
            std::size_t pr = nr, pc = nc;
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j)
                    if (M[i][j] != 0 &&
                        (pr == nr || abs(M[i][j]) < abs(M[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == nr) return out;  // rest of the block is zero
            std::swap(M[t], M[pr]);
            if (pc != t)
                for (std::size_t i = 0; i < nr; ++i) std::swap(M[i][t], M[i][pc]);

            bool again = false;
            for (std::size_t i = t + 1; i < nr; ++i)
                if (M[i][t] != 0) {
                    Int q = M[i][t] / M[t][t];
                    for (std::size_t j = t; j < nc; ++j) M[i][j] -= q * M[t][j];
                    if (M[i][t] != 0) again = true;  // Euclidean remainder left
                }
            for (std::size_t j = t + 1; j < nc; ++j)
                if (M[t][j] != 0) {
                    Int q = M[t][j] / M[t][t];
                    for (std::size_t i = t; i < nr; ++i) M[i][j] -= q * M[i][t];
                    if (M[t][j] != 0) again = true;
                }
            if (again) continue;
            // divisibility fix-up: fold any offending row into row t
            bool fixed = true;
            for (std::size_t i = t + 1; i < nr && fixed; ++i)
                for (std::size_t j = t + 1; j < nc && fixed; ++j)
                    if (M[i][j] % M[t][t] != 0) {
                        for (std::size_t jj = t; jj < nc; ++jj) M[t][jj] += M[i][jj];
                        fixed = false;
                    }
            if (fixed) break;
        }
        out.push_back(abs(M[t][t]));
    }
    return out;
}

}  // namespace

std::vector<IntegerMatrix> boundary_matrices(const SimplicialComplex& K) {
    std::vector<IntegerMatrix> out;
    for (int k = 0; k <= K.dim(); ++k) out.push_back(boundary_matrix(K, k));
    return out;
}

SNFResult smith_normal_form(const IntegerMatrix& M, std::size_t dense_threshold) {
    // Sparse phase: eliminate unit pivots chosen by Markowitz cost
    // (fill-in bound (row_nnz-1)*(col_nnz-1)).  Each unit pivot contributes
    // a divisor 1; clearing its column by row operations and then dropping
    // the pivot row and column is a unimodular reduction, so the SNF of the
    // input is the identity block plus the SNF of what remains.
    std::vector<std::map<std::size_t, Int>> rows(M.rows());
    std::vector<std::set<std::size_t>> col_rows(M.cols());
    for (const auto& [rc, v] : M.entries()) {
        rows[rc.first][rc.second] = v;
        col_rows[rc.second].insert(rc.first);
    }
    std::vector<bool> row_alive(M.rows(), true), col_alive(M.cols(), true);
    std::size_t ones = 0;
    if (M.rows() * M.cols() > dense_threshold) {
        for (;;) {
            std::size_t best_r = M.rows(), best_c = 0;
            std::size_t best_cost = SIZE_MAX;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (!row_alive[r]) continue;
                for (const auto& [c, v] : rows[r]) {
                    if (v != 1 && v != -1) continue;
                    std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_r = r;
                        best_c = c;
                    }
                }
                if (best_cost == 0) break;
            }
            if (best_r == M.rows()) break;  // no +-1 pivots left

            const Int eps = rows[best_r][best_c];  // +1 or -1
            std::vector<std::size_t> victims(col_rows[best_c].begin(),
                                             col_rows[best_c].end());
            for (std::size_t r : victims) {
                if (r == best_r) continue;
                Int factor = rows[r][best_c] * eps;  // a / eps for unit eps
                for (const auto& [c, v] : rows[best_r]) {
                    auto it = rows[r].find(c);
                    if (it == rows[r].end()) {
                        rows[r][c] = -factor * v;
                        col_rows[c].insert(r);
                    } else {
                        it->second -= factor * v;
                        if (it->second == 0) {
                            rows[r].erase(it);
                            col_rows[c].erase(r);
                        }
                    }
                }
            }
            for (const auto& [c, v] : rows[best_r]) col_rows[c].erase(best_r);
            rows[best_r].clear();
            row_alive[best_r] = false;
            col_alive[best_c] = false;
            ++ones;
        }
    }

    // Dense phase on the surviving block.
    std::vector<std::size_t> rmap, cmap(M.cols(), SIZE_MAX);
    for (std::size_t r = 0; r < M.rows(); ++r)
        if (row_alive[r] && !rows[r].empty()) rmap.push_back(r);
    std::size_t n_alive_cols = 0;
    for (std::size_t c = 0; c < M.cols(); ++c)
        if (col_alive[c] && !col_rows[c].empty()) cmap[c] = n_alive_cols++;
    std::vector<std::vector<Int>> block(rmap.size(),
                                        std::vector<Int>(n_alive_cols, 0));
    for (std::size_t i = 0; i < rmap.size(); ++i)
        for (const auto& [c, v] : rows[rmap[i]])
            if (cmap[c] != SIZE_MAX) block[i][cmap[c]] = v;

    SNFResult res;
    res.divisors.assign(ones, Int(1));
    for (Int& d : dense_snf(std::move(block))) res.divisors.push_back(std::move(d));
    res.rank = res.divisors.size();
    return res;
}

HomologyGroup homology(const SimplicialComplex& K, int i) {
    HomologyGroup H;
    if (i < 0 || i > K.dim()) return H;
    const std::size_t n = K.face_count(i);
    const std::size_t r_low = smith_normal_form(boundary_matrix(K, i)).rank;
    SNFResult above;
    if (i < K.dim()) above = smith_normal_form(boundary_matrix(K, i + 1));
    H.betti = n - r_low - above.rank;
    for (const Int& d : above.divisors)
        if (d > 1) H.torsion.push_back(d);
    return H;
}

std::size_t connected_components(const SimplicialComplex& K) {
    // union-find, deliberately independent of the BFS in the simplicial
    // module so the two can cross-check each other
    std::vector<std::size_t> parent(K.vertex_count());
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    if (K.dim() >= 1)
        for (const Face& e : K.faces(1)) parent[find(e[0])] = find(e[1]);
    std::size_t n = 0;
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (find(v) == v) ++n;
    return n;
}

std::string homology_to_json(const HomologyGroup& H) {
    std::ostringstream out;
    out << "{\"betti\":" << H.betti << ",\"torsion\":[";
    for (std::size_t i = 0; i < H.torsion.size(); ++i)
        out << (i ? "," : "") << H.torsion[i];
    out << "]}";
    return out.str();
}

}  // namespace cubecert
