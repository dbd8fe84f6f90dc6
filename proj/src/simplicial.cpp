#include "cubecert/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace cubecert {

namespace {

bool is_subset(const Face& a, const Face& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Face face_difference(const Face& a, const Face& b) {
    Face out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Keep only the maximal elements of a list of sorted faces.
std::vector<Face> antichain(std::vector<Face> faces) {
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Face> keep;
    for (const auto& f : faces) {
        bool contained = false;
        for (const auto& g : keep) {
            if (g.size() > f.size() && is_subset(f, g)) { contained = true; break; }
        }
        if (!contained) keep.push_back(f);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

SimplicialComplex::SimplicialComplex() { finalize(); }

SimplicialComplex::SimplicialComplex(const std::vector<std::vector<std::string>>& faces,
                                     const std::map<std::string, int>& parts,
                                     const std::vector<std::string>& extra_vertices) {
    std::set<std::string> label_set(extra_vertices.begin(), extra_vertices.end());
    for (const auto& f : faces)
        for (const auto& l : f) label_set.insert(l);
    labels_.assign(label_set.begin(), label_set.end());
    for (Vertex i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;

    std::vector<Face> raw;
    for (const auto& f : faces) {
        Face g;
        g.reserve(f.size());
        for (const auto& l : f) g.push_back(index_.at(l));
        std::sort(g.begin(), g.end());
        if (std::adjacent_find(g.begin(), g.end()) != g.end())
            throw InputError("face contains a duplicate vertex");
        raw.push_back(std::move(g));
    }
    // Isolated vertices become maximal 0-faces.
    for (const auto& l : extra_vertices) raw.push_back({index_.at(l)});
    maximal_ = antichain(std::move(raw));

    if (!parts.empty()) {
        part_.assign(labels_.size(), 0);
        for (const auto& [l, p] : parts) {
            if (p < 1) throw InputError("part indices are 1-based; got " + std::to_string(p));
            auto it = index_.find(l);
            if (it == index_.end())
                throw InputError("part assigned to unknown vertex '" + l + "'");
            part_[it->second] = p;
        }
        for (Vertex v = 0; v < labels_.size(); ++v)
            if (part_[v] == 0)
                throw InputError("partite structure not total: vertex '" + labels_[v] +
                                 "' has no part");
    }
    finalize();
}

SimplicialComplex SimplicialComplex::from_parts(std::vector<std::string> labels,
                                                std::vector<Face> maximal,
                                                std::vector<int> part_of) {
    // Re-sort so that vertex ids are ordered by label (the class invariant).
    std::vector<Vertex> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return labels[a] < labels[b]; });
    std::vector<Vertex> remap(labels.size());
    for (Vertex i = 0; i < order.size(); ++i) remap[order[i]] = i;

    SimplicialComplex K;
    K.labels_.resize(labels.size());
    for (Vertex old = 0; old < labels.size(); ++old) K.labels_[remap[old]] = labels[old];
    for (Vertex i = 0; i + 1 < K.labels_.size(); ++i)
        if (K.labels_[i] == K.labels_[i + 1]) throw InputError("duplicate vertex label");
    for (Vertex i = 0; i < K.labels_.size(); ++i) K.index_[K.labels_[i]] = i;
    for (auto& f : maximal) {
        for (auto& v : f) v = remap.at(v);
        std::sort(f.begin(), f.end());
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    // the empty face is implicit, never stored
    maximal.erase(std::remove_if(maximal.begin(), maximal.end(),
                                 [](const Face& f) { return f.empty(); }),
                  maximal.end());
    K.maximal_ = std::move(maximal);
    if (!part_of.empty()) {
        K.part_.resize(labels.size());
        for (Vertex old = 0; old < part_of.size(); ++old)
            K.part_[remap[old]] = part_of[old];
    }
    K.finalize();
    return K;
}

void SimplicialComplex::finalize() {
    dim_ = -1;
    for (const auto& f : maximal_)
        dim_ = std::max(dim_, static_cast<int>(f.size()) - 1);

    vertex_to_maximal_.assign(labels_.size(), {});
    for (std::uint32_t i = 0; i < maximal_.size(); ++i)
        for (Vertex v : maximal_[i]) vertex_to_maximal_[v].push_back(i);

    std::vector<std::set<Vertex>> nb(labels_.size());
    for (const auto& f : maximal_)
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b) {
                nb[f[a]].insert(f[b]);
                nb[f[b]].insert(f[a]);
            }
    nbrs_.clear();
    nbrs_.reserve(labels_.size());
    for (auto& s : nb) nbrs_.emplace_back(s.begin(), s.end());

    cache_ = std::make_shared<FaceCache>();
    cache_->per_dim.assign(static_cast<std::size_t>(dim_ + 2), std::nullopt);
}

bool SimplicialComplex::has_label(const std::string& s) const {
    return index_.count(s) != 0;
}

Vertex SimplicialComplex::id_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown vertex label '" + label + "'");
    return it->second;
}

bool SimplicialComplex::contains(const Face& f) const {
    if (f.empty()) return true;
    if (f.back() >= labels_.size()) return false;
    for (std::uint32_t i : vertex_to_maximal_[f[0]])
        if (is_subset(f, maximal_[i])) return true;
    return false;
}

const std::vector<Face>& SimplicialComplex::faces(int k) const {
    static const std::vector<Face> none;
    static const std::vector<Face> just_empty{Face{}};
    if (k < -1 || k > dim_) return k == -1 ? just_empty : none;
    if (k == -1) return just_empty;

    std::lock_guard<std::mutex> lock(cache_->m);
    auto& slot = cache_->per_dim[static_cast<std::size_t>(k + 1)];
    if (!slot) {
        std::set<Face> acc;
        std::size_t want = static_cast<std::size_t>(k) + 1;
        for (const auto& mf : maximal_) {
            if (mf.size() < want) continue;
            // all (k+1)-subsets of mf via combination indices
            std::vector<std::size_t> idx(want);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                Face f(want);
                for (std::size_t t = 0; t < want; ++t) f[t] = mf[idx[t]];
                acc.insert(std::move(f));
                std::size_t t = want;
                while (t > 0 && idx[t - 1] == mf.size() - want + (t - 1)) --t;
                if (t == 0) break;
                ++idx[t - 1];
                for (std::size_t s = t; s < want; ++s) idx[s] = idx[s - 1] + 1;
            }
        }
        slot = std::vector<Face>(acc.begin(), acc.end());
    }
    return *slot;
}

std::size_t SimplicialComplex::total_face_count() const {
    std::size_t n = 0;
    for (int k = 0; k <= dim_; ++k) n += face_count(k);
    return n;
}

bool SimplicialComplex::adjacent(Vertex u, Vertex v) const {
    if (u >= nbrs_.size() || v >= nbrs_.size()) return false;
    const auto& nu = nbrs_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

const std::vector<std::vector<Vertex>>& SimplicialComplex::neighbors() const {
    return nbrs_;
}

int SimplicialComplex::part(Vertex v) const {
    if (part_.empty()) throw PreconditionError("complex has no partite structure");
    return part_.at(v);
}

int SimplicialComplex::part_count() const {
    int n = 0;
    for (int p : part_) n = std::max(n, p);
    return n;
}

std::vector<std::size_t> SimplicialComplex::component_ids() const {
    std::vector<std::size_t> comp(labels_.size(), SIZE_MAX);
    std::size_t next = 0;
    for (Vertex s = 0; s < labels_.size(); ++s) {
        if (comp[s] != SIZE_MAX) continue;
        comp[s] = next;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : nbrs_[u])
                if (comp[w] == SIZE_MAX) {
                    comp[w] = next;
                    q.push(w);
                }
        }
        ++next;
    }
    return comp;
}

std::size_t SimplicialComplex::component_count() const {
    auto ids = component_ids();
    std::size_t n = 0;
    for (auto c : ids) n = std::max(n, c + 1);
    return labels_.empty() ? 0 : n;
}

std::vector<std::string> SimplicialComplex::face_labels(const Face& f) const {
    std::vector<std::string> out;
    out.reserve(f.size());
    for (Vertex v : f) out.push_back(labels_.at(v));
    return out;
}

Face SimplicialComplex::face_of_labels(const std::vector<std::string>& ls) const {
    Face f;
    f.reserve(ls.size());
    for (const auto& l : ls) f.push_back(id_of(l));
    std::sort(f.begin(), f.end());
    return f;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
    return labels_ == other.labels_ && maximal_ == other.maximal_ && part_ == other.part_;
}

// ---------------------------------------------------------------------------

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& faces,
                                const std::map<std::string, int>& parts,
                                const std::vector<std::string>& extra_vertices) {
    return SimplicialComplex(faces, parts, extra_vertices);
}

namespace {

// Rebuild a complex from a subset of K's vertices and a list of maximal
// faces over K's ids, preserving labels and (restricted) parts.
SimplicialComplex subcomplex_from(const SimplicialComplex& K, std::vector<Face> maximal) {
    std::set<Vertex> used;
    for (const auto& f : maximal) used.insert(f.begin(), f.end());

    std::vector<Vertex> verts(used.begin(), used.end());
    std::vector<Vertex> remap(K.vertex_count(), 0);
    std::vector<std::string> labels;
    std::vector<int> parts;
    labels.reserve(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        remap[verts[i]] = static_cast<Vertex>(i);
        labels.push_back(K.label(verts[i]));
        if (K.has_parts()) parts.push_back(K.part(verts[i]));
    }
    for (auto& f : maximal)
        for (auto& v : f) v = remap[v];
    return SimplicialComplex::from_parts(std::move(labels), antichain(std::move(maximal)),
                                         std::move(parts));
}

}  // namespace

SimplicialComplex link(const SimplicialComplex& K, const Face& s) {
    if (s.empty()) return K;
    if (!K.contains(s)) throw PreconditionError("link: argument is not a face");
    std::vector<Face> maximal;
    for (const auto& mf : K.maximal_faces())
        if (is_subset(s, mf)) maximal.push_back(face_difference(mf, s));
    return subcomplex_from(K, std::move(maximal));
}

SimplicialComplex link(const SimplicialComplex& K, const std::vector<std::string>& s) {
    return link(K, K.face_of_labels(s));
}

SimplicialComplex star(const SimplicialComplex& K, const Face& s) {
    if (!K.contains(s)) throw PreconditionError("star: argument is not a face");
    std::vector<Face> maximal;
    for (const auto& mf : K.maximal_faces())
        if (is_subset(s, mf)) maximal.push_back(mf);
    return subcomplex_from(K, std::move(maximal));
}

SimplicialComplex full_subcomplex(const SimplicialComplex& K,
                                  const std::vector<Vertex>& verts) {
    std::set<Vertex> keep(verts.begin(), verts.end());
    for (Vertex v : keep)
        if (v >= K.vertex_count())
            throw PreconditionError("full_subcomplex: vertex out of range");
    std::vector<Face> maximal;
    for (const auto& mf : K.maximal_faces()) {
        Face f;
        for (Vertex v : mf)
            if (keep.count(v)) f.push_back(v);
        maximal.push_back(std::move(f));
    }
    // Also keep requested vertices that end up isolated.
    std::vector<Vertex> extra(keep.begin(), keep.end());
    for (Vertex v : extra) maximal.push_back({v});
    maximal.erase(std::remove_if(maximal.begin(), maximal.end(),
                                 [](const Face& f) { return f.empty(); }),
                  maximal.end());
    return subcomplex_from(K, antichain(std::move(maximal)));
}

SimplicialComplex join(const SimplicialComplex& K1, const SimplicialComplex& K2) {
    bool collision = false;
    for (const auto& l : K1.labels())
        if (K2.has_label(l)) { collision = true; break; }
    auto name = [&](const SimplicialComplex& K, Vertex v, const char* prefix) {
        return collision ? std::string(prefix) + K.label(v) : K.label(v);
    };

    std::vector<std::string> labels;
    std::vector<int> parts;
    // The join is partite when both factors are (an empty factor counts as
    // trivially partite); factor parts are kept disjoint by shifting the
    // right-hand side.
    bool p1 = K1.has_parts() || K1.vertex_count() == 0;
    bool p2 = K2.has_parts() || K2.vertex_count() == 0;
    bool partite = p1 && p2 && (K1.has_parts() || K2.has_parts());
    int shift = partite ? K1.part_count() : 0;
    for (Vertex v = 0; v < K1.vertex_count(); ++v) {
        labels.push_back(name(K1, v, "l:"));
        if (partite) parts.push_back(K1.part(v));
    }
    for (Vertex v = 0; v < K2.vertex_count(); ++v) {
        labels.push_back(name(K2, v, "r:"));
        if (partite) parts.push_back(K2.part(v) + shift);
    }

    const Vertex off = static_cast<Vertex>(K1.vertex_count());
    auto lhs = K1.maximal_faces().empty() ? std::vector<Face>{Face{}} : K1.maximal_faces();
    auto rhs = K2.maximal_faces().empty() ? std::vector<Face>{Face{}} : K2.maximal_faces();
    std::vector<Face> maximal;
    maximal.reserve(lhs.size() * rhs.size());
    for (const auto& a : lhs)
        for (const auto& b : rhs) {
            Face f = a;
            for (Vertex v : b) f.push_back(v + off);
            maximal.push_back(std::move(f));
        }
    maximal.erase(std::remove_if(maximal.begin(), maximal.end(),
                                 [](const Face& f) { return f.empty(); }),
                  maximal.end());
    return SimplicialComplex::from_parts(std::move(labels), std::move(maximal),
                                         std::move(parts));
}

bool is_flag(const SimplicialComplex& K) {
    // Inductive clique check: once every clique of size <= k+1 is known to
    // be a face, any clique of size k+2 is f + v with f a k-face and
    // v > max(f) adjacent to all of f, so scanning faces by dimension
    // covers every clique exactly once.  At k = dim the contains() test is
    // automatically false, which also rejects cliques beyond the dimension.
    for (int k = 1; k <= K.dim(); ++k) {
        for (const auto& f : K.faces(k)) {
            for (Vertex v = f.back() + 1; v < K.vertex_count(); ++v) {
                bool all = true;
                for (Vertex u : f)
                    if (!K.adjacent(u, v)) { all = false; break; }
                if (!all) continue;
                Face g = f;
                g.push_back(v);
                if (!K.contains(g)) return false;
            }
        }
    }
    return true;
}

SubdivisionResult barycentric_subdivision(const SimplicialComplex& K) {
    std::vector<std::string> labels;
    std::vector<int> parts;
    std::vector<Face> originals;
    std::map<Face, Vertex> vertex_of_face;

    for (int k = 0; k <= K.dim(); ++k)
        for (const auto& f : K.faces(k)) {
            std::string l = "{";
            auto ls = K.face_labels(f);
            for (std::size_t i = 0; i < ls.size(); ++i) {
                if (i) l += "|";
                l += ls[i];
            }
            l += "}";
            vertex_of_face[f] = static_cast<Vertex>(labels.size());
            labels.push_back(std::move(l));
            parts.push_back(k + 1);
            originals.push_back(f);
        }

    // Maximal chains = saturated flags of prefixes of orderings of the
    // maximal faces.
    std::vector<Face> maximal;
    for (const auto& mf : K.maximal_faces()) {
        Face perm = mf;
        std::sort(perm.begin(), perm.end());
        do {
            Face chain;
            Face prefix;
            for (Vertex v : perm) {
                prefix.push_back(v);
                Face key = prefix;
                std::sort(key.begin(), key.end());
                chain.push_back(vertex_of_face.at(key));
            }
            std::sort(chain.begin(), chain.end());
            maximal.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    SubdivisionResult out{SimplicialComplex::from_parts(labels, std::move(maximal), parts),
                          {}};
    out.barycenter_of.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        out.barycenter_of[out.complex.id_of(labels[i])] = originals[i];
    return out;
}

OctahedralisationResult octahedralise(const SimplicialComplex& K) {
    std::vector<std::string> labels;
    std::vector<int> parts;
    std::vector<Vertex> bases;
    std::vector<int> signs;
    for (Vertex v = 0; v < K.vertex_count(); ++v)
        for (int s : {+1, -1}) {
            labels.push_back(K.label(v) + (s > 0 ? "+" : "-"));
            if (K.has_parts()) parts.push_back(K.part(v));
            bases.push_back(v);
            signs.push_back(s);
        }

    std::vector<Face> maximal;
    for (const auto& mf : K.maximal_faces()) {
        const std::size_t n = mf.size();
        for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
            Face f(n);
            for (std::size_t i = 0; i < n; ++i)
                f[i] = static_cast<Vertex>(2 * mf[i] + ((mask >> i) & 1));  // even=+, odd=-
            std::sort(f.begin(), f.end());
            maximal.push_back(std::move(f));
        }
    }

    OctahedralisationResult out{
        SimplicialComplex::from_parts(labels, std::move(maximal), parts), {}, {}};
    out.base.resize(labels.size());
    out.sign.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Vertex id = out.complex.id_of(labels[i]);
        out.base[id] = bases[i];
        out.sign[id] = signs[i];
    }
    return out;
}

NlcpResult has_nlcp(const SimplicialComplex& K) {
    if (K.vertex_count() == 0) return {false, "empty complex"};
    if (K.component_count() != 1)
        return {false, "disconnected: " + std::to_string(K.component_count()) +
                           " components"};
    for (Vertex v = 0; v < K.vertex_count(); ++v) {
        SimplicialComplex L = link(K, Face{v});
        if (L.vertex_count() < 2)
            return {false, "link of '" + K.label(v) + "' has " +
                               std::to_string(L.vertex_count()) + " vertex(es)"};
        if (L.component_count() != 1)
            return {false, "link of '" + K.label(v) + "' is disconnected"};
    }
    return {true, ""};
}

bool verify_partite(const SimplicialComplex& K) {
    if (!K.has_parts())
        throw PreconditionError("verify_partite: complex has no partite structure");
    for (const auto& e : K.faces(1))
        if (K.part(e[0]) == K.part(e[1])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Isomorphism by color refinement + individualization, exact at the leaves.
// ---------------------------------------------------------------------------

namespace {

struct IsoContext {
    const SimplicialComplex* K1;
    const SimplicialComplex* K2;
    std::size_t n;
};

using Coloring = std::vector<std::uint64_t>;

// One refinement round: new color = (old color, sorted neighbor colors).
// Colors of both graphs are renumbered through a shared dictionary so that
// equal signatures get equal colors across the two complexes.
bool refine(const IsoContext& ctx, Coloring& c1, Coloring& c2) {
    std::size_t prev_classes = 0;
    for (std::size_t round = 0; round < ctx.n + 1; ++round) {
        std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::uint64_t> dict;
        auto signature = [&](const SimplicialComplex& K, const Coloring& c, Vertex v) {
            std::vector<std::uint64_t> nb;
            for (Vertex w : K.neighbors()[v]) nb.push_back(c[w]);
            std::sort(nb.begin(), nb.end());
            return std::make_pair(c[v], std::move(nb));
        };
        Coloring n1(ctx.n), n2(ctx.n);
        for (Vertex v = 0; v < ctx.n; ++v) {
            auto s = signature(*ctx.K1, c1, v);
            auto it = dict.emplace(s, dict.size()).first;
            n1[v] = it->second;
        }
        for (Vertex v = 0; v < ctx.n; ++v) {
            auto s = signature(*ctx.K2, c2, v);
            auto it = dict.find(s);
            if (it == dict.end()) return false;  // color class mismatch
            n2[v] = it->second;
        }
        // compare class sizes
        std::map<std::uint64_t, int> h1, h2;
        for (auto c : n1) ++h1[c];
        for (auto c : n2) ++h2[c];
        if (h1 != h2) return false;
        c1 = std::move(n1);
        c2 = std::move(n2);
        // refinement never merges classes, so an unchanged class count
        // means the partition is stable
        if (h1.size() == prev_classes) break;
        prev_classes = h1.size();
    }
    return true;
}

bool leaf_check(const IsoContext& ctx, const std::vector<Vertex>& map12) {
    std::vector<Face> mapped;
    mapped.reserve(ctx.K1->maximal_faces().size());
    for (const auto& f : ctx.K1->maximal_faces()) {
        Face g;
        g.reserve(f.size());
        for (Vertex v : f) g.push_back(map12[v]);
        std::sort(g.begin(), g.end());
        mapped.push_back(std::move(g));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped == ctx.K2->maximal_faces();
}

bool iso_search(const IsoContext& ctx, Coloring c1, Coloring c2) {
    if (!refine(ctx, c1, c2)) return false;

    // find the first non-singleton color class (by smallest color value)
    std::map<std::uint64_t, std::vector<Vertex>> cls1, cls2;
    for (Vertex v = 0; v < ctx.n; ++v) cls1[c1[v]].push_back(v);
    for (Vertex v = 0; v < ctx.n; ++v) cls2[c2[v]].push_back(v);

    const std::vector<Vertex>* pick1 = nullptr;
    const std::vector<Vertex>* pick2 = nullptr;
    std::uint64_t pick_color = 0;
    for (const auto& [color, vs] : cls1)
        if (vs.size() > 1) { pick1 = &vs; pick_color = color; break; }

    if (!pick1) {
        // discrete coloring: the color matching is the only candidate map
        std::vector<Vertex> map12(ctx.n);
        for (Vertex v = 0; v < ctx.n; ++v) {
            auto it = cls2.find(c1[v]);
            if (it == cls2.end() || it->second.size() != 1) return false;
            map12[v] = it->second[0];
        }
        return leaf_check(ctx, map12);
    }

    pick2 = &cls2.at(pick_color);
    Vertex v1 = (*pick1)[0];
    std::uint64_t fresh = 0;
    for (const auto& [color, vs] : cls1) fresh = std::max(fresh, color + 1);
    for (Vertex v2 : *pick2) {
        Coloring d1 = c1, d2 = c2;
        d1[v1] = fresh;
        d2[v2] = fresh;
        if (iso_search(ctx, std::move(d1), std::move(d2))) return true;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const SimplicialComplex& K1, const SimplicialComplex& K2,
                   std::size_t face_bound) {
    if (K1.vertex_count() != K2.vertex_count()) return false;
    if (K1.dim() != K2.dim()) return false;
    for (int k = 0; k <= K1.dim(); ++k)
        if (K1.face_count(k) != K2.face_count(k)) return false;
    if (K1.total_face_count() > face_bound || K2.total_face_count() > face_bound)
        throw PreconditionError("is_isomorphic: face-count bound exceeded");
    if (K1.vertex_count() == 0) return true;

    // Initial color = per-dimension face degree vector (dimension 1..dim).
    const std::size_t n = K1.vertex_count();
    auto initial = [&](const SimplicialComplex& K) {
        std::vector<std::vector<std::size_t>> deg(n, std::vector<std::size_t>(
                                                         static_cast<std::size_t>(K.dim() + 1), 0));
        for (int k = 1; k <= K.dim(); ++k)
            for (const auto& f : K.faces(k))
                for (Vertex v : f) ++deg[v][static_cast<std::size_t>(k)];
        return deg;
    };
    auto d1 = initial(K1);
    auto d2 = initial(K2);
    std::map<std::vector<std::size_t>, std::uint64_t> dict;
    Coloring c1(n), c2(n);
    for (Vertex v = 0; v < n; ++v) c1[v] = dict.emplace(d1[v], dict.size()).first->second;
    for (Vertex v = 0; v < n; ++v) {
        auto it = dict.find(d2[v]);
        if (it == dict.end()) return false;
        c2[v] = it->second;
    }

    IsoContext ctx{&K1, &K2, n};
    return iso_search(ctx, std::move(c1), std::move(c2));
}

// ---------------------------------------------------------------------------
// Random flag nlcp complexes (clique complexes of random graphs).
// ---------------------------------------------------------------------------

namespace {

// Bron-Kerbosch with pivoting over <=64 vertices.
void bron_kerbosch(std::uint64_t R, std::uint64_t P, std::uint64_t X,
                   const std::vector<std::uint64_t>& adj,
                   std::vector<std::uint64_t>& out) {
    if (P == 0 && X == 0) {
        out.push_back(R);
        return;
    }
    std::uint64_t PX = P | X;
    int pivot = std::countr_zero(PX);
    std::uint64_t best = adj[static_cast<std::size_t>(pivot)];
    for (std::uint64_t m = PX; m; m &= m - 1) {
        int u = std::countr_zero(m);
        if (std::popcount(P & adj[static_cast<std::size_t>(u)]) >
            std::popcount(P & best)) {
            pivot = u;
            best = adj[static_cast<std::size_t>(u)];
        }
    }
    std::uint64_t cand = P & ~adj[static_cast<std::size_t>(pivot)];
    // ensure the pivot itself is tried when it lies in P
    if (P & (1ull << pivot)) cand |= (1ull << pivot);
    for (std::uint64_t m = cand; m; m &= m - 1) {
        int v = std::countr_zero(m);
        std::uint64_t bit = 1ull << v;
        bron_kerbosch(R | bit, P & adj[static_cast<std::size_t>(v)],
                      X & adj[static_cast<std::size_t>(v)], adj, out);
        P &= ~bit;
        X |= bit;
    }
}

}  // namespace

SimplicialComplex random_flag_nlcp_complex(std::uint64_t seed, int n_vertices,
                                           double edge_density) {
    if (n_vertices < 4)
        throw PreconditionError("random_flag_nlcp_complex: need at least 4 vertices");
    if (n_vertices > 64)
        throw PreconditionError("random_flag_nlcp_complex: at most 64 vertices");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<std::uint64_t> adj(static_cast<std::size_t>(n_vertices), 0);
        for (int i = 0; i < n_vertices; ++i)
            for (int j = i + 1; j < n_vertices; ++j)
                if (unit(rng) < edge_density) {
                    adj[static_cast<std::size_t>(i)] |= 1ull << j;
                    adj[static_cast<std::size_t>(j)] |= 1ull << i;
                }

        std::vector<std::uint64_t> cliques;
        std::uint64_t all = (n_vertices == 64) ? ~0ull : ((1ull << n_vertices) - 1);
        bron_kerbosch(0, all, 0, adj, cliques);

        std::vector<std::vector<std::string>> faces;
        for (std::uint64_t c : cliques) {
            std::vector<std::string> f;
            for (std::uint64_t m = c; m; m &= m - 1) {
                int v = std::countr_zero(m);
                char buf[8];
                std::snprintf(buf, sizeof buf, "v%02d", v);
                f.emplace_back(buf);
            }
            faces.push_back(std::move(f));
        }
        SimplicialComplex K = build_complex(faces);
        if (K.vertex_count() == static_cast<std::size_t>(n_vertices) && has_nlcp(K).ok)
            return K;
    }
    throw PreconditionError("random_flag_nlcp_complex: sampling budget exhausted");
}

}  // namespace cubecert
