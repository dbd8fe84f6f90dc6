#include "cubecert/presentation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "cubecert/error.hpp"

namespace cubecert {

Word::Word(const std::vector<Letter>& letters) {
    for (const Letter& l : letters) append(l.gen, l.exp);
}

void Word::append(std::size_t gen, int exp) {
    if (!letters_.empty() && letters_.back().gen == gen &&
        letters_.back().exp == -exp) {
        letters_.pop_back();
        return;
    }
    letters_.push_back({gen, exp});
}

void Word::append(const Word& w) {
    for (const Letter& l : w.letters_) append(l.gen, l.exp);
}

Word Word::inverse() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.append(it->gen, -it->exp);
    return out;
}

Presentation fundamental_group_presentation(const SimplicialComplex& K,
                                            Vertex basepoint) {
    if (basepoint >= K.vertex_count())
        throw InputError("fundamental_group_presentation: basepoint out of range");
    if (K.component_count() != 1)
        throw PreconditionError(
            "fundamental_group_presentation: complex must be connected");

    // BFS spanning tree from the basepoint; neighbors() is sorted, so the
    // tree (and with it the whole presentation) is deterministic.
    std::vector<bool> seen(K.vertex_count(), false);
    std::set<Face> tree;
    std::deque<Vertex> queue{basepoint};
    seen[basepoint] = true;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex v : K.neighbors()[u])
            if (!seen[v]) {
                seen[v] = true;
                tree.insert(Face{std::min(u, v), std::max(u, v)});
                queue.push_back(v);
            }
    }

    // one generator per non-tree edge, in face order
    Presentation P;
    std::map<Face, std::size_t> gen_of;
    if (K.dim() >= 1)
        for (const Face& e : K.faces(1))
            if (!tree.count(e)) {
                gen_of[e] = P.generators.size();
                P.generators.push_back("g" + std::to_string(P.generators.size() + 1));
            }

    // w(a,b): the word a generator edge contributes when traversed a -> b
    auto edge_word = [&](Vertex a, Vertex b, Word& w) {
        Face e{std::min(a, b), std::max(a, b)};
        auto it = gen_of.find(e);
        if (it != gen_of.end()) w.append(it->second, a < b ? 1 : -1);
    };

    // one relation per 2-face: the boundary path u -> v -> w -> u
    if (K.dim() >= 2)
        for (const Face& f : K.faces(2)) {
            Word r;
            edge_word(f[0], f[1], r);
            edge_word(f[1], f[2], r);
            edge_word(f[2], f[0], r);
            if (!r.empty()) P.relations.push_back(std::move(r));
        }
    return P;
}

HomologyGroup abelianization(const Presentation& P) {
    IntegerMatrix M(P.relations.size(), P.generators.size());
    for (std::size_t r = 0; r < P.relations.size(); ++r)
        for (const Letter& l : P.relations[r].letters()) M.add(r, l.gen, l.exp);
    SNFResult snf = smith_normal_form(M);
    HomologyGroup H;
    H.betti = P.generators.size() - snf.rank;
    for (const Int& d : snf.divisors)
        if (d > 1) H.torsion.push_back(d);
    return H;
}

namespace {

// Substitute gen -> replacement (a single letter's worth: target^exp) in
// every relation, free-reducing as we go.
void substitute(std::vector<Word>& relations, std::size_t gen,
                std::size_t target, int exp) {
    for (Word& r : relations) {
        Word out;
        for (const Letter& l : r.letters()) {
            if (l.gen == gen)
                out.append(target, l.exp * exp);
            else
                out.append(l.gen, l.exp);
        }
        r = std::move(out);
    }
}

// Delete every occurrence of a known-trivial generator.
void erase_gen(std::vector<Word>& relations, std::size_t gen) {
    for (Word& r : relations) {
        Word out;
        for (const Letter& l : r.letters())
            if (l.gen != gen) out.append(l.gen, l.exp);
        r = std::move(out);
    }
}

// Drop a generator index from the table, shifting higher indices down.
void drop_generator(Presentation& P, std::size_t gen) {
    P.generators.erase(P.generators.begin() + static_cast<std::ptrdiff_t>(gen));
    for (Word& r : P.relations) {
        Word out;
        for (const Letter& l : r.letters())
            out.append(l.gen > gen ? l.gen - 1 : l.gen, l.exp);
        r = std::move(out);
    }
}

void dedupe_relations(std::vector<Word>& relations) {
    std::vector<Word> out;
    for (const Word& r : relations) {
        if (r.empty()) continue;
        Word inv = r.inverse();
        bool dup = false;
        for (const Word& kept : out)
            if (kept == r || kept == inv) { dup = true; break; }
        if (!dup) out.push_back(r);
    }
    relations = std::move(out);
}

}  // namespace

Presentation tietze_simplify(const Presentation& P, std::size_t budget) {
    Presentation Q = P;
    dedupe_relations(Q.relations);
    std::size_t steps = 0;
    bool changed = true;
    while (changed && steps < budget) {
        changed = false;
        for (std::size_t i = 0; i < Q.relations.size(); ++i) {
            const Word& r = Q.relations[i];
            if (r.size() == 1) {
                // g = 1: erase the generator everywhere
                std::size_t g = r.letters()[0].gen;
                Q.relations.erase(Q.relations.begin() + static_cast<std::ptrdiff_t>(i));
                erase_gen(Q.relations, g);
                drop_generator(Q, g);
            } else if (r.size() == 2 &&
                       r.letters()[0].gen != r.letters()[1].gen) {
                // g^e h^f = 1: eliminate h = g^(-e*f)
                Letter a = r.letters()[0], b = r.letters()[1];
                Q.relations.erase(Q.relations.begin() + static_cast<std::ptrdiff_t>(i));
                substitute(Q.relations, b.gen, a.gen, -a.exp * b.exp);
                drop_generator(Q, b.gen);
            } else {
                continue;
            }
            dedupe_relations(Q.relations);
            changed = true;
            ++steps;
            break;  // restart the scan: indices moved
        }
    }
    return Q;
}

Presentation extend_presentation(const Presentation& base,
                                 const std::vector<Word>& T,
                                 const std::vector<std::size_t>& selector) {
    for (const Word& w : T)
        for (const Letter& l : w.letters())
            if (l.gen >= base.generators.size())
                throw InputError("extend_presentation: word uses unknown generator");
    Presentation out = base;
    for (std::size_t idx : selector) {
        if (idx >= T.size())
            throw InputError("extend_presentation: selector index " +
                             std::to_string(idx) + " out of range");
        out.relations.push_back(T[idx]);
    }
    return out;
}

std::string presentation_to_text(const Presentation& P) {
    std::ostringstream out;
    out << "generators:";
    for (const auto& g : P.generators) out << ' ' << g;
    out << '\n';
    for (const Word& r : P.relations) {
        bool first = true;
        for (const Letter& l : r.letters()) {
            out << (first ? "" : " ") << P.generators[l.gen];
            if (l.exp == -1) out << " -1";
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

Presentation presentation_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("generators:", 0) != 0)
        throw InputError("presentation text must start with a 'generators:' line");
    Presentation P;
    std::map<std::string, std::size_t> index;
    {
        std::istringstream hdr(line.substr(11));
        std::string name;
        while (hdr >> name) {
            if (index.count(name))
                throw InputError("duplicate generator name '" + name + "'");
            index[name] = P.generators.size();
            P.generators.push_back(name);
        }
    }
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        Word w;
        bool any = false;
        while (ls >> tok) {
            any = true;
            if (tok == "-1") {
                if (w.empty())
                    throw InputError("exponent with no preceding generator");
                Letter last = w.letters().back();
                Word fixed;
                for (std::size_t i = 0; i + 1 < w.size(); ++i)
                    fixed.append(w.letters()[i].gen, w.letters()[i].exp);
                fixed.append(last.gen, -last.exp);
                w = fixed;
            } else {
                auto it = index.find(tok);
                if (it == index.end())
                    throw InputError("unknown generator '" + tok + "' in relation");
                w.append(it->second, 1);
            }
        }
        if (any) P.relations.push_back(std::move(w));
    }
    return P;
}

}  // namespace cubecert
