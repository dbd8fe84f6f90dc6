#pragma once

// Finite group presentations: edge-path presentations of fundamental groups,
// sound Tietze-style shrinking, and abelianization via Smith normal form.
// Nothing here ever claims a group is trivial -- only its abelianization is
// certified; stronger statements are recorded assumptions elsewhere.

#include <cstddef>
#include <string>
#include <vector>

#include "cubecert/homology.hpp"
#include "cubecert/simplicial.hpp"

namespace cubecert {

struct Letter {
    std::size_t gen = 0;
    int exp = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

// Free-reduced word in the generators: no adjacent inverse pairs survive
// construction or append.
class Word {
public:
    Word() = default;
    explicit Word(const std::vector<Letter>& letters);

    void append(std::size_t gen, int exp);
    void append(const Word& w);

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }
    Word inverse() const;
    bool operator==(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relations;  // every letter references a valid generator
    bool operator==(const Presentation&) const = default;
};

// Edge-path presentation of the fundamental group: spanning tree by BFS from
// the basepoint (ordered neighbors, hence deterministic), one generator per
// non-tree edge, one relation per 2-face.
Presentation fundamental_group_presentation(const SimplicialComplex& K,
                                            Vertex basepoint = 0);

// SNF of the exponent-sum matrix; betti = free rank, torsion as usual.  The
// group is perfect iff the result is trivial.
HomologyGroup abelianization(const Presentation& P);

// Generator elimination on relations of length 1 and 2 plus free reduction
// and duplicate removal -- sound moves only, at most `budget` eliminations,
// deterministic.  Reaches a fixpoint when the budget allows, so applying it
// twice changes nothing.
Presentation tietze_simplify(const Presentation& P, std::size_t budget = 10000);

// Append the selected words (0-based indices into T) to the relations of the
// base presentation.  Selector entries out of range are an input error.
Presentation extend_presentation(const Presentation& base,
                                 const std::vector<Word>& T,
                                 const std::vector<std::size_t>& selector);

// Text form: "generators: a b c" header, then one relation per line in
// letter-exponent notation ("a b -1 a -1 b"); parse is the exact inverse.
std::string presentation_to_text(const Presentation& P);
Presentation presentation_from_text(const std::string& text);

}  // namespace cubecert
