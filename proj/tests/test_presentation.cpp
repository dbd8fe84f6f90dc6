#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubecert/error.hpp"
#include "cubecert/presentation.hpp"
#include "helpers.hpp"

using namespace cubecert;
using testutil::cycle;
using testutil::projective_plane;
using testutil::simplex;

namespace {

Word word(std::initializer_list<std::pair<std::size_t, int>> ls) {
    Word w;
    for (auto [g, e] : ls) w.append(g, e);
    return w;
}

Presentation random_presentation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Presentation P;
    std::size_t ngen = 1 + rng() % 4;
    for (std::size_t g = 0; g < ngen; ++g)
        P.generators.push_back(std::string(1, static_cast<char>('a' + g)));
    std::size_t nrel = rng() % 6;
    for (std::size_t r = 0; r < nrel; ++r) {
        Word w;
        std::size_t len = rng() % 7;
        for (std::size_t i = 0; i < len; ++i)
            w.append(rng() % ngen, rng() % 2 ? 1 : -1);
        P.relations.push_back(w);
    }
    return P;
}

}  // namespace

TEST_CASE("words free-reduce on construction and append") {
    Word w = word({{0, 1}, {1, 1}, {1, -1}, {0, -1}});
    CHECK(w.empty());
    w = word({{0, 1}, {1, 1}, {0, -1}});
    CHECK(w.size() == 3);
    CHECK(w.inverse() == word({{0, 1}, {1, -1}, {0, -1}}));
    Word u = w;
    u.append(w.inverse());
    CHECK(u.empty());
}

TEST_CASE("fundamental group of the standard examples") {
    // circle: free of rank 1
    Presentation P = fundamental_group_presentation(cycle(3));
    CHECK(P.generators.size() == 1);
    CHECK(P.relations.empty());

    // filled triangle: trivial after simplification
    P = tietze_simplify(fundamental_group_presentation(simplex({"a", "b", "c"})));
    CHECK(P.generators.empty());
    CHECK(P.relations.empty());

    // projective plane: abelianization Z/2
    HomologyGroup H =
        abelianization(fundamental_group_presentation(projective_plane()));
    CHECK(H.betti == 0);
    REQUIRE(H.torsion.size() == 1);
    CHECK(H.torsion[0] == 2);

    // generator count is E - V + 1 on connected complexes
    for (std::uint64_t seed = 1; seed < 8; ++seed) {
        SimplicialComplex K = random_flag_nlcp_complex(seed, 7, 0.6);
        Presentation Q = fundamental_group_presentation(K);
        CHECK(Q.generators.size() == K.face_count(1) - K.vertex_count() + 1);
    }

    // error surface
    SimplicialComplex D = build_complex({{"a", "b"}, {"c", "d"}});
    CHECK_THROWS_AS(fundamental_group_presentation(D), PreconditionError);
    CHECK_THROWS_AS(fundamental_group_presentation(cycle(3), 99), InputError);
}

TEST_CASE("abelianization") {
    Presentation F1{{"a"}, {}};
    CHECK(abelianization(F1).betti == 1);

    Presentation Z2{{"a", "b"}, {word({{0, 1}, {1, 1}, {0, -1}, {1, -1}})}};
    CHECK(abelianization(Z2).betti == 2);
    CHECK(abelianization(Z2).torsion.empty());

    // a^2, b^3, (ab)^5: perfect (trivial abelianization)
    Presentation A5{{"a", "b"},
                    {word({{0, 1}, {0, 1}}),
                     word({{1, 1}, {1, 1}, {1, 1}}),
                     word({{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1},
                           {1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}})}};
    CHECK(abelianization(A5).trivial());

    // Z/2 x Z/4 keeps its torsion chain
    Presentation T{{"a", "b"},
                   {word({{0, 1}, {0, 1}}),
                    word({{1, 1}, {1, 1}, {1, 1}, {1, 1}}),
                    word({{0, 1}, {1, 1}, {0, -1}, {1, -1}})}};
    HomologyGroup H = abelianization(T);
    CHECK(H.betti == 0);
    CHECK(H.torsion == std::vector<Int>{2, 4});
}

TEST_CASE("tietze simplification") {
    // <a,b | b> -> <a>
    Presentation P{{"a", "b"}, {word({{1, 1}})}};
    Presentation Q = tietze_simplify(P);
    CHECK(Q.generators == std::vector<std::string>{"a"});
    CHECK(Q.relations.empty());

    // <a,b | a b^-1> -> <a>
    P = Presentation{{"a", "b"}, {word({{0, 1}, {1, -1}})}};
    Q = tietze_simplify(P);
    CHECK(Q.generators == std::vector<std::string>{"a"});
    CHECK(Q.relations.empty());

    // g^2 = 1 cannot be eliminated by sound moves
    P = Presentation{{"a"}, {word({{0, 1}, {0, 1}})}};
    CHECK(tietze_simplify(P) == P);

    // budget 0 still dedupes but never eliminates generators
    P = Presentation{{"a", "b"}, {word({{1, 1}}), word({{1, 1}})}};
    Q = tietze_simplify(P, 0);
    CHECK(Q.generators.size() == 2);
    CHECK(Q.relations.size() == 1);

    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        Presentation R = random_presentation(seed);
        Presentation S1 = tietze_simplify(R);
        // idempotent, generator count never grows, abelianization preserved
        CHECK(tietze_simplify(S1) == S1);
        CHECK(S1.generators.size() <= R.generators.size());
        CHECK(abelianization(S1) == abelianization(R));
    }
}

TEST_CASE("extending a presentation by selected words") {
    Presentation P{{"a", "b"}, {word({{0, 1}, {0, 1}})}};
    std::vector<Word> T = {word({{1, 1}}), word({{0, 1}, {1, 1}}),
                           word({{1, -1}, {0, 1}})};

    CHECK(extend_presentation(P, T, {}) == P);

    Presentation all = extend_presentation(P, T, {0, 1, 2});
    CHECK(all.relations.size() == 4);
    CHECK(all.relations[1] == T[0]);

    CHECK(extend_presentation(P, T, {0, 2}).relations.size() == 3);

    CHECK_THROWS_AS(extend_presentation(P, T, {3}), InputError);
    std::vector<Word> bad = {word({{7, 1}})};
    CHECK_THROWS_AS(extend_presentation(P, bad, {0}), InputError);
}

TEST_CASE("presentation text round-trip") {
    Presentation P{{"a", "b"},
                   {word({{0, 1}, {1, -1}, {0, -1}, {1, 1}}), word({{0, 1}})}};
    std::string text = presentation_to_text(P);
    CHECK(text == "generators: a b\na b -1 a -1 b\na\n");
    CHECK(presentation_from_text(text) == P);

    // empty generator list round-trips too
    Presentation empty;
    CHECK(presentation_from_text(presentation_to_text(empty)) == empty);

    CHECK_THROWS_AS(presentation_from_text("nonsense\n"), InputError);
    CHECK_THROWS_AS(presentation_from_text("generators: a\nb\n"), InputError);
    CHECK_THROWS_AS(presentation_from_text("generators: a\n-1 a\n"), InputError);
}

TEST_CASE("pi1 abelianization agrees with H1") {
    std::vector<SimplicialComplex> corpus = {cycle(3), cycle(7),
                                             projective_plane(),
                                             simplex({"a", "b", "c", "d"})};
    for (std::uint64_t seed = 130; seed < 140; ++seed)
        corpus.push_back(random_flag_nlcp_complex(seed, 6, 0.6));
    for (const auto& K : corpus) {
        HomologyGroup from_pi1 = abelianization(fundamental_group_presentation(K));
        CHECK(from_pi1 == homology(K, 1));
        // and the subdivided complex agrees as well
        SimplicialComplex S = barycentric_subdivision(K).complex;
        CHECK(abelianization(fundamental_group_presentation(S)) == from_pi1);
    }
}
