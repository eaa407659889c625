#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>

#include "adl/grouptable.hpp"
#include "doctest.h"

using namespace adl;

namespace {

Mat random_sl_word(const RingSpec& r, int n, Rng& rng, int len) {
    Mat m = Mat::identity(r, n);
    for (int t = 0; t < len; ++t) {
        int i = int(rng.below(uint64_t(n))) + 1;
        int j = int(rng.below(uint64_t(n))) + 1;
        if (i == j) continue;
        m = m.mul(elementary(r, n, i, j, Int(int64_t(rng.below(7)) - 3)));
    }
    return m;
}

std::vector<uint32_t> set_elems(const ElementSet& s) {
    std::vector<uint32_t> out;
    for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
        out.push_back(uint32_t(i));
    return out;
}

}  // namespace

TEST_CASE("group spec parsing") {
    GroupSpec s = parse_group_spec("sl:3:zmod:4");
    CHECK(s.family == GroupFamily::SL);
    CHECK(s.n == 3);
    CHECK(s.ring.modulus == 4);

    GroupSpec p = parse_group_spec("psl:2:gf:7");
    CHECK(p.family == GroupFamily::PSL);
    CHECK(p.ring.is_field());

    GroupSpec c = parse_group_spec("cyc:12");
    CHECK(c.family == GroupFamily::Cyclic);
    CHECK(c.ring.modulus == 12);

    CHECK_THROWS_AS(parse_group_spec("sl:1:gf:5"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("su:3:gf:5"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("sl:3"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("sl:2:int"), PreconditionFailed);
    CHECK_THROWS_AS(parse_group_spec("sl:2:gf:6"), ParseError);
}

TEST_CASE("enumerated group orders") {
    CHECK(enumerate_group("psl:3:gf:2").size() == 168);
    CHECK(enumerate_group("sl:2:zmod:4").size() == 48);
    CHECK(enumerate_group("sl:2:gf:3").size() == 24);
    CHECK(enumerate_group("psl:2:gf:5").size() == 60);
    CHECK(enumerate_group("sl:2:zmod:6").size() == 144);
    CHECK(enumerate_group("sl:2:zmod:9").size() == 648);
    CHECK(enumerate_group("psl:2:zmod:9").size() == 324);
    CHECK(enumerate_group("cyc:12").size() == 12);
    CHECK(enumerate_group("sl:3:gf:3").size() == 5616);
    CHECK(enumerate_group("psl:3:gf:3").size() == 5616);  // gcd(3, 3-1) = 1
    CHECK(predicted_group_order(parse_group_spec("sl:3:zmod:4")) == 43008);
    CHECK(predicted_group_order(parse_group_spec("sl:2:zmod:32")) == 24576);
    CHECK(predicted_group_order(parse_group_spec("psl:2:gf:7")) == 168);
}

TEST_CASE("table arithmetic agrees with matrix arithmetic") {
    GroupTable G = enumerate_group("sl:2:gf:3");
    REQUIRE(G.size() == 24);
    CHECK(G.mat_of(0).is_identity());
    for (uint32_t i = 0; i < G.size(); ++i) {
        CHECK(G.mat_of(i).det() == 1);
        CHECK(G.mat_of(G.inv(i)) == G.mat_of(i).inverse());
        CHECK(G.mul(i, G.inv(i)) == 0);
        for (uint32_t j = 0; j < G.size(); ++j) {
            uint32_t prod = G.mul(i, j);
            CHECK(prod < G.size());
            CHECK(G.mat_of(prod) == G.mat_of(i).mul(G.mat_of(j)));
        }
    }
    // pow against repeated multiplication, including negative exponents.
    for (uint32_t i : {1u, 5u, 17u}) {
        uint32_t acc = 0;
        for (int e = 0; e <= 8; ++e) {
            CHECK(G.pow(i, e) == acc);
            acc = G.mul(acc, i);
        }
        CHECK(G.pow(i, -1) == G.inv(i));
        CHECK(G.pow(i, -3) == G.inv(G.pow(i, 3)));
    }
    CHECK(G.index_of(Mat::identity(G.ring, 2)) == 0);
    CHECK(G.index_of(elementary(G.ring, 2, 1, 2, 1)) != npos32);
}

TEST_CASE("projective tables partition SL into scalar cosets") {
    // |SL| = |PSL| * #scalars, and the fibers of the projection have uniform size.
    struct Case {
        const char* sl;
        const char* psl;
        size_t scalars;
    };
    for (const Case& c : {Case{"sl:2:gf:5", "psl:2:gf:5", 2},
                          Case{"sl:2:zmod:9", "psl:2:zmod:9", 2},
                          Case{"sl:3:gf:2", "psl:3:gf:2", 1}}) {
        GroupTable S = enumerate_group(c.sl);
        GroupTable P = enumerate_group(c.psl);
        CHECK(S.size() == P.size() * c.scalars);
        std::vector<uint32_t> fiber(P.size(), 0);
        for (uint32_t i = 0; i < S.size(); ++i) {
            uint32_t at = P.index_of(S.mat_of(i));
            REQUIRE(at != npos32);
            ++fiber[at];
        }
        for (uint32_t f : fiber) CHECK(f == c.scalars);
    }
}

TEST_CASE("psl_project canonical representatives") {
    RingSpec z7 = ring_make("zmod:7");
    CHECK(nth_root_scalars(z7, 3) == std::vector<Int>{1, 2, 4});
    CHECK(nth_root_scalars(ring_make("gf:5"), 2) == std::vector<Int>{1, 4});
    CHECK(nth_root_scalars(ring_make("gf:2"), 3) == std::vector<Int>{1});

    // Scalar matrices with lambda^n = 1 all project to the identity's rep.
    Mat id3 = Mat::identity(z7, 3);
    for (int64_t lam : {1, 2, 4}) {
        Mat s = Mat::raw(z7, 3, {lam, 0, 0, 0, lam, 0, 0, 0, lam});
        CHECK(psl_project(s) == psl_project(id3));
    }

    // Each coset over gf:7, n=3 has exactly 3 SL representatives.
    Rng rng(19);
    for (int t = 0; t < 50; ++t) {
        Mat w = random_sl_word(z7, 3, rng, 10);
        std::vector<Mat> orbit;
        for (int64_t lam : {1, 2, 4}) {
            Mat s = w;
            for (auto& v : s.a) v = z7.mul(v, lam);
            orbit.push_back(s);
        }
        Mat rep = psl_project(orbit[0]);
        for (const Mat& o : orbit) {
            CHECK(psl_project(o) == rep);
            // rep is lexicographically least within the orbit
            CHECK_FALSE(std::lexicographical_compare(o.a.begin(), o.a.end(), rep.a.begin(),
                                                     rep.a.end()));
        }
        CHECK((orbit[0] == orbit[1]) == false);
    }

    // Over gf:2 the only scalar is 1, so projection is injective (identity map).
    RingSpec f2 = ring_make("gf:2");
    for (int n : {2, 3, 4})
        for (int t = 0; t < 20; ++t) {
            Mat w = random_sl_word(f2, n, rng, 8);
            CHECK(psl_project(w) == w);
        }
}

TEST_CASE("congruence subgroups") {
    GroupTable G4 = enumerate_group("sl:2:zmod:4");
    IdealSpec q2 = ideal_make(G4.ring, 2);
    ElementSet K = congruence_set(G4, q2);
    CHECK(K.count() == 8);
    CHECK(K.test(0));

    // Normal under conjugation by every element, not just generators.
    for (uint32_t g = 0; g < G4.size(); ++g)
        for (uint32_t k : set_elems(K))
            CHECK(K.test(G4.conj(g, k)));
    CHECK(set_normal(G4, K));

    // Zero ideal: kernel is the identity alone.
    GroupTable G3 = enumerate_group("sl:3:gf:3");
    ElementSet Z0 = congruence_set(G3, ideal_make(G3.ring, 0));
    CHECK(Z0.count() == 1);
    CHECK(Z0.test(0));

    // Index of the kernel equals the order of the quotient group.
    GroupTable G6 = enumerate_group("sl:2:zmod:6");
    ElementSet K3 = congruence_set(G6, ideal_make(G6.ring, 3));
    CHECK(G6.size() / K3.count() == 24);
    CHECK(G6.size() / K3.count() == enumerate_group("sl:2:gf:3").size());
    CHECK(G4.size() / K.count() == enumerate_group("sl:2:gf:2").size());

    // Whole ring: everything reduces to the trivial group's identity.
    CHECK(congruence_set(G4, ideal_make(G4.ring, 1)).count() == G4.size());
}

TEST_CASE("star congruence subgroups") {
    GroupTable F2 = enumerate_group("sl:3:gf:2");
    ElementSet st0 = star_congruence_set(F2, ideal_make(F2.ring, 0));
    CHECK(st0.count() == 1);  // trivial center
    CHECK(st0 == center_set(F2));

    GroupTable G4 = enumerate_group("sl:2:zmod:4");
    IdealSpec q2 = ideal_make(G4.ring, 2);
    CHECK(star_congruence_set(G4, q2) == congruence_set(G4, q2));  // Z(SL_2(F_2)) = 1

    GroupTable F5 = enumerate_group("sl:2:gf:5");
    ElementSet st = star_congruence_set(F5, ideal_make(F5.ring, 0));
    CHECK(st.count() == 2);  // {I, -I}
    CHECK(st == center_set(F5));
    uint32_t minus_id = F5.index_of(Mat::raw(F5.ring, 2, {-1, 0, 0, -1}));
    REQUIRE(minus_id != npos32);
    CHECK(st.test(minus_id));

    // Star contains the plain congruence subgroup and is normal.
    GroupTable G6 = enumerate_group("sl:2:zmod:6");
    for (int g : {2, 3}) {
        IdealSpec q = ideal_make(G6.ring, g);
        ElementSet cs = congruence_set(G6, q);
        ElementSet ss = star_congruence_set(G6, q);
        CHECK((cs & ss) == cs);
        for (uint32_t h = 0; h < G6.size(); ++h)
            for (uint32_t k : set_elems(ss)) CHECK(ss.test(G6.conj(h, k)));
    }
}

TEST_CASE("reduction maps are surjective homomorphisms") {
    GroupTable G = enumerate_group("sl:2:zmod:4");
    Reduction red = build_reduction(G, ideal_make(G.ring, 2));
    REQUIRE(red.quotient);
    CHECK(red.quotient->size() == 6);
    for (uint32_t i = 0; i < G.size(); ++i)
        for (uint32_t j = 0; j < G.size(); ++j)
            CHECK(red.map[G.mul(i, j)] == red.quotient->mul(red.map[i], red.map[j]));
    ElementSet image(red.quotient->size());
    for (uint32_t i = 0; i < G.size(); ++i) image.set(red.map[i]);
    CHECK(image.count() == red.quotient->size());

    // Zero ideal gives the identity reduction.
    Reduction triv = build_reduction(G, ideal_make(G.ring, 0));
    CHECK_FALSE(triv.quotient);
    for (uint32_t i = 0; i < G.size(); ++i) CHECK(triv.map[i] == i);
}

TEST_CASE("unipotent row sets") {
    GroupTable G = enumerate_group("sl:3:zmod:4");
    ElementSet U = unipotent_row_set(G);
    CHECK(U.count() == 16);  // 4^2 first-row choices
    for (uint32_t u : set_elems(U)) {
        Mat m = G.mat_of(u);
        CHECK(m.at(0, 0) == 1);
        for (int i = 1; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(m.at(i, j) == (i == j ? 1 : 0));
    }

    IdealSpec q2 = ideal_make(G.ring, 2);
    ElementSet Uq = row_congruence_set(G, q2);
    CHECK(Uq == (U & congruence_set(G, q2)));
    CHECK(Uq.count() == 4);  // even first-row entries
    // Intersecting with the star subgroup gives the same set.
    CHECK((U & star_congruence_set(G, q2)) == Uq);

    GroupTable F2 = enumerate_group("sl:3:gf:2");
    CHECK(unipotent_row_set(F2).count() == 4);

    GroupTable S2 = enumerate_group("sl:2:gf:3");
    CHECK_THROWS_AS(unipotent_row_set(S2), PreconditionFailed);
}

TEST_CASE("element set operations") {
    GroupTable G = enumerate_group("sl:2:gf:5");
    ElementSet e(G.size());
    uint32_t x = G.index_of(elementary(G.ring, 2, 1, 2, 1));
    REQUIRE(x != npos32);
    e.set(x);

    ElementSet e2 = set_product(G, e, e);
    CHECK(e2.count() == 1);
    CHECK(e2.test(G.index_of(elementary(G.ring, 2, 1, 2, 2))));

    CHECK_FALSE(set_symmetric(G, e));
    ElementSet sym = e | set_inverse(G, e);
    CHECK(set_symmetric(G, sym));
    CHECK(set_symmetric(G, G.full_set()));

    ElementSet row = subgroup_closure(G, e);
    CHECK(row.count() == 5);  // {e_{1,2}(k) : k mod 5}
    CHECK_FALSE(set_normal(G, row));

    ElementSet gens(G.size());
    for (uint32_t g : G.gens) gens.set(g);
    CHECK(subgroup_closure(G, gens).count() == G.size());
    CHECK(set_normal(G, G.full_set()));
}

TEST_CASE("centers and centralizers") {
    GroupTable F5 = enumerate_group("sl:2:gf:5");
    CHECK(center_set(F5).count() == 2);
    GroupTable F2 = enumerate_group("sl:2:gf:2");
    CHECK(center_set(F2).count() == 1);
    GroupTable Z4 = enumerate_group("sl:3:zmod:4");
    CHECK(center_set(Z4).count() == 1);  // no cube roots of 1 mod 4 besides 1

    // Orbit-stabilizer: |class(x)| * |Cent(x)| = |G|.
    const auto& cls = F5.classes();
    for (uint32_t c = 0; c < cls.reps.size(); ++c) {
        uint32_t rep = cls.reps[c];
        CHECK(centralizer_set(F5, rep).count() * cls.sizes[c] == F5.size());
    }

    // The kernel of SL_2(Z/4) -> SL_2(Z/2) is abelian, so it is its own center.
    GroupTable G4 = enumerate_group("sl:2:zmod:4");
    ElementSet K = congruence_set(G4, ideal_make(G4.ring, 2));
    CHECK(center_of_subset(G4, K) == K);
    // The full group is not abelian.
    CHECK(center_of_subset(G4, G4.full_set()) == center_set(G4));
}

TEST_CASE("conjugacy classes against brute force") {
    for (const char* spec : {"sl:2:gf:3", "sl:2:gf:5"}) {
        GroupTable G = enumerate_group(spec);
        const auto& cls = G.classes();

        // Brute force: conjugate by every group element.
        std::vector<uint32_t> brute(G.size(), npos32);
        uint32_t nclasses = 0;
        for (uint32_t x = 0; x < G.size(); ++x) {
            if (brute[x] != npos32) continue;
            uint32_t cid = nclasses++;
            for (uint32_t g = 0; g < G.size(); ++g) brute[G.conj(g, x)] = cid;
        }
        REQUIRE(cls.reps.size() == nclasses);
        for (uint32_t x = 0; x < G.size(); ++x)
            for (uint32_t y = 0; y < G.size(); ++y)
                if ((brute[x] == brute[y]) != (cls.class_of[x] == cls.class_of[y])) CHECK(false);

        // CSR layout invariants.
        uint64_t total = 0;
        for (uint32_t c = 0; c < cls.reps.size(); ++c) {
            CHECK(cls.offsets[c + 1] - cls.offsets[c] == cls.sizes[c]);
            CHECK(G.size() % cls.sizes[c] == 0);
            uint32_t least = npos32;
            for (uint32_t k = cls.offsets[c]; k < cls.offsets[c + 1]; ++k) {
                uint32_t mem = cls.members[k];
                CHECK(cls.class_of[mem] == c);
                if (k > cls.offsets[c]) CHECK(cls.members[k - 1] < mem);
                least = std::min(least, mem);
            }
            CHECK(cls.reps[c] == least);
            total += cls.sizes[c];
        }
        CHECK(total == G.size());
        CHECK(cls.class_of[0] == 0);
        CHECK(cls.sizes[0] == 1);  // identity is central
    }
    // SL_2(F_q) for odd q has q + 4 conjugacy classes.
    CHECK(enumerate_group("sl:2:gf:3").classes().reps.size() == 7);
    CHECK(enumerate_group("sl:2:gf:5").classes().reps.size() == 9);
}

TEST_CASE("cyclic groups") {
    GroupTable C = enumerate_group("cyc:12");
    CHECK(C.size() == 12);
    REQUIRE(C.gens.size() == 1);
    uint32_t g = C.gens[0];
    ElementSet seen(C.size());
    for (int k = 0; k < 12; ++k) seen.set(C.pow(g, k));
    CHECK(seen.count() == 12);
    for (uint32_t i = 0; i < C.size(); ++i)
        for (uint32_t j = 0; j < C.size(); ++j) CHECK(C.mul(i, j) == C.mul(j, i));
}

TEST_CASE("caps and limits") {
    CHECK_THROWS_AS(enumerate_group("sl:2:zmod:4", 10), CapExceeded);
    // 4x4 over zmod:512 needs 16 * 9 = 144 key bits.
    std::vector<Mat> gens{elementary(ring_make("zmod:512"), 4, 1, 2, 1)};
    CHECK_THROWS_AS(
        GroupTable::generate(ring_make("zmod:512"), 4, false, gens, 1000, "oversized"),
        CapExceeded);
}
