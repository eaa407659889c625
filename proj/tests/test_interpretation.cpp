#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "adl/interpretation.hpp"
#include "doctest.h"

using namespace adl;

namespace {

const RingSpec zi = ring_make("int");

}  // namespace

TEST_CASE("encode and decode round trips") {
    EncodedRingElem z = int_encode(zi, 3, 0);
    CHECK(z.carrier.is_identity());
    CHECK(int_decode(z) == 0);

    EncodedRingElem m5 = int_encode(zi, 3, -5);
    CHECK(m5.carrier.at(0, 2) == -5);
    CHECK(int_decode(m5) == -5);

    GroupTable P4 = enumerate_group("psl:3:zmod:4");
    CHECK(elem_1n_set(P4).count() == 4);

    RingSpec z9 = ring_make("zmod:9");
    for (int a = 0; a < 9; ++a) CHECK(int_decode(int_encode(z9, 3, a)) == a);

    CHECK_THROWS_AS(carrier_decode(elementary(zi, 3, 2, 3, 1)), NotInCarrier);
    CHECK_THROWS_AS(carrier_decode(Mat::raw(zi, 2, {-1, 0, 0, -1})), NotInCarrier);
}

TEST_CASE("encoded addition") {
    CHECK(int_decode(enc_add(int_encode(zi, 3, 2), int_encode(zi, 3, 3))) == 5);
    EncodedRingElem a = int_encode(zi, 3, 41);
    CHECK(enc_add(a, int_encode(zi, 3, 0)).carrier == a.carrier);
    RingSpec z7 = ring_make("zmod:7");
    CHECK(int_decode(enc_add(int_encode(z7, 3, 5), int_encode(z7, 3, 4))) == 2);
    CHECK_THROWS_AS(enc_add(int_encode(zi, 3, 1), int_encode(z7, 3, 1)), PreconditionFailed);
    CHECK_THROWS_AS(enc_add(int_encode(zi, 3, 1), int_encode(zi, 4, 1)), PreconditionFailed);
}

TEST_CASE("encoded multiplication") {
    CHECK(int_decode(enc_mul(int_encode(zi, 3, 1), int_encode(zi, 3, 1))) == 1);
    CHECK(int_decode(enc_mul(int_encode(zi, 3, 7), int_encode(zi, 3, 0))) == 0);
    CHECK(int_decode(enc_mul(int_encode(zi, 3, 2), int_encode(zi, 3, 3))) == 6);
    // Higher dimension goes through different p-matrices.
    CHECK(int_decode(enc_mul(int_encode(zi, 4, -3), int_encode(zi, 4, 5))) == -15);
    CHECK(int_decode(enc_mul(int_encode(zi, 5, 9), int_encode(zi, 5, 11))) == 99);
    CHECK_THROWS_AS(enc_mul(int_encode(zi, 2, 1), int_encode(zi, 2, 1)), PreconditionFailed);
}

TEST_CASE("ring isomorphism law exhaustively for every modulus up to 64") {
    for (int m = 2; m <= 64; ++m) {
        RingSpec r = ring_make("zmod:" + std::to_string(m));
        for (int a = 0; a < m; ++a) {
            EncodedRingElem ea = int_encode(r, 3, a);
            for (int b = 0; b < m; ++b) {
                EncodedRingElem eb = int_encode(r, 3, b);
                if (int_decode(enc_add(ea, eb)) != r.canon(a + b)) CHECK(false);
                if (int_decode(enc_mul(ea, eb)) != r.canon(a * b)) CHECK(false);
            }
        }
    }
}

TEST_CASE("ring isomorphism law on random integer pairs") {
    Rng rng(23);
    for (int t = 0; t < 10000; ++t) {
        Int a = Int(rng.below(2000001)) - 1000000;
        Int b = Int(rng.below(2000001)) - 1000000;
        EncodedRingElem ea = int_encode(zi, 3, a);
        EncodedRingElem eb = int_encode(zi, 3, b);
        if (int_decode(enc_add(ea, eb)) != a + b) CHECK(false);
        if (int_decode(enc_mul(ea, eb)) != a * b) CHECK(false);
    }
}

TEST_CASE("divisibility over Z") {
    auto enc = [](int64_t v) { return int_encode(zi, 3, v); };
    CHECK(enc_divides(enc(3), enc(12)));
    CHECK(enc_divides(enc(0), enc(0)));
    CHECK_FALSE(enc_divides(enc(0), enc(5)));
    CHECK_FALSE(enc_divides(enc(4), enc(6)));

    // Group reading: carrier(s) in the cyclic subgroup generated by carrier(r).
    for (int64_t r = -6; r <= 6; ++r)
        for (int64_t s = -12; s <= 12; ++s) {
            bool in_cyclic = false;
            for (int64_t k = -24; k <= 24 && !in_cyclic; ++k)
                in_cyclic = r * k == s;
            CHECK(enc_divides(enc(r), enc(s)) == in_cyclic);
        }
    CHECK_THROWS_AS(enc_divides(int_encode(ring_make("zmod:5"), 3, 1),
                                int_encode(ring_make("zmod:5"), 3, 1)),
                    PreconditionFailed);
}

TEST_CASE("carrier is the center of its centralizer") {
    for (const char* spec : {"psl:3:gf:2", "psl:3:gf:3", "psl:3:zmod:4"}) {
        GroupTable G = enumerate_group(spec);
        CHECK(carrier_center_set(G) == elem_1n_set(G));
    }
}

TEST_CASE("field codec inside psl2 of gf:7") {
    Psl2FieldCodec c = Psl2FieldCodec::make(7);
    CHECK(c.U.count() == 7);
    CHECK(c.G->size() == 168);

    for (int a = 0; a < 7; ++a) {
        CHECK(c.decode(c.encode(a)) == a);
        for (int b = 0; b < 7; ++b) {
            CHECK(c.decode(c.add_enc(c.encode(a), c.encode(b))) == (a + b) % 7);
            CHECK(c.decode(c.mul_enc(c.encode(a), c.encode(b))) == (a * b) % 7);
        }
    }
    for (int a = 1; a < 7; ++a) CHECK(c.has_witness(a));
    // a = 1 acts as the unit through the witness machinery itself.
    for (int b = 0; b < 7; ++b)
        CHECK(c.mul_enc(c.encode(1), c.encode(b)) == c.encode(b));
    CHECK_THROWS_AS(c.decode(c.t), NotInCarrier);
}

TEST_CASE("field codec witness gap at p = 5") {
    Psl2FieldCodec c = Psl2FieldCodec::make(5);
    CHECK(c.U.count() == 5);
    // 2*3 = 6 = 1 mod 5 through the torus search.
    CHECK(c.decode(c.mul_enc(c.encode(2), c.encode(3))) == 1);

    // Sums of two nonzero squares mod 5 give {2, 3} only, so witnesses exist
    // exactly for those first factors; the proposition's q > 3 margin is tight.
    for (int a : {2, 3}) {
        CHECK(c.has_witness(a));
        for (int b = 0; b < 5; ++b)
            CHECK(c.decode(c.mul_enc(c.encode(a), c.encode(b))) == (a * b) % 5);
    }
    for (int a : {1, 4}) {
        CHECK_FALSE(c.has_witness(a));
        CHECK_THROWS_AS(c.mul_enc(c.encode(a), c.encode(2)), NoTorusWitness);
    }
    // Zero factors never need a witness.
    CHECK(c.decode(c.mul_enc(c.encode(0), c.encode(4))) == 0);
    CHECK(c.decode(c.mul_enc(c.encode(4), c.encode(0))) == 0);

    CHECK_THROWS_AS(Psl2FieldCodec::make(4), PreconditionFailed);
    CHECK_THROWS_AS(Psl2FieldCodec::make(3), PreconditionFailed);
}

TEST_CASE("field codec across larger primes") {
    for (int p : {11, 13}) {
        Psl2FieldCodec c = Psl2FieldCodec::make(p);
        CHECK(c.U.count() == uint32_t(p));
        Rng rng(101 + p);
        for (int t = 0; t < 40; ++t) {
            int a = int(rng.below(uint64_t(p)));
            int b = int(rng.below(uint64_t(p)));
            CHECK(c.decode(c.mul_enc(c.encode(a), c.encode(b))) == (a * b) % p);
        }
        for (int a = 1; a < p; ++a) CHECK(c.has_witness(a));
    }
}

TEST_CASE("fiber correspondence detects equal kernels") {
    GroupTable G = enumerate_group("sl:2:zmod:4");
    ElementSet L = congruence_set(G, ideal_make(G.ring, 2));
    ElementSet Phi = build_fiber_phi(G, L, L);
    FiberOutcome out = fiber_correspondence(G, L, L, Phi);
    CHECK(out.equal);

    ElementSet triv(G.size());
    triv.set(0);
    ElementSet Phi2 = build_fiber_phi(G, triv, triv);
    CHECK(Phi2.count() == G.size());  // transversal of G/1 is everything
    CHECK(fiber_correspondence(G, triv, triv, Phi2).equal);
}

TEST_CASE("fiber correspondence separates distinct kernels") {
    GroupTable G = enumerate_group("sl:2:zmod:6");
    ElementSet L = congruence_set(G, ideal_make(G.ring, 2));
    ElementSet M = congruence_set(G, ideal_make(G.ring, 3));
    REQUIRE(L != M);
    ElementSet Phi = build_fiber_phi(G, L, M);
    FiberOutcome out = fiber_correspondence(G, L, M, Phi);
    REQUIRE_FALSE(out.equal);
    // The witness pair genuinely disagrees on the two coset relations.
    uint32_t d = G.mul(G.inv(out.x), out.y);
    CHECK(L.test(d) != M.test(d));
}

TEST_CASE("fiber correspondence validates its preconditions") {
    GroupTable G = enumerate_group("sl:2:gf:5");
    ElementSet triv(G.size());
    triv.set(0);
    ElementSet full = G.full_set();

    // A non-normal subgroup: the unipotent row.
    ElementSet row(G.size());
    row.set(G.index_of(elementary(G.ring, 2, 1, 2, 1)));
    row = subgroup_closure(G, row);
    CHECK_THROWS_AS(fiber_correspondence(G, row, triv, full), PreconditionFailed);
    CHECK_THROWS_AS(fiber_correspondence(G, triv, row, full), PreconditionFailed);

    // Not a subgroup at all.
    ElementSet notsub(G.size());
    notsub.set(0);
    notsub.set(G.index_of(elementary(G.ring, 2, 1, 2, 1)));
    CHECK_THROWS_AS(fiber_correspondence(G, notsub, triv, full), PreconditionFailed);

    // Phi violations: missing identity, asymmetric, not generating.
    ElementSet no_id = G.full_set();
    no_id.reset(0);
    CHECK_THROWS_AS(fiber_correspondence(G, triv, triv, no_id), PreconditionFailed);
    ElementSet asym(G.size());
    asym.set(0);
    asym.set(G.index_of(elementary(G.ring, 2, 1, 2, 1)));
    CHECK_THROWS_AS(fiber_correspondence(G, triv, triv, asym), PreconditionFailed);
    ElementSet only_id(G.size());
    only_id.set(0);
    CHECK_THROWS_AS(fiber_correspondence(G, triv, triv, only_id), PreconditionFailed);
}
