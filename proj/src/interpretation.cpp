#include "adl/interpretation.hpp"

#include <algorithm>

namespace adl {

namespace {

Mat canonical_carrier(const RingSpec& r, const Mat& m) {
    return r.finite() ? psl_project(m) : m;
}

}  // namespace

EncodedRingElem int_encode(const RingSpec& r, int n, const Int& a) {
    require(n >= 2, "encoding needs n >= 2");
    EncodedRingElem out;
    out.ring = r;
    out.n = n;
    out.carrier = elementary(r, n, 1, n, a);
    // e_{1,n}(a) is its own canonical coset representative: any other scalar
    // multiple starts with an entry > 1.
    check(canonical_carrier(r, out.carrier) == out.carrier, "carrier not canonical");
    return out;
}

Int carrier_decode(const Mat& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            if (i == 0 && j == m.n - 1) continue;
            if (m.at(i, j) != m.ring.canon(i == j ? 1 : 0))
                throw NotInCarrier(m.str() + " is not of the form e_{1,n}(a)");
        }
    return m.at(0, m.n - 1);
}

Int int_decode(const EncodedRingElem& x) { return carrier_decode(x.carrier); }

EncodedRingElem enc_add(const EncodedRingElem& x, const EncodedRingElem& y) {
    require(x.ring == y.ring && x.n == y.n, "encoded operands live in different groups");
    EncodedRingElem out;
    out.ring = x.ring;
    out.n = x.n;
    out.carrier = canonical_carrier(x.ring, x.carrier.mul(y.carrier));
    carrier_decode(out.carrier);
    return out;
}

EncodedRingElem enc_mul(const EncodedRingElem& x, const EncodedRingElem& y) {
    require(x.ring == y.ring && x.n == y.n, "encoded operands live in different groups");
    require(x.n >= 3, "encoded multiplication needs n >= 3");
    int n = x.n;
    Mat p1 = perm_conjugator(x.ring, n, 1, n - 1);
    Mat p2 = perm_conjugator(x.ring, n, n - 1, n);
    Mat u = p1.mul(x.carrier).mul(p1.inverse());
    Mat v = p2.mul(y.carrier).mul(p2.inverse());
    EncodedRingElem out;
    out.ring = x.ring;
    out.n = n;
    out.carrier = canonical_carrier(x.ring, commutator(u, v));
    carrier_decode(out.carrier);
    return out;
}

bool enc_divides(const EncodedRingElem& r, const EncodedRingElem& s) {
    require(!r.ring.finite() && !s.ring.finite(), "divisibility encoding is over Z");
    Int a = int_decode(r);
    Int b = int_decode(s);
    if (a == 0) return b == 0;
    return b % a == 0;
}

ElementSet carrier_center_set(const GroupTable& G) {
    uint32_t c = G.index_of(elementary(G.ring, G.n, 1, G.n, 1));
    check(c != npos32, "e_{1,n}(1) missing from the table");
    return center_of_subset(G, centralizer_set(G, c));
}

Psl2FieldCodec Psl2FieldCodec::make(const Int& p) {
    require(is_prime(p) && p >= 5, "field codec needs a prime p >= 5");
    Psl2FieldCodec c;
    c.p = uint32_t(to_i64(p));
    c.G = std::make_shared<GroupTable>(enumerate_group("psl:2:gf:" + int_str(p)));
    const RingSpec& r = c.G->ring;

    c.u = c.G->index_of(elementary(r, 2, 1, 2, 1));
    check(c.u != npos32, "unipotent generator missing");
    c.U = centralizer_set(*c.G, c.u);
    check(c.U.count() == c.p, "carrier centralizer has unexpected size");

    // Least primitive root mod p.
    for (Int g = 2; g < p; ++g) {
        Int acc = 1;
        int ord = 0;
        do {
            acc = r.mul(acc, g);
            ++ord;
        } while (acc != 1);
        if (ord == int(c.p) - 1) {
            c.eps = g;
            break;
        }
    }
    check(c.eps >= 2, "no primitive root found");
    Mat tmat = Mat::raw(r, 2, {c.eps, 0, 0, r.inv(c.eps)});
    c.t = c.G->index_of(tmat);
    check(c.t != npos32, "torus generator missing");
    ElementSet cent = centralizer_set(*c.G, c.t);
    for (auto i = cent.find_first(); i != ElementSet::npos; i = cent.find_next(i))
        c.torus.push_back(uint32_t(i));
    return c;
}

uint32_t Psl2FieldCodec::encode(const Int& a) const {
    uint32_t at = G->index_of(elementary(G->ring, 2, 1, 2, a));
    check(at != npos32, "carrier element missing");
    check(U.test(at), "carrier element outside Cent(u)");
    return at;
}

Int Psl2FieldCodec::decode(uint32_t g) const {
    if (!U.test(g)) throw NotInCarrier("element outside the encoded field carrier");
    return carrier_decode(G->mat_of(g));
}

uint32_t Psl2FieldCodec::add_enc(uint32_t x, uint32_t y) const {
    require(U.test(x) && U.test(y), "encoded addition needs carrier elements");
    return G->mul(x, y);
}

uint32_t Psl2FieldCodec::mul_enc(uint32_t x, uint32_t y) const {
    Int a = decode(x);
    Int b = decode(y);
    if (a == 0 || b == 0) return encode(0);
    for (uint32_t s1 : torus) {
        uint32_t c1 = G->conj(G->inv(s1), u);
        for (uint32_t s2 : torus) {
            if (G->mul(c1, G->conj(G->inv(s2), u)) != x) continue;
            return G->mul(G->conj(G->inv(s1), y), G->conj(G->inv(s2), y));
        }
    }
    throw NoTorusWitness("no torus pair realizes " + int_str(a) + " mod " + std::to_string(p));
}

bool Psl2FieldCodec::has_witness(const Int& a) const {
    uint32_t target = encode(a);
    for (uint32_t s1 : torus) {
        uint32_t c1 = G->conj(G->inv(s1), u);
        for (uint32_t s2 : torus)
            if (G->mul(c1, G->conj(G->inv(s2), u)) == target) return true;
    }
    return false;
}

namespace {

// Label each element by the least member of its coset x*H.
std::vector<uint32_t> coset_labels(const GroupTable& G, const ElementSet& H) {
    std::vector<uint32_t> label(G.size(), npos32);
    std::vector<uint32_t> members;
    for (auto i = H.find_first(); i != ElementSet::npos; i = H.find_next(i))
        members.push_back(uint32_t(i));
    for (uint32_t x = 0; x < G.size(); ++x) {
        if (label[x] != npos32) continue;
        uint32_t least = npos32;
        for (uint32_t h : members) least = std::min(least, G.mul(x, h));
        for (uint32_t h : members) label[G.mul(x, h)] = least;
    }
    return label;
}

void require_normal_subgroup(const GroupTable& G, const ElementSet& S, const char* name) {
    require(S.any() && S.test(0), std::string(name) + " must be a subgroup containing identity");
    require(subgroup_closure(G, S) == S, std::string(name) + " is not closed under products");
    require(set_normal(G, S), std::string(name) + " is not normal");
}

}  // namespace

FiberOutcome fiber_correspondence(const GroupTable& G, const ElementSet& L, const ElementSet& M,
                                  const ElementSet& Phi) {
    require_normal_subgroup(G, L, "L");
    require_normal_subgroup(G, M, "M");
    require(Phi.test(0), "Phi must contain the identity");
    require(set_symmetric(G, Phi), "Phi must be symmetric");
    require(subgroup_closure(G, Phi).count() == G.size(), "Phi must generate G");

    std::vector<uint32_t> labL = coset_labels(G, L);
    std::vector<uint32_t> labM = coset_labels(G, M);
    auto covers = [&](const std::vector<uint32_t>& lab, size_t sub) {
        ElementSet hit(G.size());
        for (auto i = Phi.find_first(); i != ElementSet::npos; i = Phi.find_next(i))
            hit.set(lab[uint32_t(i)]);
        return hit.count() == G.size() / sub;
    };
    require(covers(labL, L.count()), "Phi does not project onto G/L");
    require(covers(labM, M.count()), "Phi does not project onto G/M");

    ElementSet sq = set_product(G, Phi, Phi);
    std::vector<uint32_t> elems;
    for (auto i = sq.find_first(); i != ElementSet::npos; i = sq.find_next(i))
        elems.push_back(uint32_t(i));
    for (uint32_t x : elems)
        for (uint32_t y : elems) {
            bool sameL = labL[x] == labL[y];
            bool sameM = labM[x] == labM[y];
            if (sameL != sameM) return FiberOutcome{false, x, y};
        }
    check(L == M, "identical fibers with distinct kernels");
    return FiberOutcome{true, npos32, npos32};
}

ElementSet build_fiber_phi(const GroupTable& G, const ElementSet& L, const ElementSet& M) {
    ElementSet phi(G.size());
    phi.set(0);
    for (uint32_t g : G.gens) phi.set(g);
    for (const ElementSet* H : {&L, &M}) {
        std::vector<uint32_t> lab = coset_labels(G, *H);
        ElementSet seen(G.size());
        for (uint32_t x = 0; x < G.size(); ++x) {
            if (seen.test(lab[x])) continue;
            seen.set(lab[x]);
            phi.set(lab[x]);
        }
    }
    return phi | set_inverse(G, phi);
}

}  // namespace adl
