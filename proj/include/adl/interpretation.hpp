#pragma once

#include <memory>

#include "adl/grouptable.hpp"

namespace adl {

struct NoTorusWitness : Error {
    explicit NoTorusWitness(const std::string& w) : Error("NoTorusWitness: " + w) {}
};

// A ring element a carried as e_{1,n}(a) inside PSL_n. The canonical coset
// representative keeps the unitriangular shape, so the entry (1,n) of the
// carrier is the decoded value. Over Z the diagonal-1 representative is used.
struct EncodedRingElem {
    RingSpec ring;
    int n = 3;
    Mat carrier;
};

// n >= 3 for the multiplication formula; encode itself accepts n >= 2.
EncodedRingElem int_encode(const RingSpec& r, int n, const Int& a);
Int int_decode(const EncodedRingElem& x);
// Reads entry (1,n); throws NotInCarrier unless the matrix is exactly e_{1,n}(a).
Int carrier_decode(const Mat& carrier);

// carrier(x) * carrier(y); addition of the decoded values.
EncodedRingElem enc_add(const EncodedRingElem& x, const EncodedRingElem& y);
// [p_{1,n-1} carrier(x) p_{1,n-1}^{-1}, p_{n-1,n} carrier(y) p_{n-1,n}^{-1}];
// multiplication of the decoded values. Needs n >= 3.
EncodedRingElem enc_mul(const EncodedRingElem& x, const EncodedRingElem& y);
// Over Z only: decode(r) | decode(s), with 0 | s iff s = 0. Group reading:
// carrier(s) lies in the cyclic subgroup generated by carrier(r).
bool enc_divides(const EncodedRingElem& r, const EncodedRingElem& s);

// Z(Cent_G(e_{1,n}(1))). Equality with elem_1n_set(G) is the executable form
// of the carrier characterization inside the enumerated group.
ElementSet carrier_center_set(const GroupTable& G);

// Field arithmetic of F_p realized inside PSL_2(F_p): the carrier subgroup is
// U = Cent(u) for u = e_{1,2}(1); addition is group multiplication in U;
// multiplication is realized through torus-conjugate witness pairs.
struct Psl2FieldCodec {
    std::shared_ptr<GroupTable> G;  // psl:2:gf:p
    uint32_t p = 0;
    Int eps;                        // least primitive root mod p
    uint32_t u = npos32;            // e_{1,2}(1)
    uint32_t t = npos32;            // diag(eps, eps^-1)
    ElementSet U;                   // Cent(u)
    std::vector<uint32_t> torus;    // Cent(t), ascending index order

    static Psl2FieldCodec make(const Int& p);  // p >= 5 prime

    uint32_t encode(const Int& a) const;  // index of e_{1,2}(a)
    Int decode(uint32_t g) const;         // NotInCarrier off the carrier
    uint32_t add_enc(uint32_t x, uint32_t y) const;
    // Searches (s1, s2) in torus order with (s1^-1 u s1)(s2^-1 u s2) = x, then
    // returns (s1^-1 y s1)(s2^-1 y s2). Throws NoTorusWitness if no pair fits.
    uint32_t mul_enc(uint32_t x, uint32_t y) const;
    bool has_witness(const Int& a) const;
};

// Fiber comparison: with L, M normal and Phi a symmetric generating set
// containing the identity and projecting onto G/L and G/M, identical fibers of
// Phi^2 -> G/L and Phi^2 -> G/M force L = M. Returns the first (ascending)
// pair in Phi^2 x Phi^2 whose coset relations disagree otherwise.
struct FiberOutcome {
    bool equal = false;
    uint32_t x = npos32, y = npos32;
};

FiberOutcome fiber_correspondence(const GroupTable& G, const ElementSet& L, const ElementSet& M,
                                  const ElementSet& Phi);

// Smallest-element coset transversals for L and M, generators, identity,
// symmetrized: a Phi satisfying every fiber_correspondence precondition.
ElementSet build_fiber_phi(const GroupTable& G, const ElementSet& L, const ElementSet& M);

}  // namespace adl
