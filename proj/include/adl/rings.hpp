#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adl/ints.hpp"

namespace adl {

enum class RingKind { Integers, ModM };

// The base ring: either Z or Z/m with m >= 2. Elements are Int values; finite
// rings keep the canonical residue 0 <= v < m. "gf:p" parses to Z/p with
// primality certified, which some downstream ops require.
struct RingSpec {
    RingKind kind = RingKind::Integers;
    Int modulus = 0;  // 0 for Integers
    std::vector<std::pair<Int, int>> factors;  // prime factorization of modulus
    bool certified_field = false;

    bool finite() const { return kind == RingKind::ModM; }
    bool is_field() const { return certified_field; }

    Int canon(const Int& v) const {
        if (!finite()) return v;
        Int r = v % modulus;
        if (r < 0) r += modulus;
        return r;
    }

    Int add(const Int& a, const Int& b) const { return canon(a + b); }
    Int sub(const Int& a, const Int& b) const { return canon(a - b); }
    Int mul(const Int& a, const Int& b) const { return canon(a * b); }
    Int neg(const Int& a) const { return canon(-a); }
    bool is_unit(const Int& a) const;
    Int inv(const Int& a) const;  // throws NotAUnit

    bool operator==(const RingSpec& o) const {
        return kind == o.kind && modulus == o.modulus;
    }
    std::string str() const;
};

// Principal ideal, canonical generator:
//   Z/m : generator d with d | m, 1 <= d <= m; d = m is the zero ideal
//   Z   : generator g >= 0
struct IdealSpec {
    Int gen;
    Int ring_modulus = 0;  // 0 over Z; lets str() show the zero ideal as (0)
    std::string str() const;
};

// ring_make: "int" | "zmod:<m>" | "gf:<p>".
RingSpec ring_make(const std::string& spec);

// Canonicalize a generator into an IdealSpec for the ring.
IdealSpec ideal_make(const RingSpec& r, const Int& gen);

bool ideal_contains(const RingSpec& r, const IdealSpec& q, const Int& v);

// Quotient ring A/q. For Z/m with ideal (d) this is Z/d; whole ring gives the
// zero ring (unsupported), zero ideal gives A itself.
RingSpec quotient_ring(const RingSpec& r, const IdealSpec& q);

// Maximal ideals: (p) per prime p | m; for a certified field the zero ideal;
// Integers unsupported.
std::vector<IdealSpec> maximal_ideals(const RingSpec& r);

enum class RingOp { Add, Mul, Neg, Inv };

Int ring_arith(const RingSpec& r, RingOp op, const Int& a,
               const std::optional<Int>& b = std::nullopt);

}  // namespace adl
