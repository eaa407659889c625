#pragma once

#include <memory>

#include "adl/mat.hpp"

namespace adl {

struct ReducibleOrBadChar : Error {
    explicit ReducibleOrBadChar(const std::string& w) : Error("ReducibleOrBadChar: " + w) {}
};

// Trace-zero n x n matrix over gf:p in fixed coordinates: row-major entries
// with the last diagonal entry dropped (it equals minus the partial trace).
struct LieAlgVec {
    int n = 3;
    uint32_t p = 0;
    std::vector<uint32_t> c;  // n*n - 1 digits in [0, p)

    bool is_zero() const {
        for (uint32_t d : c)
            if (d) return false;
        return true;
    }
};

// From n*n entries (row major); trace must vanish mod p.
LieAlgVec lie_vec_from_entries(int n, uint32_t p, const std::vector<Int>& entries);
// "[[a,b,...],[...]]" literal.
LieAlgVec parse_lie_vec(int n, uint32_t p, const std::string& text);
std::string lie_vec_str(const LieAlgVec& v);

// Conjugation-orbit structure of the trace-zero matrices under SL_n(F_p),
// n in {2,3}, p odd, p not dividing n. Orbits are classified in closed form
// (characteristic polynomial plus a derogatory flag and nilpotent cube/square
// class tags); a full-space byte table holds the orbit id of every vector.
//
// reach(c) is the bit matrix R[a][b] = "the orbit of rep(c) meets O_a + O_b",
// computed by one exact full-space sweep per scaling class of orbits and
// transported to the other ids via v -> lambda * v.
struct AdjointModel {
    int n = 0;
    uint32_t p = 0;
    uint32_t dim = 0;   // n*n - 1
    uint64_t space = 0; // p^dim
    int norb = 0;       // orbit count including the zero orbit (id 0)

    std::vector<std::vector<uint32_t>> rep;  // id -> digit vector
    std::vector<uint64_t> count;             // id -> |orbit| (census from the table build)
    std::vector<uint8_t> table;              // packed index -> id
    std::vector<int> neg_perm;               // id of -rep

    static AdjointModel build(int n, uint32_t p);
    // Process-wide cache keyed by (n, p); models are immutable once built.
    static const AdjointModel& cached(int n, uint32_t p);

    uint64_t pack(const uint32_t* d) const;
    void unpack(uint64_t idx, uint32_t* d) const;
    uint32_t classify(const uint32_t* d) const;
    uint32_t id_of(const LieAlgVec& v) const;

    // Orbit id permutation induced by v -> lambda * v, lambda a unit.
    std::vector<int> scale_perm(uint32_t lambda) const;

    // R_c as a flat norb*norb bit vector; lazily computed, cached, and shared.
    const std::vector<bool>& reach(int c) const;

    // Uniform-ish random element of SL_n(F_p) (GL sample, one column rescaled).
    std::vector<uint32_t> random_sl(Rng& rng) const;  // n*n digits
    std::vector<uint32_t> conj_vec(const uint32_t* g, const uint32_t* v) const;

  private:
    struct ReachCache;
    std::shared_ptr<ReachCache> reach_cache_;
    void sweep(int c, std::vector<bool>& out) const;
};

struct AdjointSaturation {
    int x_id = 0;
    uint64_t orbit_size = 0;
    bool saturated = false;
    int k = 0;                    // least k with S_k = whole space (when saturated)
    std::vector<int> join_round;  // per orbit id; 0 = never joined
};

// S_1 = O = Ad(SL_n(F_p)) X, S_{m+1} = S_m united with S_m + O, on orbit ids.
AdjointSaturation adjoint_saturate(const AdjointModel& M, const LieAlgVec& X);

}  // namespace adl
