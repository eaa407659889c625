#pragma once

#include "adl/adjoint.hpp"
#include "adl/grouptable.hpp"

namespace adl {

// gcl(alpha): all conjugates of alpha and of alpha^{-1}, plus the identity.
// Symmetric, conjugation invariant, normal-closure generating.
ElementSet gcl_set(const GroupTable& G, uint32_t alpha);

// Class-id support of gcl(alpha)^N, N >= 1. Powers of a conjugation-invariant
// set are computed on class representatives only: the classes of S * T equal
// the classes of rep(c) * T over the classes c of S when T is invariant.
// Stops early at the fixpoint, which also serves powers beyond it.
std::vector<char> gcl_power_classes(const GroupTable& G, uint32_t alpha, int64_t N);
bool in_gcl_pow(const GroupTable& G, uint32_t alpha, int64_t N, uint32_t x);

ElementSet expand_classes(const GroupTable& G, const std::vector<char>& cls);

struct CoverageProfile {
    std::vector<uint64_t> sizes;  // |gcl^1| .. |gcl^N|, strictly increasing
    int fixpoint_n = 0;           // least N with gcl^N = gcl^{N+1}
    ElementSet fixpoint;
};
CoverageProfile coverage_profile(const GroupTable& G, uint32_t alpha);

enum class TriplingVerdict { Covers, Grows };

struct TriplingReport {
    uint64_t size1 = 0;
    uint64_t size3 = 0;
    TriplingVerdict verdict = TriplingVerdict::Grows;
    double log_ratio = 0.0;  // log|S^3| / log|S|; 0 when |S| = 1
};
// Requires S symmetric, containing the identity, and generating G.
TriplingReport tripling(const GroupTable& G, const ElementSet& S);

struct LadderResult {
    bool covered = false;
    int c = -1;               // least c with gcl(g)^{3|Z|} containing ker rho_{p^{n+c}}
    int max_c_checked = 0;    // the scan stops at c = k - n, where the kernel is trivial
    uint64_t power_size = 0;  // |gcl(g)^{3|Z|}|
};
// G over Z/p^k, g outside the star congruence subgroup at level p^n.
LadderResult ladder_constant(const GroupTable& G, uint32_t g, int n);

// Ad-orbit sumset chain of X in the trace-zero matrices over gf:p.
AdjointSaturation adjoint_saturation(int n, uint32_t p, const LieAlgVec& X);

}  // namespace adl
