#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "adl/grouptable.hpp"

namespace adl {

// Vector over F_p, canonical residues 0 <= v[i] < p.
using FpVec = std::vector<uint32_t>;

// Quadratic form q(v) = v^T * gram * v over gf:p, p an odd prime. The bilinear
// form is the polarization B(u, v) = q(u+v) - q(u) - q(v), so B(v, v) = 2 q(v).
struct QuadForm {
    uint32_t p = 0;
    int n = 0;
    std::vector<uint32_t> gram;  // n*n, symmetric, canonical residues

    uint32_t at(int i, int j) const { return gram[size_t(i) * n + j]; }
};

// Form spec "diag:<c1>,...,<cn>" or "gram:[[...]]". Ring must be gf:p with p
// odd; the gram literal must be symmetric.
QuadForm parse_form(const RingSpec& ring, const std::string& text);

// det(gram) != 0 mod p.
bool qf_regular(const QuadForm& f);

uint32_t qf_eval(const QuadForm& f, const FpVec& v);
uint32_t bilinear(const QuadForm& f, const FpVec& u, const FpVec& v);

// Vector literal "(a,b,...)" or "a,b,..."; entries canonicalized mod p.
FpVec parse_vec(const QuadForm& f, const std::string& text);

// 3x3 matrix over F_p built from the polarization B:
//   [ B(a1,a1) B(a1,a2) B(a1,a3) ]
//   [ B(a2,a1) B(a2,a2) B(a1,a3) ]
//   [ B(a3,a1) B(a3,a1) B(a3,a3) ]
// The (2,3) and (3,2) entries are deliberately B(a1,a3), not B(a2,a3).
std::array<uint32_t, 9> gram_triple(const QuadForm& f, const FpVec& a1, const FpVec& a2,
                                    const FpVec& a3);

// All 7 principal minors (non-empty I subset {1,2,3}) nonzero mod p.
bool general_position(const std::array<uint32_t, 9>& M, uint32_t p);

// Maximal dimension of a totally isotropic subspace, by exhaustive flag
// search. Requires a regular form; sized for n <= 5.
int witt_index(const QuadForm& f);

// Reflection tau_v(x) = x - (B(x,v)/q(v)) * v as a matrix; v non-isotropic.
Mat reflection_mat(const QuadForm& f, const FpVec& v);

// SO_q(F_p): closure of the pair products tau_{v0} * tau_v over non-isotropic
// projective representatives v, where v0 is the first non-isotropic vector in
// scan order. Every element is verified to satisfy g^T * gram * g = gram.
// Throws CapExceeded past cap elements.
GroupTable so_group(const QuadForm& f, uint64_t cap = kDefaultGroupCap);

// g acting on F_p^n by matrix times column vector.
FpVec apply_elem(const GroupTable& G, uint32_t g, const FpVec& v);

struct GoodTripleWitness {
    FpVec a4;
    uint32_t sigma = 0, tau = 0;  // sigma(a1,a3) = (a1,a4), tau(a1,a3) = (a2,a4)
};

// First witness in the scan order of the literal double loop over (sigma, tau)
// in G x G with a4 := sigma(a3); nullopt when the exhaustive search fails.
// Requires a1 non-isotropic and a2, a3 in the G-orbit of a1.
std::optional<GoodTripleWitness> good_triple(const GroupTable& G, const QuadForm& f,
                                             const FpVec& a1, const FpVec& a2, const FpVec& a3);

// delta = beta^-1 tau gamma^-1 tau^-1 sigma gamma sigma^-1 for a witness of the
// triple (a1, beta(a2), gamma(a1)). delta(a1) = a2 is checked; a failure is a
// logic bug, not bad input.
uint32_t main_idea_delta(const GroupTable& G, uint32_t beta, uint32_t gamma, const FpVec& a1,
                         const FpVec& a2, const GoodTripleWitness& w);

struct OrbitCover {
    uint64_t orbit_size = 0;
    std::vector<uint64_t> counts;  // counts[i] = |gcl(alpha)^{i+1} * a|
    std::vector<double> curve;     // counts[i] / orbit_size
    int cover_n = 0;               // least N with full coverage, 0 when maxN hit first
};

// Coverage curve N -> |gcl(alpha)^N * a| / |G * a|, stopping at full coverage
// or maxN. Monotone by construction (gcl contains the identity).
OrbitCover orbit_cover(const GroupTable& G, uint32_t alpha, const FpVec& a, int maxN);

struct PmStabCheck {
    uint64_t delta_size = 0;   // elements fixing C-perp pointwise
    uint64_t lambda_size = 0;  // elements acting as a global +-1 on C
    uint64_t cent_size = 0;    // centralizer of the delta subgroup in G
    bool equal = false;        // Cent_G(Delta) == Lambda
};

// C is given by spanning vectors, required pairwise orthogonal and
// non-isotropic. Lambda subset Cent_G(Delta) always holds and is checked.
PmStabCheck pm_stabilizer_centralizer_check(const GroupTable& G, const QuadForm& f,
                                            const std::vector<FpVec>& c_basis);

}  // namespace adl
