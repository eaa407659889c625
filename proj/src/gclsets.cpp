#include "adl/gclsets.hpp"

#include <cmath>

namespace adl {

ElementSet gcl_set(const GroupTable& G, uint32_t alpha) {
    require(alpha < G.size(), "element index out of range");
    const GroupTable::Classes& cls = G.classes();
    ElementSet s = G.empty_set();
    for (uint32_t c : {cls.class_of[alpha], cls.class_of[G.inv(alpha)]})
        for (uint32_t k = cls.offsets[c]; k < cls.offsets[c + 1]; ++k) s.set(cls.members[k]);
    s.set(0);
    return s;
}

std::vector<char> gcl_power_classes(const GroupTable& G, uint32_t alpha, int64_t N) {
    require(alpha < G.size(), "element index out of range");
    require(N >= 1, "power must be positive");
    const GroupTable::Classes& cls = G.classes();
    ElementSet g1 = gcl_set(G, alpha);
    std::vector<uint32_t> g1_members;
    g1_members.reserve(g1.count());
    for (auto i = g1.find_first(); i != ElementSet::npos; i = g1.find_next(i))
        g1_members.push_back(uint32_t(i));

    std::vector<char> in(cls.reps.size(), 0);
    std::vector<uint32_t> frontier;
    auto add = [&](uint32_t c) {
        if (!in[c]) {
            in[c] = 1;
            frontier.push_back(c);
        }
    };
    add(cls.class_of[0]);
    add(cls.class_of[alpha]);
    add(cls.class_of[G.inv(alpha)]);
    for (int64_t step = 2; step <= N && !frontier.empty(); ++step) {
        std::vector<uint32_t> next;
        for (uint32_t c : frontier) {
            uint32_t r = cls.reps[c];
            for (uint32_t t : g1_members) {
                uint32_t cc = cls.class_of[G.mul(r, t)];
                if (!in[cc]) {
                    in[cc] = 1;
                    next.push_back(cc);
                }
            }
        }
        frontier = std::move(next);
    }
    return in;
}

bool in_gcl_pow(const GroupTable& G, uint32_t alpha, int64_t N, uint32_t x) {
    require(x < G.size(), "element index out of range");
    std::vector<char> in = gcl_power_classes(G, alpha, N);
    return in[G.classes().class_of[x]] != 0;
}

ElementSet expand_classes(const GroupTable& G, const std::vector<char>& cls) {
    const GroupTable::Classes& c = G.classes();
    check(cls.size() == c.reps.size(), "class vector length");
    ElementSet s = G.empty_set();
    for (size_t k = 0; k < cls.size(); ++k)
        if (cls[k])
            for (uint32_t j = c.offsets[k]; j < c.offsets[k + 1]; ++j) s.set(c.members[j]);
    return s;
}

CoverageProfile coverage_profile(const GroupTable& G, uint32_t alpha) {
    require(alpha < G.size(), "element index out of range");
    const GroupTable::Classes& cls = G.classes();
    ElementSet g1 = gcl_set(G, alpha);
    std::vector<uint32_t> g1_members;
    for (auto i = g1.find_first(); i != ElementSet::npos; i = g1.find_next(i))
        g1_members.push_back(uint32_t(i));

    std::vector<char> in(cls.reps.size(), 0);
    std::vector<uint32_t> frontier;
    uint64_t size = 0;
    auto add = [&](uint32_t c) {
        if (!in[c]) {
            in[c] = 1;
            size += cls.sizes[c];
            frontier.push_back(c);
        }
    };
    add(cls.class_of[0]);
    add(cls.class_of[alpha]);
    add(cls.class_of[G.inv(alpha)]);

    CoverageProfile out;
    out.sizes.push_back(size);
    for (;;) {
        std::vector<uint32_t> next;
        for (uint32_t c : frontier) {
            uint32_t r = cls.reps[c];
            for (uint32_t t : g1_members) {
                uint32_t cc = cls.class_of[G.mul(r, t)];
                if (!in[cc]) {
                    in[cc] = 1;
                    size += cls.sizes[cc];
                    next.push_back(cc);
                }
            }
        }
        if (next.empty()) break;  // gcl^N = gcl^{N+1}, re-checked by the empty step
        frontier = std::move(next);
        out.sizes.push_back(size);
    }
    out.fixpoint_n = int(out.sizes.size());
    out.fixpoint = expand_classes(G, in);
    for (size_t k = 1; k < out.sizes.size(); ++k)
        check(out.sizes[k] > out.sizes[k - 1], "power sizes strictly increase to the fixpoint");
    return out;
}

TriplingReport tripling(const GroupTable& G, const ElementSet& S) {
    require(S.size() == G.size(), "set size mismatch");
    require(S.test(0), "S must contain the identity");
    require(set_symmetric(G, S), "S must be symmetric");
    require(subgroup_closure(G, S).count() == G.size(), "S must generate the group");
    TriplingReport r;
    r.size1 = S.count();
    ElementSet s2 = set_product(G, S, S);
    ElementSet s3 = set_product(G, s2, S);
    r.size3 = s3.count();
    r.verdict = (r.size3 == G.size()) ? TriplingVerdict::Covers : TriplingVerdict::Grows;
    r.log_ratio = (r.size1 > 1) ? std::log(double(r.size3)) / std::log(double(r.size1)) : 0.0;
    return r;
}

LadderResult ladder_constant(const GroupTable& G, uint32_t g, int n) {
    require(G.ring.finite(), "ladder needs a finite base ring");
    require(G.ring.factors.size() == 1, "ladder needs a prime power modulus");
    require(g < G.size(), "element index out of range");
    const Int& p = G.ring.factors[0].first;
    const int k = G.ring.factors[0].second;
    require(n >= 1 && n <= k, "level n out of range");
    Int pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    require(!star_congruence_set(G, ideal_make(G.ring, pn)).test(g),
            "g must lie outside the star congruence subgroup at level n");

    uint64_t zsize = center_set(G).count();
    int64_t N = 3 * int64_t(zsize);
    ElementSet power = expand_classes(G, gcl_power_classes(G, g, N));

    LadderResult out;
    out.power_size = power.count();
    out.max_c_checked = k - n;
    Int level = pn;
    for (int c = 0; c <= k - n; ++c) {
        ElementSet ker = congruence_set(G, ideal_make(G.ring, level));
        if (ker.is_subset_of(power)) {
            out.covered = true;
            out.c = c;
            return out;
        }
        level *= p;
    }
    return out;
}

AdjointSaturation adjoint_saturation(int n, uint32_t p, const LieAlgVec& X) {
    AdjointSaturation s = adjoint_saturate(AdjointModel::cached(n, p), X);
    if (!s.saturated)
        throw ReducibleOrBadChar("sumset chain stabilized below the full space at round " +
                                 std::to_string(s.k));
    return s;
}

}  // namespace adl
