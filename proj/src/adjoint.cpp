#include "adl/adjoint.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>

namespace adl {

namespace {

inline uint32_t addm(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint32_t subm(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t mulm(uint32_t a, uint32_t b, uint32_t p) {
    return uint32_t(uint64_t(a) * b % p);
}
inline uint32_t powm(uint32_t a, uint32_t e, uint32_t p) {
    uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint32_t invm(uint32_t a, uint32_t p) { return powm(a % p, p - 2, p); }

inline bool small_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// n x n matrices over F_p as flat uint32 arrays, row major.
void mm_mul(int n, uint32_t p, const uint32_t* a, const uint32_t* b, uint32_t* out) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            uint64_t acc = 0;
            for (int k = 0; k < n; ++k) acc += uint64_t(a[i * n + k]) * b[k * n + j];
            out[i * n + j] = uint32_t(acc % p);
        }
}

uint32_t mm_det(int n, uint32_t p, const uint32_t* a) {
    if (n == 2) return subm(mulm(a[0], a[3], p), mulm(a[1], a[2], p), p);
    // n == 3
    uint32_t t = 0;
    t = addm(t, mulm(a[0], subm(mulm(a[4], a[8], p), mulm(a[5], a[7], p), p), p), p);
    t = subm(t, mulm(a[1], subm(mulm(a[3], a[8], p), mulm(a[5], a[6], p), p), p), p);
    t = addm(t, mulm(a[2], subm(mulm(a[3], a[7], p), mulm(a[4], a[6], p), p), p), p);
    return t;
}

// Adjugate-based inverse, n <= 3, det must be a unit.
void mm_inv(int n, uint32_t p, const uint32_t* a, uint32_t* out) {
    uint32_t d = mm_det(n, p, a);
    uint32_t di = invm(d, p);
    if (n == 2) {
        out[0] = mulm(a[3], di, p);
        out[1] = mulm(subm(0, a[1], p), di, p);
        out[2] = mulm(subm(0, a[2], p), di, p);
        out[3] = mulm(a[0], di, p);
        return;
    }
    auto cof = [&](int r0, int r1, int c0, int c1) {
        return subm(mulm(a[r0 * 3 + c0], a[r1 * 3 + c1], p), mulm(a[r0 * 3 + c1], a[r1 * 3 + c0], p), p);
    };
    // adj[j][i] = cofactor(i, j)
    uint32_t adj[9];
    adj[0] = cof(1, 2, 1, 2);
    adj[3] = subm(0, cof(1, 2, 0, 2), p);
    adj[6] = cof(1, 2, 0, 1);
    adj[1] = subm(0, cof(0, 2, 1, 2), p);
    adj[4] = cof(0, 2, 0, 2);
    adj[7] = subm(0, cof(0, 2, 0, 1), p);
    adj[2] = cof(0, 1, 1, 2);
    adj[5] = subm(0, cof(0, 1, 0, 2), p);
    adj[8] = cof(0, 1, 0, 1);
    for (int i = 0; i < 9; ++i) out[i] = mulm(adj[i], di, p);
}

// Expand dim digits into a full traceless n x n matrix.
void vec_to_mm(int n, uint32_t p, const uint32_t* d, uint32_t* m) {
    uint32_t dim = uint32_t(n) * n - 1;
    for (uint32_t k = 0; k < dim; ++k) m[k] = d[k];
    uint32_t tr = 0;
    for (int i = 0; i + 1 < n; ++i) tr = addm(tr, d[i * n + i], p);
    m[dim] = subm(0, tr, p);
}

}  // namespace

LieAlgVec lie_vec_from_entries(int n, uint32_t p, const std::vector<Int>& entries) {
    require(n == 2 || n == 3, "lie vectors support n in {2, 3}");
    require(p >= 3, "lie vectors need p >= 3");
    require(entries.size() == size_t(n) * n, "entry count must be n*n");
    LieAlgVec v;
    v.n = n;
    v.p = p;
    Int pm = p;
    Int tr = 0;
    std::vector<uint32_t> full(size_t(n) * n);
    for (size_t k = 0; k < entries.size(); ++k) {
        Int r = entries[k] % pm;
        if (r < 0) r += pm;
        full[k] = uint32_t(r);
    }
    for (int i = 0; i < n; ++i) tr += full[size_t(i) * n + i];
    require(tr % pm == 0, "matrix must be trace zero mod p");
    v.c.assign(full.begin(), full.end() - 1);
    return v;
}

LieAlgVec parse_lie_vec(int n, uint32_t p, const std::string& text) {
    RingSpec r = ring_make("zmod:" + std::to_string(p));
    return lie_vec_from_entries(n, p, parse_matrix_entries(r, n, text));
}

std::string lie_vec_str(const LieAlgVec& v) {
    std::vector<uint32_t> m(size_t(v.n) * v.n);
    vec_to_mm(v.n, v.p, v.c.data(), m.data());
    std::string s = "[";
    for (int i = 0; i < v.n; ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < v.n; ++j) {
            if (j) s += ",";
            s += std::to_string(m[size_t(i) * v.n + j]);
        }
        s += "]";
    }
    return s + "]";
}

// Per-model closed-form classification state not exposed in the header.
struct AdjointModel::ReachCache {
    std::mutex mu;
    std::map<int, std::vector<bool>> slabs;

    // classification helpers, filled by build
    std::vector<uint8_t> ab_fast;    // (a*p+b) -> id, 0xFE disc-zero pair, 0xFF origin
    std::vector<int> ab_base;        // (a*p+b) -> derogatory id for disc-zero pairs
    std::vector<uint8_t> sq_class;   // d -> 0 square / 1 nonsquare (n = 2)
    std::vector<uint8_t> cube_class; // d -> cube coset index (n = 3)
    int ncube = 1;
    std::vector<std::vector<int>> scale_perms;  // lambda -> id permutation (lambda >= 1)
    std::vector<int> leader;                    // id -> least id in its scaling class
    std::vector<uint32_t> leader_lambda;        // id -> lambda with scale(lambda)(leader) = id
};

uint64_t AdjointModel::pack(const uint32_t* d) const {
    uint64_t i = 0;
    for (uint32_t k = 0; k < dim; ++k) i = i * p + d[k];
    return i;
}

void AdjointModel::unpack(uint64_t idx, uint32_t* d) const {
    for (uint32_t k = dim; k-- > 0;) {
        d[k] = uint32_t(idx % p);
        idx /= p;
    }
}

uint32_t AdjointModel::classify(const uint32_t* d) const {
    const ReachCache& cc = *reach_cache_;
    if (n == 2) {
        // char poly t^2 + c with c = det = -x0^2 - x1 x2
        uint32_t c = subm(0, addm(mulm(d[0], d[0], p), mulm(d[1], d[2], p), p), p);
        if (c != 0) return 2 + c;
        if (!d[0] && !d[1] && !d[2]) return 0;
        // nilpotent: square class of det[w | Mw] for any w with Mw != 0
        uint32_t m[4];
        vec_to_mm(2, p, d, m);
        uint32_t w0, w1;
        if (m[0] || m[2]) {
            w0 = m[0];
            w1 = m[2];
            // w = e1: det[e1 | Mw] = (Mw)_2
            return 1 + cc.sq_class[w1];
        }
        w0 = m[1];
        w1 = m[3];
        // w = e2: det[e2 | Mw] = -(Mw)_1
        (void)w0;
        (void)w1;
        return 1 + cc.sq_class[subm(0, m[1], p)];
    }
    // n == 3: char poly t^3 + a t + b
    uint32_t m[9];
    vec_to_mm(3, p, d, m);
    uint32_t a = 0;
    a = addm(a, subm(mulm(m[0], m[4], p), mulm(m[1], m[3], p), p), p);
    a = addm(a, subm(mulm(m[0], m[8], p), mulm(m[2], m[6], p), p), p);
    a = addm(a, subm(mulm(m[4], m[8], p), mulm(m[5], m[7], p), p), p);
    uint32_t b = subm(0, mm_det(3, p, m), p);
    uint8_t f = cc.ab_fast[size_t(a) * p + b];
    if (f < 0xFE) return f;
    if (f == 0xFE) {
        // double eigenvalue lam = -3b / (2a), simple -2 lam; derogatory iff
        // rank(M - lam I) = 1, i.e. all 2x2 minors of K vanish
        uint32_t lam = mulm(subm(0, mulm(3 % p, b, p), p), invm(mulm(2, a, p), p), p);
        uint32_t k9[9];
        std::memcpy(k9, m, sizeof k9);
        k9[0] = subm(k9[0], lam, p);
        k9[4] = subm(k9[4], lam, p);
        k9[8] = subm(k9[8], lam, p);
        bool derog = true;
        for (int r0 = 0; r0 < 3 && derog; ++r0)
            for (int r1 = r0 + 1; r1 < 3 && derog; ++r1)
                for (int c0 = 0; c0 < 3 && derog; ++c0)
                    for (int c1 = c0 + 1; c1 < 3; ++c1)
                        if (subm(mulm(k9[r0 * 3 + c0], k9[r1 * 3 + c1], p),
                                 mulm(k9[r0 * 3 + c1], k9[r1 * 3 + c0], p), p)) {
                            derog = false;
                            break;
                        }
        return uint32_t(cc.ab_base[size_t(a) * p + b] + (derog ? 0 : 1));
    }
    // a = b = 0: nilpotent by Cayley-Hamilton
    bool zero = true;
    for (int k = 0; k < 9; ++k)
        if (m[k]) {
            zero = false;
            break;
        }
    if (zero) return 0;
    uint32_t m2[9];
    mm_mul(3, p, m, m, m2);
    bool sq0 = true;
    for (int k = 0; k < 9; ++k)
        if (m2[k]) {
            sq0 = false;
            break;
        }
    if (sq0) return 1;
    // regular nilpotent: cube class of det[w | Mw | M^2 w]
    int wcol = 0;
    while (!m2[wcol] && !m2[3 + wcol] && !m2[6 + wcol]) ++wcol;
    uint32_t pj[9];
    for (int r = 0; r < 3; ++r) {
        pj[r * 3 + 0] = (r == wcol) ? 1 : 0;
        pj[r * 3 + 1] = m[r * 3 + wcol];
        pj[r * 3 + 2] = m2[r * 3 + wcol];
    }
    return 2 + cc.cube_class[mm_det(3, p, pj)];
}

uint32_t AdjointModel::id_of(const LieAlgVec& v) const {
    require(v.n == n && v.p == p, "vector does not match the model");
    require(v.c.size() == dim, "vector has wrong length");
    for (uint32_t d : v.c) require(d < p, "digit out of range");
    return classify(v.c.data());
}

std::vector<int> AdjointModel::scale_perm(uint32_t lambda) const {
    require(lambda % p != 0, "scaling needs a unit");
    return reach_cache_->scale_perms[lambda % p];
}

std::vector<uint32_t> AdjointModel::random_sl(Rng& rng) const {
    std::vector<uint32_t> g(size_t(n) * n);
    for (;;) {
        for (auto& e : g) e = uint32_t(rng.below(p));
        uint32_t d = mm_det(n, p, g.data());
        if (!d) continue;
        uint32_t di = invm(d, p);
        for (int r = 0; r < n; ++r) g[size_t(r) * n] = mulm(g[size_t(r) * n], di, p);
        return g;
    }
}

std::vector<uint32_t> AdjointModel::conj_vec(const uint32_t* g, const uint32_t* v) const {
    std::vector<uint32_t> m(size_t(n) * n), gi(size_t(n) * n), t(size_t(n) * n), r(size_t(n) * n);
    vec_to_mm(n, p, v, m.data());
    mm_inv(n, p, g, gi.data());
    mm_mul(n, p, g, m.data(), t.data());
    mm_mul(n, p, t.data(), gi.data(), r.data());
    r.pop_back();
    return r;
}

AdjointModel AdjointModel::build(int n, uint32_t p) {
    require(n == 2 || n == 3, "adjoint models support n in {2, 3}");
    require(small_prime(p), "p must be prime");
    require(p % 2 == 1, "p must be odd");
    require(p % uint32_t(n) != 0, "p must not divide n");
    if (n == 3)
        require(p <= 13, "full-space table infeasible beyond p = 13 for n = 3");
    else
        require(p <= 61, "p cap for n = 2");

    AdjointModel M;
    M.n = n;
    M.p = p;
    M.dim = uint32_t(n) * n - 1;
    M.space = 1;
    for (uint32_t k = 0; k < M.dim; ++k) M.space *= p;
    M.reach_cache_ = std::make_shared<ReachCache>();
    ReachCache& cc = *M.reach_cache_;

    if (n == 2) {
        cc.sq_class.assign(p, 1);
        for (uint32_t x = 1; x < p; ++x) cc.sq_class[mulm(x, x, p)] = 0;
        cc.sq_class[0] = 0;  // unused; nilpotent tags are nonzero
        M.norb = int(p) + 2;
        M.rep.assign(M.norb, std::vector<uint32_t>(M.dim, 0));
        // id 1 and 2: nilpotent subdiag(delta), square then nonsquare delta
        M.rep[1][2] = 1;
        uint32_t nsq = 2;
        while (cc.sq_class[nsq] == 0) ++nsq;
        M.rep[2][2] = nsq;
        // id 2 + c: companion of t^2 + c, c != 0
        for (uint32_t c = 1; c < p; ++c) {
            M.rep[2 + c][1] = subm(0, c, p);
            M.rep[2 + c][2] = 1;
        }
    } else {
        // cube cosets
        std::vector<uint8_t> is_cube(p, 0);
        for (uint32_t x = 1; x < p; ++x) is_cube[powm(x, 3, p)] = 1;
        cc.ncube = (p % 3 == 1) ? 3 : 1;
        cc.cube_class.assign(p, 0);
        if (cc.ncube == 3) {
            uint32_t g = 2;
            while (is_cube[g]) ++g;
            uint32_t g2 = mulm(g, g, p);
            for (uint32_t d = 1; d < p; ++d) {
                if (is_cube[d])
                    cc.cube_class[d] = 0;
                else if (is_cube[mulm(d, invm(g, p), p)])
                    cc.cube_class[d] = 1;
                else {
                    check(is_cube[mulm(d, invm(g2, p), p)], "cube cosets exhaust units");
                    cc.cube_class[d] = 2;
                }
            }
        }
        // orbit ids: 0 zero, 1 rank-one nilpotent, 2.. regular nilpotent cosets,
        // then (a, b) cells ascending, disc-zero cells split derog / non-derog
        cc.ab_fast.assign(size_t(p) * p, 0);
        cc.ab_base.assign(size_t(p) * p, -1);
        int next = 2 + cc.ncube;
        std::vector<std::pair<uint32_t, uint32_t>> cells;
        for (uint32_t a = 0; a < p; ++a)
            for (uint32_t b = 0; b < p; ++b) {
                if (!a && !b) {
                    cc.ab_fast[0] = 0xFF;
                    continue;
                }
                uint32_t disc = addm(mulm(4, powm(a, 3, p), p), mulm(27 % p, mulm(b, b, p), p), p);
                if (disc == 0) {
                    cc.ab_fast[size_t(a) * p + b] = 0xFE;
                    cc.ab_base[size_t(a) * p + b] = next;
                    next += 2;
                } else {
                    check(next < 0xFE, "orbit id fits a byte");
                    cc.ab_fast[size_t(a) * p + b] = uint8_t(next);
                    next += 1;
                }
                cells.emplace_back(a, b);
            }
        M.norb = next;
        M.rep.assign(M.norb, std::vector<uint32_t>(M.dim, 0));
        M.rep[1][1] = 1;  // E_12
        for (int t = 0; t < cc.ncube; ++t) {
            uint32_t delta = 1;
            while (cc.cube_class[delta] != uint32_t(t)) ++delta;
            M.rep[2 + t][3] = 1;
            M.rep[2 + t][7] = delta;
        }
        for (auto [a, b] : cells) {
            // companion of t^3 + a t + b: regular, so it covers the plain cells
            // and the non-derogatory half of disc-zero cells
            std::vector<uint32_t> comp(M.dim, 0);
            comp[2] = subm(0, b, p);
            comp[3] = 1;
            comp[5] = subm(0, a, p);
            comp[7] = 1;
            uint8_t f = cc.ab_fast[size_t(a) * p + b];
            if (f == 0xFE) {
                int base = cc.ab_base[size_t(a) * p + b];
                M.rep[base + 1] = comp;
                uint32_t lam = mulm(subm(0, mulm(3 % p, b, p), p), invm(mulm(2, a, p), p), p);
                M.rep[base][0] = lam;
                M.rep[base][4] = lam;
            } else {
                M.rep[f] = comp;
            }
        }
    }

    // full-space table
    M.table.assign(M.space, 0);
    M.count.assign(M.norb, 0);
    if (n == 2) {
        std::vector<uint32_t> d(M.dim);
        for (uint64_t i = 0; i < M.space; ++i) {
            M.unpack(i, d.data());
            uint8_t id = uint8_t(M.classify(d.data()));
            M.table[i] = id;
            ++M.count[id];
        }
    } else {
        // incremental pass: with x7 the fastest digit, both char poly
        // coefficients are degree 1 in x7, so each inner step is two wrapped adds
        std::vector<uint32_t> d(8, 0);
        uint64_t i = 0;
        const uint8_t* fast = cc.ab_fast.data();
        std::vector<uint64_t> cnt(M.norb, 0);
        for (;;) {
            const uint32_t x0 = d[0], x1 = d[1], x2 = d[2], x3 = d[3], x4 = d[4], x5 = d[5],
                           x6 = d[6];
            const uint32_t z = subm(0, addm(x0, x4, p), p);
            // a = a0 - x5 x7,  b = b0 - (x2 x3 - x0 x5) x7
            uint32_t a0 = 0;
            a0 = addm(a0, subm(mulm(x0, x4, p), mulm(x1, x3, p), p), p);
            a0 = addm(a0, subm(mulm(x0, z, p), mulm(x2, x6, p), p), p);
            a0 = addm(a0, mulm(x4, z, p), p);
            uint32_t da = subm(0, x5, p);
            uint32_t det0 = subm(mulm(x0, mulm(x4, z, p), p), mulm(x1, subm(mulm(x3, z, p), mulm(x5, x6, p), p), p), p);
            det0 = subm(det0, mulm(x2, mulm(x4, x6, p), p), p);
            uint32_t b0 = subm(0, det0, p);
            uint32_t db = subm(mulm(x0, x5, p), mulm(x2, x3, p), p);
            uint32_t a = a0, b = b0;
            for (uint32_t x7 = 0; x7 < p; ++x7) {
                uint8_t f = fast[size_t(a) * p + b];
                if (f >= 0xFE) {
                    d[7] = x7;
                    f = uint8_t(M.classify(d.data()));
                }
                M.table[i++] = f;
                ++cnt[f];
                a = addm(a, da, p);
                b = addm(b, db, p);
            }
            if (i >= M.space) break;
            int k = 6;
            while (++d[k] == p) {
                d[k] = 0;
                --k;
            }
        }
        M.count = cnt;
    }
    check(M.count[0] == 1, "zero orbit is a single point");
    uint64_t tot = 0;
    for (auto c : M.count) {
        check(c > 0, "every orbit id is realized");
        tot += c;
    }
    check(tot == M.space, "orbit census covers the space");
    for (int c = 0; c < M.norb; ++c)
        check(M.classify(M.rep[c].data()) == uint32_t(c), "representative classifies to its id");

    // scaling permutations and scale-class leaders
    cc.scale_perms.assign(p, {});
    for (uint32_t lam = 1; lam < p; ++lam) {
        std::vector<int> perm(M.norb);
        std::vector<uint32_t> tmp(M.dim);
        std::vector<char> seen(M.norb, 0);
        for (int c = 0; c < M.norb; ++c) {
            for (uint32_t k = 0; k < M.dim; ++k) tmp[k] = mulm(M.rep[c][k], lam, p);
            perm[c] = int(M.classify(tmp.data()));
            seen[perm[c]] = 1;
        }
        for (int c = 0; c < M.norb; ++c) check(seen[c], "scaling induces a bijection on orbits");
        check(M.count[perm[0]] == M.count[0], "scaling preserves the zero orbit");
        for (int c = 0; c < M.norb; ++c)
            check(M.count[perm[c]] == M.count[c], "scaling preserves orbit sizes");
        cc.scale_perms[lam] = std::move(perm);
    }
    M.neg_perm = cc.scale_perms[p - 1];
    cc.leader.assign(M.norb, 0);
    cc.leader_lambda.assign(M.norb, 1);
    for (int c = 0; c < M.norb; ++c) {
        int best = c;
        for (uint32_t lam = 2; lam < p; ++lam) best = std::min(best, cc.scale_perms[lam][c]);
        cc.leader[c] = best;
        uint32_t lam = 1;
        while (cc.scale_perms[lam][best] != c) ++lam;
        cc.leader_lambda[c] = lam;
    }
    return M;
}

void AdjointModel::sweep(int c, std::vector<bool>& out) const {
    std::vector<uint8_t> mark(size_t(1) << 16, 0);
    std::vector<uint64_t> pw(dim);
    pw[dim - 1] = 1;
    for (uint32_t k = dim - 1; k-- > 0;) pw[k] = pw[k + 1] * p;
    const uint32_t* r = rep[c].data();
    std::vector<uint32_t> ud(dim, 0), zd(dim);
    uint64_t zi = 0;
    for (uint32_t k = 0; k < dim; ++k) {
        zd[k] = r[k];
        zi = zi * p + r[k];
    }
    const uint8_t* tb = table.data();
    uint8_t* mk = mark.data();
    uint64_t i = 0;
    const uint32_t pm1 = p - 1;
    for (;;) {
        // z = rep_c - u; last digit of z steps down with wraparound while the
        // last digit of u steps up, and returns to its start after p steps
        uint32_t z7 = zd[dim - 1];
        uint64_t ziq = zi;
        for (uint32_t x = 0; x < p; ++x) {
            mk[(uint32_t(tb[i]) << 8) | tb[ziq]] = 1;
            ++i;
            if (z7 == 0) {
                z7 = pm1;
                ziq += pm1;
            } else {
                --z7;
                --ziq;
            }
        }
        if (i >= space) break;
        int k = int(dim) - 2;
        for (;;) {
            // u[k] += 1 (mod p, with carry); z[k] mirrors with a step down
            if (zd[k] == 0) {
                zd[k] = pm1;
                zi += pm1 * pw[k];
            } else {
                --zd[k];
                zi -= pw[k];
            }
            if (++ud[k] == p) {
                ud[k] = 0;
                --k;
            } else {
                break;
            }
        }
    }
    out.assign(size_t(norb) * norb, false);
    for (int a = 0; a < norb; ++a)
        for (int b = 0; b < norb; ++b)
            if (mk[(uint32_t(a) << 8) | uint32_t(b)]) out[size_t(a) * norb + b] = true;
}

const std::vector<bool>& AdjointModel::reach(int c) const {
    require(c >= 0 && c < norb, "orbit id out of range");
    ReachCache& cc = *reach_cache_;
    std::lock_guard<std::mutex> lk(cc.mu);
    auto it = cc.slabs.find(c);
    if (it != cc.slabs.end()) return it->second;
    int L = cc.leader[c];
    if (L == c) {
        std::vector<bool> out;
        sweep(c, out);
        return cc.slabs.emplace(c, std::move(out)).first->second;
    }
    auto lit = cc.slabs.find(L);
    if (lit == cc.slabs.end()) {
        std::vector<bool> out;
        sweep(L, out);
        lit = cc.slabs.emplace(L, std::move(out)).first;
    }
    // O_c = lambda O_L, so rep_c meets O_a + O_b iff rep_L meets the
    // lambda^{-1}-scaled orbits
    const std::vector<int>& spi = cc.scale_perms[invm(cc.leader_lambda[c], p)];
    const std::vector<bool>& base = lit->second;
    std::vector<bool> out(size_t(norb) * norb, false);
    for (int a = 0; a < norb; ++a)
        for (int b = 0; b < norb; ++b)
            if (base[size_t(spi[a]) * norb + spi[b]]) out[size_t(a) * norb + b] = true;
    return cc.slabs.emplace(c, std::move(out)).first->second;
}

const AdjointModel& AdjointModel::cached(int n, uint32_t p) {
    static std::mutex mu;
    static std::map<std::pair<int, uint32_t>, std::unique_ptr<AdjointModel>> models;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(n, p);
    auto it = models.find(key);
    if (it == models.end())
        it = models.emplace(key, std::make_unique<AdjointModel>(build(n, p))).first;
    return *it->second;
}

AdjointSaturation adjoint_saturate(const AdjointModel& M, const LieAlgVec& X) {
    require(!X.is_zero(), "X must be nonzero");
    uint32_t x = M.id_of(X);
    AdjointSaturation out;
    out.x_id = int(x);
    out.orbit_size = M.count[x];
    out.join_round.assign(M.norb, 0);
    std::vector<char> in(M.norb, 0);
    in[x] = 1;
    out.join_round[x] = 1;
    int covered = 1;
    int round = 1;
    while (covered < M.norb) {
        // S_{m+1} = S_m united with S_m + O, evaluated against S_m only
        std::vector<int> newly;
        for (int t = 0; t < M.norb; ++t) {
            if (in[t]) continue;
            const std::vector<bool>& slab = M.reach(t);
            for (int s = 0; s < M.norb; ++s)
                if (in[s] && slab[size_t(s) * M.norb + x]) {
                    newly.push_back(t);
                    break;
                }
        }
        if (newly.empty()) {
            out.saturated = false;
            out.k = round;
            return out;
        }
        ++round;
        for (int t : newly) {
            in[t] = 1;
            out.join_round[t] = round;
        }
        covered += int(newly.size());
    }
    out.saturated = true;
    out.k = round;
    return out;
}

}  // namespace adl
