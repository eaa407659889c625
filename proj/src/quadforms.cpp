#include "adl/quadforms.hpp"

#include <algorithm>
#include <functional>

#include "adl/gclsets.hpp"
#include "adl/util.hpp"

namespace adl {

namespace {

uint32_t upow(uint32_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    check(r <= 0xFFFFFFFFull, "vector space too large to index");
    return uint32_t(r);
}

// Positional code over base p; any fixed bijection works, scan order below
// always means ascending code.
uint32_t vec_code(const FpVec& v, uint32_t p) {
    uint32_t c = 0;
    for (size_t i = v.size(); i-- > 0;) c = c * p + v[i];
    return c;
}

FpVec vec_decode(uint32_t c, uint32_t p, int n) {
    FpVec v(size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        v[size_t(i)] = c % p;
        c /= p;
    }
    return v;
}

void require_dim(const QuadForm& f, const FpVec& v) {
    require(int(v.size()) == f.n, "vector dimension does not match the form");
}

// Rank of a k x n matrix mod p, destructive.
int rank_mod_p(std::vector<FpVec>& rows, uint32_t p) {
    int rank = 0;
    int n = rows.empty() ? 0 : int(rows[0].size());
    for (int col = 0; col < n && rank < int(rows.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[size_t(r)][size_t(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[size_t(rank)], rows[size_t(piv)]);
        uint64_t inv = 1, a = rows[size_t(rank)][size_t(col)] % p;
        // Fermat inverse; p is prime.
        uint64_t b = a, e = p - 2;
        inv = 1;
        while (e) {
            if (e & 1) inv = inv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        for (int j = 0; j < n; ++j)
            rows[size_t(rank)][size_t(j)] = uint32_t(rows[size_t(rank)][size_t(j)] * inv % p);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank || rows[size_t(r)][size_t(col)] == 0) continue;
            uint64_t m = rows[size_t(r)][size_t(col)];
            for (int j = 0; j < n; ++j) {
                uint64_t t = rows[size_t(r)][size_t(j)] + (p - m % p) * rows[size_t(rank)][size_t(j)] % p;
                rows[size_t(r)][size_t(j)] = uint32_t(t % p);
            }
        }
        ++rank;
    }
    return rank;
}

uint32_t det3_mod_p(const std::array<uint32_t, 9>& M, uint32_t p) {
    auto e = [&](int i, int j) { return uint64_t(M[size_t(i) * 3 + j]); };
    uint64_t pos = e(0, 0) * (e(1, 1) * e(2, 2) % p) % p;
    pos = (pos + e(0, 1) * (e(1, 2) * e(2, 0) % p)) % p;
    pos = (pos + e(0, 2) * (e(1, 0) * e(2, 1) % p)) % p;
    uint64_t neg = e(0, 2) * (e(1, 1) * e(2, 0) % p) % p;
    neg = (neg + e(0, 0) * (e(1, 2) * e(2, 1) % p)) % p;
    neg = (neg + e(0, 1) * (e(1, 0) * e(2, 2) % p)) % p;
    return uint32_t((pos + p - neg % p) % p);
}

}  // namespace

QuadForm parse_form(const RingSpec& ring, const std::string& text) {
    require(ring.is_field(), "form ring must be gf:p");
    require(ring.modulus >= 3 && ring.modulus % 2 == 1, "form characteristic must be odd");
    require(ring.modulus <= Int(1u << 20), "form characteristic too large");
    QuadForm f;
    f.p = uint32_t(ring.modulus.convert_to<uint64_t>());
    if (text.rfind("diag:", 0) == 0) {
        std::string body = text.substr(5);
        if (body.empty()) throw ParseError(5, "empty diagonal");
        std::vector<uint32_t> diag;
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            std::string piece = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
            if (piece.empty()) throw ParseError(5 + pos, "empty diagonal entry");
            size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(piece, &used);
            } catch (const std::exception&) {
                throw ParseError(5 + pos, "bad diagonal entry");
            }
            if (used != piece.size()) throw ParseError(5 + pos + used, "trailing junk in entry");
            diag.push_back(uint32_t(ring.canon(Int(v)).convert_to<uint64_t>()));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        f.n = int(diag.size());
        f.gram.assign(size_t(f.n) * f.n, 0);
        for (int i = 0; i < f.n; ++i) f.gram[size_t(i) * f.n + i] = diag[size_t(i)];
        return f;
    }
    if (text.rfind("gram:", 0) == 0) {
        std::string body = text.substr(5);
        int rows = 0;
        for (size_t i = 1; i < body.size(); ++i)
            if (body[i] == '[') ++rows;
        if (rows == 0) throw ParseError(5, "expected a matrix literal");
        std::vector<Int> ent = parse_matrix_entries(ring, rows, body);
        f.n = rows;
        f.gram.resize(size_t(rows) * rows);
        for (size_t i = 0; i < ent.size(); ++i) f.gram[i] = uint32_t(ent[i].convert_to<uint64_t>());
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < i; ++j)
                require(f.at(i, j) == f.at(j, i), "gram matrix must be symmetric");
        return f;
    }
    throw ParseError(0, "form spec must start with diag: or gram:");
}

bool qf_regular(const QuadForm& f) {
    std::vector<FpVec> rows(size_t(f.n), FpVec(size_t(f.n)));
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) rows[size_t(i)][size_t(j)] = f.at(i, j);
    return rank_mod_p(rows, f.p) == f.n;
}

uint32_t qf_eval(const QuadForm& f, const FpVec& v) {
    require_dim(f, v);
    uint64_t acc = 0;
    for (int i = 0; i < f.n; ++i) {
        uint64_t row = 0;
        for (int j = 0; j < f.n; ++j) row = (row + uint64_t(f.at(i, j)) * v[size_t(j)]) % f.p;
        acc = (acc + row * v[size_t(i)]) % f.p;
    }
    return uint32_t(acc);
}

uint32_t bilinear(const QuadForm& f, const FpVec& u, const FpVec& v) {
    require_dim(f, u);
    require_dim(f, v);
    uint64_t acc = 0;
    for (int i = 0; i < f.n; ++i) {
        uint64_t row = 0;
        for (int j = 0; j < f.n; ++j) row = (row + uint64_t(f.at(i, j)) * v[size_t(j)]) % f.p;
        acc = (acc + row * u[size_t(i)]) % f.p;
    }
    return uint32_t(acc * 2 % f.p);
}

FpVec parse_vec(const QuadForm& f, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw ParseError(body.size(), "unclosed vector literal");
        body = body.substr(1, body.size() - 2);
    }
    FpVec v;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t comma = body.find(',', pos);
        std::string piece = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (piece.empty()) throw ParseError(pos, "empty vector entry");
        size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(piece, &used);
        } catch (const std::exception&) {
            throw ParseError(pos, "bad vector entry");
        }
        if (used != piece.size()) throw ParseError(pos + used, "trailing junk in entry");
        long long r = x % (long long)f.p;
        if (r < 0) r += f.p;
        v.push_back(uint32_t(r));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    require(int(v.size()) == f.n, "vector length does not match the form");
    return v;
}

std::array<uint32_t, 9> gram_triple(const QuadForm& f, const FpVec& a1, const FpVec& a2,
                                    const FpVec& a3) {
    uint32_t b11 = bilinear(f, a1, a1), b12 = bilinear(f, a1, a2), b13 = bilinear(f, a1, a3);
    uint32_t b22 = bilinear(f, a2, a2), b33 = bilinear(f, a3, a3);
    // Rows 2 and 3 repeat B(a1,a3) in the last two columns; that asymmetry is
    // part of the definition, not a typo.
    return {b11, b12, b13, b12, b22, b13, b13, b13, b33};
}

bool general_position(const std::array<uint32_t, 9>& M, uint32_t p) {
    auto e = [&](int i, int j) { return uint64_t(M[size_t(i) * 3 + j]); };
    for (int i = 0; i < 3; ++i)
        if (e(i, i) % p == 0) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            uint64_t d = (e(i, i) * e(j, j) % p + p - e(i, j) * e(j, i) % p) % p;
            if (d == 0) return false;
        }
    return det3_mod_p(M, p) != 0;
}

int witt_index(const QuadForm& f) {
    require(f.n >= 1 && f.n <= 5, "witt_index sized for n <= 5");
    require(qf_regular(f), "witt_index requires a regular form");
    uint32_t pn = upow(f.p, f.n);
    std::vector<FpVec> all(pn);
    std::vector<bool> normalized(pn, false), isotropic(pn, false);
    for (uint32_t c = 1; c < pn; ++c) {
        all[c] = vec_decode(c, f.p, f.n);
        const FpVec& v = all[c];
        size_t lead = 0;
        while (v[lead] == 0) ++lead;
        normalized[c] = v[lead] == 1;
        isotropic[c] = qf_eval(f, v) == 0;
    }
    // Grow totally isotropic flags; a basis normalized to leading coefficient 1
    // and sorted by code is visited, so the maximum depth is exact.
    int best = 0;
    std::vector<uint32_t> basis;
    std::function<void(uint32_t)> rec = [&](uint32_t from) {
        best = std::max(best, int(basis.size()));
        if (int(basis.size()) == f.n / 2) return;  // regular form cap
        for (uint32_t c = from; c < pn; ++c) {
            if (!normalized[c] || !isotropic[c]) continue;
            const FpVec& v = all[c];
            bool orth = true;
            for (uint32_t b : basis)
                if (bilinear(f, v, all[b]) != 0) {
                    orth = false;
                    break;
                }
            if (!orth) continue;
            std::vector<FpVec> rows;
            rows.reserve(basis.size() + 1);
            for (uint32_t b : basis) rows.push_back(all[b]);
            rows.push_back(v);
            if (rank_mod_p(rows, f.p) != int(rows.size())) continue;
            basis.push_back(c);
            rec(c + 1);
            basis.pop_back();
        }
    };
    rec(1);
    return best;
}

Mat reflection_mat(const QuadForm& f, const FpVec& v) {
    require_dim(f, v);
    uint32_t qv = qf_eval(f, v);
    require(qv != 0, "reflection vector must be non-isotropic");
    RingSpec r = ring_make("gf:" + std::to_string(f.p));
    uint64_t qinv = uint64_t(r.inv(Int(qv)).convert_to<uint64_t>());
    // w[j] = B(e_j, v) = 2 (G v)_j, entry(i,j) = delta_ij - w[j] * v[i] / q(v).
    std::vector<uint64_t> w(size_t(f.n));
    for (int j = 0; j < f.n; ++j) {
        uint64_t s = 0;
        for (int k = 0; k < f.n; ++k) s = (s + uint64_t(f.at(j, k)) * v[size_t(k)]) % f.p;
        w[size_t(j)] = s * 2 % f.p;
    }
    std::vector<Int> ent(size_t(f.n) * f.n);
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) {
            uint64_t sub = w[size_t(j)] * qinv % f.p * v[size_t(i)] % f.p;
            uint64_t val = ((i == j ? 1 : 0) + f.p - sub) % f.p;
            ent[size_t(i) * f.n + j] = Int(val);
        }
    return Mat::raw(r, f.n, std::move(ent));
}

GroupTable so_group(const QuadForm& f, uint64_t cap) {
    require(qf_regular(f), "so_group requires a regular form");
    uint32_t pn = upow(f.p, f.n);
    uint32_t v0_code = 0;
    for (uint32_t c = 1; c < pn && v0_code == 0; ++c) {
        FpVec v = vec_decode(c, f.p, f.n);
        size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] == 1 && qf_eval(f, v) != 0) v0_code = c;
    }
    check(v0_code != 0, "regular form with no non-isotropic vector");
    Mat t0 = reflection_mat(f, vec_decode(v0_code, f.p, f.n));
    std::vector<Mat> gens;
    for (uint32_t c = v0_code + 1; c < pn; ++c) {
        FpVec v = vec_decode(c, f.p, f.n);
        size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1 || qf_eval(f, v) == 0) continue;
        Mat g = t0.mul(reflection_mat(f, v));
        // from_entries re-checks det = 1 for each pair product.
        gens.push_back(Mat::from_entries(g.ring, g.n, g.a));
    }
    std::string label = "so:" + std::to_string(f.n) + ":gf:" + std::to_string(f.p);
    GroupTable G = GroupTable::generate(ring_make("gf:" + std::to_string(f.p)), f.n, false, gens,
                                        cap, label);
    // Every generated element must preserve the form: g^T * gram * g = gram.
    for (uint32_t g = 0; g < G.size(); ++g) {
        const uint32_t* e = G.raw(g);
        for (int i = 0; i < f.n; ++i)
            for (int j = 0; j < f.n; ++j) {
                uint64_t s = 0;
                for (int k = 0; k < f.n; ++k) {
                    uint64_t row = 0;
                    for (int l = 0; l < f.n; ++l)
                        row = (row + uint64_t(f.at(k, l)) * e[size_t(l) * f.n + j]) % f.p;
                    s = (s + uint64_t(e[size_t(k) * f.n + i]) * row) % f.p;
                }
                check(uint32_t(s) == f.at(i, j), "generated element does not preserve the form");
            }
    }
    return G;
}

FpVec apply_elem(const GroupTable& G, uint32_t g, const FpVec& v) {
    require(int(v.size()) == G.n, "vector dimension does not match the group");
    const uint32_t* e = G.raw(g);
    FpVec w(size_t(G.n));
    for (int i = 0; i < G.n; ++i) {
        uint64_t s = 0;
        for (int j = 0; j < G.n; ++j) s = (s + uint64_t(e[size_t(i) * G.n + j]) * v[size_t(j)]) % G.m;
        w[size_t(i)] = uint32_t(s);
    }
    return w;
}

std::optional<GoodTripleWitness> good_triple(const GroupTable& G, const QuadForm& f,
                                             const FpVec& a1, const FpVec& a2, const FpVec& a3) {
    require(G.n == f.n && G.m == f.p, "group does not act on the form's space");
    require(qf_eval(f, a1) != 0, "a1 must be non-isotropic");
    uint32_t pn = upow(f.p, f.n);
    uint32_t sz = G.size();

    // One pass: the orbit of a1 and its stabilizer in table order.
    ElementSet orbit(pn);
    std::vector<uint32_t> stab;
    for (uint32_t g = 0; g < sz; ++g) {
        FpVec w = apply_elem(G, g, a1);
        orbit.set(vec_code(w, f.p));
        if (w == a1) stab.push_back(g);
    }
    require(orbit.test(vec_code(a2, f.p)), "a2 must lie in the orbit of a1");
    require(orbit.test(vec_code(a3, f.p)), "a3 must lie in the orbit of a1");

    // Least tau with tau(a1) = a2, keyed by tau(a3). Scanning sigma over the
    // stabilizer in ascending order with this lookup returns exactly the first
    // witness of the literal (sigma, tau) double loop over G x G.
    std::vector<uint32_t> least_tau(pn, npos32);
    for (uint32_t g = 0; g < sz; ++g) {
        if (apply_elem(G, g, a1) != a2) continue;
        uint32_t c = vec_code(apply_elem(G, g, a3), f.p);
        if (least_tau[c] == npos32) least_tau[c] = g;
    }
    for (uint32_t sigma : stab) {
        FpVec a4 = apply_elem(G, sigma, a3);
        uint32_t tau = least_tau[vec_code(a4, f.p)];
        if (tau == npos32) continue;
        check(apply_elem(G, sigma, a1) == a1 && apply_elem(G, tau, a1) == a2 &&
                  apply_elem(G, tau, a3) == a4,
              "good_triple witness failed re-verification");
        return GoodTripleWitness{std::move(a4), sigma, tau};
    }
    return std::nullopt;
}

uint32_t main_idea_delta(const GroupTable& G, uint32_t beta, uint32_t gamma, const FpVec& a1,
                         const FpVec& a2, const GoodTripleWitness& w) {
    uint32_t d = G.inv(beta);
    d = G.mul(d, w.tau);
    d = G.mul(d, G.inv(gamma));
    d = G.mul(d, G.inv(w.tau));
    d = G.mul(d, w.sigma);
    d = G.mul(d, gamma);
    d = G.mul(d, G.inv(w.sigma));
    check(apply_elem(G, d, a1) == a2, "main_idea delta does not map a1 to a2");
    return d;
}

OrbitCover orbit_cover(const GroupTable& G, uint32_t alpha, const FpVec& a, int maxN) {
    require(int(a.size()) == G.n, "vector dimension does not match the group");
    require(maxN >= 1, "maxN must be positive");
    uint32_t pn = upow(G.m, G.n);
    OrbitCover out;

    ElementSet orbit(pn);
    for (uint32_t g = 0; g < G.size(); ++g) orbit.set(vec_code(apply_elem(G, g, a), G.m));
    out.orbit_size = orbit.count();

    ElementSet S = gcl_set(G, alpha);
    std::vector<uint32_t> members;
    for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
        members.push_back(uint32_t(i));

    ElementSet covered(pn);
    covered.set(vec_code(a, G.m));
    std::vector<uint32_t> frontier{vec_code(a, G.m)};
    uint64_t prev = 1;
    for (int step = 1; step <= maxN; ++step) {
        std::vector<uint32_t> next;
        for (uint32_t c : frontier) {
            FpVec v = vec_decode(c, G.m, G.n);
            for (uint32_t s : members) {
                uint32_t w = vec_code(apply_elem(G, s, v), G.m);
                if (!covered.test(w)) {
                    covered.set(w);
                    next.push_back(w);
                }
            }
        }
        uint64_t now = covered.count();
        check(now >= prev, "coverage curve must be monotone");
        prev = now;
        out.counts.push_back(now);
        if (now == out.orbit_size) {
            out.cover_n = step;
            break;
        }
        if (next.empty()) {
            // gcl^N a has stabilized; the curve is constant from here on.
            while (int(out.counts.size()) < maxN) out.counts.push_back(now);
            break;
        }
        frontier = std::move(next);
    }
    out.curve.reserve(out.counts.size());
    for (uint64_t c : out.counts) out.curve.push_back(double(c) / double(out.orbit_size));
    return out;
}

PmStabCheck pm_stabilizer_centralizer_check(const GroupTable& G, const QuadForm& f,
                                            const std::vector<FpVec>& c_basis) {
    require(G.n == f.n && G.m == f.p, "group does not act on the form's space");
    require(!c_basis.empty(), "subspace needs at least one spanning vector");
    for (size_t i = 0; i < c_basis.size(); ++i) {
        require(int(c_basis[i].size()) == f.n, "spanning vector has wrong dimension");
        require(qf_eval(f, c_basis[i]) != 0, "spanning vectors must be non-isotropic");
        for (size_t j = 0; j < i; ++j)
            require(bilinear(f, c_basis[i], c_basis[j]) == 0,
                    "spanning vectors must be pairwise orthogonal");
    }
    // Orthogonal non-isotropic vectors are independent and q restricted to C is
    // regular, so F^n = C + C_perp splits.

    // C_perp = nullspace of the map x -> (B(x, c_i))_i.
    std::vector<FpVec> rows;
    for (const FpVec& c : c_basis) {
        FpVec row(size_t(f.n));
        for (int j = 0; j < f.n; ++j) {
            FpVec ej(size_t(f.n), 0);
            ej[size_t(j)] = 1;
            row[size_t(j)] = bilinear(f, ej, c);
        }
        rows.push_back(row);
    }
    int rk = rank_mod_p(rows, f.p);
    check(rk == int(c_basis.size()), "orthogonal non-isotropic vectors must be independent");
    // Free columns parameterize the nullspace; read a basis off the echelon.
    std::vector<int> pivot_col(size_t(rk), -1);
    std::vector<bool> is_pivot(size_t(f.n), false);
    for (int r = 0; r < rk; ++r) {
        for (int jj = 0; jj < f.n; ++jj)
            if (rows[size_t(r)][size_t(jj)] != 0) {
                pivot_col[size_t(r)] = jj;
                is_pivot[size_t(jj)] = true;
                break;
            }
    }
    std::vector<FpVec> perp_basis;
    for (int free_col = 0; free_col < f.n; ++free_col) {
        if (is_pivot[size_t(free_col)]) continue;
        FpVec v(size_t(f.n), 0);
        v[size_t(free_col)] = 1;
        for (int r = 0; r < rk; ++r) {
            uint32_t coef = rows[size_t(r)][size_t(free_col)];
            v[size_t(pivot_col[size_t(r)])] = (f.p - coef) % f.p;
        }
        perp_basis.push_back(v);
    }

    uint32_t sz = G.size();
    ElementSet delta(sz), lambda(sz);
    for (uint32_t g = 0; g < sz; ++g) {
        bool fixes = true;
        for (const FpVec& u : perp_basis)
            if (apply_elem(G, g, u) != u) {
                fixes = false;
                break;
            }
        if (fixes) delta.set(g);
        bool plus = true, minus = true;
        for (const FpVec& c : c_basis) {
            FpVec img = apply_elem(G, g, c);
            if (img != c) plus = false;
            FpVec nc(c.size());
            for (size_t i = 0; i < c.size(); ++i) nc[i] = (f.p - c[i]) % f.p;
            if (img != nc) minus = false;
            if (!plus && !minus) break;
        }
        if (plus || minus) lambda.set(g);
    }

    std::vector<uint32_t> delta_members;
    for (auto i = delta.find_first(); i != ElementSet::npos; i = delta.find_next(i))
        delta_members.push_back(uint32_t(i));
    ElementSet cent(sz);
    for (uint32_t g = 0; g < sz; ++g) {
        bool ok = true;
        for (uint32_t d : delta_members)
            if (G.mul(g, d) != G.mul(d, g)) {
                ok = false;
                break;
            }
        if (ok) cent.set(g);
    }
    check((lambda & ~cent).none(), "pm-scalars must centralize the pointwise fixers");

    PmStabCheck out;
    out.delta_size = delta.count();
    out.lambda_size = lambda.count();
    out.cent_size = cent.count();
    out.equal = cent == lambda;
    return out;
}

}  // namespace adl
