#include "adl/grouptable.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace adl {

namespace {

inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

void KeyMap::init(size_t expect) {
    size_t cap = 16;
    while (cap < expect * 2) cap <<= 1;
    lo.assign(cap, 0);
    hi.assign(cap, 0);
    val.assign(cap, npos32);
    mask = cap - 1;
    cnt = 0;
}

void KeyMap::grow() {
    KeyMap bigger;
    bigger.init((mask + 1));
    for (size_t i = 0; i <= mask; ++i)
        if (val[i] != npos32) bigger.insert(lo[i], hi[i], val[i]);
    *this = std::move(bigger);
}

uint32_t KeyMap::find(uint64_t l, uint64_t h) const {
    size_t i = mix64(l ^ mix64(h)) & mask;
    while (val[i] != npos32) {
        if (lo[i] == l && hi[i] == h) return val[i];
        i = (i + 1) & mask;
    }
    return npos32;
}

void KeyMap::insert(uint64_t l, uint64_t h, uint32_t v) {
    if ((cnt + 1) * 10 > (mask + 1) * 7) grow();
    size_t i = mix64(l ^ mix64(h)) & mask;
    while (val[i] != npos32) {
        check(!(lo[i] == l && hi[i] == h), "duplicate key insert");
        i = (i + 1) & mask;
    }
    lo[i] = l;
    hi[i] = h;
    val[i] = v;
    ++cnt;
}

GroupSpec parse_group_spec(const std::string& text) {
    GroupSpec out;
    out.text = text;
    if (text.rfind("cyc:", 0) == 0) {
        out.family = GroupFamily::Cyclic;
        out.n = 2;
        out.ring = ring_make("zmod:" + text.substr(4));
        return out;
    }
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) throw ParseError(0, "group spec wants sl:<n>:<ring> | psl:<n>:<ring> | cyc:<m>");
    std::string fam = text.substr(0, c1);
    size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParseError(c1 + 1, "group spec missing ring");
    if (fam == "sl")
        out.family = GroupFamily::SL;
    else if (fam == "psl")
        out.family = GroupFamily::PSL;
    else
        throw ParseError(0, "unknown group family '" + fam + "'");
    out.n = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
    if (out.n < 2 || out.n > 8) throw ParseError(c1 + 1, "group degree out of range [2,8]");
    out.ring = ring_make(text.substr(c2 + 1));
    require(out.ring.finite(), "group enumeration needs a finite ring");
    return out;
}

namespace {

std::vector<uint32_t> projective_scalars(const RingSpec& ring, int n, bool projective) {
    uint32_t m = uint32_t(to_i64(ring.modulus));
    if (!projective) return {1 % m == 0 ? 0u : 1u};
    std::vector<uint32_t> out;
    for (uint32_t s = 1; s < m; ++s) {
        if (int_gcd(Int(s), Int(m)) != 1) continue;
        uint64_t acc = 1;
        for (int k = 0; k < n; ++k) acc = acc * s % m;
        if (acc == 1) out.push_back(s);
    }
    return out;
}

}  // namespace

Int predicted_group_order(const GroupSpec& spec) {
    if (spec.family == GroupFamily::Cyclic) return spec.ring.modulus;
    Int order = 1;
    int n = spec.n;
    for (const auto& [p, e] : spec.ring.factors) {
        Int fp = 1;
        Int pk = 1;
        for (int k = 0; k < n * (n - 1) / 2; ++k) fp *= p;
        for (int k = 2; k <= n; ++k) {
            Int pe = 1;
            for (int t = 0; t < k; ++t) pe *= p;
            fp *= pe - 1;
        }
        for (int t = 0; t < (e - 1) * (n * n - 1); ++t) pk *= p;
        order *= fp * pk;
    }
    if (spec.family == GroupFamily::PSL) {
        auto sc = projective_scalars(spec.ring, n, true);
        order /= Int(uint64_t(sc.size()));
    }
    return order;
}

void GroupTable::canonicalize(uint32_t* e) const {
    if (scalars.size() <= 1) return;
    int nn = n * n;
    uint32_t best[64];
    bool have_best = false;
    for (uint32_t s : scalars) {
        if (s == 1) continue;
        int cmp = 0;  // candidate vs current best (or e)
        uint32_t cand[64];
        const uint32_t* ref = have_best ? best : e;
        for (int k = 0; k < nn; ++k) {
            cand[k] = uint32_t(uint64_t(s) * e[k] % m);
            if (cmp == 0) cmp = cand[k] < ref[k] ? -1 : (cand[k] > ref[k] ? 1 : 0);
        }
        if (cmp < 0) {
            std::copy(cand, cand + nn, best);
            have_best = true;
        }
    }
    if (have_best) std::copy(best, best + n * n, e);
}

void GroupTable::pack(const uint32_t* e, uint64_t& l, uint64_t& h) const {
    int bits = m <= 2 ? 1 : std::bit_width(m - 1);
    l = h = 0;
    int pos = 0;
    for (int k = 0; k < n * n; ++k) {
        if (pos + bits <= 64) {
            l |= uint64_t(e[k]) << pos;
        } else if (pos >= 64) {
            h |= uint64_t(e[k]) << (pos - 64);
        } else {
            l |= uint64_t(e[k]) << pos;
            h |= uint64_t(e[k]) >> (64 - pos);
        }
        pos += bits;
    }
}

GroupTable GroupTable::generate(const RingSpec& ring, int n, bool projective,
                                const std::vector<Mat>& gen_mats, uint64_t cap,
                                const std::string& spec_text) {
    require(ring.finite(), "group table needs a finite ring");
    require(ring.modulus < (Int(1) << 31), "modulus cap 2^31 for group tables");
    GroupTable G;
    G.ring = ring;
    G.m = uint32_t(to_i64(ring.modulus));
    G.n = n;
    G.projective = projective;
    G.spec_text = spec_text;
    G.scalars = projective_scalars(ring, n, projective);
    int bits = G.m <= 2 ? 1 : std::bit_width(G.m - 1);
    if (n * n * bits > 128) throw CapExceeded("matrix key exceeds 128 bits");
    int nn = n * n;

    std::vector<std::vector<uint32_t>> gens_raw;
    for (const Mat& g : gen_mats) {
        check(g.n == n && g.ring == ring, "generator shape mismatch");
        std::vector<uint32_t> raw(nn);
        for (int k = 0; k < nn; ++k) raw[k] = uint32_t(to_i64(g.a[k]));
        G.canonicalize(raw.data());
        gens_raw.push_back(std::move(raw));
    }

    G.index.init(1024);
    auto push = [&](const uint32_t* e) -> std::pair<uint32_t, bool> {
        uint64_t l, h;
        G.pack(e, l, h);
        uint32_t at = G.index.find(l, h);
        if (at != npos32) return {at, false};
        uint32_t id = G.size();
        G.ent.insert(G.ent.end(), e, e + nn);
        G.index.insert(l, h, id);
        return {id, true};
    };

    std::vector<uint32_t> ident(nn, 0);
    for (int i = 0; i < n; ++i) ident[size_t(i) * n + i] = 1 % G.m;
    push(ident.data());

    std::deque<uint32_t> todo{0};
    uint32_t tmp[64];
    while (!todo.empty()) {
        uint32_t cur = todo.front();
        todo.pop_front();
        for (const auto& g : gens_raw) {
            const uint32_t* a = G.raw(cur);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    uint64_t acc = 0;
                    for (int k = 0; k < n; ++k) acc += uint64_t(a[size_t(i) * n + k]) * g[size_t(k) * n + j];
                    tmp[i * n + j] = uint32_t(acc % G.m);
                }
            G.canonicalize(tmp);
            auto [id, fresh] = push(tmp);
            if (fresh) {
                if (G.size() > cap) throw CapExceeded("group enumeration exceeded cap");
                todo.push_back(id);
            }
        }
    }

    // Record generator indices (after canonicalization they are table members).
    for (const auto& g : gens_raw) {
        uint64_t l, h;
        G.pack(g.data(), l, h);
        uint32_t at = G.index.find(l, h);
        check(at != npos32, "generator missing from its own closure");
        G.gens.push_back(at);
    }
    return G;
}

uint32_t GroupTable::mul(uint32_t i, uint32_t j) const {
    uint32_t tmp[64];
    const uint32_t* a = raw(i);
    const uint32_t* b = raw(j);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            uint64_t acc = 0;
            for (int k = 0; k < n; ++k) acc += uint64_t(a[size_t(r) * n + k]) * b[size_t(k) * n + c];
            tmp[r * n + c] = uint32_t(acc % m);
        }
    canonicalize(tmp);
    uint64_t l, h;
    pack(tmp, l, h);
    uint32_t at = index.find(l, h);
    check(at != npos32, "product escaped the table");
    return at;
}

const std::vector<uint32_t>& GroupTable::inverse_table() const {
    std::lock_guard<std::mutex> lk(lazy_mu_);
    if (!inv_) {
        auto tab = std::make_unique<std::vector<uint32_t>>(size());
        for (uint32_t i = 0; i < size(); ++i) {
            Mat mi = mat_of(i).inverse();
            uint32_t at = index_of(mi);
            check(at != npos32, "inverse escaped the table");
            (*tab)[i] = at;
        }
        inv_ = std::move(tab);
    }
    return *inv_;
}

uint32_t GroupTable::inv(uint32_t i) const { return inverse_table()[i]; }

uint32_t GroupTable::pow(uint32_t i, int64_t e) const {
    if (e < 0) return pow(inv(i), -e);
    uint32_t acc = 0;  // identity
    uint32_t base = i;
    uint64_t k = uint64_t(e);
    while (k) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

Mat GroupTable::mat_of(uint32_t i) const {
    const uint32_t* e = raw(i);
    std::vector<Int> entries(e, e + size_t(n) * n);
    return Mat::raw(ring, n, std::move(entries));
}

uint32_t GroupTable::index_of(const Mat& mat) const {
    check(mat.n == n, "index_of shape mismatch");
    uint32_t tmp[64];
    for (int k = 0; k < n * n; ++k) tmp[k] = uint32_t(to_i64(ring.canon(mat.a[k])));
    return index_of_raw(tmp);
}

uint32_t GroupTable::index_of_raw(const uint32_t* e) const {
    uint32_t tmp[64];
    std::copy(e, e + n * n, tmp);
    canonicalize(tmp);
    uint64_t l, h;
    pack(tmp, l, h);
    return index.find(l, h);
}

const GroupTable::Classes& GroupTable::classes() const {
    std::lock_guard<std::mutex> lk(lazy_mu_);
    if (classes_) return *classes_;
    const auto& invt = [&]() -> const std::vector<uint32_t>& {
        // inverse_table() grabs the same mutex; inline the computation.
        if (!inv_) {
            auto tab = std::make_unique<std::vector<uint32_t>>(size());
            for (uint32_t i = 0; i < size(); ++i) {
                uint32_t at = index_of(mat_of(i).inverse());
                check(at != npos32, "inverse escaped the table");
                (*tab)[i] = at;
            }
            inv_ = std::move(tab);
        }
        return *inv_;
    }();
    auto cd = std::make_unique<Classes>();
    cd->class_of.assign(size(), npos32);
    std::vector<uint32_t> stack;
    for (uint32_t start = 0; start < size(); ++start) {
        if (cd->class_of[start] != npos32) continue;
        uint32_t cid = uint32_t(cd->reps.size());
        cd->reps.push_back(start);
        cd->class_of[start] = cid;
        stack.assign(1, start);
        uint32_t count = 0;
        while (!stack.empty()) {
            uint32_t x = stack.back();
            stack.pop_back();
            ++count;
            for (uint32_t g : gens) {
                uint32_t y = mul(mul(g, x), invt[g]);
                if (cd->class_of[y] == npos32) {
                    cd->class_of[y] = cid;
                    stack.push_back(y);
                }
            }
        }
        cd->sizes.push_back(count);
    }
    uint32_t ncl = uint32_t(cd->reps.size());
    cd->offsets.assign(ncl + 1, 0);
    for (uint32_t i = 0; i < size(); ++i) ++cd->offsets[cd->class_of[i] + 1];
    for (uint32_t c = 0; c < ncl; ++c) cd->offsets[c + 1] += cd->offsets[c];
    cd->members.assign(size(), 0);
    std::vector<uint32_t> fill(cd->offsets.begin(), cd->offsets.end() - 1);
    for (uint32_t i = 0; i < size(); ++i) cd->members[fill[cd->class_of[i]]++] = i;
    classes_ = std::move(cd);
    return *classes_;
}

namespace {

std::vector<Mat> elementary_generators(const RingSpec& ring, int n) {
    std::vector<Mat> gens;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (Int v : {Int(1), Int(-1)}) {
                Mat g = elementary(ring, n, i, j, v);
                if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
            }
        }
    return gens;
}

}  // namespace

GroupTable enumerate_group(const GroupSpec& spec, uint64_t cap) {
    Int predicted = predicted_group_order(spec);
    if (predicted > Int(cap)) throw CapExceeded("predicted order " + int_str(predicted) + " exceeds cap");
    GroupTable G;
    if (spec.family == GroupFamily::Cyclic) {
        G = GroupTable::generate(spec.ring, 2, false, {elementary(spec.ring, 2, 1, 2, 1)}, cap,
                                 spec.text);
    } else {
        G = GroupTable::generate(spec.ring, spec.n, spec.family == GroupFamily::PSL,
                                 elementary_generators(spec.ring, spec.n), cap, spec.text);
    }
    check(Int(uint64_t(G.size())) == predicted,
          "enumerated order " + std::to_string(G.size()) + " != predicted " + int_str(predicted));
    return G;
}

GroupTable enumerate_group(const std::string& spec_text, uint64_t cap) {
    return enumerate_group(parse_group_spec(spec_text), cap);
}

std::vector<Int> nth_root_scalars(const RingSpec& r, int n) {
    require(r.finite(), "scalar roots need a finite ring");
    auto sc = projective_scalars(r, n, true);
    std::vector<Int> out;
    for (uint32_t s : sc) out.push_back(Int(s));
    return out;
}

Mat psl_project(const Mat& m) {
    require(m.ring.finite(), "psl_project needs a finite ring");
    auto sc = projective_scalars(m.ring, m.n, true);
    Mat best = m;
    for (uint32_t s : sc) {
        if (s == 1) continue;
        Mat cand = m;
        for (auto& v : cand.a) v = m.ring.mul(v, Int(s));
        if (std::lexicographical_compare(cand.a.begin(), cand.a.end(), best.a.begin(),
                                         best.a.end()))
            best = std::move(cand);
    }
    return best;
}

ElementSet center_set(const GroupTable& G) {
    ElementSet out(G.size());
    for (uint32_t x = 0; x < G.size(); ++x) {
        bool central = true;
        for (uint32_t g : G.gens)
            if (G.mul(x, g) != G.mul(g, x)) {
                central = false;
                break;
            }
        if (central) out.set(x);
    }
    return out;
}

ElementSet centralizer_set(const GroupTable& G, uint32_t c) {
    ElementSet out(G.size());
    for (uint32_t x = 0; x < G.size(); ++x)
        if (G.mul(x, c) == G.mul(c, x)) out.set(x);
    return out;
}

ElementSet center_of_subset(const GroupTable& G, const ElementSet& C) {
    ElementSet out(G.size());
    std::vector<uint32_t> elems;
    for (auto i = C.find_first(); i != ElementSet::npos; i = C.find_next(i))
        elems.push_back(uint32_t(i));
    for (uint32_t x : elems) {
        bool ok = true;
        for (uint32_t y : elems)
            if (G.mul(x, y) != G.mul(y, x)) {
                ok = false;
                break;
            }
        if (ok) out.set(x);
    }
    return out;
}

Reduction build_reduction(const GroupTable& G, const IdealSpec& q, uint64_t cap) {
    Reduction red;
    if (q.gen == G.ring.modulus) {  // zero ideal: identity reduction
        red.map.resize(G.size());
        for (uint32_t i = 0; i < G.size(); ++i) red.map[i] = i;
        return red;
    }
    require(q.gen > 1, "reduction modulo the whole ring is trivial; use congruence_set");
    RingSpec qr = quotient_ring(G.ring, q);
    GroupSpec qs;
    qs.family = G.projective ? GroupFamily::PSL : GroupFamily::SL;
    if (G.spec_text.rfind("cyc:", 0) == 0) qs.family = GroupFamily::Cyclic;
    qs.n = G.n;
    qs.ring = qr;
    qs.text = G.spec_text + "/(" + int_str(q.gen) + ")";
    red.quotient = std::make_shared<GroupTable>(enumerate_group(qs, cap));
    uint32_t d = uint32_t(to_i64(q.gen));
    red.map.resize(G.size());
    ElementSet hit(red.quotient->size());
    for (uint32_t i = 0; i < G.size(); ++i) {
        uint32_t tmp[64];
        const uint32_t* e = G.raw(i);
        for (int k = 0; k < G.n * G.n; ++k) tmp[k] = e[k] % d;
        uint32_t at = red.quotient->index_of_raw(tmp);
        check(at != npos32, "reduction image escaped the quotient table");
        red.map[i] = at;
        hit.set(at);
    }
    check(hit.count() == red.quotient->size(), "reduction map not surjective");
    return red;
}

ElementSet congruence_set(const GroupTable& G, const IdealSpec& q) {
    if (q.gen == 1) return G.full_set();
    ElementSet out(G.size());
    Reduction red = build_reduction(G, q);
    for (uint32_t i = 0; i < G.size(); ++i)
        if (red.map[i] == 0) out.set(i);
    return out;
}

ElementSet star_congruence_set(const GroupTable& G, const IdealSpec& q) {
    if (q.gen == 1) return G.full_set();
    Reduction red = build_reduction(G, q);
    const GroupTable& Q = red.quotient ? *red.quotient : G;
    ElementSet zq = center_set(Q);
    ElementSet out(G.size());
    for (uint32_t i = 0; i < G.size(); ++i)
        if (zq.test(red.map[i])) out.set(i);
    return out;
}

ElementSet unipotent_row_set(const GroupTable& G) {
    require(G.n >= 3, "unipotent row needs n >= 3");
    ElementSet out(G.size());
    int k = G.n - 1;
    std::vector<uint32_t> digits(k, 0);
    while (true) {
        Mat u = Mat::identity(G.ring, G.n);
        for (int t = 0; t < k; ++t) u.at(0, t + 1) = Int(digits[t]);
        uint32_t at = G.index_of(u);
        check(at != npos32, "unipotent row element missing from table");
        out.set(at);
        int pos = 0;
        while (pos < k && ++digits[pos] == G.m) digits[pos++] = 0;
        if (pos == k) break;
    }
    check(out.count() > 0, "empty unipotent row set");
    return out;
}

ElementSet row_congruence_set(const GroupTable& G, const IdealSpec& q) {
    return unipotent_row_set(G) & congruence_set(G, q);
}

ElementSet elem_1n_set(const GroupTable& G) {
    ElementSet out(G.size());
    for (uint32_t v = 0; v < G.m; ++v) {
        uint32_t at = G.index_of(elementary(G.ring, G.n, 1, G.n, Int(v)));
        check(at != npos32, "carrier element missing from table");
        out.set(at);
    }
    return out;
}

ElementSet set_product(const GroupTable& G, const ElementSet& S, const ElementSet& T) {
    ElementSet out(G.size());
    size_t full = G.size();
    for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i)) {
        for (auto j = T.find_first(); j != ElementSet::npos; j = T.find_next(j)) {
            out.set(G.mul(uint32_t(i), uint32_t(j)));
        }
        if (out.count() == full) return out;
    }
    return out;
}

ElementSet set_inverse(const GroupTable& G, const ElementSet& S) {
    ElementSet out(G.size());
    for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
        out.set(G.inv(uint32_t(i)));
    return out;
}

bool set_symmetric(const GroupTable& G, const ElementSet& S) { return set_inverse(G, S) == S; }

ElementSet subgroup_closure(const GroupTable& G, const ElementSet& S) {
    ElementSet seen(G.size());
    seen.set(0);
    std::vector<uint32_t> sels;
    for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
        sels.push_back(uint32_t(i));
    std::vector<uint32_t> todo{0};
    while (!todo.empty()) {
        uint32_t x = todo.back();
        todo.pop_back();
        for (uint32_t s : sels) {
            uint32_t y = G.mul(x, s);
            if (!seen.test(y)) {
                seen.set(y);
                todo.push_back(y);
            }
        }
    }
    return seen;
}

bool set_normal(const GroupTable& G, const ElementSet& S) {
    for (uint32_t g : G.gens) {
        uint32_t gi = G.inv(g);
        for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
            if (!S.test(G.mul(G.mul(g, uint32_t(i)), gi))) return false;
    }
    return true;
}

}  // namespace adl
