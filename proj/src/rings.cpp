#include "adl/rings.hpp"

#include <thread>

namespace adl {

unsigned thread_budget() {
    if (const char* env = std::getenv("ADL_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        size_t lo = w * chunk, hi = std::min(count, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

bool RingSpec::is_unit(const Int& a) const {
    if (!finite()) return a == 1 || a == -1;
    return int_gcd(canon(a), modulus) == 1;
}

Int RingSpec::inv(const Int& a) const {
    if (!finite()) {
        if (a == 1 || a == -1) return a;
        throw NotAUnit(int_str(a) + " over Z");
    }
    Int x, y;
    Int g = ext_gcd(canon(a), modulus, x, y);
    if (g != 1) throw NotAUnit(int_str(canon(a)) + " mod " + int_str(modulus));
    return canon(x);
}

std::string RingSpec::str() const {
    if (!finite()) return "int";
    return (certified_field ? "gf:" : "zmod:") + int_str(modulus);
}

std::string IdealSpec::str() const {
    if (ring_modulus != 0 && gen == ring_modulus) return "(0)";
    return "(" + int_str(gen) + ")";
}

RingSpec ring_make(const std::string& spec) {
    if (spec == "int") return RingSpec{};
    auto parse_mod = [&](size_t at) {
        Int m;
        try {
            m = Int(spec.substr(at));
        } catch (...) {
            throw ParseError(at, "bad modulus in ring spec '" + spec + "'");
        }
        if (m < 2) throw ParseError(at, "modulus must be >= 2");
        return m;
    };
    if (spec.rfind("zmod:", 0) == 0) {
        RingSpec r;
        r.kind = RingKind::ModM;
        r.modulus = parse_mod(5);
        r.factors = factorize(r.modulus);
        r.certified_field = r.factors.size() == 1 && r.factors[0].second == 1;
        return r;
    }
    if (spec.rfind("gf:", 0) == 0) {
        Int p = parse_mod(3);
        if (!is_prime(p)) throw ParseError(3, "gf modulus " + int_str(p) + " is not prime");
        RingSpec r;
        r.kind = RingKind::ModM;
        r.modulus = p;
        r.factors = {{p, 1}};
        r.certified_field = true;
        return r;
    }
    throw ParseError(0, "unknown ring spec '" + spec + "' (want int | zmod:<m> | gf:<p>)");
}

IdealSpec ideal_make(const RingSpec& r, const Int& gen) {
    if (!r.finite()) return IdealSpec{gen < 0 ? Int(-gen) : gen, 0};
    // gcd(0, m) = m encodes the zero ideal.
    return IdealSpec{int_gcd(r.canon(gen), r.modulus), r.modulus};
}

bool ideal_contains(const RingSpec& r, const IdealSpec& q, const Int& v) {
    if (!r.finite()) {
        if (q.gen == 0) return v == 0;
        return v % q.gen == 0;
    }
    return r.canon(v) % q.gen == 0;
}

RingSpec quotient_ring(const RingSpec& r, const IdealSpec& q) {
    require(r.finite(), "quotient_ring needs a finite base ring");
    if (q.gen == 1) throw Unsupported("quotient by the whole ring is the zero ring");
    if (q.gen == r.modulus) return r;  // zero ideal
    RingSpec out;
    out.kind = RingKind::ModM;
    out.modulus = q.gen;
    out.factors = factorize(q.gen);
    out.certified_field = out.factors.size() == 1 && out.factors[0].second == 1;
    return out;
}

std::vector<IdealSpec> maximal_ideals(const RingSpec& r) {
    if (!r.finite()) throw Unsupported("maximal ideal enumeration over Z");
    if (r.is_field()) return {IdealSpec{r.modulus, r.modulus}};  // the zero ideal
    std::vector<IdealSpec> out;
    for (const auto& [p, e] : r.factors) {
        (void)e;
        out.push_back(IdealSpec{p, r.modulus});
    }
    return out;
}

Int ring_arith(const RingSpec& r, RingOp op, const Int& a, const std::optional<Int>& b) {
    switch (op) {
        case RingOp::Add:
            require(b.has_value(), "add needs two operands");
            return r.add(a, *b);
        case RingOp::Mul:
            require(b.has_value(), "mul needs two operands");
            return r.mul(a, *b);
        case RingOp::Neg:
            return r.neg(a);
        case RingOp::Inv:
            return r.inv(a);
    }
    throw Error("unreachable ring op");
}

}  // namespace adl
