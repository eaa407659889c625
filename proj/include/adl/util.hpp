#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace adl {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Error taxonomy. Each carries a stable kind tag so callers and the CLI can
// branch without string matching.
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& w) : Error("NotAUnit: " + w) {}
};
struct NotInCarrier : Error {
    explicit NotInCarrier(const std::string& w) : Error("NotInCarrier: " + w) {}
};
struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& w) : Error("PreconditionFailed: " + w) {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w) : Error("BudgetExceeded: " + w) {}
};
struct Unsupported : Error {
    explicit Unsupported(const std::string& w) : Error("Unsupported: " + w) {}
};
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& w) : Error("CapExceeded: " + w) {}
};

// Parse failure with byte offset into the source text.
struct ParseError : Error {
    size_t pos;
    ParseError(size_t pos_, const std::string& w)
        : Error("parse error at offset " + std::to_string(pos_) + ": " + w), pos(pos_) {}
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionFailed(what);
}

// Internal invariant check; failure means a bug, not bad input.
inline void check(bool ok, const std::string& what) {
    if (!ok) throw Error("internal check failed: " + what);
}

// Deterministic RNG. All randomized experiments derive their streams from an
// explicit seed so reports are reproducible byte for byte.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    uint64_t next() { return eng(); }
    // Uniform in [0, n). Modulo bias is irrelevant at desk scale and keeps the
    // stream layout independent of library internals.
    uint64_t below(uint64_t n) { return eng() % n; }
    // Sample k distinct values from [0, n) in draw order.
    std::vector<uint32_t> sample_distinct(uint32_t k, uint32_t n);
};

inline std::vector<uint32_t> Rng::sample_distinct(uint32_t k, uint32_t n) {
    check(k <= n, "sample larger than population");
    std::vector<uint32_t> pool(n);
    for (uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<uint32_t> out;
    out.reserve(k);
    for (uint32_t i = 0; i < k; ++i) {
        uint64_t j = i + below(n - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

// Worker cap from ADL_THREADS (>=1); defaults to hardware concurrency.
unsigned thread_budget();

// Runs fn(i) for i in [0, count). Work is split into contiguous blocks, one per
// worker; results must be written to disjoint slots for determinism.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

}  // namespace adl
