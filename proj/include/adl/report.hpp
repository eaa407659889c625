#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace adl {

// Small JSON value tree. Objects keep insertion order so serialization is
// byte-deterministic for a fixed construction sequence.
struct Json {
    enum class Kind { Null, Bool, Int, Double, String, Array, Object };
    Kind kind = Kind::Null;
    bool b = false;
    int64_t i = 0;
    double d = 0;
    std::string s;
    std::vector<Json> arr;
    std::vector<std::pair<std::string, Json>> obj;

    Json() = default;
    static Json null() { return Json(); }
    static Json of(bool v) {
        Json j;
        j.kind = Kind::Bool;
        j.b = v;
        return j;
    }
    static Json of(int64_t v) {
        Json j;
        j.kind = Kind::Int;
        j.i = v;
        return j;
    }
    static Json of(uint64_t v) { return of(int64_t(v)); }
    static Json of(int v) { return of(int64_t(v)); }
    static Json of(uint32_t v) { return of(int64_t(v)); }
    static Json of(double v) {
        Json j;
        j.kind = Kind::Double;
        j.d = v;
        return j;
    }
    static Json of(const std::string& v) {
        Json j;
        j.kind = Kind::String;
        j.s = v;
        return j;
    }
    static Json of(const char* v) { return of(std::string(v)); }
    static Json array() {
        Json j;
        j.kind = Kind::Array;
        return j;
    }
    static Json object() {
        Json j;
        j.kind = Kind::Object;
        return j;
    }

    Json& push(Json v) {
        arr.push_back(std::move(v));
        return *this;
    }
    // Insert or overwrite; order of first insertion is preserved.
    Json& set(const std::string& key, Json v);
    const Json* find(const std::string& key) const;

    std::string dump() const;  // compact, deterministic
};

enum class ClaimKind { PaperAssertion, FiniteAnalog, Observation };
const char* claim_kind_name(ClaimKind k);

struct CheckResult {
    std::string name;
    ClaimKind claim_kind = ClaimKind::PaperAssertion;
    bool pass = true;
    bool sampled = false;
    Json details = Json::object();
};

// One experiment run. Wall time is kept out of the JSON dump so reports stay
// byte-identical across runs with the same inputs and seed; the CLI prints
// timing on stderr instead.
struct ExperimentReport {
    std::string experiment;
    Json inputs = Json::object();
    std::vector<CheckResult> checks;
    double wall_seconds = 0;

    // Observations never gate; every other failed check does.
    bool all_passed() const;
    Json to_json() const;
    std::string to_csv() const;
};

inline constexpr int kReportSchemaVersion = 1;

}  // namespace adl
