#include "adl/report.hpp"

#include <charconv>

#include "adl/util.hpp"

namespace adl {

Json& Json::set(const std::string& key, Json v) {
    check(kind == Kind::Object, "set on non-object json");
    for (auto& kv : obj) {
        if (kv.first == key) {
            kv.second = std::move(v);
            return *this;
        }
    }
    obj.emplace_back(key, std::move(v));
    return *this;
}

const Json* Json::find(const std::string& key) const {
    for (const auto& kv : obj) {
        if (kv.first == key) return &kv.second;
    }
    return nullptr;
}

namespace {

void dump_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (uint8_t(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_rec(const Json& j, std::string& out) {
    char buf[64];
    switch (j.kind) {
        case Json::Kind::Null: out += "null"; break;
        case Json::Kind::Bool: out += j.b ? "true" : "false"; break;
        case Json::Kind::Int: {
            auto r = std::to_chars(buf, buf + sizeof buf, j.i);
            out.append(buf, r.ptr);
            break;
        }
        case Json::Kind::Double: {
            // Shortest round-trip form keeps dumps deterministic.
            auto r = std::to_chars(buf, buf + sizeof buf, j.d);
            out.append(buf, r.ptr);
            break;
        }
        case Json::Kind::String: dump_string(j.s, out); break;
        case Json::Kind::Array: {
            out += '[';
            for (size_t k = 0; k < j.arr.size(); k++) {
                if (k) out += ',';
                dump_rec(j.arr[k], out);
            }
            out += ']';
            break;
        }
        case Json::Kind::Object: {
            out += '{';
            for (size_t k = 0; k < j.obj.size(); k++) {
                if (k) out += ',';
                dump_string(j.obj[k].first, out);
                out += ':';
                dump_rec(j.obj[k].second, out);
            }
            out += '}';
            break;
        }
    }
}

}  // namespace

std::string Json::dump() const {
    std::string out;
    dump_rec(*this, out);
    return out;
}

const char* claim_kind_name(ClaimKind k) {
    switch (k) {
        case ClaimKind::PaperAssertion: return "paper_assertion";
        case ClaimKind::FiniteAnalog: return "finite_analog";
        case ClaimKind::Observation: return "observation";
    }
    return "?";
}

bool ExperimentReport::all_passed() const {
    for (const auto& c : checks) {
        if (c.claim_kind == ClaimKind::Observation) continue;
        if (!c.pass) return false;
    }
    return true;
}

Json ExperimentReport::to_json() const {
    Json j = Json::object();
    j.set("schema_version", Json::of(kReportSchemaVersion));
    j.set("experiment", Json::of(experiment));
    j.set("inputs", inputs);
    Json cs = Json::array();
    for (const auto& c : checks) {
        Json cj = Json::object();
        cj.set("name", Json::of(c.name));
        cj.set("claim_kind", Json::of(claim_kind_name(c.claim_kind)));
        if (c.claim_kind == ClaimKind::Observation) {
            cj.set("verdict", Json::of("observed"));
        } else {
            cj.set("verdict", Json::of(c.pass ? "pass" : "fail"));
        }
        cj.set("sampled", Json::of(c.sampled));
        cj.set("details", c.details);
        cs.push(std::move(cj));
    }
    j.set("checks", std::move(cs));
    j.set("all_passed", Json::of(all_passed()));
    return j;
}

namespace {

void csv_field(const std::string& s, std::string& out) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

std::string ExperimentReport::to_csv() const {
    std::string out = "experiment,check,claim_kind,verdict,sampled,details\n";
    for (const auto& c : checks) {
        csv_field(experiment, out);
        out += ',';
        csv_field(c.name, out);
        out += ',';
        out += claim_kind_name(c.claim_kind);
        out += ',';
        if (c.claim_kind == ClaimKind::Observation) {
            out += "observed";
        } else {
            out += c.pass ? "pass" : "fail";
        }
        out += ',';
        out += c.sampled ? "true" : "false";
        out += ',';
        csv_field(c.details.dump(), out);
        out += '\n';
    }
    return out;
}

}  // namespace adl
