#include "adl/folcheck.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <unordered_map>

#include "adl/gclsets.hpp"

namespace adl {

namespace {

bool ident_start(char c) { return isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Parser {
    const std::string& s;
    size_t p = 0;
    std::vector<std::string> binders;

    void skip_ws() {
        while (p < s.size() && isspace(static_cast<unsigned char>(s[p]))) ++p;
    }
    bool eat(char c) {
        skip_ws();
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    bool eat_str(const char* t) {
        skip_ws();
        size_t l = strlen(t);
        if (s.compare(p, l, t) == 0) {
            p += l;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(p, std::string("expected '") + c + "'");
    }
    // peeks a keyword (identifier boundary respected)
    bool keyword(const char* kw) {
        skip_ws();
        size_t l = strlen(kw);
        if (s.compare(p, l, kw) == 0 && (p + l == s.size() || !ident_char(s[p + l]))) {
            p += l;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = p;
        if (p >= s.size() || !ident_start(s[p])) throw ParseError(p, "expected identifier");
        while (p < s.size() && ident_char(s[p])) ++p;
        std::string name = s.substr(start, p - start);
        if (name == "forall" || name == "exists" || name == "in_gcl_pow")
            throw ParseError(start, "'" + name + "' is reserved");
        return name;
    }
    int64_t integer() {
        skip_ws();
        size_t start = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        size_t ds = p;
        while (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == ds) throw ParseError(start, "expected integer");
        return std::stoll(s.substr(start, p - start));
    }

    FormulaPtr formula() { return implies(); }
    // Quantifiers bind loosest and scope to the end of the enclosing group, so
    // the body restarts at the loosest level even when the quantifier shows up
    // deep inside a connective chain.
    FormulaPtr quantified(size_t at, bool forall) {
        size_t vpos = p;
        std::string v = ident();
        if (std::find(binders.begin(), binders.end(), v) != binders.end())
            throw ParseError(vpos, "variable '" + v + "' rebound on the same binder chain");
        expect('.');
        binders.push_back(v);
        FormulaPtr body = formula();
        binders.pop_back();
        auto f = std::make_shared<Formula>();
        f->kind = forall ? FormulaKind::Forall : FormulaKind::Exists;
        f->var = v;
        f->f1 = body;
        f->pos = at;
        return f;
    }
    FormulaPtr implies() {
        FormulaPtr lhs = orexpr();
        skip_ws();
        size_t at = p;
        if (eat_str("->")) {
            auto f = std::make_shared<Formula>();
            f->kind = FormulaKind::Implies;
            f->f1 = lhs;
            f->f2 = formula();  // right associative; quantifiers allowed after ->
            f->pos = at;
            return f;
        }
        return lhs;
    }
    FormulaPtr orexpr() {
        FormulaPtr lhs = andexpr();
        for (;;) {
            skip_ws();
            size_t at = p;
            // '|' but not '->'-colliding; single char test suffices
            if (!eat('|')) return lhs;
            auto f = std::make_shared<Formula>();
            f->kind = FormulaKind::Or;
            f->f1 = lhs;
            f->f2 = andexpr();
            f->pos = at;
            lhs = f;
        }
    }
    FormulaPtr andexpr() {
        FormulaPtr lhs = unary();
        for (;;) {
            skip_ws();
            size_t at = p;
            if (!eat('&')) return lhs;
            auto f = std::make_shared<Formula>();
            f->kind = FormulaKind::And;
            f->f1 = lhs;
            f->f2 = unary();
            f->pos = at;
            lhs = f;
        }
    }
    FormulaPtr unary() {
        skip_ws();
        size_t at = p;
        if (eat('!')) {
            auto f = std::make_shared<Formula>();
            f->kind = FormulaKind::Not;
            f->f1 = unary();
            f->pos = at;
            return f;
        }
        return atom();
    }
    FormulaPtr atom() {
        skip_ws();
        size_t at = p;
        if (eat('(')) {
            FormulaPtr f = formula();
            expect(')');
            return f;
        }
        if (keyword("forall")) return quantified(at, true);
        if (keyword("exists")) return quantified(at, false);
        if (keyword("in_gcl_pow")) {
            expect('(');
            auto f = std::make_shared<Formula>();
            f->kind = FormulaKind::InGclPow;
            f->t1 = term();
            expect(',');
            size_t npos_ = p;
            f->n = integer();
            if (f->n < 1) throw ParseError(npos_, "gcl power must be >= 1");
            expect(',');
            f->t2 = term();
            expect(')');
            f->pos = at;
            return f;
        }
        TermPtr lhs = term();
        skip_ws();
        size_t eq = p;
        expect('=');
        auto f = std::make_shared<Formula>();
        f->kind = FormulaKind::Equal;
        f->t1 = lhs;
        f->t2 = term();
        f->pos = eq;
        return f;
    }
    TermPtr term() {
        TermPtr lhs = factor();
        for (;;) {
            skip_ws();
            size_t at = p;
            if (!eat('*')) return lhs;
            auto t = std::make_shared<Term>();
            t->kind = TermKind::Product;
            t->a = lhs;
            t->b = factor();
            t->pos = at;
            lhs = t;
        }
    }
    TermPtr factor() {
        TermPtr base = primary();
        for (;;) {
            skip_ws();
            size_t at = p;
            if (p < s.size() && s[p] == '^') {
                ++p;
                if (!eat_str("-1")) throw ParseError(p, "only ^-1 is supported");
                auto t = std::make_shared<Term>();
                t->kind = TermKind::Inverse;
                t->a = base;
                t->pos = at;
                base = t;
                continue;
            }
            return base;
        }
    }
    TermPtr primary() {
        skip_ws();
        size_t at = p;
        auto t = std::make_shared<Term>();
        t->pos = at;
        if (p < s.size() && s[p] == '1') {
            ++p;
            t->kind = TermKind::Identity;
            return t;
        }
        std::string name = ident();
        auto it = std::find(binders.rbegin(), binders.rend(), name);
        if (it != binders.rend()) {
            t->kind = TermKind::Variable;
            t->name = name;
            t->slot = int(binders.rend() - it) - 1;  // depth of the binder
        } else {
            t->kind = TermKind::Constant;
            t->name = name;
        }
        return t;
    }
};

void collect_constants(const TermPtr& t, std::vector<const Term*>& out) {
    if (!t) return;
    if (t->kind == TermKind::Constant) out.push_back(t.get());
    collect_constants(t->a, out);
    collect_constants(t->b, out);
}

void collect_constants(const FormulaPtr& f, std::vector<const Term*>& out) {
    if (!f) return;
    collect_constants(f->t1, out);
    collect_constants(f->t2, out);
    collect_constants(f->f1, out);
    collect_constants(f->f2, out);
}

// Evaluation state: binder stack values, bound constants, assignment budget,
// and a per-evaluation cache of gcl-power class masks keyed by (class, N).
struct Evaluator {
    const GroupTable& G;
    std::unordered_map<const Term*, uint32_t> consts;
    std::vector<uint32_t> stack;
    uint64_t budget;
    uint64_t used = 0;
    std::map<std::pair<uint32_t, int64_t>, std::vector<char>> gcl_cache;

    Evaluator(const GroupTable& g, uint64_t b) : G(g), budget(b) {}

    void bind(const FormulaPtr& f, const Env& env) {
        std::vector<const Term*> cs;
        collect_constants(f, cs);
        for (const Term* t : cs) {
            auto it = env.find(t->name);
            if (it == env.end())
                throw PreconditionFailed("unbound name '" + t->name + "'");
            require(it->second < G.size(), "binding for '" + t->name + "' out of range");
            consts[t] = it->second;
        }
    }

    uint32_t term(const Term* t) {
        switch (t->kind) {
            case TermKind::Identity:
                return 0;
            case TermKind::Variable:
                return stack[size_t(t->slot)];
            case TermKind::Constant:
                return consts.find(t)->second;
            case TermKind::Product:
                return G.mul(term(t->a.get()), term(t->b.get()));
            case TermKind::Inverse:
                return G.inv(term(t->a.get()));
        }
        throw Error("unreachable term kind");
    }

    bool eval(const Formula* f) {
        switch (f->kind) {
            case FormulaKind::Equal:
                return term(f->t1.get()) == term(f->t2.get());
            case FormulaKind::Not:
                return !eval(f->f1.get());
            case FormulaKind::And:
                return eval(f->f1.get()) && eval(f->f2.get());
            case FormulaKind::Or:
                return eval(f->f1.get()) || eval(f->f2.get());
            case FormulaKind::Implies:
                return !eval(f->f1.get()) || eval(f->f2.get());
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                bool forall = f->kind == FormulaKind::Forall;
                stack.push_back(0);
                for (uint32_t i = 0; i < G.size(); ++i) {
                    if (++used > budget) {
                        stack.pop_back();
                        throw BudgetExceeded("assignment budget exhausted");
                    }
                    stack.back() = i;
                    bool v = eval(f->f1.get());
                    if (v != forall) {
                        stack.pop_back();
                        return !forall;
                    }
                }
                stack.pop_back();
                return forall;
            }
            case FormulaKind::InGclPow: {
                uint32_t alpha = term(f->t1.get());
                uint32_t x = term(f->t2.get());
                uint32_t cls = G.classes().class_of[alpha];
                auto key = std::make_pair(cls, f->n);
                auto it = gcl_cache.find(key);
                if (it == gcl_cache.end()) {
                    // gcl and its powers only depend on the class of alpha
                    it = gcl_cache.emplace(key, gcl_power_classes(G, alpha, f->n)).first;
                }
                return it->second[G.classes().class_of[x]] != 0;
            }
        }
        throw Error("unreachable formula kind");
    }
};

void collect_free(const TermPtr& t, std::vector<std::string>& out) {
    if (!t) return;
    if (t->kind == TermKind::Constant &&
        std::find(out.begin(), out.end(), t->name) == out.end())
        out.push_back(t->name);
    collect_free(t->a, out);
    collect_free(t->b, out);
}

void collect_free(const FormulaPtr& f, std::vector<std::string>& out) {
    if (!f) return;
    collect_free(f->t1, out);
    collect_free(f->t2, out);
    collect_free(f->f1, out);
    collect_free(f->f2, out);
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser ps{text, 0, {}};
    FormulaPtr f = ps.formula();
    ps.skip_ws();
    if (ps.p != text.size()) throw ParseError(ps.p, "trailing characters after formula");
    return f;
}

std::vector<std::string> free_names(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_free(f, out);
    return out;
}

bool evaluate(const GroupTable& G, const FormulaPtr& f, const Env& env, uint64_t budget) {
    require(f != nullptr, "null formula");
    Evaluator ev(G, budget);
    ev.bind(f, env);
    return ev.eval(f.get());
}

std::vector<std::vector<uint32_t>> definable_set(const GroupTable& G, const FormulaPtr& f,
                                                 const std::vector<std::string>& vars,
                                                 const Env& env, uint64_t budget) {
    require(f != nullptr, "null formula");
    require(vars.size() <= 3, "definable_set supports arity <= 3");
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            require(vars[i] != vars[j], "duplicate variable in tuple");

    Evaluator ev(G, budget);
    Env full = env;
    for (const auto& v : vars) full[v] = 0;
    ev.bind(f, full);
    // constant nodes to rewrite per assignment, grouped by tuple position
    std::vector<const Term*> cs;
    collect_constants(f, cs);
    std::vector<std::vector<const Term*>> nodes(vars.size());
    for (const Term* t : cs)
        for (size_t k = 0; k < vars.size(); ++k)
            if (t->name == vars[k]) nodes[k].push_back(t);

    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> tup(vars.size(), 0);
    size_t arity = vars.size();
    uint64_t total = 1;
    for (size_t k = 0; k < arity; ++k) total *= G.size();
    for (uint64_t code = 0; code < total; ++code) {
        uint64_t c = code;
        for (size_t k = arity; k-- > 0;) {
            tup[k] = uint32_t(c % G.size());
            c /= G.size();
        }
        if (++ev.used > ev.budget) throw BudgetExceeded("assignment budget exhausted");
        for (size_t k = 0; k < arity; ++k)
            for (const Term* t : nodes[k]) ev.consts[t] = tup[k];
        if (ev.eval(f.get())) out.push_back(tup);
    }
    return out;
}

FamilySlices family_slices(const GroupTable& G, const DefinableFamily& fam, const Env& env,
                           uint64_t budget) {
    require(fam.formula != nullptr, "null formula");
    require(!fam.objects.empty(), "family needs object variables");
    require(fam.params.size() <= 2 && fam.objects.size() <= 2, "family arity <= 2 + 2");
    for (const auto& pv : fam.params)
        require(std::find(fam.objects.begin(), fam.objects.end(), pv) == fam.objects.end(),
                "parameter and object tuples must be disjoint");

    Evaluator ev(G, budget);
    Env full = env;
    for (const auto& v : fam.params) full[v] = 0;
    for (const auto& v : fam.objects) full[v] = 0;
    ev.bind(fam.formula, full);
    std::vector<const Term*> cs;
    collect_constants(fam.formula, cs);
    auto nodes_for = [&](const std::vector<std::string>& names) {
        std::vector<std::vector<const Term*>> nodes(names.size());
        for (const Term* t : cs)
            for (size_t k = 0; k < names.size(); ++k)
                if (t->name == names[k]) nodes[k].push_back(t);
        return nodes;
    };
    auto pnodes = nodes_for(fam.params);
    auto znodes = nodes_for(fam.objects);

    FamilySlices out;
    std::map<std::vector<uint32_t>, size_t> seen;  // flattened slice -> id
    size_t parity = fam.params.size(), zarity = fam.objects.size();
    uint64_t ptotal = 1, ztotal = 1;
    for (size_t k = 0; k < parity; ++k) ptotal *= G.size();
    for (size_t k = 0; k < zarity; ++k) ztotal *= G.size();
    std::vector<uint32_t> ptup(parity), ztup(zarity);
    for (uint64_t pc = 0; pc < ptotal; ++pc) {
        uint64_t c = pc;
        for (size_t k = parity; k-- > 0;) {
            ptup[k] = uint32_t(c % G.size());
            c /= G.size();
        }
        for (size_t k = 0; k < parity; ++k)
            for (const Term* t : pnodes[k]) ev.consts[t] = ptup[k];
        std::vector<uint32_t> flat;
        std::vector<std::vector<uint32_t>> slice;
        for (uint64_t zc = 0; zc < ztotal; ++zc) {
            uint64_t z = zc;
            for (size_t k = zarity; k-- > 0;) {
                ztup[k] = uint32_t(z % G.size());
                z /= G.size();
            }
            if (++ev.used > ev.budget) throw BudgetExceeded("assignment budget exhausted");
            for (size_t k = 0; k < zarity; ++k)
                for (const Term* t : znodes[k]) ev.consts[t] = ztup[k];
            if (ev.eval(fam.formula.get())) {
                slice.push_back(ztup);
                flat.insert(flat.end(), ztup.begin(), ztup.end());
            }
        }
        auto it = seen.find(flat);
        if (it == seen.end()) {
            seen.emplace(std::move(flat), out.slices.size());
            out.rep_params.push_back(ptup);
            out.slices.push_back(std::move(slice));
            out.multiplicities.push_back(1);
        } else {
            ++out.multiplicities[it->second];
        }
    }
    return out;
}

}  // namespace adl
