#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "adl/folcheck.hpp"
#include "adl/gclsets.hpp"
#include "adl/mat.hpp"
#include "doctest.h"

using namespace adl;

namespace {

uint32_t elem_index(const GroupTable& G, int i, int j, int64_t v) {
    uint32_t idx = G.index_of(elementary(G.ring, G.n, i, j, Int(v)));
    REQUIRE(idx != npos32);
    return idx;
}

std::vector<std::vector<uint32_t>> sorted_tuples(std::vector<std::vector<uint32_t>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("formula parsing shapes") {
    FormulaPtr f = parse_formula("forall y. x*y = y*x");
    REQUIRE(f->kind == FormulaKind::Forall);
    CHECK(f->var == "y");
    REQUIRE(f->f1->kind == FormulaKind::Equal);
    const Term& lhs = *f->f1->t1;
    REQUIRE(lhs.kind == TermKind::Product);
    CHECK(lhs.a->kind == TermKind::Constant);
    CHECK(lhs.a->name == "x");
    CHECK(lhs.b->kind == TermKind::Variable);
    CHECK(lhs.b->slot == 0);
    CHECK(free_names(f) == std::vector<std::string>{"x"});

    FormulaPtr g = parse_formula("exists y. y*y = c & !(y = 1)");
    REQUIRE(g->kind == FormulaKind::Exists);
    REQUIRE(g->f1->kind == FormulaKind::And);
    CHECK(g->f1->f1->kind == FormulaKind::Equal);
    CHECK(g->f1->f1->t2->kind == TermKind::Constant);
    CHECK(g->f1->f2->kind == FormulaKind::Not);
    CHECK(g->f1->f2->f1->t2->kind == TermKind::Identity);
    CHECK(free_names(g) == std::vector<std::string>{"c"});

    FormulaPtr h = parse_formula("in_gcl_pow(c, 3, x)");
    REQUIRE(h->kind == FormulaKind::InGclPow);
    CHECK(h->n == 3);
    CHECK(h->t1->name == "c");
    CHECK(h->t2->name == "x");

    CHECK(free_names(parse_formula("c*x = x*c & forall y. y*d = d*y")) ==
          std::vector<std::string>{"c", "x", "d"});
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_formula("forall y y"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall x. forall x. x = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("x*"), ParseError);
    CHECK_THROWS_AS(parse_formula("x ="), ParseError);
    CHECK_THROWS_AS(parse_formula("(x = y"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("in_gcl_pow(x, 0, y)"), ParseError);
    CHECK_THROWS_AS(parse_formula("x = y & & y = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall 1. x = x"), ParseError);
}

TEST_CASE("operator precedence and quantifier scope") {
    GroupTable G = enumerate_group("cyc:4");
    REQUIRE(!G.gens.empty());
    uint32_t g = G.gens[0];
    Env env{{"c", g}};

    // & binds tighter than |, both tighter than ->.
    const char* t = "1 = 1";
    const char* f = "!(1 = 1)";
    for (bool a : {false, true})
        for (bool b : {false, true})
            for (bool c : {false, true}) {
                std::string pa = a ? t : f, pb = b ? t : f, pc = c ? t : f;
                std::string mix = pa + (" & " + pb) + (" | " + pc);
                CHECK(evaluate(G, parse_formula(mix), env) == ((a && b) || c));
                std::string arr = pa + (" -> " + pb) + (" -> " + pc);
                CHECK(evaluate(G, parse_formula(arr), env) == (!a || (!b || c)));
            }

    // ! applies to the atom, not the whole disjunction.
    CHECK(evaluate(G, parse_formula("!c = 1 | c = c"), env));

    // A quantifier scopes to the end of the formula.
    CHECK(!evaluate(G, parse_formula("forall x. x = x & x = c"), env));
    CHECK(evaluate(G, parse_formula("(forall x. x = x) & c = c"), env));
}

TEST_CASE("evaluation over psl(3,2)") {
    GroupTable G = enumerate_group("psl:3:gf:2");
    uint32_t e12 = elem_index(G, 1, 2, 1);

    FormulaPtr center = parse_formula("forall y. c*y = y*c");
    CHECK(!evaluate(G, center, Env{{"c", e12}}));
    CHECK(evaluate(G, center, Env{{"c", 0}}));

    CHECK(evaluate(G, parse_formula("exists y. y*y = x"), Env{{"x", 0}}));

    // Built-in gcl power membership agrees with the gclsets primitive.
    FormulaPtr mem = parse_formula("in_gcl_pow(a, 2, x)");
    for (uint32_t x : {uint32_t(0), e12, uint32_t(17), uint32_t(100)})
        CHECK(evaluate(G, mem, Env{{"a", e12}, {"x", x}}) == in_gcl_pow(G, e12, 2, x));
}

TEST_CASE("binding and budget errors") {
    GroupTable G = enumerate_group("sl:2:gf:3");
    CHECK_THROWS_AS(evaluate(G, parse_formula("x = y"), Env{{"x", 0}}), PreconditionFailed);
    // No short-circuit: every y runs the full inner loop, 24 + 24*24 > 100.
    CHECK_THROWS_AS(
        evaluate(G, parse_formula("forall y. forall z. z = z"), Env{}, 100),
        BudgetExceeded);
    CHECK_THROWS_AS(
        definable_set(G, parse_formula("x = x"), {"x", "x"}, Env{}), PreconditionFailed);
    CHECK_THROWS_AS(
        definable_set(G, parse_formula("x = x"), {"x", "y", "z", "w"}, Env{}),
        PreconditionFailed);
}

TEST_CASE("definable sets match hand fused loops") {
    for (const char* spec : {"sl:2:gf:3", "cyc:12"}) {
        GroupTable G = enumerate_group(spec);

        // Center.
        std::vector<std::vector<uint32_t>> want;
        for (uint32_t x = 0; x < G.size(); ++x) {
            bool c = true;
            for (uint32_t y = 0; c && y < G.size(); ++y) c = G.mul(x, y) == G.mul(y, x);
            if (c) want.push_back({x});
        }
        CHECK(definable_set(G, parse_formula("forall y. x*y = y*x"), {"x"}, Env{}) == want);

        // Centralizer of a fixed element.
        uint32_t cc = G.size() / 2;
        want.clear();
        for (uint32_t x = 0; x < G.size(); ++x)
            if (G.mul(x, cc) == G.mul(cc, x)) want.push_back({x});
        CHECK(definable_set(G, parse_formula("x*c = c*x"), {"x"}, Env{{"c", cc}}) == want);

        // Commutator image.
        ElementSet comm = G.empty_set();
        for (uint32_t y = 0; y < G.size(); ++y)
            for (uint32_t z = 0; z < G.size(); ++z)
                comm.set(G.mul(G.mul(G.inv(y), G.inv(z)), G.mul(y, z)));
        want.clear();
        for (uint32_t x = 0; x < G.size(); ++x)
            if (comm.test(x)) want.push_back({x});
        CHECK(definable_set(G, parse_formula("exists y. exists z. x = y^-1*z^-1*y*z"), {"x"},
                            Env{}) == want);

        // Commuting pairs, arity 2.
        std::vector<std::vector<uint32_t>> pairs;
        for (uint32_t x = 0; x < G.size(); ++x)
            for (uint32_t y = 0; y < G.size(); ++y)
                if (G.mul(x, y) == G.mul(y, x)) pairs.push_back({x, y});
        CHECK(definable_set(G, parse_formula("x*y = y*x"), {"x", "y"}, Env{}) == pairs);
    }

    // Arity 3 on a small cyclic group.
    GroupTable C = enumerate_group("cyc:4");
    std::vector<std::vector<uint32_t>> want;
    for (uint32_t x = 0; x < C.size(); ++x)
        for (uint32_t y = 0; y < C.size(); ++y)
            for (uint32_t z = 0; z < C.size(); ++z)
                if (C.mul(x, y) == z) want.push_back({x, y, z});
    CHECK(definable_set(C, parse_formula("x*y = z"), {"x", "y", "z"}, Env{}) == want);
}

TEST_CASE("center of psl(2,5) is trivial as a definable set") {
    GroupTable G = enumerate_group("psl:2:gf:5");
    auto got = definable_set(G, parse_formula("forall y. x*y = y*x"), {"x"}, Env{});
    REQUIRE(got.size() == 1);
    CHECK(got[0] == std::vector<uint32_t>{0});
}

TEST_CASE("z of cent of e13 over psl(3,3) is the carrier") {
    GroupTable G = enumerate_group("psl:3:gf:3");
    uint32_t c = elem_index(G, 1, 3, 1);
    auto got = definable_set(
        G, parse_formula("x*c = c*x & forall y. (y*c = c*y -> x*y = y*x)"), {"x"},
        Env{{"c", c}});
    ElementSet carrier = elem_1n_set(G);
    REQUIRE(got.size() == carrier.count());
    for (const auto& t : got) CHECK(carrier.test(t[0]));
}

namespace {

// Random formula ASTs rendered as fully parenthesized text; the duality
// transform rewrites every universal quantifier through negated existentials.
struct RandForm {
    enum Kind { Eq, Not, And, Or, Imp, All, Ex } kind = Eq;
    std::string t1, t2, var;
    std::unique_ptr<RandForm> a, b;
};

std::string rand_term(Rng& rng, const std::vector<std::string>& scope, bool consts, int depth) {
    if (depth > 0 && rng.below(3) == 0) {
        if (rng.below(2) == 0)
            return rand_term(rng, scope, consts, depth - 1) + "*" +
                   rand_term(rng, scope, consts, depth - 1);
        // The term grammar has no parentheses, so ^-1 only wraps an atom.
        return rand_term(rng, scope, consts, 0) + "^-1";
    }
    std::vector<std::string> atoms = scope;
    atoms.push_back("x");
    atoms.push_back("1");
    if (consts) atoms.push_back("c");
    return atoms[size_t(rng.below(atoms.size()))];
}

std::unique_ptr<RandForm> rand_formula(Rng& rng, std::vector<std::string>& scope, bool consts,
                                       int depth, int quants) {
    auto node = std::make_unique<RandForm>();
    uint64_t pick = rng.below(depth > 0 ? (quants > 0 ? 7 : 5) : 1);
    switch (pick) {
        case 0:
            node->kind = RandForm::Eq;
            node->t1 = rand_term(rng, scope, consts, 2);
            node->t2 = rand_term(rng, scope, consts, 2);
            break;
        case 1:
            node->kind = RandForm::Not;
            node->a = rand_formula(rng, scope, consts, depth - 1, quants);
            break;
        case 2:
        case 3:
        case 4: {
            node->kind = pick == 2 ? RandForm::And : (pick == 3 ? RandForm::Or : RandForm::Imp);
            node->a = rand_formula(rng, scope, consts, depth - 1, quants);
            node->b = rand_formula(rng, scope, consts, depth - 1, quants);
            break;
        }
        default: {
            node->kind = pick == 5 ? RandForm::All : RandForm::Ex;
            node->var = "v" + std::to_string(scope.size());
            scope.push_back(node->var);
            node->a = rand_formula(rng, scope, consts, depth - 1, quants - 1);
            scope.pop_back();
            break;
        }
    }
    return node;
}

std::string render(const RandForm& f, bool dualize) {
    switch (f.kind) {
        case RandForm::Eq:
            return "(" + f.t1 + " = " + f.t2 + ")";
        case RandForm::Not:
            return "!" + render(*f.a, dualize);
        case RandForm::And:
            return "(" + render(*f.a, dualize) + " & " + render(*f.b, dualize) + ")";
        case RandForm::Or:
            return "(" + render(*f.a, dualize) + " | " + render(*f.b, dualize) + ")";
        case RandForm::Imp:
            return "(" + render(*f.a, dualize) + " -> " + render(*f.b, dualize) + ")";
        case RandForm::All:
            if (dualize)
                return "!(exists " + f.var + ". !" + render(*f.a, dualize) + ")";
            return "(forall " + f.var + ". " + render(*f.a, dualize) + ")";
        default:
            return "(exists " + f.var + ". " + render(*f.a, dualize) + ")";
    }
}

}  // namespace

TEST_CASE("quantifier duality on random formulas") {
    Rng rng(987654321);
    std::vector<GroupTable> groups;
    groups.push_back(enumerate_group("sl:2:gf:3"));
    groups.push_back(enumerate_group("cyc:12"));
    groups.push_back(enumerate_group("psl:2:gf:5"));
    int done = 0;
    while (done < 100) {
        const GroupTable& G = groups[size_t(done) % groups.size()];
        std::vector<std::string> scope;
        auto ast = rand_formula(rng, scope, true, 3, 2);
        std::string plain = render(*ast, false);
        std::string dual = render(*ast, true);
        std::string dneg = "!!" + plain;
        Env env{{"c", uint32_t(rng.below(G.size()))}};
        auto s1 = definable_set(G, parse_formula(plain), {"x"}, env);
        auto s2 = definable_set(G, parse_formula(dual), {"x"}, env);
        auto s3 = definable_set(G, parse_formula(dneg), {"x"}, env);
        CHECK(s1 == s2);
        CHECK(s1 == s3);
        ++done;
    }
}

TEST_CASE("constant free definable sets are conjugation invariant") {
    Rng rng(13579);
    GroupTable G = enumerate_group("sl:2:gf:3");
    int done = 0;
    while (done < 30) {
        std::vector<std::string> scope;
        auto ast = rand_formula(rng, scope, false, 3, 2);
        std::string text = render(*ast, false);
        auto s = definable_set(G, parse_formula(text), {"x"}, Env{});
        std::vector<uint32_t> flat;
        for (const auto& t : s) flat.push_back(t[0]);
        for (uint32_t g : {uint32_t(1), uint32_t(7), G.size() - 1}) {
            std::vector<uint32_t> img;
            for (uint32_t v : flat) img.push_back(G.conj(g, v));
            std::sort(img.begin(), img.end());
            CHECK(img == flat);
        }
        ++done;
    }
}

TEST_CASE("family slices of the centralizer family") {
    GroupTable G = enumerate_group("psl:2:gf:5");
    DefinableFamily fam{{"y"}, {"z"}, parse_formula("z*y = y*z")};
    FamilySlices fs = family_slices(G, fam, Env{});

    std::set<std::vector<uint32_t>> want;
    for (uint32_t y = 0; y < G.size(); ++y) {
        std::vector<uint32_t> cent;
        for (uint32_t z = 0; z < G.size(); ++z)
            if (G.mul(z, y) == G.mul(y, z)) cent.push_back(z);
        want.insert(cent);
    }
    REQUIRE(fs.slices.size() == want.size());
    uint64_t total = 0;
    for (size_t k = 0; k < fs.slices.size(); ++k) {
        std::vector<uint32_t> flat;
        for (const auto& t : fs.slices[k]) {
            REQUIRE(t.size() == 1);
            flat.push_back(t[0]);
        }
        CHECK(want.count(flat) == 1);
        // The representative parameter reproduces its slice.
        REQUIRE(fs.rep_params[k].size() == 1);
        uint32_t y = fs.rep_params[k][0];
        std::vector<uint32_t> cent;
        for (uint32_t z = 0; z < G.size(); ++z)
            if (G.mul(z, y) == G.mul(y, z)) cent.push_back(z);
        CHECK(flat == cent);
        total += fs.multiplicities[k];
    }
    CHECK(total == G.size());

    // Trivial family: one slice, full multiplicity.
    FamilySlices triv = family_slices(G, DefinableFamily{{"y"}, {"z"}, parse_formula("z = z")},
                                      Env{});
    REQUIRE(triv.slices.size() == 1);
    CHECK(triv.slices[0].size() == G.size());
    CHECK(triv.multiplicities[0] == G.size());

    CHECK_THROWS_AS(
        family_slices(G, DefinableFamily{{"y"}, {"y"}, parse_formula("y = y")}, Env{}),
        PreconditionFailed);
}

TEST_CASE("uniform congruference family slice over psl(3, zmod 4)") {
    // The first-row unipotent subgroups U(;q) arise as slices of one formula
    // with the carrier parameter y: z = p (y^i) p^-1 * (y^j) over i, j < 4,
    // where p conjugates the (1,3) carrier onto the (1,2) slot.
    GroupTable G = enumerate_group("psl:3:zmod:4");
    Mat pmat = parse_matrix(G.ring, 3, "[[1,0,0],[0,0,1],[0,-1,0]]");
    uint32_t p12 = G.index_of(pmat);
    REQUIRE(p12 != npos32);

    std::string phi;
    const char* pw[4] = {"1", "y", "y*y", "y*y*y"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (!phi.empty()) phi += " | ";
            phi += std::string("z = p*") + pw[i] + "*p^-1*" + pw[j];
        }
    FormulaPtr f = parse_formula(phi);

    for (int64_t c : {int64_t(0), int64_t(1), int64_t(2)}) {
        uint32_t y = elem_index(G, 1, 3, c);
        auto got = definable_set(G, f, {"z"}, Env{{"p", p12}, {"y", y}});
        ElementSet want = row_congruence_set(G, ideal_make(G.ring, Int(c)));
        REQUIRE(got.size() == want.count());
        for (const auto& t : got) CHECK(want.test(t[0]));
    }
}

TEST_CASE("definable family slices respect sorted tuple order") {
    GroupTable G = enumerate_group("cyc:12");
    auto s = definable_set(G, parse_formula("exists y. x = y*y"), {"x"}, Env{});
    CHECK(s == sorted_tuples(s));
    CHECK(s.size() == 6);
}
