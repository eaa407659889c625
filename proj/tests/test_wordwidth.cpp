#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "adl/util.hpp"
#include "adl/wordwidth.hpp"
#include "doctest.h"

using namespace adl;

namespace {

// Oracle: literal odometer over |G|^arity, no image decomposition.
ElementSet image_oracle(const GroupTable& G, const Word& w) {
    ElementSet out = G.empty_set();
    uint64_t total = 1;
    for (int i = 0; i < w.arity(); ++i) total *= G.size();
    std::vector<uint32_t> env(size_t(w.arity()), 0);
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t c = t;
        for (int s = 0; s < w.arity(); ++s) {
            env[size_t(s)] = uint32_t(c % G.size());
            c /= G.size();
        }
        out.set(word_eval(G, w, env));
    }
    return out;
}

// Naive width: dense repeated products of W up to a fixed horizon, no early
// frontier shortcuts, independent of the production fixpoint loop.
int naive_width(const GroupTable& G, const ElementSet& image, int nmax, ElementSet& closure) {
    std::vector<char> W(G.size(), 0);
    for (auto i = image.find_first(); i != ElementSet::npos; i = image.find_next(i)) {
        W[size_t(i)] = 1;
        W[G.inv(uint32_t(i))] = 1;
    }
    W[0] = 1;
    std::vector<std::vector<char>> pows{W};
    for (int n = 2; n <= nmax + 1; ++n) {
        std::vector<char> next(G.size(), 0);
        for (uint32_t i = 0; i < G.size(); ++i) {
            if (!pows.back()[i]) continue;
            for (uint32_t j = 0; j < G.size(); ++j)
                if (W[j]) next[G.mul(i, j)] = 1;
        }
        if (next == pows.back()) {
            closure = G.empty_set();
            for (uint32_t i = 0; i < G.size(); ++i)
                if (next[i]) closure.set(i);
            return n - 1;
        }
        pows.push_back(std::move(next));
    }
    return -1;  // no fixpoint within the horizon
}

}  // namespace

TEST_CASE("word parsing shapes") {
    Word w = parse_word("x^2*[y,z]");
    CHECK(w.arity() == 3);
    CHECK(w.letters == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(w.root->kind == WordKind::Product);
    CHECK(w.root->a->kind == WordKind::Power);
    CHECK(w.root->a->exp == 2);
    CHECK(w.root->a->a->kind == WordKind::Letter);
    CHECK(w.root->a->a->slot == 0);
    CHECK(w.root->b->kind == WordKind::Commutator);
    CHECK(w.root->letter_mask == 0b111u);
    CHECK(w.root->a->letter_mask == 0b001u);
    CHECK(w.root->b->letter_mask == 0b110u);

    Word nested = parse_word("[x,[y,z]]");
    CHECK(nested.arity() == 3);
    REQUIRE(nested.root->kind == WordKind::Commutator);
    CHECK(nested.root->b->kind == WordKind::Commutator);

    Word inv = parse_word("x^-1");
    CHECK(inv.root->kind == WordKind::Power);
    CHECK(inv.root->exp == -1);

    Word chain = parse_word("x^2^3");
    CHECK(chain.root->kind == WordKind::Power);
    CHECK(chain.root->exp == 3);
    CHECK(chain.root->a->exp == 2);

    CHECK(parse_word("x*x").arity() == 1);
    CHECK(parse_word("  x * [ y , z ]  ").arity() == 3);

    CHECK_THROWS_AS(parse_word("x^"), ParseError);
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK_THROWS_AS(parse_word("x*"), ParseError);
    CHECK_THROWS_AS(parse_word("[x,y"), ParseError);
    CHECK_THROWS_AS(parse_word("[x y]"), ParseError);
    CHECK_THROWS_AS(parse_word("x y"), ParseError);
    CHECK_THROWS_AS(parse_word("^2"), ParseError);
    CHECK_THROWS_AS(parse_word("(x)"), ParseError);
}

TEST_CASE("word eval matches hand formulas") {
    GroupTable G = enumerate_group("sl:2:gf:3");
    Rng rng(31337);
    Word w = parse_word("x^2*[y,z]");
    for (int t = 0; t < 100; ++t) {
        uint32_t a = uint32_t(rng.below(G.size()));
        uint32_t b = uint32_t(rng.below(G.size()));
        uint32_t c = uint32_t(rng.below(G.size()));
        uint32_t comm = G.mul(G.mul(G.inv(b), G.inv(c)), G.mul(b, c));
        CHECK(word_eval(G, w, {a, b, c}) == G.mul(G.pow(a, 2), comm));
    }
    Word p = parse_word("x^-1*y^3");
    for (int t = 0; t < 50; ++t) {
        uint32_t a = uint32_t(rng.below(G.size()));
        uint32_t b = uint32_t(rng.below(G.size()));
        CHECK(word_eval(G, p, {a, b}) == G.mul(G.inv(a), G.pow(b, 3)));
    }
    CHECK_THROWS_AS(word_eval(G, w, {0, 1}), PreconditionFailed);
}

TEST_CASE("word image examples") {
    GroupTable P = enumerate_group("psl:2:gf:5");
    CHECK(word_image(P, parse_word("x")) == P.full_set());

    GroupTable C6 = enumerate_group("cyc:6");
    ElementSet sq = word_image(C6, parse_word("x^2"));
    CHECK(sq.count() == 3);  // squares in Z/6 are {0, 2, 4}
    for (auto i = sq.find_first(); i != ElementSet::npos; i = sq.find_next(i)) {
        // Each member really is a square.
        bool is_sq = false;
        for (uint32_t g = 0; g < C6.size(); ++g) is_sq = is_sq || C6.pow(g, 2) == uint32_t(i);
        CHECK(is_sq);
    }

    GroupTable C12 = enumerate_group("cyc:12");
    ElementSet comm = word_image(C12, parse_word("[y,z]"));
    CHECK(comm.count() == 1);
    CHECK(comm.test(0));

    ElementSet sext = word_image(C12, parse_word("x^6"));
    CHECK(sext.count() == 2);  // {0, 6}

    CHECK(word_image(C12, parse_word("x^0")).count() == 1);
    CHECK(word_image(P, parse_word("x^-1")) == P.full_set());
}

TEST_CASE("image decomposition matches literal enumeration") {
    std::vector<std::string> groups{"sl:2:gf:3", "cyc:12", "psl:2:gf:5"};
    std::vector<std::string> words{"x",       "x^2",        "x*y",      "[x,y]",
                                   "x^2*[y,z]", "[x,[y,z]]", "x*[y,z]",  "x*x",
                                   "[x,[y,x]]", "x^-1*y^3",  "x^3*y^2"};
    for (const std::string& gs : groups) {
        GroupTable G = enumerate_group(gs);
        for (const std::string& ws : words) {
            Word w = parse_word(ws);
            CAPTURE(gs);
            CAPTURE(ws);
            REQUIRE(word_image(G, w) == image_oracle(G, w));
        }
    }
    // Shared letters only constrain, never extend: x*x equals x^2.
    GroupTable G = enumerate_group("sl:2:gf:3");
    CHECK(word_image(G, parse_word("x*x")) == word_image(G, parse_word("x^2")));
}

TEST_CASE("word image is conjugation invariant") {
    for (const char* gs : {"sl:2:gf:3", "cyc:12", "psl:2:gf:5"}) {
        GroupTable G = enumerate_group(gs);
        for (const char* ws : {"x^2", "[x,y]", "x^3*y^2"}) {
            ElementSet S = word_image(G, parse_word(ws));
            for (uint32_t g = 0; g < G.size(); ++g) {
                ElementSet T = G.empty_set();
                for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
                    T.set(G.conj(g, uint32_t(i)));
                REQUIRE(T == S);
            }
        }
    }
}

TEST_CASE("width of the letter word is one") {
    for (const char* gs : {"cyc:6", "sl:2:gf:3", "psl:2:gf:5"}) {
        GroupTable G = enumerate_group(gs);
        WordWidthResult r = word_width(G, parse_word("x"));
        CHECK(r.width == 1);
        CHECK(r.closure == G.full_set());
    }
}

TEST_CASE("silly word has width one and full image") {
    // x*[y,z] is silly: its image already covers the whole group.
    for (const char* gs :
         {"cyc:12", "sl:2:gf:3", "psl:2:gf:5", "sl:2:zmod:4", "psl:3:gf:2"}) {
        GroupTable G = enumerate_group(gs);
        WordWidthResult r = word_width(G, parse_word("x*[y,z]"));
        CAPTURE(gs);
        CHECK(r.image == G.full_set());
        CHECK(r.width == 1);
        CHECK(r.closure == G.full_set());
    }
}

TEST_CASE("width against the naive fixed horizon oracle") {
    for (const char* gs : {"sl:2:gf:3", "psl:2:gf:5", "cyc:12", "sl:2:zmod:4"}) {
        GroupTable G = enumerate_group(gs);
        for (const char* ws : {"x^2", "x^2*[y,z]", "x^3", "[x,y]", "x^4*y^2"}) {
            Word w = parse_word(ws);
            WordWidthResult r = word_width(G, w);
            ElementSet oracle_closure = G.empty_set();
            int ow = naive_width(G, r.image, 8, oracle_closure);
            CAPTURE(gs);
            CAPTURE(ws);
            REQUIRE(ow == r.width);
            REQUIRE(oracle_closure == r.closure);
            // Independent closure: BFS subgroup generation from the image.
            REQUIRE(r.closure == subgroup_closure(G, r.image));
        }
    }
}

TEST_CASE("abelian commutator word") {
    GroupTable C = enumerate_group("cyc:12");
    WordWidthResult r = word_width(C, parse_word("[y,z]"));
    CHECK(r.image.count() == 1);
    CHECK(r.width == 1);
    CHECK(r.closure.count() == 1);
}

TEST_CASE("budget enforcement") {
    GroupTable P = enumerate_group("psl:2:gf:5");
    CHECK_THROWS_AS(word_image(P, parse_word("x*y"), 100), BudgetExceeded);
    CHECK_THROWS_AS(word_width(P, parse_word("[x,y]"), 1000), BudgetExceeded);
    // Arity five stays within the default budget thanks to decomposition.
    WordWidthResult r = word_width(P, parse_word("x*y*z*w*v"));
    CHECK(r.width == 1);
    CHECK(r.closure == P.full_set());
}
