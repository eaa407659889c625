#include "adl/wordwidth.hpp"

#include <cctype>
#include <map>

#include "adl/util.hpp"

namespace adl {

namespace {

struct WordParser {
    const std::string& s;
    size_t p = 0;
    std::vector<std::string> letters;

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

    std::shared_ptr<const WordNode> product() {
        auto lhs = postfix();
        for (;;) {
            size_t at = p;
            if (!eat('*')) return lhs;
            auto n = std::make_shared<WordNode>();
            n->kind = WordKind::Product;
            n->a = lhs;
            n->b = postfix();
            n->letter_mask = n->a->letter_mask | n->b->letter_mask;
            n->pos = at;
            lhs = n;
        }
    }
    std::shared_ptr<const WordNode> postfix() {
        auto base = atom();
        for (;;) {
            skip_ws();
            if (p >= s.size() || s[p] != '^') return base;
            size_t at = p++;
            skip_ws();
            size_t ds = p;
            if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
            size_t digits = p;
            while (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) ++p;
            if (p == digits) throw ParseError(ds, "expected integer exponent");
            auto n = std::make_shared<WordNode>();
            n->kind = WordKind::Power;
            n->exp = std::stoll(s.substr(ds, p - ds));
            n->a = base;
            n->letter_mask = base->letter_mask;
            n->pos = at;
            base = n;
        }
    }
    std::shared_ptr<const WordNode> atom() {
        skip_ws();
        size_t at = p;
        if (eat('[')) {
            auto n = std::make_shared<WordNode>();
            n->kind = WordKind::Commutator;
            n->a = product();
            if (!eat(',')) throw ParseError(p, "expected ',' in commutator");
            n->b = product();
            if (!eat(']')) throw ParseError(p, "expected ']'");
            n->letter_mask = n->a->letter_mask | n->b->letter_mask;
            n->pos = at;
            return n;
        }
        if (p >= s.size() || !(isalpha(static_cast<unsigned char>(s[p])) || s[p] == '_'))
            throw ParseError(p, "expected a letter or '['");
        size_t start = p;
        while (p < s.size() && (isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
        std::string name = s.substr(start, p - start);
        int slot = -1;
        for (size_t i = 0; i < letters.size(); ++i)
            if (letters[i] == name) slot = int(i);
        if (slot < 0) {
            slot = int(letters.size());
            letters.push_back(name);
            if (letters.size() > 16) throw ParseError(start, "too many distinct letters");
        }
        auto n = std::make_shared<WordNode>();
        n->kind = WordKind::Letter;
        n->slot = slot;
        n->letter_mask = 1u << slot;
        n->pos = start;
        return n;
    }
};

uint32_t eval_node(const GroupTable& G, const WordNode* n, const std::vector<uint32_t>& env) {
    switch (n->kind) {
        case WordKind::Letter:
            return env[size_t(n->slot)];
        case WordKind::Product:
            return G.mul(eval_node(G, n->a.get(), env), eval_node(G, n->b.get(), env));
        case WordKind::Power:
            return G.pow(eval_node(G, n->a.get(), env), n->exp);
        case WordKind::Commutator: {
            uint32_t x = eval_node(G, n->a.get(), env);
            uint32_t y = eval_node(G, n->b.get(), env);
            return G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y));
        }
    }
    return 0;
}

// Joint enumeration over the slots occurring in this subtree.
ElementSet enumerate_subtree(const GroupTable& G, const WordNode* n, int arity) {
    std::vector<int> slots;
    for (int s = 0; s < arity; ++s)
        if (n->letter_mask & (1u << s)) slots.push_back(s);
    ElementSet out = G.empty_set();
    std::vector<uint32_t> env(size_t(arity), 0);
    uint64_t total = 1;
    for (size_t i = 0; i < slots.size(); ++i) total *= G.size();
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t c = t;
        for (int s : slots) {
            env[size_t(s)] = uint32_t(c % G.size());
            c /= G.size();
        }
        out.set(eval_node(G, n, env));
    }
    return out;
}

ElementSet image_rec(const GroupTable& G, const WordNode* n, int arity) {
    switch (n->kind) {
        case WordKind::Letter:
            return G.full_set();
        case WordKind::Power: {
            ElementSet S = image_rec(G, n->a.get(), arity);
            ElementSet out = G.empty_set();
            for (auto i = S.find_first(); i != ElementSet::npos; i = S.find_next(i))
                out.set(G.pow(uint32_t(i), n->exp));
            return out;
        }
        case WordKind::Product: {
            if ((n->a->letter_mask & n->b->letter_mask) != 0)
                return enumerate_subtree(G, n, arity);
            // Disjoint letters range independently, so the image is exactly
            // the set product of the subtree images.
            return set_product(G, image_rec(G, n->a.get(), arity), image_rec(G, n->b.get(), arity));
        }
        case WordKind::Commutator: {
            if ((n->a->letter_mask & n->b->letter_mask) != 0)
                return enumerate_subtree(G, n, arity);
            ElementSet A = image_rec(G, n->a.get(), arity);
            ElementSet B = image_rec(G, n->b.get(), arity);
            ElementSet out = G.empty_set();
            const auto& inv = G.inverse_table();
            for (auto i = A.find_first(); i != ElementSet::npos; i = A.find_next(i))
                for (auto j = B.find_first(); j != ElementSet::npos; j = B.find_next(j)) {
                    uint32_t x = uint32_t(i), y = uint32_t(j);
                    out.set(G.mul(G.mul(inv[x], inv[y]), G.mul(x, y)));
                }
            return out;
        }
    }
    return G.empty_set();
}

}  // namespace

Word parse_word(const std::string& text) {
    WordParser parser{text};
    Word w;
    w.root = parser.product();
    parser.skip_ws();
    if (parser.p != text.size()) throw ParseError(parser.p, "unexpected trailing input");
    w.letters = std::move(parser.letters);
    check(!w.letters.empty(), "word must contain at least one letter");
    return w;
}

uint32_t word_eval(const GroupTable& G, const Word& w, const std::vector<uint32_t>& env) {
    require(w.root != nullptr, "empty word");
    require(int(env.size()) == w.arity(), "assignment arity mismatch");
    return eval_node(G, w.root.get(), env);
}

ElementSet word_image(const GroupTable& G, const Word& w, uint64_t budget) {
    require(w.root != nullptr, "empty word");
    uint64_t total = 1;
    for (int i = 0; i < w.arity(); ++i) {
        if (total > budget / G.size() + 1) throw BudgetExceeded("tuple space exceeds budget");
        total *= G.size();
    }
    if (total > budget) throw BudgetExceeded("tuple space exceeds budget");
    return image_rec(G, w.root.get(), w.arity());
}

WordWidthResult word_width(const GroupTable& G, const Word& w, uint64_t budget) {
    WordWidthResult r;
    r.image = word_image(G, w, budget);
    ElementSet W = r.image | set_inverse(G, r.image);
    W.set(0);
    ElementSet cur = W;
    int n = 1;
    for (;;) {
        ElementSet next = set_product(G, cur, W);
        if (next == cur) break;
        cur = std::move(next);
        ++n;
    }
    r.width = n;
    r.closure = std::move(cur);
    // The fixpoint is the generated subgroup; re-verify closure properties.
    check(r.closure.test(0), "closure must contain the identity");
    check(set_inverse(G, r.closure) == r.closure, "closure must be inverse-closed");
    check(set_product(G, r.closure, r.closure) == r.closure, "closure must be product-closed");
    return r;
}

}  // namespace adl
