#pragma once

#include <memory>
#include <string>
#include <vector>

#include "adl/grouptable.hpp"

namespace adl {

// Word expression tree. Inverses are Power nodes with exponent -1.
enum class WordKind { Letter, Product, Power, Commutator };

struct WordNode {
    WordKind kind = WordKind::Letter;
    int slot = -1;     // Letter: index in first-occurrence order
    int64_t exp = 1;   // Power
    std::shared_ptr<const WordNode> a, b;
    uint32_t letter_mask = 0;  // slots occurring in this subtree
    size_t pos = 0;
};

struct Word {
    std::shared_ptr<const WordNode> root;
    std::vector<std::string> letters;  // slot -> name
    int arity() const { return int(letters.size()); }
};

// Grammar: w := letter | w*w | w^-1 | w^<int> | [w,w], with ^ binding tighter
// than * and [a,b] = a^-1 b^-1 a b. No parentheses in this grammar.
Word parse_word(const std::string& text);

// w evaluated at one assignment env[slot].
uint32_t word_eval(const GroupTable& G, const Word& w, const std::vector<uint32_t>& env);

inline constexpr uint64_t kDefaultWordBudget = 1000000000ull;

// {w(g_1,...,g_k)} over all tuples. Letter-disjoint subtrees are combined by
// set products, which is exact because their assignments are independent;
// subtrees with shared letters fall back to tuple enumeration. Requires
// |G|^arity <= budget.
ElementSet word_image(const GroupTable& G, const Word& w, uint64_t budget = kDefaultWordBudget);

struct WordWidthResult {
    ElementSet image;
    ElementSet closure;  // subgroup generated by the image
    int width = 0;       // least N with W^N = W^{N+1}, W = image u inverses u {id}
};

WordWidthResult word_width(const GroupTable& G, const Word& w,
                           uint64_t budget = kDefaultWordBudget);

}  // namespace adl
