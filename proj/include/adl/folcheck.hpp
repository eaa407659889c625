#pragma once

#include <map>
#include <memory>

#include "adl/grouptable.hpp"

namespace adl {

inline constexpr uint64_t kDefaultAssignmentBudget = 1000000000ull;

enum class TermKind { Identity, Variable, Constant, Product, Inverse };

// Immutable AST nodes with source offsets. Bound variables are resolved to
// binder-stack slots at parse time; every other name is a Constant looked up
// in the evaluation environment (free variables and named constants share the
// namespace; callers decide which names they enumerate over).
struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Term {
    TermKind kind = TermKind::Identity;
    std::string name;  // Variable / Constant
    int slot = -1;     // Variable: binder depth
    TermPtr a, b;      // Product: both; Inverse: a
    size_t pos = 0;
};

enum class FormulaKind { Equal, Not, And, Or, Implies, Forall, Exists, InGclPow };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
struct Formula {
    FormulaKind kind = FormulaKind::Equal;
    TermPtr t1, t2;    // Equal: sides; InGclPow: alpha, x
    int64_t n = 0;     // InGclPow power
    std::string var;   // Forall / Exists binder name
    FormulaPtr f1, f2;
    size_t pos = 0;
};

// Grammar (loosest to tightest): quantifiers scope to the end, then ->
// (right associative), |, &, !, atoms. Atoms: (phi), t = t,
// in_gcl_pow(t, N, t). Terms: 1 | name | t*t | t^-1. Rebinding a name on one
// binder chain is a syntax error.
FormulaPtr parse_formula(const std::string& text);

// Constant-node names, i.e. names not bound by any quantifier; first
// appearance order.
std::vector<std::string> free_names(const FormulaPtr& f);

using Env = std::map<std::string, uint32_t>;

// Exhaustive quantifier enumeration with short-circuiting; each quantifier
// witness counts one assignment against the budget.
bool evaluate(const GroupTable& G, const FormulaPtr& f, const Env& env,
              uint64_t budget = kDefaultAssignmentBudget);

// Exact extension over the named tuple, ascending lexicographic, arity <= 3.
std::vector<std::vector<uint32_t>> definable_set(const GroupTable& G, const FormulaPtr& f,
                                                 const std::vector<std::string>& vars,
                                                 const Env& env,
                                                 uint64_t budget = kDefaultAssignmentBudget);

struct DefinableFamily {
    std::vector<std::string> params;
    std::vector<std::string> objects;
    FormulaPtr formula;
};

// Slices X_y deduplicated; rep_params holds the first parameter tuple
// attaining each distinct slice, multiplicities how many tuples share it.
struct FamilySlices {
    std::vector<std::vector<uint32_t>> rep_params;
    std::vector<std::vector<std::vector<uint32_t>>> slices;
    std::vector<uint64_t> multiplicities;
};
FamilySlices family_slices(const GroupTable& G, const DefinableFamily& fam, const Env& env,
                           uint64_t budget = kDefaultAssignmentBudget);

}  // namespace adl
