#pragma once

#include <string>
#include <vector>

#include "adl/rings.hpp"

namespace adl {

// Square matrix over a RingSpec with determinant 1, row-major entries.
// Construction through the factories checks the determinant; products and
// inverses of checked matrices stay in SL, so arithmetic does not recheck.
struct Mat {
    RingSpec ring;
    int n = 0;
    std::vector<Int> a;

    const Int& at(int i, int j) const { return a[size_t(i) * n + j]; }
    Int& at(int i, int j) { return a[size_t(i) * n + j]; }

    static Mat identity(const RingSpec& r, int n);
    // from_entries checks det = 1 (entries are canonicalized first).
    static Mat from_entries(const RingSpec& r, int n, std::vector<Int> entries);
    // Unchecked: for internal construction of known-good values.
    static Mat raw(const RingSpec& r, int n, std::vector<Int> entries);

    Mat mul(const Mat& o) const;
    Mat inverse() const;  // adjugate; requires det = 1
    Int det() const;
    bool is_identity() const;
    bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
    std::string str() const;
};

// e_{i,j}(v) = I + v E_{i,j}; 1-based indices, i != j.
Mat elementary(const RingSpec& r, int n, int i, int j, const Int& v);

// Signed permutation p with p e_{1,n}(a) p^{-1} = e_{i,j}(a) for all a and
// det p = 1. Requires n >= 3 when the underlying permutation is odd; the
// conjugation identity is verified at construction on two values.
Mat perm_conjugator(const RingSpec& r, int n, int i, int j);

// [x, y] = x^{-1} y^{-1} x y.
Mat commutator(const Mat& x, const Mat& y);

// Matrix literal "[[1,2],[0,1]]".
Mat parse_matrix(const RingSpec& r, int n, const std::string& text);

// Entry rows of the same literal, canonicalized, no determinant requirement.
std::vector<Int> parse_matrix_entries(const RingSpec& r, int n, const std::string& text);

// Element spec: "e:<i>,<j>:<a>" or a matrix literal.
Mat parse_element(const RingSpec& r, int n, const std::string& text);

}  // namespace adl
