#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adl/util.hpp"

namespace adl {

// All user-visible integer arithmetic is arbitrary precision; fixed-width
// residues appear only inside GroupTable fast paths.
using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// g = gcd(a,b) >= 0 with x*a + y*b = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        if (a < 0) {
            x = -1;
            y = 0;
            return -a;
        }
        x = 1;
        y = 0;
        return a;
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return d == n;
    return true;
}

// Prime factorization by trial division, smallest first. Desk scale only.
inline std::vector<std::pair<Int, int>> factorize(Int n) {
    check(n >= 2, "factorize needs n >= 2");
    std::vector<std::pair<Int, int>> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::string int_str(const Int& v) { return v.str(); }

// Narrow to int64 for desk-scale consumers; throws if out of range.
inline int64_t to_i64(const Int& v) {
    check(v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max(),
          "integer out of int64 range");
    return static_cast<int64_t>(v);
}

}  // namespace adl
