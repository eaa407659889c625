#include "adl/mat.hpp"

#include <sstream>

namespace adl {

Mat Mat::identity(const RingSpec& r, int n) {
    Mat m;
    m.ring = r;
    m.n = n;
    m.a.assign(size_t(n) * n, Int(0));
    for (int i = 0; i < n; ++i) m.at(i, i) = r.canon(1);
    return m;
}

Mat Mat::raw(const RingSpec& r, int n, std::vector<Int> entries) {
    Mat m;
    m.ring = r;
    m.n = n;
    m.a = std::move(entries);
    for (auto& v : m.a) v = r.canon(v);
    return m;
}

Mat Mat::from_entries(const RingSpec& r, int n, std::vector<Int> entries) {
    require(int(entries.size()) == n * n, "matrix entry count");
    Mat m = raw(r, n, std::move(entries));
    require(m.det() == r.canon(1), "matrix determinant is not 1");
    return m;
}

Mat Mat::mul(const Mat& o) const {
    check(n == o.n && ring == o.ring, "matrix shape mismatch");
    Mat out;
    out.ring = ring;
    out.n = n;
    out.a.assign(size_t(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += x * o.at(k, j);
        }
    for (auto& v : out.a) v = ring.canon(v);
    return out;
}

namespace {

// Determinant by first-column Laplace expansion over the live-row mask.
// Works over any commutative ring; n <= 5 at desk scale.
Int det_rec(const Mat& m, uint32_t rows, int col) {
    if (col == m.n) return 1;
    Int acc = 0;
    int sign = 1;
    for (int i = 0; i < m.n; ++i) {
        if (!(rows & (1u << i))) continue;
        const Int& v = m.at(i, col);
        if (v != 0) {
            Int sub = det_rec(m, rows & ~(1u << i), col + 1);
            if (sign > 0)
                acc += v * sub;
            else
                acc -= v * sub;
        }
        sign = -sign;
    }
    return acc;
}

}  // namespace

Int Mat::det() const { return ring.canon(det_rec(*this, (1u << n) - 1, 0)); }

Mat Mat::inverse() const {
    // det = 1, so the inverse is the adjugate.
    Mat out;
    out.ring = ring;
    out.n = n;
    out.a.assign(size_t(n) * n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat minor;
            minor.ring = ring;
            minor.n = n - 1;
            minor.a.reserve(size_t(n - 1) * (n - 1));
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.a.push_back(at(r, c));
                }
            }
            Int cof = minor.n == 0 ? Int(1) : det_rec(minor, (1u << minor.n) - 1, 0);
            out.at(i, j) = ring.canon(((i + j) % 2 == 0) ? cof : -cof);
        }
    return out;
}

bool Mat::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != ring.canon(i == j ? 1 : 0)) return false;
    return true;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Mat elementary(const RingSpec& r, int n, int i, int j, const Int& v) {
    require(n >= 2 && i >= 1 && j >= 1 && i <= n && j <= n && i != j,
            "elementary needs 1 <= i != j <= n");
    Mat m = Mat::identity(r, n);
    m.at(i - 1, j - 1) = r.canon(v);
    return m;
}

Mat perm_conjugator(const RingSpec& r, int n, int i, int j) {
    require(n >= 2 && i >= 1 && j >= 1 && i <= n && j <= n && i != j,
            "perm_conjugator needs 1 <= i != j <= n");
    // sigma(1) = i, sigma(n) = j, remaining positions filled ascending.
    std::vector<int> sigma(n + 1, 0);
    std::vector<bool> taken(n + 1, false);
    sigma[1] = i;
    sigma[n] = j;
    taken[i] = taken[j] = true;
    int next = 1;
    for (int k = 2; k <= n - 1; ++k) {
        while (taken[next]) ++next;
        sigma[k] = next;
        taken[next] = true;
    }
    int parity = 0;
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y)
            if (sigma[x] > sigma[y]) ++parity;
    std::vector<Int> sign(n + 1, Int(1));
    if (parity % 2 == 1) {
        if (n < 3)
            throw PreconditionFailed("no det-1 signed permutation conjugator for n = 2 odd case");
        // Flip a column other than 1 and n; keeps s_1 = s_n.
        sign[2] = -1;
    }
    Mat p;
    p.ring = r;
    p.n = n;
    p.a.assign(size_t(n) * n, Int(0));
    for (int k = 1; k <= n; ++k) p.at(sigma[k] - 1, k - 1) = r.canon(sign[k]);
    check(p.det() == r.canon(1), "perm_conjugator determinant");
    Mat pinv = p.inverse();
    for (Int v : {Int(1), Int(-1)}) {
        Mat lhs = p.mul(elementary(r, n, 1, n, v)).mul(pinv);
        check(lhs == elementary(r, n, i, j, v), "perm_conjugator conjugation identity");
    }
    return p;
}

Mat commutator(const Mat& x, const Mat& y) {
    return x.inverse().mul(y.inverse()).mul(x).mul(y);
}

namespace {

struct Cursor {
    const std::string& s;
    size_t p = 0;
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
    void expect(char c) {
        if (!eat(c)) throw ParseError(p, std::string("expected '") + c + "'");
    }
    Int integer() {
        skip_ws();
        size_t start = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        while (p < s.size() && isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == start || (p == start + 1 && !isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError(start, "expected integer");
        return Int(s.substr(start, p - start));
    }
};

}  // namespace

std::vector<Int> parse_matrix_entries(const RingSpec& r, int n, const std::string& text) {
    Cursor c{text};
    c.expect('[');
    std::vector<Int> entries;
    for (int i = 0; i < n; ++i) {
        if (i) c.expect(',');
        c.expect('[');
        for (int j = 0; j < n; ++j) {
            if (j) c.expect(',');
            entries.push_back(r.canon(c.integer()));
        }
        c.expect(']');
    }
    c.expect(']');
    c.skip_ws();
    if (c.p != text.size()) throw ParseError(c.p, "trailing characters after matrix");
    return entries;
}

Mat parse_matrix(const RingSpec& r, int n, const std::string& text) {
    return Mat::from_entries(r, n, parse_matrix_entries(r, n, text));
}

Mat parse_element(const RingSpec& r, int n, const std::string& text) {
    if (text.rfind("e:", 0) == 0) {
        size_t comma = text.find(',', 2);
        size_t colon = text.find(':', 2);
        if (comma == std::string::npos || colon == std::string::npos || comma > colon)
            throw ParseError(0, "element spec wants e:<i>,<j>:<a>");
        int i = std::stoi(text.substr(2, comma - 2));
        int j = std::stoi(text.substr(comma + 1, colon - comma - 1));
        return elementary(r, n, i, j, Int(text.substr(colon + 1)));
    }
    return parse_matrix(r, n, text);
}

}  // namespace adl
