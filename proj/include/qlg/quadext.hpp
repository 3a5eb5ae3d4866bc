#pragma once
// Arithmetic in real/imaginary quadratic extensions Q(sqrt(delta)) with
// squarefree integer delta, plus just enough univariate polynomial
// arithmetic over such a field to test "restriction is a square".

#include <stdexcept>
#include <string>
#include <vector>

#include "qlg/rational.hpp"

namespace qlg {

// a + b*sqrt(delta); delta squarefree, delta != 0, 1
struct QuadExt {
    Int delta = 2;
    Rat a = 0, b = 0;

    QuadExt() = default;
    QuadExt(Int d, Rat ra, Rat rb) : delta(std::move(d)), a(std::move(ra)), b(std::move(rb)) {}
    static QuadExt rational(const Int& d, const Rat& v) { return {d, v, 0}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QuadExt conj() const { return {delta, a, -b}; }
    Rat norm() const { return a * a - Rat(delta) * b * b; }
    Rat trace() const { return 2 * a; }

    bool operator==(const QuadExt&) const = default;
};

namespace detail {
inline void check_same_field(const QuadExt& x, const QuadExt& y) {
    if (x.delta != y.delta)
        throw std::invalid_argument("QuadExt: mixed fields Q(sqrt(" +
                                    x.delta.get_str() + ")) and Q(sqrt(" +
                                    y.delta.get_str() + "))");
}
} // namespace detail

inline QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    detail::check_same_field(x, y);
    return {x.delta, x.a + y.a, x.b + y.b};
}
inline QuadExt operator-(const QuadExt& x) { return {x.delta, -x.a, -x.b}; }
inline QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
inline QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    detail::check_same_field(x, y);
    return {x.delta, x.a * y.a + Rat(x.delta) * x.b * y.b, x.a * y.b + x.b * y.a};
}
inline QuadExt operator*(const QuadExt& x, const Rat& s) {
    return {x.delta, x.a * s, x.b * s};
}

inline QuadExt inverse(const QuadExt& x) {
    if (x.is_zero()) throw std::domain_error("QuadExt inverse: division by zero");
    Rat n = x.norm(); // nonzero: delta squarefree != 1 so sqrt(delta) irrational
    return {x.delta, x.a / n, -x.b / n};
}
inline QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * inverse(y); }

// x lies in the base field Q and is a square there
inline bool is_square_in_base(const QuadExt& x) {
    return x.b == 0 && is_square_rat(x.a);
}

inline std::string to_string(const QuadExt& x) {
    if (x.b == 0) return to_string(x.a);
    std::string s = (x.a == 0) ? "" : to_string(x.a);
    Rat b = x.b;
    if (!s.empty()) {
        s += (b < 0) ? " - " : " + ";
        if (b < 0) b = -b;
    } else if (b < 0) {
        s += "-";
        b = -b;
    }
    if (b != 1) s += to_string(b) + "*";
    s += "sqrt(" + x.delta.get_str() + ")";
    return s;
}

// dense univariate polynomial over Q(sqrt(delta)), ascending degree
struct QuadExtPoly {
    Int delta = 2;
    std::vector<QuadExt> c;

    explicit QuadExtPoly(Int d) : delta(std::move(d)) {}

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const {
        for (const QuadExt& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    int degree() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (!c[i].is_zero()) return i;
        return -1;
    }
};

inline QuadExtPoly operator*(const QuadExtPoly& p, const QuadExtPoly& q) {
    QuadExtPoly r(p.delta);
    if (p.is_zero() || q.is_zero()) return r;
    r.c.assign(p.c.size() + q.c.size() - 1, QuadExt::rational(p.delta, 0));
    for (std::size_t i = 0; i < p.c.size(); ++i)
        for (std::size_t j = 0; j < q.c.size(); ++j)
            r.c[i + j] = r.c[i + j] + p.c[i] * q.c[j];
    return r;
}

// Decide whether p = lambda * q^2 for some nonzero lambda in the field and
// some polynomial q over the field. Exact: strips the even content of the
// variable, then matches coefficients of a monic square root (char != 2).
inline bool is_constant_times_square(const QuadExtPoly& p) {
    int d = p.degree();
    if (d < 0) return false; // zero polynomial: caller decides separately
    int lo = 0;
    while (p.c[lo].is_zero()) ++lo;
    if (lo % 2 != 0) return false;
    int n = d - lo; // degree of the stripped part
    if (n % 2 != 0) return false;
    // monic-normalize the stripped part: m_i = c[lo+i] / c[d]
    QuadExt lead = p.c[d];
    std::vector<QuadExt> m(n + 1, QuadExt::rational(p.delta, 0));
    for (int i = 0; i <= n; ++i) m[i] = p.c[lo + i] / lead;
    // solve q^2 = m with q monic of degree n/2, top-down
    int h = n / 2;
    std::vector<QuadExt> q(h + 1, QuadExt::rational(p.delta, 0));
    q[h] = QuadExt::rational(p.delta, 1);
    for (int i = h - 1; i >= 0; --i) {
        // coefficient of x^(h+i) in q^2: 2*q[i] + sum_{i<j<h, j+k=h+i} q[j]q[k]
        QuadExt acc = QuadExt::rational(p.delta, 0);
        for (int j = i + 1; j < h; ++j) {
            int k = h + i - j;
            if (k > j) continue; // count each unordered pair once below
            if (k == j)
                acc = acc + q[j] * q[j];
            else if (k > i)
                acc = acc + (q[j] * q[k]) * Rat(2);
        }
        q[i] = (m[h + i] - acc) * Rat(1, 2);
    }
    // verify q^2 == m in full
    QuadExtPoly qq(p.delta);
    qq.c = q;
    QuadExtPoly sq = qq * qq;
    sq.c.resize(n + 1, QuadExt::rational(p.delta, 0));
    for (int i = 0; i <= n; ++i)
        if (!(sq.c[i] == m[i])) return false;
    return true;
}

} // namespace qlg
