#pragma once
// Univariate polynomials over Q: ring ops, Euclidean division, gcd,
// squarefree part, and the Sylvester resultant evaluated by fraction-free
// (Bareiss) elimination on an integer-scaled matrix.

#include <stdexcept>
#include <vector>

#include "qlg/rational.hpp"

namespace qlg {

// coefficients by ascending degree, no trailing zeros (zero poly = empty)
struct UniPoly {
    std::vector<Rat> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static UniPoly constant(const Rat& v) {
        UniPoly p;
        if (v != 0) p.c = {v};
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for 0
    const Rat& lc() const {
        if (is_zero()) throw std::domain_error("UniPoly::lc: zero polynomial");
        return c.back();
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const UniPoly&) const = default;
};

inline UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

inline UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (Rat& x : r.c) x = -x;
    return r;
}

inline UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

inline UniPoly operator*(const UniPoly& a, const Rat& s) {
    UniPoly r = a;
    for (Rat& x : r.c) x *= s;
    r.trim();
    return r;
}

inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly divmod: division by zero");
    UniPoly rem = a, quo;
    if (a.degree() >= b.degree())
        quo.c.assign(a.degree() - b.degree() + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int k = rem.degree() - b.degree();
        Rat f = rem.lc() / b.lc();
        quo.c[k] = f;
        for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[i + k] -= f * b.c[i];
        rem.trim();
    }
    quo.trim();
    return {quo, rem};
}

inline UniPoly derivative(const UniPoly& a) {
    UniPoly r;
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(a.c[i] * Rat(i));
    r.trim();
    return r;
}

// monic gcd
inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * (Rat(1) / a.lc());
    return a;
}

// product of the distinct irreducible factors
inline UniPoly squarefree_part(const UniPoly& a) {
    if (a.degree() <= 0) return a;
    UniPoly g = gcd(a, derivative(a));
    return divmod(a, g).first;
}

namespace detail {

// Bareiss fraction-free determinant of an integer matrix (destructive).
inline Int bareiss_det(std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return n == 0 ? Int(1) : sign * m[n - 1][n - 1];
}

} // namespace detail

// Resultant, normalized as lc(g)^deg(f) * prod f(s) over the roots s of
// g: zero iff f and g share a root in an algebraic closure (for nonzero
// inputs of positive degree). Computed as a Sylvester determinant by
// fraction-free elimination on an integer scaling.
inline Rat resultant(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero() && g.is_zero())
        throw std::domain_error("resultant: both polynomials zero");
    if (f.is_zero() || g.is_zero()) return 0;
    const int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        Rat r = 1;
        for (int i = 0; i < n; ++i) r *= f.c[0];
        return r;
    }
    if (n == 0) {
        Rat r = 1;
        for (int i = 0; i < m; ++i) r *= g.c[0];
        return r;
    }
    // scale to integer coefficients: F = df*f, G = dg*g
    Int df = 1, dg = 1;
    for (const Rat& x : f.c) df = lcm(df, x.get_den());
    for (const Rat& x : g.c) dg = lcm(dg, x.get_den());
    std::vector<Int> F(m + 1), G(n + 1);
    for (int i = 0; i <= m; ++i) F[i] = Int(f.c[i] * df);
    for (int i = 0; i <= n; ++i) G[i] = Int(g.c[i] * dg);

    const std::size_t sz = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Int>> syl(sz, std::vector<Int>(sz, Int(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) syl[r][r + i] = F[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl[n + r][r + i] = G[n - i];
    Int det = detail::bareiss_det(syl);
    if ((m & 1) && (n & 1)) det = -det; // swap convention: (-1)^(m n)

    // Res(f,g) = Res(F,G) / (df^n * dg^m)
    Rat scale = 1;
    for (int i = 0; i < n; ++i) scale *= df;
    for (int i = 0; i < m; ++i) scale *= dg;
    return Rat(det) / scale;
}

} // namespace qlg
