#pragma once
// Exact smoothness test for plane projective curves over Q.
//
// f is smooth iff the three partials have no common projective zero over
// an algebraic closure (char 0; Euler's identity puts such a zero on the
// curve). Decision procedure, all arithmetic exact:
//
//   1. shear coordinates so the X^deg coefficient is nonzero; then
//      p = f_X has constant leading X-coefficient and V(p) misses [1:0:0]
//   2. degenerate partials (identically zero, or sharing a factor with p)
//      force a common zero by Bezout in P^2: singular
//   3. otherwise candidate directions [y:z] are roots of
//      H = gcd(Res_X(p,q), Res_X(p,r)), two binary forms
//   4. each candidate root is checked by a gcd of the three specialized
//      partials over Q[y]/(mu), mu squarefree, with dynamic evaluation
//      (split the modulus at zero divisors); a nonconstant gcd on any
//      branch exhibits a common root, i.e. a singular point
//
// The direction [1:0] and the point [1:0:0] are handled directly.

#include <array>
#include <vector>

#include "qlg/binform.hpp"
#include "qlg/ternform.hpp"
#include "qlg/unipoly.hpp"

namespace qlg {
namespace smooth_detail {

// gcd of two nonzero binary forms in (Y,Z): Z^min(ord_Z) times the
// homogenization of the gcd of the dehomogenizations at Z=1
inline BinForm binform_gcd(const BinForm& a, const BinForm& b) {
    int za = a.ord_t(), zb = b.ord_t();
    UniPoly g = gcd(a.dehom_s(), b.dehom_s());
    int zmin = std::min(za, zb);
    int d = g.degree() + zmin;
    BinForm out(d);
    for (int i = 0; i <= g.degree(); ++i) out.c[d - i] = g.c[i];
    return out;
}

// determinant of a small matrix of binary forms by Laplace expansion on
// the first column; all nonzero permutation terms are homogeneous of one
// degree, so mismatches throw in BinForm::operator+
inline BinForm formdet(const std::vector<std::vector<BinForm>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    BinForm acc(0); // zero; operator+ tolerates zero-degree placeholders
    for (std::size_t r = 0; r < n; ++r) {
        if (m[r][0].is_zero()) continue;
        std::vector<std::vector<BinForm>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            minor.emplace_back(m[i].begin() + 1, m[i].end());
        }
        BinForm term = m[r][0] * formdet(minor);
        acc = (r % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Res_X of two ternary forms given as X-coefficient lists (entry i = the
// binary form multiplying X^i, of degree totaldeg - i). Uses the formal
// X-degrees = list sizes - 1; sound here because the caller guarantees
// the leading coefficient of p is a nonzero constant.
inline BinForm resultant_x(const std::vector<BinForm>& p,
                           const std::vector<BinForm>& q) {
    const int dp = static_cast<int>(p.size()) - 1;
    const int dq = static_cast<int>(q.size()) - 1;
    if (dq == 0) { // X-free q: Res = q^dp
        BinForm r(0, {Rat(1)});
        for (int i = 0; i < dp; ++i) r = r * q[0];
        return r;
    }
    const std::size_t n = static_cast<std::size_t>(dp + dq);
    std::vector<std::vector<BinForm>> syl(n, std::vector<BinForm>(n, BinForm(0)));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i) syl[r][r + dp - i] = p[i];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i) syl[dq + r][r + dq - i] = q[i];
    return formdet(syl);
}

// ---- dynamic evaluation: gcd over Q[y]/(mu) with modulus splitting ----

using ModPoly = std::vector<UniPoly>; // X-coefficients, reduced mod mu

inline void mtrim(ModPoly& p, const UniPoly& mu) {
    for (UniPoly& c : p) c = divmod(c, mu).second;
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// extended Euclid: inverse of a mod mu, or a proper monic divisor of mu
struct InvertOutcome {
    bool invertible = false;
    UniPoly value;
};

inline InvertOutcome try_invert(const UniPoly& a, const UniPoly& mu) {
    UniPoly r0 = mu, r1 = a, s0, s1 = UniPoly::constant(1);
    while (!r1.is_zero()) {
        auto [quo, rem] = divmod(r0, r1);
        r0 = r1;
        r1 = rem;
        UniPoly s2 = s0 - quo * s1;
        s0 = s1;
        s1 = s2;
    }
    InvertOutcome out;
    if (r0.degree() == 0) {
        out.invertible = true;
        out.value = s0 * (Rat(1) / r0.c[0]);
    } else {
        out.value = r0 * (Rat(1) / r0.lc());
    }
    return out;
}

// Does some root of mu admit a common X-root of all three polynomials?
// A branch where all three reduce to zero counts (any X works there).
inline bool d5_common_root(const std::array<ModPoly, 3>& polys_in, UniPoly mu) {
    if (mu.degree() <= 0) return false; // no roots
    std::array<ModPoly, 3> polys = polys_in;
    for (ModPoly& p : polys) mtrim(p, mu);

    auto split_and_recurse = [&](const UniPoly& d) {
        UniPoly other = divmod(mu, d).first;
        return d5_common_root(polys, d) || d5_common_root(polys, other);
    };

    ModPoly g;
    bool have_g = false;
    for (int which = 0; which < 3; ++which) {
        ModPoly b = polys[which];
        mtrim(b, mu);
        if (!have_g) {
            g = std::move(b);
            have_g = true;
        } else {
            ModPoly a = std::move(g);
            while (!b.empty()) {
                InvertOutcome inv = try_invert(b.back(), mu);
                if (!inv.invertible) return split_and_recurse(inv.value);
                for (UniPoly& cb : b) cb = divmod(cb * inv.value, mu).second;
                while (a.size() >= b.size()) {
                    std::size_t k = a.size() - b.size();
                    UniPoly top = a.back();
                    for (std::size_t i = 0; i < b.size(); ++i)
                        a[i + k] = divmod(a[i + k] - top * b[i], mu).second;
                    mtrim(a, mu);
                    if (a.empty()) break;
                }
                std::swap(a, b);
            }
            g = std::move(a);
        }
        if (g.size() == 1) {
            // constant so far: a unit settles every branch at once
            InvertOutcome inv = try_invert(g[0], mu);
            if (!inv.invertible) return split_and_recurse(inv.value);
            return false;
        }
    }
    return g.empty() || g.size() >= 2;
}

} // namespace smooth_detail

// Substitute X -> X, Y -> Y + lam X, Z -> Z + mu X; the X^deg coefficient
// of the result is f(1, lam, mu). Singularity is a linear invariant.
inline TernForm shear_x(const TernForm& f, long lam, long mu) {
    TernForm out(f.deg);
    auto binom_row = [](int n, long t) {
        // row[s] = C(n,s) t^(n-s), the var^s X^(n-s) coefficient
        std::vector<Rat> row(n + 1);
        for (int s = 0; s <= n; ++s) {
            Rat c = 1;
            for (int i = 0; i < s; ++i) c = c * Rat(n - i) / Rat(i + 1);
            Rat tp = 1;
            for (int i = 0; i < n - s; ++i) tp *= t;
            row[s] = c * tp;
        }
        return row;
    };
    for (const auto& [m, v] : f.terms) {
        std::vector<Rat> yrow = binom_row(m[1], lam);
        std::vector<Rat> zrow = binom_row(m[2], mu);
        for (int sy = 0; sy <= m[1]; ++sy)
            for (int sz = 0; sz <= m[2]; ++sz)
                out.add_term({m[0] + (m[1] - sy) + (m[2] - sz), sy, sz},
                             v * yrow[sy] * zrow[sz]);
    }
    return out;
}

// True iff the curve f = 0 has no singular point over any extension of Q.
inline bool is_smooth(const TernForm& f0) {
    using namespace smooth_detail;
    if (f0.is_zero()) throw std::invalid_argument("is_smooth: zero form");
    if (f0.deg < 2) return true;

    // f(1,l,m) is nonzero of degree <= deg in each variable, so some point
    // of a (deg+1)^2 grid is a witness
    TernForm f(0);
    bool sheared = false;
    for (long l = 0; l <= f0.deg && !sheared; ++l)
        for (long m = 0; m <= f0.deg && !sheared; ++m)
            if (f0.eval(1, Rat(l), Rat(m)) != 0) {
                f = shear_x(f0, l, m);
                sheared = true;
            }
    if (!sheared) throw std::logic_error("is_smooth: no shear witness");

    TernForm p = partial(f, 0), q = partial(f, 1), r = partial(f, 2);
    if (q.is_zero() || r.is_zero()) {
        // two ternary forms of positive degree always meet in P^2; if both
        // vanish, V(p) itself is nonempty
        return false;
    }

    // X-coefficient lists: entry i = binary form in (Y,Z) of degree deg-i
    auto xcoeffs = [](const TernForm& t) {
        int maxx = 0;
        for (const auto& [m, v] : t.terms) maxx = std::max(maxx, m[0]);
        std::vector<BinForm> out;
        out.reserve(maxx + 1);
        for (int i = 0; i <= maxx; ++i) out.emplace_back(t.deg - i);
        for (const auto& [m, v] : t.terms) out[m[0]].c[m[2]] += v;
        return out;
    };
    std::vector<BinForm> pc = xcoeffs(p), qc = xcoeffs(q), rc = xcoeffs(r);

    BinForm r1 = resultant_x(pc, qc);
    BinForm r2 = resultant_x(pc, rc);
    if (r1.is_zero() || r2.is_zero()) {
        // p shares a positive-degree factor with q or r; that common curve
        // meets the third partial's zero set (Bezout)
        return false;
    }
    BinForm h = binform_gcd(r1, r2);

    // direction [Y:Z] = [1:0], a candidate iff Z | H
    if (h.ord_t() > 0) {
        auto at10 = [](const std::vector<BinForm>& cs) {
            UniPoly u;
            u.c.resize(cs.size());
            for (std::size_t i = 0; i < cs.size(); ++i) u.c[i] = cs[i].c[0];
            u.trim();
            return u;
        };
        UniPoly pu = at10(pc), qu = at10(qc), ru = at10(rc);
        if (qu.is_zero() && ru.is_zero()) return false; // pu has roots
        UniPoly g = pu;
        if (!qu.is_zero()) g = gcd(g, qu);
        if (!ru.is_zero()) g = gcd(g, ru);
        if (g.degree() >= 1) return false;
    }

    // directions with Z != 0: roots of H(y,1)
    UniPoly hy = h.dehom_s();
    if (hy.degree() >= 1) {
        UniPoly mu = squarefree_part(hy);
        mu = mu * (Rat(1) / mu.lc());
        auto specialize = [](const std::vector<BinForm>& cs) {
            smooth_detail::ModPoly mp;
            mp.reserve(cs.size());
            for (const BinForm& bf : cs) mp.push_back(bf.dehom_s());
            return mp;
        };
        std::array<smooth_detail::ModPoly, 3> polys{specialize(pc),
                                                    specialize(qc),
                                                    specialize(rc)};
        if (smooth_detail::d5_common_root(polys, mu)) return false;
    }

    // the only point left unexamined is [1:0:0], excluded because p's
    // leading X-coefficient is a nonzero constant
    return true;
}

} // namespace qlg
