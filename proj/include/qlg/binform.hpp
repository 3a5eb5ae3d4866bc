#pragma once
// Homogeneous binary forms over Q in an ordered variable pair (S,T by
// default). Coefficient k multiplies S^(d-k) T^k.

#include <stdexcept>
#include <string>
#include <vector>

#include "qlg/rational.hpp"
#include "qlg/unipoly.hpp"

namespace qlg {

struct BinForm {
    int deg = 0;
    std::vector<Rat> c; // size deg+1; c[k] multiplies S^(deg-k) T^k

    BinForm() : c(1, Rat(0)) {}
    explicit BinForm(int d) : deg(d), c(d + 1, Rat(0)) {}
    BinForm(int d, std::vector<Rat> coeffs) : deg(d), c(std::move(coeffs)) {
        if (static_cast<int>(c.size()) != d + 1)
            throw std::invalid_argument("BinForm: coefficient count != degree+1");
    }

    bool is_zero() const {
        for (const Rat& x : c)
            if (x != 0) return false;
        return true;
    }

    Rat eval(const Rat& s, const Rat& t) const {
        // Horner in t/s would need s != 0; do the straightforward sum
        Rat acc = 0, sp = 1;
        std::vector<Rat> tp(deg + 1);
        tp[0] = 1;
        for (int k = 1; k <= deg; ++k) tp[k] = tp[k - 1] * t;
        for (int k = deg; k >= 0; --k) {
            acc += c[k] * sp * tp[k];
            sp *= s;
        }
        return acc;
    }

    // power of T dividing the form (deg+1 for the zero form)
    int ord_t() const {
        for (int k = 0; k <= deg; ++k)
            if (c[k] != 0) return k;
        return deg + 1;
    }
    // power of S dividing the form
    int ord_s() const {
        for (int k = deg; k >= 0; --k)
            if (c[k] != 0) return deg - k;
        return deg + 1;
    }

    // dehomogenize: p(t) = form(1, t)  (drops nothing; distinct monomials
    // of a fixed-degree form map to distinct powers)
    UniPoly dehom_t() const {
        UniPoly p;
        p.c = c;
        p.trim();
        return p;
    }
    // p(s) = form(s, 1)
    UniPoly dehom_s() const {
        UniPoly p;
        p.c.assign(c.rbegin(), c.rend());
        p.trim();
        return p;
    }

    bool operator==(const BinForm&) const = default;
};

inline BinForm operator+(const BinForm& a, const BinForm& b) {
    if (a.deg != b.deg) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        throw std::invalid_argument("BinForm +: degree mismatch");
    }
    BinForm r(a.deg);
    for (int k = 0; k <= a.deg; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

inline BinForm operator-(const BinForm& a) {
    BinForm r = a;
    for (Rat& x : r.c) x = -x;
    return r;
}

inline BinForm operator-(const BinForm& a, const BinForm& b) { return a + (-b); }

inline BinForm operator*(const BinForm& a, const BinForm& b) {
    BinForm r(a.deg + b.deg);
    for (int i = 0; i <= a.deg; ++i)
        for (int j = 0; j <= b.deg; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

inline BinForm operator*(const BinForm& a, const Rat& s) {
    BinForm r = a;
    for (Rat& x : r.c) x *= s;
    return r;
}

// canonical text: graded-lex with first variable highest, e.g.
// "4096 * X^4 - 16384 * X^3 Y"; exact rational coefficients as num/den
inline std::string format_binform(const BinForm& f, const std::string& var_s,
                                  const std::string& var_t) {
    auto mono = [&](int k) {
        std::string m;
        int es = f.deg - k, et = k;
        if (es > 0) m += var_s + (es > 1 ? "^" + std::to_string(es) : "");
        if (et > 0) {
            if (!m.empty()) m += " ";
            m += var_t + (et > 1 ? "^" + std::to_string(et) : "");
        }
        return m;
    };
    std::string out;
    for (int k = 0; k <= f.deg; ++k) {
        if (f.c[k] == 0) continue;
        Rat a = f.c[k];
        bool neg = a < 0;
        if (neg) a = -a;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string m = mono(k);
        out += to_string(a);
        if (!m.empty()) out += " * " + m;
    }
    if (out.empty()) out = "0";
    return out;
}

} // namespace qlg
