#pragma once
// Homogeneous ternary forms over Q in (X,Y,Z), stored sparsely with the
// canonical graded-lex order (X > Y > Z) used everywhere for printing.

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlg/rational.hpp"

namespace qlg {

using Mono3 = std::array<int, 3>; // exponents of (X, Y, Z)

// graded lex, X > Y > Z: higher total degree first, then lex descending
struct GrlexGreater {
    bool operator()(const Mono3& a, const Mono3& b) const {
        int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
        if (da != db) return da > db;
        return a > b;
    }
};

struct TernForm {
    int deg = 0;
    std::map<Mono3, Rat, GrlexGreater> terms; // nonzero coefficients only

    TernForm() = default;
    explicit TernForm(int d) : deg(d) {}

    bool is_zero() const { return terms.empty(); }

    Rat coeff(int i, int j, int k) const {
        auto it = terms.find({i, j, k});
        return it == terms.end() ? Rat(0) : it->second;
    }

    void add_term(const Mono3& m, const Rat& v) {
        if (v == 0) return;
        if (m[0] + m[1] + m[2] != deg)
            throw std::invalid_argument("TernForm::add_term: wrong total degree");
        auto [it, fresh] = terms.emplace(m, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0) terms.erase(it);
        }
    }

    Rat eval(const Rat& x, const Rat& y, const Rat& z) const {
        Rat acc = 0;
        for (const auto& [m, v] : terms) {
            Rat t = v;
            for (int i = 0; i < m[0]; ++i) t *= x;
            for (int i = 0; i < m[1]; ++i) t *= y;
            for (int i = 0; i < m[2]; ++i) t *= z;
            acc += t;
        }
        return acc;
    }

    bool operator==(const TernForm&) const = default;
};

inline TernForm operator+(const TernForm& a, const TernForm& b) {
    if (a.deg != b.deg) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        throw std::invalid_argument("TernForm +: degree mismatch");
    }
    TernForm r = a;
    for (const auto& [m, v] : b.terms) r.add_term(m, v);
    return r;
}

inline TernForm operator-(const TernForm& a) {
    TernForm r = a;
    for (auto& [m, v] : r.terms) v = -v;
    return r;
}

inline TernForm operator-(const TernForm& a, const TernForm& b) { return a + (-b); }

inline TernForm operator*(const TernForm& a, const TernForm& b) {
    TernForm r(a.deg + b.deg);
    for (const auto& [ma, va] : a.terms)
        for (const auto& [mb, vb] : b.terms)
            r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, va * vb);
    return r;
}

inline TernForm operator*(const TernForm& a, const Rat& s) {
    TernForm r(a.deg);
    if (s == 0) return r;
    r = a;
    for (auto& [m, v] : r.terms) v *= s;
    return r;
}

inline TernForm partial(const TernForm& f, int var) {
    TernForm r(f.deg - 1);
    for (const auto& [m, v] : f.terms) {
        if (m[var] == 0) continue;
        Mono3 m2 = m;
        m2[var] -= 1;
        r.add_term(m2, v * Rat(m[var]));
    }
    return r;
}

// Scale a nonzero form by the positive rational that makes the
// coefficients coprime integers (the primitive integral representative).
inline TernForm primitive_integral(const TernForm& f) {
    if (f.is_zero()) return f;
    Int den_lcm = 1;
    for (const auto& [m, v] : f.terms) den_lcm = lcm(den_lcm, v.get_den());
    Int num_gcd = 0;
    for (const auto& [m, v] : f.terms) num_gcd = gcd(num_gcd, Int(v * den_lcm));
    TernForm r(f.deg);
    for (const auto& [m, v] : f.terms)
        r.terms.emplace(m, v * den_lcm / Rat(abs(num_gcd)));
    return r;
}

inline std::string format_ternform(const TernForm& f) {
    static const char* names[3] = {"X", "Y", "Z"};
    std::string out;
    for (const auto& [m, v] : f.terms) { // map order = canonical order
        Rat a = v;
        bool neg = a < 0;
        if (neg) a = -a;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono;
        for (int i = 0; i < 3; ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += " ";
            mono += names[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        out += to_string(a);
        if (!mono.empty()) out += " * " + mono;
    }
    if (out.empty()) out = "0";
    return out;
}

// Parse the canonical text format back (used for golden files and JSON).
// Accepts: term ('+'|'-' term)*, term = coeff ['*' var('^'exp)?...].
inline TernForm parse_ternform(const std::string& text, int expected_deg) {
    TernForm f(expected_deg);
    std::istringstream in(text);
    std::string tok;
    int sign = 1;
    bool have_coeff = false;
    Rat coeff;
    Mono3 mono{0, 0, 0};
    auto flush = [&]() {
        if (!have_coeff) return;
        f.add_term(mono, coeff * sign);
        have_coeff = false;
        sign = 1;
        mono = {0, 0, 0};
    };
    while (in >> tok) {
        if (tok == "+") {
            flush();
            sign = 1;
        } else if (tok == "-") {
            flush();
            sign = -1;
        } else if (tok == "*") {
            continue;
        } else if (tok[0] == 'X' || tok[0] == 'Y' || tok[0] == 'Z') {
            int var = tok[0] == 'X' ? 0 : tok[0] == 'Y' ? 1 : 2;
            int exp = 1;
            if (tok.size() > 1) {
                if (tok[1] != '^')
                    throw std::invalid_argument("parse_ternform: bad monomial " + tok);
                exp = std::stoi(tok.substr(2));
            }
            mono[var] += exp;
        } else {
            // a coefficient, possibly with a leading sign glued on
            std::string s = tok;
            if (s[0] == '-') {
                sign *= -1;
                s = s.substr(1);
            }
            coeff = parse_rat(s);
            have_coeff = true;
        }
    }
    flush();
    return f;
}

} // namespace qlg
