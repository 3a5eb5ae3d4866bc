#pragma once
// Exact arithmetic base layer: arbitrary-precision integers/rationals
// (GMP), text io, deterministic 64-bit primality, integer factorization
// (trial division + Pollard-Brent rho), and squarefree parts.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qlg {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& n) { return n.get_str(); }

// canonical text form: "num" or "num/den", den > 0, reduced
inline std::string to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator");
    r.canonicalize();
    return r;
}

// ---- deterministic primality for n < 2^64 ----

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Miller-Rabin with a base set proven complete below 3.3 * 10^24.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Deterministic primality; n must fit in 64 bits.
inline bool is_prime(const Int& n) {
    if (n < 0) return false;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw std::domain_error("is_prime: input exceeds 64 bits");
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return is_prime_u64(v);
}

namespace detail {

inline std::uint64_t pollard_brent_u64(std::uint64_t n, std::uint64_t c0) {
    // Brent's cycle-finding variant of Pollard rho
    if (n % 2 == 0) return 2;
    std::uint64_t y = c0 % n, c = c0 % n, m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                std::uint64_t diff = x > y ? x - y : y - x;
                if (diff == 0) diff = 1;
                q = mulmod_u64(q, diff, n);
            }
            std::uint64_t a = q, b = n;
            while (b) {
                std::uint64_t t = a % b;
                a = b;
                b = t;
            }
            g = a;
            k += lim;
        }
        r <<= 1;
    }
    if (g == n) {
        g = 1;
        while (g == 1) {
            ys = f(ys);
            std::uint64_t diff = x > ys ? x - ys : ys - x;
            if (diff == 0) return n;
            std::uint64_t a = diff, b = n;
            while (b) {
                std::uint64_t t = a % b;
                a = b;
                b = t;
            }
            g = a;
        }
    }
    return g;
}

inline void factor_u64_into(std::uint64_t n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (is_prime_u64(n)) {
        out[Int(static_cast<unsigned long>(n))] += 1;
        return;
    }
    std::uint64_t d = n;
    for (std::uint64_t c = 1; d == n; ++c) d = pollard_brent_u64(n, c);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

} // namespace detail

// Factor |n|. Trial division by small primes, then rho on the 64-bit
// cofactor. Inputs whose hard part exceeds 64 bits are rejected; the
// pipeline only ever factors products of the small search parameters.
inline std::map<Int, int> factor(Int n) {
    std::map<Int, int> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (unsigned long p = 2; p < 100000 && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(p)] += 1;
            n /= p;
        }
    }
    if (n == 1) return out;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64)
        throw std::domain_error("factor: cofactor exceeds 64 bits: " + n.get_str());
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    detail::factor_u64_into(v, out);
    return out;
}

// The representative of r in Q^x / (Q^x)^2: sign times the product of the
// odd-multiplicity primes of numerator*denominator.
inline Int squarefree_part(const Rat& r) {
    if (r == 0) throw std::domain_error("squarefree_part: zero");
    Int n = r.get_num() * r.get_den();
    Int out = (n < 0) ? -1 : 1;
    for (const auto& [p, e] : factor(n))
        if (e % 2 == 1) out *= p;
    return out;
}

inline bool is_square_int(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

inline bool is_square_rat(const Rat& r) {
    return r >= 0 && is_square_int(r.get_num()) && is_square_int(r.get_den());
}

// exact square root of a rational square
inline Rat sqrt_rat(const Rat& r) {
    if (!is_square_rat(r)) throw std::domain_error("sqrt_rat: not a square");
    Int num, den;
    mpz_sqrt(num.get_mpz_t(), r.get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), r.get_den().get_mpz_t());
    return Rat(num) / Rat(den);
}

} // namespace qlg
