#pragma once
// Arithmetic of the parameter search over Q: Kronecker symbols,
// ramification of quadratic fields, validation of the five-parameter
// tuples, the deterministic search, and decomposition groups of the
// multiquadratic extension at every place as subgroups of (F_2)^5.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qlg/errors.hpp"
#include "qlg/rational.hpp"

namespace qlg {

// Kronecker symbol (a|n), full generality (n any nonzero integer).
inline int kronecker(Int a, Int n) {
    if (n == 0) throw std::domain_error("kronecker: n = 0");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result; // (a|-1) = sign(a)
    }
    // factor out 2s of n: (a|2) = 0 for even a, +1 if a = +-1 mod 8 else -1
    int n2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++n2;
    }
    if (n2 > 0) {
        if (a % 2 == 0) return 0;
        Int am8 = ((a % 8) + 8) % 8;
        if ((n2 % 2) == 1 && (am8 == 3 || am8 == 5)) result = -result;
    }
    // now n odd positive: Jacobi symbol loop
    a = ((a % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

// primes ramified in Q(sqrt(b)): odd primes dividing b, plus 2 unless
// b = 1 mod 4 (b squarefree)
inline std::set<Int> ramified_primes(const Int& b) {
    if (b == 0 || b == 1)
        throw std::domain_error("ramified_primes: b must be squarefree, != 0, 1");
    std::set<Int> out;
    for (const auto& [p, e] : factor(b)) {
        if (e != 1) throw std::domain_error("ramified_primes: b not squarefree");
        if (p != 2) out.insert(p);
    }
    Int bm4 = ((b % 4) + 4) % 4;
    if (bm4 != 1) out.insert(2);
    return out;
}

using GalVec = std::uint8_t; // 5 bits; bit i = sign flip on sqrt(b_i)

struct ParamTuple {
    std::array<Int, 5> b;
    Rat u;

    // the fixed parameter pattern: a1 = b1 b5, a2 = b2 b4, a3 = b3,
    // a4 = b4, a5 = b5
    std::array<Rat, 5> derived_a() const {
        return {Rat(b[0] * b[4]), Rat(b[1] * b[3]), Rat(b[2]), Rat(b[3]),
                Rat(b[4])};
    }
    static Rat default_u(const std::array<Int, 5>& b) {
        return Rat(-1) / Rat(b[3] * b[4]);
    }
};

struct ValidationReport {
    bool pass = false;
    std::vector<std::string> failures;
    std::array<std::vector<Int>, 5> ramified; // per-parameter ramified primes
};

// PASS iff each Q(sqrt(b_i)) has exactly one ramified prime p_i, the p_i
// are pairwise distinct, and every other b_j is a local square at p_i
// (Kronecker symbol 1 at odd p_i; = 1 mod 8 at p_i = 2). Also checks the
// tuple preconditions and reports every violated condition.
inline ValidationReport validate_params(const std::array<Int, 5>& b) {
    ValidationReport rep;
    for (int i = 0; i < 5; ++i) {
        if (b[i] == 0 || b[i] == 1) {
            rep.failures.push_back("b_" + std::to_string(i + 1) +
                                   " must be squarefree and != 0, 1");
            return rep;
        }
        for (const auto& [p, e] : factor(b[i]))
            if (e > 1) {
                rep.failures.push_back("b_" + std::to_string(i + 1) + " = " +
                                       b[i].get_str() + " is not squarefree");
                return rep;
            }
    }
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (b[i] == b[j])
                rep.failures.push_back("b_" + std::to_string(i + 1) + " = b_" +
                                       std::to_string(j + 1));

    // multiplicative independence: the square classes must span rank 5
    {
        std::vector<Int> support;
        std::vector<std::uint64_t> basis;
        for (int i = 0; i < 5; ++i) {
            std::uint64_t row = (b[i] < 0) ? 1 : 0; // bit 0 = sign
            for (const auto& [p, e] : factor(b[i])) {
                std::size_t idx = 0;
                while (idx < support.size() && support[idx] != p) ++idx;
                if (idx == support.size()) support.push_back(p);
                row |= std::uint64_t(1) << (idx + 1);
            }
            for (std::uint64_t bv : basis) {
                std::uint64_t piv = bv & -bv;
                if (row & piv) row ^= bv;
            }
            if (row) basis.push_back(row);
        }
        if (basis.size() != 5)
            rep.failures.push_back(
                "square classes of b_1..b_5 are multiplicatively dependent (rank " +
                std::to_string(basis.size()) + ")");
    }

    std::array<Int, 5> ram_prime;
    bool ram_ok = true;
    for (int i = 0; i < 5; ++i) {
        std::set<Int> ram;
        try {
            ram = ramified_primes(b[i]);
        } catch (const std::domain_error&) {
            return rep; // already reported above
        }
        rep.ramified[i].assign(ram.begin(), ram.end());
        if (ram.size() != 1) {
            std::string list;
            for (const Int& p : ram) list += (list.empty() ? "" : ", ") + p.get_str();
            rep.failures.push_back("Q(sqrt(" + b[i].get_str() + ")) ramified at " +
                                   std::to_string(ram.size()) + " primes {" + list +
                                   "}; need exactly one");
            ram_ok = false;
        } else {
            ram_prime[i] = *ram.begin();
        }
    }
    if (!ram_ok) {
        rep.pass = rep.failures.empty();
        return rep;
    }
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (ram_prime[i] == ram_prime[j])
                rep.failures.push_back("parameters b_" + std::to_string(i + 1) +
                                       ", b_" + std::to_string(j + 1) +
                                       " share the ramified prime " +
                                       ram_prime[i].get_str());

    for (int i = 0; i < 5; ++i) {
        const Int& p = ram_prime[i];
        for (int j = 0; j < 5; ++j) {
            if (j == i) continue;
            if (p == 2) {
                Int m8 = ((b[j] % 8) + 8) % 8;
                if (m8 != 1)
                    rep.failures.push_back(
                        "at place 2: b_" + std::to_string(j + 1) + " = " +
                        b[j].get_str() +
                        " = " + m8.get_str() +
                        " mod 8, not a 2-adic square (need 1 mod 8)");
            } else {
                if (kronecker(b[j], p) != 1)
                    rep.failures.push_back("at place " + p.get_str() + ": b_" +
                                           std::to_string(j + 1) + " = " +
                                           b[j].get_str() +
                                           " is not a square mod " + p.get_str());
            }
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

// Deterministic search for (-1, q2, q3, q4, q5): primes = 1 mod 8 below the
// bound, pairwise Kronecker symbol 1. The seed shuffles the candidate
// order; the first 4-set found in that order wins, returned sorted.
// Fisher-Yates with an explicit generator: reproducible across toolchains
// (std::shuffle is implementation-defined).
inline ParamTuple search_params(std::int64_t bound, std::uint64_t seed) {
    if (bound < 17)
        throw PipelineError(FailureKind::kSearchExhausted,
                            "no primes = 1 mod 8 below " + std::to_string(bound));
    std::vector<std::int64_t> candidates;
    for (std::int64_t q = 17; q <= bound; q += 8)
        if (is_prime_u64(static_cast<std::uint64_t>(q))) candidates.push_back(q);
    std::mt19937_64 rng(seed);
    for (std::size_t i = candidates.size(); i > 1; --i)
        std::swap(candidates[i - 1], candidates[rng() % i]);

    const std::size_t n = candidates.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (kronecker(candidates[i], candidates[j]) != 1) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (kronecker(candidates[i], candidates[k]) != 1 ||
                    kronecker(candidates[j], candidates[k]) != 1)
                    continue;
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (kronecker(candidates[i], candidates[l]) != 1 ||
                        kronecker(candidates[j], candidates[l]) != 1 ||
                        kronecker(candidates[k], candidates[l]) != 1)
                        continue;
                    std::array<Int, 5> b{Int(-1), Int(candidates[i]),
                                         Int(candidates[j]), Int(candidates[k]),
                                         Int(candidates[l])};
                    std::sort(b.begin() + 1, b.end());
                    ParamTuple t;
                    t.b = b;
                    t.u = ParamTuple::default_u(b);
                    ValidationReport rep = validate_params(b);
                    if (!rep.pass) continue; // cannot happen by construction
                    return t;
                }
            }
        }
    throw PipelineError(FailureKind::kSearchExhausted,
                        "no valid tuple of primes = 1 mod 8 below " +
                            std::to_string(bound));
}

// a place of Q
struct Place {
    bool infinite = false;
    Int p = 0;

    static Place at(const Int& prime) { return {false, prime}; }
    static Place infinity() { return {true, 0}; }
    std::string str() const { return infinite ? "infinity" : p.get_str(); }
};

struct PlaceCert {
    Place place;
    std::vector<GalVec> inertia_gens;  // spanning set of the inertia image
    GalVec frobenius = 0;              // generator of the unramified quotient
    std::vector<GalVec> decomposition; // the whole decomposition group
    bool cyclic = false;               // order <= 2 in an exponent-2 group
};

namespace detail {

inline std::vector<GalVec> span_of(std::vector<GalVec> gens) {
    std::vector<GalVec> out{0};
    for (GalVec g : gens)
        for (std::size_t i = 0, n = out.size(); i < n; ++i) {
            GalVec v = out[i] ^ g;
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Decomposition group at a place, as the span of the local square-class
// character rows. At an odd p the class group of Q_p^x mod squares has
// basis (nonresidue unit, p); at 2 it is (-1, 2, 5); the unramified class
// ((5) at p = 2, the unit nonresidue at odd p) contributes the Frobenius
// row, the others the inertia rows.
inline PlaceCert decomposition_generator(const std::array<Int, 5>& b,
                                         const Place& place) {
    PlaceCert cert;
    cert.place = place;
    if (place.infinite) {
        GalVec s = 0;
        for (int i = 0; i < 5; ++i)
            if (b[i] < 0) s |= GalVec(1u << i);
        if (s) cert.inertia_gens.push_back(s);
        cert.frobenius = 0;
        cert.decomposition = detail::span_of({s});
        cert.cyclic = true; // order <= 2 always
        return cert;
    }
    const Int& p = place.p;
    if (p < 2) throw std::domain_error("decomposition_generator: bad place");
    if (p == 2) {
        GalVec row_m1 = 0, row_2 = 0, row_5 = 0;
        for (int i = 0; i < 5; ++i) {
            Int v = b[i];
            int e2 = 0;
            while (v % 2 == 0) {
                v /= 2;
                ++e2;
            }
            Int m8 = ((v % 8) + 8) % 8;
            // unit class in Z_2^x/(Z_2^x)^2: 1, -5(=3), 5, -1(=7) mod 8
            if (m8 == 3 || m8 == 7) row_m1 |= GalVec(1u << i);
            if (m8 == 3 || m8 == 5) row_5 |= GalVec(1u << i);
            if (e2 % 2 == 1) row_2 |= GalVec(1u << i);
        }
        if (row_m1) cert.inertia_gens.push_back(row_m1);
        if (row_2 && row_2 != row_m1) cert.inertia_gens.push_back(row_2);
        cert.frobenius = row_5;
        cert.decomposition = detail::span_of({row_m1, row_2, row_5});
        cert.cyclic = cert.decomposition.size() <= 2;
        return cert;
    }
    GalVec row_val = 0, row_unit = 0;
    for (int i = 0; i < 5; ++i) {
        Int v = b[i];
        int ep = 0;
        while (v % p == 0) {
            v /= p;
            ++ep;
        }
        if (ep % 2 == 1) row_val |= GalVec(1u << i);
        if (kronecker(v, p) == -1) row_unit |= GalVec(1u << i);
    }
    if (row_val) cert.inertia_gens.push_back(row_val);
    cert.frobenius = row_unit;
    cert.decomposition = detail::span_of({row_val, row_unit});
    cert.cyclic = cert.decomposition.size() <= 2;
    return cert;
}

// The F_2-span of the square classes of a_1..a_6 equals the span of
// b_1..b_5 (the splitting field of F(1,T^2) is the right multiquadratic).
inline bool splitting_field_check(const std::vector<Rat>& a,
                                  const std::array<Int, 5>& b) {
    std::vector<Int> support;
    auto class_row = [&support](const Rat& x) {
        Int sf = squarefree_part(x);
        std::uint64_t row = (sf < 0) ? 1 : 0;
        for (const auto& [p, e] : factor(sf)) {
            std::size_t idx = 0;
            while (idx < support.size() && support[idx] != p) ++idx;
            if (idx == support.size()) support.push_back(p);
            row |= std::uint64_t(1) << (idx + 1);
        }
        return row;
    };
    std::vector<std::uint64_t> brows, arows;
    for (const Int& bi : b) brows.push_back(class_row(Rat(bi)));
    for (const Rat& ai : a) arows.push_back(class_row(ai));

    auto rank_of = [](std::vector<std::uint64_t> rows) {
        std::vector<std::uint64_t> basis;
        for (std::uint64_t row : rows) {
            std::uint64_t r = row;
            for (std::uint64_t bv : basis) {
                std::uint64_t piv = bv & -bv;
                if (r & piv) r ^= bv;
            }
            if (r) basis.push_back(r);
        }
        return basis.size();
    };
    std::size_t rb = rank_of(brows);
    std::size_t ra = rank_of(arows);
    std::vector<std::uint64_t> joint = brows;
    joint.insert(joint.end(), arows.begin(), arows.end());
    std::size_t rj = rank_of(joint);
    return ra == rb && rj == rb;
}

} // namespace qlg
