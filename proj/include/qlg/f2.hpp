#pragma once
// The symplectic space (F_2^6, <,>), its 64 quadratic forms, the Arf
// invariant, and 6x6 symplectic matrices over F_2.
//
// Conventions:
//   - vectors are 6-bit masks; bits 0..2 = e1,e2,e3 and bits 3..5 = f1,f2,f3
//   - Gram matrix [[0,I3],[I3,0]]: <e_i,f_j> = delta_ij, all other pairs 0
//   - matrices act on column vectors: (M x)_i = parity(row_i(M) & x)
//   - a matrix is encoded in 36 bits, row i occupying bits [6i, 6i+6)

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qlg {

using F2Vec = std::uint8_t; // 6 bits used
inline constexpr int kDim = 6;
inline constexpr int kVecCount = 64;
inline constexpr F2Vec kVecMask = 0x3f;

inline int parity_u64(std::uint64_t x) { return __builtin_parityll(x); }

// <x,y> with respect to the Gram matrix above.
inline int pairing(F2Vec x, F2Vec y) {
    return parity_u64(((x & 7u) & (y >> 3)) ^ ((y & 7u) & (x >> 3)));
}

// A quadratic form Q with polar form <,>, stored as its six basis values.
// All other values follow from Q(x+y) = Q(x) + Q(y) + <x,y>.
struct QuadForm {
    std::uint8_t basis_vals = 0; // bit i = Q(basis vector i)

    // Expand x over the basis: the cross terms <b_i,b_j> contribute only
    // for the pairs (e_i, f_i).
    int eval(F2Vec x) const {
        return parity_u64(basis_vals & x) ^ parity_u64((x & 7u) & (x >> 3));
    }
    // Arf(Q) = sum_i Q(e_i) Q(f_i)
    int arf() const { return parity_u64((basis_vals & 7u) & (basis_vals >> 3)); }

    // 64-bit value table, bit x = Q(x)
    std::uint64_t value_table() const {
        std::uint64_t t = 0;
        for (F2Vec x = 0; x < kVecCount; ++x)
            t |= static_cast<std::uint64_t>(eval(x)) << x;
        return t;
    }

    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
};

// The 64 forms split by Arf invariant: |Omega^+| = 36, |Omega^-| = 28.
struct FormSet {
    std::vector<QuadForm> omega_plus;
    std::vector<QuadForm> omega_minus;
};

inline FormSet all_forms() {
    FormSet fs;
    for (int bv = 0; bv < kVecCount; ++bv) {
        QuadForm q{static_cast<std::uint8_t>(bv)};
        (q.arf() == 0 ? fs.omega_plus : fs.omega_minus).push_back(q);
    }
    return fs;
}

// 6x6 matrix over F_2, bit-packed row-major.
struct SpMat {
    std::uint64_t bits = 0;

    static SpMat identity() {
        SpMat m;
        for (int i = 0; i < kDim; ++i) m.set_row(i, F2Vec(1u << i));
        return m;
    }

    F2Vec row(int i) const { return F2Vec((bits >> (6 * i)) & kVecMask); }
    void set_row(int i, F2Vec r) {
        bits = (bits & ~(std::uint64_t(kVecMask) << (6 * i))) |
               (std::uint64_t(r & kVecMask) << (6 * i));
    }
    int get(int i, int j) const { return (row(i) >> j) & 1; }

    F2Vec apply(F2Vec x) const {
        F2Vec y = 0;
        for (int i = 0; i < kDim; ++i)
            y |= F2Vec(parity_u64(row(i) & x) << i);
        return y;
    }

    // (A*B)(x) = A(B(x)); row_i(AB) = xor over j with A[i][j]=1 of row_j(B)
    SpMat operator*(const SpMat& b) const {
        SpMat c;
        for (int i = 0; i < kDim; ++i) {
            F2Vec a = row(i), acc = 0;
            while (a) {
                int j = __builtin_ctz(a);
                a &= F2Vec(a - 1);
                acc ^= b.row(j);
            }
            c.set_row(i, acc);
        }
        return c;
    }

    SpMat inverse() const {
        // Gauss-Jordan on [M | I]
        std::array<F2Vec, kDim> m{}, inv{};
        for (int i = 0; i < kDim; ++i) {
            m[i] = row(i);
            inv[i] = F2Vec(1u << i);
        }
        for (int col = 0; col < kDim; ++col) {
            int piv = -1;
            for (int r = col; r < kDim; ++r)
                if ((m[r] >> col) & 1) { piv = r; break; }
            if (piv < 0) throw std::domain_error("SpMat::inverse: singular matrix");
            std::swap(m[col], m[piv]);
            std::swap(inv[col], inv[piv]);
            for (int r = 0; r < kDim; ++r)
                if (r != col && ((m[r] >> col) & 1)) {
                    m[r] ^= m[col];
                    inv[r] ^= inv[col];
                }
        }
        SpMat out;
        for (int i = 0; i < kDim; ++i) out.set_row(i, inv[i]);
        return out;
    }

    bool is_symplectic() const {
        for (int i = 0; i < kDim; ++i)
            for (int j = i + 1; j < kDim; ++j)
                if (pairing(apply(F2Vec(1u << i)), apply(F2Vec(1u << j))) !=
                    pairing(F2Vec(1u << i), F2Vec(1u << j)))
                    return false;
        return true;
    }

    std::uint64_t encode() const { return bits; }

    bool operator==(const SpMat&) const = default;
    auto operator<=>(const SpMat&) const = default;
};

// Symplectic transvection t_v: x -> x + <x,v> v  (an involution, v != 0).
inline SpMat transvection(F2Vec v) {
    if ((v & kVecMask) == 0) throw std::domain_error("transvection: v = 0");
    SpMat m;
    // column j of t_v is b_j + <b_j,v> v; assemble rows from columns
    for (int i = 0; i < kDim; ++i) {
        F2Vec r = 0;
        for (int j = 0; j < kDim; ++j) {
            int entry = (i == j) ? 1 : 0;
            entry ^= pairing(F2Vec(1u << j), v) & ((v >> i) & 1);
            r |= F2Vec(entry << j);
        }
        m.set_row(i, r);
    }
    return m;
}

inline std::vector<SpMat> all_transvections() {
    std::vector<SpMat> t;
    t.reserve(kVecCount - 1);
    for (F2Vec v = 1; v < kVecCount; ++v) t.push_back(transvection(v));
    return t;
}

// (g.Q)(x) = Q(g^{-1} x). Left action; preserves the polar form and Arf.
inline QuadForm act(const SpMat& g, const QuadForm& q) {
    SpMat gi = g.inverse();
    std::uint8_t bv = 0;
    for (int i = 0; i < kDim; ++i)
        bv |= std::uint8_t(q.eval(gi.apply(F2Vec(1u << i))) << i);
    return QuadForm{bv};
}

// g fixes Q iff Q o g = Q, i.e. Q(g b_i) = Q(b_i) on the basis.
// (Equivalent to act(g,Q) == Q and needs no inversion.)
inline bool fixes_form(const SpMat& g, const QuadForm& q) {
    for (int i = 0; i < kDim; ++i)
        if (q.eval(g.apply(F2Vec(1u << i))) != ((q.basis_vals >> i) & 1))
            return false;
    return true;
}

enum class Parity { kEven, kOdd }; // Omega^+ / Omega^-

inline std::vector<QuadForm> fixed_forms(const SpMat& g, Parity parity) {
    std::vector<QuadForm> out;
    int want = (parity == Parity::kEven) ? 0 : 1;
    for (int bv = 0; bv < kVecCount; ++bv) {
        QuadForm q{static_cast<std::uint8_t>(bv)};
        if (q.arf() == want && fixes_form(g, q)) out.push_back(q);
    }
    return out;
}

} // namespace qlg
