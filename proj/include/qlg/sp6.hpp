#pragma once
// Enumeration of Sp_6(F_2) (order 1,451,520) by closure from the 63
// symplectic transvections, plus orbit and stabilizer computations.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qlg/f2.hpp"

namespace qlg {

// Insert-only open-addressing set for 36-bit matrix encodings. The size
// hint only pre-sizes the table; it grows at high load, so callers may
// underestimate freely.
class EncodingSet {
  public:
    explicit EncodingSet(std::size_t expected) {
        std::size_t cap = 64;
        while (cap < expected * 3) cap <<= 1;
        slots_.assign(cap, kEmpty);
        mask_ = cap - 1;
    }

    // returns true if newly inserted
    bool insert(std::uint64_t key) {
        if (size_ * 2 >= slots_.size()) grow();
        std::size_t i = hash(key) & mask_;
        while (true) {
            std::uint64_t s = slots_[i];
            if (s == kEmpty) {
                slots_[i] = key;
                ++size_;
                return true;
            }
            if (s == key) return false;
            i = (i + 1) & mask_;
        }
    }

    bool contains(std::uint64_t key) const {
        std::size_t i = hash(key) & mask_;
        while (true) {
            std::uint64_t s = slots_[i];
            if (s == kEmpty) return false;
            if (s == key) return true;
            i = (i + 1) & mask_;
        }
    }

    std::size_t size() const { return size_; }

  private:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t(0);
    static std::uint64_t hash(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    void grow() {
        std::vector<std::uint64_t> old = std::move(slots_);
        slots_.assign(old.size() * 2, kEmpty);
        mask_ = slots_.size() - 1;
        for (std::uint64_t key : old) {
            if (key == kEmpty) continue;
            std::size_t i = hash(key) & mask_;
            while (slots_[i] != kEmpty) i = (i + 1) & mask_;
            slots_[i] = key;
        }
    }

    std::vector<std::uint64_t> slots_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

inline constexpr std::uint64_t kSp6Order = 1451520;

struct GroupTable {
    std::vector<SpMat> elements; // sorted by encoding
    std::vector<SpMat> generators;

    bool contains(const SpMat& g) const {
        return std::binary_search(elements.begin(), elements.end(), g);
    }
    std::size_t size() const { return elements.size(); }
};

// Breadth-first closure of a generator list; returns elements sorted by
// encoding regardless of traversal order.
inline std::vector<SpMat> closure(const std::vector<SpMat>& gens,
                                  std::size_t expected_hint = 1024) {
    EncodingSet seen(std::max<std::size_t>(expected_hint, 16));
    std::vector<SpMat> out;
    out.reserve(expected_hint);
    SpMat id = SpMat::identity();
    seen.insert(id.encode());
    out.push_back(id);
    std::size_t head = 0;
    while (head < out.size()) {
        SpMat g = out[head++];
        for (const SpMat& t : gens) {
            SpMat prod = g * t;
            if (seen.insert(prod.encode())) out.push_back(prod);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The full group, generated by all transvections.
inline GroupTable generate_sp6() {
    GroupTable table;
    table.generators = all_transvections();
    table.elements = closure(table.generators, kSp6Order);
    if (table.elements.size() != kSp6Order)
        throw std::logic_error("generate_sp6: wrong group order");
    return table;
}

// Orbit of a form under a generator list (closure; equals the orbit under
// the generated subgroup).
inline std::vector<QuadForm> form_orbit(const std::vector<SpMat>& gens,
                                        QuadForm start) {
    std::vector<bool> seen(kVecCount, false);
    std::vector<QuadForm> out{start};
    seen[start.basis_vals] = true;
    for (std::size_t head = 0; head < out.size(); ++head) {
        QuadForm q = out[head];
        for (const SpMat& g : gens) {
            QuadForm r = act(g, q);
            if (!seen[r.basis_vals]) {
                seen[r.basis_vals] = true;
                out.push_back(r);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<SpMat> stabilizer_of_form(const GroupTable& table,
                                             const QuadForm& q) {
    std::vector<SpMat> out;
    for (const SpMat& g : table.elements)
        if (fixes_form(g, q)) out.push_back(g);
    return out;
}

inline std::vector<SpMat> stabilizer_of_vector(const GroupTable& table,
                                               F2Vec v) {
    if ((v & kVecMask) == 0)
        throw std::domain_error("stabilizer_of_vector: zero vector");
    std::vector<SpMat> out;
    for (const SpMat& g : table.elements)
        if (g.apply(v) == (v & kVecMask)) out.push_back(g);
    return out;
}

} // namespace qlg
