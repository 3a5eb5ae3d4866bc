#pragma once
// Subgroup machinery over Sp_6(F_2): closure from generators, the two
// fixed-point conditions on Omega^+/Omega^-, Sylow-2 construction,
// enumeration of elementary abelian subgroups of order 32, conjugacy
// classification, and the canonical choice of such a subgroup inside the
// stabilizer of a nonzero vector.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "qlg/f2.hpp"
#include "qlg/sp6.hpp"

namespace qlg {

struct Subgroup {
    std::vector<SpMat> elements; // sorted by encoding; contains identity
    std::vector<SpMat> generators;

    std::size_t order() const { return elements.size(); }
    bool contains(const SpMat& g) const {
        return std::binary_search(elements.begin(), elements.end(), g);
    }
    std::vector<std::uint64_t> encoding_key() const {
        std::vector<std::uint64_t> k;
        k.reserve(elements.size());
        for (const SpMat& g : elements) k.push_back(g.encode());
        return k;
    }
};

inline Subgroup subgroup_closure(const std::vector<SpMat>& gens) {
    for (const SpMat& g : gens)
        if (!g.is_symplectic())
            throw std::domain_error("subgroup_closure: generator not symplectic");
    Subgroup s;
    s.generators = gens;
    s.elements = closure(gens);
    return s;
}

inline Subgroup subgroup_from_elements(std::vector<SpMat> elems) {
    std::sort(elems.begin(), elems.end());
    Subgroup s;
    s.elements = std::move(elems);
    // greedy generating set: scan in canonical order, adjoin anything not
    // yet generated
    std::vector<SpMat> gens;
    std::vector<SpMat> cur{SpMat::identity()};
    for (const SpMat& g : s.elements) {
        if (cur.size() == s.elements.size()) break;
        if (std::binary_search(cur.begin(), cur.end(), g)) continue;
        gens.push_back(g);
        cur = closure(gens, s.elements.size());
    }
    s.generators = std::move(gens);
    return s;
}

// Report for the conditions (*)^+ / (*)^- : the subgroup passes for a given
// parity iff no form of that parity is fixed by every element, and every
// element fixes at least one form of that parity.
struct CondReport {
    Parity parity = Parity::kOdd;
    std::vector<QuadForm> common_fixed;
    std::vector<std::pair<std::uint64_t, int>> per_element_fixed_counts;
    bool no_common_fixed = false;
    bool every_element_fixes = false;
    bool pass = false;
    // encoding of a witness element fixing nothing, if any
    std::optional<std::uint64_t> failing_element;
};

inline CondReport check_star(const Subgroup& g, Parity parity) {
    CondReport rep;
    rep.parity = parity;
    int want = (parity == Parity::kEven) ? 0 : 1;
    std::uint64_t common = 0;
    std::vector<QuadForm> forms;
    for (int bv = 0; bv < kVecCount; ++bv) {
        QuadForm q{static_cast<std::uint8_t>(bv)};
        if (q.arf() == want) {
            common |= std::uint64_t(1) << forms.size();
            forms.push_back(q);
        }
    }
    rep.per_element_fixed_counts.reserve(g.elements.size());
    rep.every_element_fixes = true;
    for (const SpMat& m : g.elements) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < forms.size(); ++i)
            if (fixes_form(m, forms[i])) mask |= std::uint64_t(1) << i;
        common &= mask;
        int cnt = __builtin_popcountll(mask);
        rep.per_element_fixed_counts.emplace_back(m.encode(), cnt);
        if (cnt == 0) {
            rep.every_element_fixes = false;
            if (!rep.failing_element) rep.failing_element = m.encode();
        }
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
        if ((common >> i) & 1) rep.common_fixed.push_back(forms[i]);
    rep.no_common_fixed = rep.common_fixed.empty();
    rep.pass = rep.no_common_fixed && rep.every_element_fixes;
    return rep;
}

inline int two_part_exponent(std::size_t n) {
    int e = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++e;
    }
    return e;
}

// g has 2-power order iff g^(2^9) = id (the 2-part of |Sp_6(F_2)| is 2^9).
inline bool is_two_element(SpMat g) {
    for (int i = 0; i < 9; ++i) g = g * g;
    return g == SpMat::identity();
}

// A Sylow 2-subgroup of G, grown by adjoining normalizing 2-elements.
// Each growth step exists because the normalizer of a non-Sylow 2-subgroup
// inside a Sylow subgroup strictly contains it.
inline Subgroup sylow2(const Subgroup& g) {
    const std::size_t target = std::size_t(1) << two_part_exponent(g.order());
    std::vector<bool> two_elt(g.elements.size());
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        two_elt[i] = is_two_element(g.elements[i]);

    std::vector<SpMat> gens;
    Subgroup p = subgroup_closure(gens); // trivial group
    while (p.order() < target) {
        bool grew = false;
        for (std::size_t i = 0; i < g.elements.size() && !grew; ++i) {
            if (!two_elt[i]) continue;
            const SpMat& cand = g.elements[i];
            if (p.contains(cand)) continue;
            SpMat ci = cand.inverse();
            bool normalizes = true;
            for (const SpMat& pg : p.generators)
                if (!p.contains(cand * pg * ci)) {
                    normalizes = false;
                    break;
                }
            if (!normalizes) continue;
            gens.push_back(cand);
            p = subgroup_closure(gens);
            grew = true;
        }
        if (!grew)
            throw std::logic_error("sylow2: no normalizing 2-element found");
    }
    if (p.order() != target)
        throw std::logic_error("sylow2: overshot the 2-part");
    return p;
}

namespace detail {

struct VecKeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint64_t x : v) {
            h ^= x;
            h *= 1099511628211ULL;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

// All subgroups of the 2-group P isomorphic to (F_2)^5, i.e. sets of 32
// pairwise-commuting elements with every non-identity element an
// involution. Grown layer by layer (orders 2,4,...,32) with set-level
// deduplication; deterministic output order (sorted encoding keys).
inline std::vector<Subgroup> enumerate_ea32(const Subgroup& p) {
    std::vector<SpMat> invs;
    for (const SpMat& g : p.elements)
        if (!(g == SpMat::identity()) && (g * g) == SpMat::identity())
            invs.push_back(g);

    using Key = std::vector<std::uint64_t>; // sorted element encodings
    std::unordered_set<Key, detail::VecKeyHash> layer;
    SpMat id = SpMat::identity();
    for (const SpMat& x : invs) {
        Key k{id.encode(), x.encode()};
        std::sort(k.begin(), k.end());
        layer.insert(std::move(k));
    }

    auto decode = [](std::uint64_t e) {
        SpMat m;
        m.bits = e;
        return m;
    };
    for (int sz = 2; sz < 32; sz *= 2) {
        std::unordered_set<Key, detail::VecKeyHash> next;
        for (const Key& key : layer) {
            std::vector<SpMat> elems;
            elems.reserve(key.size());
            for (std::uint64_t e : key) elems.push_back(decode(e));
            for (const SpMat& x : invs) {
                if (std::binary_search(key.begin(), key.end(), x.encode()))
                    continue;
                bool commutes = true;
                for (const SpMat& e : elems)
                    if (!((x * e) == (e * x))) {
                        commutes = false;
                        break;
                    }
                if (!commutes) continue;
                Key bigger;
                bigger.reserve(key.size() * 2);
                bigger = key;
                for (const SpMat& e : elems) bigger.push_back((x * e).encode());
                std::sort(bigger.begin(), bigger.end());
                next.insert(std::move(bigger));
            }
        }
        layer = std::move(next);
        if (layer.empty()) break;
    }

    std::vector<Key> keys(layer.begin(), layer.end());
    std::sort(keys.begin(), keys.end());
    std::vector<Subgroup> out;
    out.reserve(keys.size());
    for (const Key& key : keys) {
        std::vector<SpMat> elems;
        elems.reserve(32);
        for (std::uint64_t e : key) elems.push_back(decode(e));
        Subgroup s;
        s.elements = std::move(elems);
        // five independent generators, greedily in canonical order
        std::vector<SpMat> gens;
        std::vector<SpMat> cur{SpMat::identity()};
        for (const SpMat& g : s.elements) {
            if (cur.size() == s.elements.size()) break;
            if (std::binary_search(cur.begin(), cur.end(), g)) continue;
            gens.push_back(g);
            cur = closure(gens, 32);
        }
        s.generators = std::move(gens);
        out.push_back(std::move(s));
    }
    return out;
}

enum class AmbientLabel { kSp6, kU63, kU36 };

struct EAClass {
    Subgroup representative;           // canonical: minimal key in its orbit
    AmbientLabel ambient_label = AmbientLabel::kSp6;
    std::size_t orbit_size = 0;        // conjugates under the ambient group
    std::size_t normalizer_order = 0;  // |ambient| / orbit_size
};

// Partition the given subgroups into conjugacy classes of the ambient
// group by exhausting each conjugation orbit under the ambient generators.
// The class representative is the lexicographically minimal sorted
// encoding key over the whole orbit.
inline std::vector<EAClass> classify_up_to_conjugacy(
    const std::vector<Subgroup>& subs, const std::vector<SpMat>& ambient_gens,
    std::size_t ambient_order, AmbientLabel label) {
    using Key = std::vector<std::uint64_t>;
    std::unordered_set<Key, detail::VecKeyHash> classified;
    std::vector<EAClass> classes;

    std::vector<std::pair<SpMat, SpMat>> gens_with_inv;
    gens_with_inv.reserve(ambient_gens.size());
    for (const SpMat& g : ambient_gens)
        gens_with_inv.emplace_back(g, g.inverse());

    for (const Subgroup& s : subs) {
        Key start = s.encoding_key();
        if (classified.contains(start)) continue;

        std::unordered_set<Key, detail::VecKeyHash> orbit{start};
        std::vector<Key> queue{start};
        Key best = start;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Key cur = queue[head];
            for (const auto& [g, gi] : gens_with_inv) {
                Key img;
                img.reserve(cur.size());
                for (std::uint64_t e : cur) {
                    SpMat m;
                    m.bits = e;
                    img.push_back((g * m * gi).encode());
                }
                std::sort(img.begin(), img.end());
                if (orbit.insert(img).second) {
                    if (img < best) best = img;
                    queue.push_back(std::move(img));
                }
            }
        }
        for (const Key& k : orbit) classified.insert(k);

        EAClass cls;
        std::vector<SpMat> elems;
        for (std::uint64_t e : best) {
            SpMat m;
            m.bits = e;
            elems.push_back(m);
        }
        cls.representative = subgroup_from_elements(std::move(elems));
        cls.ambient_label = label;
        cls.orbit_size = orbit.size();
        if (ambient_order % orbit.size() != 0)
            throw std::logic_error("classify: orbit size does not divide ambient order");
        cls.normalizer_order = ambient_order / orbit.size();
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(),
              [](const EAClass& a, const EAClass& b) {
                  return a.representative.encoding_key() <
                         b.representative.encoding_key();
              });
    return classes;
}

// The canonical elementary abelian subgroup of order 32 inside the
// stabilizer of e_1: first conjugacy-class representative in canonical
// order, required to pass both fixed-point conditions.
inline Subgroup pick_certified_E(const GroupTable& table) {
    Subgroup u63;
    u63.elements = stabilizer_of_vector(table, F2Vec(1));
    u63 = subgroup_from_elements(std::move(u63.elements));
    Subgroup syl = sylow2(u63);
    std::vector<Subgroup> eas = enumerate_ea32(syl);
    if (eas.empty()) throw std::logic_error("pick_certified_E: no (F_2)^5 found");
    std::vector<EAClass> classes = classify_up_to_conjugacy(
        eas, u63.generators, u63.order(), AmbientLabel::kU63);
    for (const EAClass& cls : classes) {
        const Subgroup& e = cls.representative;
        if (check_star(e, Parity::kOdd).pass && check_star(e, Parity::kEven).pass)
            return e;
    }
    throw std::logic_error("pick_certified_E: no class passes both conditions");
}

// Canonical generator list of an elementary abelian subgroup: the greedy
// independent elements in encoding order (matches Subgroup::generators as
// built by subgroup_from_elements / enumerate_ea32).
inline std::vector<SpMat> canonical_generators(const Subgroup& e) {
    return e.generators;
}

} // namespace qlg
