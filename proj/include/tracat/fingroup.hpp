#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tracat/validation.hpp"

namespace tracat {

/// A finite group in additive notation, given by its Cayley table.
///
/// Elements are dense indices 0..order-1 and 0 is always the neutral
/// element. No commutativity is assumed: `plus(a, b)` is "a + b" in the
/// written order, and `neg(a)` is the two-sided inverse "-a". This is the
/// value category for every natural system in the library.
struct FiniteGroup {
    int order = 0;
    std::vector<int> add;  // row-major: add[a * order + b] = a + b
    std::vector<int> neg;  // neg[a] = -a

    int plus(int a, int b) const { return add[a * order + b]; }
    int minus(int a) const { return neg[a]; }

    /// a + b + c, evaluated left to right.
    int plus3(int a, int b, int c) const { return plus(plus(a, b), c); }

    bool is_abelian() const {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < a; ++b)
                if (plus(a, b) != plus(b, a)) return false;
        return true;
    }

    friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;
};

/// The group with one element.
inline FiniteGroup trivial_group() { return {1, {0}, {0}}; }

/// Z/n with addition mod n.
inline FiniteGroup cyclic_group(int n) {
    FiniteGroup g;
    g.order = n;
    g.add.resize(n * n);
    g.neg.resize(n);
    for (int a = 0; a < n; ++a) {
        g.neg[a] = (n - a) % n;
        for (int b = 0; b < n; ++b) g.add[a * n + b] = (a + b) % n;
    }
    return g;
}

/// A map of element indices; src/dst groups are supplied by context.
struct GroupHom {
    std::vector<int> map;

    int operator()(int x) const { return map[x]; }
    bool defined() const { return !map.empty(); }

    friend bool operator==(const GroupHom&, const GroupHom&) = default;
    friend auto operator<=>(const GroupHom&, const GroupHom&) = default;
};

inline GroupHom identity_hom(const FiniteGroup& g) {
    GroupHom h;
    h.map.resize(g.order);
    for (int i = 0; i < g.order; ++i) h.map[i] = i;
    return h;
}

/// second ∘ first.
inline GroupHom compose_homs(const GroupHom& second, const GroupHom& first) {
    GroupHom h;
    h.map.reserve(first.map.size());
    for (int v : first.map) h.map.push_back(second.map[v]);
    return h;
}

/// Inverse of a bijective hom. Precondition: `h` is a bijection.
inline GroupHom invert_hom(const GroupHom& h, int dst_order) {
    GroupHom inv;
    inv.map.assign(dst_order, -1);
    for (int x = 0; x < static_cast<int>(h.map.size()); ++x) inv.map[h.map[x]] = x;
    return inv;
}

namespace detail {

inline std::string idx_tuple(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

}  // namespace detail

/// Checks every group axiom over the full tables.
/// Dimension problems are reported as structural issues; each violated
/// axiom is reported with a witness tuple.
inline ValidationReport validate_group(const FiniteGroup& g) {
    ValidationReport rep;
    const int n = g.order;
    if (n <= 0) {
        rep.add_structural("dimension", "order must be positive");
        return rep;
    }
    if (static_cast<int>(g.add.size()) != n * n)
        rep.add_structural("dimension", "add table has " + std::to_string(g.add.size()) +
                                            " entries, expected " + std::to_string(n * n));
    if (static_cast<int>(g.neg.size()) != n)
        rep.add_structural("dimension", "neg table has " + std::to_string(g.neg.size()) +
                                            " entries, expected " + std::to_string(n));
    if (!rep.structural_ok()) return rep;
    for (int i = 0; i < n * n; ++i)
        if (g.add[i] < 0 || g.add[i] >= n) {
            rep.add_structural("range", "add entry " + std::to_string(i) + " out of range");
            return rep;
        }
    for (int i = 0; i < n; ++i)
        if (g.neg[i] < 0 || g.neg[i] >= n) {
            rep.add_structural("range", "neg entry " + std::to_string(i) + " out of range");
            return rep;
        }

    for (int a = 0; a < n; ++a) {
        if (g.plus(a, 0) != a) rep.add_axiom("right-unit", detail::idx_tuple({a}));
        if (g.plus(0, a) != a) rep.add_axiom("left-unit", detail::idx_tuple({a}));
        if (g.plus(a, g.neg[a]) != 0 || g.plus(g.neg[a], a) != 0)
            rep.add_axiom("inverse", detail::idx_tuple({a}));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.plus(g.plus(a, b), c) != g.plus(a, g.plus(b, c)))
                    rep.add_axiom("associativity", detail::idx_tuple({a, b, c}));
    return rep;
}

/// Checks that `h` is a homomorphism src -> dst.
inline ValidationReport validate_hom(const FiniteGroup& src, const FiniteGroup& dst,
                                     const GroupHom& h) {
    ValidationReport rep;
    if (static_cast<int>(h.map.size()) != src.order) {
        rep.add_structural("dimension", "map has " + std::to_string(h.map.size()) +
                                            " entries, expected " + std::to_string(src.order));
        return rep;
    }
    for (int v : h.map)
        if (v < 0 || v >= dst.order) {
            rep.add_structural("range", "image out of range");
            return rep;
        }
    if (h.map[0] != 0) rep.add_axiom("hom-zero", "(0)");
    for (int x = 0; x < src.order; ++x)
        for (int y = 0; y < src.order; ++y)
            if (h.map[src.plus(x, y)] != dst.plus(h.map[x], h.map[y]))
                rep.add_axiom("hom-add", detail::idx_tuple({x, y}));
    return rep;
}

/// Conjugation a + t - a; the pattern behind every phi in the theory.
inline int conjugate(const FiniteGroup& g, int a, int t) {
    if (a < 0 || a >= g.order || t < 0 || t >= g.order)
        throw std::out_of_range("conjugate: element index out of range");
    return g.plus(g.plus(a, t), g.neg[a]);
}

namespace detail {

// Backtracking over images in index order; assigning map[x] propagates to
// every sum reachable from already-assigned elements, so contradictions
// surface early and each full assignment is a homomorphism by construction.
inline void extend_isomorphism(const FiniteGroup& g1, const FiniteGroup& g2,
                               std::vector<int>& map, std::vector<int>& used,
                               std::vector<GroupHom>& out) {
    int x = -1;
    for (int i = 0; i < g1.order; ++i)
        if (map[i] < 0) {
            x = i;
            break;
        }
    if (x < 0) {
        out.push_back(GroupHom{map});
        return;
    }
    for (int v = 0; v < g2.order; ++v) {
        if (used[v]) continue;
        // Close the partial map under addition starting from map[x] = v.
        std::vector<std::pair<int, int>> assigned;  // (element, image) trail
        auto assign = [&](int e, int img) -> bool {
            if (map[e] >= 0) return map[e] == img;
            if (used[img]) return false;
            map[e] = img;
            used[img] = 1;
            assigned.push_back({e, img});
            return true;
        };
        bool okay = assign(x, v);
        for (std::size_t k = 0; okay && k < assigned.size(); ++k) {
            int e = assigned[k].first;
            for (int w = 0; okay && w < g1.order; ++w) {
                if (map[w] < 0) continue;
                okay = assign(g1.plus(e, w), g2.plus(map[e], map[w])) &&
                       assign(g1.plus(w, e), g2.plus(map[w], map[e]));
            }
        }
        if (okay) extend_isomorphism(g1, g2, map, used, out);
        for (auto it = assigned.rbegin(); it != assigned.rend(); ++it) {
            map[it->first] = -1;
            used[it->second] = 0;
        }
    }
}

}  // namespace detail

/// All group isomorphisms g1 -> g2, in lexicographic order of the map table.
/// Empty when the groups are not isomorphic.
inline std::vector<GroupHom> enumerate_isomorphisms(const FiniteGroup& g1,
                                                    const FiniteGroup& g2) {
    std::vector<GroupHom> out;
    if (g1.order != g2.order) return out;
    std::vector<int> map(g1.order, -1), used(g2.order, 0);
    map[0] = 0;
    used[0] = 1;
    detail::extend_isomorphism(g1, g2, map, used, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tracat
