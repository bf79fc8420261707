#pragma once

#include <string>
#include <vector>

#include "tracat/validation.hpp"

namespace tracat {

/// A finite category given by total tables.
///
/// Objects and morphisms are dense indices; the parallel name vectors carry
/// the string ids used in files. compose(g, f) is "g after f" and is defined
/// exactly when tgt(f) == src(g); undefined entries hold -1.
struct FiniteCategory {
    struct Morphism {
        int src = 0;
        int tgt = 0;
        friend bool operator==(const Morphism&, const Morphism&) = default;
    };

    int num_objects = 0;
    std::vector<Morphism> morphisms;
    std::vector<int> identity;       // object -> morphism id
    std::vector<int> compose_table;  // g * M + f -> id, -1 when not composable

    std::vector<std::string> object_names;
    std::vector<std::string> morphism_names;

    int num_morphisms() const { return static_cast<int>(morphisms.size()); }
    int src(int f) const { return morphisms[f].src; }
    int tgt(int f) const { return morphisms[f].tgt; }

    bool composable(int g, int f) const { return morphisms[f].tgt == morphisms[g].src; }
    bool parallel(int f, int g) const { return morphisms[f] == morphisms[g]; }

    int compose(int g, int f) const { return compose_table[g * num_morphisms() + f]; }

    const std::string& mname(int f) const { return morphism_names[f]; }

    /// Structure equality ignoring names.
    bool same_tables(const FiniteCategory& o) const {
        return num_objects == o.num_objects && morphisms == o.morphisms &&
               identity == o.identity && compose_table == o.compose_table;
    }

    friend bool operator==(const FiniteCategory&, const FiniteCategory&) = default;
};

namespace detail {

inline std::string mtuple(const FiniteCategory& c, std::initializer_list<int> ms) {
    std::string s = "(";
    bool first = true;
    for (int m : ms) {
        if (!first) s += ",";
        s += c.morphism_names.empty() ? std::to_string(m) : c.mname(m);
        first = false;
    }
    return s + ")";
}

}  // namespace detail

/// Checks typing, unit laws and associativity over all composable tuples.
inline ValidationReport validate_category(const FiniteCategory& c) {
    ValidationReport rep;
    const int m = c.num_morphisms();
    if (c.num_objects <= 0) {
        rep.add_structural("dimension", "category needs at least one object");
        return rep;
    }
    if (static_cast<int>(c.identity.size()) != c.num_objects)
        rep.add_structural("dimension", "identity table size mismatch");
    if (static_cast<int>(c.compose_table.size()) != m * m)
        rep.add_structural("dimension", "compose table size mismatch");
    if (static_cast<int>(c.morphism_names.size()) != m ||
        static_cast<int>(c.object_names.size()) != c.num_objects)
        rep.add_structural("dimension", "name table size mismatch");
    if (!rep.structural_ok()) return rep;

    for (int f = 0; f < m; ++f)
        if (c.src(f) < 0 || c.src(f) >= c.num_objects || c.tgt(f) < 0 ||
            c.tgt(f) >= c.num_objects)
            rep.add_structural("dangling", "morphism " + c.mname(f) + " has bad endpoints");
    for (int i = 0; i < c.num_objects; ++i) {
        int e = c.identity[i];
        if (e < 0 || e >= m) {
            rep.add_structural("dangling", "identity of object " + std::to_string(i));
            continue;
        }
        if (c.src(e) != i || c.tgt(e) != i)
            rep.add_structural("typing", "identity of object " + std::to_string(i) +
                                             " is not an endomorphism");
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            int gf = c.compose_table[g * m + f];
            if (!c.composable(g, f)) {
                if (gf != -1)
                    rep.add_structural("typing", "compose defined on non-composable " +
                                                     detail::mtuple(c, {g, f}));
                continue;
            }
            if (gf < 0 || gf >= m) {
                rep.add_structural("missing", "compose undefined at " + detail::mtuple(c, {g, f}));
                continue;
            }
            if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
                rep.add_axiom("typing", detail::mtuple(c, {g, f}));
        }
    if (!rep.structural_ok()) return rep;

    for (int f = 0; f < m; ++f) {
        if (c.compose(f, c.identity[c.src(f)]) != f)
            rep.add_axiom("right-unit", detail::mtuple(c, {f}));
        if (c.compose(c.identity[c.tgt(f)], f) != f)
            rep.add_axiom("left-unit", detail::mtuple(c, {f}));
    }
    for (int h = 0; h < m; ++h)
        for (int g = 0; g < m; ++g) {
            if (!c.composable(h, g)) continue;
            for (int f = 0; f < m; ++f) {
                if (!c.composable(g, f)) continue;
                if (c.compose(c.compose(h, g), f) != c.compose(h, c.compose(g, f)))
                    rep.add_axiom("associativity", detail::mtuple(c, {h, g, f}));
            }
        }
    return rep;
}

/// An identity-on-objects, surjective-on-morphisms functor between finite
/// categories; the data of a homotopy projection K -> C.
struct QuotientFunctor {
    FiniteCategory src;  // K
    FiniteCategory dst;  // C
    std::vector<int> map;  // morphism(K) -> morphism(C)

    friend bool operator==(const QuotientFunctor&, const QuotientFunctor&) = default;
};

/// Checks functoriality, identity-on-objects and surjectivity.
inline ValidationReport validate_quotient(const QuotientFunctor& q) {
    ValidationReport rep;
    rep.merge(validate_category(q.src));
    rep.merge(validate_category(q.dst));
    if (!rep.ok()) return rep;

    if (q.src.num_objects != q.dst.num_objects ||
        q.src.object_names != q.dst.object_names) {
        rep.add_structural("objects", "object sets differ");
        return rep;
    }
    const int mk = q.src.num_morphisms();
    if (static_cast<int>(q.map.size()) != mk) {
        rep.add_structural("dimension", "map size mismatch");
        return rep;
    }
    for (int f = 0; f < mk; ++f)
        if (q.map[f] < 0 || q.map[f] >= q.dst.num_morphisms()) {
            rep.add_structural("dangling", "image of " + q.src.mname(f));
            return rep;
        }

    for (int f = 0; f < mk; ++f)
        if (q.dst.src(q.map[f]) != q.src.src(f) || q.dst.tgt(q.map[f]) != q.src.tgt(f))
            rep.add_axiom("typing", detail::mtuple(q.src, {f}));
    for (int i = 0; i < q.src.num_objects; ++i)
        if (q.map[q.src.identity[i]] != q.dst.identity[i])
            rep.add_axiom("identity", "object " + std::to_string(i));
    for (int g = 0; g < mk; ++g)
        for (int f = 0; f < mk; ++f) {
            if (!q.src.composable(g, f)) continue;
            if (!q.dst.composable(q.map[g], q.map[f]) ||
                q.map[q.src.compose(g, f)] != q.dst.compose(q.map[g], q.map[f]))
                rep.add_axiom("composition", detail::mtuple(q.src, {g, f}));
        }
    std::vector<int> hit(q.dst.num_morphisms(), 0);
    for (int f = 0; f < mk; ++f) hit[q.map[f]] = 1;
    for (int u = 0; u < q.dst.num_morphisms(); ++u)
        if (!hit[u]) rep.add_axiom("surjectivity", q.dst.mname(u) + " not hit");
    return rep;
}

/// One morphism of a factorization category: the pair (g, h) factoring
/// to_m = h . from_m . g in the ambient category.
struct FactorizationMorphism {
    int from_m = 0;  // object f  (a morphism of the ambient category)
    int to_m = 0;    // object f' = h f g
    int g = 0;       // g : src(f') -> src(f)
    int h = 0;       // h : tgt(f) -> tgt(f')

    friend bool operator==(const FactorizationMorphism&, const FactorizationMorphism&) = default;
};

struct FactorizationCategory {
    FiniteCategory cat;                     // objects = morphisms of the base
    std::vector<FactorizationMorphism> data;  // per morphism id of cat
};

/// The category of factorizations: objects are morphisms f of `c`, a
/// morphism f -> f' is a pair (g, h) with f' = h f g, composed by
/// (g', h')(g, h) = (g g', h' h).
inline FactorizationCategory factorization_category(const FiniteCategory& c) {
    {
        auto rep = validate_category(c);
        if (!rep.ok()) throw MathError("factorization_category: base category invalid", rep);
    }
    FactorizationCategory out;
    const int m = c.num_morphisms();
    out.cat.num_objects = m;
    out.cat.object_names = c.morphism_names;

    // Enumerate (f; g, h) in lexicographic order; morphism ids follow it.
    std::vector<int> index(m * m * m, -1);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (c.tgt(g) != c.src(f)) continue;
            for (int h = 0; h < m; ++h) {
                if (c.src(h) != c.tgt(f)) continue;
                FactorizationMorphism fm;
                fm.from_m = f;
                fm.g = g;
                fm.h = h;
                fm.to_m = c.compose(h, c.compose(f, g));
                index[(f * m + g) * m + h] = static_cast<int>(out.data.size());
                out.data.push_back(fm);
                out.cat.morphisms.push_back({f, fm.to_m});
                out.cat.morphism_names.push_back(c.mname(f) + ";" + c.mname(g) + ";" +
                                                 c.mname(h));
            }
        }

    out.cat.identity.resize(m);
    for (int f = 0; f < m; ++f)
        out.cat.identity[f] = index[(f * m + c.identity[c.src(f)]) * m + c.identity[c.tgt(f)]];

    const int fm_count = static_cast<int>(out.data.size());
    out.cat.compose_table.assign(fm_count * fm_count, -1);
    for (int b = 0; b < fm_count; ++b)           // (g', h') : f' -> f''
        for (int a = 0; a < fm_count; ++a) {     // (g, h)   : f  -> f'
            if (out.data[a].to_m != out.data[b].from_m) continue;
            int gg = c.compose(out.data[a].g, out.data[b].g);
            int hh = c.compose(out.data[b].h, out.data[a].h);
            out.cat.compose_table[b * fm_count + a] =
                index[(out.data[a].from_m * m + gg) * m + hh];
        }
    return out;
}

}  // namespace tracat
