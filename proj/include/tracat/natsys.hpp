#pragma once

#include <string>
#include <vector>

#include "tracat/fincat.hpp"
#include "tracat/fingroup.hpp"
#include "tracat/validation.hpp"

namespace tracat {

/// A natural system of groups on a finite base category.
///
/// Stores one group D_f per morphism and the generator maps only:
/// push[(h, f)] is h_* : D_f -> D_{hf} for composable (h, f), and
/// pull[(f, g)] is g^* : D_f -> D_{fg} for composable (f, g). The mixed
/// map D(g, h) = g^* h_* is derived; functoriality closes the gap.
struct NaturalSystem {
    std::vector<FiniteGroup> groups;  // per morphism id of the base
    std::vector<GroupHom> push;       // h * M + f -> h_*  (empty if undefined)
    std::vector<GroupHom> pull;       // f * M + g -> g^*  (empty if undefined)

    const FiniteGroup& at(int f) const { return groups[f]; }

    const GroupHom& push_map(int h, int f) const {
        return push[h * static_cast<int>(groups.size()) + f];
    }
    const GroupHom& pull_map(int f, int g) const {
        return pull[f * static_cast<int>(groups.size()) + g];
    }

    friend bool operator==(const NaturalSystem&, const NaturalSystem&) = default;
};

/// Natural system with every group trivial; the unique choice on any base.
inline NaturalSystem trivial_natural_system(const FiniteCategory& base) {
    NaturalSystem d;
    const int m = base.num_morphisms();
    d.groups.assign(m, trivial_group());
    d.push.resize(m * m);
    d.pull.resize(m * m);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (base.composable(g, f)) d.push[g * m + f] = GroupHom{{0}};
            if (base.composable(f, g)) d.pull[f * m + g] = GroupHom{{0}};
        }
    return d;
}

/// Checks dimensions, that every structure map is a homomorphism, and all
/// functoriality equations on all composable tuples. Witnesses are reported
/// at the smallest composable tuple in scan order.
inline ValidationReport validate_natural_system(const FiniteCategory& base,
                                                const NaturalSystem& d) {
    ValidationReport rep;
    rep.merge(validate_category(base));
    if (!rep.ok()) return rep;
    const int m = base.num_morphisms();
    if (static_cast<int>(d.groups.size()) != m ||
        static_cast<int>(d.push.size()) != m * m ||
        static_cast<int>(d.pull.size()) != m * m) {
        rep.add_structural("dimension", "table sizes do not match base category");
        return rep;
    }
    for (int f = 0; f < m; ++f) {
        auto grep = validate_group(d.groups[f]);
        if (!grep.ok()) {
            rep.add_structural("group", "group at " + base.mname(f) + " invalid");
            return rep;
        }
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const GroupHom& p = d.push[a * m + b];
            if (base.composable(a, b)) {
                if (!p.defined()) {
                    rep.add_structural("missing", "push at " + detail::mtuple(base, {a, b}));
                    continue;
                }
                if (!validate_hom(d.groups[b], d.groups[base.compose(a, b)], p).ok())
                    rep.add_axiom("push-hom", detail::mtuple(base, {a, b}));
            } else if (p.defined()) {
                rep.add_structural("typing", "push on non-composable " + detail::mtuple(base, {a, b}));
            }
            const GroupHom& q = d.pull[a * m + b];
            if (base.composable(a, b)) {
                if (!q.defined()) {
                    rep.add_structural("missing", "pull at " + detail::mtuple(base, {a, b}));
                    continue;
                }
                if (!validate_hom(d.groups[a], d.groups[base.compose(a, b)], q).ok())
                    rep.add_axiom("pull-hom", detail::mtuple(base, {a, b}));
            } else if (q.defined()) {
                rep.add_structural("typing", "pull on non-composable " + detail::mtuple(base, {a, b}));
            }
        }
    if (!rep.structural_ok() || !rep.ok()) return rep;

    // id_* = id and id^* = id.
    for (int f = 0; f < m; ++f) {
        if (d.push_map(base.identity[base.tgt(f)], f) != identity_hom(d.groups[f]))
            rep.add_axiom("push-identity", detail::mtuple(base, {f}));
        if (d.pull_map(f, base.identity[base.src(f)]) != identity_hom(d.groups[f]))
            rep.add_axiom("pull-identity", detail::mtuple(base, {f}));
    }
    // (g g1)_* = g_* g1_*  on chains  f, g1, g.
    for (int g = 0; g < m; ++g)
        for (int g1 = 0; g1 < m; ++g1) {
            if (!base.composable(g, g1)) continue;
            for (int f = 0; f < m; ++f) {
                if (!base.composable(g1, f)) continue;
                if (d.push_map(base.compose(g, g1), f) !=
                    compose_homs(d.push_map(g, base.compose(g1, f)), d.push_map(g1, f)))
                    rep.add_axiom("push-compose", detail::mtuple(base, {g, g1, f}));
            }
        }
    // (f f1)^* = f1^* f^*  on chains  f1, f, u.
    for (int u = 0; u < m; ++u)
        for (int f = 0; f < m; ++f) {
            if (!base.composable(u, f)) continue;
            for (int f1 = 0; f1 < m; ++f1) {
                if (!base.composable(f, f1)) continue;
                if (d.pull_map(u, base.compose(f, f1)) !=
                    compose_homs(d.pull_map(base.compose(u, f), f1), d.pull_map(u, f)))
                    rep.add_axiom("pull-compose", detail::mtuple(base, {u, f, f1}));
            }
        }
    // g_* f^* = f^* g_*  as maps D_u -> D_{g u f}.
    for (int g = 0; g < m; ++g)
        for (int u = 0; u < m; ++u) {
            if (!base.composable(g, u)) continue;
            for (int f = 0; f < m; ++f) {
                if (!base.composable(u, f)) continue;
                GroupHom left = compose_homs(d.push_map(g, base.compose(u, f)), d.pull_map(u, f));
                GroupHom right =
                    compose_homs(d.pull_map(base.compose(g, u), f), d.push_map(g, u));
                if (left != right)
                    rep.add_axiom("push-pull-commute", detail::mtuple(base, {g, u, f}));
            }
        }
    return rep;
}

/// Checks the centralised condition g_*(x) + f^*(y) = f^*(y) + g_*(x) for
/// all composable f, g and all elements, plus its corollary that the group
/// at every identity morphism is abelian.
inline ValidationReport is_centralised(const FiniteCategory& base, const NaturalSystem& d) {
    ValidationReport rep = validate_natural_system(base, d);
    if (!rep.ok()) return rep;
    const int m = base.num_morphisms();
    for (int i = 0; i < base.num_objects; ++i)
        if (!d.groups[base.identity[i]].is_abelian())
            rep.add_axiom("identity-abelian", "object " + std::to_string(i));
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (!base.composable(g, f)) continue;
            const FiniteGroup& dgf = d.groups[base.compose(g, f)];
            const GroupHom& gstar = d.push_map(g, f);   // D_f -> D_{gf}
            const GroupHom& fstar = d.pull_map(g, f);   // D_g -> D_{gf}
            for (int x = 0; x < d.groups[f].order; ++x)
                for (int y = 0; y < d.groups[g].order; ++y)
                    if (dgf.plus(gstar(x), fstar(y)) != dgf.plus(fstar(y), gstar(x))) {
                        rep.add_axiom("centralised", detail::mtuple(base, {g, f}) + " x=" +
                                                         std::to_string(x) + " y=" +
                                                         std::to_string(y));
                        goto next_pair;  // one witness per composable pair
                    }
        next_pair:;
        }
    return rep;
}

}  // namespace tracat
