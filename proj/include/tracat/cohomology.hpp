#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tracat/track.hpp"

namespace tracat {

/// The non-abelian 2-cocycle data classifying (pi, G)-track categories.
///
/// Tables are indexed over the morphisms of K and defined exactly on the
/// typed key sets of a fixed pre-track category:
///   xi[(f,g,h)]    in G_f   for parallel f,g,h in one pi-class,
///   chi[(f,g|x,y)] in G_xf  for same-class pairs (f,g) then (x,y) with
///                           x after f composable,
///   phi[(g,f)]     an isomorphism G_g -> G_f for a same-class pair.
/// Untyped entries hold -1 (resp. an empty hom). Triples are normalized:
/// degenerate xi and chi entries are 0 and phi on the diagonal is the
/// identity. Comparison is lexicographic on (xi, chi, phi).
struct CocycleTriple {
    std::vector<int> xi;        // (f*M+g)*M+h
    std::vector<int> chi;       // ((f*M+g)*M+x)*M+y
    std::vector<GroupHom> phi;  // g*M+f

    friend bool operator==(const CocycleTriple&, const CocycleTriple&) = default;
    friend auto operator<=>(const CocycleTriple&, const CocycleTriple&) = default;
};

/// Re-choice data: zeta[(f,g)] in G_f for same-class pairs, zeta(f,f) = 0.
struct Coboundary {
    std::vector<int> zeta;  // f*M+g, -1 untyped

    friend bool operator==(const Coboundary&, const Coboundary&) = default;
};

/// A choice of track H(f,g) in T(f,g) per same-class pair, subject to
/// H(f,f) = 0_f and H(g,f) = -H(f,g).
struct TrackChoice {
    std::vector<int> h;  // f*M+g -> track id, -1 untyped

    friend bool operator==(const TrackChoice&, const TrackChoice&) = default;
};

namespace detail {

inline bool is_identity_morphism(const FiniteCategory& k, int f) {
    return k.src(f) == k.tgt(f) && k.identity[k.src(f)] == f;
}

// Typed key predicates over a pre-track category.
inline bool xi_typed(const PreTrack& p, int f, int g, int h) {
    return p.k().parallel(f, g) && p.k().parallel(g, h) && p.same_class(f, g) &&
           p.same_class(g, h);
}
inline bool chi_typed(const PreTrack& p, int f, int g, int x, int y) {
    const auto& k = p.k();
    return k.parallel(f, g) && p.same_class(f, g) && k.parallel(x, y) &&
           p.same_class(x, y) && k.composable(x, f);
}
inline bool phi_typed(const PreTrack& p, int g, int f) {
    return p.k().parallel(g, f) && p.same_class(g, f);
}

// Normalized entries, forced by H(f,f) = 0 and H(f,g) = -H(g,f).
inline bool xi_forced(int f, int g, int h) { return f == g || g == h || f == h; }
inline bool chi_forced(const PreTrack& p, int f, int g, int x, int y) {
    if (f == g && x == y) return true;
    if (f == g && is_identity_morphism(p.k(), f)) return true;
    if (x == y && is_identity_morphism(p.k(), x)) return true;
    return false;
}

inline int xi_key(int M, int f, int g, int h) { return (f * M + g) * M + h; }
inline int chi_key(int M, int f, int g, int x, int y) { return ((f * M + g) * M + x) * M + y; }

}  // namespace detail

/// The triple with every xi and chi entry 0 and every phi the identity.
inline CocycleTriple zero_cocycle(const PreTrack& p) {
    const int M = p.k().num_morphisms();
    CocycleTriple z;
    z.xi.assign(M * M * M, -1);
    z.chi.assign(M * M * M * M, -1);
    z.phi.resize(M * M);
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!detail::phi_typed(p, g, f)) continue;
            z.phi[g * M + f] = identity_hom(p.g.at(g));
            for (int h = 0; h < M; ++h)
                if (detail::xi_typed(p, f, g, h)) z.xi[detail::xi_key(M, f, g, h)] = 0;
            for (int x = 0; x < M; ++x)
                for (int y = 0; y < M; ++y)
                    if (detail::chi_typed(p, f, g, x, y))
                        z.chi[detail::chi_key(M, f, g, x, y)] = 0;
        }
    return z;
}

/// (m_* phi_{b,a})(t) = -chi(a,b|m,m) + phi_{mb,ma}(t) + chi(a,b|m,m),
/// pointwise; the derived map G_{mb} -> G_{ma} of equation (i).
inline int pushforward_phi_apply(const PreTrack& p, const CocycleTriple& z, int m, int b,
                                 int a, int t) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    int ma = k.compose(m, a), mb = k.compose(m, b);
    const FiniteGroup& gma = p.g.at(ma);
    int c = z.chi[detail::chi_key(M, a, b, m, m)];
    return gma.plus(gma.plus(gma.neg[c], z.phi[mb * M + ma](t)), c);
}

/// (b^* phi_{n,m})(t) = -chi(b,b|m,n) + phi_{nb,mb}(t) + chi(b,b|m,n),
/// pointwise; the derived map G_{nb} -> G_{mb}.
inline int pullback_phi_apply(const PreTrack& p, const CocycleTriple& z, int b, int n, int m,
                              int t) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    int mb = k.compose(m, b), nb = k.compose(n, b);
    const FiniteGroup& gmb = p.g.at(mb);
    int c = z.chi[detail::chi_key(M, b, b, m, n)];
    return gmb.plus(gmb.plus(gmb.neg[c], z.phi[nb * M + mb](t)), c);
}

/// The derived map m_* phi_{b,a} : G_{mb} -> G_{ma} as a table.
/// Typing: a, b parallel in one pi-class, m after them.
inline GroupHom pushforward_phi(const PreTrack& p, const CocycleTriple& z, int m, int b,
                                int a) {
    const auto& k = p.k();
    if (!detail::phi_typed(p, b, a) || !k.composable(m, a))
        throw MathError("pushforward_phi: typing violation");
    GroupHom h;
    h.map.resize(p.g.at(k.compose(m, b)).order);
    for (int t = 0; t < static_cast<int>(h.map.size()); ++t)
        h.map[t] = pushforward_phi_apply(p, z, m, b, a, t);
    return h;
}

/// The derived map b^* phi_{n,m} : G_{nb} -> G_{mb} as a table.
/// Typing: m, n parallel in one pi-class, b before them.
inline GroupHom pullback_phi(const PreTrack& p, const CocycleTriple& z, int b, int n, int m) {
    const auto& k = p.k();
    if (!detail::phi_typed(p, n, m) || !k.composable(m, b))
        throw MathError("pullback_phi: typing violation");
    GroupHom h;
    h.map.resize(p.g.at(k.compose(n, b)).order);
    for (int t = 0; t < static_cast<int>(h.map.size()); ++t)
        h.map[t] = pullback_phi_apply(p, z, b, n, m, t);
    return h;
}

namespace detail {

// One quantified equation of Definition 3.2, instantiated at a morphism
// tuple; element quantifiers run inside eval_eq.
enum class Eq : std::uint8_t { ia, ib1, ib2, ic1, ic2, ii, iii, iv };

inline const char* eq_label(Eq e) {
    switch (e) {
        case Eq::ia: return "(i)(a)";
        case Eq::ib1:
        case Eq::ib2: return "(i)(b)";
        case Eq::ic1:
        case Eq::ic2: return "(i)(c)";
        case Eq::ii: return "(ii)";
        case Eq::iii: return "(iii)";
        case Eq::iv: return "(iv)";
    }
    return "?";
}

struct EqInstance {
    Eq eq;
    std::array<int, 6> a{};  // morphism arguments, meaning depends on eq
};

inline bool eval_eq(const PreTrack& p, const CocycleTriple& z, const EqInstance& in) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    switch (in.eq) {
        case Eq::ia: {
            // phi_{g,f} . phi_{h,g} = conj_{-xi(f,g,h)} . phi_{h,f}  on G_h
            auto [f, g, h, u0, u1, u2] = in.a;
            const FiniteGroup& gf = p.g.at(f);
            int x = z.xi[xi_key(M, f, g, h)];
            for (int t = 0; t < p.g.at(h).order; ++t) {
                int lhs = z.phi[g * M + f](z.phi[h * M + g](t));
                int rhs = gf.plus(gf.plus(gf.neg[x], z.phi[h * M + f](t)), x);
                if (lhs != rhs) return false;
            }
            return true;
        }
        case Eq::ib1: {
            // m_* phi_{b,a} (m_* beta) = m_* (phi_{b,a}(beta))
            auto [a, b, m, u0, u1, u2] = in.a;
            const GroupHom& push_b = p.g.push_map(m, b);
            const GroupHom& push_a = p.g.push_map(m, a);
            for (int beta = 0; beta < p.g.at(b).order; ++beta)
                if (pushforward_phi_apply(p, z, m, b, a, push_b(beta)) !=
                    push_a(z.phi[b * M + a](beta)))
                    return false;
            return true;
        }
        case Eq::ib2: {
            // a^* phi_{n,m} (a^* nu) = a^* (phi_{n,m}(nu))
            auto [a, m, n, u0, u1, u2] = in.a;
            const GroupHom& pull_n = p.g.pull_map(n, a);
            const GroupHom& pull_m = p.g.pull_map(m, a);
            for (int nu = 0; nu < p.g.at(n).order; ++nu)
                if (pullback_phi_apply(p, z, a, n, m, pull_n(nu)) !=
                    pull_m(z.phi[n * M + m](nu)))
                    return false;
            return true;
        }
        case Eq::ic1: {
            // m_* phi_{b,a} (b^* mu) = a^* mu
            auto [a, b, m, u0, u1, u2] = in.a;
            const GroupHom& pull_b = p.g.pull_map(m, b);
            const GroupHom& pull_a = p.g.pull_map(m, a);
            for (int mu = 0; mu < p.g.at(m).order; ++mu)
                if (pushforward_phi_apply(p, z, m, b, a, pull_b(mu)) != pull_a(mu)) return false;
            return true;
        }
        case Eq::ic2: {
            // a^* phi_{n,m} (n_* alpha) = m_* alpha
            auto [a, m, n, u0, u1, u2] = in.a;
            const GroupHom& push_n = p.g.push_map(n, a);
            const GroupHom& push_m = p.g.push_map(m, a);
            for (int al = 0; al < p.g.at(a).order; ++al)
                if (pullback_phi_apply(p, z, a, n, m, push_n(al)) != push_m(al)) return false;
            return true;
        }
        case Eq::ii: {
            // xi(f,g,e) + phi_{g,f} xi(g,h,e) = xi(f,h,e) + xi(f,g,h)
            auto [f, g, h, e, u0, u1] = in.a;
            const FiniteGroup& gf = p.g.at(f);
            return gf.plus(z.xi[xi_key(M, f, g, e)],
                           z.phi[g * M + f](z.xi[xi_key(M, g, h, e)])) ==
                   gf.plus(z.xi[xi_key(M, f, h, e)], z.xi[xi_key(M, f, g, h)]);
        }
        case Eq::iii: {
            // xi(ax,by,cz) + phi_{by,ax}(chi(y,z|b,c)) + chi(x,y|a,b)
            //   = chi(x,z|a,c) + x^* xi(a,b,c) + a_* xi(x,y,z)
            auto [x, y, zz, a, b, c] = in.a;
            int ax = k.compose(a, x), by = k.compose(b, y), cz = k.compose(c, zz);
            const FiniteGroup& gax = p.g.at(ax);
            int lhs = gax.plus(
                gax.plus(z.xi[xi_key(M, ax, by, cz)],
                         z.phi[by * M + ax](z.chi[chi_key(M, y, zz, b, c)])),
                z.chi[chi_key(M, x, y, a, b)]);
            int rhs = gax.plus(gax.plus(z.chi[chi_key(M, x, zz, a, c)],
                                        p.g.pull_map(a, x)(z.xi[xi_key(M, a, b, c)])),
                               p.g.push_map(a, x)(z.xi[xi_key(M, x, y, zz)]));
            return lhs == rhs;
        }
        case Eq::iv: {
            // chi(ax,by|m,n) + m_* chi(x,y|a,b) = chi(x,y|ma,nb) + x^* chi(a,b|m,n)
            auto [x, y, a, b, m, n] = in.a;
            int ax = k.compose(a, x), by = k.compose(b, y);
            int ma = k.compose(m, a), nb = k.compose(n, b);
            const FiniteGroup& gmax = p.g.at(k.compose(m, ax));
            int lhs = gmax.plus(z.chi[chi_key(M, ax, by, m, n)],
                                p.g.push_map(m, ax)(z.chi[chi_key(M, x, y, a, b)]));
            int rhs = gmax.plus(z.chi[chi_key(M, x, y, ma, nb)],
                                p.g.pull_map(ma, x)(z.chi[chi_key(M, a, b, m, n)]));
            return lhs == rhs;
        }
    }
    return true;
}

inline std::string eq_witness(const FiniteCategory& k, const EqInstance& in) {
    int arity = 0;
    switch (in.eq) {
        case Eq::ia:
        case Eq::ib1:
        case Eq::ib2:
        case Eq::ic1:
        case Eq::ic2: arity = 3; break;
        case Eq::ii: arity = 4; break;
        case Eq::iii:
        case Eq::iv: arity = 6; break;
    }
    std::string s = "(";
    for (int i = 0; i < arity; ++i) {
        if (i) s += ",";
        s += k.mname(in.a[i]);
    }
    return s + ")";
}

inline std::vector<EqInstance> collect_instances(const PreTrack& p) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    std::vector<EqInstance> out;
    auto sc = [&](int a, int b) { return k.parallel(a, b) && p.same_class(a, b); };
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!sc(f, g)) continue;
            for (int h = 0; h < M; ++h) {
                if (!sc(g, h)) continue;
                out.push_back({Eq::ia, {f, g, h}});
                for (int e = 0; e < M; ++e)
                    if (sc(h, e)) out.push_back({Eq::ii, {f, g, h, e}});
            }
        }
    // (i)(b) and (i)(c): pairs (a, b) with any m after, and any a with a
    // same-class pair (m, n) after.
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) {
            if (sc(a, b))
                for (int m = 0; m < M; ++m)
                    if (k.composable(m, a)) {
                        out.push_back({Eq::ib1, {a, b, m}});
                        out.push_back({Eq::ic1, {a, b, m}});
                    }
            if (b == a)
                for (int m = 0; m < M; ++m) {
                    if (!k.composable(m, a)) continue;
                    for (int n = 0; n < M; ++n)
                        if (sc(m, n)) {
                            out.push_back({Eq::ib2, {a, m, n}});
                            out.push_back({Eq::ic2, {a, m, n}});
                        }
                }
        }
    for (int x = 0; x < M; ++x)
        for (int y = 0; y < M; ++y) {
            if (!sc(x, y)) continue;
            for (int zz = 0; zz < M; ++zz) {
                if (!sc(y, zz)) continue;
                for (int a = 0; a < M; ++a) {
                    if (!k.composable(a, x)) continue;
                    for (int b = 0; b < M; ++b) {
                        if (!sc(a, b)) continue;
                        for (int c = 0; c < M; ++c)
                            if (sc(b, c)) out.push_back({Eq::iii, {x, y, zz, a, b, c}});
                    }
                }
            }
        }
    for (int x = 0; x < M; ++x)
        for (int y = 0; y < M; ++y) {
            if (!sc(x, y)) continue;
            for (int a = 0; a < M; ++a) {
                if (!k.composable(a, x)) continue;
                for (int b = 0; b < M; ++b) {
                    if (!sc(a, b)) continue;
                    for (int m = 0; m < M; ++m) {
                        if (!k.composable(m, a)) continue;
                        for (int n = 0; n < M; ++n)
                            if (sc(m, n)) out.push_back({Eq::iv, {x, y, a, b, m, n}});
                    }
                }
            }
        }
    return out;
}

// Search variables of the cocycle enumeration, in the fixed order
// phi (g,f)-lex, then xi (f,g,h)-lex, then chi (f,g,x,y)-lex.
struct CocycleVars {
    struct Var {
        int kind;  // 0 = phi, 1 = xi, 2 = chi
        int key;
    };
    std::vector<Var> vars;
    std::vector<int> phi_pos, xi_pos, chi_pos;  // key -> var position or -1

    static CocycleVars build(const PreTrack& p) {
        const int M = p.k().num_morphisms();
        CocycleVars v;
        v.phi_pos.assign(M * M, -1);
        v.xi_pos.assign(M * M * M, -1);
        v.chi_pos.assign(M * M * M * M, -1);
        for (int g = 0; g < M; ++g)
            for (int f = 0; f < M; ++f)
                if (g != f && phi_typed(p, g, f)) {
                    v.phi_pos[g * M + f] = static_cast<int>(v.vars.size());
                    v.vars.push_back({0, g * M + f});
                }
        for (int f = 0; f < M; ++f)
            for (int g = 0; g < M; ++g)
                for (int h = 0; h < M; ++h)
                    if (xi_typed(p, f, g, h) && !xi_forced(f, g, h)) {
                        v.xi_pos[xi_key(M, f, g, h)] = static_cast<int>(v.vars.size());
                        v.vars.push_back({1, xi_key(M, f, g, h)});
                    }
        for (int f = 0; f < M; ++f)
            for (int g = 0; g < M; ++g)
                for (int x = 0; x < M; ++x)
                    for (int y = 0; y < M; ++y)
                        if (chi_typed(p, f, g, x, y) && !chi_forced(p, f, g, x, y)) {
                            v.chi_pos[chi_key(M, f, g, x, y)] = static_cast<int>(v.vars.size());
                            v.vars.push_back({2, chi_key(M, f, g, x, y)});
                        }
        return v;
    }
};

// Positions of the free entries an instance reads; -1 entries are skipped.
inline void instance_deps(const PreTrack& p, const CocycleVars& v, const EqInstance& in,
                          std::vector<int>& deps) {
    const int M = p.k().num_morphisms();
    deps.clear();
    auto add = [&](int pos) {
        if (pos >= 0) deps.push_back(pos);
    };
    auto phi = [&](int g, int f) { add(v.phi_pos[g * M + f]); };
    auto xi = [&](int f, int g, int h) { add(v.xi_pos[xi_key(M, f, g, h)]); };
    auto chi = [&](int f, int g, int x, int y) { add(v.chi_pos[chi_key(M, f, g, x, y)]); };
    const auto& k = p.k();
    switch (in.eq) {
        case Eq::ia: {
            auto [f, g, h, u0, u1, u2] = in.a;
            phi(g, f);
            phi(h, g);
            phi(h, f);
            xi(f, g, h);
            break;
        }
        case Eq::ib1:
        case Eq::ic1: {
            auto [a, b, m, u0, u1, u2] = in.a;
            chi(a, b, m, m);
            phi(k.compose(m, b), k.compose(m, a));
            if (in.eq == Eq::ib1) phi(b, a);
            break;
        }
        case Eq::ib2:
        case Eq::ic2: {
            auto [a, m, n, u0, u1, u2] = in.a;
            chi(a, a, m, n);
            phi(k.compose(n, a), k.compose(m, a));
            if (in.eq == Eq::ib2) phi(n, m);
            break;
        }
        case Eq::ii: {
            auto [f, g, h, e, u0, u1] = in.a;
            xi(f, g, e);
            xi(g, h, e);
            xi(f, h, e);
            xi(f, g, h);
            phi(g, f);
            break;
        }
        case Eq::iii: {
            auto [x, y, zz, a, b, c] = in.a;
            int ax = k.compose(a, x), by = k.compose(b, y), cz = k.compose(c, zz);
            xi(ax, by, cz);
            xi(a, b, c);
            xi(x, y, zz);
            chi(y, zz, b, c);
            chi(x, y, a, b);
            chi(x, zz, a, c);
            phi(by, ax);
            break;
        }
        case Eq::iv: {
            auto [x, y, a, b, m, n] = in.a;
            int ax = k.compose(a, x), by = k.compose(b, y);
            chi(ax, by, m, n);
            chi(x, y, a, b);
            chi(x, y, k.compose(m, a), k.compose(n, b));
            chi(a, b, m, n);
            break;
        }
    }
}

}  // namespace detail

/// Checks coverage of the typed key sets, the normalization invariants,
/// that each phi is an isomorphism, and all equation families of the
/// cocycle definition. Equation failures carry their label as the rule.
inline ValidationReport validate_cocycle(const PreTrack& p, const CocycleTriple& z) {
    ValidationReport rep;
    const auto& k = p.k();
    const int M = k.num_morphisms();
    if (static_cast<int>(z.xi.size()) != M * M * M ||
        static_cast<int>(z.chi.size()) != M * M * M * M ||
        static_cast<int>(z.phi.size()) != M * M) {
        rep.add_structural("dimension", "cocycle tables do not match base category");
        return rep;
    }
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            bool typed = detail::phi_typed(p, g, f);
            const GroupHom& h = z.phi[g * M + f];
            if (typed && !h.defined())
                rep.add_structural("missing", "phi at (" + k.mname(g) + "," + k.mname(f) + ")");
            if (!typed && h.defined())
                rep.add_structural("typing", "phi at (" + k.mname(g) + "," + k.mname(f) + ")");
            for (int h3 = 0; h3 < M; ++h3) {
                bool xt = detail::xi_typed(p, f, g, h3);
                int val = z.xi[detail::xi_key(M, f, g, h3)];
                if (xt && (val < 0 || val >= p.g.at(f).order))
                    rep.add_structural("missing", "xi at " + detail::mtuple(k, {f, g, h3}));
                if (!xt && val != -1)
                    rep.add_structural("typing", "xi at " + detail::mtuple(k, {f, g, h3}));
            }
            for (int x = 0; x < M; ++x)
                for (int y = 0; y < M; ++y) {
                    bool ct = detail::chi_typed(p, f, g, x, y);
                    int val = z.chi[detail::chi_key(M, f, g, x, y)];
                    if (ct && (val < 0 || val >= p.g.at(k.compose(x, f)).order))
                        rep.add_structural("missing",
                                           "chi at " + detail::mtuple(k, {f, g, x, y}));
                    if (!ct && val != -1)
                        rep.add_structural("typing", "chi at " + detail::mtuple(k, {f, g, x, y}));
                }
        }
    if (!rep.ok()) return rep;

    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!detail::phi_typed(p, g, f)) continue;
            const GroupHom& h = z.phi[g * M + f];
            if (!validate_hom(p.g.at(g), p.g.at(f), h).ok()) {
                rep.add_axiom("phi-iso", "(" + k.mname(g) + "," + k.mname(f) + ") not a hom");
                continue;
            }
            std::vector<int> hit(p.g.at(f).order, 0);
            bool bij = p.g.at(g).order == p.g.at(f).order;
            for (int v : h.map) {
                if (v < static_cast<int>(hit.size()) && hit[v]) bij = false;
                if (v < static_cast<int>(hit.size())) hit[v] = 1;
            }
            if (!bij)
                rep.add_axiom("phi-iso", "(" + k.mname(g) + "," + k.mname(f) + ") not bijective");
        }
    if (!rep.ok()) return rep;

    // Normalization.
    for (int f = 0; f < M; ++f) {
        if (detail::phi_typed(p, f, f) && z.phi[f * M + f] != identity_hom(p.g.at(f)))
            rep.add_axiom("normalization", "phi at (" + k.mname(f) + "," + k.mname(f) + ")");
        for (int g = 0; g < M; ++g) {
            for (int h3 = 0; h3 < M; ++h3)
                if (detail::xi_typed(p, f, g, h3) && detail::xi_forced(f, g, h3) &&
                    z.xi[detail::xi_key(M, f, g, h3)] != 0)
                    rep.add_axiom("normalization", "xi at " + detail::mtuple(k, {f, g, h3}));
            for (int x = 0; x < M; ++x)
                for (int y = 0; y < M; ++y)
                    if (detail::chi_typed(p, f, g, x, y) && detail::chi_forced(p, f, g, x, y) &&
                        z.chi[detail::chi_key(M, f, g, x, y)] != 0)
                        rep.add_axiom("normalization", "chi at " + detail::mtuple(k, {f, g, x, y}));
        }
    }

    for (const auto& inst : detail::collect_instances(p))
        if (!detail::eval_eq(p, z, inst))
            rep.add_axiom(detail::eq_label(inst.eq), detail::eq_witness(k, inst));
    return rep;
}

namespace detail {

// The three re-choice formulas, evaluated literally in the written order.
inline CocycleTriple apply_coboundary_raw(const PreTrack& p, const CocycleTriple& z,
                                          const Coboundary& c) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    CocycleTriple out = z;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!phi_typed(p, g, f)) continue;
            const FiniteGroup& gf = p.g.at(f);
            int zfg = c.zeta[f * M + g];
            // (3)  phi'(t) = zeta(f,g) + phi(t) - zeta(f,g)
            GroupHom& ph = out.phi[g * M + f];
            for (int t = 0; t < static_cast<int>(ph.map.size()); ++t)
                ph.map[t] = gf.plus(gf.plus(zfg, z.phi[g * M + f](t)), gf.neg[zfg]);
            // (1)  xi'(f,g,h) = zeta(f,h) + xi(f,g,h) - phi_{g,f} zeta(g,h) - zeta(f,g)
            for (int h = 0; h < M; ++h) {
                if (!xi_typed(p, f, g, h)) continue;
                int v = gf.plus(c.zeta[f * M + h], z.xi[xi_key(M, f, g, h)]);
                v = gf.plus(v, gf.neg[z.phi[g * M + f](c.zeta[g * M + h])]);
                out.xi[xi_key(M, f, g, h)] = gf.plus(v, gf.neg[zfg]);
            }
            // (2)  chi'(x,y|a,b) = zeta(ax,by) + chi(x,y|a,b) - x^* zeta(a,b) - a_* zeta(x,y)
            // here the table key (f,g | x,y) plays (x,y | a,b).
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b) {
                    if (!chi_typed(p, f, g, a, b)) continue;
                    int af = k.compose(a, f), bg = k.compose(b, g);
                    const FiniteGroup& gaf = p.g.at(af);
                    int v = gaf.plus(c.zeta[af * M + bg], z.chi[chi_key(M, f, g, a, b)]);
                    v = gaf.plus(v, gaf.neg[p.g.pull_map(a, f)(c.zeta[a * M + b])]);
                    out.chi[chi_key(M, f, g, a, b)] =
                        gaf.plus(v, gaf.neg[p.g.push_map(a, f)(c.zeta[f * M + g])]);
                }
        }
    return out;
}

}  // namespace detail

/// Identity coboundary: zeta = 0 on every same-class pair.
inline Coboundary zero_coboundary(const PreTrack& p) {
    const int M = p.k().num_morphisms();
    Coboundary c;
    c.zeta.assign(M * M, -1);
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g)
            if (detail::phi_typed(p, f, g)) c.zeta[f * M + g] = 0;
    return c;
}

/// Applies the re-choice formulas to a validated triple and asserts the
/// result validates again. A coboundary preserves normalization exactly
/// when phi_{g,f}(zeta(g,f)) = -zeta(f,g); other tables fail the assertion.
inline CocycleTriple apply_coboundary(const PreTrack& p, const CocycleTriple& z,
                                      const Coboundary& c) {
    const int M = p.k().num_morphisms();
    if (static_cast<int>(c.zeta.size()) != M * M)
        throw MathError("apply_coboundary: coboundary table size mismatch");
    for (int f = 0; f < M; ++f) {
        bool typed = detail::phi_typed(p, f, f);
        if (typed && c.zeta[f * M + f] != 0)
            throw MathError("apply_coboundary: zeta(f,f) must be 0");
        for (int g = 0; g < M; ++g) {
            bool t2 = detail::phi_typed(p, f, g);
            int v = c.zeta[f * M + g];
            if (t2 && (v < 0 || v >= p.g.at(f).order))
                throw MathError("apply_coboundary: zeta entry out of range");
            if (!t2 && v != -1) throw MathError("apply_coboundary: zeta entry off the index set");
        }
    }
    CocycleTriple out = detail::apply_coboundary_raw(p, z, c);
    auto rep = validate_cocycle(p, out);
    if (!rep.ok())
        throw MathError("apply_coboundary: result fails validation", rep);
    return out;
}

namespace detail {

inline std::optional<Coboundary> are_cohomologous_counted(const PreTrack& p,
                                                          const CocycleTriple& z1,
                                                          const CocycleTriple& z2,
                                                          SearchCounter& counter) {
    const auto& k = p.k();
    const int M = k.num_morphisms();
    const int mm = M * M;

    // zeta variables: ordered same-class pairs (f, g), f != g, in lex order.
    std::vector<int> var_of(mm, -1);
    std::vector<std::pair<int, int>> pairs;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g)
            if (f != g && phi_typed(p, f, g)) {
                var_of[f * M + g] = static_cast<int>(pairs.size());
                pairs.push_back({f, g});
            }
    const int nv = static_cast<int>(pairs.size());

    Coboundary zeta = zero_coboundary(p);

    // Re-choice equations bucketed by the last zeta variable they read.
    // kind 0: xi triple (f,g,h); kind 1: chi key (f,g|a,b); kind 2: phi pair (g,f).
    struct Cond {
        int kind;
        std::array<int, 4> a;
    };
    std::vector<std::vector<Cond>> bucket(nv);
    std::vector<Cond> ground;
    auto place = [&](Cond cond, std::initializer_list<int> dep_pairs) {
        int last = -1;
        for (int pk2 : dep_pairs)
            if (var_of[pk2] > last) last = var_of[pk2];
        if (last < 0)
            ground.push_back(cond);
        else
            bucket[last].push_back(cond);
    };
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!phi_typed(p, g, f)) continue;
            place({2, {g, f}}, {f * M + g});
            for (int h = 0; h < M; ++h)
                if (xi_typed(p, f, g, h))
                    place({0, {f, g, h}}, {f * M + h, g * M + h, f * M + g});
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b)
                    if (chi_typed(p, f, g, a, b)) {
                        int af = k.compose(a, f), bg = k.compose(b, g);
                        place({1, {f, g, a, b}}, {af * M + bg, a * M + b, f * M + g});
                    }
        }

    auto holds = [&](const Cond& cond) -> bool {
        if (cond.kind == 2) {
            int g = cond.a[0], f = cond.a[1];
            const FiniteGroup& gf = p.g.at(f);
            int zfg = zeta.zeta[f * M + g];
            for (int t = 0; t < p.g.at(g).order; ++t)
                if (gf.plus(gf.plus(zfg, z1.phi[g * M + f](t)), gf.neg[zfg]) !=
                    z2.phi[g * M + f](t))
                    return false;
            return true;
        }
        if (cond.kind == 0) {
            int f = cond.a[0], g = cond.a[1], h = cond.a[2];
            const FiniteGroup& gf = p.g.at(f);
            int v = gf.plus(zeta.zeta[f * M + h], z1.xi[xi_key(M, f, g, h)]);
            v = gf.plus(v, gf.neg[z1.phi[g * M + f](zeta.zeta[g * M + h])]);
            v = gf.plus(v, gf.neg[zeta.zeta[f * M + g]]);
            return v == z2.xi[xi_key(M, f, g, h)];
        }
        int f = cond.a[0], g = cond.a[1], a = cond.a[2], b = cond.a[3];
        int af = k.compose(a, f), bg = k.compose(b, g);
        const FiniteGroup& gaf = p.g.at(af);
        int v = gaf.plus(zeta.zeta[af * M + bg], z1.chi[chi_key(M, f, g, a, b)]);
        v = gaf.plus(v, gaf.neg[p.g.pull_map(a, f)(zeta.zeta[a * M + b])]);
        v = gaf.plus(v, gaf.neg[p.g.push_map(a, f)(zeta.zeta[f * M + g])]);
        return v == z2.chi[chi_key(M, f, g, a, b)];
    };

    for (const auto& cond : ground)
        if (!holds(cond)) return std::nullopt;

    std::optional<Coboundary> found;
    auto dfs = [&](auto&& self, int pos) -> bool {
        if (pos == nv) {
            found = zeta;
            return true;
        }
        auto [f, g] = pairs[pos];
        for (int v = 0; v < p.g.at(f).order; ++v) {
            counter.tick();
            zeta.zeta[f * M + g] = v;
            bool okay = true;
            for (const auto& cond : bucket[pos])
                if (!holds(cond)) {
                    okay = false;
                    break;
                }
            if (okay && self(self, pos + 1)) return true;
        }
        zeta.zeta[f * M + g] = 0;
        return false;
    };
    dfs(dfs, 0);
    return found;
}

}  // namespace detail

/// Exhaustive search for a coboundary carrying z1 to z2; the returned
/// witness is the lexicographically first one. Both triples must be
/// defined over the same pre-track category.
inline std::optional<Coboundary> are_cohomologous(const PreTrack& p, const CocycleTriple& z1,
                                                  const CocycleTriple& z2,
                                                  const Budget& budget = {}) {
    detail::SearchCounter counter{budget};
    return detail::are_cohomologous_counted(p, z1, z2, counter);
}

/// True when `h` is a valid track choice for x: defined exactly on
/// same-class pairs, H(f,f) = 0_f and H(g,f) = -H(f,g).
inline ValidationReport validate_track_choice(const PiGTrack& x, const TrackChoice& h) {
    ValidationReport rep;
    const auto& k = x.track.underlying;
    const int M = k.num_morphisms();
    if (static_cast<int>(h.h.size()) != M * M) {
        rep.add_structural("dimension", "track choice table size");
        return rep;
    }
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            int v = h.h[f * M + g];
            if (x.track.tcount(f, g) == 0) {
                if (v != -1) rep.add_structural("typing", "choice at empty T" + detail::mtuple(k, {f, g}));
                continue;
            }
            if (v < 0 || v >= x.track.tcount(f, g)) {
                rep.add_structural("range", "choice at " + detail::mtuple(k, {f, g}));
                continue;
            }
            if (f == g && v != x.track.zero(f))
                rep.add_axiom("choice-diagonal", k.mname(f));
            if (f != g && h.h[g * M + f] != x.track.vinverse(f, g, v))
                rep.add_axiom("choice-symmetric", detail::mtuple(k, {f, g}));
        }
    return rep;
}

/// Deterministic track choice: pairs (f, g) with f < g are scanned in lex
/// order and the seed is read as mixed-radix digits over the track set
/// sizes, so seeds 0 .. (#choices - 1) enumerate every possible choice.
inline TrackChoice choose_tracks(const PiGTrack& x, std::uint64_t seed) {
    const auto& k = x.track.underlying;
    const int M = k.num_morphisms();
    TrackChoice out;
    out.h.assign(M * M, -1);
    for (int f = 0; f < M; ++f)
        if (x.track.tcount(f, f) > 0) out.h[f * M + f] = x.track.zero(f);
    std::uint64_t s = seed;
    for (int f = 0; f < M; ++f)
        for (int g = f + 1; g < M; ++g) {
            const int n = x.track.tcount(f, g);
            if (n == 0) continue;
            int pick = static_cast<int>(s % static_cast<std::uint64_t>(n));
            s /= static_cast<std::uint64_t>(n);
            out.h[f * M + g] = pick;
            out.h[g * M + f] = x.track.vinverse(f, g, pick);
        }
    return out;
}

/// Number of distinct track choices on x (the product of the off-diagonal
/// track set sizes over unordered pairs).
inline std::uint64_t count_track_choices(const PiGTrack& x) {
    const int M = x.track.underlying.num_morphisms();
    std::uint64_t n = 1;
    for (int f = 0; f < M; ++f)
        for (int g = f + 1; g < M; ++g)
            if (x.track.tcount(f, g) > 0) n *= static_cast<std::uint64_t>(x.track.tcount(f, g));
    return n;
}

/// Reads the cocycle triple off a (pi, G)-track category along a choice of
/// tracks: xi from H(f,g) + H(g,e) = -xi + H(f,e), chi from
/// a_* H(x,y) + y^* H(a,b) = -chi + H(ax,by), and phi by conjugation with
/// H(f,g); everything is transported into G through sigma.
inline CocycleTriple extract_cocycle(const PiGTrack& x, const TrackChoice& h) {
    {
        auto rep = validate_track_choice(x, h);
        if (!rep.ok()) throw MathError("extract_cocycle: invalid track choice", rep);
    }
    const auto& t = x.track;
    const auto& k = t.underlying;
    const int M = k.num_morphisms();
    const PreTrack& p = x.pre;

    // sigma^{-1} per morphism.
    std::vector<std::vector<int>> unsig(M);
    for (int f = 0; f < M; ++f) {
        unsig[f].assign(p.g.at(f).order, -1);
        for (int a = 0; a < t.tcount(f, f); ++a) unsig[f][x.sigma[f][a]] = a;
    }

    CocycleTriple z;
    z.xi.assign(M * M * M, -1);
    z.chi.assign(M * M * M * M, -1);
    z.phi.resize(M * M);
    auto H = [&](int f, int g) { return h.h[f * M + g]; };

    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (!detail::phi_typed(p, g, f)) continue;
            // phi_{g,f}(t) = H(f,g) + t - H(f,g)
            GroupHom ph;
            ph.map.resize(p.g.at(g).order);
            for (int e = 0; e < p.g.at(g).order; ++e) {
                int tt = unsig[g][e];
                int conj = t.vadd(f, g, g, H(f, g), tt);
                conj = t.vadd(f, g, f, conj, t.vinverse(f, g, H(f, g)));
                ph.map[e] = x.sigma[f][conj];
            }
            z.phi[g * M + f] = std::move(ph);

            for (int e = 0; e < M; ++e) {
                if (!detail::xi_typed(p, f, g, e)) continue;
                int sum = t.vadd(f, g, e, H(f, g), H(g, e));
                int negxi = t.vadd(f, e, f, sum, t.vinverse(f, e, H(f, e)));
                z.xi[detail::xi_key(M, f, g, e)] = x.sigma[f][t.vinverse(f, f, negxi)];
            }
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b) {
                    if (!detail::chi_typed(p, f, g, a, b)) continue;
                    int af = k.compose(a, f), ag = k.compose(a, g), bg = k.compose(b, g);
                    int w1 = t.whisker_left(a, f, g, H(f, g));
                    int w2 = t.whisker_right(a, b, g, H(a, b));
                    int sum = t.vadd(af, ag, bg, w1, w2);
                    int negchi = t.vadd(af, bg, af, sum, t.vinverse(af, bg, H(af, bg)));
                    z.chi[detail::chi_key(M, f, g, a, b)] =
                        x.sigma[af][t.vinverse(af, af, negchi)];
                }
        }
    return z;
}

/// The inverse construction of the classification: realizes a validated
/// cocycle as a (pi, G)-track category with T(f,g) = G_f, vertical
/// composition (a, f, g) + (b, g, h) = (a + phi_{g,f}(b) - xi(f,g,h), f, h)
/// and whiskerings twisted by chi. sigma is the identity table.
inline PiGTrack build_track(const PreTrack& p, const CocycleTriple& z) {
    {
        auto rep = validate_cocycle(p, z);
        if (!rep.ok()) throw MathError("build_track: cocycle fails validation", rep);
    }
    const auto& k = p.k();
    const int M = k.num_morphisms();
    PiGTrack out;
    out.pre = p;
    TrackCategory& t = out.track;
    t.underlying = k;
    t.track_count.assign(M * M, 0);
    t.vcomp.resize(M * M * M);
    t.vneg.resize(M * M);
    t.vzero.assign(M, 0);
    t.lwhisk.resize(M * M * M);
    t.rwhisk.resize(M * M * M);
    out.sigma.resize(M);

    for (int f = 0; f < M; ++f) {
        out.sigma[f].resize(p.g.at(f).order);
        for (int e = 0; e < p.g.at(f).order; ++e) out.sigma[f][e] = e;
        for (int g = 0; g < M; ++g)
            if (detail::phi_typed(p, f, g)) t.track_count[t.pk(f, g)] = p.g.at(f).order;
    }
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (t.tcount(f, g) == 0) continue;
            const FiniteGroup& gf = p.g.at(f);
            // vneg via phi_{g,f}^{-1}(-a).
            GroupHom inv = invert_hom(z.phi[g * M + f], gf.order);
            auto& neg = t.vneg[t.pk(f, g)];
            neg.resize(gf.order);
            for (int a = 0; a < gf.order; ++a) neg[a] = inv(gf.neg[a]);
            for (int h = 0; h < M; ++h) {
                if (t.tcount(g, h) == 0 || !k.parallel(g, h)) continue;
                auto& tab = t.vcomp[t.tk(f, g, h)];
                const int ngh = p.g.at(g).order;
                tab.resize(gf.order * ngh);
                int xv = z.xi[detail::xi_key(M, f, g, h)];
                for (int a = 0; a < gf.order; ++a)
                    for (int b = 0; b < ngh; ++b)
                        tab[a * ngh + b] =
                            gf.plus(gf.plus(a, z.phi[g * M + f](b)), gf.neg[xv]);
            }
            for (int a = 0; a < M; ++a) {
                if (k.composable(a, f)) {
                    int af = k.compose(a, f);
                    const FiniteGroup& gaf = p.g.at(af);
                    const GroupHom& push = p.g.push_map(a, f);
                    int cv = z.chi[detail::chi_key(M, f, g, a, a)];
                    auto& tab = t.lwhisk[t.tk(a, f, g)];
                    tab.resize(gf.order);
                    for (int v = 0; v < gf.order; ++v)
                        tab[v] = gaf.plus(push(v), gaf.neg[cv]);
                }
                if (k.composable(f, a)) {
                    int fa = k.compose(f, a);
                    const FiniteGroup& gfa = p.g.at(fa);
                    const GroupHom& pull = p.g.pull_map(f, a);
                    int cv = z.chi[detail::chi_key(M, a, a, f, g)];
                    auto& tab = t.rwhisk[t.tk(f, g, a)];
                    tab.resize(gf.order);
                    for (int v = 0; v < gf.order; ++v)
                        tab[v] = gfa.plus(pull(v), gfa.neg[cv]);
                }
            }
        }
    return out;
}

/// Result of enumerating every normalized cocycle triple on a pre-track.
struct EnumerationResult {
    std::vector<CocycleTriple> cocycles;
    std::uint64_t nodes = 0;
};

namespace detail {

inline EnumerationResult enumerate_cocycles_counted(const PreTrack& p, SearchCounter& counter) {
    const int M = p.k().num_morphisms();
    EnumerationResult res;
    CocycleVars vars = CocycleVars::build(p);
    const int nv = static_cast<int>(vars.vars.size());

    // Domains: isomorphism lists for phi variables, group orders otherwise.
    std::vector<std::vector<GroupHom>> phi_domain(nv);
    std::vector<int> domain_size(nv);
    for (int i = 0; i < nv; ++i) {
        auto [kind, key] = vars.vars[i];
        if (kind == 0) {
            int g = key / M, f = key % M;
            phi_domain[i] = enumerate_isomorphisms(p.g.at(g), p.g.at(f));
            domain_size[i] = static_cast<int>(phi_domain[i].size());
            if (domain_size[i] == 0) return res;  // no isomorphism, no cocycles
        } else {
            int f = kind == 1 ? key / (M * M) : key / (M * M * M);
            domain_size[i] = p.g.at(f).order;
        }
    }

    // Equation instances bucketed at the last variable they depend on.
    std::vector<std::vector<EqInstance>> bucket(nv);
    std::vector<EqInstance> ground;
    std::vector<int> deps;
    for (const auto& inst : collect_instances(p)) {
        instance_deps(p, vars, inst, deps);
        int last = -1;
        for (int d : deps)
            if (d > last) last = d;
        if (last < 0)
            ground.push_back(inst);
        else
            bucket[last].push_back(inst);
    }

    CocycleTriple z = zero_cocycle(p);
    for (const auto& inst : ground)
        if (!eval_eq(p, z, inst)) return res;  // forced entries already inconsistent

    auto dfs = [&](auto&& self, int pos) -> void {
        if (pos == nv) {
            res.cocycles.push_back(z);
            return;
        }
        auto [kind, key] = vars.vars[pos];
        for (int v = 0; v < domain_size[pos]; ++v) {
            counter.tick();
            if (kind == 0)
                z.phi[key] = phi_domain[pos][v];
            else if (kind == 1)
                z.xi[key] = v;
            else
                z.chi[key] = v;
            bool okay = true;
            for (const auto& inst : bucket[pos])
                if (!eval_eq(p, z, inst)) {
                    okay = false;
                    break;
                }
            if (okay) self(self, pos + 1);
        }
        // restore the canonical base value for lower siblings
        if (kind == 0)
            z.phi[key] = phi_domain[pos][0];
        else if (kind == 1)
            z.xi[key] = 0;
        else
            z.chi[key] = 0;
    };
    dfs(dfs, 0);
    res.nodes = counter.nodes;
    return res;
}

}  // namespace detail

/// Enumerates all normalized cocycle triples over p by backtracking in the
/// order phi, xi, chi, pruning each equation family as soon as its
/// arguments are bound. Output is in lexicographic enumeration order.
inline EnumerationResult enumerate_cocycles(const PreTrack& p, const Budget& budget = {}) {
    detail::SearchCounter counter{budget};
    return detail::enumerate_cocycles_counted(p, counter);
}

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t candidates = 0;
    std::uint64_t equivalence_checks = 0;
};

struct ClassificationResult {
    int class_count = 0;
    std::vector<CocycleTriple> representatives;  // lexicographically least per class
    SearchStats stats;
};

/// Computes H^2(pi, G) by enumeration: all normalized triples, partitioned
/// by are_cohomologous with a union-find over pairwise witnesses. Results
/// are deterministic; representatives are the least triple of each class.
inline ClassificationResult classify(const PreTrack& p, const Budget& budget = {}) {
    {
        auto rep = validate_pre_track(p);
        if (!rep.ok()) throw MathError("classify: pre-track fails validation", rep);
    }
    detail::SearchCounter counter{budget};
    EnumerationResult enumd = detail::enumerate_cocycles_counted(p, counter);
    const int n = static_cast<int>(enumd.cocycles.size());

    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    ClassificationResult out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            ++out.stats.equivalence_checks;
            if (detail::are_cohomologous_counted(p, enumd.cocycles[i], enumd.cocycles[j],
                                                 counter))
                parent[find(j)] = find(i);
        }
    std::vector<int> root_rep(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_rep[r] < 0 || enumd.cocycles[i] < enumd.cocycles[root_rep[r]]) root_rep[r] = i;
    }
    for (int i = 0; i < n; ++i)
        if (root_rep[i] >= 0 && find(i) == i)
            out.representatives.push_back(enumd.cocycles[root_rep[i]]);
    std::sort(out.representatives.begin(), out.representatives.end());
    out.class_count = static_cast<int>(out.representatives.size());
    out.stats.nodes = counter.nodes;
    out.stats.candidates = n;
    return out;
}

}  // namespace tracat
