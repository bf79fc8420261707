#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tracat/fincat.hpp"
#include "tracat/fingroup.hpp"
#include "tracat/natsys.hpp"
#include "tracat/validation.hpp"

namespace tracat {

/// A track category over a fixed finite underlying category.
///
/// Hom-groupoids are stored as tables. Tracks between a parallel pair
/// (f, g) are local ids 0..tcount(f,g)-1; a track is globally the triple
/// (f, g, id). Vertical composition is written in diagrammatic order:
/// vadd(f,g,h, a, b) is the paper's a + b for a: f => g, b: g => h.
/// whisker_left(a, f, g, -) is a_* and whisker_right(f, g, b, -) is b^*.
struct TrackCategory {
    FiniteCategory underlying;
    std::vector<int> track_count;            // f*M+g -> |T(f,g)|  (0 = empty)
    std::vector<std::vector<int>> vcomp;     // (f*M+g)*M+h -> row-major a*n_gh+b
    std::vector<std::vector<int>> vneg;      // f*M+g -> per track -> id in T(g,f)
    std::vector<int> vzero;                  // f -> id of 0_f in T(f,f)
    std::vector<std::vector<int>> lwhisk;    // (a*M+f)*M+g -> per track -> id in T(af,ag)
    std::vector<std::vector<int>> rwhisk;    // (f*M+g)*M+b -> per track -> id in T(fb,gb)

    int M() const { return underlying.num_morphisms(); }
    int pk(int f, int g) const { return f * M() + g; }
    int tk(int f, int g, int h) const { return (f * M() + g) * M() + h; }

    int tcount(int f, int g) const { return track_count[pk(f, g)]; }
    int zero(int f) const { return vzero[f]; }
    int vadd(int f, int g, int h, int a, int b) const {
        return vcomp[tk(f, g, h)][a * tcount(g, h) + b];
    }
    int vinverse(int f, int g, int a) const { return vneg[pk(f, g)][a]; }
    int whisker_left(int a, int f, int g, int t) const { return lwhisk[tk(a, f, g)][t]; }
    int whisker_right(int f, int g, int b, int t) const { return rwhisk[tk(f, g, b)][t]; }

    friend bool operator==(const TrackCategory&, const TrackCategory&) = default;
};

/// g_*(alpha) + f1^*(alpha1) for alpha: f => f1 and alpha1: g => g1 with
/// g after f composable; by TR9 this equals f^*(alpha1) + g1_*(alpha).
inline int horizontal_composite(const TrackCategory& t, int f, int f1, int alpha, int g,
                                int g1, int alpha1) {
    const auto& k = t.underlying;
    int gf = k.compose(g, f), gf1 = k.compose(g, f1), g1f1 = k.compose(g1, f1);
    return t.vadd(gf, gf1, g1f1, t.whisker_left(g, f, f1, alpha),
                  t.whisker_right(g, g1, f1, alpha1));
}

/// The track category with only identity tracks.
inline TrackCategory discrete_track_category(const FiniteCategory& k) {
    TrackCategory t;
    t.underlying = k;
    const int m = k.num_morphisms();
    t.track_count.assign(m * m, 0);
    t.vcomp.resize(m * m * m);
    t.vneg.resize(m * m);
    t.vzero.assign(m, 0);
    t.lwhisk.resize(m * m * m);
    t.rwhisk.resize(m * m * m);
    for (int f = 0; f < m; ++f) {
        t.track_count[t.pk(f, f)] = 1;
        t.vcomp[t.tk(f, f, f)] = {0};
        t.vneg[t.pk(f, f)] = {0};
    }
    for (int a = 0; a < m; ++a)
        for (int f = 0; f < m; ++f) {
            if (k.composable(a, f)) t.lwhisk[t.tk(a, f, f)] = {0};
            if (k.composable(f, a)) t.rwhisk[t.tk(f, f, a)] = {0};
        }
    return t;
}

namespace detail {

inline int thread_cap() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int cap = hw < 8 ? hw : 8;
    if (const char* env = std::getenv("TRACAT_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1 && v < cap) cap = v;
        if (v == 1) cap = 1;
    }
    return cap;
}

// Splits [0, n) into contiguous blocks checked on worker threads; per-block
// reports are merged in block order, so the result is identical to a
// sequential scan regardless of scheduling.
template <class Fn>
inline void blocked_scan(int n, bool engage_threads, ValidationReport& rep, Fn&& fn) {
    int workers = engage_threads ? thread_cap() : 1;
    if (workers <= 1 || n < 2 * workers) {
        fn(0, n, rep);
        return;
    }
    std::vector<ValidationReport> parts(workers);
    std::vector<std::thread> pool;
    int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        int lo = w * chunk, hi = (w + 1) * chunk < n ? (w + 1) * chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, w] { fn(lo, hi, parts[w]); });
    }
    for (auto& th : pool) th.join();
    for (auto& p : parts) rep.merge(p);
}

}  // namespace detail

/// Exhaustive check of the groupoid axioms and TR1-TR9 on all typed tuples.
/// Each violation is reported with its axiom label and a witness.
inline ValidationReport validate_track_category(const TrackCategory& t) {
    ValidationReport rep = validate_category(t.underlying);
    if (!rep.ok()) return rep;
    const auto& k = t.underlying;
    const int m = k.num_morphisms();
    if (static_cast<int>(t.track_count.size()) != m * m ||
        static_cast<int>(t.vcomp.size()) != m * m * m ||
        static_cast<int>(t.vneg.size()) != m * m || static_cast<int>(t.vzero.size()) != m ||
        static_cast<int>(t.lwhisk.size()) != m * m * m ||
        static_cast<int>(t.rwhisk.size()) != m * m * m) {
        rep.add_structural("dimension", "track table sizes do not match underlying category");
        return rep;
    }

    auto nm = [&](int f) { return k.mname(f); };

    // -- structural pass ----------------------------------------------------
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (t.tcount(f, g) < 0)
                rep.add_structural("range", "negative track count at (" + nm(f) + "," + nm(g) + ")");
            if (t.tcount(f, g) > 0 && !k.parallel(f, g))
                rep.add_structural("typing", "tracks between non-parallel (" + nm(f) + "," + nm(g) + ")");
        }
    for (int f = 0; f < m; ++f) {
        if (t.tcount(f, f) < 1)
            rep.add_structural("missing", "T(" + nm(f) + "," + nm(f) + ") has no identity track");
        else if (t.vzero[f] < 0 || t.vzero[f] >= t.tcount(f, f))
            rep.add_structural("range", "vzero at " + nm(f));
    }
    if (!rep.ok()) return rep;

    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            const int nfg = t.tcount(f, g);
            const auto& neg = t.vneg[t.pk(f, g)];
            if (nfg == 0) {
                if (!neg.empty())
                    rep.add_structural("typing", "vneg on empty T(" + nm(f) + "," + nm(g) + ")");
            } else {
                if (t.tcount(g, f) == 0)
                    rep.add_structural("missing",
                                       "T(" + nm(g) + "," + nm(f) + ") empty but reverse is not");
                else if (static_cast<int>(neg.size()) != nfg)
                    rep.add_structural("dimension", "vneg at (" + nm(f) + "," + nm(g) + ")");
                else
                    for (int a = 0; a < nfg; ++a)
                        if (neg[a] < 0 || neg[a] >= t.tcount(g, f)) {
                            rep.add_structural("range", "vneg at (" + nm(f) + "," + nm(g) + ")");
                            break;
                        }
            }
            for (int h = 0; h < m; ++h) {
                const auto& tab = t.vcomp[t.tk(f, g, h)];
                bool typed = k.parallel(f, g) && k.parallel(g, h) && t.tcount(f, g) > 0 &&
                             t.tcount(g, h) > 0;
                if (!typed) {
                    if (!tab.empty())
                        rep.add_structural("typing", "vcomp at (" + nm(f) + "," + nm(g) + "," +
                                                         nm(h) + ") not typed");
                    continue;
                }
                if (t.tcount(f, h) == 0) {
                    rep.add_structural("missing", "vcomp target T(" + nm(f) + "," + nm(h) + ") empty");
                    continue;
                }
                if (static_cast<int>(tab.size()) != t.tcount(f, g) * t.tcount(g, h)) {
                    rep.add_structural("dimension",
                                       "vcomp at (" + nm(f) + "," + nm(g) + "," + nm(h) + ")");
                    continue;
                }
                for (int v : tab)
                    if (v < 0 || v >= t.tcount(f, h)) {
                        rep.add_structural("range",
                                           "vcomp at (" + nm(f) + "," + nm(g) + "," + nm(h) + ")");
                        break;
                    }
            }
        }
    for (int a = 0; a < m; ++a)
        for (int f = 0; f < m; ++f)
            for (int g = 0; g < m; ++g) {
                const auto& lt = t.lwhisk[t.tk(a, f, g)];
                bool ltyped = k.composable(a, f) && k.parallel(f, g) && t.tcount(f, g) > 0;
                if (!ltyped) {
                    if (!lt.empty())
                        rep.add_structural("typing", "lwhisk at (" + nm(a) + "|" + nm(f) + "," +
                                                         nm(g) + ") not typed");
                } else {
                    int af = k.compose(a, f), ag = k.compose(a, g);
                    if (t.tcount(af, ag) == 0)
                        rep.add_structural("missing",
                                           "lwhisk target T(" + nm(af) + "," + nm(ag) + ") empty");
                    else if (static_cast<int>(lt.size()) != t.tcount(f, g))
                        rep.add_structural("dimension", "lwhisk at (" + nm(a) + "|" + nm(f) + "," +
                                                            nm(g) + ")");
                    else
                        for (int v : lt)
                            if (v < 0 || v >= t.tcount(af, ag)) {
                                rep.add_structural("range", "lwhisk at (" + nm(a) + "|" + nm(f) +
                                                                "," + nm(g) + ")");
                                break;
                            }
                }
                const auto& rt = t.rwhisk[t.tk(f, g, a)];
                bool rtyped = k.composable(f, a) && k.parallel(f, g) && t.tcount(f, g) > 0;
                if (!rtyped) {
                    if (!rt.empty())
                        rep.add_structural("typing", "rwhisk at (" + nm(f) + "," + nm(g) + "|" +
                                                         nm(a) + ") not typed");
                } else {
                    int fa = k.compose(f, a), ga = k.compose(g, a);
                    if (t.tcount(fa, ga) == 0)
                        rep.add_structural("missing",
                                           "rwhisk target T(" + nm(fa) + "," + nm(ga) + ") empty");
                    else if (static_cast<int>(rt.size()) != t.tcount(f, g))
                        rep.add_structural("dimension", "rwhisk at (" + nm(f) + "," + nm(g) + "|" +
                                                            nm(a) + ")");
                    else
                        for (int v : rt)
                            if (v < 0 || v >= t.tcount(fa, ga)) {
                                rep.add_structural("range", "rwhisk at (" + nm(f) + "," + nm(g) +
                                                                "|" + nm(a) + ")");
                                break;
                            }
                }
            }
    if (!rep.ok()) return rep;

    // -- axiom pass ----------------------------------------------------------
    // Work is split over the first morphism index; TRACAT_THREADS caps the
    // worker count and the merged report is scan-ordered either way.
    long long total_tracks = 0;
    for (int v : t.track_count) total_tracks += v;
    bool engage = total_tracks * total_tracks * m > (1 << 22);

    detail::blocked_scan(m, engage, rep, [&](int lo, int hi, ValidationReport& out) {
        auto wit2 = [&](int f, int g, int a) {
            return "(" + nm(f) + "," + nm(g) + ")#" + std::to_string(a);
        };
        for (int f = lo; f < hi; ++f) {
            for (int g = 0; g < m; ++g) {
                const int nfg = t.tcount(f, g);
                if (nfg == 0) continue;
                // TR2 and groupoid inverses.
                for (int a = 0; a < nfg; ++a) {
                    if (t.vadd(f, g, g, a, t.zero(g)) != a)
                        out.add_axiom("TR2", wit2(f, g, a) + "+0");
                    if (t.vadd(f, f, g, t.zero(f), a) != a)
                        out.add_axiom("TR2", "0+" + wit2(f, g, a));
                    int na = t.vinverse(f, g, a);
                    if (t.vadd(f, g, f, a, na) != t.zero(f) ||
                        t.vadd(g, f, g, na, a) != t.zero(g))
                        out.add_axiom("groupoid-inverse", wit2(f, g, a));
                }
                // TR5 and TR6/TR7 identity whiskers.
                if (f == g) {
                    for (int a2 = 0; a2 < m; ++a2) {
                        if (k.composable(a2, f) &&
                            t.whisker_left(a2, f, f, t.zero(f)) != t.zero(k.compose(a2, f)))
                            out.add_axiom("TR5", "(" + nm(a2) + "|" + nm(f) + ")");
                        if (k.composable(f, a2) &&
                            t.whisker_right(f, f, a2, t.zero(f)) != t.zero(k.compose(f, a2)))
                            out.add_axiom("TR5", "(" + nm(f) + "|" + nm(a2) + ")");
                    }
                }
                for (int a = 0; a < nfg; ++a) {
                    if (t.whisker_left(k.identity[k.tgt(f)], f, g, a) != a)
                        out.add_axiom("TR7", "id whisker " + wit2(f, g, a));
                    if (t.whisker_right(f, g, k.identity[k.src(f)], a) != a)
                        out.add_axiom("TR6", "id whisker " + wit2(f, g, a));
                }
                for (int h = 0; h < m; ++h) {
                    const int ngh = t.tcount(g, h);
                    if (ngh == 0 || !k.parallel(g, h)) continue;
                    // TR1 over all composable track triples.
                    for (int e = 0; e < m; ++e) {
                        const int nhe = t.tcount(h, e);
                        if (nhe == 0 || !k.parallel(h, e)) continue;
                        for (int a = 0; a < nfg; ++a)
                            for (int b = 0; b < ngh; ++b)
                                for (int cc = 0; cc < nhe; ++cc)
                                    if (t.vadd(f, h, e, t.vadd(f, g, h, a, b), cc) !=
                                        t.vadd(f, g, e, a, t.vadd(g, h, e, b, cc)))
                                        out.add_axiom(
                                            "TR1", wit2(f, g, a) + "+" + wit2(g, h, b) + "+" +
                                                       wit2(h, e, cc));
                    }
                    // TR3 / TR4: whiskering is additive.
                    for (int w = 0; w < m; ++w) {
                        if (k.composable(w, f)) {
                            int wf = k.compose(w, f), wg = k.compose(w, g), wh = k.compose(w, h);
                            for (int a = 0; a < nfg; ++a)
                                for (int b = 0; b < ngh; ++b)
                                    if (t.whisker_left(w, f, h, t.vadd(f, g, h, a, b)) !=
                                        t.vadd(wf, wg, wh, t.whisker_left(w, f, g, a),
                                               t.whisker_left(w, g, h, b)))
                                        out.add_axiom("TR4", "(" + nm(w) + "|" + wit2(f, g, a) +
                                                                 "+" + wit2(g, h, b) + ")");
                        }
                        if (k.composable(f, w)) {
                            int fw = k.compose(f, w), gw = k.compose(g, w), hw = k.compose(h, w);
                            for (int a = 0; a < nfg; ++a)
                                for (int b = 0; b < ngh; ++b)
                                    if (t.whisker_right(f, h, w, t.vadd(f, g, h, a, b)) !=
                                        t.vadd(fw, gw, hw, t.whisker_right(f, g, w, a),
                                               t.whisker_right(g, h, w, b)))
                                        out.add_axiom("TR3", "(" + wit2(f, g, a) + "+" +
                                                                 wit2(g, h, b) + "|" + nm(w) + ")");
                        }
                    }
                }
                // TR6 / TR7 composites and TR8.
                for (int w = 0; w < m; ++w) {
                    if (k.composable(w, f)) {
                        int wf = k.compose(w, f), wg = k.compose(w, g);
                        for (int w1 = 0; w1 < m; ++w1)
                            if (k.composable(w1, w)) {
                                int w1w = k.compose(w1, w);
                                for (int a = 0; a < nfg; ++a)
                                    if (t.whisker_left(w1w, f, g, a) !=
                                        t.whisker_left(w1, wf, wg, t.whisker_left(w, f, g, a)))
                                        out.add_axiom("TR7", "(" + nm(w1) + nm(w) + "|" +
                                                                 wit2(f, g, a) + ")");
                            }
                        for (int b = 0; b < m; ++b)
                            if (k.composable(f, b)) {
                                int fb = k.compose(f, b), gb = k.compose(g, b);
                                for (int a = 0; a < nfg; ++a)
                                    if (t.whisker_left(w, fb, gb, t.whisker_right(f, g, b, a)) !=
                                        t.whisker_right(wf, wg, b, t.whisker_left(w, f, g, a)))
                                        out.add_axiom("TR8", "(" + nm(w) + "|" + wit2(f, g, a) +
                                                                 "|" + nm(b) + ")");
                            }
                    }
                    if (k.composable(f, w)) {
                        int fw = k.compose(f, w), gw = k.compose(g, w);
                        for (int w1 = 0; w1 < m; ++w1)
                            if (k.composable(w, w1)) {
                                int ww1 = k.compose(w, w1);
                                for (int a = 0; a < nfg; ++a)
                                    if (t.whisker_right(f, g, ww1, a) !=
                                        t.whisker_right(fw, gw, w1, t.whisker_right(f, g, w, a)))
                                        out.add_axiom("TR6", "(" + wit2(f, g, a) + "|" + nm(w) +
                                                                 nm(w1) + ")");
                            }
                    }
                }
                // TR9 interchange with every same-class pair downstream.
                for (int g2 = 0; g2 < m; ++g2) {
                    if (!k.composable(g2, f)) continue;
                    for (int g3 = 0; g3 < m; ++g3) {
                        if (!k.parallel(g2, g3) || t.tcount(g2, g3) == 0) continue;
                        int af = k.compose(g2, f), ag = k.compose(g2, g), bf = k.compose(g3, f),
                            bg = k.compose(g3, g);
                        for (int a = 0; a < nfg; ++a)
                            for (int u = 0; u < t.tcount(g2, g3); ++u)
                                if (t.vadd(af, ag, bg, t.whisker_left(g2, f, g, a),
                                           t.whisker_right(g2, g3, g, u)) !=
                                    t.vadd(af, bf, bg, t.whisker_right(g2, g3, f, u),
                                           t.whisker_left(g3, f, g, a)))
                                    out.add_axiom("TR9", wit2(f, g, a) + "*" + wit2(g2, g3, u));
                    }
                }
            }
        }
    });
    return rep;
}

/// Quotient by the homotopy relation f ~ g iff T(f,g) is nonempty.
/// Returns the projection onto the homotopy category; throws MathError if
/// the relation read off the tables is not an equivalence or not a
/// congruence for composition.
inline QuotientFunctor homotopy_category(const TrackCategory& t) {
    const auto& k = t.underlying;
    const int m = k.num_morphisms();
    ValidationReport rep;
    auto related = [&](int f, int g) { return k.parallel(f, g) && t.tcount(f, g) > 0; };
    for (int f = 0; f < m; ++f) {
        if (t.tcount(f, f) < 1) rep.add_axiom("homotopy-reflexive", k.mname(f));
        for (int g = 0; g < m; ++g) {
            if (related(f, g) && !related(g, f))
                rep.add_axiom("homotopy-symmetric", detail::mtuple(k, {f, g}));
            for (int h = 0; h < m; ++h)
                if (related(f, g) && related(g, h) && !related(f, h))
                    rep.add_axiom("homotopy-transitive", detail::mtuple(k, {f, g, h}));
        }
    }
    if (!rep.ok()) throw MathError("homotopy relation is not an equivalence", rep);

    std::vector<int> cls(m, -1);
    std::vector<int> reps;
    for (int f = 0; f < m; ++f) {
        if (cls[f] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(f);
        for (int g = f; g < m; ++g)
            if (related(f, g)) cls[g] = id;
    }

    FiniteCategory c;
    c.num_objects = k.num_objects;
    c.object_names = k.object_names;
    for (int r : reps) {
        c.morphisms.push_back({k.src(r), k.tgt(r)});
        c.morphism_names.push_back("q_" + k.mname(r));
    }
    c.identity.resize(k.num_objects);
    for (int i = 0; i < k.num_objects; ++i) c.identity[i] = cls[k.identity[i]];
    const int mc = static_cast<int>(reps.size());
    c.compose_table.assign(mc * mc, -1);
    // Composition on classes, checked to be independent of representatives.
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (!k.composable(g, f)) continue;
            int key = cls[g] * mc + cls[f];
            int val = cls[k.compose(g, f)];
            if (c.compose_table[key] == -1)
                c.compose_table[key] = val;
            else if (c.compose_table[key] != val)
                rep.add_axiom("homotopy-congruence", detail::mtuple(k, {g, f}));
        }
    if (!rep.ok()) throw MathError("homotopy relation is not a congruence", rep);

    QuotientFunctor q;
    q.src = k;
    q.dst = std::move(c);
    q.map = std::move(cls);
    return q;
}

/// The natural system f -> T(f,f) of automorphism groups of a validated
/// track category, with whiskerings as the structure maps. Track ids are
/// relabelled so the identity track becomes element 0.
inline NaturalSystem aut_natural_system(const TrackCategory& t) {
    const auto& k = t.underlying;
    const int m = k.num_morphisms();
    NaturalSystem d;
    d.groups.resize(m);
    d.push.resize(m * m);
    d.pull.resize(m * m);

    // relabel[f][track id] = group element index; zero track -> 0.
    std::vector<std::vector<int>> relabel(m);
    std::vector<std::vector<int>> unlabel(m);
    for (int f = 0; f < m; ++f) {
        const int n = t.tcount(f, f);
        relabel[f].assign(n, -1);
        unlabel[f].assign(n, -1);
        relabel[f][t.zero(f)] = 0;
        unlabel[f][0] = t.zero(f);
        int next = 1;
        for (int a = 0; a < n; ++a)
            if (a != t.zero(f)) {
                relabel[f][a] = next;
                unlabel[f][next] = a;
                ++next;
            }
        FiniteGroup& g = d.groups[f];
        g.order = n;
        g.add.resize(n * n);
        g.neg.resize(n);
        for (int x = 0; x < n; ++x) {
            g.neg[x] = relabel[f][t.vinverse(f, f, unlabel[f][x])];
            for (int y = 0; y < n; ++y)
                g.add[x * n + y] = relabel[f][t.vadd(f, f, f, unlabel[f][x], unlabel[f][y])];
        }
    }
    for (int a = 0; a < m; ++a)
        for (int f = 0; f < m; ++f) {
            if (k.composable(a, f)) {
                int af = k.compose(a, f);
                GroupHom h;
                h.map.resize(t.tcount(f, f));
                for (int x = 0; x < t.tcount(f, f); ++x)
                    h.map[x] = relabel[af][t.whisker_left(a, f, f, unlabel[f][x])];
                d.push[a * m + f] = std::move(h);
            }
            if (k.composable(f, a)) {
                int fa = k.compose(f, a);
                GroupHom h;
                h.map.resize(t.tcount(f, f));
                for (int x = 0; x < t.tcount(f, f); ++x)
                    h.map[x] = relabel[fa][t.whisker_right(f, f, a, unlabel[f][x])];
                d.pull[f * m + a] = std::move(h);
            }
        }
    return d;
}

/// A pre-track category: a homotopy projection pi : K -> C together with a
/// centralised natural system G on K.
struct PreTrack {
    QuotientFunctor pi;
    NaturalSystem g;

    const FiniteCategory& k() const { return pi.src; }
    const FiniteCategory& c() const { return pi.dst; }
    bool same_class(int f, int h) const { return pi.map[f] == pi.map[h]; }

    friend bool operator==(const PreTrack&, const PreTrack&) = default;
};

inline ValidationReport validate_pre_track(const QuotientFunctor& pi, const NaturalSystem& g) {
    ValidationReport rep = validate_quotient(pi);
    if (!rep.ok()) return rep;
    rep.merge(is_centralised(pi.src, g));
    return rep;
}

inline ValidationReport validate_pre_track(const PreTrack& p) {
    return validate_pre_track(p.pi, p.g);
}

/// A (pi, G)-track category: a track category over K whose homotopy
/// relation realizes pi, plus the identification sigma of Aut groups with G.
struct PiGTrack {
    TrackCategory track;
    PreTrack pre;
    std::vector<std::vector<int>> sigma;  // f -> per track in T(f,f) -> element of G_f

    friend bool operator==(const PiGTrack&, const PiGTrack&) = default;
};

/// Checks the components, the condition pi(f) = pi(g) iff T(f,g) nonempty,
/// and that sigma is an isomorphism of natural systems Aut^T -> G.
inline ValidationReport validate_pi_g_track(const PiGTrack& x) {
    ValidationReport rep = validate_pre_track(x.pre);
    rep.merge(validate_track_category(x.track));
    if (!rep.ok()) return rep;
    const auto& k = x.track.underlying;
    const int m = k.num_morphisms();
    if (!k.same_tables(x.pre.k()) || k.morphism_names != x.pre.k().morphism_names) {
        rep.add_structural("underlying", "track category and pre-track disagree on K");
        return rep;
    }
    if (static_cast<int>(x.sigma.size()) != m) {
        rep.add_structural("dimension", "sigma table size");
        return rep;
    }
    for (int f = 0; f < m; ++f) {
        if (static_cast<int>(x.sigma[f].size()) != x.track.tcount(f, f)) {
            rep.add_structural("dimension", "sigma at " + k.mname(f));
            return rep;
        }
        for (int v : x.sigma[f])
            if (v < 0 || v >= x.pre.g.at(f).order) {
                rep.add_structural("range", "sigma at " + k.mname(f));
                return rep;
            }
    }

    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (!k.parallel(f, g)) continue;
            bool same = x.pre.same_class(f, g);
            bool tracks = x.track.tcount(f, g) > 0;
            if (same != tracks) rep.add_axiom("pi-iff", detail::mtuple(k, {f, g}));
        }

    for (int f = 0; f < m; ++f) {
        const FiniteGroup& gf = x.pre.g.at(f);
        const int n = x.track.tcount(f, f);
        std::vector<int> hit(gf.order, 0);
        bool bij = (n == gf.order);
        for (int a = 0; bij && a < n; ++a) {
            if (hit[x.sigma[f][a]]) bij = false;
            hit[x.sigma[f][a]] = 1;
        }
        if (!bij) {
            rep.add_axiom("sigma-iso", k.mname(f) + " not bijective");
            continue;
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (x.sigma[f][x.track.vadd(f, f, f, a, b)] !=
                    gf.plus(x.sigma[f][a], x.sigma[f][b])) {
                    rep.add_axiom("sigma-iso", k.mname(f) + " not a homomorphism");
                    goto next_f;
                }
    next_f:;
    }
    if (!rep.ok()) return rep;

    for (int a = 0; a < m; ++a)
        for (int f = 0; f < m; ++f) {
            if (k.composable(a, f)) {
                int af = k.compose(a, f);
                const GroupHom& h = x.pre.g.push_map(a, f);
                for (int v = 0; v < x.track.tcount(f, f); ++v)
                    if (x.sigma[af][x.track.whisker_left(a, f, f, v)] != h(x.sigma[f][v])) {
                        rep.add_axiom("sigma-push", detail::mtuple(k, {a, f}));
                        break;
                    }
            }
            if (k.composable(f, a)) {
                int fa = k.compose(f, a);
                const GroupHom& h = x.pre.g.pull_map(f, a);
                for (int v = 0; v < x.track.tcount(f, f); ++v)
                    if (x.sigma[fa][x.track.whisker_right(f, f, a, v)] != h(x.sigma[f][v])) {
                        rep.add_axiom("sigma-pull", detail::mtuple(k, {f, a}));
                        break;
                    }
            }
        }
    return rep;
}

/// Witness for an equivalence of (pi, G)-track categories: the track maps
/// of a track functor that is the identity on the underlying category.
struct TrackFunctorWitness {
    std::vector<std::vector<int>> map;  // f*M+g -> per track id of x -> track id of y
};

namespace detail {

inline bool witness_preserves(const PiGTrack& x, const PiGTrack& y,
                              const std::vector<std::vector<int>>& F) {
    const auto& k = x.track.underlying;
    const int m = k.num_morphisms();
    for (int f = 0; f < m; ++f) {
        if (x.track.tcount(f, f) > 0 && F[x.track.pk(f, f)][x.track.zero(f)] != y.track.zero(f))
            return false;
        for (int g = 0; g < m; ++g) {
            const int nfg = x.track.tcount(f, g);
            if (nfg == 0) continue;
            for (int a = 0; a < nfg; ++a) {
                if (F[x.track.pk(g, f)][x.track.vinverse(f, g, a)] !=
                    y.track.vinverse(f, g, F[x.track.pk(f, g)][a]))
                    return false;
                if (f == g && y.sigma[f][F[x.track.pk(f, f)][a]] != x.sigma[f][a]) return false;
            }
            for (int h = 0; h < m; ++h) {
                if (!k.parallel(g, h) || x.track.tcount(g, h) == 0) continue;
                for (int a = 0; a < nfg; ++a)
                    for (int b = 0; b < x.track.tcount(g, h); ++b)
                        if (F[x.track.pk(f, h)][x.track.vadd(f, g, h, a, b)] !=
                            y.track.vadd(f, g, h, F[x.track.pk(f, g)][a],
                                         F[x.track.pk(g, h)][b]))
                            return false;
            }
            for (int w = 0; w < m; ++w) {
                if (k.composable(w, f)) {
                    int wf = k.compose(w, f), wg = k.compose(w, g);
                    for (int a = 0; a < nfg; ++a)
                        if (F[x.track.pk(wf, wg)][x.track.whisker_left(w, f, g, a)] !=
                            y.track.whisker_left(w, f, g, F[x.track.pk(f, g)][a]))
                            return false;
                }
                if (k.composable(f, w)) {
                    int fw = k.compose(f, w), gw = k.compose(g, w);
                    for (int a = 0; a < nfg; ++a)
                        if (F[x.track.pk(fw, gw)][x.track.whisker_right(f, g, w, a)] !=
                            y.track.whisker_right(f, g, w, F[x.track.pk(f, g)][a]))
                            return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

/// Searches for a track functor F : x -> y over the identity of K with
/// sigma_y . F = sigma_x. F is forced on automorphism groups; the search
/// ranges over the images of one basepoint track per unordered pair, in
/// lexicographic order, so the returned witness is canonical.
inline std::optional<TrackFunctorWitness> are_equivalent_tracks(const PiGTrack& x,
                                                                const PiGTrack& y,
                                                                const Budget& budget = {}) {
    if (!(x.pre == y.pre))
        throw StructuralError("are_equivalent_tracks: pre-track contexts differ");
    const auto& k = x.track.underlying;
    const int m = k.num_morphisms();
    if (x.track.track_count != y.track.track_count) return std::nullopt;

    const int mm = m * m;
    std::vector<std::vector<int>> F(mm);
    // On Aut groups F is sigma_y^{-1} . sigma_x.
    for (int f = 0; f < m; ++f) {
        const int n = x.track.tcount(f, f);
        std::vector<int> inv(x.pre.g.at(f).order, -1);
        for (int a = 0; a < n; ++a) inv[y.sigma[f][a]] = a;
        auto& Ff = F[x.track.pk(f, f)];
        Ff.resize(n);
        for (int a = 0; a < n; ++a) {
            int img = inv[x.sigma[f][a]];
            if (img < 0) return std::nullopt;
            Ff[a] = img;
        }
    }

    std::vector<std::pair<int, int>> free_pairs;  // f < g with tracks
    for (int f = 0; f < m; ++f)
        for (int g = f + 1; g < m; ++g)
            if (x.track.tcount(f, g) > 0) free_pairs.push_back({f, g});

    detail::SearchCounter counter{budget};
    std::vector<int> choice(free_pairs.size(), 0);
    while (true) {
        counter.tick();
        // Extend the Aut-level map by the chosen basepoint images.
        for (std::size_t i = 0; i < free_pairs.size(); ++i) {
            auto [f, g] = free_pairs[i];
            const int nfg = x.track.tcount(f, g);
            auto& Ffg = F[x.track.pk(f, g)];
            auto& Fgf = F[x.track.pk(g, f)];
            Ffg.assign(nfg, -1);
            Fgf.assign(x.track.tcount(g, f), -1);
            int c = choice[i];
            for (int a = 0; a < nfg; ++a) {
                // a = basepoint 0 + t with t in Aut(g); F(a) = c + F(t).
                int tt = x.track.vadd(g, f, g, x.track.vinverse(f, g, 0), a);
                Ffg[a] = y.track.vadd(f, g, g, c, F[x.track.pk(g, g)][tt]);
            }
            for (int b = 0; b < x.track.tcount(g, f); ++b)
                Fgf[b] = y.track.vinverse(f, g, Ffg[x.track.vinverse(g, f, b)]);
        }
        if (detail::witness_preserves(x, y, F)) return TrackFunctorWitness{F};

        // Next choice vector in mixed radix, least significant pair first.
        std::size_t i = 0;
        for (; i < free_pairs.size(); ++i) {
            auto [f, g] = free_pairs[i];
            if (++choice[i] < y.track.tcount(f, g)) break;
            choice[i] = 0;
        }
        if (i == free_pairs.size()) return std::nullopt;
    }
}

}  // namespace tracat
