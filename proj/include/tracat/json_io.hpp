#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracat/cohomology.hpp"
#include "tracat/track.hpp"

// Canonical JSON envelopes for the five structure kinds. Every file is
// {"kind": ..., "version": 1, "data": ...}; keys inside tables are the
// string ids of morphisms joined with "," and "|". Serialization is
// canonical: sorted keys, integers only, trailing newline, so identical
// structures produce identical bytes.

namespace tracat::io {

using nlohmann::json;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline StructuralError err(const std::string& what) { return StructuralError("format: " + what); }

inline void expect_object(const json& j, const char* what) {
    if (!j.is_object()) throw err(std::string(what) + " must be an object");
}

inline void expect_keys(const json& j, const char* what, std::vector<std::string> required,
                        std::vector<std::string> optional = {}) {
    expect_object(j, what);
    for (const auto& k : required)
        if (!j.contains(k)) throw err(std::string(what) + " missing key \"" + k + "\"");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const auto& k : required) known = known || it.key() == k;
        for (const auto& k : optional) known = known || it.key() == k;
        if (!known) throw err(std::string(what) + " has unknown key \"" + it.key() + "\"");
    }
}

inline int to_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw err(std::string(what) + " must be an integer");
    return j.get<int>();
}

inline std::vector<int> to_int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw err(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(to_int(v, what));
    return out;
}

inline void check_name(const std::string& s) {
    if (s.empty()) throw err("empty id");
    if (s.find(',') != std::string::npos || s.find('|') != std::string::npos)
        throw err("id \"" + s + "\" may not contain ',' or '|'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

struct NameTable {
    std::map<std::string, int> index;

    int at(const std::string& s, const char* what) const {
        auto it = index.find(s);
        if (it == index.end()) throw err(std::string(what) + ": unknown id \"" + s + "\"");
        return it->second;
    }
};

inline NameTable names_of(const std::vector<std::string>& v) {
    NameTable t;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (t.index.count(v[i])) throw err("duplicate id \"" + v[i] + "\"");
        t.index[v[i]] = i;
    }
    return t;
}

}  // namespace detail

// ---- groups ---------------------------------------------------------------

inline json group_to_json(const FiniteGroup& g) {
    json add = json::array();
    for (int a = 0; a < g.order; ++a) {
        json row = json::array();
        for (int b = 0; b < g.order; ++b) row.push_back(g.plus(a, b));
        add.push_back(row);
    }
    return json{{"order", g.order}, {"add", add}, {"neg", g.neg}};
}

inline FiniteGroup group_from_json(const json& j) {
    detail::expect_keys(j, "group", {"order", "add", "neg"});
    FiniteGroup g;
    g.order = detail::to_int(j["order"], "order");
    if (g.order <= 0) throw detail::err("group order must be positive");
    if (!j["add"].is_array()) throw detail::err("add must be an array of rows");
    for (const auto& row : j["add"]) {
        auto r = detail::to_int_vector(row, "add row");
        if (static_cast<int>(r.size()) != g.order) throw detail::err("ragged add table");
        g.add.insert(g.add.end(), r.begin(), r.end());
    }
    if (static_cast<int>(g.add.size()) != g.order * g.order)
        throw detail::err("add table has wrong number of rows");
    g.neg = detail::to_int_vector(j["neg"], "neg");
    if (static_cast<int>(g.neg.size()) != g.order) throw detail::err("neg table size");
    for (int v : g.add)
        if (v < 0 || v >= g.order) throw detail::err("add entry out of range");
    for (int v : g.neg)
        if (v < 0 || v >= g.order) throw detail::err("neg entry out of range");
    return g;
}

// ---- categories -----------------------------------------------------------

inline json category_to_json(const FiniteCategory& c) {
    json morphs = json::array();
    for (int f = 0; f < c.num_morphisms(); ++f)
        morphs.push_back(json{{"id", c.mname(f)},
                              {"src", c.object_names[c.src(f)]},
                              {"tgt", c.object_names[c.tgt(f)]}});
    json idents = json::object();
    for (int i = 0; i < c.num_objects; ++i)
        idents[c.object_names[i]] = c.morphism_names[c.identity[i]];
    json comp = json::object();
    for (int g = 0; g < c.num_morphisms(); ++g)
        for (int f = 0; f < c.num_morphisms(); ++f)
            if (c.composable(g, f))
                comp[c.mname(g) + "," + c.mname(f)] = c.mname(c.compose(g, f));
    return json{{"objects", c.object_names},
                {"morphisms", morphs},
                {"identities", idents},
                {"compose", comp}};
}

inline FiniteCategory category_from_json(const json& j) {
    detail::expect_keys(j, "category", {"objects", "morphisms", "identities", "compose"});
    FiniteCategory c;
    if (!j["objects"].is_array()) throw detail::err("objects must be an array");
    for (const auto& o : j["objects"]) {
        if (!o.is_string()) throw detail::err("object id must be a string");
        detail::check_name(o.get<std::string>());
        c.object_names.push_back(o.get<std::string>());
    }
    c.num_objects = static_cast<int>(c.object_names.size());
    auto onames = detail::names_of(c.object_names);

    if (!j["morphisms"].is_array()) throw detail::err("morphisms must be an array");
    for (const auto& mj : j["morphisms"]) {
        detail::expect_keys(mj, "morphism", {"id", "src", "tgt"});
        if (!mj["id"].is_string() || !mj["src"].is_string() || !mj["tgt"].is_string())
            throw detail::err("morphism fields must be strings");
        std::string id = mj["id"].get<std::string>();
        detail::check_name(id);
        c.morphism_names.push_back(id);
        c.morphisms.push_back({onames.at(mj["src"].get<std::string>(), "morphism src"),
                               onames.at(mj["tgt"].get<std::string>(), "morphism tgt")});
    }
    auto mnames = detail::names_of(c.morphism_names);
    const int m = c.num_morphisms();

    detail::expect_object(j["identities"], "identities");
    c.identity.assign(c.num_objects, -1);
    for (auto it = j["identities"].begin(); it != j["identities"].end(); ++it) {
        if (!it.value().is_string()) throw detail::err("identity must name a morphism");
        c.identity[onames.at(it.key(), "identities")] =
            mnames.at(it.value().get<std::string>(), "identities");
    }
    for (int i = 0; i < c.num_objects; ++i)
        if (c.identity[i] < 0) throw detail::err("missing identity for object " + c.object_names[i]);

    detail::expect_object(j["compose"], "compose");
    c.compose_table.assign(m * m, -1);
    for (auto it = j["compose"].begin(); it != j["compose"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 2) throw detail::err("compose key \"" + it.key() + "\"");
        int g = mnames.at(parts[0], "compose"), f = mnames.at(parts[1], "compose");
        if (!it.value().is_string()) throw detail::err("compose value must name a morphism");
        c.compose_table[g * m + f] = mnames.at(it.value().get<std::string>(), "compose");
    }
    return c;
}

// ---- natural systems --------------------------------------------------------

inline json natsys_to_json(const FiniteCategory& base, const NaturalSystem& d) {
    const int m = base.num_morphisms();
    json groups = json::object(), push = json::object(), pull = json::object();
    for (int f = 0; f < m; ++f) groups[base.mname(f)] = group_to_json(d.groups[f]);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (base.composable(a, b)) push[base.mname(a) + "," + base.mname(b)] = d.push[a * m + b].map;
            if (base.composable(a, b)) pull[base.mname(a) + "," + base.mname(b)] = d.pull[a * m + b].map;
        }
    return json{{"groups", groups}, {"push", push}, {"pull", pull}};
}

inline NaturalSystem natsys_from_json(const FiniteCategory& base, const json& j) {
    detail::expect_keys(j, "natural system", {"groups", "push", "pull"});
    const int m = base.num_morphisms();
    auto mnames = detail::names_of(base.morphism_names);
    NaturalSystem d;
    d.groups.resize(m);
    d.push.resize(m * m);
    d.pull.resize(m * m);
    detail::expect_object(j["groups"], "groups");
    std::vector<int> seen(m, 0);
    for (auto it = j["groups"].begin(); it != j["groups"].end(); ++it) {
        int f = mnames.at(it.key(), "groups");
        d.groups[f] = group_from_json(it.value());
        seen[f] = 1;
    }
    for (int f = 0; f < m; ++f)
        if (!seen[f]) throw detail::err("missing group for morphism " + base.mname(f));
    auto read_maps = [&](const json& tab, std::vector<GroupHom>& dst, const char* what) {
        detail::expect_object(tab, what);
        for (auto it = tab.begin(); it != tab.end(); ++it) {
            auto parts = detail::split(it.key(), ',');
            if (parts.size() != 2) throw detail::err(std::string(what) + " key \"" + it.key() + "\"");
            int a = mnames.at(parts[0], what), b = mnames.at(parts[1], what);
            dst[a * m + b] = GroupHom{detail::to_int_vector(it.value(), what)};
        }
    };
    read_maps(j["push"], d.push, "push");
    read_maps(j["pull"], d.pull, "pull");
    return d;
}

// ---- quotients and pre-tracks ----------------------------------------------

inline json quotient_map_to_json(const QuotientFunctor& q) {
    json map = json::object();
    for (int f = 0; f < q.src.num_morphisms(); ++f)
        map[q.src.mname(f)] = q.dst.mname(q.map[f]);
    return map;
}

inline std::vector<int> quotient_map_from_json(const FiniteCategory& src,
                                               const FiniteCategory& dst, const json& j) {
    detail::expect_object(j, "pi map");
    auto ms = detail::names_of(src.morphism_names);
    auto md = detail::names_of(dst.morphism_names);
    std::vector<int> map(src.num_morphisms(), -1);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) throw detail::err("pi map values must be morphism ids");
        map[ms.at(it.key(), "pi map")] = md.at(it.value().get<std::string>(), "pi map");
    }
    for (int f = 0; f < src.num_morphisms(); ++f)
        if (map[f] < 0) throw detail::err("pi map missing morphism " + src.mname(f));
    return map;
}

inline json pretrack_to_json(const PreTrack& p) {
    json pi = json{{"src", category_to_json(p.pi.src)},
                   {"dst", category_to_json(p.pi.dst)},
                   {"map", quotient_map_to_json(p.pi)}};
    return json{{"pi", pi}, {"G", natsys_to_json(p.pi.src, p.g)}};
}

inline PreTrack pretrack_from_json(const json& j) {
    detail::expect_keys(j, "pretrack", {"pi", "G"});
    detail::expect_keys(j["pi"], "pi", {"src", "dst", "map"});
    PreTrack p;
    p.pi.src = category_from_json(j["pi"]["src"]);
    p.pi.dst = category_from_json(j["pi"]["dst"]);
    p.pi.map = quotient_map_from_json(p.pi.src, p.pi.dst, j["pi"]["map"]);
    p.g = natsys_from_json(p.pi.src, j["G"]);
    return p;
}

// ---- track categories --------------------------------------------------------

inline json pig_track_to_json(const PiGTrack& x) {
    const auto& t = x.track;
    const auto& k = t.underlying;
    const int m = k.num_morphisms();
    json tracks = json::object(), vcomp = json::object(), vneg = json::object(),
         vzero = json::object(), lw = json::object(), rw = json::object(),
         sigma = json::object();
    for (int f = 0; f < m; ++f) {
        vzero[k.mname(f)] = t.zero(f);
        sigma[k.mname(f)] = x.sigma[f];
        for (int g = 0; g < m; ++g) {
            if (t.tcount(f, g) == 0) continue;
            tracks[k.mname(f) + "," + k.mname(g)] = t.tcount(f, g);
            vneg[k.mname(f) + "," + k.mname(g)] = t.vneg[t.pk(f, g)];
            for (int h = 0; h < m; ++h) {
                if (!k.parallel(g, h) || t.tcount(g, h) == 0) continue;
                json rows = json::array();
                for (int a = 0; a < t.tcount(f, g); ++a) {
                    json row = json::array();
                    for (int b = 0; b < t.tcount(g, h); ++b) row.push_back(t.vadd(f, g, h, a, b));
                    rows.push_back(row);
                }
                vcomp[k.mname(f) + "," + k.mname(g) + "," + k.mname(h)] = rows;
            }
            for (int a = 0; a < m; ++a) {
                if (k.composable(a, f))
                    lw[k.mname(a) + "|" + k.mname(f) + "," + k.mname(g)] = t.lwhisk[t.tk(a, f, g)];
                if (k.composable(f, a))
                    rw[k.mname(f) + "," + k.mname(g) + "|" + k.mname(a)] = t.rwhisk[t.tk(f, g, a)];
            }
        }
    }
    json pi = json{{"dst", category_to_json(x.pre.pi.dst)}, {"map", quotient_map_to_json(x.pre.pi)}};
    return json{{"underlying", category_to_json(k)},
                {"tracks", tracks},
                {"vcomp", vcomp},
                {"vneg", vneg},
                {"vzero", vzero},
                {"lwhisk", lw},
                {"rwhisk", rw},
                {"pi", pi},
                {"G", natsys_to_json(k, x.pre.g)},
                {"sigma", sigma}};
}

inline PiGTrack pig_track_from_json(const json& j) {
    detail::expect_keys(j, "track", {"underlying", "tracks", "vcomp", "vneg", "vzero", "lwhisk",
                                     "rwhisk", "pi", "G", "sigma"});
    PiGTrack x;
    TrackCategory& t = x.track;
    t.underlying = category_from_json(j["underlying"]);
    const auto& k = t.underlying;
    const int m = k.num_morphisms();
    auto mnames = detail::names_of(k.morphism_names);

    t.track_count.assign(m * m, 0);
    t.vcomp.resize(m * m * m);
    t.vneg.resize(m * m);
    t.vzero.assign(m, -1);
    t.lwhisk.resize(m * m * m);
    t.rwhisk.resize(m * m * m);

    detail::expect_object(j["tracks"], "tracks");
    for (auto it = j["tracks"].begin(); it != j["tracks"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 2) throw detail::err("tracks key \"" + it.key() + "\"");
        int f = mnames.at(parts[0], "tracks"), g = mnames.at(parts[1], "tracks");
        int n = detail::to_int(it.value(), "tracks");
        if (n < 0) throw detail::err("negative track count");
        t.track_count[t.pk(f, g)] = n;
    }
    detail::expect_object(j["vzero"], "vzero");
    for (auto it = j["vzero"].begin(); it != j["vzero"].end(); ++it)
        t.vzero[mnames.at(it.key(), "vzero")] = detail::to_int(it.value(), "vzero");
    detail::expect_object(j["vneg"], "vneg");
    for (auto it = j["vneg"].begin(); it != j["vneg"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 2) throw detail::err("vneg key \"" + it.key() + "\"");
        t.vneg[t.pk(mnames.at(parts[0], "vneg"), mnames.at(parts[1], "vneg"))] =
            detail::to_int_vector(it.value(), "vneg");
    }
    detail::expect_object(j["vcomp"], "vcomp");
    for (auto it = j["vcomp"].begin(); it != j["vcomp"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 3) throw detail::err("vcomp key \"" + it.key() + "\"");
        int f = mnames.at(parts[0], "vcomp"), g = mnames.at(parts[1], "vcomp"),
            h = mnames.at(parts[2], "vcomp");
        if (!it.value().is_array()) throw detail::err("vcomp rows");
        std::vector<int> flat;
        for (const auto& row : it.value()) {
            auto r = detail::to_int_vector(row, "vcomp row");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        t.vcomp[t.tk(f, g, h)] = std::move(flat);
    }
    detail::expect_object(j["lwhisk"], "lwhisk");
    for (auto it = j["lwhisk"].begin(); it != j["lwhisk"].end(); ++it) {
        auto outer = detail::split(it.key(), '|');
        if (outer.size() != 2) throw detail::err("lwhisk key \"" + it.key() + "\"");
        auto parts = detail::split(outer[1], ',');
        if (parts.size() != 2) throw detail::err("lwhisk key \"" + it.key() + "\"");
        t.lwhisk[t.tk(mnames.at(outer[0], "lwhisk"), mnames.at(parts[0], "lwhisk"),
                      mnames.at(parts[1], "lwhisk"))] = detail::to_int_vector(it.value(), "lwhisk");
    }
    detail::expect_object(j["rwhisk"], "rwhisk");
    for (auto it = j["rwhisk"].begin(); it != j["rwhisk"].end(); ++it) {
        auto outer = detail::split(it.key(), '|');
        if (outer.size() != 2) throw detail::err("rwhisk key \"" + it.key() + "\"");
        auto parts = detail::split(outer[0], ',');
        if (parts.size() != 2) throw detail::err("rwhisk key \"" + it.key() + "\"");
        t.rwhisk[t.tk(mnames.at(parts[0], "rwhisk"), mnames.at(parts[1], "rwhisk"),
                      mnames.at(outer[1], "rwhisk"))] = detail::to_int_vector(it.value(), "rwhisk");
    }

    detail::expect_keys(j["pi"], "pi", {"dst", "map"});
    x.pre.pi.src = k;
    x.pre.pi.dst = category_from_json(j["pi"]["dst"]);
    x.pre.pi.map = quotient_map_from_json(k, x.pre.pi.dst, j["pi"]["map"]);
    x.pre.g = natsys_from_json(k, j["G"]);

    detail::expect_object(j["sigma"], "sigma");
    x.sigma.resize(m);
    for (auto it = j["sigma"].begin(); it != j["sigma"].end(); ++it)
        x.sigma[mnames.at(it.key(), "sigma")] = detail::to_int_vector(it.value(), "sigma");
    return x;
}

// ---- cocycles and coboundaries -----------------------------------------------

/// Cocycle files embed their pre-track context so they are standalone: a
/// file validates on its own and context mismatches are detectable.
inline json cocycle_to_json(const PreTrack& p, const CocycleTriple& z) {
    const auto& k = p.k();
    const int m = k.num_morphisms();
    json xi = json::object(), chi = json::object(), phi = json::object();
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (!tracat::detail::phi_typed(p, g, f)) continue;
            phi[k.mname(g) + "," + k.mname(f)] = z.phi[g * m + f].map;
            for (int h = 0; h < m; ++h)
                if (tracat::detail::xi_typed(p, f, g, h))
                    xi[k.mname(f) + "," + k.mname(g) + "," + k.mname(h)] =
                        z.xi[tracat::detail::xi_key(m, f, g, h)];
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (tracat::detail::chi_typed(p, f, g, a, b))
                        chi[k.mname(f) + "," + k.mname(g) + "|" + k.mname(a) + "," + k.mname(b)] =
                            z.chi[tracat::detail::chi_key(m, f, g, a, b)];
        }
    return json{{"pretrack", pretrack_to_json(p)}, {"xi", xi}, {"chi", chi}, {"phi", phi}};
}

struct CocycleFile {
    PreTrack pretrack;
    CocycleTriple cocycle;
    json choice;  // optional reproducibility record, null if absent
};

inline CocycleFile cocycle_from_json(const json& j) {
    detail::expect_keys(j, "cocycle", {"pretrack", "xi", "chi", "phi"}, {"choice"});
    CocycleFile out;
    out.pretrack = pretrack_from_json(j["pretrack"]);
    const auto& k = out.pretrack.k();
    const int m = k.num_morphisms();
    auto mnames = detail::names_of(k.morphism_names);
    CocycleTriple& z = out.cocycle;
    z.xi.assign(m * m * m, -1);
    z.chi.assign(m * m * m * m, -1);
    z.phi.resize(m * m);
    detail::expect_object(j["xi"], "xi");
    for (auto it = j["xi"].begin(); it != j["xi"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 3) throw detail::err("xi key \"" + it.key() + "\"");
        z.xi[tracat::detail::xi_key(m, mnames.at(parts[0], "xi"), mnames.at(parts[1], "xi"),
                                    mnames.at(parts[2], "xi"))] = detail::to_int(it.value(), "xi");
    }
    detail::expect_object(j["chi"], "chi");
    for (auto it = j["chi"].begin(); it != j["chi"].end(); ++it) {
        auto outer = detail::split(it.key(), '|');
        if (outer.size() != 2) throw detail::err("chi key \"" + it.key() + "\"");
        auto in1 = detail::split(outer[0], ','), in2 = detail::split(outer[1], ',');
        if (in1.size() != 2 || in2.size() != 2) throw detail::err("chi key \"" + it.key() + "\"");
        z.chi[tracat::detail::chi_key(m, mnames.at(in1[0], "chi"), mnames.at(in1[1], "chi"),
                                      mnames.at(in2[0], "chi"), mnames.at(in2[1], "chi"))] =
            detail::to_int(it.value(), "chi");
    }
    detail::expect_object(j["phi"], "phi");
    for (auto it = j["phi"].begin(); it != j["phi"].end(); ++it) {
        auto parts = detail::split(it.key(), ',');
        if (parts.size() != 2) throw detail::err("phi key \"" + it.key() + "\"");
        z.phi[mnames.at(parts[0], "phi") * m + mnames.at(parts[1], "phi")] =
            GroupHom{detail::to_int_vector(it.value(), "phi")};
    }
    if (j.contains("choice")) out.choice = j["choice"];
    return out;
}

inline json coboundary_to_json(const PreTrack& p, const Coboundary& c) {
    const auto& k = p.k();
    const int m = k.num_morphisms();
    json zeta = json::object();
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (tracat::detail::phi_typed(p, f, g))
                zeta[k.mname(f) + "," + k.mname(g)] = c.zeta[f * m + g];
    return json{{"zeta", zeta}};
}

inline json track_choice_to_json(const PiGTrack& x, const TrackChoice& h) {
    const auto& k = x.track.underlying;
    const int m = k.num_morphisms();
    json H = json::object();
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (h.h[f * m + g] >= 0) H[k.mname(f) + "," + k.mname(g)] = h.h[f * m + g];
    return json{{"H", H}};
}

inline json witness_to_json(const PiGTrack& x, const TrackFunctorWitness& w) {
    const auto& k = x.track.underlying;
    const int m = k.num_morphisms();
    json F = json::object();
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (x.track.tcount(f, g) > 0) F[k.mname(f) + "," + k.mname(g)] = w.map[f * m + g];
    return json{{"F", F}};
}

// ---- envelopes -----------------------------------------------------------------

enum class Kind { group, category, pretrack, track, cocycle };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::group: return "group";
        case Kind::category: return "category";
        case Kind::pretrack: return "pretrack";
        case Kind::track: return "track";
        case Kind::cocycle: return "cocycle";
    }
    return "?";
}

struct Envelope {
    Kind kind;
    json data;
};

inline std::string wrap(Kind kind, json data) {
    return canonical_dump(json{{"kind", kind_name(kind)}, {"version", 1}, {"data", std::move(data)}});
}

inline Envelope parse_envelope(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw StructuralError(std::string("parse error: ") + e.what());
    }
    detail::expect_keys(j, "envelope", {"kind", "version", "data"});
    if (!j["kind"].is_string()) throw detail::err("kind must be a string");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
        throw detail::err("unsupported version");
    std::string k = j["kind"].get<std::string>();
    for (Kind kind : {Kind::group, Kind::category, Kind::pretrack, Kind::track, Kind::cocycle})
        if (k == kind_name(kind)) return {kind, j["data"]};
    throw detail::err("unknown kind \"" + k + "\"");
}

}  // namespace tracat::io
