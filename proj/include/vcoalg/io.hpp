#ifndef VCOALG_IO_HPP
#define VCOALG_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcoalg/apply.hpp"
#include "vcoalg/coalg.hpp"
#include "vcoalg/finspace.hpp"
#include "vcoalg/vietoris.hpp"

namespace vcoalg {

using Json = nlohmann::json;

namespace detail {
/// Human-readable continuity witness: the failing pair and the open whose
/// preimage is not open.
inline std::string continuity_witness(const ContMap& f) {
    auto w = f.monotonicity_witness();
    if (!w) return "";
    Bitset u = f.cod().up(f(w->second));
    std::string open = "{";
    bool first = true;
    for (int i : u.elements()) {
        if (!first) open += ",";
        open += f.cod().name(i);
        first = false;
    }
    open += "}";
    return " (witness: " + f.dom().name(w->first) + " <= " + f.dom().name(w->second) +
           " but the preimage of the open " + open + " is not open)";
}

inline void reject_unknown_fields(const Json& j, std::initializer_list<const char*> allowed,
                                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw BadInput(where + ": unknown field \"" + it.key() + "\"");
    }
}

inline const Json& require(const Json& j, const char* field, const std::string& where) {
    auto it = j.find(field);
    if (it == j.end()) throw BadInput(where + ": missing field \"" + field + "\"");
    return *it;
}
} // namespace detail

/// Space JSON: {"points": [...], "opens": [[...], ...]} or
/// {"points": [...], "leq": [["x","y"], ...]}; exactly one of opens/leq.
inline FinSpace space_from_json(const Json& j, const Limits& lim = {},
                                const std::string& where = "space") {
    if (!j.is_object()) throw BadInput(where + ": expected an object");
    detail::reject_unknown_fields(j, {"points", "opens", "leq"}, where);
    const Json& jp = detail::require(j, "points", where);
    if (!jp.is_array()) throw BadInput(where + ".points: expected an array of names");
    std::vector<std::string> points;
    for (const auto& p : jp) {
        if (!p.is_string()) throw BadInput(where + ".points: names must be strings");
        points.push_back(p.get<std::string>());
    }
    const bool has_opens = j.contains("opens"), has_leq = j.contains("leq");
    if (has_opens == has_leq)
        throw BadInput(where + ": exactly one of \"opens\" and \"leq\" must be present");

    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!idx.emplace(points[i], static_cast<int>(i)).second)
            throw BadInput(where + ".points: duplicate name \"" + points[i] + "\"");
    }

    if (has_opens) {
        std::vector<Bitset> fam;
        for (const auto& o : j["opens"]) {
            if (!o.is_array()) throw BadInput(where + ".opens: each open must be an array");
            Bitset s(points.size());
            for (const auto& p : o) {
                auto it = idx.find(p.get<std::string>());
                if (it == idx.end())
                    throw BadInput(where + ".opens: unknown point \"" + p.get<std::string>() + "\"");
                s.set(static_cast<std::size_t>(it->second));
            }
            fam.push_back(std::move(s));
        }
        return space_from_opens(std::move(points), fam, lim);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pr : j["leq"]) {
        if (!pr.is_array() || pr.size() != 2)
            throw BadInput(where + ".leq: each entry must be a pair [\"x\",\"y\"]");
        pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
    if (points.size() > lim.max_points)
        throw SizeCapExceeded(where + " exceeds the point cap", points.size(), lim.max_points);
    return FinSpace::from_leq_pairs(std::move(points), pairs);
}

/// Emits the space as points plus the full non-reflexive part of its
/// specialization preorder.
inline Json space_to_json(const FinSpace& x) {
    Json j;
    j["points"] = Json::array();
    for (int i = 0; i < x.size(); ++i) j["points"].push_back(x.name(i));
    Json leq = Json::array();
    for (int i = 0; i < x.size(); ++i)
        for (int k = 0; k < x.size(); ++k)
            if (i != k && x.leq(i, k)) leq.push_back(Json::array({x.name(i), x.name(k)}));
    j["leq"] = std::move(leq);
    return j;
}

/// Map JSON: {"dom": <space>, "cod": <space>, "map": {"x": "y", ...}}.
inline ContMap map_from_json(const Json& j, const Limits& lim = {},
                             const std::string& where = "map") {
    if (!j.is_object()) throw BadInput(where + ": expected an object");
    detail::reject_unknown_fields(j, {"dom", "cod", "map"}, where);
    FinSpace dom = space_from_json(detail::require(j, "dom", where), lim, where + ".dom");
    FinSpace cod = space_from_json(detail::require(j, "cod", where), lim, where + ".cod");
    const Json& jm = detail::require(j, "map", where);
    if (!jm.is_object()) throw BadInput(where + ".map: expected an object");
    std::vector<int> table(static_cast<std::size_t>(dom.size()), -1);
    for (auto it = jm.begin(); it != jm.end(); ++it) {
        int i = dom.index_of(it.key());
        if (i < 0) throw BadInput(where + ".map: unknown domain point \"" + it.key() + "\"");
        int v = cod.index_of(it.value().get<std::string>());
        if (v < 0)
            throw BadInput(where + ".map: unknown codomain point \"" +
                           it.value().get<std::string>() + "\"");
        table[static_cast<std::size_t>(i)] = v;
    }
    for (int i = 0; i < dom.size(); ++i)
        if (table[static_cast<std::size_t>(i)] < 0)
            throw BadInput(where + ".map: no value for point \"" + dom.name(i) + "\"");
    ContMap f(dom, cod, std::move(table), false);
    if (!f.is_monotone())
        throw BadInput(where + ": map is not continuous" + detail::continuity_witness(f));
    return f;
}

inline Json map_to_json(const ContMap& f) {
    Json j;
    j["dom"] = space_to_json(f.dom());
    j["cod"] = space_to_json(f.cod());
    Json m = Json::object();
    for (int i = 0; i < f.dom().size(); ++i) m[f.dom().name(i)] = f.cod().name(f(i));
    j["map"] = std::move(m);
    return j;
}

/// FValue JSON: {"pt": "x"} | {"pair": [v,v]} | {"inl": v} | {"inr": v}
/// | {"const": "a"} | {"set": [v, ...]}.
inline FValue fvalue_from_json(const Json& j, const std::string& where = "value") {
    if (!j.is_object() || j.size() != 1)
        throw BadInput(where + ": an FValue is an object with exactly one tag");
    const std::string tag = j.begin().key();
    const Json& body = j.begin().value();
    if (tag == "pt") return FValue::pt(body.get<std::string>());
    if (tag == "const") return FValue::constpt(body.get<std::string>());
    if (tag == "pair") {
        if (!body.is_array() || body.size() != 2)
            throw BadInput(where + ".pair: expected an array of two values");
        return FValue::pair(fvalue_from_json(body[0], where + ".pair[0]"),
                            fvalue_from_json(body[1], where + ".pair[1]"));
    }
    if (tag == "inl") return FValue::inl(fvalue_from_json(body, where + ".inl"));
    if (tag == "inr") return FValue::inr(fvalue_from_json(body, where + ".inr"));
    if (tag == "set") {
        if (!body.is_array()) throw BadInput(where + ".set: expected an array");
        std::vector<FValue> kids;
        for (std::size_t i = 0; i < body.size(); ++i)
            kids.push_back(fvalue_from_json(body[i], where + ".set[" + std::to_string(i) + "]"));
        return FValue::set(std::move(kids));
    }
    throw BadInput(where + ": unknown FValue tag \"" + tag + "\"");
}

inline Json fvalue_to_json(const FValue& v) {
    switch (v.kind) {
    case FValue::Kind::Pt: return Json{{"pt", v.atom}};
    case FValue::Kind::ConstPt: return Json{{"const", v.atom}};
    case FValue::Kind::Pair:
        return Json{{"pair", Json::array({fvalue_to_json(v.children[0]), fvalue_to_json(v.children[1])})}};
    case FValue::Kind::Inl: return Json{{"inl", fvalue_to_json(v.children[0])}};
    case FValue::Kind::Inr: return Json{{"inr", fvalue_to_json(v.children[0])}};
    case FValue::Kind::SetOf: {
        Json arr = Json::array();
        for (const auto& c : v.children) arr.push_back(fvalue_to_json(c));
        return Json{{"set", std::move(arr)}};
    }
    }
    throw BadInput("invalid FValue");
}

/// Coalgebra JSON: {"functor": "<expr>", "carrier": <space>,
/// "structure": {"x": <fvalue>, ...}}. Constants are resolved against env.
inline Coalgebra coalgebra_from_json(const Json& j, const Env& env, const Limits& lim = {},
                                     const std::string& where = "coalgebra") {
    if (!j.is_object()) throw BadInput(where + ": expected an object");
    detail::reject_unknown_fields(j, {"functor", "carrier", "structure"}, where);
    FunctorPtr f = parse_functor(detail::require(j, "functor", where).get<std::string>());
    FinSpace carrier = space_from_json(detail::require(j, "carrier", where), lim, where + ".carrier");
    Applied applied = apply_functor(f, carrier, env, lim);
    const Json& js = detail::require(j, "structure", where);
    if (!js.is_object()) throw BadInput(where + ".structure: expected an object");
    std::vector<int> structure(static_cast<std::size_t>(carrier.size()), -1);
    for (auto it = js.begin(); it != js.end(); ++it) {
        int i = carrier.index_of(it.key());
        if (i < 0) throw BadInput(where + ".structure: unknown carrier point \"" + it.key() + "\"");
        FValue v = fvalue_from_json(it.value(), where + ".structure." + it.key());
        structure[static_cast<std::size_t>(i)] = applied.resolve(v);
    }
    for (int i = 0; i < carrier.size(); ++i)
        if (structure[static_cast<std::size_t>(i)] < 0)
            throw BadInput(where + ".structure: no value for point \"" + carrier.name(i) + "\"");
    ContMap raw(carrier, applied.space(), structure, false);
    if (!raw.is_monotone())
        throw BadInput(where + ": structure map is not continuous" + detail::continuity_witness(raw));
    return Coalgebra(f, env, carrier, std::move(structure), lim);
}

inline Json coalgebra_to_json(const Coalgebra& c) {
    Json j;
    j["functor"] = print_functor(c.functor());
    j["carrier"] = space_to_json(c.carrier());
    Json s = Json::object();
    for (int i = 0; i < c.carrier().size(); ++i)
        s[c.carrier().name(i)] = fvalue_to_json(c.structure_value(i));
    j["structure"] = std::move(s);
    return j;
}

/// Hom JSON (artifact schema): {"src": <coalgebra>, "dst": <coalgebra>,
/// "map": {"x": "y", ...}}.
inline CoalgHom hom_from_json(const Json& j, const Env& env, const Limits& lim = {},
                              const std::string& where = "hom") {
    if (!j.is_object()) throw BadInput(where + ": expected an object");
    detail::reject_unknown_fields(j, {"src", "dst", "map"}, where);
    Coalgebra src = coalgebra_from_json(detail::require(j, "src", where), env, lim, where + ".src");
    Coalgebra dst = coalgebra_from_json(detail::require(j, "dst", where), env, lim, where + ".dst");
    const Json& jm = detail::require(j, "map", where);
    std::vector<int> table(static_cast<std::size_t>(src.carrier().size()), -1);
    for (auto it = jm.begin(); it != jm.end(); ++it) {
        int i = src.carrier().index_of(it.key());
        if (i < 0) throw BadInput(where + ".map: unknown source point \"" + it.key() + "\"");
        int v = dst.carrier().index_of(it.value().get<std::string>());
        if (v < 0)
            throw BadInput(where + ".map: unknown target point \"" +
                           it.value().get<std::string>() + "\"");
        table[static_cast<std::size_t>(i)] = v;
    }
    for (int i = 0; i < src.carrier().size(); ++i)
        if (table[static_cast<std::size_t>(i)] < 0)
            throw BadInput(where + ".map: no value for point \"" + src.carrier().name(i) + "\"");
    ContMap f(src.carrier(), dst.carrier(), std::move(table), false);
    if (!f.is_monotone())
        throw BadInput(where + ": map is not continuous" + detail::continuity_witness(f));
    return CoalgHom{std::move(src), std::move(dst), std::move(f)};
}

inline Json subset_to_json(const FinSpace& x, const Bitset& s) {
    Json arr = Json::array();
    for (int i : s.elements()) arr.push_back(x.name(i));
    return arr;
}

} // namespace vcoalg

#endif
