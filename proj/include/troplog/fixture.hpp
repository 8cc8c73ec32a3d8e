#pragma once

// JSON fixtures: a chamber, an optional target and map, a curve, and a block
// of named expected values. Forms are {param: "rational"} objects so values
// stay exact. Unknown fields are rejected and every expected value must say
// where it comes from.

#include "troplog/curve.hpp"
#include "troplog/error.hpp"
#include "troplog/forms.hpp"
#include "troplog/tropmap.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace troplog {

using Json = nlohmann::ordered_json;

inline constexpr int fixture_format_version = 1;

// Accepted provenance tags for expected values.
inline const std::vector<std::string>& provenance_tags() {
    static const std::vector<std::string> tags{"worked-example", "by-inspection", "computed"};
    return tags;
}

inline const std::vector<std::string>& expectation_kinds() {
    static const std::vector<std::string> kinds{"contraction_radius", "singularity",  "map_radius",
                                                "completion_legs",    "balanced_after_completion",
                                                "well_spaced",        "aligned",      "positions_ok"};
    return kinds;
}

struct Expectation {
    std::string name;
    std::string kind;
    std::optional<int> m;
    std::optional<std::size_t> factor;
    bool all_factors = false;
    std::optional<int> threshold;
    Json value;
    std::string provenance;
    std::string note;

    friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct Fixture {
    int format_version = fixture_format_version;
    std::string name;
    std::string description;
    std::vector<std::string> params;
    bool generic_chamber = false;
    std::vector<Constraint> constraints;
    bool has_target = false;
    bool has_map = false;
    TropicalMap map;  // map.curve is the fixture curve
    std::vector<Expectation> expected;

    const TropicalCurve& curve() const { return map.curve; }

    friend bool operator==(const Fixture&, const Fixture&) = default;
};

namespace detail {

inline std::string at_path(const std::string& path, const std::string& what) {
    return path.empty() ? what : path + ": " + what;
}

inline void only_fields(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw Error(at_path(path, "expected an object"));
    for (const auto& [key, _] : j.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!ok) throw Error(at_path(path, "unknown field '" + key + "'"));
    }
}

inline const Json& field(const Json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw Error(at_path(path, std::string("missing field '") + key + "'"));
    return j.at(key);
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw Error(at_path(path, "expected a string"));
    return j.get<std::string>();
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw Error(at_path(path, "expected an integer"));
    return j.get<std::int64_t>();
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw Error(at_path(path, "expected true or false"));
    return j.get<bool>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw Error(at_path(path, "expected an array"));
    return j;
}

inline std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline std::size_t param_index(const std::vector<std::string>& params, const std::string& name, const std::string& path) {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == name) return i;
    throw Error(at_path(path, "unknown parameter '" + name + "'"));
}

inline LinearForm parse_linear(const Json& j, const std::vector<std::string>& params, const std::string& path) {
    if (!j.is_object()) throw Error(at_path(path, "expected a form {param: \"rational\"}"));
    LinearForm f;
    for (const auto& [key, val] : j.items()) {
        const std::size_t i = param_index(params, key, path);
        Rational q;
        try {
            q = parse_rational(as_string(val, join(path, key)));
        } catch (const Error& e) {
            throw Error(at_path(join(path, key), e.what()));
        }
        f.set(i, q);
    }
    return f;
}

inline MonoidForm parse_form(const Json& j, const std::vector<std::string>& params, const std::string& path) {
    const LinearForm f = parse_linear(j, params, path);
    if (!f.nonnegative_coeffs()) throw Error(at_path(path, "negative coefficient"));
    return MonoidForm(f);
}

inline Json form_json(const LinearForm& f, const std::vector<std::string>& params) {
    Json out = Json::object();
    for (const auto& [i, c] : f.coeffs()) out[params.at(i)] = to_string(c);
    return out;
}

inline Relation parse_relation(const Json& j, const std::string& path) {
    const std::string s = as_string(j, path);
    if (s == "<") return Relation::Less;
    if (s == "<=") return Relation::LessEqual;
    if (s == "=") return Relation::Equal;
    throw Error(at_path(path, "relation must be <, <= or ="));
}

inline std::string relation_text(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Equal: return "=";
    }
    return "?";
}

inline std::size_t named(const std::optional<std::size_t>& found, const std::string& what, const std::string& name,
                         const std::string& path) {
    if (!found) throw Error(at_path(path, "unknown " + what + " '" + name + "'"));
    return *found;
}

template <class T>
std::vector<T> int_row(const Json& j, std::size_t size, const std::string& path) {
    as_array(j, path);
    if (j.size() != size) throw Error(at_path(path, "expected " + std::to_string(size) + " entries"));
    std::vector<T> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<T>(as_int(j[i], item(path, i))));
    return out;
}

// Reads {name: row} into rows indexed like `names`; absent names keep `fill`.
template <class Row, class Parse>
std::vector<Row> keyed_rows(const Json* j, const std::vector<std::string>& names, const Row& fill, Parse parse,
                            const std::string& path) {
    std::vector<Row> out(names.size(), fill);
    if (!j) return out;
    if (!j->is_object()) throw Error(at_path(path, "expected an object keyed by name"));
    for (const auto& [key, val] : j->items()) {
        const auto it = std::find(names.begin(), names.end(), key);
        if (it == names.end()) throw Error(at_path(path, "unknown name '" + key + "'"));
        out[static_cast<std::size_t>(it - names.begin())] = parse(val, join(path, key));
    }
    return out;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col > 1 ? col - 1 : col};
}

inline Json radius_json(const Radius& r, const std::vector<std::string>& params) {
    Json out = Json::object();
    switch (r.kind) {
        case Radius::Kind::Exact: out["kind"] = "exact"; break;
        case Radius::Kind::JustAfter: out["kind"] = "just-after"; break;
        case Radius::Kind::Infinite: out["kind"] = "infinite"; return out;
    }
    out["form"] = form_json(r.base, params);
    return out;
}

}  // namespace detail

inline Radius parse_radius(const Json& j, const std::vector<std::string>& params, const std::string& path = "value") {
    detail::only_fields(j, path, {"kind", "form"});
    const std::string kind = detail::as_string(detail::field(j, path, "kind"), detail::join(path, "kind"));
    if (kind == "infinite") {
        if (j.contains("form")) throw Error(detail::at_path(path, "an infinite radius has no form"));
        return Radius::infinity();
    }
    const MonoidForm f = detail::parse_form(detail::field(j, path, "form"), params, detail::join(path, "form"));
    if (kind == "exact") return Radius::exact(f);
    if (kind == "just-after") return Radius::just_after(f);
    throw Error(detail::at_path(detail::join(path, "kind"), "radius kind must be exact, just-after or infinite"));
}

inline Json radius_to_json(const Radius& r, const std::vector<std::string>& params) {
    return detail::radius_json(r, params);
}

namespace detail {

inline void check_expectation(const Expectation& e, const Fixture& fx, const std::string& path) {
    const auto& kinds = expectation_kinds();
    if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end()) throw Error(at_path(path, "unknown kind '" + e.kind + "'"));
    const auto& tags = provenance_tags();
    if (e.provenance.empty()) throw Error(at_path(path, "expected value without provenance"));
    if (std::find(tags.begin(), tags.end(), e.provenance) == tags.end())
        throw Error(at_path(path, "unknown provenance '" + e.provenance + "'"));
    const bool needs_m = e.kind == "contraction_radius" || e.kind == "singularity";
    const bool needs_factor = e.kind == "map_radius" || e.kind == "completion_legs";
    const bool needs_map = e.kind != "contraction_radius" && e.kind != "singularity" && e.kind != "aligned";
    if (needs_m != e.m.has_value()) throw Error(at_path(path, needs_m ? "missing field 'm'" : "field 'm' does not apply"));
    const bool has_factor = e.factor.has_value() || e.all_factors;
    if (needs_factor != has_factor)
        throw Error(at_path(path, needs_factor ? "missing field 'factor'" : "field 'factor' does not apply"));
    if (e.kind == "completion_legs" && e.all_factors) throw Error(at_path(path, "completion_legs needs a factor index"));
    if (e.threshold && e.kind != "well_spaced") throw Error(at_path(path, "field 'threshold' does not apply"));
    if (e.threshold && *e.threshold != 2 && *e.threshold != 3) throw Error(at_path(path, "threshold must be 2 or 3"));
    if (needs_map && !fx.has_map) throw Error(at_path(path, "needs a map"));
    if (e.factor && *e.factor >= fx.map.target.factors.size()) throw Error(at_path(path, "factor out of range"));
    const std::string vpath = join(path, "value");
    if (e.kind == "contraction_radius" || e.kind == "map_radius") {
        parse_radius(e.value, fx.params, vpath);
    } else if (e.kind == "singularity") {
        only_fields(e.value, vpath, {"branches", "kind"});
        as_int(field(e.value, vpath, "branches"), join(vpath, "branches"));
        as_string(field(e.value, vpath, "kind"), join(vpath, "kind"));
    } else if (e.kind == "completion_legs") {
        as_int(e.value, vpath);
    } else {
        as_bool(e.value, vpath);
    }
}

inline Expectation parse_expectation(const std::string& name, const Json& j, const std::string& path) {
    only_fields(j, path, {"kind", "m", "factor", "threshold", "value", "provenance", "note"});
    Expectation e;
    e.name = name;
    e.kind = as_string(field(j, path, "kind"), join(path, "kind"));
    if (j.contains("m")) e.m = static_cast<int>(as_int(j.at("m"), join(path, "m")));
    if (j.contains("factor")) {
        const Json& f = j.at("factor");
        if (f.is_string() && f.get<std::string>() == "all") {
            e.all_factors = true;
        } else {
            const auto k = as_int(f, join(path, "factor"));
            if (k < 0) throw Error(at_path(join(path, "factor"), "negative factor"));
            e.factor = static_cast<std::size_t>(k);
        }
    }
    if (j.contains("threshold")) e.threshold = static_cast<int>(as_int(j.at("threshold"), join(path, "threshold")));
    e.value = field(j, path, "value");
    if (!j.contains("provenance")) throw Error(at_path(path, "expected value without provenance"));
    e.provenance = as_string(j.at("provenance"), join(path, "provenance"));
    if (j.contains("note")) e.note = as_string(j.at("note"), join(path, "note"));
    return e;
}

}  // namespace detail

inline Fixture fixture_from_json(const Json& j) {
    using namespace detail;
    only_fields(j, "", {"format_version", "name", "description", "params", "chamber", "target", "curve", "map", "expected"});
    Fixture fx;
    fx.format_version = static_cast<int>(as_int(field(j, "", "format_version"), "format_version"));
    if (fx.format_version != fixture_format_version)
        throw Error("format_version: unsupported version " + std::to_string(fx.format_version));
    fx.name = as_string(field(j, "", "name"), "name");
    if (j.contains("description")) fx.description = as_string(j.at("description"), "description");

    const Json& params = as_array(field(j, "", "params"), "params");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const std::string p = as_string(params[i], item("params", i));
        if (p.empty()) throw Error(item("params", i) + ": empty parameter name");
        if (std::find(fx.params.begin(), fx.params.end(), p) != fx.params.end())
            throw Error(item("params", i) + ": duplicate parameter '" + p + "'");
        fx.params.push_back(p);
    }

    const Json& ch = field(j, "", "chamber");
    if (ch.is_string()) {
        if (ch.get<std::string>() != "generic") throw Error("chamber: expected a constraint list or \"generic\"");
        fx.generic_chamber = true;
    } else {
        as_array(ch, "chamber");
        for (std::size_t i = 0; i < ch.size(); ++i) {
            const std::string path = item("chamber", i);
            only_fields(ch[i], path, {"lhs", "rel", "rhs"});
            fx.constraints.push_back({parse_form(field(ch[i], path, "lhs"), fx.params, join(path, "lhs")),
                                      parse_relation(field(ch[i], path, "rel"), join(path, "rel")),
                                      parse_form(field(ch[i], path, "rhs"), fx.params, join(path, "rhs"))});
        }
    }

    if (j.contains("target")) {
        const Json& t = j.at("target");
        only_fields(t, "target", {"factors", "divisors"});
        fx.has_target = true;
        const Json& factors = as_array(field(t, "target", "factors"), "target.factors");
        for (std::size_t i = 0; i < factors.size(); ++i)
            fx.map.target.factors.push_back(static_cast<int>(as_int(factors[i], item("target.factors", i))));
        const Json& divs = as_array(field(t, "target", "divisors"), "target.divisors");
        for (std::size_t i = 0; i < divs.size(); ++i) {
            const std::string path = item("target.divisors", i);
            only_fields(divs[i], path, {"factor", "coord"});
            const auto a = as_int(field(divs[i], path, "factor"), join(path, "factor"));
            const auto k = as_int(field(divs[i], path, "coord"), join(path, "coord"));
            if (a < 0 || k < 0) throw Error(at_path(path, "negative index"));
            fx.map.target.divisors.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(k)});
        }
        try {
            fx.map.target.validate();
        } catch (const Error& e) {
            throw Error(at_path("target", e.what()));
        }
    }

    const Json& cj = field(j, "", "curve");
    only_fields(cj, "curve", {"vertices", "edges", "legs"});
    TropicalCurve& c = fx.map.curve;
    const Json& verts = as_array(field(cj, "curve", "vertices"), "curve.vertices");
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const std::string path = item("curve.vertices", i);
        only_fields(verts[i], path, {"name", "genus"});
        const std::string name = as_string(field(verts[i], path, "name"), join(path, "name"));
        const int genus = verts[i].contains("genus") ? static_cast<int>(as_int(verts[i].at("genus"), join(path, "genus"))) : 0;
        try {
            c.add_vertex(name, genus);
        } catch (const Error& e) {
            throw Error(at_path(path, e.what()));
        }
    }
    const Json& edges = as_array(field(cj, "curve", "edges"), "curve.edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = item("curve.edges", i);
        only_fields(edges[i], path, {"name", "from", "to", "length"});
        const std::string from = as_string(field(edges[i], path, "from"), join(path, "from"));
        const std::string to = as_string(field(edges[i], path, "to"), join(path, "to"));
        const std::size_t u = named(c.find_vertex(from), "vertex", from, join(path, "from"));
        const std::size_t v = named(c.find_vertex(to), "vertex", to, join(path, "to"));
        try {
            c.add_edge(as_string(field(edges[i], path, "name"), join(path, "name")), u, v,
                       parse_form(field(edges[i], path, "length"), fx.params, join(path, "length")));
        } catch (const Error& e) {
            throw Error(at_path(path, e.what()));
        }
    }
    const Json& legs = as_array(field(cj, "curve", "legs"), "curve.legs");
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const std::string path = item("curve.legs", i);
        only_fields(legs[i], path, {"name", "vertex", "label"});
        const std::string name = as_string(field(legs[i], path, "name"), join(path, "name"));
        const std::string vertex = as_string(field(legs[i], path, "vertex"), join(path, "vertex"));
        const std::string label = legs[i].contains("label") ? as_string(legs[i].at("label"), join(path, "label")) : name;
        try {
            c.add_leg(name, named(c.find_vertex(vertex), "vertex", vertex, join(path, "vertex")), label);
        } catch (const Error& e) {
            throw Error(at_path(path, e.what()));
        }
    }

    auto names_of = [](const auto& items) {
        std::vector<std::string> out;
        for (const auto& x : items) out.push_back(x.name);
        return out;
    };
    if (j.contains("map")) {
        if (!fx.has_target) throw Error("map: needs a target");
        const Json& mj = j.at("map");
        only_fields(mj, "map", {"degree", "position", "slope", "contact"});
        fx.has_map = true;
        TropicalMap& m = fx.map;
        const std::size_t nf = m.target.factors.size(), nd = m.target.num_divisors();
        auto opt = [&](const char* key) { return mj.contains(key) ? &mj.at(key) : nullptr; };
        m.degree = keyed_rows(opt("degree"), names_of(c.vertices()), std::vector<int>(nf, 0),
                              [&](const Json& r, const std::string& p) { return int_row<int>(r, nf, p); }, "map.degree");
        m.position = keyed_rows(
            opt("position"), names_of(c.vertices()), std::vector<MonoidForm>(nd),
            [&](const Json& r, const std::string& p) {
                as_array(r, p);
                if (r.size() != nd) throw Error(at_path(p, "expected " + std::to_string(nd) + " entries"));
                std::vector<MonoidForm> row;
                for (std::size_t i = 0; i < nd; ++i) row.push_back(parse_form(r[i], fx.params, item(p, i)));
                return row;
            },
            "map.position");
        m.edge_slope = keyed_rows(opt("slope"), names_of(c.edges()), Slope(nd, 0),
                                  [&](const Json& r, const std::string& p) { return int_row<std::int64_t>(r, nd, p); },
                                  "map.slope");
        m.contact = keyed_rows(opt("contact"), names_of(c.legs()), Slope(nd, 0),
                               [&](const Json& r, const std::string& p) { return int_row<std::int64_t>(r, nd, p); },
                               "map.contact");
        for (const auto& row : m.degree)
            for (int d : row)
                if (d < 0) throw Error("map.degree: negative degree");
    }

    if (j.contains("expected")) {
        const Json& ej = j.at("expected");
        if (!ej.is_object()) throw Error("expected: expected an object keyed by name");
        for (const auto& [key, val] : ej.items()) {
            const std::string path = join("expected", key);
            fx.expected.push_back(parse_expectation(key, val, path));
            check_expectation(fx.expected.back(), fx, path);
        }
    }
    return fx;
}

inline Json fixture_to_json(const Fixture& fx) {
    using namespace detail;
    Json j = Json::object();
    j["format_version"] = fx.format_version;
    j["name"] = fx.name;
    if (!fx.description.empty()) j["description"] = fx.description;
    j["params"] = fx.params;
    if (fx.generic_chamber) {
        j["chamber"] = "generic";
    } else {
        Json ch = Json::array();
        for (const auto& c : fx.constraints)
            ch.push_back({{"lhs", form_json(c.lhs, fx.params)}, {"rel", relation_text(c.rel)}, {"rhs", form_json(c.rhs, fx.params)}});
        j["chamber"] = ch;
    }
    const TropicalMap& m = fx.map;
    const TropicalCurve& c = m.curve;
    if (fx.has_target) {
        Json divs = Json::array();
        for (const auto& d : m.target.divisors) divs.push_back({{"factor", d.factor}, {"coord", d.coord}});
        j["target"] = {{"factors", m.target.factors}, {"divisors", divs}};
    }
    Json verts = Json::array(), edges = Json::array(), legs = Json::array();
    for (const auto& v : c.vertices()) verts.push_back({{"name", v.name}, {"genus", v.genus}});
    for (const auto& e : c.edges())
        edges.push_back({{"name", e.name}, {"from", c.vertices()[e.u].name}, {"to", c.vertices()[e.v].name},
                         {"length", form_json(e.length, fx.params)}});
    for (const auto& l : c.legs()) legs.push_back({{"name", l.name}, {"vertex", c.vertices()[l.vertex].name}, {"label", l.label}});
    j["curve"] = {{"vertices", verts}, {"edges", edges}, {"legs", legs}};
    if (fx.has_map) {
        Json degree = Json::object(), position = Json::object(), slope = Json::object(), contact = Json::object();
        for (std::size_t v = 0; v < c.vertices().size(); ++v) {
            degree[c.vertices()[v].name] = m.degree.at(v);
            Json row = Json::array();
            for (const auto& f : m.position.at(v)) row.push_back(form_json(f, fx.params));
            position[c.vertices()[v].name] = row;
        }
        for (std::size_t e = 0; e < c.edges().size(); ++e) slope[c.edges()[e].name] = m.edge_slope.at(e);
        for (std::size_t l = 0; l < c.legs().size(); ++l) contact[c.legs()[l].name] = m.contact.at(l);
        j["map"] = {{"degree", degree}, {"position", position}, {"slope", slope}, {"contact", contact}};
    }
    if (!fx.expected.empty()) {
        Json ej = Json::object();
        for (const auto& e : fx.expected) {
            Json x = Json::object();
            x["kind"] = e.kind;
            if (e.m) x["m"] = *e.m;
            if (e.all_factors) x["factor"] = "all";
            else if (e.factor) x["factor"] = *e.factor;
            if (e.threshold) x["threshold"] = *e.threshold;
            x["value"] = e.value;
            x["provenance"] = e.provenance;
            if (!e.note.empty()) x["note"] = e.note;
            ej[e.name] = x;
        }
        j["expected"] = ej;
    }
    return j;
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte);
        std::string msg = e.what();
        const auto at = msg.find("parse error");
        const auto colon = at == std::string::npos ? at : msg.find(": ", at);
        if (colon != std::string::npos) msg = msg.substr(colon + 2);
        throw Error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Fixture parse_fixture(const std::string& text) { return fixture_from_json(parse_json_text(text)); }

inline Fixture load_fixture(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return parse_fixture(text);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

inline std::string serialize_fixture(const Fixture& fx) { return fixture_to_json(fx).dump(2) + "\n"; }

// The lexicographically first strict total order of the distinct vertex
// distances that is feasible, with distances sorted by their text.
inline Chamber generic_chamber(const TropicalCurve& c, const std::vector<std::string>& params) {
    auto forms = distinct_distances(radial_structure(c));
    const Chamber base(params);
    std::sort(forms.begin(), forms.end(), [&](const MonoidForm& a, const MonoidForm& b) {
        return base.format(a) < base.format(b);
    });
    std::vector<bool> used(forms.size(), false);
    std::vector<std::size_t> chain;
    std::optional<Chamber> found;
    auto build = [&] {
        Chamber ch = base;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            ch.add_constraint({forms[chain[i]], Relation::Less, forms[chain[i + 1]]});
        return ch;
    };
    auto dfs = [&](auto& self) -> bool {
        if (chain.size() == forms.size()) {
            found = build();
            return true;
        }
        for (std::size_t i = 0; i < forms.size(); ++i) {
            if (used[i]) continue;
            chain.push_back(i);
            used[i] = true;
            if (chamber_feasible(build()) && self(self)) return true;
            chain.pop_back();
            used[i] = false;
        }
        return false;
    };
    if (!dfs(dfs)) throw Error("no strict order of the vertex distances is feasible");
    return *found;
}

inline Chamber fixture_chamber(const Fixture& fx) {
    if (fx.generic_chamber) return generic_chamber(fx.curve(), fx.params);
    Chamber ch(fx.params, fx.constraints);
    if (!chamber_feasible(ch)) throw Error("empty chamber");
    return ch;
}

}  // namespace troplog
