#pragma once

// The commands behind the troplog binary. Each takes its parsed options and
// two streams and returns the exit code: 0 on success, 1 when an expected
// value is not reproduced, 2 on bad input.

#include "troplog/curve.hpp"
#include "troplog/dimension.hpp"
#include "troplog/dot.hpp"
#include "troplog/enumerate.hpp"
#include "troplog/error.hpp"
#include "troplog/fixture.hpp"
#include "troplog/tropmap.hpp"
#include "troplog/wellspaced.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace troplog::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_input = 2;

// "p1xp1", "P2", "p2xp1" -> projective dimensions.
inline std::vector<int> parse_factors(const std::string& text) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('x', start), text.size());
        const std::string part = text.substr(start, end - start);
        if (part.size() < 2 || (part[0] != 'p' && part[0] != 'P') ||
            !std::all_of(part.begin() + 1, part.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            throw Error("target must look like p2 or p1xp1, got '" + text + "'");
        out.push_back(std::stoi(part.substr(1)));
        start = end + 1;
    }
    return out;
}

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string part = text.substr(start, end - start);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (part.empty() || used != part.size()) throw Error(what + " must be a comma-separated list of integers");
        out.push_back(value);
        start = end + 1;
    }
    return out;
}

// "a:k" -> coordinate hyperplane k of factor a.
inline Divisor parse_divisor(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("divisor must be FACTOR:COORD, got '" + text + "'");
    const auto a = parse_int_list(text.substr(0, colon), "divisor factor");
    const auto k = parse_int_list(text.substr(colon + 1), "divisor coordinate");
    if (a.size() != 1 || k.size() != 1 || a[0] < 0 || k[0] < 0) throw Error("divisor must be FACTOR:COORD, got '" + text + "'");
    return {static_cast<std::size_t>(a[0]), static_cast<std::size_t>(k[0])};
}

inline std::string format_constraint(const Constraint& c, const Chamber& ch) {
    return ch.format(c.lhs) + " " + troplog::detail::relation_text(c.rel) + " " + ch.format(c.rhs);
}

inline std::string format_chamber(const Chamber& ch) {
    if (ch.constraints().empty()) return "(no constraints)";
    std::vector<std::string> seen;
    for (const auto& c : ch.constraints()) {
        std::string text = format_constraint(c, ch);
        if (std::find(seen.begin(), seen.end(), text) == seen.end()) seen.push_back(std::move(text));
    }
    std::string out;
    for (std::size_t i = 0; i < seen.size(); ++i) out += (i ? ", " : "") + seen[i];
    return out;
}

struct ContactFile {
    std::vector<Divisor> divisors;
    ContactMatrix gamma;
    std::optional<std::pair<std::size_t, std::vector<std::size_t>>> forget;  // divisor column, markings
};

inline ContactFile load_contact_file(const std::string& path) {
    using namespace troplog::detail;
    const Json j = parse_json_text(read_text_file(path));
    try {
        only_fields(j, "", {"format_version", "divisors", "rows", "forget"});
        if (as_int(field(j, "", "format_version"), "format_version") != fixture_format_version)
            throw Error("format_version: unsupported version");
        ContactFile out;
        const Json& divs = as_array(field(j, "", "divisors"), "divisors");
        for (std::size_t i = 0; i < divs.size(); ++i) {
            const std::string p = item("divisors", i);
            only_fields(divs[i], p, {"factor", "coord"});
            const auto a = as_int(field(divs[i], p, "factor"), join(p, "factor"));
            const auto k = as_int(field(divs[i], p, "coord"), join(p, "coord"));
            if (a < 0 || k < 0) throw Error(at_path(p, "negative index"));
            out.divisors.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(k)});
        }
        out.gamma.columns = out.divisors.size();
        const Json& rows = as_array(field(j, "", "rows"), "rows");
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.gamma.rows.push_back(int_row<std::int64_t>(rows[i], out.gamma.columns, item("rows", i)));
        if (j.contains("forget")) {
            const Json& f = j.at("forget");
            only_fields(f, "forget", {"divisor", "markings"});
            const auto col = as_int(field(f, "forget", "divisor"), "forget.divisor");
            if (col < 0) throw Error("forget.divisor: negative index");
            const Json& ms = as_array(field(f, "forget", "markings"), "forget.markings");
            std::vector<std::size_t> markings;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto m = as_int(ms[i], item("forget.markings", i));
                if (m < 1) throw Error(item("forget.markings", i) + ": markings are numbered from 1");
                markings.push_back(static_cast<std::size_t>(m - 1));
            }
            out.forget = std::make_pair(static_cast<std::size_t>(col), std::move(markings));
        }
        return out;
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

inline StratumGraph load_stratum_file(const std::string& path) {
    using namespace troplog::detail;
    const Json j = parse_json_text(read_text_file(path));
    try {
        only_fields(j, "", {"format_version", "name", "description", "ambient_dimension", "vertices", "edges"});
        if (as_int(field(j, "", "format_version"), "format_version") != fixture_format_version)
            throw Error("format_version: unsupported version");
        StratumGraph s;
        s.name = as_string(field(j, "", "name"), "name");
        s.ambient_dimension = static_cast<int>(as_int(field(j, "", "ambient_dimension"), "ambient_dimension"));
        const Json& verts = as_array(field(j, "", "vertices"), "vertices");
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const std::string p = item("vertices", i);
            only_fields(verts[i], p, {"name", "genus", "formula", "dimension", "note", "extra_parameters"});
            StratumVertex v;
            v.name = as_string(field(verts[i], p, "name"), join(p, "name"));
            v.genus = static_cast<int>(as_int(field(verts[i], p, "genus"), join(p, "genus")));
            if (verts[i].contains("formula")) {
                const Json& f = verts[i].at("formula");
                const std::string fp = join(p, "formula");
                only_fields(f, fp, {"markings", "target", "degree"});
                StratumVertex::Formula formula;
                formula.markings = static_cast<int>(as_int(field(f, fp, "markings"), join(fp, "markings")));
                formula.target.factors = parse_factors(as_string(field(f, fp, "target"), join(fp, "target")));
                const Json& deg = as_array(field(f, fp, "degree"), join(fp, "degree"));
                formula.degree = int_row<int>(deg, deg.size(), join(fp, "degree"));
                v.formula = std::move(formula);
            }
            if (verts[i].contains("dimension"))
                v.explicit_dim = static_cast<int>(as_int(verts[i].at("dimension"), join(p, "dimension")));
            if (verts[i].contains("note")) v.note = as_string(verts[i].at("note"), join(p, "note"));
            if (verts[i].contains("extra_parameters"))
                v.extra_parameters = static_cast<int>(as_int(verts[i].at("extra_parameters"), join(p, "extra_parameters")));
            s.vertices.push_back(std::move(v));
        }
        const Json& edges = as_array(field(j, "", "edges"), "edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string p = item("edges", i);
            if (!edges[i].is_array() || edges[i].size() != 2) throw Error(p + ": expected a pair of vertex names");
            std::size_t ends[2];
            for (std::size_t k = 0; k < 2; ++k) {
                const std::string name = as_string(edges[i][k], item(p, k));
                const auto it = std::find_if(s.vertices.begin(), s.vertices.end(),
                                             [&](const StratumVertex& v) { return v.name == name; });
                if (it == s.vertices.end()) throw Error(item(p, k) + ": unknown vertex '" + name + "'");
                ends[k] = static_cast<std::size_t>(it - s.vertices.begin());
            }
            s.edges.emplace_back(ends[0], ends[1]);
        }
        return s;
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

namespace detail {

inline void row(std::ostream& out, const std::string& key, const std::string& value, int width = 22) {
    out << std::left << std::setw(width) << key << " " << value << "\n";
}

inline bool same_radius(const Radius& a, const Radius& b, const Chamber& ch) {
    if (a.kind != b.kind) return false;
    if (a.is_infinite()) return true;
    return form_sub_sign(a.base, b.base, ch) == Ordering::Equal;
}

// The fixture chamber, or its alignment refinement selected by name.
inline Chamber select_chamber(const Fixture& fx, const std::string& name) {
    const Chamber base = fixture_chamber(fx);
    if (name.empty()) return base;
    const auto options = alignment_chambers(fx.curve(), base);
    for (std::size_t i = 0; i < options.size(); ++i)
        if (name == "c" + std::to_string(i + 1)) return options[i];
    throw Error("unknown chamber '" + name + "'; there are " + std::to_string(options.size()) +
                " (use --chamber list)");
}

inline void list_chambers(const Fixture& fx, std::ostream& out) {
    const auto options = alignment_chambers(fx.curve(), fixture_chamber(fx));
    for (std::size_t i = 0; i < options.size(); ++i) row(out, "c" + std::to_string(i + 1), format_chamber(options[i]), 6);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Outcome {
    std::string got;
    bool match = false;
};

inline Outcome evaluate(const Expectation& e, const Fixture& fx, const Chamber& ch) {
    if (e.kind == "contraction_radius" || e.kind == "map_radius") {
        const Radius want = parse_radius(e.value, fx.params);
        const Radius got = e.kind == "contraction_radius"
                               ? contraction_radius_for_m(fx.curve(), *e.m, ch)
                               : map_contraction_radius(fx.map, e.all_factors ? std::nullopt : e.factor, ch);
        return {format_radius(got, ch), same_radius(want, got, ch)};
    }
    if (e.kind == "singularity") {
        const auto r = contraction_radius_for_m(fx.curve(), *e.m, ch);
        const auto s = contract_circle(fx.curve(), r, ch).singularity;
        const Json got{{"branches", s.branches}, {"kind", std::string(to_string(s.kind))}};
        return {std::string(to_string(s.kind)) + " (" + std::to_string(s.branches) + " branches)", got == e.value};
    }
    if (e.kind == "completion_legs") {
        const auto added = complete_divisor(fx.map, *e.factor).curve.legs().size() - fx.map.curve.legs().size();
        return {std::to_string(added), e.value.get<std::int64_t>() == static_cast<std::int64_t>(added)};
    }
    bool got = false;
    if (e.kind == "balanced_after_completion") got = check_balancing(complete_to_toric(fx.map)).ok();
    else if (e.kind == "well_spaced") got = is_wellspaced(fx.map, ch, e.threshold.value_or(3)).well_spaced;
    else if (e.kind == "aligned") got = is_radially_aligned(fx.curve(), ch);
    else if (e.kind == "positions_ok") got = check_positions(fx.map, ch).ok();
    else throw Error("unknown kind '" + e.kind + "'");
    return {got ? "true" : "false", got == e.value.get<bool>()};
}

inline std::string expected_text(const Expectation& e, const Fixture& fx, const Chamber& ch) {
    if (e.kind == "contraction_radius" || e.kind == "map_radius") return format_radius(parse_radius(e.value, fx.params), ch);
    if (e.kind == "singularity")
        return e.value.at("kind").get<std::string>() + " (" + std::to_string(e.value.at("branches").get<int>()) +
               " branches)";
    return e.value.dump();
}

template <class F>
std::string attempt(F f) {
    try {
        return f();
    } catch (const Error& e) {
        return std::string("undecided: ") + e.what();
    }
}

}  // namespace detail

struct CheckOptions {
    int threshold = 3;
    std::string chamber;
};

inline int check(const std::string& path, const CheckOptions& opts, std::ostream& out, std::ostream& err) {
    using detail::row;
    try {
        if (opts.threshold != 2 && opts.threshold != 3) throw Error("threshold must be 2 or 3");
        const Fixture fx = load_fixture(path);
        if (opts.chamber == "list") {
            detail::list_chambers(fx, out);
            return exit_ok;
        }
        const Chamber ch = detail::select_chamber(fx, opts.chamber);
        row(out, "fixture", fx.name);
        row(out, "chamber", format_chamber(ch));
        row(out, "aligned", detail::attempt([&] { return detail::yes_no(is_radially_aligned(fx.curve(), ch)); }));
        if (fx.has_map) {
            const TropicalMap& m = fx.map;
            row(out, "positions", detail::attempt([&] {
                    const auto r = check_positions(m, ch);
                    std::string s = r.ok() ? "ok" : std::to_string(r.violations.size()) + " violations";
                    for (const auto& v : r.violations) s += "\n  " + v;
                    return s;
                }));
            row(out, "transverse", detail::attempt([&] {
                    return detail::yes_no(is_transverse(m, position_subdivision(m, ch), ch));
                }));
            row(out, "balancing", detail::attempt([&] {
                    if (!m.target.full_boundary()) return std::string("n/a (boundary not full)");
                    const auto r = check_balancing(m);
                    std::string s = r.ok() ? "ok" : std::to_string(r.violations.size()) + " violations";
                    for (const auto& v : r.violations) s += "\n  " + v;
                    return s;
                }));
            row(out, "well-spaced", detail::attempt([&] {
                    const auto v = is_wellspaced(m, ch, opts.threshold);
                    std::string s = detail::yes_no(v.well_spaced) + " (" + std::string(to_string(v.reason)) + ")";
                    if (!v.well_spaced) s += " character " + troplog::detail::tuple_text(v.covector);
                    return s;
                }));
            row(out, "radius all", detail::attempt([&] { return format_radius(map_contraction_radius(m, std::nullopt, ch), ch); }));
            for (std::size_t a = 0; a < m.target.factors.size(); ++a)
                row(out, "radius factor " + std::to_string(a),
                    detail::attempt([&] { return format_radius(map_contraction_radius(m, a, ch), ch); }));
        }
        if (fx.expected.empty()) return exit_ok;
        out << "\n";
        out << std::left << std::setw(28) << "expectation" << std::setw(24) << "expected" << std::setw(24) << "got"
            << std::setw(16) << "provenance" << "status\n";
        int code = exit_ok;
        for (const auto& e : fx.expected) {
            std::string got, status;
            std::string want = detail::attempt([&] { return detail::expected_text(e, fx, ch); });
            try {
                const auto o = detail::evaluate(e, fx, ch);
                got = o.got;
                status = o.match ? "ok" : "MISMATCH";
                if (!o.match) code = std::max(code, exit_mismatch);
            } catch (const Error& ex) {
                got = "-";
                status = std::string("error: ") + ex.what();
                code = exit_input;
            }
            out << std::left << std::setw(28) << e.name << std::setw(24) << want << std::setw(24) << got << std::setw(16)
                << e.provenance << status << "\n";
        }
        if (code == exit_mismatch) err << "expected values not reproduced\n";
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

struct CompleteOptions {
    std::optional<std::size_t> factor;
    bool all = false;
};

inline int complete(const std::string& path, const CompleteOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.all == opts.factor.has_value()) throw Error("give exactly one of --factor K and --all");
        Fixture fx = load_fixture(path);
        if (!fx.has_map) throw Error("fixture has no map to complete");
        const TropicalMap& m = fx.map;
        const std::size_t before = m.curve.legs().size();
        TropicalMap lifted = m;
        if (opts.factor) {
            if (*opts.factor >= m.target.factors.size()) throw Error("factor out of range");
            if (m.target.missing_coords(*opts.factor).empty()) err << "note: factor " << *opts.factor << " already has its full boundary; map unchanged\n";
            else lifted = complete_divisor(m, *opts.factor);
        } else {
            if (m.target.full_boundary()) err << "note: boundary already full; map unchanged\n";
            else lifted = complete_to_toric(m);
        }
        const std::size_t added = lifted.curve.legs().size() - before;
        if (added > 0 || lifted.target != m.target) {
            const std::size_t comps = lifted.target.num_divisors() - m.target.num_divisors();
            err << "added " << comps << (comps == 1 ? " divisor component and " : " divisor components and ") << added
                << (added == 1 ? " leg\n" : " legs\n");
            fx.name += "_completed";
            fx.expected.clear();
        }
        fx.map = std::move(lifted);
        if (opts.all) {
            const auto r = check_balancing(fx.map);
            if (r.ok()) err << "balancing: residual slope sum 0 at every vertex\n";
            for (const auto& v : r.violations) err << "balancing: " << v << "\n";
        }
        out << serialize_fixture(fx);
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

struct DimsOptions {
    int genus = 0;
    int markings = 0;
    std::string target;
    std::string degree;
    std::string contact_file;
    std::vector<std::string> stratum_files;
};

inline int dims(const DimsOptions& opts, std::ostream& out, std::ostream& err) {
    using detail::row;
    try {
        TargetModel target{parse_factors(opts.target), {}};
        const Multidegree degree = parse_int_list(opts.degree, "degree");
        const int absolute = expected_dim(opts.genus, opts.markings, target, degree);
        row(out, "expected dimension", std::to_string(absolute));
        int main_dim = absolute;
        if (!opts.contact_file.empty()) {
            const ContactFile cf = load_contact_file(opts.contact_file);
            target.divisors = cf.divisors;
            main_dim = expected_dim_relative(opts.genus, opts.markings, target, degree, cf.gamma);
            row(out, "relative dimension", std::to_string(main_dim));
            if (cf.forget) {
                const auto r = fictitious_forgetful(cf.gamma, cf.forget->first, cf.forget->second);
                row(out, "forgetful degree", std::to_string(r.multiplicity));
            }
        }
        std::vector<std::pair<std::string, int>> strata{{"main", main_dim}};
        std::vector<StratumGraph> graphs{main_stratum(opts.genus, opts.markings, target, degree)};
        for (const auto& file : opts.stratum_files) {
            StratumGraph s = load_stratum_file(file);
            const int d = stratum_dim(s);
            row(out, "stratum " + s.name, std::to_string(d));
            for (const auto& g : graphs)
                if (g == s) throw Error("stratum '" + s.name + "' repeats an earlier one");
            strata.emplace_back(s.name, d);
            graphs.push_back(std::move(s));
        }
        for (std::size_t a = 0; a < strata.size(); ++a)
            for (std::size_t b = a + 1; b < strata.size(); ++b)
                if (strata[a].second == strata[b].second)
                    out << "flag equal-dimension-strata: " << strata[a].first << " and " << strata[b].first
                        << " are distinct strata of dimension " << strata[a].second
                        << ", so neither is a degeneration of the other\n";
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

struct EnumerateOptions {
    std::string target;
    std::string degree;
    int markings = 0;
    std::size_t max_vertices = 2;
    std::vector<std::string> divisors;
    std::string contact_file;
    int threshold = 3;
    std::string dot_dir;
};

inline int enumerate(const EnumerateOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.threshold != 2 && opts.threshold != 3) throw Error("threshold must be 2 or 3");
        TargetModel target{parse_factors(opts.target), {}};
        for (const auto& d : opts.divisors) target.divisors.push_back(parse_divisor(d));
        EnumerationOptions eo;
        eo.threshold = opts.threshold;
        if (!opts.contact_file.empty()) {
            const ContactFile cf = load_contact_file(opts.contact_file);
            if (!opts.divisors.empty() && cf.divisors != target.divisors)
                throw Error("--divisor disagrees with the contact file");
            target.divisors = cf.divisors;
            eo.gamma = cf.gamma;
        }
        target.validate();
        const Multidegree degree = parse_int_list(opts.degree, "degree");
        if (opts.max_vertices == 0) err << "warning: --max-vertices 0 admits no curves; the listing is empty\n";
        const auto strata = enumerate_strata(target, opts.markings, degree, opts.max_vertices, eo);
        out << format_listing(strata);
        const auto good = std::count_if(strata.begin(), strata.end(), [](const StratumType& t) { return t.well_spaced; });
        err << strata.size() << " types, " << good << " well-spaced\n";
        if (!opts.dot_dir.empty()) {
            std::filesystem::create_directories(opts.dot_dir);
            for (std::size_t i = 0; i < strata.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "stratum_%03zu", i + 1);
                std::ofstream f(std::filesystem::path(opts.dot_dir) / (std::string(name) + ".dot"));
                if (!f) throw Error("cannot write to " + opts.dot_dir);
                f << to_dot(strata[i].map, strata[i].chamber, name);
            }
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

struct ContractOptions {
    std::optional<int> m;
    std::optional<std::size_t> factor;
    bool all = false;
    std::string chamber;
    std::string dot_file;
};

inline int contract(const std::string& path, const ContractOptions& opts, std::ostream& out, std::ostream& err) {
    using detail::row;
    try {
        const int given = opts.m.has_value() + opts.factor.has_value() + opts.all;
        if (given != 1) throw Error("give exactly one of --m, --factor and --all");
        const Fixture fx = load_fixture(path);
        if (opts.chamber == "list") {
            detail::list_chambers(fx, out);
            return exit_ok;
        }
        const Chamber ch = detail::select_chamber(fx, opts.chamber);
        Radius r;
        if (opts.m) {
            r = contraction_radius_for_m(fx.curve(), *opts.m, ch);
        } else {
            if (!fx.has_map) throw Error("--factor and --all need a map");
            if (opts.factor && *opts.factor >= fx.map.target.factors.size()) throw Error("factor out of range");
            r = map_contraction_radius(fx.map, opts.all ? std::nullopt : opts.factor, ch);
        }
        row(out, "radius", format_radius(r, ch));
        if (r.is_infinite()) {
            row(out, "contraction", "none (the map is constant on the whole curve)");
            return exit_ok;
        }
        const auto c = contract_circle(fx.curve(), r, ch);
        row(out, "singularity", std::string(to_string(c.singularity.kind)) + ", " + std::to_string(c.singularity.branches) +
                                    " branches");
        row(out, "local ring", c.singularity.local_ring);
        row(out, "core vertex", c.curve.vertices()[c.core].name);
        row(out, "vertices", std::to_string(c.curve.vertices().size()));
        row(out, "edges", std::to_string(c.curve.edges().size()));
        row(out, "legs", std::to_string(c.curve.legs().size()));
        for (const auto& e : c.curve.edges())
            row(out, "  " + e.name, c.curve.vertices()[e.u].name + " - " + c.curve.vertices()[e.v].name + "  " +
                                        c.chamber.format(e.length));
        if (!opts.dot_file.empty()) {
            std::ofstream f(opts.dot_file);
            if (!f) throw Error("cannot write " + opts.dot_file);
            f << to_dot(c.curve, c.chamber, fx.name + "_contracted");
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
}

}  // namespace troplog::cli
