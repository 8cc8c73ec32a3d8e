#pragma once

// Graphviz DOT export for curves and maps. Vertices show genus and, for
// maps, multidegree; edges show length and slope; legs are drawn as point
// nodes.

#include "troplog/curve.hpp"
#include "troplog/forms.hpp"
#include "troplog/tropmap.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace troplog {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '\\';
        out += ch;
    }
    return out + "\"";
}

template <class Row>
std::string tuple_text(const Row& row) {
    std::string out = "(";
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + std::to_string(row[i]);
    return out + ")";
}

inline std::string curve_dot(const TropicalCurve& c, const Chamber& ch, const TropicalMap* m, const std::string& name) {
    std::ostringstream os;
    os << "graph " << dot_quote(name) << " {\n";
    os << "  node [shape=circle];\n";
    for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        const auto& vx = c.vertices()[v];
        std::string label = vx.name;
        if (vx.genus > 0) label += "\\ng" + std::to_string(vx.genus);
        if (m) label += "\\nd" + tuple_text(m->degree.at(v));
        os << "  v" << v << " [label=" << dot_quote(label) << (vx.genus > 0 ? ", shape=doublecircle" : "") << "];\n";
    }
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        const auto& ed = c.edges()[e];
        std::string label = ed.name + " = " + ch.format(ed.length);
        if (m && !m->edge_slope.at(e).empty()) label += "\\nslope " + tuple_text(m->edge_slope[e]);
        os << "  v" << ed.u << " -- v" << ed.v << " [label=" << dot_quote(label) << "];\n";
    }
    for (std::size_t l = 0; l < c.legs().size(); ++l) {
        const auto& leg = c.legs()[l];
        std::string label = leg.label;
        if (m && !m->contact.at(l).empty()) label += " " + tuple_text(m->contact[l]);
        os << "  l" << l << " [shape=point];\n";
        os << "  v" << leg.vertex << " -- l" << l << " [label=" << dot_quote(label) << ", style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace detail

inline std::string to_dot(const TropicalCurve& c, const Chamber& ch, const std::string& name = "curve") {
    return detail::curve_dot(c, ch, nullptr, name);
}

inline std::string to_dot(const TropicalMap& m, const Chamber& ch, const std::string& name = "map") {
    return detail::curve_dot(m.curve, ch, &m, name);
}

}  // namespace troplog
