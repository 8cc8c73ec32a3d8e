#pragma once

// Tropical maps from genus one tropical curves to the orthant of divisor
// coordinates of a product of projective spaces: consistency checks,
// balancing, transversality and expansion against a subdivision, contraction
// radii per factor, and completion of the divisor to the full toric boundary.

#include "troplog/curve.hpp"
#include "troplog/error.hpp"
#include "troplog/forms.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace troplog {

// One boundary component: coordinate hyperplane `coord` (0..n) of factor `factor`.
struct Divisor {
    std::size_t factor = 0;
    std::size_t coord = 0;
    friend auto operator<=>(const Divisor&, const Divisor&) = default;
};

struct TargetModel {
    std::vector<int> factors;  // projective dimensions
    std::vector<Divisor> divisors;

    std::size_t num_divisors() const { return divisors.size(); }

    void validate() const {
        for (int n : factors)
            if (n < 1) throw Error("projective dimension must be positive");
        std::set<Divisor> seen;
        for (const auto& d : divisors) {
            if (d.factor >= factors.size()) throw Error("divisor factor out of range");
            if (d.coord > static_cast<std::size_t>(factors[d.factor])) throw Error("divisor coordinate out of range");
            if (!seen.insert(d).second) throw Error("duplicate divisor component");
        }
    }

    std::optional<std::size_t> find(Divisor d) const {
        for (std::size_t j = 0; j < divisors.size(); ++j)
            if (divisors[j] == d) return j;
        return std::nullopt;
    }

    std::vector<std::size_t> missing_coords(std::size_t factor) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(factors.at(factor)); ++k)
            if (!find({factor, k})) out.push_back(k);
        return out;
    }

    bool full_boundary() const {
        for (std::size_t a = 0; a < factors.size(); ++a)
            if (!missing_coords(a).empty()) return false;
        return true;
    }

    friend bool operator==(const TargetModel&, const TargetModel&) = default;
};

using Slope = std::vector<std::int64_t>;

// Positions and slopes are in divisor coordinates. edge_slope[e] is the
// slope from edges[e].u towards edges[e].v; the slope of leg i is row i of
// the contact matrix.
struct TropicalMap {
    TropicalCurve curve;
    TargetModel target;
    std::vector<std::vector<int>> degree;            // [vertex][factor]
    std::vector<std::vector<MonoidForm>> position;   // [vertex][divisor]
    std::vector<Slope> edge_slope;                   // [edge][divisor]
    std::vector<Slope> contact;                      // [leg][divisor]

    const Slope& leg_slope(std::size_t leg) const { return contact.at(leg); }

    int total_degree(std::size_t factor) const {
        int d = 0;
        for (const auto& row : degree) d += row.at(factor);
        return d;
    }

    int vertex_degree(std::size_t v) const {
        int d = 0;
        for (int x : degree.at(v)) d += x;
        return d;
    }

    friend bool operator==(const TropicalMap&, const TropicalMap&) = default;
};

struct Report {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline LinearForm scaled_length(const MonoidForm& length, std::int64_t s) {
    return Rational(s) * length.linear();
}

inline void check_shapes(const TropicalMap& m) {
    m.target.validate();
    const auto& c = m.curve;
    const std::size_t nd = m.target.num_divisors();
    if (m.degree.size() != c.vertices().size() || m.position.size() != c.vertices().size())
        throw Error("map data does not match the vertices");
    if (m.edge_slope.size() != c.edges().size()) throw Error("map data does not match the edges");
    if (m.contact.size() != c.legs().size()) throw Error("contact matrix needs one row per leg");
    for (const auto& row : m.degree)
        if (row.size() != m.target.factors.size()) throw Error("degree needs one entry per factor");
    for (const auto& row : m.position)
        if (row.size() != nd) throw Error("position needs one coordinate per divisor");
    for (const auto& s : m.edge_slope)
        if (s.size() != nd) throw Error("slope needs one coordinate per divisor");
    for (const auto& s : m.contact)
        if (s.size() != nd) throw Error("contact row needs one entry per divisor");
}

}  // namespace detail

// Verifies the map invariants: matching shapes, position compatibility along
// edges (decided in ch), nonnegative degrees and contact orders, and that each
// contact column sums to the degree of its factor.
inline Report check_positions(const TropicalMap& m, const Chamber& ch) {
    Report report;
    try {
        detail::check_shapes(m);
    } catch (const Error& e) {
        report.violations.push_back(e.what());
        return report;
    }
    const auto& c = m.curve;
    const std::size_t nd = m.target.num_divisors();
    for (std::size_t v = 0; v < c.vertices().size(); ++v)
        for (int d : m.degree[v])
            if (d < 0) report.violations.push_back("negative degree at " + c.vertices()[v].name);
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        const Edge& edge = c.edges()[e];
        for (std::size_t j = 0; j < nd; ++j) {
            const LinearForm expected = m.position[edge.u][j].linear() + detail::scaled_length(edge.length, m.edge_slope[e][j]);
            if (compare(expected, m.position[edge.v][j], ch) != Ordering::Equal)
                report.violations.push_back("position mismatch along " + edge.name + " in coordinate " + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < m.contact.size(); ++i)
        for (auto x : m.contact[i])
            if (x < 0) report.violations.push_back("negative contact order for leg " + c.legs()[i].name);
    for (std::size_t j = 0; j < nd; ++j) {
        std::int64_t sum = 0;
        for (const auto& row : m.contact) sum += row[j];
        const int expected = m.total_degree(m.target.divisors[j].factor);
        if (sum != expected)
            report.violations.push_back("divisor-degree: contact column " + std::to_string(j) + " sums to " +
                                        std::to_string(sum) + ", expected " + std::to_string(expected));
    }
    return report;
}

// Balancing in each factor's fan, where coordinate k > 0 maps to e_k and
// coordinate 0 to -(e_1 + ... + e_n).
inline Report check_balancing(const TropicalMap& m) {
    detail::check_shapes(m);
    if (!m.target.full_boundary()) throw Error("balancing requires full toric boundary");
    Report report;
    const auto& c = m.curve;
    const std::size_t nd = m.target.num_divisors();
    for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        Slope total(nd, 0);
        for (std::size_t e = 0; e < c.edges().size(); ++e) {
            const Edge& edge = c.edges()[e];
            if (edge.u == edge.v) continue;
            const std::int64_t sign = edge.u == v ? 1 : (edge.v == v ? -1 : 0);
            for (std::size_t j = 0; j < nd; ++j) total[j] += sign * m.edge_slope[e][j];
        }
        for (std::size_t l : c.legs_at(v))
            for (std::size_t j = 0; j < nd; ++j) total[j] += m.contact[l][j];
        for (std::size_t a = 0; a < m.target.factors.size(); ++a) {
            std::vector<std::int64_t> fan(static_cast<std::size_t>(m.target.factors[a]), 0);
            for (std::size_t j = 0; j < nd; ++j) {
                const Divisor d = m.target.divisors[j];
                if (d.factor != a) continue;
                if (d.coord == 0) {
                    for (auto& x : fan) x -= total[j];
                } else {
                    fan[d.coord - 1] += total[j];
                }
            }
            if (std::any_of(fan.begin(), fan.end(), [](std::int64_t x) { return x != 0; }))
                report.violations.push_back("unbalanced at " + c.vertices()[v].name + " in factor " + std::to_string(a));
        }
    }
    return report;
}

// Breakpoints of a subdivision of each divisor coordinate axis.
using Subdivision = std::vector<std::vector<MonoidForm>>;

namespace detail {

inline Ordering ordered(const LinearForm& a, const LinearForm& b, const Chamber& ch) {
    const Ordering o = compare(a, b, ch);
    if (o == Ordering::Incomparable) throw Error("refine chamber first");
    return o;
}

inline const std::vector<MonoidForm>& breakpoints(const Subdivision& sub, std::size_t j) {
    static const std::vector<MonoidForm> none;
    return j < sub.size() ? sub[j] : none;
}

// A point where an edge or leg image meets a wall in its relative interior,
// at source distance `t` from the start of the edge or leg.
struct Crossing {
    bool is_leg = false;
    std::size_t index = 0;
    LinearForm t;
};

inline std::optional<Crossing> first_crossing(const TropicalMap& m, const Subdivision& sub, const Chamber& ch) {
    const auto& c = m.curve;
    const std::size_t nd = m.target.num_divisors();
    std::optional<Crossing> best;
    auto consider = [&](Crossing cand) {
        if (!best) {
            best = std::move(cand);
            return;
        }
        if (ordered(cand.t, best->t, ch) == Ordering::Less) best = std::move(cand);
    };
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        const Edge& edge = c.edges()[e];
        for (std::size_t j = 0; j < nd; ++j) {
            const std::int64_t s = m.edge_slope[e][j];
            if (s == 0) continue;
            const LinearForm& from = m.position[edge.u][j];
            const LinearForm& to = m.position[edge.v][j];
            for (const auto& b : breakpoints(sub, j)) {
                const bool inside = s > 0 ? ordered(from, b, ch) == Ordering::Less && ordered(b, to, ch) == Ordering::Less
                                          : ordered(to, b, ch) == Ordering::Less && ordered(b, from, ch) == Ordering::Less;
                if (inside) consider({false, e, Rational(1, s) * (b.linear() - from)});
            }
        }
    }
    for (std::size_t l = 0; l < c.legs().size(); ++l) {
        const std::size_t v = c.legs()[l].vertex;
        for (std::size_t j = 0; j < nd; ++j) {
            const std::int64_t s = m.contact[l][j];
            if (s <= 0) continue;
            for (const auto& b : breakpoints(sub, j))
                if (ordered(m.position[v][j], b, ch) == Ordering::Less)
                    consider({true, l, Rational(1, s) * (b.linear() - m.position[v][j].linear())});
        }
    }
    return best;
}

}  // namespace detail

// Whether no edge or leg image crosses a wall of the subdivision in its
// interior. Vertices always lie in some cell of a product of subdivided rays.
// Breakpoints at the distinct positive vertex positions in each coordinate.
inline Subdivision position_subdivision(const TropicalMap& m, const Chamber& ch) {
    const std::size_t nd = m.target.num_divisors();
    Subdivision sub(nd);
    for (std::size_t j = 0; j < nd; ++j) {
        for (const auto& row : m.position) {
            const MonoidForm& p = row.at(j);
            if (compare(p.linear(), LinearForm{}, ch) != Ordering::Greater) continue;
            if (std::none_of(sub[j].begin(), sub[j].end(),
                             [&](const MonoidForm& b) { return compare(b.linear(), p.linear(), ch) == Ordering::Equal; }))
                sub[j].push_back(p);
        }
    }
    return sub;
}

inline bool is_transverse(const TropicalMap& m, const Subdivision& sub, const Chamber& ch) {
    detail::check_shapes(m);
    return !detail::first_crossing(m, sub, ch).has_value();
}

struct Expansion {
    Subdivision target_subdivision;
    TropicalMap map;
    Chamber chamber;
};

// Pulls the subdivision back to the source: every wall crossing becomes a
// two-valent genus zero vertex of degree zero. Legs keep their index, so the
// contact matrix is unchanged.
inline Expansion expand(const TropicalMap& m, const Subdivision& sub, const Chamber& ch) {
    detail::check_shapes(m);
    if (sub.size() > m.target.num_divisors()) throw Error("subdivision has more axes than divisors");
    Expansion out{sub, m, ch};
    TropicalMap& f = out.map;
    const std::size_t nd = f.target.num_divisors();
    while (auto cross = detail::first_crossing(f, sub, out.chamber)) {
        const MonoidForm t = materialize(cross->t, out.chamber);
        std::size_t from, w;
        Slope slope;
        if (cross->is_leg) {
            Leg& leg = f.curve.mutable_legs()[cross->index];
            from = leg.vertex;
            slope = f.contact[cross->index];
            w = f.curve.add_vertex(fresh_vertex_name(f.curve, leg.name + "@"), 0);
            f.curve.add_edge(fresh_edge_name(f.curve, leg.name + "_"), from, w, t);
            f.curve.mutable_legs()[cross->index].vertex = w;
            f.edge_slope.push_back(slope);
        } else {
            const Edge edge = f.curve.edges()[cross->index];
            from = edge.u;
            slope = f.edge_slope[cross->index];
            const MonoidForm rest = materialize(edge.length.linear() - t.linear(), out.chamber);
            w = split_edge(f.curve, cross->index, t, rest, fresh_vertex_name(f.curve, edge.name + "@"));
            f.edge_slope.push_back(slope);
        }
        std::vector<MonoidForm> pos;
        for (std::size_t j = 0; j < nd; ++j)
            pos.push_back(materialize(f.position[from][j].linear() + detail::scaled_length(t, slope[j]), out.chamber));
        f.position.push_back(std::move(pos));
        f.degree.push_back(std::vector<int>(f.target.factors.size(), 0));
    }
    return out;
}

// The smallest distance to the circuit of a vertex with positive degree in
// `factor`, or in any factor when factor is empty. Infinite when there is
// none.
inline Radius map_contraction_radius(const TropicalMap& m, std::optional<std::size_t> factor, const Chamber& ch) {
    detail::check_shapes(m);
    if (factor && *factor >= m.target.factors.size()) throw Error("factor out of range");
    const auto rs = radial_structure(m.curve);
    std::optional<MonoidForm> best;
    for (std::size_t v = 0; v < m.curve.vertices().size(); ++v) {
        const int d = factor ? m.degree[v][*factor] : m.vertex_degree(v);
        if (d <= 0) continue;
        if (!best) {
            best = rs.lambda[v];
            continue;
        }
        const Ordering o = compare(rs.lambda[v], *best, ch);
        if (o == Ordering::Incomparable) throw Error("curve is not radially aligned in the chamber");
        if (o == Ordering::Less) best = rs.lambda[v];
    }
    return best ? Radius::exact(*best) : Radius::infinity();
}

namespace detail {

inline std::string fresh_label(const TropicalCurve& c, std::size_t& counter) {
    for (;; ++counter) {
        const std::string label = "q" + std::to_string(counter);
        bool used = c.find_leg(label).has_value();
        for (const auto& l : c.legs()) used = used || l.label == label;
        if (!used) {
            ++counter;
            return label;
        }
    }
}

}  // namespace detail

// Adds the first missing coordinate hyperplane of `factor` to the divisor.
// Every vertex of factor degree d gets d new legs of contact order one with
// it, at position zero in the new coordinate; labels q1, q2, ... are the
// first unused ones in vertex order.
inline TropicalMap complete_divisor(const TropicalMap& m, std::size_t factor) {
    detail::check_shapes(m);
    if (factor >= m.target.factors.size()) throw Error("factor out of range");
    const auto missing = m.target.missing_coords(factor);
    if (missing.empty()) throw Error("boundary already full");
    TropicalMap f = m;
    f.target.divisors.push_back({factor, missing.front()});
    for (auto& row : f.position) row.push_back(MonoidForm{});
    for (auto& s : f.edge_slope) s.push_back(0);
    for (auto& s : f.contact) s.push_back(0);
    const std::size_t nd = f.target.num_divisors();
    std::size_t counter = 1;
    for (std::size_t v = 0; v < f.curve.vertices().size(); ++v) {
        for (int k = 0; k < m.degree[v][factor]; ++k) {
            const std::string label = detail::fresh_label(f.curve, counter);
            f.curve.add_leg(label, v, label);
            Slope row(nd, 0);
            row.back() = 1;
            f.contact.push_back(std::move(row));
        }
    }
    return f;
}

// Drops divisor component j together with the legs whose only contact is
// with it.
inline TropicalMap forget_divisor(const TropicalMap& m, std::size_t j) {
    detail::check_shapes(m);
    if (j >= m.target.num_divisors()) throw Error("divisor out of range");
    TropicalMap f;
    f.target = m.target;
    f.target.divisors.erase(f.target.divisors.begin() + static_cast<std::ptrdiff_t>(j));
    for (const auto& v : m.curve.vertices()) f.curve.add_vertex(v.name, v.genus);
    for (const auto& e : m.curve.edges()) f.curve.add_edge(e.name, e.u, e.v, e.length);
    f.degree = m.degree;
    auto drop = [j](auto row) {
        row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
        return row;
    };
    for (const auto& row : m.position) f.position.push_back(drop(row));
    for (const auto& s : m.edge_slope) f.edge_slope.push_back(drop(s));
    for (std::size_t l = 0; l < m.curve.legs().size(); ++l) {
        const Slope rest = drop(m.contact[l]);
        const bool only_j = m.contact[l][j] != 0 &&
                            std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; });
        if (only_j) continue;
        const Leg& leg = m.curve.legs()[l];
        f.curve.add_leg(leg.name, leg.vertex, leg.label);
        f.contact.push_back(rest);
    }
    return f;
}

inline TropicalMap complete_to_toric(const TropicalMap& m) {
    TropicalMap f = m;
    for (std::size_t a = 0; a < m.target.factors.size(); ++a)
        while (!f.target.missing_coords(a).empty()) f = complete_divisor(f, a);
    return f;
}

}  // namespace troplog
