#pragma once

// Genus one tropical curves and their radial geometry: the circuit, the
// distance function lambda to it, alignment chambers, circles of a given
// radius, and the contraction of a disc around the circuit.

#include "troplog/error.hpp"
#include "troplog/forms.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace troplog {

struct Vertex {
    std::string name;
    int genus = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    std::string name;
    std::size_t u = 0;
    std::size_t v = 0;
    MonoidForm length;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// An unbounded edge carrying the marking `label`.
struct Leg {
    std::string name;
    std::size_t vertex = 0;
    std::string label;
    friend bool operator==(const Leg&, const Leg&) = default;
};

class TropicalCurve {
public:
    std::size_t add_vertex(std::string name, int genus = 0) {
        if (genus < 0) throw Error("vertex genus must be nonnegative");
        if (find_vertex(name)) throw Error("duplicate vertex '" + name + "'");
        vertices_.push_back({std::move(name), genus});
        return vertices_.size() - 1;
    }

    std::size_t add_edge(std::string name, std::size_t u, std::size_t v, MonoidForm length) {
        if (u >= vertices_.size() || v >= vertices_.size()) throw Error("edge endpoint out of range");
        if (length.is_zero()) throw Error("edge '" + name + "' has zero length");
        if (find_edge(name)) throw Error("duplicate edge '" + name + "'");
        edges_.push_back({std::move(name), u, v, std::move(length)});
        return edges_.size() - 1;
    }

    std::size_t add_leg(std::string name, std::size_t vertex, std::string label) {
        if (vertex >= vertices_.size()) throw Error("leg vertex out of range");
        if (find_leg(name)) throw Error("duplicate leg '" + name + "'");
        legs_.push_back({std::move(name), vertex, std::move(label)});
        return legs_.size() - 1;
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Leg>& legs() const { return legs_; }
    std::vector<Edge>& mutable_edges() { return edges_; }
    std::vector<Leg>& mutable_legs() { return legs_; }

    std::optional<std::size_t> find_vertex(std::string_view name) const { return find(vertices_, name); }
    std::optional<std::size_t> find_edge(std::string_view name) const { return find(edges_, name); }
    std::optional<std::size_t> find_leg(std::string_view name) const { return find(legs_, name); }

    std::vector<std::size_t> edges_at(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < edges_.size(); ++e)
            if (edges_[e].u == v || edges_[e].v == v) out.push_back(e);
        return out;
    }

    std::vector<std::size_t> legs_at(std::size_t v) const {
        std::vector<std::size_t> out;
        for (std::size_t l = 0; l < legs_.size(); ++l)
            if (legs_[l].vertex == v) out.push_back(l);
        return out;
    }

    // Edge germs plus legs; a loop contributes two germs.
    std::size_t valence(std::size_t v) const {
        std::size_t n = legs_at(v).size();
        for (const auto& e : edges_) n += (e.u == v) + (e.v == v);
        return n;
    }

    bool connected() const {
        if (vertices_.empty()) return false;
        std::vector<bool> seen(vertices_.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (const auto& e : edges_) {
                if (e.u != v && e.v != v) continue;
                const std::size_t w = e.u == v ? e.v : e.u;
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    int betti_number() const {
        return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
    }

    int total_genus() const {
        int g = betti_number();
        for (const auto& v : vertices_) g += v.genus;
        return g;
    }

    std::size_t max_param_extent() const {
        std::size_t n = 0;
        for (const auto& e : edges_) n = std::max(n, e.length.extent());
        return n;
    }

    friend bool operator==(const TropicalCurve&, const TropicalCurve&) = default;

private:
    template <typename T>
    static std::optional<std::size_t> find(const std::vector<T>& items, std::string_view name) {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (items[i].name == name) return i;
        return std::nullopt;
    }

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Leg> legs_;
};

// Returns a name built from `stem` that no vertex of c uses yet.
inline std::string fresh_vertex_name(const TropicalCurve& c, const std::string& stem) {
    for (std::size_t k = 1;; ++k) {
        std::string name = stem + std::to_string(k);
        if (!c.find_vertex(name)) return name;
    }
}

inline std::string fresh_edge_name(const TropicalCurve& c, const std::string& stem) {
    for (std::size_t k = 1;; ++k) {
        std::string name = stem + std::to_string(k);
        if (!c.find_edge(name)) return name;
    }
}

struct Circuit {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
    friend bool operator==(const Circuit&, const Circuit&) = default;
};

inline void require_genus_one(const TropicalCurve& c) {
    if (!c.connected()) throw Error("curve is not connected");
    if (c.total_genus() != 1) throw Error("not genus one");
}

// The minimal genus one subcurve: the genus one vertex of a tree, or the
// unique cycle.
inline Circuit circuit_of(const TropicalCurve& c) {
    require_genus_one(c);
    Circuit out;
    if (c.betti_number() == 0) {
        for (std::size_t v = 0; v < c.vertices().size(); ++v)
            if (c.vertices()[v].genus == 1) out.vertices.push_back(v);
        return out;
    }
    // Strip leaves until only the cycle remains.
    const auto& edges = c.edges();
    std::vector<bool> alive(edges.size(), true);
    std::vector<std::size_t> degree(c.vertices().size(), 0);
    for (const auto& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::queue<std::size_t> leaves;
    for (std::size_t v = 0; v < degree.size(); ++v)
        if (degree[v] == 1) leaves.push(v);
    while (!leaves.empty()) {
        const std::size_t v = leaves.front();
        leaves.pop();
        if (degree[v] != 1) continue;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!alive[e] || (edges[e].u != v && edges[e].v != v)) continue;
            alive[e] = false;
            const std::size_t w = edges[e].u == v ? edges[e].v : edges[e].u;
            --degree[v];
            if (--degree[w] == 1) leaves.push(w);
            break;
        }
    }
    std::set<std::size_t> vs;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!alive[e]) continue;
        out.edges.push_back(e);
        vs.insert(edges[e].u);
        vs.insert(edges[e].v);
    }
    out.vertices.assign(vs.begin(), vs.end());
    return out;
}

// Distances of every vertex to the circuit, with the tree structure that
// realizes them. parent_edge[v] is the edge from v towards the circuit.
struct RadialStructure {
    Circuit circuit;
    std::vector<MonoidForm> lambda;
    std::vector<std::optional<std::size_t>> parent_edge;
    std::vector<bool> on_circuit;

    // The endpoint of a non-circuit edge that is closer to the circuit.
    std::size_t inner_end(const TropicalCurve& c, std::size_t e) const {
        const Edge& edge = c.edges()[e];
        return parent_edge[edge.v] == e ? edge.u : edge.v;
    }
    std::size_t outer_end(const TropicalCurve& c, std::size_t e) const {
        const Edge& edge = c.edges()[e];
        return parent_edge[edge.v] == e ? edge.v : edge.u;
    }
    bool is_circuit_edge(std::size_t e) const {
        return std::find(circuit.edges.begin(), circuit.edges.end(), e) != circuit.edges.end();
    }
};

inline RadialStructure radial_structure(const TropicalCurve& c) {
    RadialStructure rs;
    rs.circuit = circuit_of(c);
    const std::size_t n = c.vertices().size();
    rs.lambda.assign(n, MonoidForm{});
    rs.parent_edge.assign(n, std::nullopt);
    rs.on_circuit.assign(n, false);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> queue;
    for (std::size_t v : rs.circuit.vertices) {
        rs.on_circuit[v] = true;
        seen[v] = true;
        queue.push(v);
    }
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop();
        for (std::size_t e = 0; e < c.edges().size(); ++e) {
            const Edge& edge = c.edges()[e];
            if (edge.u != v && edge.v != v) continue;
            const std::size_t w = edge.u == v ? edge.v : edge.u;
            if (seen[w]) continue;
            seen[w] = true;
            rs.lambda[w] = rs.lambda[v] + edge.length;
            rs.parent_edge[w] = e;
            queue.push(w);
        }
    }
    return rs;
}

inline MonoidForm lambda_of(const TropicalCurve& c, std::size_t v) {
    if (v >= c.vertices().size()) throw Error("unknown vertex");
    return radial_structure(c).lambda[v];
}

inline std::vector<MonoidForm> distinct_distances(const RadialStructure& rs) {
    std::vector<MonoidForm> out;
    for (const auto& l : rs.lambda)
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    return out;
}

// Chambers refining ch on which all vertex distances are totally preordered.
inline std::vector<Chamber> alignment_chambers(const TropicalCurve& c, const Chamber& ch) {
    const auto forms = distinct_distances(radial_structure(c));
    return chamber_refinements(forms, ch);
}

inline bool is_radially_aligned(const TropicalCurve& c, const Chamber& ch) {
    const auto forms = distinct_distances(radial_structure(c));
    for (std::size_t a = 0; a < forms.size(); ++a)
        for (std::size_t b = a + 1; b < forms.size(); ++b)
            if (form_sub_sign(forms[a], forms[b], ch) == Ordering::Incomparable) return false;
    return true;
}

// Distinct vertex distances in ascending chamber order, each with the
// vertices at that distance.
struct DistanceLevel {
    MonoidForm distance;
    std::vector<std::size_t> vertices;
};

inline std::vector<DistanceLevel> distance_levels(const RadialStructure& rs, const Chamber& ch) {
    std::vector<LinearForm> forms;
    for (const auto& l : rs.lambda) forms.push_back(l.linear());
    std::vector<std::vector<std::size_t>> groups;
    try {
        groups = sort_in_chamber(forms, ch);
    } catch (const Error&) {
        if (!chamber_feasible(ch)) throw Error("empty chamber");
        throw Error("curve is not radially aligned in the chamber");
    }
    std::vector<DistanceLevel> out;
    for (auto& g : groups) out.push_back({rs.lambda[g.front()], std::move(g)});
    return out;
}

// A circle radius: an exact distance, a distance shifted by an infinitesimal
// epsilon, or infinity. Ordered lexicographically by (base, shift).
struct Radius {
    enum class Kind { Exact, JustAfter, Infinite };
    MonoidForm base;
    Kind kind = Kind::Exact;

    static Radius exact(MonoidForm f) { return {std::move(f), Kind::Exact}; }
    static Radius just_after(MonoidForm f) { return {std::move(f), Kind::JustAfter}; }
    static Radius infinity() { return {MonoidForm{}, Kind::Infinite}; }

    bool is_infinite() const { return kind == Kind::Infinite; }
    friend bool operator==(const Radius&, const Radius&) = default;
};

inline Ordering compare_radius(const Radius& a, const Radius& b, const Chamber& ch) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return Ordering::Equal;
        return a.is_infinite() ? Ordering::Greater : Ordering::Less;
    }
    const Ordering o = form_sub_sign(a.base, b.base, ch);
    if (o != Ordering::Equal) return o;
    if (a.kind == b.kind) return Ordering::Equal;
    return a.kind == Radius::Kind::Exact ? Ordering::Less : Ordering::Greater;
}

inline std::string format_radius(const Radius& r, const Chamber& ch) {
    switch (r.kind) {
        case Radius::Kind::Exact: return ch.format(r.base);
        case Radius::Kind::JustAfter: return ch.format(r.base) + " + eps";
        case Radius::Kind::Infinite: return "inf";
    }
    return "?";
}

// -1 inside the circle, 0 on it, +1 outside. A just-after radius has no
// vertices on it: distances <= base are inside.
inline int side_of(const MonoidForm& lambda, const Radius& r, const Chamber& ch) {
    if (r.is_infinite()) return -1;
    const Ordering o = form_sub_sign(lambda, r.base, ch);
    if (o == Ordering::Incomparable) throw Error("radius is not comparable to every vertex distance");
    if (r.kind == Radius::Kind::JustAfter) return o == Ordering::Greater ? 1 : -1;
    return o == Ordering::Less ? -1 : (o == Ordering::Equal ? 0 : 1);
}

// Germs at the points where the circle of radius r meets the curve. Inner
// germs point towards the circuit, outer germs away from it; a leg at a
// vertex on the circle is an outer germ and a leg based strictly inside
// crosses the circle like an edge.
struct CircleValence {
    std::size_t inner = 0;
    std::size_t outer = 0;
    friend bool operator==(const CircleValence&, const CircleValence&) = default;
};

inline CircleValence circle_valence(const TropicalCurve& c, const RadialStructure& rs, const Radius& r,
                                    const Chamber& ch) {
    CircleValence val;
    std::vector<int> side(c.vertices().size());
    for (std::size_t v = 0; v < side.size(); ++v) side[v] = side_of(rs.lambda[v], r, ch);
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        if (rs.is_circuit_edge(e)) continue;
        const int si = side[rs.inner_end(c, e)];
        const int so = side[rs.outer_end(c, e)];
        if (si < 0 && so > 0) {
            ++val.inner;
            ++val.outer;
        } else if (si == 0 && so > 0) {
            ++val.outer;
        } else if (si < 0 && so == 0) {
            ++val.inner;
        }
    }
    for (const auto& leg : c.legs()) {
        const int s = side[leg.vertex];
        if (s < 0) {
            ++val.inner;
            ++val.outer;
        } else if (s == 0) {
            ++val.outer;
        }
    }
    return val;
}

// Candidate radii in ascending order: each distinct vertex distance followed
// by the open interval just after it.
inline std::vector<Radius> candidate_radii(const RadialStructure& rs, const Chamber& ch) {
    std::vector<Radius> out;
    for (const auto& level : distance_levels(rs, ch)) {
        out.push_back(Radius::exact(level.distance));
        out.push_back(Radius::just_after(level.distance));
    }
    return out;
}

// The smallest radius whose circle has inner valence <= m and outer
// valence > m.
inline Radius contraction_radius_for_m(const TropicalCurve& c, int m, const Chamber& ch) {
    if (m < 1) throw Error("m must be positive");
    const auto rs = radial_structure(c);
    for (const auto& r : candidate_radii(rs, ch)) {
        const auto val = circle_valence(c, rs, r, ch);
        if (val.inner <= static_cast<std::size_t>(m) && val.outer > static_cast<std::size_t>(m)) return r;
    }
    throw Error("no admissible radius");
}

// Splits edge e at `first` from its u endpoint; the edge keeps its index and
// orientation and ends at the new vertex, and a second edge continues to the
// old v endpoint. Returns the new vertex.
inline std::size_t split_edge(TropicalCurve& c, std::size_t e, MonoidForm first, MonoidForm second,
                              const std::string& vertex_name) {
    const Edge old = c.edges()[e];
    const std::size_t w = c.add_vertex(vertex_name, 0);
    c.mutable_edges()[e] = {old.name, old.u, w, std::move(first)};
    if (c.edges()[e].length.is_zero()) throw Error("edge split at its endpoint");
    c.add_edge(fresh_edge_name(c, old.name + "_"), w, old.v, std::move(second));
    return w;
}

struct Destabilization {
    TropicalCurve curve;
    Chamber chamber;
    std::vector<std::size_t> new_vertices;
};

// Inserts a two-valent genus zero vertex wherever an edge crosses the circle
// of radius r. Pieces whose length is not a nonnegative combination of
// existing parameters get a fresh parameter pinned by an equality; at a
// just-after radius the common crossing distance is a fresh parameter
// strictly between the base and the next vertex distance.
inline Destabilization destabilize_at(const TropicalCurve& c, const Radius& r, const Chamber& ch) {
    if (r.is_infinite()) throw Error("cannot destabilize at infinite radius");
    const auto rs = radial_structure(c);
    Destabilization out{c, ch, {}};

    std::vector<int> side(c.vertices().size());
    for (std::size_t v = 0; v < side.size(); ++v) side[v] = side_of(rs.lambda[v], r, ch);
    std::vector<std::size_t> crossing;
    for (std::size_t e = 0; e < c.edges().size(); ++e)
        if (!rs.is_circuit_edge(e) && side[rs.inner_end(c, e)] < 0 && side[rs.outer_end(c, e)] > 0)
            crossing.push_back(e);
    if (crossing.empty()) return out;

    std::optional<MonoidForm> next_level;
    if (r.kind == Radius::Kind::JustAfter) {
        for (const auto& level : distance_levels(rs, ch))
            if (form_sub_sign(level.distance, r.base, ch) == Ordering::Greater) {
                next_level = level.distance;
                break;
            }
    }

    std::optional<LinearForm> crossing_distance;  // lambda of the first split point
    for (std::size_t e : crossing) {
        const std::size_t inner = rs.inner_end(c, e);
        const MonoidForm& len = c.edges()[e].length;
        MonoidForm inner_piece, outer_piece;
        if (r.kind == Radius::Kind::Exact) {
            inner_piece = materialize(r.base.linear() - rs.lambda[inner].linear(), out.chamber);
            outer_piece = materialize(rs.lambda[rs.outer_end(c, e)].linear() - r.base.linear(), out.chamber);
        } else {
            const std::size_t t = out.chamber.add_parameter("t");
            inner_piece = MonoidForm::param(t);
            const MonoidForm reach = rs.lambda[inner] + inner_piece;
            if (!crossing_distance) {
                crossing_distance = reach.linear();
                out.chamber.add_constraint({r.base, Relation::Less, reach});
                if (next_level) out.chamber.add_constraint({reach, Relation::Less, *next_level});
            } else {
                out.chamber.add_constraint(constraint_from_difference(reach.linear() - *crossing_distance, Relation::Equal));
            }
            outer_piece = materialize(len.linear() - inner_piece.linear(), out.chamber);
        }
        const bool inner_is_u = c.edges()[e].u == inner;
        const std::string name = fresh_vertex_name(out.curve, c.edges()[e].name + "@");
        const std::size_t w = inner_is_u ? split_edge(out.curve, e, inner_piece, outer_piece, name)
                                         : split_edge(out.curve, e, outer_piece, inner_piece, name);
        out.new_vertices.push_back(w);
    }
    return out;
}

enum class SingularityKind { SmoothElliptic, Cusp, Tacnode, Lines };

inline std::string_view to_string(SingularityKind k) {
    switch (k) {
        case SingularityKind::SmoothElliptic: return "smooth-elliptic";
        case SingularityKind::Cusp: return "cusp";
        case SingularityKind::Tacnode: return "tacnode";
        case SingularityKind::Lines: return "m-lines";
    }
    return "?";
}

// The elliptic m-fold point with the given number of branches.
struct SingularityDescriptor {
    int branches = 0;
    SingularityKind kind = SingularityKind::SmoothElliptic;
    std::string local_ring;

    static SingularityDescriptor with_branches(int m) {
        if (m < 0) throw Error("negative branch count");
        SingularityDescriptor d{m, SingularityKind::SmoothElliptic, "k[[t]]"};
        if (m == 1) {
            d.kind = SingularityKind::Cusp;
            d.local_ring = "k[[x,y]]/(y^2 - x^3)";
        } else if (m == 2) {
            d.kind = SingularityKind::Tacnode;
            d.local_ring = "k[[x,y]]/(y^2 - x^2*y)";
        } else if (m == 3) {
            d.kind = SingularityKind::Lines;
            d.local_ring = "k[[x,y]]/(x^2*y - x*y^2)";
        } else if (m >= 4) {
            d.kind = SingularityKind::Lines;
            d.local_ring = "k[[x1..x" + std::to_string(m - 1) + "]]/(x_h*x_i - x_h*x_j : h,i,j distinct)";
        }
        return d;
    }
    friend bool operator==(const SingularityDescriptor&, const SingularityDescriptor&) = default;
};

struct Contraction {
    TropicalCurve curve;
    Chamber chamber;
    SingularityDescriptor singularity;
    std::size_t core = 0;  // the merged genus one vertex
};

// Merges the closed disc of radius r into a single genus one vertex, after
// destabilizing along the circle. The branch count of the resulting
// singularity is the number of germs leaving the merged vertex.
inline Contraction contract_circle(const TropicalCurve& c, const Radius& r, const Chamber& ch) {
    if (r.is_infinite()) throw Error("cannot contract at infinite radius");
    Destabilization d = destabilize_at(c, r, ch);
    const auto rs = radial_structure(d.curve);
    std::vector<bool> inside(d.curve.vertices().size(), false);
    for (std::size_t v = 0; v < inside.size(); ++v) inside[v] = side_of(rs.lambda[v], r, d.chamber) <= 0;
    for (std::size_t w : d.new_vertices) inside[w] = true;

    TropicalCurve out;
    std::vector<std::size_t> index(d.curve.vertices().size());
    const std::string core_name = d.curve.vertices()[rs.circuit.vertices.front()].name;
    std::optional<std::size_t> core_index;
    for (std::size_t v = 0; v < inside.size(); ++v) {
        if (!inside[v]) {
            index[v] = out.add_vertex(d.curve.vertices()[v].name, d.curve.vertices()[v].genus);
        } else {
            if (!core_index) core_index = out.add_vertex(core_name, 1);
            index[v] = *core_index;
        }
    }
    const std::size_t core = *core_index;
    for (const auto& e : d.curve.edges()) {
        if (inside[e.u] && inside[e.v]) continue;
        out.add_edge(e.name, index[e.u], index[e.v], e.length);
    }
    for (const auto& leg : d.curve.legs()) out.add_leg(leg.name, index[leg.vertex], leg.label);
    if (out.total_genus() != 1) throw Error("contraction changed the genus");
    const int branches = static_cast<int>(out.valence(core));
    return {std::move(out), std::move(d.chamber), SingularityDescriptor::with_branches(branches), core};
}

}  // namespace troplog
