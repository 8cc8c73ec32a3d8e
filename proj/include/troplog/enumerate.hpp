#pragma once

// Enumeration of combinatorial types of genus one tropical maps with a
// bounded number of vertices. A type is a decorated graph (genera, degrees,
// markings, contact rows, edge slopes, which divisor components contain the
// circuit) together with a cone of edge lengths and circuit heights on which
// all distances and positions are totally preordered. Each cone is expanded
// along the subdivision given by the vertex positions and flagged for radial
// alignment, transversality and well-spacedness.

#include "troplog/curve.hpp"
#include "troplog/dimension.hpp"
#include "troplog/error.hpp"
#include "troplog/forms.hpp"
#include "troplog/tropmap.hpp"
#include "troplog/wellspaced.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace troplog {

struct SkeletonEdge {
    std::size_t u = 0, v = 0;
    Slope slope;  // from u to v

    friend auto operator<=>(const SkeletonEdge&, const SkeletonEdge&) = default;
};

struct Skeleton {
    std::vector<int> genus;
    std::vector<Multidegree> degree;
    std::vector<SkeletonEdge> edges;
    std::vector<std::size_t> marking_vertex;
    std::vector<Slope> contact;  // one row per marking
    std::vector<bool> circuit_in_divisor;

    std::size_t num_vertices() const { return genus.size(); }

    friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

struct StratumType {
    Skeleton skeleton;
    TargetModel target;
    Chamber cone;  // edge lengths e1.. and circuit heights h1..
    TropicalMap map;  // expanded
    Chamber chamber;  // the cone with the parameters added by expansion
    Subdivision subdivision;
    bool aligned = false;
    bool transverse = false;
    bool well_spaced = false;
    std::string line;
};

struct EnumerationOptions {
    int threshold = 3;
    std::optional<ContactMatrix> gamma;  // all compatible contact matrices when empty
    std::optional<std::size_t> guard;    // TROPLOG_MAX_ENUM or the default when empty
};

inline constexpr std::size_t default_enumeration_guard = 200000;

inline std::size_t enumeration_guard() {
    if (const char* env = std::getenv("TROPLOG_MAX_ENUM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) throw Error("TROPLOG_MAX_ENUM must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return default_enumeration_guard;
}

namespace detail {

inline std::string join_ints(const auto& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

inline std::string encode(const Skeleton& s) {
    std::string out;
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        out += "g" + std::to_string(s.genus[v]) + "d(" + join_ints(s.degree[v]) + ");";
    out += "|";
    for (const auto& e : s.edges) out += std::to_string(e.u) + "-" + std::to_string(e.v) + "(" + join_ints(e.slope) + ");";
    out += "|" + join_ints(s.marking_vertex) + "|";
    for (const auto& row : s.contact) out += "(" + join_ints(row) + ")";
    out += "|";
    for (bool b : s.circuit_in_divisor) out += b ? '1' : '0';
    return out;
}

inline SkeletonEdge oriented(std::size_t a, std::size_t b, Slope slope) {
    if (a > b) {
        for (auto& x : slope) x = -x;
        std::swap(a, b);
    }
    return {a, b, std::move(slope)};
}

// The skeleton with vertex v renamed perm[v]; edges are normalized to run
// from the smaller to the larger index and sorted.
inline Skeleton permuted(const Skeleton& s, const std::vector<std::size_t>& perm) {
    Skeleton out = s;
    for (std::size_t v = 0; v < s.num_vertices(); ++v) {
        out.genus[perm[v]] = s.genus[v];
        out.degree[perm[v]] = s.degree[v];
    }
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        out.edges[i] = oriented(perm[s.edges[i].u], perm[s.edges[i].v], s.edges[i].slope);
    std::sort(out.edges.begin(), out.edges.end());
    for (auto& v : out.marking_vertex) v = perm[v];
    return out;
}

inline Skeleton canonical(const Skeleton& s) {
    std::vector<std::size_t> perm(s.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Skeleton> best;
    std::string best_key;
    do {
        Skeleton p = permuted(s, perm);
        std::string key = encode(p);
        if (!best || key < best_key) {
            best = std::move(p);
            best_key = std::move(key);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

// Edge-index permutations induced by the automorphisms of a canonical
// skeleton; identical parallel edges may be exchanged freely.
inline std::vector<std::vector<std::size_t>> edge_automorphisms(const Skeleton& s) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> perm(s.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (!(permuted(s, perm) == s)) continue;
        std::vector<std::vector<std::size_t>> choices(s.edges.size());
        for (std::size_t i = 0; i < s.edges.size(); ++i) {
            const SkeletonEdge image = oriented(perm[s.edges[i].u], perm[s.edges[i].v], s.edges[i].slope);
            for (std::size_t k = 0; k < s.edges.size(); ++k)
                if (s.edges[k] == image) choices[i].push_back(k);
        }
        std::vector<std::size_t> current;
        std::vector<bool> used(s.edges.size(), false);
        auto assign = [&](auto&& self, std::size_t i) -> void {
            if (i == s.edges.size()) {
                out.push_back(current);
                return;
            }
            for (std::size_t k : choices[i]) {
                if (used[k]) continue;
                used[k] = true;
                current.push_back(k);
                self(self, i + 1);
                current.pop_back();
                used[k] = false;
            }
        };
        assign(assign, 0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline LinearForm remap(const LinearForm& f, const std::vector<std::size_t>& param_map) {
    LinearForm out;
    for (const auto& [i, c] : f.coeffs()) out.set(param_map[i], out.coeff(param_map[i]) + c);
    return out;
}

inline Chamber remap(const Chamber& ch, const std::vector<std::size_t>& param_map) {
    std::vector<Constraint> constraints;
    for (const auto& c : ch.constraints())
        constraints.push_back({MonoidForm(remap(c.lhs.linear(), param_map)), c.rel,
                               MonoidForm(remap(c.rhs.linear(), param_map))});
    return Chamber(ch.params(), std::move(constraints));
}

inline bool holds(const Constraint& c, const Chamber& ch) {
    const Ordering o = compare(c.lhs.linear(), c.rhs.linear(), ch);
    switch (c.rel) {
        case Relation::Less: return o == Ordering::Less;
        case Relation::LessEqual: return o == Ordering::Less || o == Ordering::Equal;
        case Relation::Equal: return o == Ordering::Equal;
    }
    return false;
}

inline bool same_cone(const Chamber& a, const Chamber& b) {
    return std::all_of(a.constraints().begin(), a.constraints().end(), [&](const Constraint& c) { return holds(c, b); }) &&
           std::all_of(b.constraints().begin(), b.constraints().end(), [&](const Constraint& c) { return holds(c, a); });
}

// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
inline std::vector<std::vector<int>> compositions(int total, std::size_t parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<int> current(parts, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == parts) {
            current[i] = left;
            out.push_back(current);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            current[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, total);
    return out;
}

// Calls f on every element of the product of the given ranges of choices.
template <class F>
void for_each_product(const std::vector<std::size_t>& sizes, F&& f) {
    std::vector<std::size_t> index(sizes.size(), 0);
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t n) { return n == 0; })) return;
    while (true) {
        f(index);
        std::size_t i = 0;
        while (i < sizes.size() && ++index[i] == sizes[i]) index[i++] = 0;
        if (i == sizes.size()) return;
    }
}

class Budget {
public:
    explicit Budget(std::size_t limit) : limit_(limit) {}
    void spend() {
        if (++used_ > limit_) throw Error("search space too large");
    }

private:
    std::size_t limit_;
    std::size_t used_ = 0;
};

// Connected multigraphs on n vertices with first Betti number b, as sorted
// edge lists.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> graph_shapes(std::size_t n, int b,
                                                                                  Budget& budget) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = a; c < n; ++c) pairs.push_back({a, c});
    const std::size_t num_edges = n - 1 + static_cast<std::size_t>(b);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
    std::vector<std::pair<std::size_t, std::size_t>> current;
    auto connected = [&] {
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t components = n;
        for (const auto& [a, c] : current) {
            const auto ra = find(a), rc = find(c);
            if (ra != rc) {
                parent[ra] = rc;
                --components;
            }
        }
        return components == 1;
    };
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (current.size() == num_edges) {
            budget.spend();
            if (connected()) out.push_back(current);
            return;
        }
        for (std::size_t i = start; i < pairs.size(); ++i) {
            current.push_back(pairs[i]);
            self(self, i);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline int total_degree(const Multidegree& d) { return std::accumulate(d.begin(), d.end(), 0); }

// Contracted vertices must be stable; a rational vertex glued to itself needs
// two points with the same image, impossible in a factor of degree one.
inline bool admissible(const Skeleton& s) {
    std::vector<int> valence(s.num_vertices(), 0);
    std::vector<bool> self_glued(s.num_vertices(), false);
    for (const auto& e : s.edges) {
        ++valence[e.u];
        ++valence[e.v];
        if (e.u == e.v) self_glued[e.u] = true;
    }
    for (auto v : s.marking_vertex) ++valence[v];
    for (std::size_t v = 0; v < s.num_vertices(); ++v) {
        if (total_degree(s.degree[v]) == 0 && 2 * s.genus[v] - 2 + valence[v] <= 0) return false;
        if (self_glued[v] && s.genus[v] == 0)
            for (int d : s.degree[v])
                if (d == 1) return false;
    }
    return true;
}

struct Layout {
    std::size_t root = 0;
    std::vector<std::size_t> order;                // breadth-first from the root
    std::vector<std::optional<std::size_t>> via;   // tree edge to the parent
    std::optional<std::size_t> closing;            // the edge outside the tree
};

inline Layout layout(const Skeleton& s) {
    Layout out;
    const std::size_t n = s.num_vertices();
    const auto g1 = std::find(s.genus.begin(), s.genus.end(), 1);
    if (g1 != s.genus.end()) {
        out.root = static_cast<std::size_t>(g1 - s.genus.begin());
    } else {
        // smallest vertex on the cycle: strip leaves
        std::vector<int> deg(n, 0);
        for (const auto& e : s.edges) {
            ++deg[e.u];
            ++deg[e.v];
        }
        std::vector<bool> removed(n, false);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t v = 0; v < n; ++v) {
                if (removed[v] || deg[v] != 1) continue;
                removed[v] = true;
                changed = true;
                for (const auto& e : s.edges)
                    if (e.u == v && !removed[e.v]) --deg[e.v];
                    else if (e.v == v && !removed[e.u]) --deg[e.u];
                deg[v] = 0;
            }
        }
        out.root = static_cast<std::size_t>(std::find(removed.begin(), removed.end(), false) - removed.begin());
    }
    out.via.assign(n, std::nullopt);
    std::vector<bool> seen(n, false), used(s.edges.size(), false);
    seen[out.root] = true;
    out.order.push_back(out.root);
    for (std::size_t k = 0; k < out.order.size(); ++k) {
        const std::size_t v = out.order[k];
        for (std::size_t i = 0; i < s.edges.size(); ++i) {
            const auto& e = s.edges[i];
            if (used[i] || (e.u != v && e.v != v)) continue;
            const std::size_t w = e.u == v ? e.v : e.u;
            if (seen[w]) continue;
            seen[w] = true;
            used[i] = true;
            out.via[w] = i;
            out.order.push_back(w);
        }
    }
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        if (!used[i]) out.closing = i;
    return out;
}

// Slopes forced by the degree condition at every vertex: the outgoing slopes
// in coordinate j plus the contact orders there equal the degree of the
// factor of j. The edge outside the tree carries the free slope `circulation`.
inline std::vector<Slope> forced_slopes(const Skeleton& s, const TargetModel& target, const Layout& lay,
                                        const Slope& circulation) {
    const std::size_t nd = target.num_divisors();
    std::vector<Slope> slope(s.edges.size(), Slope(nd, 0));
    if (lay.closing) slope[*lay.closing] = circulation;
    for (std::size_t j = 0; j < nd; ++j) {
        const std::size_t a = target.divisors[j].factor;
        std::vector<std::int64_t> demand(s.num_vertices(), 0);
        for (std::size_t v = 0; v < s.num_vertices(); ++v) demand[v] = s.degree[v][a];
        for (std::size_t i = 0; i < s.marking_vertex.size(); ++i) demand[s.marking_vertex[i]] -= s.contact[i][j];
        if (lay.closing) {
            const auto& e = s.edges[*lay.closing];
            demand[e.u] -= circulation[j];
            demand[e.v] += circulation[j];
        }
        for (auto it = lay.order.rbegin(); it != lay.order.rend(); ++it) {
            const std::size_t c = *it;
            if (!lay.via[c]) continue;
            const std::size_t i = *lay.via[c];
            const auto& e = s.edges[i];
            const std::size_t p = e.u == c ? e.v : e.u;
            const std::int64_t down = -demand[c];  // slope from p to c
            slope[i][j] = e.u == p ? down : -down;
            demand[p] += demand[c];
        }
    }
    return slope;
}

// Going around the cycle every coordinate must return to its start, so the
// cycle slopes in each coordinate are all zero or of both signs.
inline bool cycle_can_close(const Skeleton& s, const Layout& lay) {
    if (!lay.closing) return true;
    const auto& closing = s.edges[*lay.closing];
    if (closing.u == closing.v) return std::all_of(closing.slope.begin(), closing.slope.end(), [](auto x) { return x == 0; });
    // walk the tree paths from both ends of the closing edge to their meeting point
    auto path_to_root = [&](std::size_t v) {
        std::vector<std::pair<std::size_t, std::size_t>> steps;  // (edge, child)
        while (lay.via[v]) {
            const auto& e = s.edges[*lay.via[v]];
            steps.push_back({*lay.via[v], v});
            v = e.u == v ? e.v : e.u;
        }
        return steps;
    };
    auto a = path_to_root(closing.u), b = path_to_root(closing.v);
    while (!a.empty() && !b.empty() && a.back() == b.back()) {
        a.pop_back();
        b.pop_back();
    }
    for (std::size_t j = 0; j < closing.slope.size(); ++j) {
        bool pos = false, neg = false;
        auto note = [&](std::int64_t x) {
            pos = pos || x > 0;
            neg = neg || x < 0;
        };
        // orientation: up from u to the meeting point, down to v, then v -> u
        for (const auto& [i, child] : a) note(s.edges[i].v == child ? -s.edges[i].slope[j] : s.edges[i].slope[j]);
        for (const auto& [i, child] : b) note(s.edges[i].v == child ? s.edges[i].slope[j] : -s.edges[i].slope[j]);
        note(-closing.slope[j]);
        if (pos != neg) return false;
    }
    return true;
}

inline std::vector<Skeleton> skeletons(const TargetModel& target, int markings, const Multidegree& degree,
                                       std::size_t max_vertices, const std::optional<ContactMatrix>& gamma,
                                       Budget& budget) {
    const std::size_t nd = target.num_divisors();
    const std::size_t n = static_cast<std::size_t>(markings);
    std::vector<std::vector<Slope>> contact_choices;
    if (gamma) {
        if (gamma->columns != nd) throw Error("contact matrix needs one column per divisor");
        if (gamma->rows.size() != n) throw Error("contact matrix needs one row per marking");
        for (std::size_t j = 0; j < nd; ++j) {
            std::int64_t column = 0;
            for (const auto& row : gamma->rows) column += row.at(j);
            if (column != degree[target.divisors[j].factor]) throw Error("contact orders inconsistent with degree");
        }
        contact_choices.push_back(gamma->rows);
    } else {
        std::vector<std::vector<std::vector<int>>> columns;
        std::vector<std::size_t> sizes;
        for (std::size_t j = 0; j < nd; ++j) {
            columns.push_back(compositions(degree[target.divisors[j].factor], n));
            sizes.push_back(columns.back().size());
        }
        for_each_product(sizes, [&](const std::vector<std::size_t>& pick) {
            budget.spend();
            std::vector<Slope> rows(n, Slope(nd, 0));
            for (std::size_t j = 0; j < nd; ++j)
                for (std::size_t i = 0; i < n; ++i) rows[i][j] = columns[j][pick[j]][i];
            contact_choices.push_back(std::move(rows));
        });
    }

    std::map<std::string, Skeleton> found;
    for (std::size_t nv = 1; nv <= max_vertices; ++nv) {
        for (int b : {0, 1}) {
            for (const auto& shape : graph_shapes(nv, b, budget)) {
                std::vector<std::vector<int>> genera;
                if (b == 1) {
                    genera.push_back(std::vector<int>(nv, 0));
                } else {
                    for (std::size_t v = 0; v < nv; ++v) {
                        genera.push_back(std::vector<int>(nv, 0));
                        genera.back()[v] = 1;
                    }
                }
                std::vector<std::vector<std::vector<int>>> splits;
                std::vector<std::size_t> sizes;
                for (int d : degree) {
                    splits.push_back(compositions(d, nv));
                    sizes.push_back(splits.back().size());
                }
                for (std::size_t i = 0; i < n; ++i) sizes.push_back(nv);
                sizes.push_back(contact_choices.size());
                sizes.push_back(std::size_t{1} << nd);
                for (const auto& genus : genera) {
                    for_each_product(sizes, [&](const std::vector<std::size_t>& pick) {
                        budget.spend();
                        Skeleton s;
                        s.genus = genus;
                        s.degree.assign(nv, Multidegree(degree.size(), 0));
                        for (std::size_t a = 0; a < degree.size(); ++a)
                            for (std::size_t v = 0; v < nv; ++v) s.degree[v][a] = splits[a][pick[a]][v];
                        for (std::size_t i = 0; i < n; ++i) s.marking_vertex.push_back(pick[degree.size() + i]);
                        s.contact = contact_choices[pick[degree.size() + n]];
                        const std::size_t mask = pick[degree.size() + n + 1];
                        for (std::size_t j = 0; j < nd; ++j) s.circuit_in_divisor.push_back((mask >> j) & 1);
                        for (const auto& [u, v] : shape) s.edges.push_back({u, v, Slope(nd, 0)});
                        if (!admissible(s)) return;
                        const Layout lay = layout(s);
                        const auto base = forced_slopes(s, target, lay, Slope(nd, 0));
                        std::int64_t bound = 0;
                        if (lay.closing && s.edges[*lay.closing].u != s.edges[*lay.closing].v)
                            for (const auto& row : base)
                                for (auto x : row) bound = std::max(bound, x < 0 ? -x : x);
                        std::vector<std::size_t> range(nd, static_cast<std::size_t>(2 * bound + 1));
                        for_each_product(range, [&](const std::vector<std::size_t>& t) {
                            budget.spend();
                            Slope circulation(nd);
                            for (std::size_t j = 0; j < nd; ++j) circulation[j] = static_cast<std::int64_t>(t[j]) - bound;
                            Skeleton withslopes = s;
                            const auto slopes = forced_slopes(s, target, lay, circulation);
                            for (std::size_t i = 0; i < s.edges.size(); ++i) withslopes.edges[i].slope = slopes[i];
                            if (!cycle_can_close(withslopes, lay)) return;
                            Skeleton c = canonical(withslopes);
                            found.emplace(encode(c), std::move(c));
                        });
                    });
                }
            }
        }
    }
    std::vector<Skeleton> out;
    for (auto& [key, s] : found) out.push_back(std::move(s));
    return out;
}

inline std::string vertex_name(std::size_t v) { return "v" + std::to_string(v + 1); }

inline std::string describe_levels(const std::vector<LinearForm>& forms, const std::vector<std::string>& names,
                                   const Chamber& ch) {
    std::string out;
    const auto levels = sort_in_chamber(forms, ch);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (k) out += " < ";
        for (std::size_t i = 0; i < levels[k].size(); ++i) {
            if (i) out += " = ";
            out += names[levels[k][i]];
        }
    }
    return out;
}

inline bool circuit_moves(const TropicalMap& m) {
    for (std::size_t e : circuit_of(m.curve).edges)
        for (auto x : m.edge_slope[e])
            if (x != 0) return true;
    return false;
}

}  // namespace detail

// Well-spacedness of an enumerated type. A circuit with nonzero slope is not
// contracted, which the verdict treats like a circuit of positive degree.
inline bool stratum_wellspaced(const TropicalMap& m, const Chamber& ch, int threshold) {
    if (detail::circuit_moves(m)) return true;
    return is_wellspaced(m, ch, threshold).well_spaced;
}

struct StratumFlags {
    bool aligned = false, transverse = false, well_spaced = false;
    friend bool operator==(const StratumFlags&, const StratumFlags&) = default;
};

inline StratumFlags stratum_flags(const TropicalMap& m, const Subdivision& sub, const Chamber& ch, int threshold) {
    return {is_radially_aligned(m.curve, ch), is_transverse(m, sub, ch), stratum_wellspaced(m, ch, threshold)};
}

namespace detail {

inline std::string describe_stratum(const StratumType& t) {
    const Skeleton& s = t.skeleton;
    const TropicalMap& m = t.map;
    const std::size_t nd = t.target.num_divisors();
    std::ostringstream out;
    out << "V=" << s.num_vertices() << " E=" << s.edges.size() << " |";
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        out << ' ' << vertex_name(v) << ":g" << s.genus[v] << " d(" << join_ints(s.degree[v]) << ")";
    out << " |";
    if (s.edges.empty()) out << " -";
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        out << " e" << i + 1 << ":" << vertex_name(s.edges[i].u) << "-" << vertex_name(s.edges[i].v);
        if (nd) out << " s(" << join_ints(s.edges[i].slope) << ")";
    }
    out << " |";
    if (s.marking_vertex.empty()) out << " -";
    for (std::size_t i = 0; i < s.marking_vertex.size(); ++i) {
        out << " p" << i + 1 << "@" << vertex_name(s.marking_vertex[i]);
        if (nd) out << " c(" << join_ints(s.contact[i]) << ")";
    }
    if (nd) {
        out << " | circuit in:";
        bool any = false;
        for (std::size_t j = 0; j < nd; ++j)
            if (s.circuit_in_divisor[j]) {
                out << " D" << j + 1;
                any = true;
            }
        if (!any) out << " -";
    }
    const auto rs = radial_structure(m.curve);
    std::vector<LinearForm> lambda;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < m.curve.vertices().size(); ++v) {
        lambda.push_back(rs.lambda[v].linear());
        names.push_back(m.curve.vertices()[v].name);
    }
    out << " | lambda: " << describe_levels(lambda, names, t.chamber);
    for (std::size_t j = 0; j < nd; ++j) {
        std::vector<LinearForm> pos{LinearForm{}};
        std::vector<std::string> pnames{"0"};
        for (std::size_t v = 0; v < m.curve.vertices().size(); ++v) {
            pos.push_back(m.position[v][j].linear());
            pnames.push_back(m.curve.vertices()[v].name);
        }
        out << " | D" << j + 1 << ": " << describe_levels(pos, pnames, t.chamber);
    }
    out << " | radius all=" << format_radius(map_contraction_radius(m, std::nullopt, t.chamber), t.chamber);
    for (std::size_t a = 0; a < t.target.factors.size(); ++a)
        out << " f" << a + 1 << "=" << format_radius(map_contraction_radius(m, a, t.chamber), t.chamber);
    out << " | " << (t.aligned ? "aligned" : "not-aligned") << ' ' << (t.transverse ? "transverse" : "not-transverse")
        << ' ' << (t.well_spaced ? "well-spaced" : "not-well-spaced");
    return out.str();
}

// Cones of one skeleton, expanded and flagged, up to automorphism.
inline std::vector<StratumType> strata_of(const Skeleton& s, const TargetModel& target, int threshold,
                                          Budget& budget) {
    const std::size_t nd = target.num_divisors();
    const std::size_t ne = s.edges.size();
    std::vector<std::string> params;
    for (std::size_t i = 0; i < ne; ++i) params.push_back("e" + std::to_string(i + 1));
    std::vector<std::optional<std::size_t>> height(nd);
    for (std::size_t j = 0; j < nd; ++j)
        if (s.circuit_in_divisor[j]) {
            height[j] = params.size();
            params.push_back("h" + std::to_string(j + 1));
        }
    Chamber base(params);

    const Layout lay = layout(s);
    std::vector<std::vector<LinearForm>> pos(s.num_vertices(), std::vector<LinearForm>(nd));
    for (std::size_t j = 0; j < nd; ++j)
        if (height[j]) pos[lay.root][j] = LinearForm::param(*height[j]);
    for (std::size_t v : lay.order) {
        if (!lay.via[v]) continue;
        const auto& e = s.edges[*lay.via[v]];
        const std::size_t p = e.u == v ? e.v : e.u;
        for (std::size_t j = 0; j < nd; ++j) {
            const std::int64_t down = e.u == p ? e.slope[j] : -e.slope[j];
            pos[v][j] = pos[p][j] + LinearForm::param(*lay.via[v], Rational(down));
        }
    }
    if (lay.closing) {
        const auto& e = s.edges[*lay.closing];
        for (std::size_t j = 0; j < nd; ++j) {
            const LinearForm gap = pos[e.u][j] + LinearForm::param(*lay.closing, Rational(e.slope[j])) - pos[e.v][j];
            if (!gap.is_zero()) base.add_constraint(constraint_from_difference(gap, Relation::Equal));
        }
    }
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        for (std::size_t j = 0; j < nd; ++j)
            if (!pos[v][j].nonnegative_coeffs())
                base.add_constraint(constraint_from_difference(-pos[v][j], Relation::LessEqual));
    if (!chamber_feasible(base)) return {};

    // positions, one coordinate at a time
    std::vector<Chamber> stage{base};
    for (std::size_t j = 0; j < nd; ++j) {
        std::vector<LinearForm> forms{LinearForm{}};
        for (std::size_t v = 0; v < s.num_vertices(); ++v) forms.push_back(pos[v][j]);
        std::vector<Chamber> next;
        for (const auto& ch : stage)
            for (auto& r : chamber_refinements(std::span<const LinearForm>(forms), ch)) {
                budget.spend();
                next.push_back(std::move(r));
            }
        stage = std::move(next);
    }

    TropicalCurve curve;
    for (std::size_t v = 0; v < s.num_vertices(); ++v) curve.add_vertex(vertex_name(v), s.genus[v]);
    for (std::size_t i = 0; i < ne; ++i)
        curve.add_edge("e" + std::to_string(i + 1), s.edges[i].u, s.edges[i].v, MonoidForm::param(i));
    for (std::size_t i = 0; i < s.marking_vertex.size(); ++i)
        curve.add_leg("p" + std::to_string(i + 1), s.marking_vertex[i], std::to_string(i + 1));
    const auto rs = radial_structure(curve);

    // distances of vertices and of every wall crossing
    std::vector<Chamber> cones;
    for (const auto& ch : stage) {
        std::vector<LinearForm> forms;
        for (std::size_t v = 0; v < s.num_vertices(); ++v) forms.push_back(rs.lambda[v].linear());
        for (std::size_t j = 0; j < nd; ++j) {
            std::vector<LinearForm> walls;
            for (std::size_t v = 0; v < s.num_vertices(); ++v)
                if (compare(pos[v][j], LinearForm{}, ch) == Ordering::Greater) walls.push_back(pos[v][j]);
            for (std::size_t i = 0; i < ne; ++i) {
                if (rs.is_circuit_edge(i)) continue;
                const std::size_t in = rs.inner_end(curve, i), outv = rs.outer_end(curve, i);
                const std::int64_t slope = s.edges[i].u == in ? s.edges[i].slope[j] : -s.edges[i].slope[j];
                if (slope == 0) continue;
                for (const auto& b : walls) {
                    const Ordering lo = compare(pos[in][j], b, ch), hi = compare(b, pos[outv][j], ch);
                    const bool inside = slope > 0 ? lo == Ordering::Less && hi == Ordering::Less
                                                  : lo == Ordering::Greater && hi == Ordering::Greater;
                    if (inside) forms.push_back(rs.lambda[in].linear() + Rational(1, slope) * (b - pos[in][j]));
                }
            }
            for (std::size_t i = 0; i < s.marking_vertex.size(); ++i) {
                const std::int64_t c = s.contact[i][j];
                if (c <= 0) continue;
                const std::size_t v = s.marking_vertex[i];
                for (const auto& b : walls)
                    if (compare(pos[v][j], b, ch) == Ordering::Less)
                        forms.push_back(rs.lambda[v].linear() + Rational(1, c) * (b - pos[v][j]));
            }
        }
        for (auto& r : chamber_refinements(std::span<const LinearForm>(forms), ch)) {
            budget.spend();
            cones.push_back(std::move(r));
        }
    }

    const auto autos = edge_automorphisms(s);
    std::vector<Chamber> kept;
    std::vector<StratumType> out;
    for (const auto& cone : cones) {
        bool duplicate = false;
        for (const auto& sigma : autos) {
            std::vector<std::size_t> param_map(params.size());
            std::iota(param_map.begin(), param_map.end(), 0);
            for (std::size_t i = 0; i < ne; ++i) param_map[i] = sigma[i];
            const Chamber image = remap(cone, param_map);
            if (std::any_of(kept.begin(), kept.end(), [&](const Chamber& k) { return same_cone(image, k); })) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        kept.push_back(cone);

        StratumType t{s, target, cone, {}, cone, {}, false, false, false, ""};
        TropicalMap m;
        m.curve = curve;
        m.target = target;
        m.degree = s.degree;
        for (const auto& e : s.edges) m.edge_slope.push_back(e.slope);
        m.contact = s.contact;
        Chamber ch = cone;
        for (std::size_t v = 0; v < s.num_vertices(); ++v) {
            std::vector<MonoidForm> row;
            for (std::size_t j = 0; j < nd; ++j) row.push_back(materialize(pos[v][j], ch));
            m.position.push_back(std::move(row));
        }
        Subdivision sub = position_subdivision(m, ch);
        auto expansion = expand(m, sub, ch);
        t.map = std::move(expansion.map);
        t.chamber = std::move(expansion.chamber);
        t.subdivision = std::move(sub);
        const auto flags = stratum_flags(t.map, t.subdivision, t.chamber, threshold);
        t.aligned = flags.aligned;
        t.transverse = flags.transverse;
        t.well_spaced = flags.well_spaced;
        t.line = describe_stratum(t);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

// Genus one types with at most max_vertices vertices over the target, of the
// given degree with `markings` marked legs. Sorted by vertex count, then by
// listing line.
inline std::vector<StratumType> enumerate_strata(const TargetModel& target, int markings, const Multidegree& degree,
                                                 std::size_t max_vertices, const EnumerationOptions& options = {}) {
    detail::check_degree(target, degree);
    if (markings < 0) throw Error("negative marking count");
    if (options.threshold < 1) throw Error("threshold must be positive");
    detail::Budget budget(options.guard ? *options.guard : enumeration_guard());
    std::vector<StratumType> out;
    for (const auto& s : detail::skeletons(target, markings, degree, max_vertices, options.gamma, budget))
        for (auto& t : detail::strata_of(s, target, options.threshold, budget)) out.push_back(std::move(t));
    std::stable_sort(out.begin(), out.end(), [](const StratumType& a, const StratumType& b) {
        if (a.skeleton.num_vertices() != b.skeleton.num_vertices())
            return a.skeleton.num_vertices() < b.skeleton.num_vertices();
        return a.line < b.line;
    });
    return out;
}

inline std::string format_listing(const std::vector<StratumType>& strata) {
    std::string out;
    for (std::size_t i = 0; i < strata.size(); ++i) out += "[" + std::to_string(i + 1) + "] " + strata[i].line + "\n";
    return out;
}

}  // namespace troplog
