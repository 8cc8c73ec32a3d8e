#pragma once

// Tropical well-spacedness. A map is well-spaced when its circuit has
// positive degree; otherwise the circuit sits in a block of r divisor
// coordinates and, for every character chi of that block, the flags leaving
// the chi-constant region around the circuit must reach their minimal
// distance often enough.

#include "troplog/curve.hpp"
#include "troplog/error.hpp"
#include "troplog/forms.hpp"
#include "troplog/tropmap.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace troplog {

using Covector = std::vector<std::int64_t>;

struct WSVerdict {
    enum class Reason { CircuitPositiveDegree, ToricConditionPassed, ToricConditionFailed };
    bool well_spaced = true;
    Reason reason = Reason::ToricConditionPassed;
    Covector covector;               // the failing character
    std::vector<MonoidForm> distances;  // its flag distances

    friend bool operator==(const WSVerdict&, const WSVerdict&) = default;
};

inline std::string_view to_string(WSVerdict::Reason r) {
    switch (r) {
        case WSVerdict::Reason::CircuitPositiveDegree: return "circuit-positive-degree";
        case WSVerdict::Reason::ToricConditionPassed: return "toric-condition-passed";
        case WSVerdict::Reason::ToricConditionFailed: return "toric-condition-failed";
    }
    return "?";
}

namespace detail {

inline std::int64_t dot(const Covector& chi, const Slope& s, std::span<const std::size_t> block) {
    std::int64_t out = 0;
    for (std::size_t k = 0; k < block.size(); ++k) out += chi[k] * s[block[k]];
    return out;
}

inline Slope restrict(const Slope& s, std::span<const std::size_t> block) {
    Slope out;
    for (std::size_t j : block) out.push_back(s[j]);
    return out;
}

// Rank of a set of integer vectors, by exact elimination.
inline std::size_t rank_of(const std::vector<Slope>& rows, std::size_t r) {
    std::vector<std::vector<Rational>> m;
    for (const auto& s : rows) m.emplace_back(s.begin(), s.end());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Rational f = m[i][col] / m[rank][col];
            for (std::size_t k = col; k < r; ++k) m[i][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Integer basis of the orthogonal complement of the rows in Z^r.
inline std::vector<Covector> annihilator(const std::vector<Slope>& rows, std::size_t r) {
    std::vector<std::vector<Rational>> m;
    for (const auto& s : rows) m.emplace_back(s.begin(), s.end());
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < r && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        const Rational lead = m[rank][col];
        for (auto& x : m[rank]) x /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (std::size_t k = 0; k < r; ++k) m[i][k] -= f * m[rank][k];
        }
        pivots.push_back(col);
        ++rank;
    }
    std::vector<Covector> basis;
    for (std::size_t free = 0; free < r; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Rational> v(r, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        BigInt den = 1;
        for (const auto& x : v) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
        Covector c;
        BigInt g = 0;
        for (const auto& x : v) {
            const BigInt n = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
            c.push_back(static_cast<std::int64_t>(n));
        }
        if (g > 1)
            for (auto& x : c) x /= static_cast<std::int64_t>(g);
        basis.push_back(std::move(c));
    }
    return basis;
}

inline std::int64_t dot(const Covector& a, const Slope& b) {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

// A covector in the span of `basis` that is nonzero on every vector of
// `avoid`, searching coefficient boxes of growing size.
inline Covector generic_combination(const std::vector<Covector>& basis, const std::vector<Slope>& avoid,
                                    std::size_t r) {
    const std::size_t k = basis.size();
    for (std::int64_t bound = 1;; ++bound) {
        std::vector<std::int64_t> coeffs(k, -bound);
        while (true) {
            Covector chi(r, 0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < r; ++j) chi[j] += coeffs[i] * basis[i][j];
            const bool nonzero = std::any_of(chi.begin(), chi.end(), [](std::int64_t x) { return x != 0; });
            if (nonzero && std::all_of(avoid.begin(), avoid.end(), [&](const Slope& s) { return dot(chi, s) != 0; })) {
                // chi and -chi give the same verdict; keep the first nonzero entry positive.
                const auto lead = std::find_if(chi.begin(), chi.end(), [](std::int64_t x) { return x != 0; });
                if (*lead < 0)
                    for (auto& x : chi) x = -x;
                return chi;
            }
            std::size_t i = 0;
            while (i < k && coeffs[i] == bound) coeffs[i++] = -bound;
            if (i == k) break;
            ++coeffs[i];
        }
        if (bound > 64) throw Error("no generic covector found");
    }
}

}  // namespace detail

// The nonzero block slopes of all edges and legs, without repeats.
inline std::vector<Slope> block_slopes(const TropicalMap& m, std::span<const std::size_t> block) {
    std::set<Slope> seen;
    auto add = [&](const Slope& s) {
        Slope b = detail::restrict(s, block);
        if (std::any_of(b.begin(), b.end(), [](std::int64_t x) { return x != 0; })) seen.insert(std::move(b));
    };
    for (const auto& s : m.edge_slope) add(s);
    for (const auto& s : m.contact) add(s);
    return {seen.begin(), seen.end()};
}

// One character per flat of the slope arrangement of rank below r: a generic
// element of the flat's annihilator, vanishing on exactly the slopes of the
// flat. Coordinate covectors are included as well. Which edges are constant
// and which flags are nonconstant depends on chi only through the set of
// slopes it kills, so these characters realize every case.
inline std::vector<Covector> test_covectors(const TropicalMap& m, std::span<const std::size_t> block) {
    const std::size_t r = block.size();
    if (r == 0) return {};
    const auto slopes = block_slopes(m, block);
    std::set<std::vector<std::size_t>> flats;
    std::vector<std::size_t> subset;
    auto close = [&](const std::vector<std::size_t>& gens) {
        std::vector<Slope> rows;
        for (auto i : gens) rows.push_back(slopes[i]);
        const std::size_t rk = detail::rank_of(rows, r);
        std::vector<std::size_t> flat;
        for (std::size_t i = 0; i < slopes.size(); ++i) {
            auto with = rows;
            with.push_back(slopes[i]);
            if (detail::rank_of(with, r) == rk) flat.push_back(i);
        }
        if (rk < r) flats.insert(flat);
    };
    // Flats of rank k are spanned by k slopes; ranks up to r - 1 suffice.
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        close(subset);
        if (subset.size() + 1 >= r) return;
        for (std::size_t i = start; i < slopes.size(); ++i) {
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    recurse(recurse, 0);

    std::set<Covector> out;
    for (const auto& flat : flats) {
        std::vector<Slope> in, avoid;
        for (std::size_t i = 0; i < slopes.size(); ++i)
            (std::find(flat.begin(), flat.end(), i) != flat.end() ? in : avoid).push_back(slopes[i]);
        out.insert(detail::generic_combination(detail::annihilator(in, r), avoid, r));
    }
    for (std::size_t k = 0; k < r; ++k) {
        Covector e(r, 0);
        e[k] = 1;
        out.insert(e);
    }
    return {out.begin(), out.end()};
}

struct CovectorProfile {
    std::vector<bool> constant_region;  // vertices joined to the circuit by chi-flat edges
    std::vector<std::size_t> flag_bases;  // one entry per nonconstant flag
};

inline CovectorProfile covector_profile(const TropicalMap& m, std::span<const std::size_t> block, const Covector& chi,
                                        const Circuit& circuit) {
    const auto& c = m.curve;
    CovectorProfile p;
    p.constant_region.assign(c.vertices().size(), false);
    std::vector<std::size_t> stack(circuit.vertices.begin(), circuit.vertices.end());
    for (auto v : stack) p.constant_region[v] = true;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (std::size_t e : c.edges_at(v)) {
            if (detail::dot(chi, m.edge_slope[e], block) != 0) continue;
            const Edge& edge = c.edges()[e];
            const auto w = edge.u == v ? edge.v : edge.u;
            if (!p.constant_region[w]) {
                p.constant_region[w] = true;
                stack.push_back(w);
            }
        }
    }
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        if (detail::dot(chi, m.edge_slope[e], block) == 0) continue;
        const Edge& edge = c.edges()[e];
        if (p.constant_region[edge.u]) p.flag_bases.push_back(edge.u);
        if (p.constant_region[edge.v] && edge.v != edge.u) p.flag_bases.push_back(edge.v);
    }
    for (std::size_t l = 0; l < c.legs().size(); ++l)
        if (p.constant_region[c.legs()[l].vertex] && detail::dot(chi, m.contact[l], block) != 0)
            p.flag_bases.push_back(c.legs()[l].vertex);
    return p;
}

inline void require_contracted_circuit(const TropicalMap& m, std::span<const std::size_t> block) {
    const auto circuit = circuit_of(m.curve);
    for (std::size_t e : circuit.edges)
        for (std::size_t j : block)
            if (m.edge_slope[e][j] != 0) throw Error("circuit not contracted in block");
}

// The toric condition for the block coordinates: for each test character,
// either some nonconstant flag starts on the circuit (no neighbourhood of the
// circuit is contracted), or the minimal flag distance occurs at least
// `threshold` times.
inline WSVerdict toric_wellspaced(const TropicalMap& m, std::span<const std::size_t> block, const Chamber& ch,
                                  int threshold = 3) {
    if (threshold < 1) throw Error("threshold must be positive");
    for (std::size_t j : block)
        if (j >= m.target.num_divisors()) throw Error("block coordinate out of range");
    require_contracted_circuit(m, block);
    const auto rs = radial_structure(m.curve);
    for (const auto& chi : test_covectors(m, block)) {
        const auto profile = covector_profile(m, block, chi, rs.circuit);
        if (profile.flag_bases.empty()) continue;
        if (std::any_of(profile.flag_bases.begin(), profile.flag_bases.end(),
                        [&](std::size_t v) { return rs.on_circuit[v]; }))
            continue;
        const MonoidForm* best = &rs.lambda[profile.flag_bases.front()];
        int count = 0;
        for (std::size_t v : profile.flag_bases) {
            const Ordering o = compare(rs.lambda[v], *best, ch);
            if (o == Ordering::Incomparable) throw Error("curve is not radially aligned in the chamber");
            if (o == Ordering::Less) {
                best = &rs.lambda[v];
                count = 1;
            } else if (o == Ordering::Equal) {
                ++count;
            }
        }
        if (count < threshold) {
            WSVerdict v{false, WSVerdict::Reason::ToricConditionFailed, chi, {}};
            for (std::size_t b : profile.flag_bases) v.distances.push_back(rs.lambda[b]);
            return v;
        }
    }
    return {};
}

// Divisor coordinates in which the circuit sits strictly inside the orthant,
// i.e. the divisor components containing the image of the circuit.
inline std::vector<std::size_t> circuit_block(const TropicalMap& m, const Chamber& ch) {
    const auto circuit = circuit_of(m.curve);
    std::vector<std::size_t> block;
    const std::size_t v = circuit.vertices.front();
    for (std::size_t j = 0; j < m.target.num_divisors(); ++j)
        if (compare(m.position[v][j], LinearForm{}, ch) == Ordering::Greater) block.push_back(j);
    return block;
}

inline WSVerdict is_wellspaced(const TropicalMap& m, const Chamber& ch, int threshold = 3) {
    detail::check_shapes(m);
    const auto circuit = circuit_of(m.curve);
    int degree = 0;
    for (std::size_t v : circuit.vertices) degree += m.vertex_degree(v);
    if (degree > 0) return {true, WSVerdict::Reason::CircuitPositiveDegree, {}, {}};
    const auto block = circuit_block(m, ch);
    return toric_wellspaced(m, block, ch, threshold);
}

}  // namespace troplog
