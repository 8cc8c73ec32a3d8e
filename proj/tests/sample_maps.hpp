#pragma once

// Hand-encoded tropical maps and random map generators.

#include "troplog/tropmap.hpp"

#include "test_support.hpp"

#include "sample_curves.hpp"

#include <random>

namespace troplog::testing {

struct MapFixture {
    TropicalMap map;
    Chamber chamber;
};

// Genus one vertex O with two branches over P^2 x P^1, empty divisor:
//   O -e1- A, A -e5- E, A -e6- F        (E, F of bidegree (0,1))
//   O -e2- B, B -e3- D, B -e4- C        (B, C, D of bidegree (1,0))
// with two legs at each of C, D, E, F. Chamber
//   e1 < e2 < e2+e3 < e2+e4 < e1+e5, e5 = e6.
inline MapFixture bidegree_two_factor() {
    auto p = [](std::size_t i) { return MonoidForm::param(i); };
    MapFixture fx{{}, Chamber({"e1", "e2", "e3", "e4", "e5", "e6"}, {})};
    auto& c = fx.map.curve;
    const auto o = c.add_vertex("O", 1), a = c.add_vertex("A"), b = c.add_vertex("B");
    const auto d = c.add_vertex("D"), cc = c.add_vertex("C"), e = c.add_vertex("E"), f = c.add_vertex("F");
    c.add_edge("e1", o, a, p(0));
    c.add_edge("e2", o, b, p(1));
    c.add_edge("e3", b, d, p(2));
    c.add_edge("e4", b, cc, p(3));
    c.add_edge("e5", a, e, p(4));
    c.add_edge("e6", a, f, p(5));
    int label = 1;
    for (auto v : {d, cc, e, f})
        for (int k = 0; k < 2; ++k, ++label) c.add_leg("l" + std::to_string(label), v, std::to_string(label));
    fx.map.target = {{2, 1}, {}};
    fx.map.degree = {{0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}};
    fx.map.position.assign(c.vertices().size(), {});
    fx.map.edge_slope.assign(c.edges().size(), {});
    fx.map.contact.assign(c.legs().size(), {});
    auto& ch = fx.chamber;
    ch.add_constraint({p(0), Relation::Less, p(1)});
    ch.add_constraint({p(1), Relation::Less, p(1) + p(2)});
    ch.add_constraint({p(1) + p(2), Relation::Less, p(1) + p(3)});
    ch.add_constraint({p(1) + p(3), Relation::Less, p(0) + p(4)});
    ch.add_constraint({p(4), Relation::Equal, p(5)});
    return fx;
}

// A genus one vertex of degree 3 over P^2 meeting one coordinate line (x0 = 0)
// in three points of contact order one.
inline TropicalMap cubic_one_divisor() {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    for (int i = 1; i <= 3; ++i) m.curve.add_leg("p" + std::to_string(i), 0, "p" + std::to_string(i));
    m.target = {{2}, {{0, 0}}};
    m.degree = {{3}};
    m.position = {{MonoidForm{}}};
    m.edge_slope = {};
    m.contact = {{1}, {1}, {1}};
    return m;
}

struct RandomMap {
    TropicalMap map;
    Chamber chamber;
    std::vector<Rational> point;  // set when the chamber is a ray
};

// A map whose legs make every vertex balanced once the divisor is completed:
// at each vertex, the outgoing slopes in every present coordinate of factor a
// sum to the factor degree. Up to four vertices; circuit edges are flat.
inline RandomMap random_balanced_map(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nfactors(1, 2), dim(1, 2), coin(0, 1), slope(0, 2), kind(0, 2), extra(0, 1);
    RandomMap out;
    TropicalMap& m = out.map;
    for (int a = nfactors(rng); a > 0; --a) m.target.factors.push_back(dim(rng));
    for (std::size_t a = 0; a < m.target.factors.size(); ++a)
        for (std::size_t k = 0; k <= static_cast<std::size_t>(m.target.factors[a]); ++k)
            if (coin(rng)) m.target.divisors.push_back({a, k});
    std::shuffle(m.target.divisors.begin(), m.target.divisors.end(), rng);
    const std::size_t nd = m.target.num_divisors();
    const std::size_t nf = m.target.factors.size();

    std::vector<std::string> params{"h"};
    auto fresh = [&] {
        params.push_back("e" + std::to_string(params.size()));
        return MonoidForm::param(params.size() - 1);
    };
    auto& c = m.curve;
    const int k = kind(rng);
    std::vector<MonoidForm> circuit_pos;
    for (std::size_t j = 0; j < nd; ++j) circuit_pos.push_back(coin(rng) ? MonoidForm::param(0) : MonoidForm{});
    if (k == 0) {
        c.add_vertex("v0", 1);
        m.position.push_back(circuit_pos);
    } else {
        const std::size_t len = k == 1 ? 1 : 2;
        for (std::size_t i = 0; i < len; ++i) {
            c.add_vertex("v" + std::to_string(i));
            m.position.push_back(circuit_pos);
        }
        if (len == 1) {
            c.add_edge("c1", 0, 0, fresh());
        } else {
            c.add_edge("c1", 0, 1, fresh());
            c.add_edge("c2", 1, 0, fresh());
        }
        for (std::size_t e = 0; e < c.edges().size(); ++e) m.edge_slope.push_back(Slope(nd, 0));
    }
    std::uniform_int_distribution<std::size_t> more(0, 4 - c.vertices().size());
    for (std::size_t i = more(rng); i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, c.vertices().size() - 1);
        const std::size_t parent = pick(rng);
        const std::size_t v = c.add_vertex("v" + std::to_string(c.vertices().size()));
        const MonoidForm len = fresh();
        c.add_edge("t" + std::to_string(v), parent, v, len);
        Slope s(nd);
        std::vector<MonoidForm> pos;
        for (std::size_t j = 0; j < nd; ++j) {
            s[j] = slope(rng);
            pos.push_back(m.position[parent][j] + len.scaled(s[j]));
        }
        m.edge_slope.push_back(s);
        m.position.push_back(pos);
    }
    int label = 1;
    for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        Slope outgoing(nd, 0);
        for (std::size_t e = 0; e < c.edges().size(); ++e) {
            const Edge& edge = c.edges()[e];
            if (edge.u == edge.v) continue;
            const std::int64_t sign = edge.u == v ? 1 : (edge.v == v ? -1 : 0);
            for (std::size_t j = 0; j < nd; ++j) outgoing[j] += sign * m.edge_slope[e][j];
        }
        std::vector<int> deg(nf, 0);
        for (std::size_t a = 0; a < nf; ++a) {
            std::int64_t need = 0;
            for (std::size_t j = 0; j < nd; ++j)
                if (m.target.divisors[j].factor == a) need = std::max(need, outgoing[j]);
            deg[a] = static_cast<int>(need) + extra(rng);
        }
        m.degree.push_back(deg);
        for (std::size_t j = 0; j < nd; ++j) {
            std::int64_t remaining = deg[m.target.divisors[j].factor] - outgoing[j];
            while (remaining > 0) {
                const std::int64_t order = remaining >= 2 && coin(rng) ? 2 : 1;
                Slope row(nd, 0);
                row[j] = order;
                c.add_leg("l" + std::to_string(label), v, std::to_string(label));
                ++label;
                m.contact.push_back(row);
                remaining -= order;
            }
        }
    }
    out.chamber = Chamber(params, {});
    return out;
}

// A map whose genus one circuit has degree zero and sits at height h inside
// the divisor components of a block of at most three coordinates. Edge
// lengths come from a pool of three parameters so equal distances are common;
// the chamber is the ray through a point where every position stays positive.
// Block slopes lie in [-max_slope, max_slope].
inline RandomMap random_contracted_circuit_map(std::mt19937_64& rng, int max_slope = 2) {
    std::uniform_int_distribution<int> nfactors(1, 2), dim(1, 3), coin(0, 1), pool(1, 3), block_slope(-max_slope, max_slope),
        side_slope(0, 1), len(1, 4), nlegs(0, 2), cycle(0, 2);
    RandomMap out;
    TropicalMap& m = out.map;
    for (int a = nfactors(rng); a > 0; --a) m.target.factors.push_back(dim(rng));
    for (std::size_t a = 0; a < m.target.factors.size(); ++a)
        for (std::size_t k = 0; k <= static_cast<std::size_t>(m.target.factors[a]); ++k)
            if (coin(rng)) m.target.divisors.push_back({a, k});
    if (m.target.divisors.empty()) m.target.divisors.push_back({0, 0});
    const std::size_t nd = m.target.num_divisors();
    const std::size_t nf = m.target.factors.size();
    std::vector<bool> in_block(nd, false);
    std::size_t block_size = 0;
    for (std::size_t j = 0; j < nd; ++j)
        if (block_size < 3 && coin(rng)) {
            in_block[j] = true;
            ++block_size;
        }
    if (block_size == 0) in_block[0] = true;

    std::vector<Rational> point{100};
    for (int i = 0; i < 3; ++i) point.push_back(Rational(len(rng)));
    out.chamber = testing::ray_chamber({"h", "a", "b", "c"}, point);
    out.point = point;
    auto& c = m.curve;
    std::vector<MonoidForm> circuit_pos;
    for (std::size_t j = 0; j < nd; ++j) circuit_pos.push_back(in_block[j] ? MonoidForm::param(0) : MonoidForm{});
    if (cycle(rng) == 0) {
        c.add_vertex("v0");
        c.add_vertex("v1");
        c.add_edge("c1", 0, 1, MonoidForm::param(static_cast<std::size_t>(pool(rng))));
        c.add_edge("c2", 1, 0, MonoidForm::param(static_cast<std::size_t>(pool(rng))));
        m.edge_slope.assign(2, Slope(nd, 0));
        m.position = {circuit_pos, circuit_pos};
    } else {
        c.add_vertex("v0", 1);
        m.position = {circuit_pos};
    }
    std::uniform_int_distribution<int> extra(2, 5);
    for (int i = extra(rng); i > 0; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, c.vertices().size() - 1);
        const std::size_t parent = pick(rng);
        const std::size_t v = c.add_vertex("v" + std::to_string(c.vertices().size()));
        const MonoidForm length = MonoidForm::param(static_cast<std::size_t>(pool(rng)));
        c.add_edge("t" + std::to_string(v), parent, v, length);
        Slope s(nd);
        std::vector<MonoidForm> pos;
        for (std::size_t j = 0; j < nd; ++j) {
            s[j] = in_block[j] ? block_slope(rng) : side_slope(rng);
            pos.push_back(materialize(m.position[parent][j].linear() + Rational(s[j]) * length.linear(), out.chamber));
        }
        m.edge_slope.push_back(s);
        m.position.push_back(pos);
    }
    std::uniform_int_distribution<int> deg(0, 1);
    const auto circuit = circuit_of(c);
    int label = 1;
    for (std::size_t v = 0; v < c.vertices().size(); ++v) {
        const bool on_circuit = std::find(circuit.vertices.begin(), circuit.vertices.end(), v) != circuit.vertices.end();
        std::vector<int> d(nf, 0);
        if (!on_circuit)
            for (auto& x : d) x = deg(rng);
        m.degree.push_back(d);
        for (int k = nlegs(rng); k > 0; --k, ++label) {
            c.add_leg("l" + std::to_string(label), v, std::to_string(label));
            Slope row(nd);
            for (auto& x : row) x = side_slope(rng);
            m.contact.push_back(row);
        }
    }
    return out;
}

}  // namespace troplog::testing
