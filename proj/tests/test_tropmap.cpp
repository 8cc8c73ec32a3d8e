#include "troplog/tropmap.hpp"

#include "property_suites.hpp"
#include "sample_maps.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <chrono>

namespace troplog {
namespace {

using testing::make_rng;

MonoidForm x(std::size_t i) { return MonoidForm::param(i); }

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> d(1, 5);
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(Rational(d(rng)));
    return p;
}

// A single vertex with legs of the given contact rows over P^2 with the full
// boundary in coordinate order 0, 1, 2.
TropicalMap p2_star(std::vector<Slope> rows, int degree) {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    for (std::size_t i = 0; i < rows.size(); ++i) m.curve.add_leg("l" + std::to_string(i), 0, std::to_string(i));
    m.target = {{2}, {{0, 0}, {0, 1}, {0, 2}}};
    m.degree = {{degree}};
    m.position = {{MonoidForm{}, MonoidForm{}, MonoidForm{}}};
    m.contact = std::move(rows);
    return m;
}

// Fan vector of a divisor-coordinate slope over P^2, computed directly.
std::pair<std::int64_t, std::int64_t> fan_vector(const Slope& y) { return {y[1] - y[0], y[2] - y[0]}; }

TEST(CheckPositions, CubicWithOneDivisor) {
    const auto m = testing::cubic_one_divisor();
    EXPECT_TRUE(check_positions(m, Chamber::top(0)).ok());
    auto bad = m;
    bad.contact[2] = {2};
    const auto report = check_positions(bad, Chamber::top(0));
    ASSERT_FALSE(report.ok());
    EXPECT_NE(report.violations.front().find("divisor-degree"), std::string::npos);
}

TEST(CheckPositions, EmptyDivisorPassesVacuously) {
    const auto fx = testing::bidegree_two_factor();
    EXPECT_TRUE(check_positions(fx.map, fx.chamber).ok());
}

TEST(CheckPositions, DetectsPositionMismatch) {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    m.curve.add_vertex("A");
    m.curve.add_edge("a", 0, 1, x(0));
    m.curve.add_leg("l", 1, "1");
    m.target = {{1}, {{0, 1}}};
    m.degree = {{0}, {1}};
    m.position = {{MonoidForm{}}, {x(0).scaled(2)}};
    m.edge_slope = {{1}};
    m.contact = {{1}};
    EXPECT_FALSE(check_positions(m, Chamber::top(1)).ok());
    m.edge_slope = {{2}};
    m.contact = {{1}};
    EXPECT_TRUE(check_positions(m, Chamber::top(1)).ok());
    m.contact = {{1, 0}};
    EXPECT_FALSE(check_positions(m, Chamber::top(1)).ok());
}

TEST(Balancing, CubicLiftedToFullBoundary) {
    const auto full = complete_to_toric(testing::cubic_one_divisor());
    EXPECT_EQ(full.curve.legs().size(), 9u);
    EXPECT_TRUE(check_balancing(full).ok());
    // Three rays along each of (-1,-1), (1,0) and (0,1).
    std::map<std::pair<std::int64_t, std::int64_t>, int> rays;
    for (const auto& leg_row : full.contact) {
        Slope y(3, 0);
        for (std::size_t j = 0; j < 3; ++j) y[full.target.divisors[j].coord] = leg_row[j];
        ++rays[fan_vector(y)];
    }
    const std::map<std::pair<std::int64_t, std::int64_t>, int> expected{{{-1, -1}, 3}, {{1, 0}, 3}, {{0, 1}, 3}};
    EXPECT_EQ(rays, expected);
}

TEST(Balancing, SingleRayIsUnbalanced) {
    EXPECT_FALSE(check_balancing(p2_star({{0, 1, 0}}, 1)).ok());
}

TEST(Balancing, OppositeRaysBalance) {
    // Two rays (1,0) and one ray (-2,0): y = (2,0,2) maps to (-2,0).
    const std::vector<Slope> rows{{0, 1, 0}, {0, 1, 0}, {2, 0, 2}};
    std::int64_t sx = 0, sy = 0;
    for (const auto& r : rows) {
        sx += fan_vector(r).first;
        sy += fan_vector(r).second;
    }
    ASSERT_EQ(sx, 0);
    ASSERT_EQ(sy, 0);
    EXPECT_TRUE(check_balancing(p2_star(rows, 2)).ok());
}

TEST(Balancing, RequiresFullBoundary) {
    EXPECT_THROW(check_balancing(testing::cubic_one_divisor()), Error);
}

TEST(Transverse, LegAgainstBreakpoint) {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    m.curve.add_leg("l", 0, "1");
    m.target = {{1}, {{0, 0}}};
    m.degree = {{1}};
    m.position = {{MonoidForm{}}};
    m.contact = {{1}};
    const Chamber ch = Chamber::top(1);
    EXPECT_TRUE(is_transverse(m, {}, ch));
    const Subdivision sub{{x(0)}};
    EXPECT_FALSE(is_transverse(m, sub, ch));

    const auto ex = expand(m, sub, ch);
    EXPECT_TRUE(is_transverse(ex.map, sub, ex.chamber));
    ASSERT_EQ(ex.map.curve.edges().size(), 1u);
    EXPECT_EQ(ex.map.curve.edges()[0].length, x(0));
    EXPECT_EQ(ex.map.curve.legs()[0].vertex, 1u);
    EXPECT_EQ(ex.map.position[1][0], x(0));
    EXPECT_EQ(ex.map.contact, m.contact);
}

TEST(Expand, NoBreakpointsIsIdentity) {
    const auto m = testing::cubic_one_divisor();
    const auto ex = expand(m, {}, Chamber::top(0));
    EXPECT_EQ(ex.map, m);
}

TEST(Expand, SlopeTwoEdgeCrossesAtHalfTheBreakpoint) {
    // A at 0, edge of slope 2 and length x1 to B; breakpoint c = x2 < 2*x1.
    TropicalMap m;
    m.curve.add_vertex("A", 1);
    m.curve.add_vertex("B");
    m.curve.add_edge("a", 0, 1, x(0));
    m.curve.add_leg("l1", 1, "1");
    m.curve.add_leg("l2", 1, "2");
    m.target = {{1}, {{0, 1}}};
    m.degree = {{0}, {2}};
    m.position = {{MonoidForm{}}, {x(0).scaled(2)}};
    m.edge_slope = {{2}};
    m.contact = {{1}, {1}};
    Chamber ch = Chamber({"x1", "c"}, {});
    ch.add_constraint({x(1), Relation::Less, x(0).scaled(2)});
    const Subdivision sub{{x(1)}};
    EXPECT_FALSE(is_transverse(m, sub, ch));
    const auto ex = expand(m, sub, ch);
    ASSERT_EQ(ex.map.curve.vertices().size(), 3u);
    const std::size_t w = 2;
    const auto& edges = ex.map.curve.edges();
    EXPECT_EQ(edges[0].v, w);
    // Solve 0 + 2 t = c exactly.
    EXPECT_EQ(compare(Rational(2) * edges[0].length.linear(), x(1), ex.chamber), Ordering::Equal);
    EXPECT_EQ(compare(ex.map.position[w][0], x(1), ex.chamber), Ordering::Equal);
    EXPECT_TRUE(check_positions(ex.map, ex.chamber).ok());
    EXPECT_TRUE(is_transverse(ex.map, sub, ex.chamber));
}

TEST(Expand, IncomparableBreakpointAsksForRefinement) {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    m.curve.add_vertex("A");
    m.curve.add_edge("a", 0, 1, x(0));
    m.curve.add_leg("l", 1, "1");
    m.target = {{1}, {{0, 1}}};
    m.degree = {{0}, {1}};
    m.position = {{MonoidForm{}}, {x(0)}};
    m.edge_slope = {{1}};
    m.contact = {{0}};
    try {
        expand(m, {{x(1)}}, Chamber::top(2));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "refine chamber first");
    }
}

TEST(Expand, RandomMapsKeepLegsGenusDegreeAndContact) {
    auto rng = make_rng(41);
    int expanded = 0;
    for (int instance = 0; instance < 100; ++instance) {
        auto rm = testing::random_balanced_map(rng);
        const auto point = random_point(rng, rm.chamber.num_params());
        const Chamber ch = testing::ray_chamber(rm.chamber.params(), point);
        const std::size_t nd = rm.map.target.num_divisors();
        Subdivision sub(nd);
        std::uniform_int_distribution<std::size_t> pick(0, rm.chamber.num_params() - 1);
        for (auto& axis : sub) {
            axis.push_back(x(pick(rng)));
            axis.push_back(x(pick(rng)) + x(pick(rng)));
        }
        const auto ex = expand(rm.map, sub, ch);
        EXPECT_TRUE(is_transverse(ex.map, sub, ex.chamber)) << instance;
        EXPECT_TRUE(check_positions(ex.map, ex.chamber).ok()) << instance;
        EXPECT_EQ(ex.map.curve.legs().size(), rm.map.curve.legs().size());
        EXPECT_EQ(ex.map.curve.total_genus(), 1);
        EXPECT_EQ(ex.map.contact, rm.map.contact);
        for (std::size_t a = 0; a < rm.map.target.factors.size(); ++a)
            EXPECT_EQ(ex.map.total_degree(a), rm.map.total_degree(a));
        if (ex.map.curve.vertices().size() > rm.map.curve.vertices().size()) ++expanded;
    }
    EXPECT_GT(expanded, 20);
}

TEST(MapContractionRadius, BidegreeFixture) {
    const auto fx = testing::bidegree_two_factor();
    EXPECT_EQ(map_contraction_radius(fx.map, 1, fx.chamber), Radius::exact(x(0) + x(4)));
    // Brute force over vertices of positive factor-one degree.
    const auto rs = radial_structure(fx.map.curve);
    std::vector<LinearForm> candidates;
    for (std::size_t v = 0; v < rs.lambda.size(); ++v)
        if (fx.map.degree[v][0] > 0) candidates.push_back(rs.lambda[v]);
    const auto levels = sort_in_chamber(candidates, fx.chamber);
    EXPECT_EQ(map_contraction_radius(fx.map, 0, fx.chamber).base.linear(), candidates[levels.front().front()]);
    EXPECT_EQ(map_contraction_radius(fx.map, 0, fx.chamber), Radius::exact(x(1)));
    EXPECT_EQ(map_contraction_radius(fx.map, std::nullopt, fx.chamber), Radius::exact(x(1)));
}

TEST(MapContractionRadius, CircuitOfPositiveDegreeAndDegreeZero) {
    const auto m = testing::cubic_one_divisor();
    EXPECT_EQ(map_contraction_radius(m, std::nullopt, Chamber::top(0)), Radius::exact(MonoidForm{}));
    auto flat = m;
    flat.degree = {{0}};
    EXPECT_TRUE(map_contraction_radius(flat, 0, Chamber::top(0)).is_infinite());
}

TEST(MapContractionRadius, AllIsMinimumOverFactors) {
    auto rng = make_rng(43);
    for (int instance = 0; instance < 100; ++instance) {
        auto rm = testing::random_balanced_map(rng);
        const Chamber ch = testing::ray_chamber(rm.chamber.params(), random_point(rng, rm.chamber.num_params()));
        const Radius all = map_contraction_radius(rm.map, std::nullopt, ch);
        std::optional<Radius> best;
        for (std::size_t a = 0; a < rm.map.target.factors.size(); ++a) {
            const Radius r = map_contraction_radius(rm.map, a, ch);
            if (!best || compare_radius(r, *best, ch) == Ordering::Less) best = r;
        }
        EXPECT_EQ(compare_radius(all, *best, ch), Ordering::Equal) << instance;
    }
}

TEST(CompleteDivisor, CubicGainsThreeRays) {
    const auto m = testing::cubic_one_divisor();
    const auto lifted = complete_divisor(m, 0);
    ASSERT_EQ(lifted.target.divisors.size(), 2u);
    EXPECT_EQ(lifted.target.divisors[1], (Divisor{0, 1}));
    ASSERT_EQ(lifted.curve.legs().size(), 6u);
    for (std::size_t i = 3; i < 6; ++i) EXPECT_EQ(lifted.contact[i], (Slope{0, 1}));
    EXPECT_EQ(lifted.curve.legs()[3].label, "q1");
    EXPECT_EQ(lifted.curve.legs()[5].label, "q3");
    EXPECT_TRUE(check_positions(lifted, Chamber::top(0)).ok());
}

TEST(CompleteDivisor, DegreesDetermineNewLegs) {
    TropicalMap m;
    m.curve.add_vertex("E", 1);
    m.curve.add_vertex("A");
    m.curve.add_vertex("B");
    m.curve.add_edge("a", 0, 1, x(0));
    m.curve.add_edge("b", 0, 2, x(1));
    m.target = {{1}, {}};
    m.degree = {{0}, {1}, {2}};
    m.position.assign(3, {});
    m.edge_slope.assign(2, {});
    const auto lifted = complete_divisor(m, 0);
    EXPECT_EQ(lifted.curve.legs_at(0).size(), 0u);
    EXPECT_EQ(lifted.curve.legs_at(1).size(), 1u);
    EXPECT_EQ(lifted.curve.legs_at(2).size(), 2u);
    EXPECT_EQ(lifted.contact.size(), 3u);
}

TEST(CompleteDivisor, FullBoundaryIsAnError) {
    const auto full = complete_to_toric(testing::cubic_one_divisor());
    EXPECT_THROW(complete_divisor(full, 0), Error);
    EXPECT_EQ(complete_to_toric(full), full);
}

TEST(CompleteToToric, BidegreeFixture) {
    const auto fx = testing::bidegree_two_factor();
    const auto full = complete_to_toric(fx.map);
    EXPECT_TRUE(check_balancing(full).ok());
    EXPECT_TRUE(check_positions(full, fx.chamber).ok());
    for (std::size_t v = 0; v < fx.map.curve.vertices().size(); ++v) {
        std::size_t gained = 0;
        for (std::size_t a = 0; a < 2; ++a)
            gained += static_cast<std::size_t>(fx.map.target.factors[a] + 1) * static_cast<std::size_t>(fx.map.degree[v][a]);
        EXPECT_EQ(full.curve.legs_at(v).size(), fx.map.curve.legs_at(v).size() + gained);
    }
}

// Balancing conservation after completion, on random maps with at most four
// vertices.
TEST(CompleteToToric, RandomMapsBecomeBalanced) {
    const auto r = testing::balancing_suite();
    EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(CompleteDivisor, ForgettingTheNewDivisorRoundTrips) {
    const auto r = testing::completion_round_trip_suite();
    EXPECT_TRUE(r.ok()) << r.summary();
}

}  // namespace
}  // namespace troplog
