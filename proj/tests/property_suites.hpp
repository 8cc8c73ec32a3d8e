#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// binary. Each returns a tally instead of asserting so either harness can
// report it.

#include "troplog/curve.hpp"
#include "troplog/tropmap.hpp"
#include "troplog/wellspaced.hpp"

#include "sample_curves.hpp"
#include "sample_maps.hpp"
#include "test_support.hpp"

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

namespace troplog::testing {

struct SuiteResult {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::string first_failure;
    std::string coverage_problem;  // the suite ran but did not exercise enough cases
    double seconds = 0;

    bool ok() const { return failures == 0 && coverage_problem.empty() && seconds < 60; }

    std::string summary() const {
        std::ostringstream os;
        os << name << ": " << instances << " instances, " << failures << " failures, " << seconds << " s";
        if (!first_failure.empty()) os << "; first failure: " << first_failure;
        if (!coverage_problem.empty()) os << "; " << coverage_problem;
        return os.str();
    }
};

namespace detail {

class Tally {
public:
    explicit Tally(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

    void expect(bool ok, int instance, const std::string& what) {
        if (ok) return;
        if (r_.failures++ == 0) r_.first_failure = "instance " + std::to_string(instance) + ": " + what;
    }
    void count() { ++r_.instances; }
    void need(bool ok, const std::string& what) {
        if (!ok && r_.coverage_problem.empty()) r_.coverage_problem = what;
    }

    SuiteResult finish() {
        r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return r_;
    }

private:
    SuiteResult r_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Whether the character chi violates the toric condition, computed from
// numeric distances and slopes without the library's covector machinery.
inline bool oracle_fails_for(const TropicalMap& m, const std::vector<std::size_t>& block,
                             const std::vector<Rational>& point, int threshold, const std::vector<std::int64_t>& chi) {
    const std::size_t r = block.size();
    const auto lambda = numeric_lambda(m.curve, point);
    const auto& c = m.curve;
    auto dot = [&](const Slope& s) {
        std::int64_t out = 0;
        for (std::size_t k = 0; k < r; ++k) out += chi[k] * s[block[k]];
        return out;
    };
    std::vector<bool> region(c.vertices().size(), false);
    for (std::size_t v = 0; v < region.size(); ++v) region[v] = lambda[v] == 0;
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t e = 0; e < c.edges().size(); ++e) {
            if (dot(m.edge_slope[e]) != 0) continue;
            const auto& a = c.edges()[e];
            if (region[a.u] != region[a.v]) {
                region[a.u] = region[a.v] = true;
                grew = true;
            }
        }
    }
    std::vector<Rational> dists;
    for (std::size_t e = 0; e < c.edges().size(); ++e) {
        if (dot(m.edge_slope[e]) == 0) continue;
        if (region[c.edges()[e].u]) dists.push_back(lambda[c.edges()[e].u]);
        if (region[c.edges()[e].v]) dists.push_back(lambda[c.edges()[e].v]);
    }
    for (std::size_t l = 0; l < c.legs().size(); ++l)
        if (region[c.legs()[l].vertex] && dot(m.contact[l]) != 0) dists.push_back(lambda[c.legs()[l].vertex]);
    if (dists.empty()) return false;
    const Rational lo = *std::min_element(dists.begin(), dists.end());
    return lo != 0 && std::count(dists.begin(), dists.end(), lo) < threshold;
}

// The verdict over all nonzero characters with entries in [-3, 3].
inline bool oracle_wellspaced(const TropicalMap& m, const std::vector<std::size_t>& block,
                              const std::vector<Rational>& point, int threshold) {
    const std::size_t r = block.size();
    if (r == 0) return true;
    std::vector<std::int64_t> chi(r, -3);
    while (true) {
        if (std::any_of(chi.begin(), chi.end(), [](std::int64_t v) { return v != 0; }) &&
            oracle_fails_for(m, block, point, threshold, chi))
            return false;
        std::size_t i = 0;
        while (i < r && chi[i] == 3) chi[i++] = -3;
        if (i == r) break;
        ++chi[i];
    }
    return true;
}

inline TropicalMap rescaled(const TropicalMap& m, const Rational& c) {
    TropicalMap out = m;
    for (auto& e : out.curve.mutable_edges()) e.length = e.length.scaled(c);
    for (auto& row : out.position)
        for (auto& p : row) p = p.scaled(c);
    return out;
}

// Splits edge e at a third of its length with a new 2-valent vertex.
inline TropicalMap subdivided(const TropicalMap& m, std::size_t e, Chamber& ch) {
    TropicalMap out = m;
    const Edge edge = m.curve.edges()[e];
    const MonoidForm first = edge.length.scaled(Rational(1, 3));
    const MonoidForm second = edge.length.scaled(Rational(2, 3));
    split_edge(out.curve, e, first, second, fresh_vertex_name(out.curve, "s"));
    out.edge_slope.push_back(m.edge_slope[e]);
    out.degree.push_back(std::vector<int>(m.target.factors.size(), 0));
    std::vector<MonoidForm> pos;
    for (std::size_t j = 0; j < m.target.num_divisors(); ++j)
        pos.push_back(materialize(m.position[edge.u][j].linear() + Rational(m.edge_slope[e][j]) * first.linear(), ch));
    out.position.push_back(pos);
    return out;
}

// Alignment chambers partition the parameter space: every sample point lies
// in exactly one of them and each is aligned.
inline SuiteResult chamber_partition_suite(int curves = 500) {
    detail::Tally t("chamber partition");
    auto rng = make_rng(31);
    std::uniform_int_distribution<int> coord(1, 3);
    for (int instance = 0; instance < curves; ++instance) {
        auto rc = random_genus_one_curve(rng, 6, false);
        t.count();
        const auto chambers = alignment_chambers(rc.curve, Chamber::top(rc.num_params));
        t.expect(!chambers.empty(), instance, "no chambers");
        for (const auto& ch : chambers) t.expect(is_radially_aligned(rc.curve, ch), instance, "chamber not aligned");
        for (int s = 0; s < 20; ++s) {
            std::vector<Rational> p;
            for (std::size_t i = 0; i < rc.num_params; ++i) p.push_back(Rational(coord(rng)));
            int hits = 0;
            for (const auto& ch : chambers) hits += contains(ch, p);
            t.expect(hits == 1, instance, "point in " + std::to_string(hits) + " chambers");
        }
    }
    return t.finish();
}

// Completing the divisor to the full toric boundary balances every vertex.
inline SuiteResult balancing_suite(int maps = 200) {
    detail::Tally t("balancing after completion");
    auto rng = make_rng(47);
    for (int instance = 0; instance < maps; ++instance) {
        auto rm = random_balanced_map(rng);
        t.count();
        t.expect(rm.map.curve.vertices().size() <= 4, instance, "more than four vertices");
        t.expect(check_positions(rm.map, rm.chamber).ok(), instance, "input positions inconsistent");
        const auto full = complete_to_toric(rm.map);
        t.expect(full.target.full_boundary(), instance, "boundary not full");
        t.expect(check_balancing(full).ok(), instance, "unbalanced after completion");
        t.expect(check_positions(full, rm.chamber).ok(), instance, "positions broken by completion");
    }
    return t.finish();
}

// Verdicts do not change when all lengths are rescaled or an edge is
// subdivided.
inline SuiteResult wellspaced_invariance_suite(int maps = 200) {
    detail::Tally t("well-spacedness invariance");
    auto rng = make_rng(67);
    for (int instance = 0; instance < maps; ++instance) {
        auto rm = random_contracted_circuit_map(rng);
        t.count();
        const auto base = is_wellspaced(rm.map, rm.chamber);
        for (const Rational c : {Rational(2), Rational(1, 3)})
            t.expect(is_wellspaced(rescaled(rm.map, c), rm.chamber).well_spaced == base.well_spaced, instance,
                     "rescaling by " + to_string(c) + " changed the verdict");
        std::uniform_int_distribution<std::size_t> pick(0, rm.map.curve.edges().size() - 1);
        Chamber ch = rm.chamber;
        const auto split = subdivided(rm.map, pick(rng), ch);
        t.expect(check_positions(split, ch).violations.size() == check_positions(rm.map, rm.chamber).violations.size(),
                 instance, "subdivision broke positions");
        t.expect(is_wellspaced(split, ch).well_spaced == base.well_spaced, instance, "subdivision changed the verdict");
    }
    return t.finish();
}

// The covector decision procedure agrees with the exhaustive oracle.
inline SuiteResult covector_oracle_suite(int maps = 100) {
    detail::Tally t("covector oracle agreement");
    auto rng = make_rng(61);
    int fails = 0, passes = 0;
    for (int instance = 0; instance < maps; ++instance) {
        // Unit block slopes keep every relevant character inside the oracle's box.
        auto rm = random_contracted_circuit_map(rng, 1);
        t.count();
        const auto block = circuit_block(rm.map, rm.chamber);
        t.expect(!block.empty() && block.size() <= 3, instance, "block size " + std::to_string(block.size()));
        for (int threshold : {2, 3}) {
            const auto verdict = is_wellspaced(rm.map, rm.chamber, threshold);
            t.expect(verdict.well_spaced == oracle_wellspaced(rm.map, block, rm.point, threshold), instance,
                     "disagreement at threshold " + std::to_string(threshold));
            if (!verdict.well_spaced)
                t.expect(oracle_fails_for(rm.map, block, rm.point, threshold, verdict.covector), instance,
                         "reported character passes in the oracle");
            (verdict.well_spaced ? passes : fails)++;
        }
    }
    t.need(fails > 10 && passes > 10, "too few passing or failing verdicts");
    return t.finish();
}

// Forgetting a freshly completed divisor component gives back the map.
inline SuiteResult completion_round_trip_suite(int maps = 200) {
    detail::Tally t("complete then forget");
    auto rng = make_rng(53);
    int checked = 0;
    for (int instance = 0; instance < maps; ++instance) {
        auto rm = random_balanced_map(rng);
        t.count();
        for (std::size_t a = 0; a < rm.map.target.factors.size(); ++a) {
            if (rm.map.target.missing_coords(a).empty()) continue;
            const auto lifted = complete_divisor(rm.map, a);
            t.expect(forget_divisor(lifted, lifted.target.num_divisors() - 1) == rm.map, instance,
                     "round trip changed the map");
            ++checked;
        }
    }
    t.need(checked > 100, "too few completions exercised");
    return t.finish();
}

}  // namespace troplog::testing
