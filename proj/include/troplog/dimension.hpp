#pragma once

// Dimension bookkeeping for moduli of genus zero and one maps to products of
// projective spaces: expected dimensions, the degree-genus formula on
// P^1 x P^1, dimensions of strata glued from vertex moduli, and the degree of
// forgetting transverse markings together with their divisor.

#include "troplog/error.hpp"
#include "troplog/tropmap.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace troplog {

using Multidegree = std::vector<int>;

// Contact orders: one row per marking, one column per divisor component.
struct ContactMatrix {
    std::size_t columns = 0;
    std::vector<std::vector<std::int64_t>> rows;

    friend bool operator==(const ContactMatrix&, const ContactMatrix&) = default;
};

namespace detail {

inline void check_degree(const TargetModel& target, const Multidegree& degree) {
    target.validate();
    if (degree.size() != target.factors.size()) throw Error("degree needs one entry per factor");
    for (int d : degree)
        if (d < 0) throw Error("negative degree");
}

}  // namespace detail

inline int target_dimension(const TargetModel& target) {
    return std::accumulate(target.factors.begin(), target.factors.end(), 0);
}

// c_1 . beta + (dim - 3)(1 - g) + n.
inline int expected_dim(int genus, int markings, const TargetModel& target, const Multidegree& degree) {
    if (genus != 0 && genus != 1) throw Error("genus must be 0 or 1");
    if (markings < 0) throw Error("negative marking count");
    detail::check_degree(target, degree);
    int c1 = 0;
    for (std::size_t a = 0; a < degree.size(); ++a) c1 += (target.factors[a] + 1) * degree[a];
    return c1 + (target_dimension(target) - 3) * (1 - genus) + markings;
}

// Each contact of order k with a divisor component imposes k conditions.
inline int expected_dim_relative(int genus, int markings, const TargetModel& target, const Multidegree& degree,
                                 const ContactMatrix& gamma) {
    const int absolute = expected_dim(genus, markings, target, degree);
    if (gamma.columns != target.num_divisors()) throw Error("contact matrix needs one column per divisor");
    if (gamma.rows.size() != static_cast<std::size_t>(markings))
        throw Error("contact matrix needs one row per marking");
    std::int64_t total = 0;
    for (std::size_t j = 0; j < gamma.columns; ++j) {
        std::int64_t column = 0;
        for (const auto& row : gamma.rows) {
            if (row.size() != gamma.columns) throw Error("ragged contact matrix");
            if (row[j] < 0) throw Error("negative contact order");
            column += row[j];
        }
        if (column != degree[target.divisors[j].factor]) throw Error("contact orders inconsistent with degree");
        total += column;
    }
    return absolute - static_cast<int>(total);
}

// Arithmetic genus of a smooth curve of bidegree (a, b); curves in a ruling
// class (a = 0 or b = 0) are rational.
inline int degree_genus_p1p1(int a, int b) {
    if (a < 0 || b < 0) throw Error("bidegree must be nonnegative");
    if (a == 0 || b == 0) return 0;
    return (a - 1) * (b - 1);
}

// A vertex of a stratum: either the expected dimension of its own moduli
// space, or a dimension supplied by hand, which must say where it comes from.
struct StratumVertex {
    std::string name;
    int genus = 0;
    struct Formula {
        int markings = 0;
        TargetModel target;
        Multidegree degree;
        friend bool operator==(const Formula&, const Formula&) = default;
    };
    std::optional<Formula> formula;
    std::optional<int> explicit_dim;
    std::string note;
    int extra_parameters = 0;  // base choices made before the vertex moduli

    friend bool operator==(const StratumVertex&, const StratumVertex&) = default;
};

// Vertices glued along edges; each gluing is a fiber product over the
// evaluation target and costs its dimension.
struct StratumGraph {
    std::string name;
    std::vector<StratumVertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    int ambient_dimension = 0;

    friend bool operator==(const StratumGraph&, const StratumGraph&) = default;
};

inline int vertex_dim(const StratumVertex& v) {
    if (v.extra_parameters < 0) throw Error("negative base-choice count at " + v.name);
    if (v.formula && v.explicit_dim) throw Error("vertex " + v.name + " has both a formula and an explicit dimension");
    if (v.explicit_dim) {
        if (v.note.empty()) throw Error("explicit dimension at " + v.name + " needs a provenance note");
        return *v.explicit_dim;
    }
    if (!v.formula) throw Error("vertex " + v.name + " has no dimension");
    return expected_dim(v.genus, v.formula->markings, v.formula->target, v.formula->degree);
}

inline int stratum_dim(const StratumGraph& s) {
    if (s.ambient_dimension < 0) throw Error("negative ambient dimension");
    int total = 0;
    for (const auto& v : s.vertices) total += vertex_dim(v) + v.extra_parameters;
    for (const auto& [u, v] : s.edges)
        if (u >= s.vertices.size() || v >= s.vertices.size()) throw Error("edge endpoint out of range");
    return total - static_cast<int>(s.edges.size()) * s.ambient_dimension;
}

// The main stratum: a single smooth vertex carrying all the data.
inline StratumGraph main_stratum(int genus, int markings, const TargetModel& target, const Multidegree& degree) {
    StratumGraph s;
    s.name = "main";
    s.ambient_dimension = target_dimension(target);
    s.vertices.push_back({"main", genus, StratumVertex::Formula{markings, target, degree}, std::nullopt, "", 0});
    return s;
}

struct ForgetfulResult {
    std::int64_t multiplicity = 1;
    ContactMatrix remaining;
};

// Forgetting the markings M and divisor column j, where exactly the markings
// of M meet column j, each transversally, and meet nothing else. The
// multiplicity counts relabelings of M.
inline ForgetfulResult fictitious_forgetful(const ContactMatrix& gamma, std::size_t j,
                                            const std::vector<std::size_t>& markings) {
    if (j >= gamma.columns) throw Error("divisor column out of range");
    const std::set<std::size_t> m(markings.begin(), markings.end());
    if (m.size() != markings.size()) throw Error("repeated marking");
    for (std::size_t i : m)
        if (i >= gamma.rows.size()) throw Error("marking out of range");
    for (std::size_t i = 0; i < gamma.rows.size(); ++i) {
        const auto& row = gamma.rows[i];
        if (row.size() != gamma.columns) throw Error("ragged contact matrix");
        const bool chosen = m.count(i) > 0;
        if (row[j] != (chosen ? 1 : 0)) throw Error("markings/divisor not fictitious");
        if (chosen)
            for (std::size_t k = 0; k < gamma.columns; ++k)
                if (k != j && row[k] != 0) throw Error("markings/divisor not fictitious");
    }
    if (m.size() > 20) throw Error("too many markings to count relabelings");
    ForgetfulResult out;
    for (std::size_t k = 2; k <= m.size(); ++k) out.multiplicity *= static_cast<std::int64_t>(k);
    out.remaining.columns = gamma.columns - 1;
    for (std::size_t i = 0; i < gamma.rows.size(); ++i) {
        if (m.count(i)) continue;
        auto row = gamma.rows[i];
        row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
        out.remaining.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace troplog
