#pragma once

// Exact feasibility of homogeneous linear systems over strictly positive
// variables, by Gaussian elimination of equalities followed by
// Fourier-Motzkin elimination of the inequalities.
//
// Rows are integer vectors a with a relation a.x > 0, a.x >= 0 or a.x = 0.
// Every variable is additionally required to be > 0. Arithmetic runs in
// int64 with overflow detection and restarts with arbitrary precision
// integers when a product no longer fits.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace troplog::fm {

enum class RowKind { Positive, NonNegative, Zero };

template <typename Int>
struct Row {
    std::vector<Int> coeffs;
    RowKind kind;
};

namespace detail {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t abs_value(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return a < 0 ? -a : a;
}
inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

using BigInt = boost::multiprecision::cpp_int;
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

template <typename Int>
int sign(const Int& a) {
    return a > 0 ? 1 : (a < 0 ? -1 : 0);
}

template <typename Int>
bool is_zero_row(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

// Divides by the gcd of the entries so identical half-spaces compare equal.
template <typename Int>
void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd_of(g, abs_value(x));
    if (g > 1)
        for (auto& x : v) x /= g;
}

// Keeps one row per direction; a strict row supersedes a non-strict one.
template <typename Int>
std::vector<Row<Int>> dedupe(std::vector<Row<Int>> rows) {
    std::map<std::vector<Int>, RowKind> seen;
    for (auto& r : rows) {
        auto [it, inserted] = seen.emplace(r.coeffs, r.kind);
        if (!inserted && r.kind == RowKind::Positive) it->second = RowKind::Positive;
    }
    std::vector<Row<Int>> out;
    out.reserve(seen.size());
    for (auto& [c, k] : seen) out.push_back({c, k});
    return out;
}

// Returns false as soon as a contradiction 0 > 0 appears.
template <typename Int>
bool feasible_impl(std::vector<Row<Int>> rows, std::size_t num_vars) {
    for (std::size_t i = 0; i < num_vars; ++i) {
        std::vector<Int> unit(num_vars, Int(0));
        unit[i] = 1;
        rows.push_back({std::move(unit), RowKind::Positive});
    }

    // Equalities: solve for one variable and substitute it everywhere.
    for (;;) {
        auto eq = std::find_if(rows.begin(), rows.end(), [](const Row<Int>& r) {
            return r.kind == RowKind::Zero && !is_zero_row(r.coeffs);
        });
        if (eq == rows.end()) break;
        Row<Int> pivot = *eq;
        rows.erase(eq);
        std::size_t k = 0;
        while (pivot.coeffs[k] == 0) ++k;
        if (pivot.coeffs[k] < 0)
            for (auto& x : pivot.coeffs) x = -x;
        const Int pk = pivot.coeffs[k];
        for (auto& r : rows) {
            const Int rk = r.coeffs[k];
            if (rk == 0) continue;
            for (std::size_t i = 0; i < num_vars; ++i)
                r.coeffs[i] = sub(mul(pk, r.coeffs[i]), mul(rk, pivot.coeffs[i]));
            make_primitive(r.coeffs);
        }
    }

    std::vector<Row<Int>> work;
    for (auto& r : rows) {
        if (is_zero_row(r.coeffs)) {
            if (r.kind == RowKind::Positive) return false;
            continue;
        }
        make_primitive(r.coeffs);
        work.push_back(std::move(r));
    }
    work = dedupe(std::move(work));

    std::vector<bool> eliminated(num_vars, false);
    for (std::size_t step = 0; step < num_vars; ++step) {
        // Pick the variable with the fewest generated combinations.
        std::size_t best = num_vars;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < num_vars; ++v) {
            if (eliminated[v]) continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& r : work) {
                if (r.coeffs[v] > 0) ++pos;
                else if (r.coeffs[v] < 0) ++neg;
            }
            const std::size_t cost = pos * neg;
            if (best == num_vars || cost < best_cost || (cost == best_cost && pos + neg == 0)) {
                best = v;
                best_cost = cost;
            }
        }
        const std::size_t v = best;
        eliminated[v] = true;

        std::vector<Row<Int>> pos, neg, next;
        for (auto& r : work) {
            if (r.coeffs[v] > 0) pos.push_back(std::move(r));
            else if (r.coeffs[v] < 0) neg.push_back(std::move(r));
            else next.push_back(std::move(r));
        }
        // Only positive (or only negative) occurrences: the variable can be
        // pushed to satisfy those rows, so they drop out.
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                const Int a = abs_value(q.coeffs[v]);
                const Int b = p.coeffs[v];
                std::vector<Int> c(num_vars, Int(0));
                for (std::size_t i = 0; i < num_vars; ++i)
                    c[i] = add(mul(a, p.coeffs[i]), mul(b, q.coeffs[i]));
                const RowKind kind = (p.kind == RowKind::Positive || q.kind == RowKind::Positive)
                                         ? RowKind::Positive
                                         : RowKind::NonNegative;
                if (is_zero_row(c)) {
                    if (kind == RowKind::Positive) return false;
                    continue;
                }
                make_primitive(c);
                next.push_back({std::move(c), kind});
            }
        }
        work = dedupe(std::move(next));
    }
    return true;
}

}  // namespace detail

// Rows are given with int64 coefficients; precision is escalated internally.
inline bool feasible(const std::vector<Row<std::int64_t>>& rows, std::size_t num_vars) {
    try {
        return detail::feasible_impl(rows, num_vars);
    } catch (const detail::Overflow&) {
    }
    std::vector<Row<detail::BigInt>> big;
    big.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<detail::BigInt> c(r.coeffs.begin(), r.coeffs.end());
        big.push_back({std::move(c), r.kind});
    }
    return detail::feasible_impl(std::move(big), num_vars);
}

inline bool feasible(const std::vector<Row<detail::BigInt>>& rows, std::size_t num_vars) {
    return detail::feasible_impl(rows, num_vars);
}

}  // namespace troplog::fm
