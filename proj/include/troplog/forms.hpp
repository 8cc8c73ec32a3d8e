#pragma once

// Generalized lengths and the chambers that order them.
//
// A LinearForm is a finitely supported rational combination of base
// parameters x_0, x_1, ...; a MonoidForm is one whose coefficients are all
// nonnegative, i.e. an element of the free commutative monoid of edge
// lengths. A Chamber is a set of order constraints between MonoidForms; all
// parameters are implicitly strictly positive. Comparisons between forms are
// decided uniformly over the relative interior of a chamber.

#include "troplog/error.hpp"
#include "troplog/fourier_motzkin.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace troplog {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw Error("invalid rational ''");
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty() || part == "-" || part == "+") throw Error("invalid rational '" + s + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw Error("invalid rational '" + s + "'");
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error("invalid rational '" + s + "': zero denominator");
    return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

class LinearForm {
public:
    LinearForm() = default;

    static LinearForm param(std::size_t index, Rational coeff = 1) {
        LinearForm f;
        f.set(index, std::move(coeff));
        return f;
    }

    const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(std::size_t index) const {
        auto it = coeffs_.find(index);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void set(std::size_t index, Rational value) {
        if (value == 0) coeffs_.erase(index);
        else coeffs_[index] = std::move(value);
    }

    bool is_zero() const { return coeffs_.empty(); }

    bool nonnegative_coeffs() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second > 0; });
    }

    // One past the largest parameter index in the support.
    std::size_t extent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first + 1; }

    LinearForm& operator+=(const LinearForm& other) {
        for (const auto& [i, c] : other.coeffs_) set(i, coeff(i) + c);
        return *this;
    }
    LinearForm& operator-=(const LinearForm& other) {
        for (const auto& [i, c] : other.coeffs_) set(i, coeff(i) - c);
        return *this;
    }
    LinearForm& operator*=(const Rational& s) {
        if (s == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [i, c] : coeffs_) c *= s;
        return *this;
    }

    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(const Rational& s, LinearForm a) { return a *= s; }
    friend LinearForm operator-(LinearForm a) { return a *= Rational(-1); }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;

    Rational evaluate(std::span<const Rational> point) const {
        Rational total = 0;
        for (const auto& [i, c] : coeffs_) {
            if (i >= point.size()) throw Error("form parameter out of range");
            total += c * point[i];
        }
        return total;
    }

    // Positive and negative parts: *this == pos - neg.
    std::pair<LinearForm, LinearForm> split() const {
        LinearForm pos, neg;
        for (const auto& [i, c] : coeffs_) {
            if (c > 0) pos.set(i, c);
            else neg.set(i, -c);
        }
        return {pos, neg};
    }

private:
    std::map<std::size_t, Rational> coeffs_;
};

// Renders "2*e1 + 1/3*e4" using the given parameter names ("0" when empty).
inline std::string format_form(const LinearForm& f, std::span<const std::string> names) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : f.coeffs()) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        first = false;
        if (mag != 1) out += to_string(mag) + "*";
        out += i < names.size() ? names[i] : "x" + std::to_string(i);
    }
    return out;
}

class MonoidForm {
public:
    MonoidForm() = default;

    explicit MonoidForm(LinearForm form) : form_(std::move(form)) {
        if (!form_.nonnegative_coeffs()) throw Error("monoid form with negative coefficient");
    }

    static std::optional<MonoidForm> try_from(const LinearForm& form) {
        if (!form.nonnegative_coeffs()) return std::nullopt;
        return MonoidForm(form);
    }

    static MonoidForm param(std::size_t index, Rational coeff = 1) {
        return MonoidForm(LinearForm::param(index, std::move(coeff)));
    }

    const LinearForm& linear() const { return form_; }
    operator const LinearForm&() const { return form_; }

    bool is_zero() const { return form_.is_zero(); }
    std::size_t extent() const { return form_.extent(); }

    MonoidForm& operator+=(const MonoidForm& other) {
        form_ += other.form_;
        return *this;
    }
    friend MonoidForm operator+(MonoidForm a, const MonoidForm& b) { return a += b; }

    MonoidForm scaled(const Rational& s) const {
        if (s < 0) throw Error("monoid forms scale by nonnegative rationals only");
        return MonoidForm(s * form_);
    }

    friend bool operator==(const MonoidForm&, const MonoidForm&) = default;

private:
    LinearForm form_;
};

enum class Relation { Less, LessEqual, Equal };

inline std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Equal: return "=";
    }
    return "?";
}

struct Constraint {
    MonoidForm lhs;
    Relation rel;
    MonoidForm rhs;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Builds the constraint  d rel 0  for a signed form d (rel in {<, <=, =}).
inline Constraint constraint_from_difference(const LinearForm& d, Relation rel) {
    auto [pos, neg] = d.split();
    return {MonoidForm(pos), rel, MonoidForm(neg)};
}

enum class Ordering { Less, Equal, Greater, Incomparable };

inline std::string_view to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
        case Ordering::Incomparable: return "Incomparable";
    }
    return "?";
}

class Chamber {
public:
    Chamber() = default;
    explicit Chamber(std::vector<std::string> params, std::vector<Constraint> constraints = {})
        : params_(std::move(params)), constraints_(std::move(constraints)) {
        for (const auto& c : constraints_) check_range(c);
    }

    // The unconstrained positive orthant on n anonymous parameters.
    static Chamber top(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        return Chamber(std::move(names));
    }

    std::size_t num_params() const { return params_.size(); }
    const std::vector<std::string>& params() const { return params_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    std::optional<std::size_t> find_param(std::string_view name) const {
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i] == name) return i;
        return std::nullopt;
    }

    void add_constraint(Constraint c) {
        check_range(c);
        constraints_.push_back(std::move(c));
    }

    Chamber with(Constraint c) const {
        Chamber out = *this;
        out.add_constraint(std::move(c));
        return out;
    }

    // Appends a parameter, choosing "<stem><k>" for the first unused k.
    std::size_t add_parameter(std::string_view stem) {
        for (std::size_t k = 1;; ++k) {
            std::string name = std::string(stem) + std::to_string(k);
            if (!find_param(name)) {
                params_.push_back(std::move(name));
                return params_.size() - 1;
            }
        }
    }

    std::string format(const LinearForm& f) const { return format_form(f, params_); }

    friend bool operator==(const Chamber&, const Chamber&) = default;

private:
    void check_range(const Constraint& c) const {
        if (c.lhs.extent() > params_.size() || c.rhs.extent() > params_.size())
            throw Error("constraint uses a parameter outside the chamber");
    }

    std::vector<std::string> params_;
    std::vector<Constraint> constraints_;
};

namespace detail {

using SignedRow = std::pair<LinearForm, fm::RowKind>;

inline std::vector<BigInt> integer_row(const LinearForm& f, std::size_t n) {
    BigInt lcm = 1;
    for (const auto& [i, c] : f.coeffs()) {
        const BigInt& d = denominator(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<BigInt> row(n, BigInt(0));
    for (const auto& [i, c] : f.coeffs()) {
        if (i >= n) throw Error("form uses a parameter outside the chamber");
        row[i] = numerator(c) * (lcm / denominator(c));
    }
    return row;
}

inline void append_constraint_rows(const Constraint& c, std::vector<SignedRow>& rows) {
    const LinearForm d = c.rhs.linear() - c.lhs.linear();
    switch (c.rel) {
        case Relation::Less: rows.emplace_back(d, fm::RowKind::Positive); break;
        case Relation::LessEqual: rows.emplace_back(d, fm::RowKind::NonNegative); break;
        case Relation::Equal: rows.emplace_back(d, fm::RowKind::Zero); break;
    }
}

inline bool feasible_rows(const std::vector<SignedRow>& rows, std::size_t n) {
    std::vector<std::vector<BigInt>> ints;
    ints.reserve(rows.size());
    bool fits = true;
    const BigInt lo = std::numeric_limits<std::int64_t>::min();
    const BigInt hi = std::numeric_limits<std::int64_t>::max();
    for (const auto& [form, kind] : rows) {
        ints.push_back(integer_row(form, n));
        for (const auto& x : ints.back())
            if (x < lo || x > hi) fits = false;
    }
    if (fits) {
        std::vector<fm::Row<std::int64_t>> small;
        small.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::vector<std::int64_t> c;
            c.reserve(n);
            for (const auto& x : ints[r]) c.push_back(static_cast<std::int64_t>(x));
            small.push_back({std::move(c), rows[r].second});
        }
        return fm::feasible(small, n);
    }
    std::vector<fm::Row<BigInt>> big;
    for (std::size_t r = 0; r < rows.size(); ++r) big.push_back({ints[r], rows[r].second});
    return fm::feasible(big, n);
}

inline std::vector<SignedRow> chamber_rows(const Chamber& ch) {
    std::vector<SignedRow> rows;
    for (const auto& c : ch.constraints()) append_constraint_rows(c, rows);
    return rows;
}

}  // namespace detail

// True iff some strictly positive rational point satisfies every constraint.
inline bool chamber_feasible(const Chamber& ch) {
    return detail::feasible_rows(detail::chamber_rows(ch), ch.num_params());
}

// Replaces each non-strict constraint by = or < so that the result describes
// the relative interior of the chamber's solution set.
inline Chamber relative_interior(const Chamber& ch) {
    const auto base = detail::chamber_rows(ch);
    std::vector<Constraint> out;
    out.reserve(ch.constraints().size());
    for (std::size_t i = 0; i < ch.constraints().size(); ++i) {
        const Constraint& c = ch.constraints()[i];
        if (c.rel != Relation::LessEqual) {
            out.push_back(c);
            continue;
        }
        auto rows = base;
        rows[i].second = fm::RowKind::Positive;
        const bool strict_possible = detail::feasible_rows(rows, ch.num_params());
        out.push_back({c.lhs, strict_possible ? Relation::Less : Relation::Equal, c.rhs});
    }
    return Chamber(ch.params(), std::move(out));
}

// Sign of a - b over the relative interior of ch.
inline Ordering compare(const LinearForm& a, const LinearForm& b, const Chamber& ch) {
    const bool has_loose = std::any_of(ch.constraints().begin(), ch.constraints().end(),
                                       [](const Constraint& c) { return c.rel == Relation::LessEqual; });
    const Chamber interior = has_loose ? relative_interior(ch) : ch;
    auto rows = detail::chamber_rows(interior);
    const std::size_t n = ch.num_params();
    if (a.extent() > n || b.extent() > n) throw Error("form uses a parameter outside the chamber");
    if (!detail::feasible_rows(rows, n)) throw Error("empty chamber");

    const LinearForm d = a - b;
    if (d.is_zero()) return Ordering::Equal;

    rows.emplace_back(d, fm::RowKind::Positive);
    const bool can_be_greater = detail::feasible_rows(rows, n);
    rows.back().first = -d;
    const bool can_be_less = detail::feasible_rows(rows, n);

    if (can_be_greater && can_be_less) return Ordering::Incomparable;
    if (can_be_greater) return Ordering::Greater;
    if (can_be_less) return Ordering::Less;
    return Ordering::Equal;
}

// form_sub_sign: the sign of a - b on the chamber.
inline Ordering form_sub_sign(const MonoidForm& a, const MonoidForm& b, const Chamber& ch) {
    return compare(a.linear(), b.linear(), ch);
}

namespace detail {

inline Constraint relate(const MonoidForm& a, Relation rel, const MonoidForm& b) { return {a, rel, b}; }
inline Constraint relate(const LinearForm& a, Relation rel, const LinearForm& b) {
    return constraint_from_difference(a - b, rel);
}

template <class Form>
void refine_step(std::span<const Form> forms, std::size_t next, std::vector<std::vector<std::size_t>>& classes,
                 const Chamber& current, const Chamber& base, std::vector<Chamber>& out) {
    if (next == forms.size()) {
        Chamber result = base;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const Form& rep = forms[classes[k].front()];
            for (std::size_t j = 1; j < classes[k].size(); ++j)
                if (!(forms[classes[k][j]] == rep)) result.add_constraint(relate(rep, Relation::Equal, forms[classes[k][j]]));
            if (k + 1 < classes.size())
                result.add_constraint(relate(rep, Relation::Less, forms[classes[k + 1].front()]));
        }
        out.push_back(std::move(result));
        return;
    }
    const Form& f = forms[next];
    // Slots 0, 2, 4, ... sit strictly between classes; odd slots join a class.
    for (std::size_t slot = 0; slot <= 2 * classes.size(); ++slot) {
        Chamber trial = current;
        if (slot % 2 == 1) {
            const Form& rep = forms[classes[slot / 2].front()];
            if (!(rep == f)) trial.add_constraint(relate(rep, Relation::Equal, f));
        } else {
            const std::size_t k = slot / 2;
            if (k > 0) trial.add_constraint(relate(forms[classes[k - 1].front()], Relation::Less, f));
            if (k < classes.size()) trial.add_constraint(relate(f, Relation::Less, forms[classes[k].front()]));
        }
        if (!chamber_feasible(trial)) continue;
        if (slot % 2 == 1) {
            classes[slot / 2].push_back(next);
            refine_step(forms, next + 1, classes, trial, base, out);
            classes[slot / 2].pop_back();
        } else {
            classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(slot / 2), std::vector<std::size_t>{next});
            refine_step(forms, next + 1, classes, trial, base, out);
            classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(slot / 2));
        }
    }
}

template <class Form>
std::vector<Chamber> refinements(std::span<const Form> forms, const Chamber& ch) {
    if (!chamber_feasible(ch)) throw Error("empty chamber");
    for (const auto& f : forms)
        if (f.extent() > ch.num_params()) throw Error("form uses a parameter outside the chamber");
    if (forms.size() <= 1) return {ch};
    std::vector<Chamber> out;
    std::vector<std::vector<std::size_t>> classes;
    refine_step(forms, 0, classes, ch, ch, out);
    return out;
}

}  // namespace detail

// All feasible refinements of ch on which the forms are totally preordered.
// Output order is deterministic: forms are inserted in the given order and
// each is tried at ascending positions.
inline std::vector<Chamber> chamber_refinements(std::span<const MonoidForm> forms, const Chamber& ch) {
    return detail::refinements(forms, ch);
}

// The same for signed forms.
inline std::vector<Chamber> chamber_refinements(std::span<const LinearForm> forms, const Chamber& ch) {
    return detail::refinements(forms, ch);
}

// Orders the forms ascending in ch, grouping those that are equal.
// Throws if some pair is incomparable.
inline std::vector<std::vector<std::size_t>> sort_in_chamber(std::span<const LinearForm> forms,
                                                             const Chamber& ch) {
    std::vector<std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        std::size_t pos = 0;
        bool placed = false;
        for (; pos < levels.size(); ++pos) {
            const Ordering o = compare(forms[i], forms[levels[pos].front()], ch);
            if (o == Ordering::Incomparable) throw Error("forms are not totally ordered in the chamber");
            if (o == Ordering::Equal) {
                levels[pos].push_back(i);
                placed = true;
                break;
            }
            if (o == Ordering::Less) break;
        }
        if (!placed) levels.insert(levels.begin() + static_cast<std::ptrdiff_t>(pos), std::vector<std::size_t>{i});
    }
    return levels;
}

// Returns f itself when its coefficients are nonnegative; otherwise appends a
// fresh parameter t to ch with the constraint t = f and returns t. Requires
// f >= 0 on ch.
inline MonoidForm materialize(const LinearForm& f, Chamber& ch, std::string_view stem = "t") {
    if (auto m = MonoidForm::try_from(f)) return *m;
    const Ordering o = compare(f, LinearForm{}, ch);
    if (o == Ordering::Equal) return MonoidForm{};
    if (o != Ordering::Greater) throw Error("length is not positive in the chamber: " + ch.format(f));
    const std::size_t t = ch.add_parameter(stem);
    auto [pos, neg] = f.split();
    ch.add_constraint({MonoidForm::param(t) + MonoidForm(neg), Relation::Equal, MonoidForm(pos)});
    return MonoidForm::param(t);
}

}  // namespace troplog
