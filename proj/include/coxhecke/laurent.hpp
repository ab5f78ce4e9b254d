#pragma once

// Sparse Laurent polynomials with exact 64-bit integer coefficients.
//
// LaurentPolynomial is Z[v, v^-1]; the Hecke algebra parameter is q = v^2,
// so q-polynomials are stored with even exponents. BiLaurentPolynomial is
// Z[v, v^-1, v', v'^-1] for two independent parameters.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coxhecke/errors.hpp"

namespace coxhecke {

using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
    return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
    return r;
}

inline Coeff checked_neg(Coeff a) {
    if (a == INT64_MIN) throw ArithmeticOverflow("integer overflow in negation");
    return -a;
}

struct BiExponent {
    int v = 0;
    int w = 0;

    friend BiExponent operator+(BiExponent a, BiExponent b) { return {a.v + b.v, a.w + b.w}; }
    friend BiExponent operator-(BiExponent a) { return {-a.v, -a.w}; }
    friend auto operator<=>(const BiExponent&, const BiExponent&) = default;
    friend bool operator==(const BiExponent&, const BiExponent&) = default;
};

/// Finite sum of c_e * x^e, terms kept sorted by exponent with no zero
/// coefficients, so equality is structural.
template <typename Exponent>
class SparsePolynomial {
public:
    using exponent_type = Exponent;
    using Term = std::pair<Exponent, Coeff>;

    SparsePolynomial() = default;

    SparsePolynomial(Coeff constant) {  // NOLINT: implicit from integer constants
        if (constant != 0) terms_.emplace_back(Exponent{}, constant);
    }

    static SparsePolynomial monomial(Exponent e, Coeff c = 1) {
        SparsePolynomial p;
        if (c != 0) p.terms_.emplace_back(e, c);
        return p;
    }

    /// Accepts terms in any order, with repeats and zeros.
    static SparsePolynomial from_terms(std::vector<Term> terms) {
        SparsePolynomial p;
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coeff coefficient(Exponent e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exponent& x) { return t.first < x; });
        return (it != terms_.end() && it->first == e) ? it->second : 0;
    }

    /// Smallest / largest exponent; the polynomial must be nonzero.
    Exponent min_exponent() const { return terms_.front().first; }
    Exponent max_exponent() const { return terms_.back().first; }

    SparsePolynomial operator-() const {
        SparsePolynomial r = *this;
        for (auto& t : r.terms_) t.second = checked_neg(t.second);
        return r;
    }

    SparsePolynomial& operator+=(const SparsePolynomial& o) {
        add_scaled(o, 1, Exponent{});
        return *this;
    }

    SparsePolynomial& operator-=(const SparsePolynomial& o) {
        add_scaled(o, -1, Exponent{});
        return *this;
    }

    SparsePolynomial& operator*=(const SparsePolynomial& o) {
        *this = *this * o;
        return *this;
    }

    /// this += scale * x^shift * o, in one merge pass.
    void add_scaled(const SparsePolynomial& o, Coeff scale, Exponent shift) {
        if (o.is_zero() || scale == 0) return;
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end()) {
                out.push_back(*a++);
                continue;
            }
            Exponent be = b->first + shift;
            if (a == terms_.end() || be < a->first) {
                out.emplace_back(be, checked_mul(b->second, scale));
                ++b;
            } else if (a->first < be) {
                out.push_back(*a++);
            } else {
                Coeff c = checked_add(a->second, checked_mul(b->second, scale));
                if (c != 0) out.emplace_back(be, c);
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
    }

    /// x^shift * this
    SparsePolynomial shifted(Exponent shift) const {
        SparsePolynomial r = *this;
        for (auto& t : r.terms_) t.first = t.first + shift;
        return r;
    }

    /// Exponent negation x^e -> x^-e; a ring involution.
    SparsePolynomial bar() const {
        SparsePolynomial r;
        r.terms_.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
        return r;
    }

    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }

    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (b.size() == 1) return scaled_shift(a, b.terms_[0].second, b.terms_[0].first);
        if (a.size() == 1) return scaled_shift(b, a.terms_[0].second, a.terms_[0].first);
        std::vector<Term> prod;
        prod.reserve(a.size() * b.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) prod.emplace_back(ea + eb, checked_mul(ca, cb));
        return from_terms(std::move(prod));
    }

    friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

private:
    static SparsePolynomial scaled_shift(const SparsePolynomial& p, Coeff c, Exponent e) {
        SparsePolynomial r;
        r.terms_.reserve(p.size());
        for (const auto& t : p.terms_) r.terms_.emplace_back(t.first + e, checked_mul(t.second, c));
        return r;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second = checked_add(out.back().second, t.second);
            else
                out.push_back(t);
            if (out.back().second == 0) out.pop_back();
        }
        terms_ = std::move(out);
    }

    std::vector<Term> terms_;
};

using LaurentPolynomial = SparsePolynomial<int>;
using BiLaurentPolynomial = SparsePolynomial<BiExponent>;

inline LaurentPolynomial poly_mul(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a * b; }
inline LaurentPolynomial poly_bar(const LaurentPolynomial& a) { return a.bar(); }

inline LaurentPolynomial v_power(int e, Coeff c = 1) { return LaurentPolynomial::monomial(e, c); }
inline LaurentPolynomial q_power(int e, Coeff c = 1) { return LaurentPolynomial::monomial(2 * e, c); }

/// Polynomial in q from ascending coefficients: {1, 1} is 1 + q.
inline LaurentPolynomial q_polynomial(std::initializer_list<Coeff> ascending) {
    std::vector<LaurentPolynomial::Term> t;
    int e = 0;
    for (Coeff c : ascending) {
        t.emplace_back(e, c);
        e += 2;
    }
    return LaurentPolynomial::from_terms(std::move(t));
}

/// v + v^-1
inline LaurentPolynomial v_sum() { return LaurentPolynomial::from_terms({{-1, 1}, {1, 1}}); }

/// True when every exponent is even and nonnegative, i.e. a genuine polynomial in q.
inline bool is_q_polynomial(const LaurentPolynomial& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.first >= 0 && t.first % 2 == 0; });
}

/// Degree in q of a q-polynomial; -1 for zero.
inline int q_degree(const LaurentPolynomial& p) { return p.is_zero() ? -1 : p.max_exponent() / 2; }

/// Ascending q-coefficients; throws InvalidArgument unless is_q_polynomial(p).
inline std::vector<Coeff> to_q_coefficients(const LaurentPolynomial& p) {
    if (!is_q_polynomial(p)) throw InvalidArgument("not a polynomial in q = v^2");
    std::vector<Coeff> out;
    if (p.is_zero()) return out;
    out.assign(static_cast<std::size_t>(p.max_exponent() / 2 + 1), 0);
    for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e / 2)] = c;
    return out;
}

/// Value at v = 1.
inline Coeff coefficient_sum(const LaurentPolynomial& p) {
    Coeff s = 0;
    for (const auto& t : p.terms()) s = checked_add(s, t.second);
    return s;
}

inline BiLaurentPolynomial in_first_variable(const LaurentPolynomial& p) {
    std::vector<BiLaurentPolynomial::Term> t;
    for (const auto& [e, c] : p.terms()) t.emplace_back(BiExponent{e, 0}, c);
    return BiLaurentPolynomial::from_terms(std::move(t));
}

inline BiLaurentPolynomial in_second_variable(const LaurentPolynomial& p) {
    std::vector<BiLaurentPolynomial::Term> t;
    for (const auto& [e, c] : p.terms()) t.emplace_back(BiExponent{0, e}, c);
    return BiLaurentPolynomial::from_terms(std::move(t));
}

namespace detail {

inline void append_term(std::string& out, bool first, Coeff c, const std::string& monomial) {
    if (!first) out += " + ";
    if (monomial.empty()) {
        out += std::to_string(c);
        return;
    }
    if (c == -1)
        out += "-1*";
    else if (c != 1)
        out += std::to_string(c) + "*";
    out += monomial;
}

inline std::string power_text(const char* var, int e) {
    if (e == 0) return {};
    if (e == 1) return var;
    return std::string(var) + "^" + std::to_string(e);
}

} // namespace detail

/// Canonical text: ascending exponents joined by " + ", e.g. "-1*v^-2 + 3 + v^4".
inline std::string to_string(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        detail::append_term(out, first, c, detail::power_text("v", e));
        first = false;
    }
    return out;
}

inline std::string to_string(const BiLaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string m = detail::power_text("v", e.v);
        std::string m2 = detail::power_text("v'", e.w);
        if (!m.empty() && !m2.empty()) m += "*";
        detail::append_term(out, first, c, m + m2);
        first = false;
    }
    return out;
}

/// Human form in q for even-exponent polynomials: "1 + 2q + 2q^2 + q^3",
/// "1 - 3q + q^2". Falls back to the v form for odd exponents.
inline std::string to_q_string(const LaurentPolynomial& p) {
    if (p.is_zero()) return "0";
    for (const auto& t : p.terms())
        if (t.first % 2 != 0) return to_string(p);
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        int qe = e / 2;
        Coeff mag = c < 0 ? -c : c;
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        if (qe == 0) {
            out += std::to_string(mag);
            continue;
        }
        if (mag != 1) out += std::to_string(mag);
        out += qe == 1 ? std::string("q") : "q^" + std::to_string(qe);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPolynomial& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const BiLaurentPolynomial& p) { return os << to_string(p); }

/// {"val": min exponent, "coeffs": [dense ascending]}; zero is {"val":0,"coeffs":[]}.
inline nlohmann::ordered_json to_json(const LaurentPolynomial& p) {
    nlohmann::ordered_json j;
    if (p.is_zero()) {
        j["val"] = 0;
        j["coeffs"] = nlohmann::ordered_json::array();
        return j;
    }
    int lo = p.min_exponent();
    std::vector<Coeff> dense(static_cast<std::size_t>(p.max_exponent() - lo + 1), 0);
    for (const auto& [e, c] : p.terms()) dense[static_cast<std::size_t>(e - lo)] = c;
    j["val"] = lo;
    j["coeffs"] = dense;
    return j;
}

template <typename Json>
LaurentPolynomial laurent_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("val") || !j.contains("coeffs") || !j["val"].is_number_integer() ||
        !j["coeffs"].is_array())
        throw InvalidArgument("polynomial JSON must be {\"val\": int, \"coeffs\": [int, ...]}");
    int e = j["val"].template get<int>();
    std::vector<LaurentPolynomial::Term> t;
    for (const auto& c : j["coeffs"]) {
        if (!c.is_number_integer()) throw InvalidArgument("polynomial coefficients must be integers");
        t.emplace_back(e++, c.template get<Coeff>());
    }
    return LaurentPolynomial::from_terms(std::move(t));
}

} // namespace coxhecke
