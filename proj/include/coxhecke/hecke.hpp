#pragma once

// The Hecke algebra H of a finite Coxeter group over Z[v, v^-1], q = v^2,
// with T_s^2 = q T_e + (q - 1) T_s. KL polynomials, the bases
// c*_w = sum_{y <= w} P_{y,w}(q) T_y and c_w = phi(c*_w).

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxhecke/coxeter.hpp"
#include "coxhecke/errors.hpp"
#include "coxhecke/laurent.hpp"

namespace coxhecke {

/// Finite combination sum_x a_x T_x; zero coefficients are never stored.
class HeckeElement {
public:
    using Terms = std::map<Element, LaurentPolynomial>;

    HeckeElement() = default;

    static HeckeElement basis(Element w, LaurentPolynomial coeff = 1) {
        HeckeElement h;
        h.add(w, coeff);
        return h;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    LaurentPolynomial coefficient(Element w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? LaurentPolynomial{} : it->second;
    }

    void add(Element w, const LaurentPolynomial& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    HeckeElement& operator+=(const HeckeElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }

    HeckeElement& operator-=(const HeckeElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }

    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }

    friend HeckeElement operator*(const LaurentPolynomial& s, const HeckeElement& a) {
        HeckeElement r;
        if (s.is_zero()) return r;
        for (const auto& [w, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), w, s * c);
        return r;
    }

    friend bool operator==(const HeckeElement&, const HeckeElement&) = default;

private:
    Terms terms_;
};

namespace detail {

// Dense scratch space for building a HeckeElement.
class HeckeAccumulator {
public:
    explicit HeckeAccumulator(std::size_t order) : coeffs_(order), used_(order, 0) {}

    void add(Element w, const LaurentPolynomial& c, Coeff scale = 1, int shift = 0) {
        if (c.is_zero()) return;
        if (!used_[w.id]) {
            used_[w.id] = 1;
            touched_.push_back(w.id);
        }
        coeffs_[w.id].add_scaled(c, scale, shift);
    }

    HeckeElement take() {
        std::sort(touched_.begin(), touched_.end());
        HeckeElement h;
        for (std::uint32_t i : touched_) {
            if (!coeffs_[i].is_zero()) h.add(Element{i}, coeffs_[i]);
            coeffs_[i] = LaurentPolynomial{};
            used_[i] = 0;
        }
        touched_.clear();
        return h;
    }

private:
    std::vector<LaurentPolynomial> coeffs_;
    std::vector<std::uint8_t> used_;
    std::vector<std::uint32_t> touched_;
};

} // namespace detail

/// T-basis arithmetic, bar and phi over a fixed group.
class HeckeAlgebra {
public:
    explicit HeckeAlgebra(const GroupContext& g) : g_(&g) {}

    const GroupContext& group() const { return *g_; }

    HeckeElement T(Element w) const { return HeckeElement::basis(w); }

    /// T_s * a
    HeckeElement left_mul_generator(Generator s, const HeckeElement& a) const {
        detail::HeckeAccumulator acc(g_->order());
        left_generator_into(acc, s, a, 1);
        return acc.take();
    }

    /// a * T_s
    HeckeElement right_mul_generator(const HeckeElement& a, Generator s) const {
        detail::HeckeAccumulator acc(g_->order());
        for (const auto& [x, c] : a.terms()) {
            Element xs = g_->rmul(x, s);
            if (g_->length(xs) > g_->length(x)) {
                acc.add(xs, c);
            } else {
                acc.add(xs, c, 1, 2);
                acc.add(x, c, 1, 2);
                acc.add(x, c, -1, 0);
            }
        }
        return acc.take();
    }

    /// T_w * a
    HeckeElement left_mul_basis(Element w, HeckeElement a) const {
        const Word& word = g_->word(w);
        for (auto it = word.rbegin(); it != word.rend(); ++it) a = left_mul_generator(*it, a);
        return a;
    }

    /// a * T_w
    HeckeElement right_mul_basis(HeckeElement a, Element w) const {
        for (Generator s : g_->word(w)) a = right_mul_generator(a, s);
        return a;
    }

    HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const {
        HeckeElement result;
        for (const auto& [x, c] : a.terms()) result += c * left_mul_basis(x, b);
        return result;
    }

    /// Sum a_x(v^-1) * (T_{x^-1})^-1; a ring involution.
    HeckeElement bar(const HeckeElement& a) const {
        detail::HeckeAccumulator acc(g_->order());
        for (const auto& [x, c] : a.terms()) {
            LaurentPolynomial cb = c.bar();
            for (const auto& [y, d] : bar_of_basis(x).terms()) acc.add(y, cb * d);
        }
        return acc.take();
    }

    /// Algebra automorphism fixing q with T_s -> -q T_s^-1 = -T_s + (q - 1).
    HeckeElement phi(const HeckeElement& a) const {
        detail::HeckeAccumulator acc(g_->order());
        for (const auto& [x, c] : a.terms())
            for (const auto& [y, d] : phi_of_basis(x).terms()) acc.add(y, c * d);
        return acc.take();
    }

    /// bar(T_x) = T_{s1}^-1 ... T_{sk}^-1 along a reduced word of x.
    const HeckeElement& bar_of_basis(Element x) const {
        std::call_once(bar_once_, [this] { fill_images(bar_cache_, kBarGenerator); });
        return bar_cache_[x.id];
    }

    const HeckeElement& phi_of_basis(Element x) const {
        std::call_once(phi_once_, [this] { fill_images(phi_cache_, kPhiGenerator); });
        return phi_cache_[x.id];
    }

private:
    enum GeneratorImage { kBarGenerator, kPhiGenerator };

    void left_generator_into(detail::HeckeAccumulator& acc, Generator s, const HeckeElement& a, Coeff scale) const {
        for (const auto& [x, c] : a.terms()) {
            Element sx = g_->lmul(s, x);
            if (g_->length(sx) > g_->length(x)) {
                acc.add(sx, c, scale);
            } else {
                acc.add(sx, c, scale, 2);
                acc.add(x, c, scale, 2);
                acc.add(x, c, -scale, 0);
            }
        }
    }

    // Image of T_x under the ring map determined by its value on T_s,
    // built by left multiplication along the canonical word.
    void fill_images(std::vector<HeckeElement>& cache, GeneratorImage kind) const {
        cache.assign(g_->order(), HeckeElement{});
        cache[0] = T(g_->identity());
        detail::HeckeAccumulator acc(g_->order());
        for (Element x : g_->elements()) {
            if (x == g_->identity()) continue;
            Generator s = g_->word(x).front();
            const HeckeElement& rest = cache[g_->lmul(s, x).id];
            if (kind == kBarGenerator) {
                // T_s^-1 = v^-2 T_s + (v^-2 - 1)
                left_generator_into(acc, s, rest, 1);
                HeckeElement ts = acc.take();
                for (const auto& [y, c] : ts.terms()) acc.add(y, c, 1, -2);
                for (const auto& [y, c] : rest.terms()) {
                    acc.add(y, c, 1, -2);
                    acc.add(y, c, -1, 0);
                }
            } else {
                // -T_s + (v^2 - 1)
                left_generator_into(acc, s, rest, -1);
                for (const auto& [y, c] : rest.terms()) {
                    acc.add(y, c, 1, 2);
                    acc.add(y, c, -1, 0);
                }
            }
            cache[x.id] = acc.take();
        }
    }

    const GroupContext* g_;
    mutable std::once_flag bar_once_;
    mutable std::once_flag phi_once_;
    mutable std::vector<HeckeElement> bar_cache_;
    mutable std::vector<HeckeElement> phi_cache_;
};

inline HeckeElement t_multiply(const HeckeAlgebra& h, const HeckeElement& a, const HeckeElement& b) {
    return h.multiply(a, b);
}

inline HeckeElement bar_involution(const HeckeAlgebra& h, const HeckeElement& a) { return h.bar(a); }

inline HeckeElement phi_involution(const HeckeAlgebra& h, const HeckeElement& a) { return h.phi(a); }

inline constexpr std::size_t kMaxKLTableOrder = 2000;

/// All P_{y,w} of a group, filled by the standard recursion: with s the
/// smallest left descent of w and u = sw,
///   P_{y,w} = q^{1-c} P_{sy,u} + q^c P_{y,u}
///             - sum_{z < u, sz < z} mu(z,u) q^{(l(w)-l(z))/2} P_{y,z},
/// c = 1 if sy < y else 0. Columns are filled by increasing length of w.
/// Immutable after build.
class KLTable {
public:
    static KLTable build(const GroupContext& g) {
        const std::size_t n = g.order();
        if (n > kMaxKLTableOrder)
            throw TooLarge("full KL table limited to groups of order <= " + std::to_string(kMaxKLTableOrder));
        KLTable t;
        t.g_ = &g;
        t.p_.assign(n * n, LaurentPolynomial{});
        t.bruhat_.assign(n * n, 0);
        t.edges_.assign(n, {});
        t.p_[0] = 1;
        t.bruhat_[0] = 1;
        for (std::uint32_t wi = 1; wi < n; ++wi) {
            Element w{wi};
            Generator s = g.first_left_descent(w);
            Element u = g.lmul(s, w);
            const int lw = static_cast<int>(g.length(w));
            for (std::uint32_t yi = 0; yi < n; ++yi) {
                Element y{yi};
                Element sy = g.lmul(s, y);
                Element low = g.length(sy) < g.length(y) ? sy : y;
                t.bruhat_[wi * n + yi] = t.bruhat_[u.id * n + low.id];
            }
            // y by decreasing length
            for (std::uint32_t yi = wi + 1; yi-- > 0;) {
                if (!t.bruhat_[wi * n + yi]) continue;
                Element y{yi};
                LaurentPolynomial& out = t.p_[wi * n + yi];
                if (y == w) {
                    out = 1;
                    continue;
                }
                Element sy = g.lmul(s, y);
                bool c = g.length(sy) < g.length(y);
                out.add_scaled(t.at(sy, u), 1, c ? 0 : 2);
                out.add_scaled(t.at(y, u), 1, c ? 2 : 0);
                for (const auto& [z, mu] : t.edges_[u.id]) {
                    if (!g.is_left_descent(s, z)) continue;
                    out.add_scaled(t.at(y, z), -mu, lw - static_cast<int>(g.length(z)));
                }
            }
            for (std::uint32_t yi = 0; yi < wi; ++yi) {
                Coeff m = t.mu(Element{yi}, w);
                if (m != 0) t.edges_[wi].emplace_back(Element{yi}, m);
            }
        }
        return t;
    }

    const GroupContext& group() const { return *g_; }

    /// P_{y,w} as a polynomial in v with even exponents.
    const LaurentPolynomial& at(Element y, Element w) const { return p_[w.id * g_->order() + y.id]; }

    bool leq(Element y, Element w) const { return bruhat_[w.id * g_->order() + y.id] != 0; }

    /// Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}; 0 unless that is a
    /// nonnegative integer and y <= w.
    Coeff mu(Element y, Element w) const {
        int gap = static_cast<int>(g_->length(w)) - static_cast<int>(g_->length(y)) - 1;
        if (gap < 0 || gap % 2 != 0 || !leq(y, w)) return 0;
        return at(y, w).coefficient(gap);
    }

    /// (z, mu(z,w)) for z < w with mu(z,w) != 0, in enumeration order.
    const std::vector<std::pair<Element, Coeff>>& lower_edges(Element w) const { return edges_[w.id]; }

private:
    const GroupContext* g_ = nullptr;
    std::vector<LaurentPolynomial> p_;
    std::vector<std::uint8_t> bruhat_;
    std::vector<std::vector<std::pair<Element, Coeff>>> edges_;
};

inline const LaurentPolynomial& kl_polynomial(const KLTable& t, Element y, Element w) { return t.at(y, w); }

inline Coeff mu_coefficient(const KLTable& t, Element y, Element w) { return t.mu(y, w); }

/// c*_w = sum_{y <= w} P_{y,w}(q) T_y
inline HeckeElement c_star(const KLTable& t, Element w) {
    HeckeElement h;
    for (Element y : t.group().elements())
        if (t.leq(y, w)) h.add(y, t.at(y, w));
    return h;
}

/// c_w = phi(c*_w)
inline HeckeElement c_basis(const HeckeAlgebra& h, const KLTable& t, Element w) { return h.phi(c_star(t, w)); }

/// bar(c*_w) == q^{-l(w)} c*_w
inline bool check_bar_invariance(const HeckeAlgebra& h, const KLTable& t, Element w) {
    HeckeElement c = c_star(t, w);
    return h.bar(c) == v_power(-2 * static_cast<int>(t.group().length(w))) * c;
}

/// Expands c*_w T_{w0} = sum_{y <= w} q^{l(w)} P'_{y,w}(q^-1) T_{y w0} and
/// returns y -> P'_{y,w}. Throws IdentityViolation if the product has
/// support outside {y w0 : y <= w}, some P' is not a polynomial in q, breaks
/// the degree bound, or P'_{w,w} != 1.
/// Right multiplication by T_{w0} sends T_y into the span of T_{y' w0} with
/// y' <= y, so the index is y w0; reading it as w0 y already fails at w = s1
/// in A2, where w0 s1 w0 = s2.
inline std::map<Element, LaurentPolynomial> verify_cstar_identity(const HeckeAlgebra& h, const KLTable& t, Element w) {
    const GroupContext& g = t.group();
    const Element w0 = g.longest();
    const Element w0inv = g.inverse(w0);
    const int lw = static_cast<int>(g.length(w));
    HeckeElement prod = h.right_mul_basis(c_star(t, w), w0);
    std::map<Element, LaurentPolynomial> out;
    auto fail = [&](const std::string& why) {
        return IdentityViolation("c*_w T_w0 identity fails for w = [" + format_element(g, w) + "]: " + why);
    };
    for (const auto& [u, coeff] : prod.terms()) {
        Element y = g.multiply(u, w0inv);
        if (!t.leq(y, w)) throw fail("term outside the Bruhat interval");
        LaurentPolynomial pp = coeff.bar().shifted(2 * lw);
        if (!is_q_polynomial(pp)) throw fail("P' is not a polynomial in q");
        if (y != w && 2 * q_degree(pp) > lw - static_cast<int>(g.length(y)) - 1) throw fail("degree bound violated");
        out.emplace(y, std::move(pp));
    }
    if (out[w] != LaurentPolynomial(1)) throw fail("P'_{w,w} != 1");
    return out;
}

struct InversionResult {
    bool holds = true;
    std::size_t pairs_checked = 0;
    std::optional<std::pair<Element, Element>> first_failure;
};

/// Checks sum_y (-1)^{l(x)+l(y)} P_{x,y} P_{w0 w, w0 y} = delta_{x,w} for
/// every x <= w.
inline InversionResult verify_inversion(const KLTable& t) {
    const GroupContext& g = t.group();
    const std::size_t n = g.order();
    std::vector<Element> w0x(n);
    for (Element x : g.elements()) w0x[x.id] = g.multiply(g.longest(), x);
    InversionResult r;
    for (Element w : g.elements()) {
        for (Element x : g.elements()) {
            if (!t.leq(x, w)) continue;
            LaurentPolynomial sum;
            for (Element y : g.elements()) {
                if (!t.leq(x, y) || !t.leq(y, w)) continue;
                LaurentPolynomial term = t.at(x, y) * t.at(w0x[w.id], w0x[y.id]);
                bool odd = (g.length(x) + g.length(y)) % 2 != 0;
                sum.add_scaled(term, odd ? -1 : 1, 0);
            }
            ++r.pairs_checked;
            if (sum != LaurentPolynomial(x == w ? 1 : 0)) {
                r.holds = false;
                if (!r.first_failure) r.first_failure = std::make_pair(x, w);
            }
        }
    }
    return r;
}

/// Trace over the T-basis of h -> T_w h T_{w2^-1}.
inline LaurentPolynomial bitrace(const HeckeAlgebra& h, Element w, Element w2) {
    const GroupContext& g = h.group();
    Element w2inv = g.inverse(w2);
    LaurentPolynomial tr;
    for (Element u : g.elements()) {
        HeckeElement img = h.right_mul_basis(h.left_mul_basis(w, h.T(u)), w2inv);
        tr += img.coefficient(u);
    }
    return tr;
}

} // namespace coxhecke
