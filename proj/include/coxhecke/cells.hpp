#pragma once

// Cells, the a-function, distinguished involutions and the asymptotic ring J.
//
// Everything is expressed in the normalized basis b_w = v^{-l(w)} c*_w,
// which is bar-invariant. Products with a simple b_s come from the W-graph:
//   b_s b_w = (v + v^-1) b_w                                  if sw < w
//   b_s b_w = b_{sw} + sum_{z < w, sz < z} mu(z,w) b_z          if sw > w
// and symmetrically on the right. b_x b_y = sum_z h_{x,y,z} b_z.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "coxhecke/coxeter.hpp"
#include "coxhecke/errors.hpp"
#include "coxhecke/hecke.hpp"
#include "coxhecke/laurent.hpp"

namespace coxhecke {

/// Coefficient vector over the b-basis, indexed by element id.
using BExpansion = std::vector<LaurentPolynomial>;

class StructureConstants {
public:
    explicit StructureConstants(const KLTable& t) : t_(&t), g_(&t.group()) {}

    const KLTable& table() const { return *t_; }
    const GroupContext& group() const { return *g_; }

    /// out += b_s * (sum_w in[w] b_w)
    void add_left_generator(Generator s, const BExpansion& in, BExpansion& out) const {
        for (std::uint32_t i = 0; i < in.size(); ++i) {
            if (in[i].is_zero()) continue;
            Element w{i};
            Element sw = g_->lmul(s, w);
            if (g_->length(sw) < g_->length(w)) {
                out[i].add_scaled(in[i], 1, 1);
                out[i].add_scaled(in[i], 1, -1);
                continue;
            }
            out[sw.id] += in[i];
            for (const auto& [z, mu] : t_->lower_edges(w))
                if (g_->is_left_descent(s, z)) out[z.id].add_scaled(in[i], mu, 0);
        }
    }

    /// out += (sum_w in[w] b_w) * b_s
    void add_right_generator(const BExpansion& in, Generator s, BExpansion& out) const {
        for (std::uint32_t i = 0; i < in.size(); ++i) {
            if (in[i].is_zero()) continue;
            Element w{i};
            Element ws = g_->rmul(w, s);
            if (g_->length(ws) < g_->length(w)) {
                out[i].add_scaled(in[i], 1, 1);
                out[i].add_scaled(in[i], 1, -1);
                continue;
            }
            out[ws.id] += in[i];
            for (const auto& [z, mu] : t_->lower_edges(w))
                if (g_->is_right_descent(z, s)) out[z.id].add_scaled(in[i], mu, 0);
        }
    }

    /// h_{s,w,.}: the b-expansion of b_s b_w.
    BExpansion left_generator_product(Generator s, Element w) const {
        BExpansion in(g_->order()), out(g_->order());
        in[w.id] = 1;
        add_left_generator(s, in, out);
        return out;
    }

    BExpansion right_generator_product(Element w, Generator s) const {
        BExpansion in(g_->order()), out(g_->order());
        in[w.id] = 1;
        add_right_generator(in, s, out);
        return out;
    }

    /// rows[x] = b-expansion of b_x b_y, for every x. Uses
    /// b_x = b_s b_{sx} - sum_{z < sx, sz < z} mu(z,sx) b_z with s a left descent of x.
    std::vector<BExpansion> products_with(Element y) const {
        const std::size_t n = g_->order();
        std::vector<BExpansion> rows(n, BExpansion(n));
        rows[0][y.id] = 1;
        for (std::uint32_t xi = 1; xi < n; ++xi) {
            Element x{xi};
            Generator s = g_->first_left_descent(x);
            Element sx = g_->lmul(s, x);
            add_left_generator(s, rows[sx.id], rows[xi]);
            for (const auto& [z, mu] : t_->lower_edges(sx)) {
                if (!g_->is_left_descent(s, z)) continue;
                for (std::size_t k = 0; k < n; ++k) rows[xi][k].add_scaled(rows[z.id][k], -mu, 0);
            }
        }
        return rows;
    }

    /// b-expansion of b_x b_y.
    BExpansion product(Element x, Element y) const {
        BExpansion cur(g_->order());
        cur[y.id] = 1;
        return apply_left(x, std::move(cur));
    }

    /// b_x * (sum in[w] b_w), by the same recursion on x.
    BExpansion apply_left(Element x, BExpansion in) const {
        if (x == g_->identity()) return in;
        Generator s = g_->first_left_descent(x);
        Element sx = g_->lmul(s, x);
        BExpansion inner = apply_left(sx, in);
        BExpansion out(g_->order());
        add_left_generator(s, inner, out);
        for (const auto& [z, mu] : t_->lower_edges(sx)) {
            if (!g_->is_left_descent(s, z)) continue;
            BExpansion corr = apply_left(z, in);
            for (std::size_t k = 0; k < out.size(); ++k) out[k].add_scaled(corr[k], -mu, 0);
        }
        return out;
    }

private:
    const KLTable* t_;
    const GroupContext* g_;
};

struct CellData {
    std::vector<std::uint32_t> left_cell_id;
    std::vector<std::uint32_t> right_cell_id;
    std::vector<std::uint32_t> two_sided_cell_id;
    /// Cells as sorted element lists, ordered by their smallest element.
    std::vector<std::vector<Element>> left_cells;
    std::vector<std::vector<Element>> right_cells;
    std::vector<std::vector<Element>> two_sided_cells;
};

namespace detail {

// Strongly connected components of a digraph; component ids ordered by
// smallest vertex, members sorted.
inline std::vector<std::uint32_t> strong_components(const std::vector<std::vector<std::uint32_t>>& adj,
                                                    std::vector<std::vector<Element>>& members) {
    const std::size_t n = adj.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::uint32_t> stack, comp(n, 0);
    std::vector<std::vector<std::uint32_t>> raw;
    int counter = 0;
    // iterative Tarjan
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            if (next < adj[v].size()) {
                std::uint32_t u = adj[v][next++];
                if (index[u] == -1) {
                    index[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = 1;
                    call.emplace_back(u, 0);
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], index[u]);
                }
                continue;
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                std::vector<std::uint32_t> c;
                std::uint32_t u;
                do {
                    u = stack.back();
                    stack.pop_back();
                    on_stack[u] = 0;
                    c.push_back(u);
                } while (u != done);
                std::sort(c.begin(), c.end());
                raw.push_back(std::move(c));
            }
        }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    members.clear();
    for (std::uint32_t k = 0; k < raw.size(); ++k) {
        std::vector<Element> m;
        for (std::uint32_t v : raw[k]) {
            comp[v] = k;
            m.push_back(Element{v});
        }
        members.push_back(std::move(m));
    }
    return comp;
}

} // namespace detail

/// Left preorder seeds: y <=_L w when b_y occurs in b_s b_w for a simple s.
/// Left cells are the strongly connected classes; right cells come from
/// inverses; two-sided cells from both relations together.
inline CellData cell_partition(const StructureConstants& sc) {
    const GroupContext& g = sc.group();
    const std::size_t n = g.order();
    std::vector<std::vector<std::uint32_t>> left(n), right(n), both(n);
    for (Element w : g.elements())
        for (Generator s = 0; s < g.rank(); ++s) {
            BExpansion p = sc.left_generator_product(s, w);
            for (std::uint32_t y = 0; y < n; ++y)
                if (!p[y].is_zero() && y != w.id) left[w.id].push_back(y);
        }
    for (Element w : g.elements())
        for (std::uint32_t y : left[g.inverse(w).id]) right[w.id].push_back(g.inverse(Element{y}).id);
    for (std::size_t i = 0; i < n; ++i) {
        both[i] = left[i];
        both[i].insert(both[i].end(), right[i].begin(), right[i].end());
    }
    CellData cd;
    cd.left_cell_id = detail::strong_components(left, cd.left_cells);
    cd.right_cell_id = detail::strong_components(right, cd.right_cells);
    cd.two_sided_cell_id = detail::strong_components(both, cd.two_sided_cells);
    return cd;
}

inline CellData cell_partition(const KLTable& t) { return cell_partition(StructureConstants(t)); }

/// a(z) = max over x, y of deg_v h_{x,y,z}.
inline std::vector<int> a_function(const StructureConstants& sc) {
    const GroupContext& g = sc.group();
    std::vector<int> a(g.order(), INT32_MIN);
    for (Element y : g.elements()) {
        auto rows = sc.products_with(y);
        for (const auto& row : rows)
            for (std::size_t z = 0; z < row.size(); ++z)
                if (!row[z].is_zero()) a[z] = std::max(a[z], row[z].max_exponent());
    }
    for (int x : a)
        if (x < 0) throw ValidationFailure("negative a-value");
    return a;
}

inline std::vector<int> a_function(const KLTable& t) { return a_function(StructureConstants(t)); }

/// b-expansion of an element given in the T-basis, by peeling off the
/// longest T-term: b_u has T_u-coefficient v^{-l(u)}.
inline BExpansion to_b_basis(const KLTable& t, const HeckeElement& h) {
    const GroupContext& g = t.group();
    BExpansion out(g.order());
    std::vector<LaurentPolynomial> rest(g.order());
    for (const auto& [u, c] : h.terms()) rest[u.id] = c;
    for (std::uint32_t i = static_cast<std::uint32_t>(g.order()); i-- > 0;) {
        if (rest[i].is_zero()) continue;
        Element u{i};
        LaurentPolynomial coeff = rest[i].shifted(static_cast<int>(g.length(u)));
        for (std::uint32_t y = 0; y <= i; ++y)
            if (t.leq(Element{y}, u))
                rest[y].add_scaled(coeff * t.at(Element{y}, u), -1, -static_cast<int>(g.length(u)));
        out[i] = std::move(coeff);
    }
    return out;
}

/// Worst pole, as the highest v-degree of the b_z-coefficient of
/// v^{-l(x)-l(y)} T_x T_y over all x, y. Computed from T-basis products; an
/// independent route to the a-function, quadratic in |W| products.
inline std::vector<int> a_function_from_standard_products(const HeckeAlgebra& h, const KLTable& t) {
    const GroupContext& g = t.group();
    std::vector<int> a(g.order(), INT32_MIN);
    for (Element x : g.elements())
        for (Element y : g.elements()) {
            HeckeElement p = h.left_mul_basis(x, h.T(y));
            int shift = -static_cast<int>(g.length(x) + g.length(y));
            BExpansion b = to_b_basis(t, v_power(shift) * p);
            for (std::size_t z = 0; z < b.size(); ++z)
                if (!b[z].is_zero()) a[z] = std::max(a[z], b[z].max_exponent());
        }
    return a;
}

/// W_* = {w : a(w) = N}
inline std::vector<Element> w_star(const GroupContext& g, const std::vector<int>& a) {
    std::vector<Element> out;
    for (Element w : g.elements())
        if (a[w.id] == static_cast<int>(g.num_positive_roots())) out.push_back(w);
    return out;
}

/// W_! = {abc : l(abc) = l(a) + l(b) + l(c), l(b) = N}; every b lies in the
/// finite parabolic subgroup W itself.
inline std::vector<Element> w_shriek(const GroupContext& g) {
    std::set<Element> out;
    const unsigned big_n = g.num_positive_roots();
    for (Element b : g.elements()) {
        if (g.length(b) != big_n) continue;
        for (Element x : g.elements())
            for (Element z : g.elements()) {
                Element p = g.multiply(g.multiply(x, b), z);
                if (g.length(p) == g.length(x) + big_n + g.length(z)) out.insert(p);
            }
    }
    return {out.begin(), out.end()};
}

/// D = {z : z^2 = e, a(z) = l(z) - 2 deg_q P_{e,z}}. Throws ValidationFailure
/// unless every left cell holds exactly one member.
inline std::vector<Element> distinguished_involutions(const KLTable& t, const std::vector<int>& a,
                                                      const CellData& cells) {
    const GroupContext& g = t.group();
    std::vector<Element> d;
    for (Element z : g.elements()) {
        if (g.inverse(z) != z) continue;
        int delta = static_cast<int>(g.length(z)) - 2 * q_degree(t.at(g.identity(), z));
        if (a[z.id] == delta) d.push_back(z);
    }
    std::vector<int> per_cell(cells.left_cells.size(), 0);
    for (Element z : d) ++per_cell[cells.left_cell_id[z.id]];
    for (std::size_t c = 0; c < per_cell.size(); ++c)
        if (per_cell[c] != 1)
            throw ValidationFailure("left cell " + std::to_string(c) + " contains " + std::to_string(per_cell[c]) +
                                    " distinguished involutions");
    return d;
}

/// gamma_{x,y,z'}: key {x, y, z'} with z' = z^-1 for the product index z.
using GammaMap = std::map<std::array<std::uint32_t, 3>, Coeff>;

/// gamma_{x,y,z^-1} = coefficient of v^{a(z)} in h_{x,y,z}; nonzero entries only.
inline GammaMap j_structure_constants(const StructureConstants& sc, const std::vector<int>& a) {
    const GroupContext& g = sc.group();
    GammaMap gamma;
    for (Element y : g.elements()) {
        auto rows = sc.products_with(y);
        for (std::uint32_t x = 0; x < rows.size(); ++x)
            for (std::uint32_t z = 0; z < rows[x].size(); ++z) {
                Coeff c = rows[x][z].coefficient(a[z]);
                if (c != 0) gamma[{x, y.id, g.inverse(Element{z}).id}] = c;
            }
    }
    return gamma;
}

inline GammaMap j_structure_constants(const KLTable& t, const std::vector<int>& a) {
    return j_structure_constants(StructureConstants(t), a);
}

/// The ring J with basis t_w and t_x t_y = sum_z gamma_{x,y,z^-1} t_z.
class JRing {
public:
    using Vector = std::map<Element, Coeff>;

    JRing(const GroupContext& g, const GammaMap& gamma) : g_(&g), products_(g.order() * g.order()) {
        for (const auto& [key, c] : gamma) {
            Element z = g.inverse(Element{key[2]});
            products_[key[0] * g.order() + key[1]].emplace_back(z, c);
        }
    }

    static Vector basis(Element w) { return {{w, 1}}; }

    Vector multiply(const Vector& a, const Vector& b) const {
        Vector out;
        for (const auto& [x, cx] : a)
            for (const auto& [y, cy] : b)
                for (const auto& [z, c] : products_[x.id * g_->order() + y.id]) {
                    Coeff& slot = out[z];
                    slot = checked_add(slot, checked_mul(checked_mul(cx, cy), c));
                }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    /// sum over D of t_d is a two-sided unit.
    bool is_unit(const Vector& u) const {
        for (Element x : g_->elements()) {
            if (multiply(u, basis(x)) != basis(x)) return false;
            if (multiply(basis(x), u) != basis(x)) return false;
        }
        return true;
    }

    bool associative_on(Element x, Element y, Element z) const {
        return multiply(multiply(basis(x), basis(y)), basis(z)) == multiply(basis(x), multiply(basis(y), basis(z)));
    }

private:
    const GroupContext* g_;
    std::vector<std::vector<std::pair<Element, Coeff>>> products_;
};

/// On the span of a two-sided cell, left multiplication by b_s with
/// parameter v and right multiplication by b_t with an independent v'
/// (terms leaving the cell dropped) commute for all simple s, t.
inline bool bimodule_commutation_check(const StructureConstants& sc, const std::vector<Element>& cell) {
    const GroupContext& g = sc.group();
    const std::size_t k = cell.size();
    std::vector<int> pos(g.order(), -1);
    for (std::size_t i = 0; i < k; ++i) pos[cell[i].id] = static_cast<int>(i);
    using Matrix = std::vector<BiLaurentPolynomial>;  // k x k, column j = image of m_j
    auto restrict_to_cell = [&](const BExpansion& img, bool second, Matrix& m, std::size_t col) {
        for (std::uint32_t z = 0; z < img.size(); ++z) {
            if (img[z].is_zero() || pos[z] < 0) continue;
            m[static_cast<std::size_t>(pos[z]) * k + col] =
                second ? in_second_variable(img[z]) : in_first_variable(img[z]);
        }
    };
    auto mat_mul = [&](const Matrix& a, const Matrix& b) {
        Matrix c(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l) {
                if (a[i * k + l].is_zero()) continue;
                for (std::size_t j = 0; j < k; ++j)
                    if (!b[l * k + j].is_zero()) c[i * k + j] += a[i * k + l] * b[l * k + j];
            }
        return c;
    };
    std::vector<Matrix> lefts, rights;
    for (Generator s = 0; s < g.rank(); ++s) {
        Matrix l(k * k), r(k * k);
        for (std::size_t j = 0; j < k; ++j) {
            restrict_to_cell(sc.left_generator_product(s, cell[j]), false, l, j);
            restrict_to_cell(sc.right_generator_product(cell[j], s), true, r, j);
        }
        lefts.push_back(std::move(l));
        rights.push_back(std::move(r));
    }
    for (const auto& l : lefts)
        for (const auto& r : rights)
            if (mat_mul(l, r) != mat_mul(r, l)) return false;
    return true;
}

} // namespace coxhecke
