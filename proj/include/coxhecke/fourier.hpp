#pragma once

// The nonabelian Fourier transform on M(G), the set of pairs (x, sigma) with
// x a conjugacy class representative and sigma an irreducible character of
// the centralizer Z(x). Character tables are computed numerically by
// Burnside-Dixon class-sum diagonalization.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "coxhecke/errors.hpp"

namespace coxhecke {

inline constexpr std::size_t kMaxFiniteGroupOrder = 20000;

/// Images of 0..n-1.
using Permutation = std::vector<std::uint32_t>;

/// A finite group given by its full multiplication table.
class FiniteGroup {
public:
    /// table[a * order + b] = index of a*b. Validates identity, inverses and
    /// associativity (exhaustive for small orders, sampled otherwise).
    static FiniteGroup from_table(std::size_t order, std::vector<std::uint16_t> table) {
        if (order == 0 || order > kMaxFiniteGroupOrder) throw TooLarge("group order out of range");
        if (table.size() != order * order) throw InvalidArgument("multiplication table has the wrong size");
        FiniteGroup g;
        g.order_ = order;
        g.table_ = std::move(table);
        g.finish();
        return g;
    }

    /// Closure of permutations under composition; TooLarge past 20000 elements.
    static FiniteGroup from_generators(const std::vector<Permutation>& gens, std::size_t degree) {
        for (const auto& p : gens) {
            if (p.size() != degree) throw InvalidArgument("permutations must act on the same points");
            std::vector<std::uint8_t> hit(degree, 0);
            for (auto x : p) {
                if (x >= degree || hit[x]) throw InvalidArgument("not a permutation");
                hit[x] = 1;
            }
        }
        Permutation id(degree);
        for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
        std::vector<Permutation> elems{id};
        std::map<Permutation, std::uint32_t> index{{id, 0}};
        // a*b means apply b, then a
        auto compose = [](const Permutation& a, const Permutation& b) {
            Permutation c(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
            return c;
        };
        for (std::size_t head = 0; head < elems.size(); ++head)
            for (const auto& s : gens) {
                Permutation p = compose(elems[head], s);
                if (index.emplace(p, static_cast<std::uint32_t>(elems.size())).second) {
                    elems.push_back(std::move(p));
                    if (elems.size() > kMaxFiniteGroupOrder)
                        throw TooLarge("permutation group closure exceeded " + std::to_string(kMaxFiniteGroupOrder) +
                                       " elements");
                }
            }
        const std::size_t n = elems.size();
        std::vector<std::uint16_t> table(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                table[a * n + b] = static_cast<std::uint16_t>(index.at(compose(elems[a], elems[b])));
        FiniteGroup g = from_table(n, std::move(table));
        g.perms_ = std::move(elems);
        return g;
    }

    std::size_t order() const { return order_; }
    std::uint32_t identity() const { return identity_; }
    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }
    std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
    /// g x g^-1
    std::uint32_t conjugate(std::uint32_t g, std::uint32_t x) const { return multiply(multiply(g, x), inverse(g)); }
    bool commute(std::uint32_t a, std::uint32_t b) const { return multiply(a, b) == multiply(b, a); }
    bool is_abelian() const {
        for (std::uint32_t a = 0; a < order_; ++a)
            for (std::uint32_t b = a + 1; b < order_; ++b)
                if (!commute(a, b)) return false;
        return true;
    }
    /// Present only for groups built from permutations.
    const std::vector<Permutation>& permutations() const { return perms_; }

private:
    void finish() {
        const std::size_t n = order_;
        for (std::size_t k = 0; k < table_.size(); ++k)
            if (table_[k] >= n) throw InvalidArgument("multiplication table entry out of range");
        bool found = false;
        for (std::uint32_t e = 0; e < n && !found; ++e) {
            bool ok = true;
            for (std::uint32_t a = 0; a < n && ok; ++a) ok = multiply(e, a) == a && multiply(a, e) == a;
            if (ok) {
                identity_ = e;
                found = true;
            }
        }
        if (!found) throw InvalidArgument("multiplication table has no identity");
        inverse_.assign(n, 0);
        for (std::uint32_t a = 0; a < n; ++a) {
            bool ok = false;
            for (std::uint32_t b = 0; b < n && !ok; ++b)
                if (multiply(a, b) == identity_ && multiply(b, a) == identity_) {
                    inverse_[a] = b;
                    ok = true;
                }
            if (!ok) throw InvalidArgument("element without inverse in multiplication table");
        }
        auto assoc = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
            return multiply(multiply(a, b), c) == multiply(a, multiply(b, c));
        };
        if (n * n * n <= 2000000) {
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b)
                    for (std::uint32_t c = 0; c < n; ++c)
                        if (!assoc(a, b, c)) throw InvalidArgument("multiplication table is not associative");
        } else {
            std::mt19937 rng(12345);
            std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
            for (int i = 0; i < 2000; ++i)
                if (!assoc(pick(rng), pick(rng), pick(rng)))
                    throw InvalidArgument("multiplication table is not associative");
        }
    }

    std::size_t order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<std::uint32_t> inverse_;
    std::uint32_t identity_ = 0;
    std::vector<Permutation> perms_;
};

namespace detail {

inline std::size_t parse_count(const std::string& s, const std::string& whole) {
    if (s.empty() || s.size() > 6) throw InvalidArgument("bad group spec '" + whole + "'");
    std::size_t n = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw InvalidArgument("bad group spec '" + whole + "'");
        n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    return n;
}

inline Permutation cycle_perm(std::size_t degree, std::size_t first, std::size_t len) {
    Permutation p(degree);
    for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
    if (len < 2) return p;
    for (std::size_t i = 0; i < len; ++i)
        p[first + i] = static_cast<std::uint32_t>(first + (i + 1) % len);
    return p;
}

} // namespace detail

/// Cycle notation, generators separated by top-level commas:
/// "(1 2),(1 2 3 4)" or "(1 2)(3 4),(1 3)". "()" is the identity.
inline FiniteGroup group_from_cycle_text(const std::string& text) {
    std::vector<std::vector<std::vector<std::size_t>>> gens;  // generator -> cycles -> points
    std::vector<std::vector<std::size_t>> cur_gen;
    std::vector<std::size_t> cur_cycle;
    std::string num;
    bool in_cycle = false;
    std::size_t degree = 1;
    auto bad = [&] { return InvalidArgument("bad permutation list '" + text + "'"); };
    auto flush_num = [&] {
        if (num.empty()) return;
        std::size_t v = detail::parse_count(num, text);
        if (v == 0) throw bad();
        cur_cycle.push_back(v - 1);
        degree = std::max(degree, v);
        num.clear();
    };
    for (char c : text) {
        if (c == '(') {
            if (in_cycle) throw bad();
            in_cycle = true;
        } else if (c == ')') {
            if (!in_cycle) throw bad();
            flush_num();
            cur_gen.push_back(cur_cycle);
            cur_cycle.clear();
            in_cycle = false;
        } else if (c >= '0' && c <= '9') {
            if (!in_cycle) throw bad();
            num.push_back(c);
        } else if (c == ' ' || c == ',') {
            if (in_cycle) {
                flush_num();
            } else if (c == ',') {
                if (cur_gen.empty()) throw bad();
                gens.push_back(std::move(cur_gen));
                cur_gen.clear();
            }
        } else {
            throw bad();
        }
    }
    if (in_cycle) throw bad();
    if (!cur_gen.empty()) gens.push_back(std::move(cur_gen));
    std::vector<Permutation> perms;
    for (const auto& g : gens) {
        Permutation p(degree);
        for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
        std::vector<std::uint8_t> moved(degree, 0);
        for (const auto& cyc : g) {
            // cycles within one generator must be disjoint
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                if (moved[cyc[i]]) throw bad();
                moved[cyc[i]] = 1;
                p[cyc[i]] = static_cast<std::uint32_t>(cyc[(i + 1) % cyc.size()]);
            }
        }
        perms.push_back(std::move(p));
    }
    return FiniteGroup::from_generators(perms, degree);
}

/// trivial, Z<n>, Z<m>xZ<n>, S<n>.
inline FiniteGroup group_preset(const std::string& name) {
    if (name == "trivial") return FiniteGroup::from_generators({}, 1);
    if (name.size() >= 2 && name[0] == 'S') {
        std::size_t n = detail::parse_count(name.substr(1), name);
        if (n == 0) throw InvalidArgument("bad group spec '" + name + "'");
        if (n == 1) return FiniteGroup::from_generators({}, 1);
        return FiniteGroup::from_generators({detail::cycle_perm(n, 0, 2), detail::cycle_perm(n, 0, n)}, n);
    }
    if (name.size() >= 2 && name[0] == 'Z') {
        auto x = name.find('x');
        if (x == std::string::npos) {
            std::size_t n = detail::parse_count(name.substr(1), name);
            if (n == 0) throw InvalidArgument("bad group spec '" + name + "'");
            return FiniteGroup::from_generators({detail::cycle_perm(n, 0, n)}, n);
        }
        if (x + 1 >= name.size() || name[x + 1] != 'Z') throw InvalidArgument("bad group spec '" + name + "'");
        std::size_t m = detail::parse_count(name.substr(1, x - 1), name);
        std::size_t n = detail::parse_count(name.substr(x + 2), name);
        if (m == 0 || n == 0) throw InvalidArgument("bad group spec '" + name + "'");
        return FiniteGroup::from_generators({detail::cycle_perm(m + n, 0, m), detail::cycle_perm(m + n, m, n)}, m + n);
    }
    throw InvalidArgument("unknown group preset '" + name + "'");
}

/// "preset:NAME" or "perm:CYCLES".
inline FiniteGroup parse_group_spec(const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) return group_preset(spec.substr(7));
    if (spec.rfind("perm:", 0) == 0) return group_from_cycle_text(spec.substr(5));
    throw InvalidArgument("group spec must start with 'preset:' or 'perm:'");
}

using Complex = std::complex<double>;

struct ConjugacyClasses {
    /// Sorted members; classes ordered by size, then smallest member.
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<std::uint32_t> class_of;

    std::size_t count() const { return members.size(); }
    std::uint32_t representative(std::size_t c) const { return members[c].front(); }
};

inline ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<std::vector<std::uint32_t>> raw;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::vector<std::uint32_t> cls;
        for (std::uint32_t h = 0; h < n; ++h) {
            std::uint32_t y = g.conjugate(h, x);
            if (!seen[y]) {
                seen[y] = 1;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        raw.push_back(std::move(cls));
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    ConjugacyClasses cc;
    cc.class_of.assign(n, 0);
    for (std::uint32_t c = 0; c < raw.size(); ++c)
        for (auto x : raw[c]) cc.class_of[x] = c;
    cc.members = std::move(raw);
    return cc;
}

struct CharacterTable {
    ConjugacyClasses classes;
    /// values[i][c] = chi_i on class c. Rows ordered by degree, then by
    /// values in descending lexicographic order, so the trivial character is first.
    std::vector<std::vector<Complex>> values;

    std::size_t size() const { return values.size(); }
    Complex value(std::size_t irrep, std::uint32_t element) const { return values[irrep][classes.class_of[element]]; }
};

inline constexpr double kCharacterTolerance = 1e-8;

/// Burnside-Dixon: the class-sum structure constants c_{jkl} give matrices
/// M_j with M_j omega = omega_j omega for each central character omega; a
/// random combination of the M_j is diagonalized and each eigenvector,
/// scaled to omega_e = 1, yields chi(g_j) = omega_j chi(1) / |C_j| with
/// chi(1)^2 = |G| / sum_j |omega_j|^2 / |C_j|. Throws NumericalDegeneracy if
/// eigenvalues stay clustered after several random combinations.
inline CharacterTable character_table(const FiniteGroup& g) {
    CharacterTable ct;
    ct.classes = conjugacy_classes(g);
    const auto& cc = ct.classes;
    const std::size_t r = cc.count();
    const double order = static_cast<double>(g.order());
    const std::size_t id_class = cc.class_of[g.identity()];

    // c[j][k][l] = #{a in C_j : a^-1 g_l in C_k}
    std::vector<Eigen::MatrixXd> m(r, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)));
    for (std::size_t l = 0; l < r; ++l) {
        std::uint32_t gl = cc.representative(l);
        for (std::size_t j = 0; j < r; ++j)
            for (std::uint32_t a : cc.members[j]) {
                std::size_t k = cc.class_of[g.multiply(g.inverse(a), gl)];
                m[j](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) += 1.0;
            }
    }

    for (unsigned attempt = 0; attempt < 16; ++attempt) {
        std::mt19937 rng(20240611u + attempt);
        std::uniform_real_distribution<double> coef(0.5, 1.5);
        Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t j = 0; j < r; ++j) combo += coef(rng) * m[j];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(combo.cast<Complex>());
        if (solver.info() != Eigen::Success) continue;
        const auto& ev = solver.eigenvalues();
        double scale = 1.0 + ev.cwiseAbs().maxCoeff();
        bool separated = true;
        for (Eigen::Index i = 0; i < ev.size() && separated; ++i)
            for (Eigen::Index k = i + 1; k < ev.size() && separated; ++k)
                if (std::abs(ev[i] - ev[k]) < 1e-6 * scale) separated = false;
        if (!separated) continue;

        std::vector<std::vector<Complex>> rows;
        bool ok = true;
        for (Eigen::Index col = 0; col < ev.size() && ok; ++col) {
            Eigen::VectorXcd omega = solver.eigenvectors().col(col);
            Complex pivot = omega[static_cast<Eigen::Index>(id_class)];
            if (std::abs(pivot) < 1e-12) {
                ok = false;
                break;
            }
            omega /= pivot;
            double norm = 0.0;
            for (std::size_t j = 0; j < r; ++j)
                norm += std::norm(omega[static_cast<Eigen::Index>(j)]) / static_cast<double>(cc.members[j].size());
            double degree = std::sqrt(order / norm);
            double rounded = std::round(degree);
            if (std::abs(degree - rounded) > 1e-6 || rounded < 1) {
                ok = false;
                break;
            }
            std::vector<Complex> chi(r);
            for (std::size_t j = 0; j < r; ++j)
                chi[j] = omega[static_cast<Eigen::Index>(j)] * rounded / static_cast<double>(cc.members[j].size());
            rows.push_back(std::move(chi));
        }
        if (!ok) continue;

        // row orthogonality
        for (std::size_t a = 0; a < r && ok; ++a)
            for (std::size_t b = 0; b < r && ok; ++b) {
                Complex s = 0;
                for (std::size_t j = 0; j < r; ++j)
                    s += static_cast<double>(cc.members[j].size()) * rows[a][j] * std::conj(rows[b][j]);
                if (std::abs(s - (a == b ? order : 0.0)) > kCharacterTolerance) ok = false;
            }
        if (!ok) continue;

        auto quant = [](double x) { return std::llround(x * 1e9); };
        std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
            auto dx = quant(x[id_class].real()), dy = quant(y[id_class].real());
            if (dx != dy) return dx < dy;
            for (std::size_t j = 0; j < r; ++j) {
                if (quant(x[j].real()) != quant(y[j].real())) return quant(x[j].real()) > quant(y[j].real());
                if (quant(x[j].imag()) != quant(y[j].imag())) return quant(x[j].imag()) > quant(y[j].imag());
            }
            return false;
        });
        ct.values = std::move(rows);
        return ct;
    }
    throw NumericalDegeneracy("could not separate the class-sum eigenspaces");
}

struct MPair {
    std::size_t class_index = 0;
    std::size_t irrep_index = 0;

    friend bool operator==(const MPair&, const MPair&) = default;
};

struct Centralizer {
    /// Parent indices of the members, ascending.
    std::vector<std::uint32_t> elements;
    /// Parent index -> index in `elements`, or -1.
    std::vector<int> local;
    FiniteGroup group;
    CharacterTable table;

    /// sigma(h) for a parent element h in the centralizer.
    Complex character(std::size_t irrep, std::uint32_t parent_element) const {
        return table.value(irrep, static_cast<std::uint32_t>(local[parent_element]));
    }
};

inline Centralizer centralizer(const FiniteGroup& g, std::uint32_t x) {
    Centralizer z;
    z.local.assign(g.order(), -1);
    for (std::uint32_t h = 0; h < g.order(); ++h)
        if (g.commute(h, x)) {
            z.local[h] = static_cast<int>(z.elements.size());
            z.elements.push_back(h);
        }
    const std::size_t k = z.elements.size();
    std::vector<std::uint16_t> table(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            table[a * k + b] = static_cast<std::uint16_t>(z.local[g.multiply(z.elements[a], z.elements[b])]);
    z.group = FiniteGroup::from_table(k, std::move(table));
    z.table = character_table(z.group);
    return z;
}

/// M(G) with everything needed to evaluate the pairing.
struct MSet {
    ConjugacyClasses classes;
    std::vector<Centralizer> centralizers;  // one per class, at the representative
    std::vector<MPair> pairs;

    std::uint32_t representative(const MPair& p) const { return classes.representative(p.class_index); }
    std::string label(const MPair& p) const {
        return std::to_string(representative(p)) + "|" + std::to_string(p.irrep_index);
    }
};

inline MSet m_set(const FiniteGroup& g) {
    MSet ms;
    ms.classes = conjugacy_classes(g);
    for (std::size_t c = 0; c < ms.classes.count(); ++c) {
        ms.centralizers.push_back(centralizer(g, ms.classes.representative(c)));
        for (std::size_t i = 0; i < ms.centralizers.back().table.size(); ++i) ms.pairs.push_back({c, i});
    }
    return ms;
}

/// {(x,sigma),(y,tau)} = 1/(|Z(x)||Z(y)|) sum over g with x and g y g^-1
/// commuting of sigma(g y g^-1) conj(tau(g^-1 x g)).
inline Complex fourier_entry(const FiniteGroup& g, const MSet& ms, const MPair& a, const MPair& b) {
    const std::uint32_t x = ms.representative(a);
    const std::uint32_t y = ms.representative(b);
    const Centralizer& zx = ms.centralizers[a.class_index];
    const Centralizer& zy = ms.centralizers[b.class_index];
    Complex sum = 0;
    for (std::uint32_t h = 0; h < g.order(); ++h) {
        std::uint32_t hy = g.conjugate(h, y);
        if (!g.commute(x, hy)) continue;
        std::uint32_t xh = g.conjugate(g.inverse(h), x);
        sum += zx.character(a.irrep_index, hy) * std::conj(zy.character(b.irrep_index, xh));
    }
    return sum / static_cast<double>(zx.elements.size() * zy.elements.size());
}

struct FourierMatrix {
    std::vector<MPair> pairs;
    Eigen::MatrixXcd entries;
};

inline constexpr double kFourierTolerance = 1e-8;

struct FourierResiduals {
    double involution = 0;  // max |(M M - I)_{ij}|
    double unitarity = 0;   // max |(M M^H - I)_{ij}|
};

inline FourierResiduals fourier_residuals(const Eigen::MatrixXcd& m) {
    const auto id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return {(m * m - id).cwiseAbs().maxCoeff(), (m * m.adjoint() - id).cwiseAbs().maxCoeff()};
}

/// The matrix over the given ordering of M(G). Throws PropertyViolation
/// unless M M = I and M M^H = I entrywise to 1e-8.
inline FourierMatrix fourier_matrix(const FiniteGroup& g, const MSet& ms, const std::vector<MPair>& order) {
    FourierMatrix fm;
    fm.pairs = order;
    const auto k = static_cast<Eigen::Index>(order.size());
    fm.entries.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            fm.entries(i, j) = fourier_entry(g, ms, order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    auto res = fourier_residuals(fm.entries);
    if (res.involution > kFourierTolerance) throw PropertyViolation("Fourier matrix is not an involution");
    if (res.unitarity > kFourierTolerance) throw PropertyViolation("Fourier matrix is not unitary");
    return fm;
}

inline FourierMatrix fourier_matrix(const FiniteGroup& g, const MSet& ms) { return fourier_matrix(g, ms, ms.pairs); }

inline FourierMatrix fourier_matrix(const FiniteGroup& g) { return fourier_matrix(g, m_set(g)); }

/// For abelian G every entry must equal sigma(y) conj(tau(x)) / |G|.
inline bool abelian_reduction_check(const FiniteGroup& g) {
    if (!g.is_abelian()) throw InvalidArgument("abelian_reduction_check needs an abelian group");
    MSet ms = m_set(g);
    FourierMatrix fm = fourier_matrix(g, ms);
    const double n = static_cast<double>(g.order());
    for (std::size_t i = 0; i < ms.pairs.size(); ++i)
        for (std::size_t j = 0; j < ms.pairs.size(); ++j) {
            const MPair& a = ms.pairs[i];
            const MPair& b = ms.pairs[j];
            Complex expected = ms.centralizers[a.class_index].character(a.irrep_index, ms.representative(b)) *
                               std::conj(ms.centralizers[b.class_index].character(b.irrep_index, ms.representative(a))) /
                               n;
            if (std::abs(fm.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected) > 1e-10)
                return false;
        }
    return true;
}

} // namespace coxhecke
