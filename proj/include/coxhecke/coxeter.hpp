#pragma once

// Finite Coxeter groups, fully enumerated.
//
// Elements are found by breadth-first closure of the geometric reflection
// representation, with matrix entries in Z[zeta_2L] where L is the lcm of
// the Coxeter matrix entries; 2cos(pi/m) = zeta^(L/m) + zeta^(-L/m). BFS
// depth is the length, descents follow from lengths, and each element is
// named by its ShortLex-minimal reduced word.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "coxhecke/cyclotomic.hpp"
#include "coxhecke/errors.hpp"
#include "coxhecke/laurent.hpp"

namespace coxhecke {

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

/// Index of a simple reflection, 0-based. Text forms are 1-based.
using Generator = std::size_t;
using Word = std::vector<Generator>;

struct CoxeterMatrix {
    std::size_t rank = 0;
    std::vector<std::vector<int>> m;

    /// Throws InvalidMatrix unless m(i,i) = 1 and m(i,j) = m(j,i) >= 2.
    void validate() const {
        if (rank == 0) throw InvalidMatrix("rank must be positive");
        if (rank > 32) throw InvalidMatrix("rank above 32 is not supported");
        if (m.size() != rank) throw InvalidMatrix("matrix must have rank rows");
        for (std::size_t i = 0; i < rank; ++i) {
            if (m[i].size() != rank) throw InvalidMatrix("matrix must be square");
            if (m[i][i] != 1) throw InvalidMatrix("diagonal entries must be 1");
            for (std::size_t j = 0; j < rank; ++j) {
                if (i == j) continue;
                if (m[i][j] != m[j][i]) throw InvalidMatrix("matrix must be symmetric");
                if (m[i][j] < 2) throw InvalidMatrix("off-diagonal entries must be >= 2 (infinite entries are not allowed)");
            }
        }
    }

    friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;
};

namespace detail {

inline CoxeterMatrix commuting_matrix(std::size_t rank) {
    CoxeterMatrix c{rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank, 2))};
    for (std::size_t i = 0; i < rank; ++i) c.m[i][i] = 1;
    return c;
}

inline void set_edge(CoxeterMatrix& c, std::size_t i, std::size_t j, int value) {
    c.m[i][j] = value;
    c.m[j][i] = value;
}

inline std::optional<std::size_t> parse_rank_suffix(const std::string& s, std::size_t from) {
    if (from >= s.size()) return std::nullopt;
    std::size_t n = 0;
    for (std::size_t i = from; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        n = n * 10 + static_cast<std::size_t>(s[i] - '0');
        if (n > 1000000) return std::nullopt;
    }
    return n;
}

} // namespace detail

/// Named types: A<n>, B<n>, D<n>, E6..E8, F4, H3, H4, I2(<m>).
/// B<n> has m(1,2) = 4; D<n> attaches nodes n-1 and n to node n-2.
inline CoxeterMatrix coxeter_preset(const std::string& name) {
    using detail::set_edge;
    auto bad = [&] { return InvalidArgument("unknown Coxeter preset '" + name + "'"); };
    if (name.empty()) throw bad();
    if (name.rfind("I2(", 0) == 0 && name.back() == ')') {
        auto m = detail::parse_rank_suffix(name.substr(0, name.size() - 1), 3);
        if (!m || *m < 2) throw bad();
        auto c = detail::commuting_matrix(2);
        set_edge(c, 0, 1, static_cast<int>(*m));
        return c;
    }
    auto n = detail::parse_rank_suffix(name, 1);
    if (!n || *n == 0) throw bad();
    auto chain = [&](std::size_t rank) {
        auto c = detail::commuting_matrix(rank);
        for (std::size_t i = 0; i + 1 < rank; ++i) set_edge(c, i, i + 1, 3);
        return c;
    };
    switch (name[0]) {
    case 'A':
        return chain(*n);
    case 'B': {
        if (*n < 2) throw bad();
        auto c = chain(*n);
        set_edge(c, 0, 1, 4);
        return c;
    }
    case 'D': {
        if (*n < 4) throw bad();
        auto c = detail::commuting_matrix(*n);
        for (std::size_t i = 0; i + 2 < *n; ++i) set_edge(c, i, i + 1, 3);
        set_edge(c, *n - 3, *n - 1, 3);
        return c;
    }
    case 'E': {
        if (*n < 6 || *n > 8) throw bad();
        auto c = detail::commuting_matrix(*n);
        set_edge(c, 0, 2, 3);
        set_edge(c, 1, 3, 3);
        for (std::size_t i = 2; i + 1 < *n; ++i) set_edge(c, i, i + 1, 3);
        return c;
    }
    case 'F': {
        if (*n != 4) throw bad();
        auto c = chain(4);
        set_edge(c, 1, 2, 4);
        return c;
    }
    case 'H': {
        if (*n != 3 && *n != 4) throw bad();
        auto c = chain(*n);
        set_edge(c, 0, 1, 5);
        return c;
    }
    default:
        throw bad();
    }
}

/// {"rank": n, "m": [[...], ...]}
template <typename Json>
CoxeterMatrix coxeter_matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("m") || !j["rank"].is_number_integer() ||
        !j["m"].is_array())
        throw InvalidMatrix("matrix JSON must be {\"rank\": n, \"m\": [[...]]}");
    long rank = j["rank"].template get<long>();
    if (rank <= 0) throw InvalidMatrix("rank must be positive");
    CoxeterMatrix c;
    c.rank = static_cast<std::size_t>(rank);
    for (const auto& row : j["m"]) {
        if (!row.is_array()) throw InvalidMatrix("matrix rows must be arrays");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw InvalidMatrix("matrix entries must be integers (no infinity)");
            r.push_back(x.template get<int>());
        }
        c.m.push_back(std::move(r));
    }
    c.validate();
    return c;
}

/// An element of a specific GroupContext, identified by its position in the
/// length-major, ShortLex-minor enumeration.
struct Element {
    std::uint32_t id = 0;

    friend auto operator<=>(const Element&, const Element&) = default;
    friend bool operator==(const Element&, const Element&) = default;
};

/// A fully enumerated finite Coxeter group. Immutable once built.
class GroupContext {
public:
    static GroupContext build(const CoxeterMatrix& matrix, std::size_t cap = kDefaultEnumerationCap);

    const CoxeterMatrix& matrix() const { return matrix_; }
    std::size_t rank() const { return matrix_.rank; }
    std::size_t order() const { return length_.size(); }

    Element identity() const { return Element{0}; }
    Element longest() const { return w0_; }
    /// Number of positive roots, l(w0).
    unsigned num_positive_roots() const { return length_[w0_.id]; }
    Element generator(Generator s) const { return rmul(identity(), s); }

    unsigned length(Element w) const { return length_[w.id]; }
    const Word& word(Element w) const { return words_[w.id]; }
    std::uint64_t left_descents(Element w) const { return left_desc_[w.id]; }
    std::uint64_t right_descents(Element w) const { return right_desc_[w.id]; }
    bool is_left_descent(Generator s, Element w) const { return (left_desc_[w.id] >> s) & 1u; }
    bool is_right_descent(Element w, Generator s) const { return (right_desc_[w.id] >> s) & 1u; }
    /// Smallest left descent; w must not be the identity.
    Generator first_left_descent(Element w) const {
        return static_cast<Generator>(__builtin_ctzll(left_desc_[w.id]));
    }

    /// s * w
    Element lmul(Generator s, Element w) const { return lmul_[w.id * rank() + s]; }
    /// w * s
    Element rmul(Element w, Generator s) const { return rmul_[w.id * rank() + s]; }
    Element inverse(Element w) const { return inverse_[w.id]; }

    Element multiply(Element x, Element y) const {
        for (Generator s : word(y)) x = rmul(x, s);
        return x;
    }

    /// Product of a word of (0-based) generators; throws InvalidArgument on bad letters.
    Element element_from_word(std::span<const Generator> w) const {
        Element x = identity();
        for (Generator s : w) {
            if (s >= rank()) throw InvalidArgument("generator index out of range");
            x = rmul(x, s);
        }
        return x;
    }

    /// Bruhat order by the descent recursion: with s a left descent of w,
    /// y <= w iff min(y, sy) <= sw.
    bool bruhat_leq(Element y, Element w) const {
        while (true) {
            if (y == identity() || y == w) return true;
            if (length(y) >= length(w)) return false;
            Generator s = first_left_descent(w);
            if (is_left_descent(s, y)) y = lmul(s, y);
            w = lmul(s, w);
        }
    }

    std::vector<Element> elements() const {
        std::vector<Element> all(order());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = Element{i};
        return all;
    }

private:
    CoxeterMatrix matrix_;
    std::vector<Word> words_;
    std::vector<unsigned> length_;
    std::vector<std::uint64_t> left_desc_;
    std::vector<std::uint64_t> right_desc_;
    std::vector<Element> lmul_;
    std::vector<Element> rmul_;
    std::vector<Element> inverse_;
    Element w0_;
};

namespace detail {

// Flat storage of rank x rank matrices over Z[zeta], used only while
// enumerating.
class MatrixPool {
public:
    MatrixPool(std::size_t rank, std::size_t degree) : rank_(rank), degree_(degree), stride_(rank * rank * degree) {}

    std::size_t stride() const { return stride_; }
    std::size_t size() const { return data_.size() / stride_; }
    Coeff* at(std::size_t i) { return data_.data() + i * stride_; }
    const Coeff* at(std::size_t i) const { return data_.data() + i * stride_; }
    Coeff* entry(std::size_t i, std::size_t r, std::size_t c) { return at(i) + (r * rank_ + c) * degree_; }

    std::size_t push_copy(std::size_t i) {
        data_.resize(data_.size() + stride_);
        std::copy(at(i), at(i) + stride_, at(size() - 1));
        return size() - 1;
    }

    std::size_t push_identity(const CyclotomicRing& ring) {
        data_.resize(data_.size() + stride_, 0);
        std::size_t k = size() - 1;
        auto one = ring.integer(1);
        for (std::size_t r = 0; r < rank_; ++r) std::copy(one.begin(), one.end(), entry(k, r, r));
        return k;
    }

    void pop() { data_.resize(data_.size() - stride_); }
    void release() { std::vector<Coeff>().swap(data_); }

private:
    std::size_t rank_;
    std::size_t degree_;
    std::size_t stride_;
    std::vector<Coeff> data_;
};

struct PoolHash {
    const MatrixPool* pool;
    std::size_t operator()(std::uint32_t i) const {
        const Coeff* p = pool->at(i);
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t k = 0; k < pool->stride(); ++k) {
            h ^= static_cast<std::uint64_t>(p[k]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct PoolEqual {
    const MatrixPool* pool;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
        return std::equal(pool->at(a), pool->at(a) + pool->stride(), pool->at(b));
    }
};

} // namespace detail

inline GroupContext GroupContext::build(const CoxeterMatrix& matrix, std::size_t cap) {
    matrix.validate();
    const std::size_t n = matrix.rank;

    unsigned lcm = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (matrix.m[i][j] >= 3) {
                lcm = std::lcm(lcm, static_cast<unsigned>(matrix.m[i][j]));
                if (lcm > 100000) throw CapExceeded("Coxeter matrix entries too large");
            }
    CyclotomicRing ring(2 * lcm);
    const std::size_t d = ring.degree();

    // c[i][j] = 2cos(pi / m(i,j)); s_i(alpha_j) = alpha_j + c[i][j] alpha_i.
    std::vector<std::vector<CyclotomicRing::Value>> c(n, std::vector<CyclotomicRing::Value>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int mij = matrix.m[i][j];
            if (mij == 1)
                c[i][j] = ring.integer(-2);
            else if (mij == 2)
                c[i][j] = ring.zero();
            else {
                long k = static_cast<long>(lcm / static_cast<unsigned>(mij));
                c[i][j] = ring.add(ring.zeta_power(k), ring.zeta_power(-k));
            }
        }

    detail::MatrixPool pool(n, d);
    detail::PoolHash hash{&pool};
    detail::PoolEqual eq{&pool};
    std::unordered_set<std::uint32_t, detail::PoolHash, detail::PoolEqual> seen(1024, hash, eq);

    std::vector<unsigned> dist;
    std::vector<Element> rmul_bfs;

    pool.push_identity(ring);
    seen.insert(0);
    dist.push_back(0);

    // M * s_i: column j += c[i][j] * column i (column i last, it is read first).
    auto right_reflect = [&](std::size_t k, Generator s) {
        std::vector<Coeff> col(n * d);
        for (std::size_t r = 0; r < n; ++r) std::copy(pool.entry(k, r, s), pool.entry(k, r, s) + d, col.begin() + static_cast<long>(r * d));
        for (std::size_t j = 0; j < n; ++j) {
            if (std::all_of(c[s][j].begin(), c[s][j].end(), [](Coeff x) { return x == 0; })) continue;
            for (std::size_t r = 0; r < n; ++r) ring.multiply_add(pool.entry(k, r, j), c[s][j], col.data() + r * d);
        }
    };
    // s_i * M: row i += sum_j c[i][j] * row j.
    auto left_reflect = [&](std::size_t k, Generator s) {
        std::vector<Coeff> rows(pool.stride());
        std::copy(pool.at(k), pool.at(k) + pool.stride(), rows.begin());
        for (std::size_t j = 0; j < n; ++j) {
            if (std::all_of(c[s][j].begin(), c[s][j].end(), [](Coeff x) { return x == 0; })) continue;
            for (std::size_t col = 0; col < n; ++col)
                ring.multiply_add(pool.entry(k, s, col), c[s][j], rows.data() + (j * n + col) * d);
        }
    };

    for (std::size_t head = 0; head < pool.size(); ++head) {
        for (Generator s = 0; s < n; ++s) {
            std::size_t k = pool.push_copy(head);
            right_reflect(k, s);
            auto [it, inserted] = seen.insert(static_cast<std::uint32_t>(k));
            if (inserted) {
                if (pool.size() > cap)
                    throw CapExceeded("group enumeration exceeded cap of " + std::to_string(cap) + " elements");
                dist.push_back(dist[head] + 1);
            } else {
                pool.pop();
            }
            rmul_bfs.push_back(Element{*it});
        }
    }
    const std::size_t order = pool.size();

    std::vector<Element> lmul_bfs(order * n);
    for (std::size_t w = 0; w < order; ++w)
        for (Generator s = 0; s < n; ++s) {
            std::size_t k = pool.push_copy(w);
            left_reflect(k, s);
            auto it = seen.find(static_cast<std::uint32_t>(k));
            if (it == seen.end()) throw ValidationFailure("left product escaped the enumerated group");
            lmul_bfs[w * n + s] = Element{*it};
            pool.pop();
        }
    seen.clear();
    pool.release();

    // BFS order is length-nondecreasing, so shorter words are ready first.
    std::vector<Word> words_bfs(order);
    for (std::size_t w = 1; w < order; ++w) {
        for (Generator s = 0; s < n; ++s) {
            std::uint32_t u = lmul_bfs[w * n + s].id;
            if (dist[u] < dist[w]) {
                words_bfs[w].reserve(dist[w]);
                words_bfs[w].push_back(s);
                words_bfs[w].insert(words_bfs[w].end(), words_bfs[u].begin(), words_bfs[u].end());
                break;
            }
        }
    }

    std::vector<std::uint32_t> perm(order);
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return words_bfs[a] < words_bfs[b];
    });
    std::vector<std::uint32_t> rank_of(order);
    for (std::uint32_t i = 0; i < order; ++i) rank_of[perm[i]] = i;

    GroupContext g;
    g.matrix_ = matrix;
    g.words_.resize(order);
    g.length_.resize(order);
    g.left_desc_.assign(order, 0);
    g.right_desc_.assign(order, 0);
    g.lmul_.resize(order * n);
    g.rmul_.resize(order * n);
    for (std::uint32_t i = 0; i < order; ++i) {
        std::uint32_t old = perm[i];
        g.words_[i] = std::move(words_bfs[old]);
        g.length_[i] = dist[old];
        for (Generator s = 0; s < n; ++s) {
            g.lmul_[i * n + s] = Element{rank_of[lmul_bfs[old * n + s].id]};
            g.rmul_[i * n + s] = Element{rank_of[rmul_bfs[old * n + s].id]};
        }
    }
    for (std::uint32_t i = 0; i < order; ++i)
        for (Generator s = 0; s < n; ++s) {
            if (g.length_[g.lmul_[i * n + s].id] < g.length_[i]) g.left_desc_[i] |= std::uint64_t{1} << s;
            if (g.length_[g.rmul_[i * n + s].id] < g.length_[i]) g.right_desc_[i] |= std::uint64_t{1} << s;
        }

    g.inverse_.resize(order);
    g.inverse_[0] = Element{0};
    for (std::uint32_t i = 1; i < order; ++i) {
        Generator s = g.words_[i].front();
        Element rest = g.lmul_[i * n + s];
        g.inverse_[i] = g.rmul_[g.inverse_[rest.id].id * n + s];
    }

    g.w0_ = Element{static_cast<std::uint32_t>(order - 1)};
    if (order > 1 && g.length_[order - 2] == g.length_[order - 1])
        throw ValidationFailure("finite Coxeter group with two elements of maximal length");
    return g;
}

inline GroupContext build_group(const CoxeterMatrix& m, std::size_t cap = kDefaultEnumerationCap) {
    return GroupContext::build(m, cap);
}

inline Element group_multiply(const GroupContext& g, Element x, Element y) { return g.multiply(x, y); }

inline bool bruhat_leq(const GroupContext& g, Element y, Element w) { return g.bruhat_leq(y, w); }

/// All w with w^2 = e, in enumeration order.
inline std::vector<Element> involutions(const GroupContext& g) {
    std::vector<Element> out;
    for (Element w : g.elements())
        if (g.inverse(w) == w) out.push_back(w);
    return out;
}

/// sum_w q^l(w), with q = v^2.
inline LaurentPolynomial poincare_polynomial(const GroupContext& g) {
    std::vector<LaurentPolynomial::Term> t;
    for (Element w : g.elements()) t.emplace_back(2 * static_cast<int>(g.length(w)), 1);
    return LaurentPolynomial::from_terms(std::move(t));
}

/// "2,1,3,2" (1-based); the identity is "".
inline std::string format_word(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(w[i] + 1);
    }
    return out;
}

inline std::string format_element(const GroupContext& g, Element w) { return format_word(g.word(w)); }

/// Inverse of format_word. Letters are 1-based and comma separated; blanks are ignored.
inline Word parse_word(const std::string& text) {
    Word w;
    std::string cur;
    auto flush = [&](bool at_end) {
        if (cur.empty()) {
            if (!at_end || !w.empty()) throw InvalidArgument("malformed word '" + text + "'");
            return;
        }
        std::size_t v = 0;
        for (char ch : cur) {
            if (ch < '0' || ch > '9') throw InvalidArgument("malformed word '" + text + "'");
            v = v * 10 + static_cast<std::size_t>(ch - '0');
            if (v > 64) throw InvalidArgument("generator index out of range in '" + text + "'");
        }
        if (v == 0) throw InvalidArgument("generators are numbered from 1");
        w.push_back(v - 1);
        cur.clear();
    };
    bool any = false;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') continue;
        any = true;
        if (ch == ',')
            flush(false);
        else
            cur.push_back(ch);
    }
    if (any) flush(true);
    return w;
}

inline Element parse_element(const GroupContext& g, const std::string& text) {
    return g.element_from_word(parse_word(text));
}

} // namespace coxhecke
