#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "coxhecke/coxeter.hpp"

using namespace coxhecke;

namespace {

// prod_i (1 + q + ... + q^{d_i - 1}) from the degrees of the basic invariants.
LaurentPolynomial degree_product(std::vector<int> degrees) {
    LaurentPolynomial p(1);
    for (int d : degrees) {
        std::vector<LaurentPolynomial::Term> t;
        for (int i = 0; i < d; ++i) t.emplace_back(2 * i, 1);
        p *= LaurentPolynomial::from_terms(t);
    }
    return p;
}

// Products of all subwords of the canonical word of w.
std::set<Element> subword_products(const GroupContext& g, Element w) {
    const Word& word = g.word(w);
    std::set<Element> out;
    for (std::uint32_t mask = 0; mask < (1u << word.size()); ++mask) {
        Element x = g.identity();
        for (std::size_t i = 0; i < word.size(); ++i)
            if ((mask >> i) & 1u) x = g.rmul(x, word[i]);
        out.insert(x);
    }
    return out;
}

// For each element, the first word in (length, lexicographic) order that
// evaluates to it. Prefixes of such words are again first words, so each
// layer only extends the previous layer's winners.
std::map<Element, Word> shortlex_by_brute_force(const GroupContext& g) {
    std::map<Element, Word> first;
    std::vector<Word> layer{{}};
    first[g.identity()] = {};
    while (!layer.empty()) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Generator s = 0; s < g.rank(); ++s) {
                Word x = w;
                x.push_back(s);
                next.push_back(x);
            }
        std::sort(next.begin(), next.end());
        layer.clear();
        for (const Word& w : next)
            if (first.emplace(g.element_from_word(w), w).second) layer.push_back(w);
    }
    return first;
}

} // namespace

TEST(Coxeter, Orders) {
    const std::map<std::string, std::size_t> expected{{"A1", 2},  {"A2", 6},   {"A3", 24},    {"A4", 120},
                                                      {"B2", 8},  {"B3", 48},  {"B4", 384},   {"D4", 192},
                                                      {"H3", 120}, {"F4", 1152}, {"I2(5)", 10}, {"I2(8)", 16}};
    for (const auto& [name, order] : expected) EXPECT_EQ(build_group(coxeter_preset(name)).order(), order) << name;
}

TEST(Coxeter, DihedralOrders) {
    for (int m = 2; m <= 12; ++m) {
        auto g = build_group(coxeter_preset("I2(" + std::to_string(m) + ")"));
        EXPECT_EQ(g.order(), static_cast<std::size_t>(2 * m));
        EXPECT_EQ(g.num_positive_roots(), static_cast<unsigned>(m));
    }
}

TEST(Coxeter, RankOne) {
    auto g = build_group(coxeter_preset("A1"));
    ASSERT_EQ(g.order(), 2u);
    EXPECT_EQ(format_element(g, g.identity()), "");
    EXPECT_EQ(format_element(g, g.longest()), "1");
}

TEST(Coxeter, A3LongestElement) {
    auto g = build_group(coxeter_preset("A3"));
    EXPECT_EQ(g.order(), 24u);
    EXPECT_EQ(g.length(g.longest()), 6u);
    EXPECT_EQ(g.longest(), parse_element(g, "3,1,2,3,1,2"));
}

TEST(Coxeter, PoincareAgainstDegrees) {
    const std::vector<std::pair<std::string, std::vector<int>>> cases{
        {"A1", {2}},          {"A2", {2, 3}},       {"A3", {2, 3, 4}},    {"A4", {2, 3, 4, 5}},
        {"B2", {2, 4}},       {"B3", {2, 4, 6}},    {"B4", {2, 4, 6, 8}}, {"D4", {2, 4, 4, 6}},
        {"H3", {2, 6, 10}},   {"F4", {2, 6, 8, 12}}, {"I2(5)", {2, 5}},  {"I2(7)", {2, 7}}};
    for (const auto& [name, degs] : cases) {
        auto g = build_group(coxeter_preset(name));
        auto p = poincare_polynomial(g);
        EXPECT_EQ(p, degree_product(degs)) << name;
        EXPECT_EQ(static_cast<std::size_t>(coefficient_sum(p)), g.order()) << name;
    }
    EXPECT_EQ(to_q_string(poincare_polynomial(build_group(coxeter_preset("A2")))), "1 + 2q + 2q^2 + q^3");
    EXPECT_EQ(to_q_string(poincare_polynomial(build_group(coxeter_preset("A1")))), "1 + q");
}

TEST(Coxeter, Involutions) {
    EXPECT_EQ(involutions(build_group(coxeter_preset("A1"))).size(), 2u);
    auto s3 = build_group(coxeter_preset("A2"));
    auto inv = involutions(s3);
    std::set<Element> got(inv.begin(), inv.end());
    std::set<Element> want{s3.identity(), parse_element(s3, "1"), parse_element(s3, "2"), parse_element(s3, "1,2,1")};
    EXPECT_EQ(got, want);
    // brute-force squaring oracle
    auto s4 = build_group(coxeter_preset("A3"));
    std::size_t count = 0;
    for (Element w : s4.elements())
        if (group_multiply(s4, w, w) == s4.identity()) ++count;
    EXPECT_EQ(count, 10u);
    EXPECT_EQ(involutions(s4).size(), count);
}

TEST(Coxeter, MultiplicationBasics) {
    auto g = build_group(coxeter_preset("B3"));
    for (Element x : g.elements()) {
        EXPECT_EQ(group_multiply(g, x, g.identity()), x);
        EXPECT_EQ(group_multiply(g, g.identity(), x), x);
        EXPECT_EQ(group_multiply(g, x, g.inverse(x)), g.identity());
        for (Generator s = 0; s < g.rank(); ++s) {
            EXPECT_EQ(g.lmul(s, g.lmul(s, x)), x);
            EXPECT_EQ(g.lmul(s, x), group_multiply(g, g.generator(s), x));
        }
    }
    for (Element x : g.elements())
        for (Element y : g.elements()) EXPECT_LE(g.length(group_multiply(g, x, y)), g.length(x) + g.length(y));
}

TEST(Coxeter, CommutingGeneratorsGiveSameElement) {
    auto g = build_group(coxeter_preset("A3"));
    EXPECT_EQ(parse_element(g, "2,1,3,2"), parse_element(g, "2,3,1,2"));
    EXPECT_EQ(format_element(g, parse_element(g, "2,3,1,2")), "2,1,3,2");
}

TEST(Coxeter, LongestElementProperties) {
    for (const char* name : {"A3", "B3", "H3", "I2(5)", "D4"}) {
        auto g = build_group(coxeter_preset(name));
        const unsigned n = g.num_positive_roots();
        std::size_t at_max = 0;
        for (Element x : g.elements()) {
            if (g.length(x) == n) ++at_max;
            EXPECT_EQ(g.length(group_multiply(g, g.longest(), x)), n - g.length(x));
        }
        EXPECT_EQ(at_max, 1u) << name;
    }
}

TEST(Coxeter, ShortLexAgainstBruteForce) {
    for (const char* name : {"A2", "A3", "B2", "B3", "I2(5)", "H3"}) {
        auto g = build_group(coxeter_preset(name));
        auto first = shortlex_by_brute_force(g);
        ASSERT_EQ(first.size(), g.order()) << name;
        for (Element w : g.elements()) {
            EXPECT_EQ(g.word(w), first.at(w)) << name;
            EXPECT_EQ(g.word(w).size(), g.length(w));
            EXPECT_EQ(parse_element(g, format_element(g, w)), w);
        }
    }
}

TEST(Coxeter, DescentsMatchLengths) {
    auto g = build_group(coxeter_preset("H3"));
    for (Element w : g.elements())
        for (Generator s = 0; s < g.rank(); ++s) {
            EXPECT_EQ(g.is_left_descent(s, w), g.length(g.lmul(s, w)) < g.length(w));
            EXPECT_EQ(g.is_right_descent(w, s), g.length(g.rmul(w, s)) < g.length(w));
        }
}

TEST(Coxeter, BruhatAgainstSubwordOracle) {
    for (const char* name : {"A1", "A2", "A3", "B2", "B3", "I2(5)", "I2(8)"}) {
        auto g = build_group(coxeter_preset(name));
        ASSERT_LE(g.order(), 48u);
        for (Element w : g.elements()) {
            auto below = subword_products(g, w);
            for (Element y : g.elements()) EXPECT_EQ(bruhat_leq(g, y, w), below.count(y) == 1) << name;
        }
    }
}

TEST(Coxeter, BruhatExamples) {
    auto g = build_group(coxeter_preset("A3"));
    for (Element w : g.elements()) {
        EXPECT_TRUE(bruhat_leq(g, g.identity(), w));
        EXPECT_TRUE(bruhat_leq(g, w, w));
    }
    Element w = parse_element(g, "2,3,1,2");
    std::set<Element> support;
    for (const char* y : {"2,3,1,2", "2,3,1", "2,3,2", "3,1,2", "2,1,2", "2,3", "3,2", "1,2", "2,1", "1,3", "1", "3", "2", ""})
        support.insert(parse_element(g, y));
    ASSERT_EQ(support.size(), 14u);
    for (Element y : g.elements()) EXPECT_EQ(bruhat_leq(g, y, w), support.count(y) == 1);
}

TEST(Coxeter, CapExceeded) {
    EXPECT_THROW(build_group(coxeter_preset("A3"), 10), CapExceeded);
    CoxeterMatrix affine{3, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}};
    EXPECT_THROW(build_group(affine, 2000), CapExceeded);
}

TEST(Coxeter, InvalidMatrices) {
    EXPECT_THROW((CoxeterMatrix{2, {{1, 1}, {1, 1}}}.validate()), InvalidMatrix);
    EXPECT_THROW((CoxeterMatrix{2, {{1, 3}, {4, 1}}}.validate()), InvalidMatrix);
    EXPECT_THROW((CoxeterMatrix{2, {{2, 3}, {3, 1}}}.validate()), InvalidMatrix);
    EXPECT_THROW((CoxeterMatrix{2, {{1, 3}}}.validate()), InvalidMatrix);
    EXPECT_THROW(build_group(CoxeterMatrix{0, {}}), InvalidMatrix);
    EXPECT_THROW(coxeter_preset("Q3"), InvalidArgument);
    EXPECT_THROW(coxeter_preset("B1"), InvalidArgument);
    EXPECT_THROW(coxeter_preset("I2(x)"), InvalidArgument);
}

TEST(Coxeter, MatrixFromJson) {
    auto j = nlohmann::json::parse(R"({"rank":2,"m":[[1,5],[5,1]]})");
    EXPECT_EQ(build_group(coxeter_matrix_from_json(j)).order(), 10u);
    EXPECT_THROW(coxeter_matrix_from_json(nlohmann::json::parse(R"({"rank":2,"m":[[1,"inf"],["inf",1]]})")),
                 InvalidMatrix);
    EXPECT_THROW(coxeter_matrix_from_json(nlohmann::json::parse(R"([1,2])")), InvalidMatrix);
}

TEST(Coxeter, WordParsing) {
    auto g = build_group(coxeter_preset("A3"));
    EXPECT_EQ(parse_element(g, ""), g.identity());
    EXPECT_EQ(parse_element(g, " 1, 2 "), parse_element(g, "1,2"));
    EXPECT_THROW(parse_element(g, "1,,2"), InvalidArgument);
    EXPECT_THROW(parse_element(g, "0"), InvalidArgument);
    EXPECT_THROW(parse_element(g, "4"), InvalidArgument);
    EXPECT_THROW(parse_element(g, "a"), InvalidArgument);
    EXPECT_THROW(parse_element(g, "1,"), InvalidArgument);
    EXPECT_EQ(parse_word("2,3,1,2"), (Word{1, 2, 0, 1}));
    EXPECT_EQ(format_word({1, 2, 0, 1}), "2,3,1,2");
}
