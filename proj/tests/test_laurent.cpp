#include <gtest/gtest.h>

#include <limits>
#include <map>
#include <random>

#include "coxhecke/laurent.hpp"

using namespace coxhecke;

namespace {

LaurentPolynomial random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(0, 6), exp(-20, 20), coef(-100, 100);
    std::vector<LaurentPolynomial::Term> t;
    int n = count(rng);
    for (int i = 0; i < n; ++i) t.emplace_back(exp(rng), coef(rng));
    return LaurentPolynomial::from_terms(std::move(t));
}

BiLaurentPolynomial random_bi(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(0, 5), exp(-6, 6), coef(-30, 30);
    std::vector<BiLaurentPolynomial::Term> t;
    int n = count(rng);
    for (int i = 0; i < n; ++i) t.emplace_back(BiExponent{exp(rng), exp(rng)}, coef(rng));
    return BiLaurentPolynomial::from_terms(std::move(t));
}

// Reference multiplication through a plain std::map, independent of the
// sorted-merge code paths.
std::map<int, long long> naive_mul(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    std::map<int, long long> out;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) out[ea + eb] += ca * cb;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::map<int, long long> as_map(const LaurentPolynomial& p) {
    std::map<int, long long> m;
    for (const auto& [e, c] : p.terms()) m[e] = c;
    return m;
}

} // namespace

TEST(Laurent, BinomialSquare) {
    auto s = v_sum();
    EXPECT_EQ(poly_mul(s, s), LaurentPolynomial::from_terms({{-2, 1}, {0, 2}, {2, 1}}));
}

TEST(Laurent, ZeroAnnihilates) {
    auto p = LaurentPolynomial::from_terms({{3, 1}, {0, -5}});
    EXPECT_TRUE(poly_mul(LaurentPolynomial{}, p).is_zero());
    EXPECT_EQ(LaurentPolynomial{}.terms().size(), 0u);
}

TEST(Laurent, DifferenceOfSquares) {
    auto a = LaurentPolynomial::from_terms({{2, 1}, {0, -1}});
    auto b = LaurentPolynomial::from_terms({{2, 1}, {0, 1}});
    EXPECT_EQ(poly_mul(a, b), LaurentPolynomial::from_terms({{4, 1}, {0, -1}}));
}

TEST(Laurent, BarExamples) {
    EXPECT_EQ(poly_bar(LaurentPolynomial::from_terms({{2, 1}, {0, -1}})), LaurentPolynomial::from_terms({{-2, 1}, {0, -1}}));
    auto p = LaurentPolynomial::from_terms({{5, 3}, {-1, 1}});
    EXPECT_EQ(poly_bar(poly_bar(p)), p);
    EXPECT_EQ(poly_bar(LaurentPolynomial(7)), LaurentPolynomial(7));
}

TEST(Laurent, NormalizationDropsZeros) {
    auto p = LaurentPolynomial::from_terms({{1, 2}, {1, -2}, {0, 0}, {3, 1}, {3, 1}});
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.coefficient(3), 2);
}

TEST(Laurent, DegreeOfProduct) {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(rng), b = random_poly(rng);
        if (a.is_zero() || b.is_zero()) continue;
        auto p = a * b;
        EXPECT_EQ(p.max_exponent(), a.max_exponent() + b.max_exponent());
        EXPECT_EQ(p.min_exponent(), a.min_exponent() + b.min_exponent());
    }
}

TEST(Laurent, RingAxiomsRandom) {
    std::mt19937 rng(20240101);
    for (int i = 0; i < 1200; ++i) {
        auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, LaurentPolynomial{});
        EXPECT_EQ(a * LaurentPolynomial(1), a);
        EXPECT_EQ(as_map(a * b), naive_mul(a, b));
        EXPECT_EQ(poly_bar(a * b), poly_bar(a) * poly_bar(b));
        EXPECT_EQ(poly_bar(poly_bar(a)), a);
    }
}

TEST(Laurent, AddScaledMatchesDefinition) {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        auto a = random_poly(rng), b = random_poly(rng);
        auto c = a;
        c.add_scaled(b, -3, 4);
        EXPECT_EQ(c, a + LaurentPolynomial::monomial(4, -3) * b);
    }
}

TEST(BiLaurent, RingAxiomsRandom) {
    std::mt19937 rng(99);
    for (int i = 0; i < 1000; ++i) {
        auto a = random_bi(rng), b = random_bi(rng), c = random_bi(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(BiLaurent, VariablesAreIndependent) {
    auto v = in_first_variable(v_power(1));
    auto w = in_second_variable(v_power(1));
    EXPECT_NE(v, w);
    EXPECT_EQ((v * w).size(), 1u);
    EXPECT_EQ((v + w).size(), 2u);
    EXPECT_EQ(to_string(v * w - w), "-1*v' + v*v'");
}

TEST(Laurent, CanonicalText) {
    auto p = LaurentPolynomial::from_terms({{-2, -1}, {0, 3}, {4, 1}});
    EXPECT_EQ(to_string(p), "-1*v^-2 + 3 + v^4");
    EXPECT_EQ(to_string(LaurentPolynomial{}), "0");
    EXPECT_EQ(to_string(v_power(1, 2)), "2*v");
    EXPECT_EQ(to_q_string(q_polynomial({1, 2, 2, 1})), "1 + 2q + 2q^2 + q^3");
    EXPECT_EQ(to_q_string(q_polynomial({1, -3, 4})), "1 - 3q + 4q^2");
}

TEST(Laurent, JsonRoundTrip) {
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto p = random_poly(rng);
        EXPECT_EQ(laurent_from_json(to_json(p)), p);
    }
    EXPECT_EQ(to_json(LaurentPolynomial{}).dump(), R"({"val":0,"coeffs":[]})");
    EXPECT_EQ(to_json(LaurentPolynomial::from_terms({{-1, 2}, {1, 1}})).dump(), R"({"val":-1,"coeffs":[2,0,1]})");
}

TEST(Laurent, QHelpers) {
    auto p = q_polynomial({1, 1});
    EXPECT_TRUE(is_q_polynomial(p));
    EXPECT_EQ(q_degree(p), 1);
    EXPECT_EQ(q_degree(LaurentPolynomial{}), -1);
    EXPECT_EQ(to_q_coefficients(p), (std::vector<Coeff>{1, 1}));
    EXPECT_FALSE(is_q_polynomial(v_power(1)));
    EXPECT_THROW(to_q_coefficients(v_power(-2)), std::exception);
}

TEST(Laurent, OverflowIsReported) {
    const Coeff big = std::numeric_limits<Coeff>::max() / 2 + 1;
    auto p = LaurentPolynomial(big);
    EXPECT_THROW(p * LaurentPolynomial(2), ArithmeticOverflow);
    EXPECT_THROW(p + p, ArithmeticOverflow);
}
