#include <gtest/gtest.h>

#include "coxhecke/sl2.hpp"

using namespace coxhecke;

using Row = std::vector<Coeff>;

TEST(Sl2, StageZeroIsWeyl) {
    for (std::uint64_t p : {2, 3, 5}) {
        auto row = stage_dimension_row(p, 0, 12);
        for (std::size_t l = 0; l < row.size(); ++l) EXPECT_EQ(row[l], static_cast<Coeff>(l + 1));
    }
}

TEST(Sl2, PrimeTwoTables) {
    EXPECT_EQ(stage_dimension_row(2, 1, 7), (Row{1, 2, 2, 4, 3, 6, 4, 8}));
    EXPECT_EQ(stage_dimension_row(2, 1, 15), (Row{1, 2, 2, 4, 3, 6, 4, 8, 5, 10, 6, 12, 7, 14, 8, 16}));
    EXPECT_EQ(stage_dimension_row(2, 2, 15), (Row{1, 2, 2, 4, 2, 4, 4, 8, 3, 6, 6, 12, 4, 8, 8, 16}));
    EXPECT_EQ(stage_dimension_row(2, 3, 15), (Row{1, 2, 2, 4, 2, 4, 4, 8, 2, 4, 4, 8, 4, 8, 8, 16}));
}

TEST(Sl2, PrimeThreeTables) {
    EXPECT_EQ(stage_dimension_row(3, 1, 20),
              (Row{1, 2, 3, 2, 4, 6, 3, 6, 9, 4, 8, 12, 5, 10, 15, 6, 12, 18, 7, 14, 21}));
    EXPECT_EQ(stage_dimension_row(3, 2, 17), (Row{1, 2, 3, 2, 4, 6, 3, 6, 9, 2, 4, 6, 4, 8, 12, 6, 12, 18}));
    EXPECT_EQ(stage_dimension_row(3, 2, 20),
              (Row{1, 2, 3, 2, 4, 6, 3, 6, 9, 2, 4, 6, 4, 8, 12, 6, 12, 18, 3, 6, 9}));
    EXPECT_EQ(stage_dimension_row(3, 3, 20),
              (Row{1, 2, 3, 2, 4, 6, 3, 6, 9, 2, 4, 6, 4, 8, 12, 6, 12, 18, 3, 6, 9}));
}

TEST(Sl2, MirrorReflectionExample) {
    // p = 2: 5 is reflected in the mirrors 4 and 2, giving 3 and 1
    auto e = e_stage(2, 1, 4);
    EXPECT_EQ(e.coeffs, (std::map<std::uint64_t, Coeff>{{0, 1}, {2, -1}, {4, 1}}));
    EXPECT_EQ(e.dimension(), 3);
}

TEST(Sl2, SmallWeightsUnchanged) {
    for (std::uint64_t p : {2, 3, 5, 7})
        for (unsigned k = 0; k < 4; ++k)
            for (std::uint64_t l = 0; l < p; ++l) EXPECT_EQ(e_stage(p, k, l), CharCombo::unit(l));
}

TEST(Sl2, Infinity) {
    EXPECT_EQ(e_infinity(2, 7).dimension(), 8);
    EXPECT_EQ(e_infinity(3, 13).dimension(), 8);
    EXPECT_EQ(e_infinity(5, 3), CharCombo::unit(3));
}

TEST(Sl2, DigitProduct) {
    EXPECT_EQ(digit_product_dim(2, 7), 8);
    EXPECT_EQ(digit_product_dim(3, 13), 8);
    for (std::uint64_t p : {2, 3, 5}) EXPECT_EQ(digit_product_dim(p, 0), 1);
}

TEST(Sl2, OracleAgreementAndStabilization) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        MirrorRecursion r(p);
        for (std::uint64_t l = 0; l <= 500; ++l) {
            CharCombo e = r.infinity(l);
            EXPECT_EQ(e.dimension(), digit_product_dim(p, l)) << p << " " << l;
            unsigned k = r.stable_stage(l);
            EXPECT_EQ(r.stage(k + 2, l), e);
        }
    }
}

TEST(Sl2, Unitriangular) {
    for (std::uint64_t p : {2, 3, 5}) {
        MirrorRecursion r(p);
        for (unsigned k = 0; k <= 4; ++k)
            for (std::uint64_t l = 0; l <= 200; ++l) {
                const CharCombo& e = r.stage(k, l);
                EXPECT_EQ(e.coefficient(l), 1);
                EXPECT_EQ(e.coeffs.rbegin()->first, l);
                EXPECT_GT(e.dimension(), 0);
            }
    }
}

TEST(Sl2, MirrorFixing) {
    for (std::uint64_t p : {2, 3, 5}) {
        MirrorRecursion r(p);
        std::uint64_t block = 1;
        for (unsigned k = 0; k <= 3; ++k, block *= p)
            for (std::uint64_t l = 0; l <= 300; ++l)
                if ((l / block) % p == p - 1) {
                    EXPECT_EQ(r.stage(k + 1, l), r.stage(k, l));
                }
    }
}

TEST(Sl2, CompositeModulusStillComputes) {
    EXPECT_FALSE(is_prime(4));
    EXPECT_TRUE(is_prime(7));
    EXPECT_EQ(stage_dimension_row(4, 0, 3), (Row{1, 2, 3, 4}));
    EXPECT_NO_THROW(stage_dimension_row(4, 3, 100));
    EXPECT_THROW(MirrorRecursion(1), InvalidArgument);
}
