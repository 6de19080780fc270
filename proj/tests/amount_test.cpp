#include <gtest/gtest.h>

#include <limits>

#include "sfc/amount.hpp"
#include "test_support.hpp"

using namespace sfc;
using sfc::test::amt;
using sfc::test::errc_of;

TEST(Amount, ParsesWholeAndFractionalStrings) {
    EXPECT_EQ(parse_amount("4000.00", 2).units(), 400000u);
    EXPECT_EQ(parse_amount("4000", 2).units(), 400000u);
    EXPECT_EQ(parse_amount("120.5", 2).units(), 12050u);
    EXPECT_EQ(parse_amount("0.05", 2).units(), 5u);
    EXPECT_EQ(parse_amount("0", 2).units(), 0u);
    EXPECT_EQ(parse_amount("7", 0).units(), 7u);
}

TEST(Amount, RejectsMalformedStrings) {
    EXPECT_EQ(errc_of([] { parse_amount("", 2); }), Errc::invalid_amount);
    EXPECT_EQ(errc_of([] { parse_amount("1.", 2); }), Errc::invalid_amount);
    EXPECT_EQ(errc_of([] { parse_amount(".5", 2); }), Errc::invalid_amount);
    EXPECT_EQ(errc_of([] { parse_amount("-1", 2); }), Errc::invalid_amount);
    EXPECT_EQ(errc_of([] { parse_amount("1.005", 2); }), Errc::invalid_amount);
    EXPECT_EQ(errc_of([] { parse_amount("12a", 2); }), Errc::invalid_amount);
}

TEST(Amount, FormatsWithExactFractionalDigits) {
    EXPECT_EQ(format_amount(amt(400000), 2), "4000.00");
    EXPECT_EQ(format_amount(amt(5), 2), "0.05");
    EXPECT_EQ(format_amount(amt(600), 2), "6.00");
    EXPECT_EQ(format_amount(amt(570), 2), "5.70");
    EXPECT_EQ(format_amount(amt(7), 0), "7");
}

TEST(Amount, FormatParseRoundTrips) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> units(0, 100'000'000);
    for (int i = 0; i < 1000; ++i) {
        TokenAmount a = amt(units(rng));
        for (std::uint32_t decimals : {0u, 2u, 6u})
            EXPECT_EQ(parse_amount(format_amount(a, decimals), decimals), a);
    }
}

TEST(Amount, CheckedArithmetic) {
    EXPECT_EQ((amt(12000) - amt(5000)).units(), 7000u);
    EXPECT_EQ((amt(3000) + amt(2000)).units(), 5000u);
    EXPECT_EQ(errc_of([] { amt(1) - amt(2); }), Errc::amount_overflow);
    EXPECT_EQ(errc_of([] {
                  auto max = amt(std::numeric_limits<std::uint64_t>::max());
                  max + amt(1);
              }),
              Errc::amount_overflow);
}

TEST(Amount, ParseOverflowIsHardError) {
    EXPECT_EQ(errc_of([] { parse_amount("18446744073709551616", 0); }), Errc::amount_overflow);
    EXPECT_EQ(errc_of([] { parse_amount("184467440737095516.16", 2); }), Errc::amount_overflow);
}
