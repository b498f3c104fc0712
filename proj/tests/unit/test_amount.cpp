#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bucketbook/amount.hpp"
#include "support/helpers.hpp"

using namespace bucketbook;
using testsupport::HasErrc;

namespace {
const std::string kMax128 = "340282366920938463463374607431768211455"; // 2^128 - 1
}

TEST_CASE("amount construction, comparison, and printing") {
    Amount zero;
    Amount ten{10};
    CHECK(zero.is_zero());
    CHECK_FALSE(ten.is_zero());
    CHECK(zero < ten);
    CHECK(ten == Amount{10});
    CHECK(ten.str() == "10");
    CHECK(zero.str() == "0");

    std::ostringstream os;
    os << ten;
    CHECK(os.str() == "10");

    CHECK(min(Amount{3}, Amount{7}) == Amount{3});
    CHECK(min(Amount{7}, Amount{3}) == Amount{3});
}

TEST_CASE("amount addition and subtraction are checked") {
    Amount a{10};
    CHECK(a.checked_add(Amount{5}) == Amount{15});
    CHECK(a.checked_sub(Amount{5}) == Amount{5});
    CHECK(a.checked_sub(Amount{10}).is_zero());

    REQUIRE_THROWS_MATCHES(Amount::max().checked_add(Amount{1}), Error, HasErrc(Errc::overflow));
    REQUIRE_THROWS_MATCHES(Amount{1}.checked_sub(Amount{2}), Error, HasErrc(Errc::overflow));
    // max + 0 is the identity, right at the edge.
    CHECK(Amount::max().checked_add(Amount{}) == Amount::max());
}

TEST_CASE("amount survives a 128-bit decimal round trip") {
    CHECK(Amount::max().str() == kMax128);
    CHECK(Amount::parse(kMax128) == Amount::max());

    // Larger than any uint64: 2^64 = 18446744073709551616.
    Amount big = Amount::parse("18446744073709551616");
    CHECK_FALSE(big.fits_uint64());
    CHECK(big.str() == "18446744073709551616");
    CHECK(Amount::parse(big.str()) == big);
    CHECK(Amount{~std::uint64_t{0}}.checked_add(Amount{1}) == big);
}

TEST_CASE("amount parse rejects malformed input") {
    REQUIRE_THROWS_MATCHES(Amount::parse(""), Error, HasErrc(Errc::invalid_amount));
    REQUIRE_THROWS_MATCHES(Amount::parse("12a"), Error, HasErrc(Errc::invalid_amount));
    REQUIRE_THROWS_MATCHES(Amount::parse("-1"), Error, HasErrc(Errc::invalid_amount));
    REQUIRE_THROWS_MATCHES(Amount::parse(" 1"), Error, HasErrc(Errc::invalid_amount));
    // One past 2^128 - 1.
    REQUIRE_THROWS_MATCHES(Amount::parse("340282366920938463463374607431768211456"), Error,
                           HasErrc(Errc::invalid_amount));
}

TEST_CASE("amount knows the binary64-exact window") {
    Amount safe{Amount::kMaxDoubleSafe}; // 2^53 - 1
    CHECK(safe.double_safe());
    CHECK_FALSE(safe.checked_add(Amount{1}).double_safe());

    CHECK(safe.fits_uint64());
    CHECK(safe.as_uint64() == Amount::kMaxDoubleSafe);
    REQUIRE_THROWS_MATCHES(Amount::parse("18446744073709551616").as_uint64(), Error,
                           HasErrc(Errc::overflow));
}
