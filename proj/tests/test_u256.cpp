#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fraudsys/u256.hpp"

using fraudsys::U256;

TEST_CASE("u256 basic constants and comparisons") {
    CHECK(U256().is_zero());
    CHECK(U256(1) > U256(0));
    CHECK(U256::target_one().to_hex() ==
          "7fffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff");
    CHECK(U256::target_one().bits() == 255);
    CHECK(U256(1).bits() == 1);
    CHECK(U256().bits() == 0);
}

TEST_CASE("u256 hex and decimal round trips") {
    auto v = U256::from_hex("0x1f90c192cfd3ac94af0f21ddb66cad4a268d116ece1738f7d9");
    REQUIRE(v.has_value());
    CHECK(v->to_hex() == "1f90c192cfd3ac94af0f21ddb66cad4a268d116ece1738f7d9");

    CHECK(U256::from_dec("0")->is_zero());
    CHECK(U256(12345678901234567ull).to_dec() == "12345678901234567");
    CHECK(U256::from_dec("115792089237316195423570985008687907853269984665640564039457584007913129639935")
              ->to_hex() == std::string(64, 'f'));
    CHECK_FALSE(U256::from_dec("12a").has_value());
    CHECK_FALSE(U256::from_hex("").has_value());
    CHECK_FALSE(U256::from_hex("xyz").has_value());
}

TEST_CASE("u256 byte conversion matches big-endian interpretation") {
    std::array<uint8_t, 32> bytes{};
    bytes[31] = 0x2a;
    CHECK(U256::from_be_bytes(bytes) == U256(42));
    bytes = U256::target_one().to_be_bytes();
    CHECK(bytes[0] == 0x7f);
    for (int i = 1; i < 32; ++i) CHECK(bytes[i] == 0xff);
}

TEST_CASE("u256 multiplication and division against python fixtures") {
    // Fixtures generated with arbitrary-precision integers.
    struct Fixture {
        const char* a;
        const char* b;
        const char* prod; // mod 2^256
        const char* quot;
        const char* rem;
    };
    const Fixture fixtures[] = {
        {"120c5c7fd0a6a3a4506513270e269e0d37f2a74de452e6b438",
         "51818e811892f902bd23f0824",
         "1e52af9d56aa4cf748827b787307ee78d991e022998d7b05918f82b727db17e0",
         "38aff43dcd321327f9f589b98", "25b3c644695f9adfe2b2c12d8"},
        {"16099950d836f675cc81e74ef5e8e25d940ed904759531985d",
         "311e20b8f6b0d549b6f03675a",
         "89b0920a8a5fbd4da22905725040a7a050249cdcf7f26eccc8e6e55183d3fbb2",
         "72dbdabff3d9220d5bb47f7a4", "2624f247e6e655473c6558cb5"},
        {"1f90c192cfd3ac94af0f21ddb66cad4a268d116ece1738f7d9",
         "aa170b33839263059f28c105d",
         "43b9eef94e0e881364d80199c1ab6e1d383907a1c55237369d678a35abdb99d5",
         "2f823a6b87f90fa843dfa5dc9", "83ebb7c70f85f4c6fa17c55d4"},
    };
    for (const auto& f : fixtures) {
        U256 a = *U256::from_hex(f.a);
        U256 b = *U256::from_hex(f.b);
        CHECK((a * b).to_hex() == f.prod);
        CHECK((a / b).to_hex() == f.quot);
        CHECK((a % b).to_hex() == f.rem);
    }
    CHECK_THROWS_AS(U256(1) / U256(0), std::domain_error);
}

TEST_CASE("u256 divmod identity on random values") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        std::array<uint8_t, 32> ab{}, bb{};
        for (auto& x : ab) x = static_cast<uint8_t>(rng());
        size_t blen = 1 + rng() % 24;
        for (size_t i = 32 - blen; i < 32; ++i) bb[i] = static_cast<uint8_t>(rng());
        U256 a = U256::from_be_bytes(ab);
        U256 b = U256::from_be_bytes(bb);
        if (b.is_zero()) b = U256(1);
        U256 q, r;
        U256::divmod(a, b, q, r);
        CHECK(r < b);
        CHECK(q * b + r == a);
    }
}

TEST_CASE("u256 shifts and arithmetic edges") {
    U256 one(1);
    CHECK(((one << 255) >> 255) == one);
    CHECK((one << 256).is_zero());
    U256 max = U256::from_hex(std::string(64, 'f')).value();
    CHECK(max + one == U256(0)); // wraps
    CHECK(U256(0) - one == max);
    CHECK(U256(100) - U256(58) == U256(42));
    CHECK(U256::target_one().to_double() == doctest::Approx(5.7896e76).epsilon(0.01));
}
