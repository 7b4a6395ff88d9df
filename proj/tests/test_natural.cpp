#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "rotorlog/natural.hpp"

using rotorlog::Natural;
using big = Natural::big_type;

TEST_CASE("small values stay inline") {
    Natural a(40);
    a += Natural(2);
    CHECK(a == Natural(42));
    CHECK(a.fits_u64());
    CHECK(a.to_u64() == 42u);
    CHECK(a.str() == "42");
}

TEST_CASE("addition past 64 bits promotes instead of wrapping") {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    Natural a(max);
    a += Natural(1);
    CHECK_FALSE(a.fits_u64());
    CHECK(a.to_big() == big(max) + 1);
    CHECK(a > Natural(max));

    a -= Natural(1);
    CHECK(a.fits_u64());
    CHECK(a == Natural(max));
}

TEST_CASE("multiplication past 64 bits promotes") {
    Natural a(std::uint64_t{1} << 40);
    a *= Natural(std::uint64_t{1} << 40);
    CHECK(a.to_big() == big(1) << 80);
    CHECK(a.mod(1000003) == static_cast<std::uint64_t>((big(1) << 80) % 1000003));
}

TEST_CASE("subtraction below zero throws") {
    Natural a(3);
    CHECK_THROWS_AS(a -= Natural(4), std::domain_error);
    CHECK_THROWS_AS(Natural(big(-1)), std::domain_error);
    CHECK_THROWS_AS((void)Natural(5).mod(0), std::domain_error);
}

TEST_CASE("random operation sequences agree with cpp_int") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        Natural n(gen() >> (gen() % 64));
        big ref = n.to_big();
        for (int step = 0; step < 50; ++step) {
            const std::uint64_t operand = gen() >> (gen() % 64);
            switch (gen() % 3) {
                case 0:
                    n += Natural(operand);
                    ref += operand;
                    break;
                case 1:
                    if (ref >= operand) {
                        n -= Natural(operand);
                        ref -= operand;
                    }
                    break;
                default:
                    if (ref < (big(1) << 512)) {
                        n *= Natural(operand % 1000 + 1);
                        ref *= operand % 1000 + 1;
                    }
            }
            REQUIRE(n.to_big() == ref);
            REQUIRE(n.fits_u64() == (ref <= std::numeric_limits<std::uint64_t>::max()));
            REQUIRE((n <=> Natural(operand)) == (ref.compare(big(operand)) <=> 0));
        }
    }
}
