#include <doctest.h>

#include "rotorlog/errors.hpp"
#include "rotorlog/rotor.hpp"
#include "support/brute.hpp"

using namespace rotorlog;

TEST_CASE("reference instance solves to 5 in both solvers") {
    const DlogInstance inst{373, 13, 158};
    for (const auto& r : {rotor_solve_int(inst), rotor_solve_real(inst, NumericMode::exact())}) {
        CHECK(r.reason == Termination::Found);
        REQUIRE(r.k);
        CHECK(*r.k == 5);
        CHECK(r.steps == 4);
        CHECK(r.counters.outer_steps == 4);
        CHECK(r.counters.additions == 4 * 13);
        CHECK(r.counters.subtractions == 0 + 5 + 11 + 7);
        CHECK(r.counters.comparisons == 2 + 4);
    }
}

TEST_CASE("pre-checks cover k = 0 and k = 1") {
    auto r = rotor_solve_real({7, 3, 3}, NumericMode::exact());
    CHECK(r.k == 1u);
    CHECK(r.steps == 0);
    CHECK(r.counters.additions == 0);

    r = rotor_solve_real({373, 13, 1}, NumericMode::exact());
    CHECK(r.k == 0u);
    CHECK(r.counters.comparisons == 1);

    r = rotor_solve_int({2, 1, 1});
    CHECK(r.k == 0u);
}

TEST_CASE("unreachable target terminates without an answer") {
    for (const auto& r : {rotor_solve_int({5, 4, 3}), rotor_solve_real({5, 4, 3}, NumericMode::exact())}) {
        CHECK_FALSE(r.k);
        CHECK(r.reason == Termination::CycleDetected);
        CHECK(r.steps == 2);
    }
}

TEST_CASE("small-modulus examples") {
    CHECK(rotor_solve_int({11, 2, 7}).k == 7u);
    CHECK(rotor_solve_int({7, 3, 4}).k == 4u);
}

TEST_CASE("invalid instances are rejected") {
    CHECK_THROWS_AS(rotor_solve_int({1, 1, 1}), invalid_instance);
    CHECK_THROWS_AS(rotor_solve_int({5, 0, 1}), invalid_instance);
    CHECK_THROWS_AS(rotor_solve_int({5, 5, 1}), invalid_instance);
    CHECK_THROWS_AS(rotor_solve_int({5, 2, 0}), invalid_instance);
    CHECK_THROWS_AS(rotor_solve_real({5, 2, 7}, NumericMode::exact()), invalid_instance);
    CHECK_THROWS_AS(rotor_solve_real({5, 2, 3}, NumericMode::float64(), -1.0), std::invalid_argument);
}

TEST_CASE("rotor_step examples") {
    OpCounters c;
    RotorState<Natural> s;
    s.acc = 13;
    rotor_step(s, 13, Natural(373), c);
    CHECK(s.acc == Natural(169));
    CHECK(s.exponent == 2);
    CHECK(c.additions == 13);
    CHECK(c.subtractions == 0);

    rotor_step(s, 13, Natural(373), c);
    CHECK(s.acc == Natural(332));
    CHECK(s.exponent == 3);
    CHECK(c.subtractions == 5);
    CHECK(c.outer_steps == 2);

    RotorState<std::uint64_t> one;
    one.acc = 1;
    OpCounters c1;
    for (int i = 0; i < 10; ++i) {
        rotor_step(one, 1, std::uint64_t{97}, c1);
        CHECK(one.acc == 1);
    }
    CHECK(c1.additions == 10);
}

TEST_CASE("composite modulus: an exact multiple sticks at p") {
    // 2 * 2 = 4 is not > 4, so acc holds 4 (residue 0) from then on.
    const auto r = rotor_solve_int({4, 2, 3});
    CHECK_FALSE(r.k);
    CHECK(r.reason == Termination::ExhaustedIterations);
    CHECK(r.steps == 3);
    CHECK(rotor_solve_real({4, 2, 3}, NumericMode::exact()).counters == r.counters);

    std::vector<std::uint64_t> accs;
    rotor_solve_int({12, 6, 5}, [&](const IntStepEvent& e) { accs.push_back(e.acc_after); });
    CHECK(accs == std::vector<std::uint64_t>(11, 12));
}

TEST_CASE("both solvers match brute force on every instance with p <= 60") {
    for (std::uint64_t p = 2; p <= 60; ++p) {
        for (std::uint64_t x = 1; x < p; ++x) {
            for (std::uint64_t y = 1; y < p; ++y) {
                const DlogInstance inst{p, x, y};
                const auto expect = brute::least_k(p, x, y);
                const auto by_int = rotor_solve_int(inst);
                const auto by_real = rotor_solve_real(inst, NumericMode::exact());
                REQUIRE(by_int.k == expect);
                REQUIRE(by_real.k == expect);
                REQUIRE(by_int.found() == (by_int.reason == Termination::Found));
                REQUIRE(by_int.counters == by_real.counters);
                REQUIRE(by_int.steps == by_real.steps);
                REQUIRE(by_int.steps <= p - 1);
                REQUIRE(by_int.counters.additions == by_int.counters.outer_steps * x);
            }
        }
    }
}

TEST_CASE("loop invariant: acc carries x^(i+1) mod p within [1, p]") {
    for (std::uint64_t p = 2; p <= 80; ++p) {
        for (std::uint64_t x = 1; x < p; ++x) {
            // y = p - 1 is reachable for some bases and not others; either way
            // the trace must follow the powers of x.
            std::uint64_t step = 0;
            const auto traj = brute::strict_trajectory(p, x, p);
            rotor_solve_int({p, x, p - 1}, [&](const IntStepEvent& e) {
                REQUIRE(e.exponent == step + 2);
                REQUIRE(e.acc_after >= 1);
                REQUIRE(e.acc_after <= p);
                REQUIRE(e.acc_after % p == brute::pow_mod(x, e.exponent, p));
                REQUIRE(e.acc_after == traj[step].acc);
                REQUIRE(e.subtractions == traj[step].subtractions);
                REQUIRE(e.additions == x);
                ++step;
            });
        }
    }
}

TEST_CASE("cycle detection fires when the base reappears") {
    // ord(2) mod 7 is 3: powers 2, 4, 1, 2 ... and 3 is unreachable.
    const auto r = rotor_solve_int({7, 2, 3});
    CHECK(r.reason == Termination::CycleDetected);
    CHECK(r.steps == 3);
}

TEST_CASE("float64 mode with zero tolerance is exact on tiny moduli") {
    for (std::uint64_t p = 2; p <= 6; ++p)
        for (std::uint64_t x = 1; x < p; ++x)
            for (std::uint64_t y = 1; y < p; ++y) {
                const auto r = rotor_solve_real({p, x, y}, NumericMode::float64(), 0.0);
                CHECK(r.k == brute::least_k(p, x, y));
            }
}

TEST_CASE("approximate modes on the reference instance") {
    const DlogInstance inst{373, 13, 158};
    CHECK(rotor_solve_real(inst, NumericMode::float64()).k == 5u);
    CHECK(rotor_solve_real(inst, NumericMode::fixed_point(64)).k == 5u);
    CHECK(rotor_solve_real(inst, NumericMode::fixed_point(112)).k == 5u);
    // 8 fractional bits: the rounding error is multiplied by 13 every step.
    const auto coarse = rotor_solve_real(inst, NumericMode::fixed_point(8));
    CHECK(coarse.k != std::optional<std::uint64_t>(5));
    const auto r = rotor_solve_real(inst, NumericMode::float64());
    CHECK(r.counters.additions == r.counters.outer_steps * 13);
}

TEST_CASE("wide fixed point uses big integers past 128 bits") {
    // 360 * 2^112 * 400 needs more than 127 bits.
    const DlogInstance inst{401, 3, 9};
    const auto r = rotor_solve_real(inst, NumericMode::fixed_point(112));
    CHECK(r.k == 2u);
    CHECK(rotor_solve_real({401, 3, 27}, NumericMode::fixed_point(112)).k == 3u);
}

TEST_CASE("rotor_solve_int handles moduli near 2^64") {
    constexpr std::uint64_t p = 18446744073709551557ULL;
    // (p - 1)^2 = 1, so y = 1 is the pre-check and p - 1 itself is k = 1;
    // 2 is a short walk: 2 -> 4 -> 8.
    CHECK(rotor_solve_int({p, p - 1, 1}).k == 0u);
    CHECK(rotor_solve_int({p, 2, 8}).k == 3u);
    const auto r = rotor_solve_real({p, 2, 8}, NumericMode::exact());
    CHECK(r.k == 3u);
}
