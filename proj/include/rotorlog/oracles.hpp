#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rotorlog/counters.hpp"
#include "rotorlog/rotor.hpp"

namespace rotorlog {

enum class OracleKind { NaiveScan, BabyStepGiantStep };

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept;

/// x^k mod p by square-and-multiply. p >= 2.
std::uint64_t modpow(std::uint64_t x, std::uint64_t k, std::uint64_t p);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;

/// Inverse of a mod p; throws not_a_unit when gcd(a, p) != 1.
std::uint64_t modinv(std::uint64_t a, std::uint64_t p);

/// Prime factors of n with multiplicity, ascending, by trial division.
std::vector<std::uint64_t> factorize(std::uint64_t n);

/// Least t >= 1 with x^t = 1 (mod p). Throws not_a_unit when gcd(x, p) != 1.
std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t p);

// Both oracles return the least k in [0, p - 1] with x^k = y (mod p), or
// nothing when y is not a power of x. When given counters they charge one
// outer step per group multiplication and one comparison per equality test.

std::optional<std::uint64_t> naive_solve(const DlogInstance& inst, OpCounters* counters = nullptr);

/// Falls back to naive_solve when x is not a unit mod p.
std::optional<std::uint64_t> bsgs_solve(const DlogInstance& inst, OpCounters* counters = nullptr);

std::optional<std::uint64_t> oracle_solve(OracleKind kind, const DlogInstance& inst,
                                          OpCounters* counters = nullptr);

}  // namespace rotorlog
