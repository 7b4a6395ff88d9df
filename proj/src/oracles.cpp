#include "rotorlog/oracles.hpp"

#include <cmath>
#include <unordered_map>

#include "rotorlog/errors.hpp"

namespace rotorlog {

namespace {

// Above this the order of x is not computed and BSGS sizes its table from p.
constexpr std::uint64_t cheap_order_limit = std::uint64_t{1} << 32;

std::uint64_t ceil_sqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r >= n) --r;
    while (static_cast<unsigned __int128>(r) * r < n) ++r;
    return r;
}

std::uint64_t totient(std::uint64_t n) {
    std::uint64_t result = n;
    std::uint64_t last = 0;
    for (const auto q : factorize(n)) {
        if (q == last) continue;
        result = result / q * (q - 1);
        last = q;
    }
    return result;
}

}  // namespace

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t modpow(std::uint64_t x, std::uint64_t k, std::uint64_t p) {
    if (p < 2) throw invalid_modulus("modulus must be at least 2, got " + std::to_string(p));
    std::uint64_t result = 1;
    std::uint64_t base = x % p;
    while (k > 0) {
        if (k & 1) result = mulmod(result, base, p);
        base = mulmod(base, base, p);
        k >>= 1;
    }
    return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t modinv(std::uint64_t a, std::uint64_t p) {
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a % p;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1)
        throw not_a_unit(std::to_string(a) + " is not invertible mod " + std::to_string(p));
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

std::vector<std::uint64_t> factorize(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= n / q; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            out.push_back(q);
            n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t p) {
    if (p < 2) throw invalid_modulus("modulus must be at least 2, got " + std::to_string(p));
    if (gcd(x % p, p) != 1)
        throw not_a_unit(std::to_string(x) + " is not a unit mod " + std::to_string(p));
    std::uint64_t order = totient(p);
    for (const auto q : factorize(order)) {
        if (order % q == 0 && modpow(x, order / q, p) == 1) order /= q;
    }
    return order;
}

std::optional<std::uint64_t> naive_solve(const DlogInstance& inst, OpCounters* counters) {
    inst.validate();
    OpCounters local;
    OpCounters& c = counters ? *counters : local;

    std::uint64_t power = 1;
    ++c.comparisons;
    if (power == inst.y) return 0;
    for (std::uint64_t k = 1; k < inst.p; ++k) {
        power = mulmod(power, inst.x, inst.p);
        ++c.outer_steps;
        ++c.comparisons;
        if (power == inst.y) return k;
        if (power == 1) break;  // back at x^0: every power has been seen
    }
    return std::nullopt;
}

std::optional<std::uint64_t> bsgs_solve(const DlogInstance& inst, OpCounters* counters) {
    inst.validate();
    if (gcd(inst.x, inst.p) != 1) return naive_solve(inst, counters);

    OpCounters local;
    OpCounters& c = counters ? *counters : local;
    const std::uint64_t p = inst.p;
    const std::uint64_t span = p <= cheap_order_limit ? multiplicative_order(inst.x, p) : p;
    const std::uint64_t m = ceil_sqrt(span);

    // Least exponent per residue; with m <= ord(x) there are no collisions.
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(m);
    std::uint64_t power = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        baby.try_emplace(power, j);
        power = mulmod(power, inst.x, p);
        ++c.outer_steps;
    }

    const std::uint64_t giant = modpow(modinv(inst.x, p), m, p);
    std::uint64_t gamma = inst.y;
    for (std::uint64_t i = 0; i <= m; ++i) {
        ++c.comparisons;
        if (const auto it = baby.find(gamma); it != baby.end()) return i * m + it->second;
        gamma = mulmod(gamma, giant, p);
        ++c.outer_steps;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> oracle_solve(OracleKind kind, const DlogInstance& inst,
                                          OpCounters* counters) {
    return kind == OracleKind::NaiveScan ? naive_solve(inst, counters)
                                         : bsgs_solve(inst, counters);
}

}  // namespace rotorlog
