#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotorlog/counters.hpp"
#include "rotorlog/numerics.hpp"
#include "rotorlog/rotor.hpp"

namespace rotorlog {

enum class Algorithm { RotorReal, RotorInt, Naive, Bsgs };

/// "rotor-real", "rotor-int", "naive", "bsgs".
std::string_view to_string(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view text);

/// The size measure a fit is taken against.
enum class NDefinition { P, BitsOfP, X };

/// "p", "bits", "x".
std::string_view to_string(NDefinition n) noexcept;
NDefinition parse_n_definition(std::string_view text);

enum class Aggregation { Mean, Median };

/// Dispatches to one solver. Oracles report Found or ExhaustedIterations.
SolveReport run_solver(Algorithm algo, const DlogInstance& inst,
                       const NumericMode& mode = NumericMode::exact(),
                       std::optional<double> tolerance = std::nullopt);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Number of significant bits, bits(1) == 1.
unsigned bit_length(std::uint64_t n) noexcept;

struct GeneratedInstance {
    DlogInstance instance;
    std::uint64_t k_generating = 0;
};

/// Random x in [2, p - 1] and k in [1, p - 1], y = x^k mod p. The least
/// exponent of the result may be smaller than k_generating. Requires p >= 3.
GeneratedInstance generate_instance(std::uint64_t p, std::uint64_t seed);

/// Same construction with x and k forced.
GeneratedInstance generate_instance(std::uint64_t p, std::uint64_t x, std::uint64_t k);

/// Stream seed for instance `index` of modulus p under a sweep seed.
std::uint64_t instance_seed(std::uint64_t sweep_seed, std::uint64_t p, std::uint64_t index) noexcept;

struct SweepConfig {
    std::uint64_t p_min = 100;
    std::uint64_t p_max = 5000;
    std::uint64_t samples_per_p = 5;
    bool prime_only = true;
    std::uint64_t seed = 1;
    Algorithm algo = Algorithm::RotorInt;
    NumericMode mode = NumericMode::exact();
    std::optional<double> tolerance;
    NDefinition n_definition = NDefinition::P;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws invalid_config.
    void validate() const;
};

struct SweepRecord {
    std::uint64_t p = 0;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::optional<std::uint64_t> k_true;
    std::optional<std::uint64_t> k_found;
    OpCounters counters;
    std::uint64_t wall_ns = 0;
    bool correct = false;
};

/// One record per (p, sample), sorted by p then sample index. Moduli below 3
/// admit no random instance and are skipped. Solver exceptions are recorded
/// as a miss.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// Solves one instance with `algo` and grades it against the naive oracle.
SweepRecord measure(Algorithm algo, const DlogInstance& inst, const NumericMode& mode,
                    std::optional<double> tolerance);

struct FitResult {
    double exponent = 0;
    double intercept = 0;  // natural log of the leading coefficient
    double r_squared = 0;
    NDefinition n_definition = NDefinition::P;
    std::size_t points = 0;  // distinct n values fitted
};

/// Ordinary least squares on (ln n, ln ops) over distinct n.
FitResult fit_power_law(std::span<const double> n, std::span<const double> ops,
                        NDefinition n_definition);

/// Aggregates additions + subtractions per distinct n, then fits a power law.
/// Throws insufficient_data with fewer than 8 records or 4 distinct n, or
/// when an aggregated count is not positive.
FitResult fit_complexity(std::span<const SweepRecord> records, NDefinition n_definition,
                         Aggregation aggregation = Aggregation::Mean);

double n_value(const SweepRecord& r, NDefinition n_definition) noexcept;

/// Mean operation count per bit length, and the largest ratio between two
/// measured bit lengths b_lo < b_hi <= 2 b_lo. With counts increasing in
/// bits, that ratio bounds the doubling factor from below.
struct BitGrowthReport {
    struct Row {
        unsigned bits;
        std::size_t records;
        double mean_ops;
    };
    std::vector<Row> rows;
    unsigned bits_lo = 0;
    unsigned bits_hi = 0;
    double ratio = 0;
    double implied_degree = 0;    // ln(ratio) / ln(bits_hi / bits_lo)
    double growth_per_bit = 0;    // exp of the slope of ln ops against bits
};

BitGrowthReport analyze_bit_growth(std::span<const SweepRecord> records);

struct ScanConfig {
    NumericMode mode = NumericMode::float64();
    std::optional<double> tolerance;  // default 180/p per modulus
    std::uint64_t p_min = 2;
    std::uint64_t p_max = 1000;
    std::uint64_t samples_per_p = 1;
    std::uint64_t seed = 1;
    bool exhaustive = false;  // every (x, y) instead of random samples
    bool prime_only = false;
    bool stop_at_first_failure = false;
    unsigned threads = 0;

    void validate() const;
};

struct ScanBucket {
    unsigned bits = 0;
    std::uint64_t p_lo = 0;
    std::uint64_t p_hi = 0;
    std::uint64_t instances = 0;
    std::uint64_t wrong = 0;   // returned an exponent that is not the least one
    std::uint64_t missed = 0;  // returned nothing although a solution exists

    double failure_rate() const noexcept {
        return instances ? static_cast<double>(wrong + missed) / static_cast<double>(instances) : 0.0;
    }
};

struct ScanReport {
    NumericMode mode = NumericMode::float64();
    std::optional<double> tolerance;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> first_failure_p;
    std::optional<SweepRecord> first_failure;
    std::uint64_t scanned_p_max = 0;
    std::uint64_t instances = 0;
    std::uint64_t failures = 0;
    std::vector<ScanBucket> buckets;  // by bit length of p
    std::vector<SweepRecord> records;
};

/// Runs rotor_solve_real in an approximate mode over ascending p and grades
/// every answer against the naive oracle.
ScanReport precision_scan(const ScanConfig& cfg);

struct EquivalenceReport {
    std::uint64_t instances = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::string> samples;  // first few mismatches, human readable
};

/// For every p in [p_min, p_max] and every valid (x, y): rotor_solve_int,
/// exact rotor_solve_real, naive_solve and (for units x) bsgs_solve agree on
/// the least exponent; both rotors charge identical additions and steps; and
/// additions == outer_steps * x.
EquivalenceReport verify_equivalence(std::uint64_t p_min, std::uint64_t p_max);

}  // namespace rotorlog
