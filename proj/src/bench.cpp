#include "rotorlog/bench.hpp"

#include <algorithm>
#include <bit>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "rotorlog/errors.hpp"
#include "rotorlog/oracles.hpp"

namespace rotorlog {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform draw from [lo, hi] by rejection, so results do not depend on the
// standard library's distribution implementation.
std::uint64_t draw(std::mt19937_64& gen, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
        v = gen();
    } while (v >= limit);
    return lo + v % range;
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    const auto n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0) throw insufficient_data("fit needs at least two distinct n values");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        ss_res += e * e;
    }
    const double r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return {slope, intercept, std::clamp(r2, 0.0, 1.0)};
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::RotorReal: return "rotor-real";
        case Algorithm::RotorInt: return "rotor-int";
        case Algorithm::Naive: return "naive";
        case Algorithm::Bsgs: return "bsgs";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view text) {
    for (auto a : {Algorithm::RotorReal, Algorithm::RotorInt, Algorithm::Naive, Algorithm::Bsgs})
        if (text == to_string(a)) return a;
    throw invalid_config("unknown algorithm '" + std::string(text) +
                         "' (expected rotor-real, rotor-int, naive or bsgs)");
}

std::string_view to_string(NDefinition n) noexcept {
    switch (n) {
        case NDefinition::P: return "p";
        case NDefinition::BitsOfP: return "bits";
        case NDefinition::X: return "x";
    }
    return "?";
}

NDefinition parse_n_definition(std::string_view text) {
    for (auto n : {NDefinition::P, NDefinition::BitsOfP, NDefinition::X})
        if (text == to_string(n)) return n;
    throw invalid_config("unknown n definition '" + std::string(text) + "' (expected p, bits or x)");
}

SolveReport run_solver(Algorithm algo, const DlogInstance& inst, const NumericMode& mode,
                       std::optional<double> tolerance) {
    switch (algo) {
        case Algorithm::RotorReal: return rotor_solve_real(inst, mode, tolerance);
        case Algorithm::RotorInt: return rotor_solve_int(inst);
        case Algorithm::Naive:
        case Algorithm::Bsgs: {
            SolveReport report;
            report.k = oracle_solve(algo == Algorithm::Naive ? OracleKind::NaiveScan
                                                             : OracleKind::BabyStepGiantStep,
                                    inst, &report.counters);
            report.reason = report.k ? Termination::Found : Termination::ExhaustedIterations;
            report.steps = report.counters.outer_steps;
            return report;
        }
    }
    throw invalid_config("unknown algorithm");
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t v = modpow(a, d, n);
        if (v == 1 || v == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            v = mulmod(v, v, n);
            if (v == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

unsigned bit_length(std::uint64_t n) noexcept {
    return n == 0 ? 0 : static_cast<unsigned>(std::bit_width(n));
}

std::uint64_t instance_seed(std::uint64_t sweep_seed, std::uint64_t p, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(sweep_seed) ^ p) ^ index);
}

GeneratedInstance generate_instance(std::uint64_t p, std::uint64_t seed) {
    if (p < 3) throw invalid_modulus("instance generation needs p >= 3, got " + std::to_string(p));
    std::mt19937_64 gen(seed);
    // Only a composite p can give x^k = 0; redraw until y lands in [1, p).
    // x = p - 1 is always a unit, so this terminates.
    for (;;) {
        const std::uint64_t x = draw(gen, 2, p - 1);
        const std::uint64_t k = draw(gen, 1, p - 1);
        if (modpow(x, k, p) != 0) return generate_instance(p, x, k);
    }
}

GeneratedInstance generate_instance(std::uint64_t p, std::uint64_t x, std::uint64_t k) {
    if (p < 3) throw invalid_modulus("instance generation needs p >= 3, got " + std::to_string(p));
    if (x < 2 || x >= p)
        throw invalid_instance("generating base must lie in [2, p - 1], got " + std::to_string(x));
    if (k < 1 || k >= p)
        throw invalid_instance("generating exponent must lie in [1, p - 1], got " + std::to_string(k));
    const std::uint64_t y = modpow(x, k, p);
    DlogInstance inst{p, x, y};
    inst.validate();
    return {inst, k};
}

void SweepConfig::validate() const {
    if (p_min < 2) throw invalid_config("p_min must be at least 2");
    if (p_min > p_max) throw invalid_config("p_min must not exceed p_max");
    if (samples_per_p < 1) throw invalid_config("samples_per_p must be at least 1");
}

SweepRecord measure(Algorithm algo, const DlogInstance& inst, const NumericMode& mode,
                    std::optional<double> tolerance) {
    SweepRecord rec;
    rec.p = inst.p;
    rec.x = inst.x;
    rec.y = inst.y;
    rec.k_true = naive_solve(inst);
    const auto start = std::chrono::steady_clock::now();
    try {
        const SolveReport report = run_solver(algo, inst, mode, tolerance);
        rec.k_found = report.k;
        rec.counters = report.counters;
    } catch (const std::exception&) {
        rec.k_found.reset();
    }
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    rec.correct = rec.k_found == rec.k_true;
    return rec;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    struct Task {
        std::uint64_t p;
        std::uint64_t index;
    };
    std::vector<Task> tasks;
    for (std::uint64_t p = std::max<std::uint64_t>(cfg.p_min, 3); p <= cfg.p_max; ++p) {
        if (cfg.prime_only && !is_prime(p)) continue;
        for (std::uint64_t s = 0; s < cfg.samples_per_p; ++s) tasks.push_back({p, s});
        if (p == std::numeric_limits<std::uint64_t>::max()) break;
    }

    std::vector<SweepRecord> records(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
        const auto inst =
            generate_instance(tasks[i].p, instance_seed(cfg.seed, tasks[i].p, tasks[i].index))
                .instance;
        records[i] = measure(cfg.algo, inst, cfg.mode, cfg.tolerance);
    });
    return records;
}

double n_value(const SweepRecord& r, NDefinition n_definition) noexcept {
    switch (n_definition) {
        case NDefinition::P: return static_cast<double>(r.p);
        case NDefinition::BitsOfP: return static_cast<double>(bit_length(r.p));
        case NDefinition::X: return static_cast<double>(r.x);
    }
    return 0;
}

FitResult fit_power_law(std::span<const double> n, std::span<const double> ops,
                        NDefinition n_definition) {
    if (n.size() != ops.size()) throw std::invalid_argument("fit_power_law: length mismatch");
    std::vector<double> lx, ly;
    lx.reserve(n.size());
    ly.reserve(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(n[i] > 0) || !(ops[i] > 0))
            throw insufficient_data("power-law fit needs positive n and operation counts");
        lx.push_back(std::log(n[i]));
        ly.push_back(std::log(ops[i]));
    }
    const LineFit line = least_squares(lx, ly);
    return FitResult{line.slope, line.intercept, line.r_squared, n_definition, n.size()};
}

FitResult fit_complexity(std::span<const SweepRecord> records, NDefinition n_definition,
                         Aggregation aggregation) {
    if (records.size() < 8)
        throw insufficient_data("fit needs at least 8 records, got " + std::to_string(records.size()));
    std::map<double, std::vector<double>> by_n;
    for (const auto& r : records)
        by_n[n_value(r, n_definition)].push_back(static_cast<double>(r.counters.total_ops()));
    if (by_n.size() < 4)
        throw insufficient_data("fit needs at least 4 distinct n values, got " +
                                std::to_string(by_n.size()));

    std::vector<double> ns, ops;
    for (const auto& [n, values] : by_n) {
        double agg = 0;
        if (aggregation == Aggregation::Median) {
            agg = median_of(values);
        } else {
            for (double v : values) agg += v;
            agg /= static_cast<double>(values.size());
        }
        if (!(agg > 0))
            throw insufficient_data("aggregated operation count is not positive at n=" +
                                    std::to_string(n));
        ns.push_back(n);
        ops.push_back(agg);
    }
    return fit_power_law(ns, ops, n_definition);
}

BitGrowthReport analyze_bit_growth(std::span<const SweepRecord> records) {
    std::map<unsigned, std::pair<std::size_t, double>> sums;
    for (const auto& r : records) {
        auto& [count, total] = sums[bit_length(r.p)];
        ++count;
        total += static_cast<double>(r.counters.total_ops());
    }
    if (sums.size() < 2) throw insufficient_data("bit growth needs at least two bit lengths");

    BitGrowthReport out;
    std::vector<double> bits, log_ops;
    for (const auto& [b, ct] : sums) {
        const double mean = ct.second / static_cast<double>(ct.first);
        if (!(mean > 0)) throw insufficient_data("mean operation count is not positive");
        out.rows.push_back({b, ct.first, mean});
        bits.push_back(b);
        log_ops.push_back(std::log(mean));
    }
    for (const auto& lo : out.rows) {
        for (const auto& hi : out.rows) {
            if (hi.bits <= lo.bits || hi.bits > 2 * lo.bits) continue;
            const double ratio = hi.mean_ops / lo.mean_ops;
            if (ratio > out.ratio) {
                out.ratio = ratio;
                out.bits_lo = lo.bits;
                out.bits_hi = hi.bits;
            }
        }
    }
    if (out.bits_hi > 0)
        out.implied_degree = std::log(out.ratio) /
                             std::log(static_cast<double>(out.bits_hi) / out.bits_lo);
    out.growth_per_bit = std::exp(least_squares(bits, log_ops).slope);
    return out;
}

void ScanConfig::validate() const {
    if (mode.is_exact()) throw invalid_config("precision scan needs an approximate mode");
    if (p_min < 2) throw invalid_config("p_min must be at least 2");
    if (p_min > p_max) throw invalid_config("p_min must not exceed p_max");
    if (!exhaustive && samples_per_p < 1) throw invalid_config("samples_per_p must be at least 1");
    if (tolerance && (!(*tolerance >= 0) || !std::isfinite(*tolerance)))
        throw invalid_config("tolerance must be a finite non-negative number of degrees");
}

ScanReport precision_scan(const ScanConfig& cfg) {
    cfg.validate();
    ScanReport report;
    report.mode = cfg.mode;
    report.tolerance = cfg.tolerance;
    report.seed = cfg.seed;

    std::map<unsigned, ScanBucket> buckets;
    for (std::uint64_t p = cfg.p_min; p <= cfg.p_max; ++p) {
        if (cfg.prime_only && !is_prime(p)) continue;

        std::vector<DlogInstance> instances;
        if (cfg.exhaustive) {
            for (std::uint64_t x = 1; x < p; ++x)
                for (std::uint64_t y = 1; y < p; ++y) instances.push_back({p, x, y});
        } else if (p >= 3) {
            for (std::uint64_t s = 0; s < cfg.samples_per_p; ++s)
                instances.push_back(generate_instance(p, instance_seed(cfg.seed, p, s)).instance);
        }

        std::vector<SweepRecord> recs(instances.size());
        parallel_for(instances.size(), cfg.threads, [&](std::size_t i) {
            recs[i] = measure(Algorithm::RotorReal, instances[i], cfg.mode, cfg.tolerance);
        });

        const unsigned b = bit_length(p);
        auto& bucket = buckets[b];
        bucket.bits = b;
        bucket.p_lo = std::uint64_t{1} << (b - 1);
        bucket.p_hi = (std::uint64_t{1} << (b - 1)) * 2 - 1;
        bool failed = false;
        for (auto& r : recs) {
            ++bucket.instances;
            ++report.instances;
            if (!r.correct) {
                if (r.k_found)
                    ++bucket.wrong;
                else
                    ++bucket.missed;
                ++report.failures;
                if (!report.first_failure_p) {
                    report.first_failure_p = p;
                    report.first_failure = r;
                }
                failed = true;
            }
            report.records.push_back(std::move(r));
        }
        report.scanned_p_max = p;
        if (failed && cfg.stop_at_first_failure) break;
    }
    for (auto& [b, bucket] : buckets) report.buckets.push_back(bucket);
    return report;
}

EquivalenceReport verify_equivalence(std::uint64_t p_min, std::uint64_t p_max) {
    p_min = std::max<std::uint64_t>(p_min, 2);
    EquivalenceReport report;
    if (p_min > p_max) return report;

    const std::size_t count = p_max - p_min + 1;
    std::vector<EquivalenceReport> per_p(count);
    parallel_for(count, 0, [&](std::size_t idx) {
        const std::uint64_t p = p_min + idx;
        auto& out = per_p[idx];
        for (std::uint64_t x = 1; x < p; ++x) {
            const bool unit = gcd(x, p) == 1;
            for (std::uint64_t y = 1; y < p; ++y) {
                const DlogInstance inst{p, x, y};
                const auto naive = naive_solve(inst);
                const auto by_int = rotor_solve_int(inst);
                const auto by_real = rotor_solve_real(inst, NumericMode::exact());
                const auto by_bsgs = unit ? bsgs_solve(inst) : naive;

                ++out.instances;
                const auto& ci = by_int.counters;
                const auto& cr = by_real.counters;
                const bool ok = by_int.k == naive && by_real.k == naive && by_bsgs == naive &&
                                ci.additions == cr.additions && ci.outer_steps == cr.outer_steps &&
                                ci.additions == ci.outer_steps * x &&
                                cr.additions == cr.outer_steps * x;
                if (!ok) {
                    ++out.mismatches;
                    if (out.samples.size() < 10) {
                        std::ostringstream msg;
                        auto show = [](const std::optional<std::uint64_t>& k) {
                            return k ? std::to_string(*k) : std::string("none");
                        };
                        msg << "p=" << p << " x=" << x << " y=" << y << " naive=" << show(naive)
                            << " int=" << show(by_int.k) << " real=" << show(by_real.k)
                            << " bsgs=" << show(by_bsgs);
                        out.samples.push_back(msg.str());
                    }
                }
            }
        }
    });
    for (auto& part : per_p) {
        report.instances += part.instances;
        report.mismatches += part.mismatches;
        for (auto& s : part.samples)
            if (report.samples.size() < 10) report.samples.push_back(std::move(s));
    }
    return report;
}

}  // namespace rotorlog
