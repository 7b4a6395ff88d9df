#include "rotorlog/cli.hpp"

#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rotorlog/bench.hpp"
#include "rotorlog/emit.hpp"
#include "rotorlog/errors.hpp"
#include "rotorlog/oracles.hpp"
#include "rotorlog/rotor.hpp"

namespace rotorlog::cli {

namespace {

constexpr std::uint64_t verify_limit = 500;

struct SolveArgs {
    std::uint64_t p = 0;
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::string algo = "rotor-int";
    std::string mode = "exact";
    std::optional<double> tolerance;
};

struct VerifyArgs {
    std::uint64_t p_max = 0;
};

struct SweepArgs {
    std::uint64_t p_min = 100;
    std::uint64_t p_max = 5000;
    std::uint64_t samples = 5;
    std::uint64_t seed = 1;
    std::string algo = "rotor-int";
    std::string mode = "exact";
    std::optional<double> tolerance;
    bool prime_only = false;
    unsigned threads = 0;
    std::string out;
    std::string format;
};

struct ScanArgs {
    std::string mode;
    std::optional<double> tolerance;
    std::uint64_t p_min = 2;
    std::uint64_t p_max = 1000;
    std::uint64_t samples = 1;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    bool prime_only = false;
    bool full = false;
    unsigned threads = 0;
    std::string out;
    std::string format;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

OutputFormat resolve_format(const std::string& flag, const std::string& path) {
    if (!flag.empty()) return parse_format(flag);
    return std::filesystem::path(path).extension() == ".json" ? OutputFormat::Json
                                                               : OutputFormat::Csv;
}

void check_tolerance(const std::optional<double>& tol) {
    if (tol && (!(*tol >= 0) || !std::isfinite(*tol)))
        throw UsageError("--tolerance must be a finite non-negative number of degrees");
}

// Fails fast on an unwritable destination before any long computation.
void probe_writable(const std::string& path) {
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw io_error(path, "cannot open for writing");
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
    if (a.p < 2) throw UsageError("--p must be at least 2");
    if (a.x < 1 || a.x >= a.p) throw UsageError("--x must satisfy 1 <= x < p");
    if (a.y < 1 || a.y >= a.p) throw UsageError("--y must satisfy 1 <= y < p");
    const Algorithm algo = parse_algorithm(a.algo);
    const NumericMode mode = NumericMode::parse(a.mode);
    check_tolerance(a.tolerance);
    if (!mode.is_exact() && algo != Algorithm::RotorReal)
        throw UsageError("--mode other than exact applies only to --algo rotor-real");

    const SolveReport report = run_solver(algo, DlogInstance{a.p, a.x, a.y}, mode, a.tolerance);
    const nlohmann::json doc = {
        {"k", report.k ? nlohmann::json(*report.k) : nlohmann::json(nullptr)},
        {"found", report.found()},
        {"reason", std::string(to_string(report.reason))},
        {"additions", report.counters.additions},
        {"subtractions", report.counters.subtractions},
        {"comparisons", report.counters.comparisons},
        {"outer_steps", report.counters.outer_steps},
    };
    out << doc.dump() << '\n';
    return report.found() ? exit_found : exit_no_solution;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.p_max < 2 || a.p_max > verify_limit)
        throw UsageError("--p-max must lie in [2, 500]; larger runs take hours");
    const EquivalenceReport report = verify_equivalence(2, a.p_max);
    for (const auto& line : report.samples) err << "mismatch: " << line << '\n';
    out << nlohmann::json{{"p_max", a.p_max},
                          {"instances", report.instances},
                          {"mismatches", report.mismatches}}
               .dump()
        << '\n';
    return report.mismatches == 0 ? exit_ok : exit_mismatch;
}

nlohmann::json fit_or_error(std::span<const SweepRecord> records, NDefinition n) {
    try {
        return to_json(fit_complexity(records, n));
    } catch (const insufficient_data& e) {
        return {{"n_definition", std::string(to_string(n))}, {"error", e.what()}};
    }
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    SweepConfig cfg;
    cfg.p_min = a.p_min;
    cfg.p_max = a.p_max;
    cfg.samples_per_p = a.samples;
    cfg.seed = a.seed;
    cfg.prime_only = a.prime_only;
    cfg.algo = parse_algorithm(a.algo);
    cfg.mode = NumericMode::parse(a.mode);
    cfg.tolerance = a.tolerance;
    cfg.threads = a.threads;
    check_tolerance(a.tolerance);
    if (a.p_min > a.p_max) throw UsageError("--p-min must not exceed --p-max");
    if (a.p_min < 2) throw UsageError("--p-min must be at least 2");
    if (a.samples < 1) throw UsageError("--samples must be at least 1");
    const OutputFormat format = resolve_format(a.format, a.out);
    probe_writable(a.out);

    const auto records = run_sweep(cfg);
    emit_results(std::span<const SweepRecord>(records), format, a.out);

    std::size_t correct = 0;
    for (const auto& r : records) correct += r.correct;
    nlohmann::json doc = {
        {"seed", cfg.seed},
        {"algo", std::string(to_string(cfg.algo))},
        {"mode", cfg.mode.name()},
        {"setup", "random x in [2, p-1], random k in [1, p-1], y = x^k mod p (harness default)"},
        {"records", records.size()},
        {"correct", correct},
        {"fits", nlohmann::json::array({fit_or_error(records, NDefinition::P),
                                        fit_or_error(records, NDefinition::BitsOfP)})},
        {"out", a.out},
    };
    try {
        doc["bit_growth"] = to_json(analyze_bit_growth(records));
    } catch (const insufficient_data& e) {
        doc["bit_growth"] = {{"error", e.what()}};
    }
    out << doc.dump() << '\n';
    return exit_ok;
}

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    ScanConfig cfg;
    cfg.mode = NumericMode::parse(a.mode);
    if (cfg.mode.is_exact()) throw UsageError("--mode must be approximate (float64 or fixed:<bits>)");
    check_tolerance(a.tolerance);
    if (a.p_min < 2) throw UsageError("--p-min must be at least 2");
    if (a.p_min > a.p_max) throw UsageError("--p-min must not exceed --p-max");
    if (a.samples < 1) throw UsageError("--samples must be at least 1");
    cfg.tolerance = a.tolerance;
    cfg.p_min = a.p_min;
    cfg.p_max = a.p_max;
    cfg.samples_per_p = a.samples;
    cfg.seed = a.seed;
    cfg.exhaustive = a.exhaustive;
    cfg.prime_only = a.prime_only;
    cfg.stop_at_first_failure = !a.full;
    cfg.threads = a.threads;
    const OutputFormat format = resolve_format(a.format, a.out);
    probe_writable(a.out);

    const ScanReport report = precision_scan(cfg);
    emit_results(report, format, a.out);
    auto doc = to_json(report);
    doc["out"] = a.out;
    out << doc.dump() << '\n';
    return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete logarithms by projection onto the 360 degree arc"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance x^k = y (mod p)");
    solve_cmd->add_option("--p", solve.p, "Modulus")->required();
    solve_cmd->add_option("--x", solve.x, "Base, 1 <= x < p")->required();
    solve_cmd->add_option("--y", solve.y, "Target, 1 <= y < p")->required();
    solve_cmd->add_option("--algo", solve.algo, "rotor-real, rotor-int, naive or bsgs")
        ->capture_default_str();
    solve_cmd->add_option("--mode", solve.mode, "exact, float64 or fixed:<bits>")
        ->capture_default_str();
    solve_cmd->add_option("--tolerance", solve.tolerance,
                          "Equality tolerance in degrees (default 180/p)");

    VerifyArgs verify;
    auto* verify_cmd =
        app.add_subcommand("verify", "Exhaustive rotor/oracle agreement for all p <= p-max");
    verify_cmd->add_option("--p-max", verify.p_max, "Largest modulus, at most 500")->required();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Measure operation counts over a range of p");
    sweep_cmd->add_option("--p-min", sweep.p_min)->capture_default_str();
    sweep_cmd->add_option("--p-max", sweep.p_max)->capture_default_str();
    sweep_cmd->add_option("--samples", sweep.samples, "Instances per modulus")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
    sweep_cmd->add_option("--algo", sweep.algo)->capture_default_str();
    sweep_cmd->add_option("--mode", sweep.mode)->capture_default_str();
    sweep_cmd->add_option("--tolerance", sweep.tolerance);
    sweep_cmd->add_flag("--prime-only", sweep.prime_only, "Only prime moduli");
    sweep_cmd->add_option("--threads", sweep.threads, "0 uses every core")->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "Output file")->required();
    sweep_cmd->add_option("--format", sweep.format, "csv or json (default from extension)");

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand(
        "precision-scan", "Find the smallest p where an approximate mode answers wrongly");
    scan_cmd->add_option("--mode", scan.mode, "float64 or fixed:<bits>")->required();
    scan_cmd->add_option("--tolerance", scan.tolerance, "Degrees (default 180/p)");
    scan_cmd->add_option("--p-min", scan.p_min)->capture_default_str();
    scan_cmd->add_option("--p-max", scan.p_max)->capture_default_str();
    scan_cmd->add_option("--samples", scan.samples)->capture_default_str();
    scan_cmd->add_option("--seed", scan.seed)->capture_default_str();
    scan_cmd->add_flag("--exhaustive", scan.exhaustive, "Every (x, y) instead of random samples");
    scan_cmd->add_flag("--prime-only", scan.prime_only, "Only prime moduli");
    scan_cmd->add_flag("--full", scan.full, "Keep scanning past the first failing p");
    scan_cmd->add_option("--threads", scan.threads)->capture_default_str();
    scan_cmd->add_option("--out", scan.out, "Output file")->required();
    scan_cmd->add_option("--format", scan.format, "csv or json (default from extension)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return exit_usage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve, out);
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep, out);
        return cmd_scan(scan, out);
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const invalid_mode& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const invalid_config& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace rotorlog::cli
