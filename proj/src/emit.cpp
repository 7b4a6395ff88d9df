#include "rotorlog/emit.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rotorlog/errors.hpp"

namespace rotorlog {

namespace {

nlohmann::json optional_json(const std::optional<std::uint64_t>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void write_file(const std::filesystem::path& destination, const std::string& content) {
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error(destination.string(), std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw io_error(destination.string(), "write failed");
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw invalid_config("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

void write_csv(std::ostream& os, std::span<const SweepRecord> records) {
    os << csv_header << '\n';
    for (const auto& r : records) {
        os << r.p << ',' << r.x << ',' << r.y << ',';
        if (r.k_true) os << *r.k_true;
        os << ',';
        if (r.k_found) os << *r.k_found;
        os << ',' << r.counters.additions << ',' << r.counters.subtractions << ','
           << r.counters.comparisons << ',' << r.counters.outer_steps << ',' << r.wall_ns << ','
           << (r.correct ? "true" : "false") << '\n';
    }
}

nlohmann::json to_json(const SweepRecord& r) {
    return {
        {"p", r.p},
        {"x", r.x},
        {"y", r.y},
        {"k_true", optional_json(r.k_true)},
        {"k_found", optional_json(r.k_found)},
        {"additions", r.counters.additions},
        {"subtractions", r.counters.subtractions},
        {"comparisons", r.counters.comparisons},
        {"outer_steps", r.counters.outer_steps},
        {"wall_ns", r.wall_ns},
        {"correct", r.correct},
    };
}

nlohmann::json to_json(std::span<const SweepRecord> records) {
    auto arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr;
}

nlohmann::json to_json(const FitResult& fit) {
    return {
        {"exponent", fit.exponent},
        {"intercept", fit.intercept},
        {"r_squared", fit.r_squared},
        {"n_definition", std::string(to_string(fit.n_definition))},
        {"points", fit.points},
    };
}

nlohmann::json to_json(const BitGrowthReport& growth) {
    auto rows = nlohmann::json::array();
    for (const auto& row : growth.rows)
        rows.push_back({{"bits", row.bits}, {"records", row.records}, {"mean_ops", row.mean_ops}});
    return {
        {"rows", rows},
        {"bits_lo", growth.bits_lo},
        {"bits_hi", growth.bits_hi},
        {"ratio", growth.ratio},
        {"implied_degree", growth.implied_degree},
        {"growth_per_bit", growth.growth_per_bit},
    };
}

nlohmann::json to_json(const ScanReport& scan) {
    auto buckets = nlohmann::json::array();
    for (const auto& b : scan.buckets) {
        buckets.push_back({
            {"bits", b.bits},
            {"p_lo", b.p_lo},
            {"p_hi", b.p_hi},
            {"instances", b.instances},
            {"wrong", b.wrong},
            {"missed", b.missed},
            {"failure_rate", b.failure_rate()},
        });
    }
    return {
        {"mode", scan.mode.name()},
        {"tolerance", scan.tolerance ? nlohmann::json(*scan.tolerance) : nlohmann::json("half-step")},
        {"seed", scan.seed},
        {"first_failure_p", optional_json(scan.first_failure_p)},
        {"first_failure", scan.first_failure ? to_json(*scan.first_failure) : nlohmann::json(nullptr)},
        {"scanned_p_max", scan.scanned_p_max},
        {"instances", scan.instances},
        {"failures", scan.failures},
        {"buckets", buckets},
    };
}

void emit_results(std::span<const SweepRecord> records, OutputFormat format,
                  const std::filesystem::path& destination) {
    std::ostringstream os;
    if (format == OutputFormat::Csv)
        write_csv(os, records);
    else
        os << to_json(records).dump(2) << '\n';
    write_file(destination, os.str());
}

void emit_results(const FitResult& fit, OutputFormat format,
                  const std::filesystem::path& destination) {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "exponent,intercept,r_squared,n_definition\n";
        os.precision(17);
        os << fit.exponent << ',' << fit.intercept << ',' << fit.r_squared << ','
           << to_string(fit.n_definition) << '\n';
    } else {
        os << to_json(fit).dump(2) << '\n';
    }
    write_file(destination, os.str());
}

void emit_results(const ScanReport& scan, OutputFormat format,
                  const std::filesystem::path& destination) {
    if (format == OutputFormat::Csv) {
        emit_results(std::span<const SweepRecord>(scan.records), format, destination);
        return;
    }
    auto doc = to_json(scan);
    doc["records"] = to_json(std::span<const SweepRecord>(scan.records));
    write_file(destination, doc.dump(2) + "\n");
}

}  // namespace rotorlog
