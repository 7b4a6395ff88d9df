#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string_view>

#include <json.hpp>

#include "rotorlog/bench.hpp"

namespace rotorlog {

enum class OutputFormat { Csv, Json };

/// "csv" or "json".
OutputFormat parse_format(std::string_view text);

inline constexpr std::string_view csv_header =
    "p,x,y,k_true,k_found,additions,subtractions,comparisons,outer_steps,wall_ns,correct";

/// Header line plus one line per record. A missing exponent is an empty field.
void write_csv(std::ostream& os, std::span<const SweepRecord> records);

nlohmann::json to_json(const SweepRecord& r);
nlohmann::json to_json(std::span<const SweepRecord> records);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const BitGrowthReport& growth);
/// Summary fields only; records are emitted separately.
nlohmann::json to_json(const ScanReport& scan);

// Each overload writes `destination` in full and throws io_error naming the
// path when it cannot be opened or written.

void emit_results(std::span<const SweepRecord> records, OutputFormat format,
                  const std::filesystem::path& destination);

/// CSV is a header row and a single data row.
void emit_results(const FitResult& fit, OutputFormat format,
                  const std::filesystem::path& destination);

/// CSV carries the graded records; JSON carries the summary and the records.
void emit_results(const ScanReport& scan, OutputFormat format,
                  const std::filesystem::path& destination);

}  // namespace rotorlog
