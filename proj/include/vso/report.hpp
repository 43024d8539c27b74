#pragma once

#include "vso/experiment.hpp"
#include "vso/run_record.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vso {

/// Two mantissa digits, upper-case exponent: 1.92E+06.
[[nodiscard]] std::string format_scientific(double value);

/// Header: Algorithm,Function,Dimension,Mean,Std,Best,Worst,Time(s)
[[nodiscard]] std::string summary_csv(const std::vector<SummaryRow>& rows);
[[nodiscard]] std::string summary_json(const std::vector<SummaryRow>& rows);
/// Header: iteration,best_fitness; values printed round-trip exact.
[[nodiscard]] std::string trace_csv(const RunRecord& record);

[[nodiscard]] std::vector<SummaryRow> parse_summary_json(const std::string& text);
[[nodiscard]] std::vector<SummaryRow> parse_summary_csv(const std::string& text);

/// Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

/// Loads a summary by extension (.json, otherwise CSV).
[[nodiscard]] std::vector<SummaryRow> load_summary(const std::filesystem::path& path);

/// Writes summary.csv, summary.json and traces/<algo>_<function>_D<dim>_seed<seed>.csv.
void export_results(const std::filesystem::path& dir, const SummaryRow& summary, const std::vector<RunRecord>& records);

[[nodiscard]] std::string trace_file_name(const SummaryRow& summary, const RunRecord& record);

} // namespace vso
