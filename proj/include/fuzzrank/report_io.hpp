#pragma once

#include <string>
#include <vector>

#include "fuzzrank/evaluation.hpp"
#include "fuzzrank/fuzzy_ensemble.hpp"

// Serialization of results to JSON and RFC-4180 CSV. JSON field names are a
// stable interface (documented in the README); every JSON file carries a
// "config" echo of the resolved run configuration and a "timestamp" key,
// which is the only field that differs between reruns of the same command.

namespace fuzzrank {

// Forward-declared to keep nlohmann/json out of this header; the string
// outputs are fully formed documents.
std::string ranking_json(const RankingResult& result, const std::string& config_echo_json,
                         const std::string& timestamp);
std::vector<std::vector<std::string>> ranking_csv_rows(const RankingResult& result);

std::string accuracy_json(const std::string& dataset_name, ClassifierKind classifier,
                          std::size_t folds, std::uint64_t seed,
                          const std::vector<AccuracyCurve>& curves,
                          const std::string& config_echo_json, const std::string& timestamp);
std::vector<std::vector<std::string>> accuracy_curves_csv_rows(
    const std::vector<AccuracyCurve>& curves);
std::vector<std::vector<std::string>> accuracy_summary_csv_rows(
    const std::vector<AccuracyCurve>& curves);

std::string stability_json(const std::string& dataset_name, std::size_t folds, std::uint64_t seed,
                           const std::vector<StabilityReport>& reports,
                           const std::vector<SubsampleCurve>& curves,
                           const std::string& config_echo_json, const std::string& timestamp);
std::vector<std::vector<std::string>> stability_table_csv_rows(
    const std::vector<StabilityReport>& reports);
std::vector<std::vector<std::string>> subsample_curves_csv_rows(
    const std::vector<SubsampleCurve>& curves);

// Current UTC time as ISO-8601 (e.g. "2026-08-25T12:34:56Z").
std::string utc_timestamp();

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fuzzrank
