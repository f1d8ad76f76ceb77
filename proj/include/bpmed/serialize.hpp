#pragma once

#include <string>

#include "json.hpp"

#include "bpmed/bigint.hpp"
#include "bpmed/counting.hpp"
#include "bpmed/median.hpp"
#include "bpmed/random_stats.hpp"

namespace bpmed {

// Counts go out as decimal strings: they routinely exceed 2^53.
inline std::string count_string(const BigInt& v) { return v.str(); }

nlohmann::json to_json(const MedianReport& r);
nlohmann::json to_json(const ExactProbability& p, int digits = 15);
/// {"count": "...", "probability": {...}, "params": {"n":..,"k":..,"c":..}}
nlohmann::json inverse_report_json(const BigInt& count, const ExactProbability& p, int n, int k, int c);

/// Header: n,setting,estimate,stderr,closed_form,z
std::string csv_header();
std::string csv_row(int n, const std::string& setting, double estimate, const std::optional<double>& std_error,
                    const std::optional<double>& closed_form, const std::optional<double>& z);

}  // namespace bpmed
