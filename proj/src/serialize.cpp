#include "bpmed/serialize.hpp"

#include <cstdio>

namespace bpmed {

nlohmann::json to_json(const MedianReport& r) {
  nlohmann::json medians = nlohmann::json::array();
  for (const auto& m : r.medians) medians.push_back(m.to_string());
  return {{"mu", r.mu}, {"medians", medians}, {"excess", r.excess}};
}

nlohmann::json to_json(const ExactProbability& p, int digits) {
  return {{"num", p.num().str()}, {"den", p.den().str()}, {"decimal", p.decimal(digits)}};
}

nlohmann::json inverse_report_json(const BigInt& count, const ExactProbability& p, int n, int k, int c) {
  return {{"count", count_string(count)}, {"probability", to_json(p)}, {"params", {{"n", n}, {"k", k}, {"c", c}}}};
}

std::string csv_header() { return "n,setting,estimate,stderr,closed_form,z"; }

namespace {
std::string fmt(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}
}  // namespace

std::string csv_row(int n, const std::string& setting, double estimate, const std::optional<double>& std_error,
                    const std::optional<double>& closed_form, const std::optional<double>& z) {
  return std::to_string(n) + "," + setting + "," + fmt(estimate) + "," + fmt(std_error) + "," + fmt(closed_form) +
         "," + fmt(z);
}

}  // namespace bpmed
