#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmed/limits.hpp"

namespace bpmed::acceptance {

enum class Level { quick, full };

std::optional<Level> parse_level(std::string_view text);

struct Options {
  Level level = Level::full;
  /// Run the type-sum checks with the uncorrected placement formula.
  bool force_literal = false;
  Parallelism par{};
  std::uint64_t seed = 20240601;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // sizes covered on success, the first counterexample on failure
  double seconds = 0;
};

/// Runs criteria 1..9 in order; `on_result` fires as each one finishes.
std::vector<CriterionResult> run(const Options& opts,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  partition and Möbius identities  (0.42 s)  detail"
std::string format(const CriterionResult& r);

}  // namespace bpmed::acceptance
