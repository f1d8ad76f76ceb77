#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bpmed/bigint.hpp"
#include "bpmed/counting.hpp"
#include "bpmed/limits.hpp"
#include "bpmed/permutation.hpp"

namespace bpmed {

/// Moments of |A_{id,ξ}| and d(id, ξ) for ξ uniform on S_n.
struct MomentReport {
  int n = 0;
  BigRational expected_common;  // 2(n-1)/n
  BigRational expected_distance;
  BigRational variance;  // shared by |A_{id,ξ}| and the distance
};

BigRational expected_common_closed(int n);
BigRational expected_distance_closed(int n);
/// (2 - 2/n)(-1 + 2/n) + 4(n-2)^2 / (n(n-1)).
BigRational variance_distance_closed(int n);
/// Unsimplified form of the same quantity, kept as a cross-check.
BigRational variance_distance_expanded(int n);
MomentReport moments_closed(int n);

/// SplitMix64 keyed by (seed, stream index): each trial owns an independent
/// substream, so results do not depend on how trials are scheduled.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  /// Exactly uniform on [0, bound) (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Fisher-Yates over 1..n.
Permutation uniform_permutation(int n, TrialRng& rng);

struct TrialConfig {
  int n = 3;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int k = 2;
  double epsilon = 1.0;
  /// a_n; defaults to log2(n) when unset.
  std::optional<double> threshold_scale;
};

struct MonteCarloMoments {
  std::uint64_t trials = 0;
  double mean = 0;
  double variance = 0;            // sample variance (n-1 denominator); 0 when trials == 1
  std::optional<double> std_error;  // absent for a single trial
  double closed_mean = 0;
  double closed_variance = 0;
  std::optional<double> z;
  std::vector<std::uint64_t> histogram;  // histogram[c] = trials with |A_{id,ξ}| = c
};

MonteCarloMoments mc_moments(const TrialConfig& cfg, Parallelism par = {});

struct TailEstimate {
  int n = 0;
  double threshold = 0;  // ε a_n
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double fraction = 0;
  double std_error = 0;
  /// One-sided Chebyshev bound on P(|A_{id,ξ}| >= threshold) from the closed moments.
  double chebyshev_bound = 1;
};

/// Fraction of trials with n-1-d(id, ξ) >= ε a_n.
TailEstimate tail_fraction(const TrialConfig& cfg, Parallelism par = {});

struct MedianProbabilityEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double estimate = 0;
  double std_error = 0;
  int max_excess = 0;  // largest |A_p \ ⋃A_ξ| over trials where p was a median
  int slack = 0;
  ExactProbability l_probability{0, 1};
  /// estimate <= P(L^{-1}_{n,k,c}) + 4 SE; only meaningful when slack >= max_excess.
  bool dominated = false;
};

/// Samples k-tuples and checks exactly whether p is a breakpoint median.
MedianProbabilityEstimate mc_median_probability(const Permutation& p, int slack, const TrialConfig& cfg,
                                                const Limits& limits = {}, Parallelism par = {});

}  // namespace bpmed
