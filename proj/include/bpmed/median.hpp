#pragma once

#include <span>
#include <vector>

#include "bpmed/limits.hpp"
#include "bpmed/permutation.hpp"

namespace bpmed {

struct MedianReport {
  std::vector<Permutation> inputs;
  int mu = 0;
  /// All minimizers over S_n in lexicographic order; closed under reversal.
  std::vector<Permutation> medians;
  /// |A_π \ ⋃ A_x| for each entry of `medians`.
  std::vector<int> excess;
};

/// Scans the n!/2 class representatives and expands each minimizing class to
/// both orientations. OpenMP over rank ranges; the result does not depend on
/// the thread count.
MedianReport medians_brute(std::span<const Permutation> xs, const Limits& limits = {}, Parallelism par = {});
MedianReport medians_brute_serial(std::span<const Permutation> xs, const Limits& limits = {});

/// min over S_n of d_T(·, X), without collecting the argmin set.
int median_value(std::span<const Permutation> xs, const Limits& limits = {});

bool is_median(const Permutation& p, std::span<const Permutation> xs, const Limits& limits = {});

struct GeodesicCertificate {
  bool geodesic = false;
  bool distance_identity = false;        // d(x,y) = d(x,z) + d(z,y)
  AdjacencySet missing_common;           // A_{x,y} \ A_z
  AdjacencySet foreign;                  // A_z \ (A_x ∪ A_y)
};

/// Evaluates the distance identity and the adjacency sandwich
/// A_{x,y} ⊆ A_z ⊆ A_x ∪ A_y; throws VerificationError if they disagree.
GeodesicCertificate is_geodesic(const Permutation& z, const Permutation& x, const Permutation& y);

/// A_p ⊆ ⋃_{x∈X} A_x.
bool coverage_criterion(const Permutation& p, std::span<const Permutation> xs);

struct ExtremeMedianCheck {
  std::vector<Permutation> covered;  // {p : coverage_criterion(p, X)}
  std::vector<Permutation> medians;  // medians_brute(X).medians
  bool equal = false;
};

/// Requires is_max_distance_set(X) (ValidationError otherwise).
ExtremeMedianCheck extreme_median_check(std::span<const Permutation> xs, const Limits& limits = {},
                                        Parallelism par = {});

}  // namespace bpmed
