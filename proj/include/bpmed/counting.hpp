#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpmed/bigint.hpp"
#include "bpmed/limits.hpp"
#include "bpmed/permutation.hpp"
#include "bpmed/segment.hpp"

namespace bpmed {

/// Reduced fraction in [0, 1].
class ExactProbability {
 public:
  ExactProbability(BigInt num, BigInt den);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  /// Rounded half-up to `digits` places after the point.
  std::string decimal(int digits = 15) const;
  std::string to_string() const;  // "7/9"
  double to_double() const;

  bool operator==(const ExactProbability&) const = default;

 private:
  BigInt num_;
  BigInt den_;
};

/// |R_n(J)| = 2^{||J||} (n - |J|)!.
BigInt permutations_containing(const SegmentSet& j, int n);

/// The same count read off a type vector relative to a base I:
/// 2^{||I|| + Σruns - Σtouches} (n - |I| - Σtaken)!.
BigInt permutations_containing_by_type(const GapDecomposition& d, const TypeVector& t);

/// Variant exponent of 2 with |I| in place of ||I||; audit only.
BigInt permutations_containing_by_type_literal(const GapDecomposition& d, const TypeVector& t);

/// |H_p(I)| = #{x in S_n : A_{p,x} = I}, by scanning S_n. OpenMP over rank ranges.
BigInt h_count_brute(const Permutation& p, const SegmentSet& base, const Limits& limits = {},
                     Parallelism par = {});
BigInt h_count_brute_serial(const Permutation& p, const SegmentSet& base, const Limits& limits = {});

/// Σ_{I ⊆ J ⊆ A_p} (-1)^{|J \ I|} |R_n(J)| over a bitmask of the free slots.
BigInt h_count_inclusion_exclusion(const Permutation& p, const SegmentSet& base, const Limits& limits = {});

/// Σ over types λ of (-1)^{Σtaken} · multiplicity(λ) · |R_n(J_λ)|.
BigInt h_count_by_type(const Permutation& p, const SegmentSet& base, CountingMode mode = CountingMode::corrected);

/// One type's contribution to h_count_by_type, for inspection.
struct TypeTerm {
  TypeVector type;
  BigInt multiplicity;
  BigInt containing;
  BigInt signed_term;
};
std::vector<TypeTerm> h_count_type_terms(const Permutation& p, const SegmentSet& base,
                                         CountingMode mode = CountingMode::corrected);

/// |H_p(J)| for every J ⊆ A_p, indexed by slot mask (2^{n-1} entries).
/// Computed by type sums; requires n - 1 <= limits.max_free_slots.
std::vector<BigInt> h_count_table(const Permutation& p, const Limits& limits = {});

}  // namespace bpmed
