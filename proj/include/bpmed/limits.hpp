#pragma once

#include <cstdint>

namespace bpmed {

/// Guards against accidental exponential blowups. Every brute-force entry
/// point takes one of these; the CLI fills it from --max-n / BPMED_MAX_N.
struct Limits {
  int max_n = 9;                        // full S_n scans
  int max_free_slots = 30;              // inclusion-exclusion superset bitmask width
  int max_cover_bits = 32;              // (n-1)*k for cover-tuple enumeration
  std::uint64_t max_tuple_work = 2'000'000'000ULL;  // S_n^k oracle scans, in permutation visits
};

/// Worker budget for the OpenMP kernels. threads <= 0 means "use the runtime default".
struct Parallelism {
  int threads = 0;
};

}  // namespace bpmed
