#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bpmed {

/// Arbitrary-precision signed integer. Alternating sums run signed; final
/// counts are checked nonnegative by their producers.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);

/// C(a, b); zero when b < 0, b > a or a < 0.
BigInt binomial(long long a, long long b);

BigInt pow2(long long e);

}  // namespace bpmed
