#include "bpmed/random_stats.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"

namespace bpmed {

namespace {
void require_n2(int n) {
  if (n < 2) throw ValidationError("closed-form moments need n >= 2, got " + std::to_string(n));
}
BigRational frac(long long a, long long b) { return BigRational(BigInt(a), BigInt(b)); }
}  // namespace

BigRational expected_common_closed(int n) {
  require_n2(n);
  return frac(2LL * (n - 1), n);
}

BigRational expected_distance_closed(int n) {
  require_n2(n);
  return BigRational(n - 1) - frac(2LL * (n - 1), n);
}

BigRational variance_distance_closed(int n) {
  require_n2(n);
  const long long nn = n;
  return (BigRational(2) - frac(2, nn)) * (BigRational(-1) + frac(2, nn)) +
         frac(4 * (nn - 2) * (nn - 2), nn * (nn - 1));
}

BigRational variance_distance_expanded(int n) {
  require_n2(n);
  const long long nn = n;
  const BigRational e = frac(2 * (nn - 1), nn);
  return e * (BigRational(1) - e) + frac(4 * (nn - 2) * (nn - 3), nn * (nn - 1)) + frac(4 * (nn - 2), nn * (nn - 1));
}

MomentReport moments_closed(int n) {
  return MomentReport{n, expected_common_closed(n), expected_distance_closed(n), variance_distance_closed(n)};
}

namespace {
std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix(s);
  std::uint64_t t = stream ^ a;
  state_ = splitmix(t) ^ splitmix(s);
}

std::uint64_t TrialRng::next() { return splitmix(state_); }

std::uint64_t TrialRng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Permutation uniform_permutation(int n, TrialRng& rng) {
  if (n < 1) throw ValidationError("uniform_permutation needs n >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i > 0; --i)
    std::swap(v[static_cast<std::size_t>(i)], v[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return Permutation(std::move(v));
}

namespace {

int common_with_identity(const Permutation& x) {
  int c = 0;
  for (int i = 0; i + 1 < x.size(); ++i) c += std::abs(x[i] - x[i + 1]) == 1;
  return c;
}

// Per-trial |A_{id,ξ}| tallied into an exact histogram.
std::vector<std::uint64_t> common_histogram(int n, std::uint64_t trials, std::uint64_t seed, int threads) {
  const std::size_t bins = static_cast<std::size_t>(std::max(n, 1));
  const auto t = static_cast<long long>(trials);
  std::vector<std::uint64_t> hist(bins, 0);
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static)
    for (long long i = 0; i < t; ++i) {
      TrialRng rng(seed, static_cast<std::uint64_t>(i));
      ++local[static_cast<std::size_t>(common_with_identity(uniform_permutation(n, rng)))];
    }
#pragma omp critical
    for (std::size_t b = 0; b < bins; ++b) hist[b] += local[b];
  }
  return hist;
}

int thread_count(Parallelism par) { return par.threads > 0 ? par.threads : omp_get_max_threads(); }

void require_trials(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (cfg.n < 1) throw ValidationError("n must be >= 1");
}

}  // namespace

MonteCarloMoments mc_moments(const TrialConfig& cfg, Parallelism par) {
  require_trials(cfg);
  require_n2(cfg.n);
  MonteCarloMoments r;
  r.trials = cfg.trials;
  r.histogram = common_histogram(cfg.n, cfg.trials, cfg.seed, thread_count(par));
  // Exact integer sums, so the floating result is independent of scheduling.
  BigInt s1 = 0, s2 = 0;
  for (std::size_t c = 0; c < r.histogram.size(); ++c) {
    s1 += BigInt(r.histogram[c]) * c;
    s2 += BigInt(r.histogram[c]) * c * c;
  }
  const BigRational t(BigInt(cfg.trials));
  const BigRational mean = BigRational(s1) / t;
  r.mean = static_cast<double>(mean);
  if (cfg.trials > 1) {
    const BigRational var = (BigRational(s2) - t * mean * mean) / (t - 1);
    r.variance = static_cast<double>(var);
    r.std_error = std::sqrt(r.variance / static_cast<double>(cfg.trials));
  }
  r.closed_mean = static_cast<double>(expected_common_closed(cfg.n));
  r.closed_variance = static_cast<double>(variance_distance_closed(cfg.n));
  if (r.std_error && *r.std_error > 0) r.z = (r.mean - r.closed_mean) / *r.std_error;
  return r;
}

TailEstimate tail_fraction(const TrialConfig& cfg, Parallelism par) {
  require_trials(cfg);
  const double a_n = cfg.threshold_scale ? *cfg.threshold_scale : std::log2(static_cast<double>(cfg.n));
  if (!(a_n > 0)) throw ValidationError("threshold scale a_n must be > 0");
  TailEstimate r;
  r.n = cfg.n;
  r.threshold = cfg.epsilon * a_n;
  r.trials = cfg.trials;
  const auto hist = common_histogram(cfg.n, cfg.trials, cfg.seed, thread_count(par));
  for (std::size_t c = 0; c < hist.size(); ++c)
    if (static_cast<double>(c) >= r.threshold) r.hits += hist[c];
  r.fraction = static_cast<double>(r.hits) / static_cast<double>(r.trials);
  r.std_error = std::sqrt(r.fraction * (1 - r.fraction) / static_cast<double>(r.trials));
  if (cfg.n >= 2) {
    const double e = static_cast<double>(expected_common_closed(cfg.n));
    const double v = static_cast<double>(variance_distance_closed(cfg.n));
    const double gap = r.threshold - e;
    r.chebyshev_bound = gap > 0 ? v / (v + gap * gap) : 1.0;
  }
  return r;
}

MedianProbabilityEstimate mc_median_probability(const Permutation& p, int slack, const TrialConfig& cfg,
                                                const Limits& limits, Parallelism par) {
  require_trials(cfg);
  if (cfg.k < 1) throw ValidationError("k must be >= 1");
  if (slack < 0) throw ValidationError("slack c must be >= 0");
  const int n = p.size();
  if (n > limits.max_n) throw SizeLimitError("mc_median_probability: n=" + std::to_string(n) + " exceeds limit");

  std::vector<Permutation> reps;
  for (const auto& c : enumerate_classes(n, limits)) reps.push_back(c.representative());

  MedianProbabilityEstimate r;
  r.trials = cfg.trials;
  r.slack = slack;
  const auto t = static_cast<long long>(cfg.trials);
  std::uint64_t hits = 0;
  int max_excess = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : hits) reduction(max : max_excess) \
    num_threads(thread_count(par))
  for (long long i = 0; i < t; ++i) {
    TrialRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::vector<Permutation> xs;
    std::vector<AdjacencyIndex> idx;
    for (int j = 0; j < cfg.k; ++j) {
      xs.push_back(uniform_permutation(n, rng));
      idx.emplace_back(xs.back());
    }
    int best = -1;
    for (const auto& rep : reps) {
      int shared = 0;
      for (const auto& ix : idx) shared += ix.shared_with(rep.values());
      best = std::max(best, shared);
    }
    int mine = 0;
    for (const auto& ix : idx) mine += ix.shared_with(p.values());
    if (mine == best) {
      ++hits;
      int excess = 0;
      for (int s = 0; s + 1 < n; ++s) {
        bool covered = false;
        for (const auto& ix : idx) covered = covered || ix.has(p[s], p[s + 1]);
        excess += !covered;
      }
      max_excess = std::max(max_excess, excess);
    }
  }
  r.hits = hits;
  r.max_excess = max_excess;
  r.estimate = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(cfg.trials));
  r.l_probability = l_inverse_probability(p, cfg.k, slack, limits, par);
  r.dominated = r.estimate <= r.l_probability.to_double() + 4 * r.std_error;
  return r;
}

}  // namespace bpmed
