#ifndef HADKERNEL_EXPERIMENT_HPP
#define HADKERNEL_EXPERIMENT_HPP

// Bernoulli row sampling of the Hadamard matrix, exact kernel-witness search
// and counting over the Grassmannian, closed-form moments of the witness
// count X, the second-moment bound terms, and Monte-Carlo estimators. All
// randomness is counter-based: a sampled bit is a pure function of
// (seed, trial_index, bit_index), so parallel trial execution cannot perturb
// any result.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hadkernel/counting.hpp"
#include "hadkernel/errors.hpp"
#include "hadkernel/gf2.hpp"
#include "hadkernel/transform.hpp"

namespace hadkernel {

inline constexpr int kMaxSampleDim = 24;        // 2^24-bit masks
inline constexpr int kMaxWitnessComplementDim = 20;

// ---------------------------------------------------------------------------
// Counter-based randomness

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Uniform 64-bit word as a pure function of (seed, trial, index); each level
// advances a splitmix64 stream by the golden-ratio increment.
inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
  constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t h = mix64(seed + kGamma);
  h = mix64(h + kGamma * (trial + 1));
  return mix64(h + kGamma * (index + 1));
}

// Cutoff c such that P(u64 < c) = p up to 2^-64, for p in [0, 1).
inline std::uint64_t bernoulli_threshold(double p) {
  if (p <= 0.0) return 0;
  const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;  // 2^64
  if (scaled >= 18446744073709551615.0L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(scaled);
}

// ---------------------------------------------------------------------------
// Sampling

struct SamplingParams {
  int n = 1;          // N = 2^n
  int k = 0;          // K = 2^k
  double p_hat = 0;   // Bernoulli row-inclusion probability, in [0, 1)
  double c = 0.1;     // constant of the bound terms
  std::uint64_t seed = 0;

  SamplingParams() = default;
  SamplingParams(int n_, int k_, double p_hat_, double c_ = 0.1, std::uint64_t seed_ = 0)
      : n(n_), k(k_), p_hat(p_hat_), c(c_), seed(seed_) {
    if (n < 1 || n > kMaxCountingDim)
      throw dimension_error("SamplingParams: n must be in [1, 1024], got " + std::to_string(n));
    if (k < 0 || k > n) throw dimension_error("SamplingParams: need 0 <= k <= n");
    if (!(p_hat >= 0.0) || p_hat >= 1.0)
      throw dimension_error("SamplingParams: p_hat must lie in [0, 1)");
    if (!(c > 0.0)) throw dimension_error("SamplingParams: c must be positive");
    // sanity of the derived rate: p >= p_hat always, and p <= 2 p_hat in the
    // small-p_hat regime
    const double derived = p();
    if (derived < p_hat) throw dimension_error("SamplingParams: p < p_hat (impossible)");
    if (p_hat <= 0.5 && derived > 2.0 * p_hat)
      throw dimension_error("SamplingParams: p > 2 p_hat at p_hat <= 1/2 (impossible)");
  }

  double p() const { return -std::log1p(-p_hat); }
};

// The sampled row set Q as a length-2^n bitset plus its cardinality.
struct SampleMask {
  int n = 0;
  std::vector<std::uint64_t> words;
  std::uint64_t cardinality = 0;

  std::uint64_t size() const { return std::uint64_t{1} << n; }
  bool test(std::uint64_t j) const { return (words[j >> 6] >> (j & 63)) & 1u; }
  void set(std::uint64_t j) { words[j >> 6] |= std::uint64_t{1} << (j & 63); }
};

inline SampleMask sample_mask(const SamplingParams& params, std::uint64_t trial_index = 0) {
  if (params.n > kMaxSampleDim)
    throw dimension_error("sample_mask: n exceeds " + std::to_string(kMaxSampleDim));
  const std::uint64_t size = std::uint64_t{1} << params.n;
  SampleMask mask{params.n, std::vector<std::uint64_t>((size + 63) / 64, 0), 0};
  const std::uint64_t cut = bernoulli_threshold(params.p_hat);
  if (cut == 0) return mask;
  for (std::uint64_t j = 0; j < size; ++j) {
    if (counter_rng(params.seed, trial_index, j) < cut) {
      mask.set(j);
      ++mask.cardinality;
    }
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Witness search

// Outcome of a witness search or count. If a witness V is present, the span
// of V^perp avoids Q (re-checkable via verify_kernel); if an exact count is
// present and no witness is, the count is zero.
struct WitnessReport {
  std::optional<Subspace> witness;      // V in Gr(n,k) with Q ^ span(V^perp) empty
  std::optional<BigCount> exact_count;  // X = number of such V
  std::uint64_t nodes_explored = 0;
};

namespace experiment_detail {

// Depth-first construction of W = V^perp in Gr(n, m), m = n - k, as RREF
// bases with ascending pivots (rows in the order of the greedy minimal basis
// of W). Each subspace is reached exactly once, so counting needs no
// memoization; a branch dies as soon as one span element hits Q, and a pivot
// budget kills branches that cannot reach m ascending pivots. The first
// witness found is the one with the lexicographically least basis sequence.
struct WitnessSearch {
  int n = 0;
  int m = 0;
  const SampleMask* q = nullptr;
  std::vector<std::uint32_t> allowed;           // sorted complement of Q, zero excluded
  std::vector<std::uint32_t> first_at_least;    // first index in allowed with value >= 2^h
  std::vector<std::uint32_t> span;              // current span, span[0] = 0
  std::vector<std::uint64_t> rows;              // chosen rows, ascending pivot
  std::uint64_t pivot_mask = 0;
  std::uint64_t nodes = 0;
  std::uint64_t found_count = 0;
  bool count_all = false;
  std::vector<std::uint64_t> first_found;

  void prepare(const SampleMask& mask, int sparsity_exponent) {
    n = mask.n;
    m = n - sparsity_exponent;
    q = &mask;
    const std::uint64_t size = mask.size();
    allowed.clear();
    allowed.reserve(static_cast<std::size_t>(size - mask.cardinality));
    for (std::uint64_t j = 1; j < size; ++j)
      if (!mask.test(j)) allowed.push_back(static_cast<std::uint32_t>(j));
    first_at_least.assign(static_cast<std::size_t>(n) + 2, 0);
    for (int h = 0; h <= n + 1; ++h) {
      const std::uint64_t bound = std::uint64_t{1} << std::min(h, n);
      first_at_least[static_cast<std::size_t>(h)] = static_cast<std::uint32_t>(
          std::lower_bound(allowed.begin(), allowed.end(), h > n ? size : bound) - allowed.begin());
    }
    span.assign(1, 0);
    rows.clear();
    pivot_mask = 0;
    nodes = 0;
    found_count = 0;
    first_found.clear();
  }

  // i rows placed so far, last pivot h_last (-1 initially). Returns true when
  // the search can stop (find mode, witness located).
  bool dfs(int i, int h_last) {
    if (i == m) {
      if (found_count == 0) first_found = rows;
      ++found_count;
      return !count_all;
    }
    const int h_max = n - m + i;  // later rows still need m-i-1 higher pivots
    const std::uint32_t begin = first_at_least[static_cast<std::size_t>(h_last + 1)];
    const std::uint32_t end = first_at_least[static_cast<std::size_t>(h_max + 1)];
    const std::size_t span_size = span.size();
    for (std::uint32_t idx = begin; idx < end; ++idx) {
      const std::uint32_t b = allowed[idx];
      if (b & pivot_mask) continue;  // not reduced against chosen pivots
      bool clean = true;
      for (std::size_t s = 1; s < span_size; ++s) {
        if (q->test(b ^ span[s])) {
          clean = false;
          break;
        }
      }
      if (!clean) continue;
      ++nodes;
      for (std::size_t s = 0; s < span_size; ++s) span.push_back(b ^ span[s]);
      rows.push_back(b);
      const std::uint64_t pivot_bit = std::uint64_t{1} << gf2_detail::pivot(b);
      pivot_mask |= pivot_bit;
      const bool stop = dfs(i + 1, gf2_detail::pivot(b));
      pivot_mask &= ~pivot_bit;
      rows.pop_back();
      span.resize(span_size);
      if (stop) return true;
    }
    return false;
  }
};

inline void check_witness_guards(const SampleMask& q, int k) {
  if (q.n < 1 || q.n > kMaxSampleDim)
    throw dimension_error("witness search: n must be in [1, " + std::to_string(kMaxSampleDim) + "]");
  if (k < 0 || k > q.n) throw dimension_error("witness search: need 0 <= k <= n");
  if (q.n - k > kMaxWitnessComplementDim)
    throw dimension_error("witness search: n - k exceeds " +
                          std::to_string(kMaxWitnessComplementDim));
}

inline Subspace witness_from_rows(int n, std::vector<std::uint64_t> rows) {
  std::reverse(rows.begin(), rows.end());  // ascending pivots -> RREF order
  return orthogonal_complement(Subspace{n, std::move(rows)});
}

}  // namespace experiment_detail

// Some V in Gr(n,k) whose complement span avoids Q, if one exists. The
// returned V is deterministic: its complement has the lexicographically
// least greedy basis among all witnesses.
inline WitnessReport find_kernel_witness(const SampleMask& q, int k) {
  experiment_detail::check_witness_guards(q, k);
  WitnessReport report;
  if (q.test(0)) return report;  // 0 lies in every span
  experiment_detail::WitnessSearch search;
  search.prepare(q, k);
  search.count_all = false;
  search.dfs(0, -1);
  report.nodes_explored = search.nodes;
  if (search.found_count > 0)
    report.witness = experiment_detail::witness_from_rows(q.n, std::move(search.first_found));
  return report;
}

// Exact X = #{V in Gr(n,k): Q ^ span(V^perp) = empty} by pruned exhaustive
// enumeration; also carries the first witness when X > 0.
inline WitnessReport count_witnesses(const SampleMask& q, int k,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  experiment_detail::check_witness_guards(q, k);
  if (gf2_detail::grassmannian_size_estimate(q.n, q.n - k) >
      static_cast<long double>(budget) * 1.0000001L)
    throw budget_error("count_witnesses: |Gr(n,n-k)| exceeds budget " + std::to_string(budget));
  WitnessReport report;
  report.exact_count = BigCount(0);
  if (q.test(0)) return report;
  experiment_detail::WitnessSearch search;
  search.prepare(q, k);
  search.count_all = true;
  search.dfs(0, -1);
  report.nodes_explored = search.nodes;
  report.exact_count = BigCount(search.found_count);
  if (search.found_count > 0)
    report.witness = experiment_detail::witness_from_rows(q.n, std::move(search.first_found));
  return report;
}

// ---------------------------------------------------------------------------
// Moments

// ln E X = ln |Gr(n,k)| - p 2^{n-k}.
inline double first_moment_ln(const SamplingParams& params) {
  const double ln_gr = log2_big(gaussian_binomial(params.n, params.k)) * std::numbers::ln2;
  const double p = params.p();
  if (p == 0.0) return ln_gr;
  return ln_gr - p * std::exp2(params.n - params.k);
}

// Cov(X_U, X_V) / (E X_U)^2 = exp(p 2^d) - 1, d = dim(U^perp ^ V^perp).
inline double covariance_ratio(const Subspace& u, const Subspace& v, const SamplingParams& params) {
  if (u.ambient_dim != params.n || v.ambient_dim != params.n)
    throw dimension_error("covariance_ratio: ambient dimension mismatch");
  if (u.dim() != params.k || v.dim() != params.k)
    throw dimension_error("covariance_ratio: U, V must lie in Gr(n,k)");
  const int d = intersect(orthogonal_complement(u), orthogonal_complement(v)).dim();
  return std::expm1(params.p() * std::exp2(d));
}

// Same quantity by the inclusion-exclusion route: (1-p_hat)^{|U^perp u
// V^perp|} / (1-p_hat)^{2 |V^perp|} - 1 with |U^perp u V^perp| = 2^{n-k+1} -
// 2^d. Numerically independent of covariance_ratio (pow vs expm1); only
// usable where the powers do not underflow.
inline double covariance_ratio_direct(const Subspace& u, const Subspace& v,
                                      const SamplingParams& params) {
  if (u.ambient_dim != params.n || v.ambient_dim != params.n)
    throw dimension_error("covariance_ratio_direct: ambient dimension mismatch");
  if (u.dim() != params.k || v.dim() != params.k)
    throw dimension_error("covariance_ratio_direct: U, V must lie in Gr(n,k)");
  const int d = intersect(orthogonal_complement(u), orthogonal_complement(v)).dim();
  const double comp = std::exp2(params.n - params.k);
  const double union_size = 2.0 * comp - std::exp2(d);
  const double joint = std::pow(1.0 - params.p_hat, union_size);
  const double indep = std::pow(1.0 - params.p_hat, 2.0 * comp);
  return joint / indep - 1.0;
}

namespace experiment_detail {

// ln(e^x - 1), stable across the whole range.
inline double ln_expm1(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace experiment_detail

// Var X / (E X)^2 = sum_d T(n,k,d)/|Gr(n,k)|^2 (exp(p 2^d) - 1), evaluated
// from an exact pair-count table in log space with compensated summation.
inline double variance_ratio_exact(const SamplingParams& params, const PairCountTable& table) {
  if (table.n != params.n || table.k != params.k)
    throw dimension_error("variance_ratio_exact: table computed for different (n,k)");
  const auto [lo, hi] = intersection_dim_range(params.n, params.k);
  for (int d = lo; d <= hi; ++d)
    if (!table.counts.contains(d))
      throw dimension_error("variance_ratio_exact: table missing d = " + std::to_string(d));
  const double p = params.p();
  if (p == 0.0) return 0.0;
  const double ln2 = std::numbers::ln2;
  const double two_lg_gr = 2.0 * log2_big(gaussian_binomial(params.n, params.k));
  experiment_detail::KahanSum acc;
  for (const auto& [d, count] : table.counts) {
    if (count == 0) continue;
    const double ln_ratio = (log2_big(count) - two_lg_gr) * ln2;
    const double ln_term = ln_ratio + experiment_detail::ln_expm1(p * std::exp2(d));
    acc.add(std::exp(ln_term));
  }
  return acc.sum;
}

// Upper bound on the same sum with T(n,k,d) replaced by
// min(t_upper_bound(n,k,d), |Gr(n,k)|^2); usable at any scale.
inline double variance_ratio_bound(const SamplingParams& params) {
  const double p = params.p();
  if (p == 0.0) return 0.0;
  const auto [lo, hi] = intersection_dim_range(params.n, params.k);
  const double ln2 = std::numbers::ln2;
  const double two_lg_gr = 2.0 * log2_big(gaussian_binomial(params.n, params.k));
  experiment_detail::KahanSum acc;
  for (int d = lo; d <= hi; ++d) {
    const double ln_ratio =
        std::min(0.0, (log2_big(t_upper_bound(params.n, params.k, d)) - two_lg_gr) * ln2);
    const double ln_term = ln_ratio + experiment_detail::ln_expm1(p * std::exp2(d));
    acc.add(std::exp(ln_term));
  }
  return acc.sum;
}

// The two halves of the split second-moment sum, reduced to their closed
// bounds: term_i = 4c/n for the bulk, term_ii = 3 log2(n) 2^{(2c/ln2 - 1/2)
// k(n-k)} for the top band, plus the proof preconditions with margins.
struct BoundTerms {
  double term_i = 0;
  double term_ii = 0;
  bool hypothesis_ok = false;  // min(k, n-k) >= 12 log2 n
  double hypothesis_margin = 0;
  bool rate_ok = false;        // p 2^{n-k} <= 2 c k (n-k)
  double rate_margin = 0;
  bool exponent_ok = false;    // 2c/ln2 < 1/2
  double exponent_margin = 0;
  bool sum_below_one = false;  // term_i + term_ii < 1

  bool all_ok() const { return hypothesis_ok && rate_ok && exponent_ok && sum_below_one; }
};

inline BoundTerms paper_bound_terms(const SamplingParams& params) {
  BoundTerms out;
  const int n = params.n;
  const int k = params.k;
  const double log2n = std::log2(static_cast<double>(n));
  out.hypothesis_margin = static_cast<double>(std::min(k, n - k)) - 12.0 * log2n;
  out.hypothesis_ok = out.hypothesis_margin >= 0.0;
  const double kk = static_cast<double>(k) * static_cast<double>(n - k);
  const double rate = params.p() * std::exp2(n - k);
  out.rate_margin = 2.0 * params.c * kk - rate;
  out.rate_ok = out.rate_margin >= 0.0;
  out.exponent_margin = 0.5 - 2.0 * params.c / std::numbers::ln2;
  out.exponent_ok = out.exponent_margin > 0.0;
  out.term_i = 4.0 * params.c / static_cast<double>(n);
  const double exponent_bits = (2.0 * params.c / std::numbers::ln2 - 0.5) * kk;
  out.term_ii = 3.0 * log2n * std::exp2(exponent_bits);
  out.sum_below_one = out.term_i + out.term_ii < 1.0;
  return out;
}

enum class VarianceMode { kExact, kBound };

// Assembled second-moment report for one parameter point.
struct MomentReport {
  double ln_first_moment = 0;
  double variance_ratio = 0;
  VarianceMode variance_mode = VarianceMode::kExact;
  double chebyshev_bound = 0;  // min(1, variance_ratio)
  BoundTerms bounds;
};

enum class VarianceModeRequest { kAuto, kExact, kBound };

// Exact tables need one pivot-cell pass; feasible whenever C(n,k) cells fit
// the budget. kAuto takes the exact route when it can.
inline bool variance_exact_feasible(int n, int k, std::uint64_t budget = kDefaultEnumerationBudget) {
  return counting_detail::binomial_estimate(n, k) <= static_cast<long double>(budget) * 1.0000001L;
}

inline MomentReport moment_report(const SamplingParams& params,
                                  VarianceModeRequest request = VarianceModeRequest::kAuto,
                                  std::uint64_t budget = kDefaultEnumerationBudget) {
  MomentReport out;
  out.ln_first_moment = first_moment_ln(params);
  const bool exact = request == VarianceModeRequest::kExact ||
                     (request == VarianceModeRequest::kAuto &&
                      variance_exact_feasible(params.n, params.k, budget));
  if (exact) {
    const PairCountTable table =
        pair_count_table(params.n, params.k, PairCountMode::kAuto, budget);
    out.variance_ratio = variance_ratio_exact(params, table);
    out.variance_mode = VarianceMode::kExact;
  } else {
    out.variance_ratio = variance_ratio_bound(params);
    out.variance_mode = VarianceMode::kBound;
  }
  out.chebyshev_bound = std::min(1.0, out.variance_ratio);
  out.bounds = paper_bound_terms(params);
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimators

namespace experiment_detail {

// Deterministic parallel map over trial indices: every slot is a pure
// function of its index, so the reduction order never depends on threads.
template <class Fn>
void parallel_trials(std::uint64_t trials, int threads, Fn&& fn) {
  if (threads <= 1 || trials < 2) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const int workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), trials);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t t = static_cast<std::uint64_t>(w); t < trials;
           t += static_cast<std::uint64_t>(workers))
        fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace experiment_detail

// Witness-existence frequency over independent reproducible trials.
struct ExistenceEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double fraction = 0;
  double std_error = 0;          // binomial
  double mean_cardinality = 0;   // mean |Q|
  std::uint64_t total_nodes = 0;
};

inline ExistenceEstimate estimate_existence_probability(const SamplingParams& params,
                                                        std::uint64_t trials, int threads = 1) {
  if (params.n > kMaxSampleDim || params.n - params.k > kMaxWitnessComplementDim)
    throw dimension_error("estimate_existence_probability: witness-search guards exceeded");
  std::vector<std::uint8_t> hit(trials, 0);
  std::vector<std::uint32_t> cardinality(trials, 0);
  std::vector<std::uint64_t> nodes(trials, 0);
  experiment_detail::parallel_trials(trials, threads, [&](std::uint64_t t) {
    const SampleMask q = sample_mask(params, t);
    const WitnessReport r = find_kernel_witness(q, params.k);
    hit[t] = r.witness.has_value() ? 1 : 0;
    cardinality[t] = static_cast<std::uint32_t>(q.cardinality);
    nodes[t] = r.nodes_explored;
  });
  ExistenceEstimate est;
  est.trials = trials;
  std::uint64_t card_sum = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    est.hits += hit[t];
    card_sum += cardinality[t];
    est.total_nodes += nodes[t];
  }
  if (trials > 0) {
    est.fraction = static_cast<double>(est.hits) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(trials));
    est.mean_cardinality = static_cast<double>(card_sum) / static_cast<double>(trials);
  }
  return est;
}

// Fraction of trials in which Q avoids span(U^perp) u span(V^perp): a direct
// Monte-Carlo estimate of E[X_U X_V]. Only the union's bits are evaluated,
// consistent with full-mask sampling because bits are counter-indexed.
struct PairEventEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double fraction = 0;
  double std_error = 0;
};

inline PairEventEstimate estimate_pair_event(const SamplingParams& params, const Subspace& u,
                                             const Subspace& v, std::uint64_t trials,
                                             int threads = 1) {
  if (u.ambient_dim != params.n || v.ambient_dim != params.n)
    throw dimension_error("estimate_pair_event: ambient dimension mismatch");
  std::vector<std::uint64_t> points = span_elements(orthogonal_complement(u));
  for (std::uint64_t x : span_elements(orthogonal_complement(v))) points.push_back(x);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::uint64_t cut = bernoulli_threshold(params.p_hat);
  std::vector<std::uint8_t> hit(trials, 0);
  experiment_detail::parallel_trials(trials, threads, [&](std::uint64_t t) {
    for (std::uint64_t x : points)
      if (counter_rng(params.seed, t, x) < cut) return;
    hit[t] = 1;
  });
  PairEventEstimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) est.hits += hit[t];
  if (trials > 0) {
    est.fraction = static_cast<double>(est.hits) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(trials));
  }
  return est;
}

// ---------------------------------------------------------------------------
// Kernel verification and the non-injectivity split

// Exact disjointness pre-check, then the float residual: max over sampled
// rows of |(H 1_V)(row)|. At most 1e-10 for a genuine witness.
inline double verify_kernel(const SampleMask& q, const Subspace& v) {
  if (v.ambient_dim != q.n) throw dimension_error("verify_kernel: ambient dimension mismatch");
  const Subspace w = orthogonal_complement(v);
  for (std::uint64_t x : span_elements(w))
    if (q.test(x))
      throw validation_error("verify_kernel: witness invalid, complement span meets Q at row " +
                             std::to_string(x));
  const DenseVector transformed = fwht(indicator_vector(v));
  double worst = 0.0;
  const std::uint64_t size = q.size();
  for (std::uint64_t j = 0; j < size; ++j)
    if (q.test(j)) worst = std::max(worst, std::abs(transformed.entries[j]));
  return worst;
}

// Split x = 1_V (V of dimension k+1, so x is 2K-sparse) into x = y - z with
// disjoint K-sparse halves: ascending support order, y keeps the first half
// of x, z carries the negated second half.
inline std::pair<DenseVector, DenseVector> non_injectivity_pair(const Subspace& v) {
  transform_detail::check_transform_dim(v.ambient_dim, "non_injectivity_pair");
  if (v.dim() < 1)
    throw dimension_error("non_injectivity_pair: V must have dimension k+1 >= 1");
  std::vector<std::uint64_t> support = span_elements(v);
  std::sort(support.begin(), support.end());
  const std::size_t half = support.size() / 2;
  const double value = std::exp2(-0.5 * v.dim());
  const std::size_t size = std::size_t{1} << v.ambient_dim;
  DenseVector y{v.ambient_dim, std::vector<double>(size, 0.0)};
  DenseVector z{v.ambient_dim, std::vector<double>(size, 0.0)};
  for (std::size_t i = 0; i < half; ++i) y.entries[support[i]] = value;
  for (std::size_t i = half; i < support.size(); ++i) z.entries[support[i]] = -value;
  return {std::move(y), std::move(z)};
}

}  // namespace hadkernel

#endif  // HADKERNEL_EXPERIMENT_HPP
