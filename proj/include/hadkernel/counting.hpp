#ifndef HADKERNEL_COUNTING_HPP
#define HADKERNEL_COUNTING_HPP

// Exact combinatorics for subspace counts: Gaussian binomials, the pair
// counts T(n,k,d) classified by intersection dimension of the complements,
// and the exact big-integer inequality checks behind the second-moment
// bound. No floating point is used on any counting path; doubles appear only
// in reported margins (log2 of exact integers).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hadkernel/errors.hpp"
#include "hadkernel/gf2.hpp"

namespace hadkernel {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr int kMaxCountingDim = 1024;

// |Gr(n,d)| by the product formula: all numerators multiplied out, then one
// exact division (the quotient is integral).
inline BigCount gaussian_binomial(int n, int d) {
  if (n < 0 || n > kMaxCountingDim)
    throw dimension_error("gaussian_binomial: n must be in [0, 1024], got " + std::to_string(n));
  if (d < 0 || d > n)
    throw dimension_error("gaussian_binomial: need 0 <= d <= n");
  BigCount num = 1, den = 1;
  const BigCount two_n = BigCount(1) << n;
  const BigCount two_d = BigCount(1) << d;
  for (int j = 0; j < d; ++j) {
    const BigCount two_j = BigCount(1) << j;
    num *= two_n - two_j;
    den *= two_d - two_j;
  }
  return num / den;
}

// Strict bracketing 2^{d(n-d)} < |Gr(n,d)| < 2^{d(n-d+1)}, valid for proper
// nontrivial subspaces only; the extremes d = 0 and d = n are rejected.
inline std::pair<BigCount, BigCount> grassmannian_bounds(int n, int d) {
  if (d <= 0 || d >= n)
    throw dimension_error("grassmannian_bounds: need 0 < d < n (strictness fails at extremes)");
  return {BigCount(1) << (static_cast<unsigned>(d) * static_cast<unsigned>(n - d)),
          BigCount(1) << (static_cast<unsigned>(d) * static_cast<unsigned>(n - d + 1))};
}

// For U, V in Gr(n,k): dim(U^perp intersect V^perp) lies in this closed range.
inline std::pair<int, int> intersection_dim_range(int n, int k) {
  if (k < 0 || k > n) throw dimension_error("intersection_dim_range: need 0 <= k <= n");
  return {std::max(n - 2 * k, 0), n - k};
}

// log2 of a positive exact integer: exact bit length plus a correction from
// the leading 64-bit window. Absolute error is a few ulp of the window.
inline double log2_big(const BigCount& x) {
  if (x <= 0) throw dimension_error("log2_big: argument must be positive");
  const unsigned bits = boost::multiprecision::msb(x);  // index of top bit
  if (bits <= 62) return std::log2(x.convert_to<double>());
  const BigCount top = x >> (bits - 63);
  return static_cast<double>(bits - 63) + std::log2(static_cast<double>(top.convert_to<std::uint64_t>()));
}

// Exact counts of ordered pairs (U,V) in Gr(n,k)^2 keyed by
// d = dim(U^perp intersect V^perp). Supported keys span
// [max(n-2k,0), n-k] and the counts sum to |Gr(n,k)|^2.
struct PairCountTable {
  int n = 0;
  int k = 0;
  std::map<int, BigCount> counts;

  BigCount total() const {
    BigCount t = 0;
    for (const auto& [d, c] : counts) t += c;
    return t;
  }
};

enum class PairCountMode {
  kAuto,            // cheapest feasible route below
  kExhaustivePairs, // double loop over Gr(n,k)^2
  kFixedFirst,      // fix U_0, enumerate V once, multiply by |Gr(n,k)|
  kSchubertCells,   // aggregate whole pivot cells of V at once
};

namespace counting_detail {

inline long double binomial_estimate(int n, int k) {
  long double r = 1.0L;
  for (int j = 1; j <= k; ++j) r *= static_cast<long double>(n - k + j) / static_cast<long double>(j);
  return r;
}

// d = n - dim(U + V) from stacked bases.
inline int pair_intersection_dim(int n, const std::vector<std::uint64_t>& u_rows,
                                 const std::vector<std::uint64_t>& v_rows) {
  std::uint64_t rows[64];
  int rank = 0;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < rank; ++i)
      if ((v >> gf2_detail::pivot(rows[i])) & 1u) v ^= rows[i];
    if (v != 0) rows[rank++] = v;
  };
  for (std::uint64_t r : u_rows) feed(r);
  for (std::uint64_t r : v_rows) feed(r);
  return n - rank;
}

inline PairCountTable pairs_exhaustive(int n, int k, std::uint64_t budget) {
  const long double sz = gf2_detail::grassmannian_size_estimate(n, k);
  if (sz * sz > static_cast<long double>(budget) * 1.0000001L)
    throw budget_error("pair_count_table: |Gr|^2 exceeds budget in exhaustive mode");
  std::vector<Subspace> all = enumerate_grassmannian(n, k, budget);
  PairCountTable t{n, k, {}};
  for (const Subspace& u : all)
    for (const Subspace& v : all)
      t.counts[pair_intersection_dim(n, u.basis, v.basis)] += 1;
  return t;
}

inline PairCountTable pairs_fixed_first(int n, int k, std::uint64_t budget) {
  if (gf2_detail::grassmannian_size_estimate(n, k) > static_cast<long double>(budget) * 1.0000001L)
    throw budget_error("pair_count_table: |Gr| exceeds budget in fixed-first mode");
  // GL(n,2) acts transitively on Gr(n,k), so the distribution of
  // dim(U^perp ^ V^perp) over V is the same for every U; fix U_0 = span of
  // the first k standard basis vectors and scale by |Gr(n,k)|.
  std::vector<std::uint64_t> u0;
  for (int i = k - 1; i >= 0; --i) u0.push_back(std::uint64_t{1} << i);
  PairCountTable t{n, k, {}};
  for_each_subspace(n, k, [&](const Subspace& v) {
    t.counts[pair_intersection_dim(n, u0, v.basis)] += 1;
  });
  const BigCount scale = gaussian_binomial(n, k);
  for (auto& [d, c] : t.counts) c *= scale;
  return t;
}

inline PairCountTable pairs_schubert_cells(int n, int k, std::uint64_t budget) {
  if (binomial_estimate(n, k) > static_cast<long double>(budget) * 1.0000001L)
    throw budget_error("pair_count_table: pivot cell count exceeds budget in cell mode");
  // With U_0 = span(e_0..e_{k-1}), project V onto coordinates >= k. RREF rows
  // have no bits above their pivot, so rows with pivot < k project to zero
  // and rows with pivot >= k stay independent:
  //   dim(U_0 + V) = k + #{pivots of V >= k},
  // which depends on V only through its pivot cell. Each cell with pivots
  // p_0 > ... > p_{k-1} holds 2^{sum p_i - k(k-1)/2} subspaces.
  PairCountTable t{n, k, {}};
  if (k == 0) {
    t.counts[n] = 1;
    return t;
  }
  gf2_detail::for_each_pivot_combination(n, k, [&](std::span<const int> c) {
    int free_bits = -k * (k - 1) / 2;
    int high = 0;
    for (int p : c) {
      free_bits += p;
      if (p >= k) ++high;
    }
    t.counts[n - k - high] += BigCount(1) << free_bits;
  });
  const BigCount scale = gaussian_binomial(n, k);
  for (auto& [d, c] : t.counts) c *= scale;
  return t;
}

}  // namespace counting_detail

inline PairCountTable pair_count_table(int n, int k, PairCountMode mode = PairCountMode::kAuto,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  gf2_detail::check_ambient(n);
  if (k < 0 || k > n) throw dimension_error("pair_count_table: need 0 <= k <= n");
  const long double b = static_cast<long double>(budget) * 1.0000001L;
  switch (mode) {
    case PairCountMode::kExhaustivePairs:
      return counting_detail::pairs_exhaustive(n, k, budget);
    case PairCountMode::kFixedFirst:
      return counting_detail::pairs_fixed_first(n, k, budget);
    case PairCountMode::kSchubertCells:
      return counting_detail::pairs_schubert_cells(n, k, budget);
    case PairCountMode::kAuto: {
      const long double sz = gf2_detail::grassmannian_size_estimate(n, k);
      if (sz * sz <= b) return counting_detail::pairs_exhaustive(n, k, budget);
      if (sz <= b) return counting_detail::pairs_fixed_first(n, k, budget);
      return counting_detail::pairs_schubert_cells(n, k, budget);
    }
  }
  throw dimension_error("pair_count_table: unknown mode");
}

// The counting upper bound on T(n,k,d): choose the intersection, then a pair
// of subspaces of the quotient.
inline BigCount t_upper_bound(int n, int k, int d) {
  const auto [lo, hi] = intersection_dim_range(n, k);
  if (d < lo || d > hi)
    throw dimension_error("t_upper_bound: d = " + std::to_string(d) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const BigCount quotient_pairs = gaussian_binomial(n - d, n - k - d);
  return gaussian_binomial(n, d) * quotient_pairs * quotient_pairs;
}

// Exact verification that T(n,k,d)/|Gr(n,k)|^2 <= 2^{-k(n-k)/2} holds for
// every integer d in the top band [n - k - 3 log2 n, n - k], using the
// t_upper_bound surrogate for T. The verdict per d is a pure big-integer
// comparison; margins are reported in bits.
struct TBoundCheck {
  int n = 0;
  int k = 0;
  bool hypothesis_ok = false;   // min(k, n-k) >= 12 log2 n
  double hypothesis_margin = 0; // min(k, n-k) - 12 log2 n
  struct Row {
    int d = 0;
    bool pass = false;
    double margin_bits = 0;     // -k(n-k)/2 - (log2 t_ub - 2 log2 |Gr|)
  };
  std::vector<Row> rows;

  bool all_pass() const {
    if (!hypothesis_ok) return false;
    for (const Row& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

inline TBoundCheck t_bound_claim_check(int n, int k) {
  if (n < 2 || n > kMaxCountingDim || k < 0 || k > n)
    throw dimension_error("t_bound_claim_check: need 2 <= n <= 1024 and 0 <= k <= n");
  TBoundCheck out;
  out.n = n;
  out.k = k;
  const double log2n = std::log2(static_cast<double>(n));
  out.hypothesis_margin = static_cast<double>(std::min(k, n - k)) - 12.0 * log2n;
  out.hypothesis_ok = out.hypothesis_margin >= 0.0;

  const auto [range_lo, range_hi] = intersection_dim_range(n, k);
  const int band_lo = std::max(static_cast<int>(std::ceil(n - k - 3.0 * log2n)), range_lo);
  const BigCount gr = gaussian_binomial(n, k);
  const BigCount gr4 = gr * gr * gr * gr;
  const double log2_gr = log2_big(gr);
  const unsigned kk = static_cast<unsigned>(k) * static_cast<unsigned>(n - k);
  for (int d = band_lo; d <= range_hi; ++d) {
    const BigCount tub = t_upper_bound(n, k, d);
    TBoundCheck::Row row;
    row.d = d;
    // t_ub^2 * 2^{k(n-k)} <= |Gr|^4  <=>  log2 t_ub - 2 log2 |Gr| <= -k(n-k)/2
    row.pass = tub * tub * (BigCount(1) << kk) <= gr4;
    row.margin_bits = 2.0 * log2_gr - log2_big(tub) - static_cast<double>(kk) / 2.0;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace hadkernel

#endif  // HADKERNEL_COUNTING_HPP
