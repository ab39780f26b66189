#ifndef HADKERNEL_GF2_HPP
#define HADKERNEL_GF2_HPP

// Bit-packed linear algebra over GF(2). Vectors of Z_2^n are n-bit machine
// words (coordinate j = bit j), which makes the same word usable as a
// row/column index of the 2^n x 2^n Hadamard matrix. Subspaces are stored in
// reduced row echelon form so that equal subspaces are bit-identical values.
//
// Everything in this header is a pure function of its inputs; all types are
// immutable after construction and freely shareable across threads.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadkernel/errors.hpp"

namespace hadkernel {

inline constexpr int kMaxAmbientDim = 63;   // element-indexed operations
inline constexpr int kMaxSpanDim = 30;      // span_elements guard
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct Gf2Vector {
  std::uint64_t bits = 0;
  int ambient_dim = 1;

  Gf2Vector() = default;
  Gf2Vector(std::uint64_t b, int n) : bits(b), ambient_dim(n) {
    if (n < 1 || n > kMaxAmbientDim)
      throw dimension_error("Gf2Vector: ambient_dim must be in [1, " +
                            std::to_string(kMaxAmbientDim) + "], got " + std::to_string(n));
    if (n < 64 && (b >> n) != 0)
      throw dimension_error("Gf2Vector: bit set at position >= ambient_dim");
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
};

// GF(2) inner product: parity of the overlap.
inline int dot(const Gf2Vector& a, const Gf2Vector& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw dimension_error("dot: mismatched ambient dimensions");
  return std::popcount(a.bits & b.bits) & 1;
}

// A subspace of Z_2^n held as its unique RREF basis: every row's highest set
// bit is its pivot, pivots strictly decrease down the list, and no row has a
// set bit at another row's pivot. Two Subspace values describe the same set
// of vectors iff they compare equal.
struct Subspace {
  int ambient_dim = 1;
  std::vector<std::uint64_t> basis;

  int dim() const { return static_cast<int>(basis.size()); }
  Gf2Vector row(int i) const { return Gf2Vector(basis.at(static_cast<std::size_t>(i)), ambient_dim); }

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

namespace gf2_detail {

inline int pivot(std::uint64_t w) { return std::bit_width(w) - 1; }  // w != 0

// Insert v into a fully reduced row set (rows sorted by descending pivot,
// equivalently descending value). Returns false if v is already in the span.
inline bool rref_insert(std::vector<std::uint64_t>& rows, std::uint64_t v) {
  for (std::uint64_t r : rows)
    if ((v >> pivot(r)) & 1u) v ^= r;
  if (v == 0) return false;
  const int p = pivot(v);
  for (std::uint64_t& r : rows)
    if ((r >> p) & 1u) r ^= v;
  rows.insert(std::upper_bound(rows.begin(), rows.end(), v, std::greater<>{}), v);
  return true;
}

inline int rank_of(std::span<const std::uint64_t> vectors) {
  std::uint64_t rows[64];
  int rank = 0;
  for (std::uint64_t v : vectors) {
    for (int i = 0; i < rank; ++i)
      if ((v >> pivot(rows[i])) & 1u) v ^= rows[i];
    if (v != 0) rows[rank++] = v;
  }
  return rank;
}

inline void check_ambient(int n) {
  if (n < 1 || n > kMaxAmbientDim)
    throw dimension_error("ambient_dim must be in [1, " + std::to_string(kMaxAmbientDim) +
                          "], got " + std::to_string(n));
}

// Number of d-subspaces of Z_2^n, approximately; used only for budget guards.
inline long double grassmannian_size_estimate(int n, int d) {
  long double r = 1.0L;
  for (int j = 0; j < d; ++j)
    r *= (std::exp2(static_cast<long double>(n)) - std::exp2(static_cast<long double>(j))) /
         (std::exp2(static_cast<long double>(d)) - std::exp2(static_cast<long double>(j)));
  return r;
}

}  // namespace gf2_detail

// The RREF span of the given vectors; dim equals their GF(2) rank. An empty
// input yields the zero subspace.
inline Subspace canonicalize(int n, std::span<const std::uint64_t> vectors) {
  gf2_detail::check_ambient(n);
  std::vector<std::uint64_t> rows;
  for (std::uint64_t v : vectors) {
    if (n < 64 && (v >> n) != 0)
      throw dimension_error("canonicalize: vector has bits outside ambient dimension");
    gf2_detail::rref_insert(rows, v);
  }
  return Subspace{n, std::move(rows)};
}

inline Subspace canonicalize(int n, std::initializer_list<std::uint64_t> vectors) {
  return canonicalize(n, std::span<const std::uint64_t>(vectors.begin(), vectors.size()));
}

inline Subspace canonicalize(std::span<const Gf2Vector> vectors) {
  if (vectors.empty())
    throw dimension_error("canonicalize: cannot infer ambient_dim from an empty vector list");
  const int n = vectors.front().ambient_dim;
  std::vector<std::uint64_t> words;
  words.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.ambient_dim != n) throw dimension_error("canonicalize: mismatched ambient dimensions");
    words.push_back(v.bits);
  }
  return canonicalize(n, words);
}

// All 2^dim elements of V, each exactly once; element 0 is always first.
// Order is the subset-doubling order of the basis, not sorted.
inline std::vector<std::uint64_t> span_elements(const Subspace& v) {
  if (v.dim() > kMaxSpanDim)
    throw budget_error("span_elements: dim " + std::to_string(v.dim()) + " exceeds guard " +
                       std::to_string(kMaxSpanDim));
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << v.dim());
  out.push_back(0);
  for (std::uint64_t b : v.basis) {
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
  }
  return out;
}

// W = V^perp: dim W = n - dim V and <u, w> = 0 for all u in V, w in W.
// Involution: orthogonal_complement(orthogonal_complement(V)) == V.
inline Subspace orthogonal_complement(const Subspace& v) {
  const int n = v.ambient_dim;
  std::uint64_t pivmask = 0;
  for (std::uint64_t r : v.basis) pivmask |= std::uint64_t{1} << gf2_detail::pivot(r);
  std::vector<std::uint64_t> rows;
  for (int f = 0; f < n; ++f) {
    if ((pivmask >> f) & 1u) continue;
    // kernel vector with free coordinate f: bit at pivot(r) copies r's bit f
    std::uint64_t w = std::uint64_t{1} << f;
    for (std::uint64_t r : v.basis)
      if ((r >> f) & 1u) w |= std::uint64_t{1} << gf2_detail::pivot(r);
    gf2_detail::rref_insert(rows, w);
  }
  return Subspace{n, std::move(rows)};
}

// U intersect V, computed through duality: (U^perp + V^perp)^perp.
inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim != v.ambient_dim)
    throw dimension_error("intersect: mismatched ambient dimensions");
  const Subspace cu = orthogonal_complement(u);
  const Subspace cv = orthogonal_complement(v);
  std::vector<std::uint64_t> rows = cu.basis;
  for (std::uint64_t b : cv.basis) gf2_detail::rref_insert(rows, b);
  return orthogonal_complement(Subspace{u.ambient_dim, std::move(rows)});
}

namespace gf2_detail {

// Pivot-position combinations c[0] < ... < c[d-1] from {0..n-1} in
// colexicographic order, d >= 1.
template <class F>
void for_each_pivot_combination(int n, int d, F&& f) {
  std::vector<int> c(static_cast<std::size_t>(d));
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    f(std::span<const int>(c));
    int i = 0;
    while (i + 1 < d && c[static_cast<std::size_t>(i)] + 1 == c[static_cast<std::size_t>(i) + 1]) ++i;
    if (c[static_cast<std::size_t>(i)] + 1 >= n) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) c[static_cast<std::size_t>(j)] = j;
  }
}

}  // namespace gf2_detail

// Visits every d-dimensional subspace of Z_2^n exactly once, Schubert cell by
// Schubert cell: pivot-column combinations in colex order, free entries in
// integer order. The visitor receives a reused const Subspace& -- copy it if
// it must outlive the call. No budget guard here; callers bound their own
// enumerations (see enumerate_grassmannian).
template <class Visitor>
void for_each_subspace(int n, int d, Visitor&& visit) {
  gf2_detail::check_ambient(n);
  if (d < 0 || d > n)
    throw dimension_error("for_each_subspace: need 0 <= d <= n");
  Subspace s{n, {}};
  if (d == 0) {
    visit(std::as_const(s));
    return;
  }
  s.basis.resize(static_cast<std::size_t>(d));
  std::vector<std::pair<int, int>> slots;  // (basis row, bit position) per free entry
  gf2_detail::for_each_pivot_combination(n, d, [&](std::span<const int> c) {
    std::uint64_t pivmask = 0;
    for (int p : c) pivmask |= std::uint64_t{1} << p;
    slots.clear();
    for (int r = 0; r < d; ++r) {
      const int p = c[static_cast<std::size_t>(d - 1 - r)];  // descending pivots
      s.basis[static_cast<std::size_t>(r)] = std::uint64_t{1} << p;
      for (int q = 0; q < p; ++q)
        if (!((pivmask >> q) & 1u)) slots.emplace_back(r, q);
    }
    if (slots.size() >= 64) throw budget_error("for_each_subspace: cell free entries exceed 2^63");
    visit(std::as_const(s));
    const std::uint64_t total = std::uint64_t{1} << slots.size();
    for (std::uint64_t f = 1; f < total; ++f) {
      std::uint64_t changed = f ^ (f - 1);
      while (changed != 0) {
        const int l = std::countr_zero(changed);
        changed &= changed - 1;
        const auto [row, pos] = slots[static_cast<std::size_t>(l)];
        s.basis[static_cast<std::size_t>(row)] ^= std::uint64_t{1} << pos;
      }
      visit(std::as_const(s));
    }
  });
}

// Materialized Gr(n,d) in enumeration order. Refuses up front if the exact
// count exceeds the budget.
inline std::vector<Subspace> enumerate_grassmannian(int n, int d,
                                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  gf2_detail::check_ambient(n);
  if (d < 0 || d > n)
    throw dimension_error("enumerate_grassmannian: need 0 <= d <= n");
  if (gf2_detail::grassmannian_size_estimate(n, d) >
      static_cast<long double>(budget) * 1.0000001L)
    throw budget_error("enumerate_grassmannian: |Gr(" + std::to_string(n) + "," +
                       std::to_string(d) + ")| exceeds budget " + std::to_string(budget));
  std::vector<Subspace> out;
  for_each_subspace(n, d, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

// Structural check used by tests and by operations that accept Subspace
// values from outside the factory functions.
inline bool is_rref(const Subspace& s) {
  if (s.ambient_dim < 1 || s.ambient_dim > kMaxAmbientDim) return false;
  std::uint64_t pivmask = 0;
  int last_pivot = 64;
  for (std::uint64_t r : s.basis) {
    if (r == 0) return false;
    if (s.ambient_dim < 64 && (r >> s.ambient_dim) != 0) return false;
    const int p = gf2_detail::pivot(r);
    if (p >= last_pivot) return false;
    last_pivot = p;
    pivmask |= std::uint64_t{1} << p;
  }
  for (std::uint64_t r : s.basis)
    if ((r & pivmask) != (std::uint64_t{1} << gf2_detail::pivot(r))) return false;
  return true;
}

}  // namespace hadkernel

#endif  // HADKERNEL_GF2_HPP
