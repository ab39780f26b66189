#ifndef HADKERNEL_TRANSFORM_HPP
#define HADKERNEL_TRANSFORM_HPP

// The 2^n x 2^n Hadamard matrix H on Z_2^n: entry oracle, fast in-place
// Walsh-Hadamard transform (including the 1/sqrt(N) normalization, so H is a
// real symmetric involution), and normalized subspace indicator vectors.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hadkernel/errors.hpp"
#include "hadkernel/gf2.hpp"

namespace hadkernel {

inline constexpr int kMaxTransformDim = 24;    // 2^24 doubles = 128 MiB
inline constexpr int kMaxOrthoCheckDim = 20;

// A dense vector indexed by Z_2^n under the fixed bijection (index bit j =
// coordinate j).
struct DenseVector {
  int n = 0;
  std::vector<double> entries;

  std::size_t size() const { return entries.size(); }
};

namespace transform_detail {

inline void check_transform_dim(int n, const char* who) {
  if (n < 1 || n > kMaxTransformDim)
    throw dimension_error(std::string(who) + ": n must be in [1, " +
                          std::to_string(kMaxTransformDim) + "], got " + std::to_string(n));
}

}  // namespace transform_detail

// H[i][j] = (-1)^{<i,j>} / sqrt(N).
inline double hadamard_entry(std::uint64_t i, std::uint64_t j, int n) {
  transform_detail::check_transform_dim(n, "hadamard_entry");
  const std::uint64_t size = std::uint64_t{1} << n;
  if (i >= size || j >= size) throw dimension_error("hadamard_entry: index out of range");
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  return (std::popcount(i & j) & 1) ? -scale : scale;
}

// In-place butterfly, then one final scaling pass.
inline void fwht_inplace(std::span<double> a) {
  const std::size_t size = a.size();
  if (size == 0 || (size & (size - 1)) != 0)
    throw dimension_error("fwht: length must be a power of two");
  if (size > (std::size_t{1} << kMaxTransformDim))
    throw dimension_error("fwht: length exceeds 2^24 guard");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j];
        const double y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (double& v : a) v *= scale;
}

inline DenseVector fwht(DenseVector v) {
  fwht_inplace(v.entries);
  return v;
}

// The unit-norm indicator of V: 2^{-dim/2} on the points of V, zero
// elsewhere.
inline DenseVector indicator_vector(const Subspace& v) {
  transform_detail::check_transform_dim(v.ambient_dim, "indicator_vector");
  if (!is_rref(v)) throw dimension_error("indicator_vector: subspace basis is not canonical RREF");
  DenseVector out{v.ambient_dim, std::vector<double>(std::size_t{1} << v.ambient_dim, 0.0)};
  const double value = std::exp2(-0.5 * v.dim());
  for (std::uint64_t x : span_elements(v)) out.entries[x] = value;
  return out;
}

// Sup-norm deviation of fwht(1_V) from 1_{V^perp}; zero in exact arithmetic.
inline double verify_ortho_lemma(const Subspace& v) {
  if (v.ambient_dim > kMaxOrthoCheckDim)
    throw dimension_error("verify_ortho_lemma: n exceeds " + std::to_string(kMaxOrthoCheckDim));
  DenseVector lhs = fwht(indicator_vector(v));
  const DenseVector rhs = indicator_vector(orthogonal_complement(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.entries.size(); ++i)
    worst = std::max(worst, std::abs(lhs.entries[i] - rhs.entries[i]));
  return worst;
}

}  // namespace hadkernel

#endif  // HADKERNEL_TRANSFORM_HPP
