#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hadkernel/counting.hpp"
#include "hadkernel/gf2.hpp"

using namespace hadkernel;

TEST_CASE("gaussian_binomial small values and edges") {
  CHECK(gaussian_binomial(2, 1) == 3);
  CHECK(gaussian_binomial(7, 0) == 1);
  CHECK(gaussian_binomial(5, 5) == 1);
  // derived independently in gf2_tests by canonicalize-and-dedup
  CHECK(gaussian_binomial(4, 2) == 35);
  CHECK_THROWS_AS(gaussian_binomial(3, 4), dimension_error);
  CHECK_THROWS_AS(gaussian_binomial(2000, 1), dimension_error);
}

TEST_CASE("gaussian_binomial equals the enumerated count") {
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= n; ++d) {
      std::size_t count = 0;
      for_each_subspace(n, d, [&](const Subspace&) { ++count; });
      REQUIRE(gaussian_binomial(n, d) == count);
    }
}

TEST_CASE("gaussian_binomial complement symmetry") {
  for (int n = 1; n <= 64; ++n)
    for (int d = 0; d <= n; ++d)
      REQUIRE(gaussian_binomial(n, d) == gaussian_binomial(n, n - d));
}

TEST_CASE("grassmannian_bounds bracket strictly") {
  const auto [lo42, hi42] = grassmannian_bounds(4, 2);
  CHECK(lo42 == 16);
  CHECK(hi42 == 64);
  CHECK(lo42 < gaussian_binomial(4, 2));
  CHECK(gaussian_binomial(4, 2) < hi42);

  const auto [lo21, hi21] = grassmannian_bounds(2, 1);
  CHECK(lo21 == 2);
  CHECK(hi21 == 4);

  const auto [lo105, hi105] = grassmannian_bounds(10, 5);
  CHECK(lo105 == BigCount(1) << 25);
  CHECK(hi105 == BigCount(1) << 30);
  CHECK(lo105 < gaussian_binomial(10, 5));
  CHECK(gaussian_binomial(10, 5) < hi105);

  for (int n = 2; n <= 64; ++n)
    for (int d = 1; d < n; ++d) {
      const auto [lo, hi] = grassmannian_bounds(n, d);
      const BigCount g = gaussian_binomial(n, d);
      REQUIRE(lo < g);
      REQUIRE(g < hi);
    }

  CHECK_THROWS_AS(grassmannian_bounds(4, 0), dimension_error);
  CHECK_THROWS_AS(grassmannian_bounds(4, 4), dimension_error);
}

TEST_CASE("intersection_dim_range") {
  CHECK(intersection_dim_range(6, 2) == std::pair{2, 4});
  CHECK(intersection_dim_range(4, 2) == std::pair{0, 2});
  CHECK(intersection_dim_range(3, 3) == std::pair{0, 0});
  CHECK_THROWS_AS(intersection_dim_range(3, 4), dimension_error);
}

TEST_CASE("log2_big matches exact powers and stays tight") {
  CHECK(log2_big(BigCount(1) << 100) == 100.0);
  CHECK(log2_big(BigCount(8)) == 3.0);
  const double l = log2_big((BigCount(1) << 1000) + (BigCount(1) << 999));
  CHECK(l == Catch::Approx(1000.0 + std::log2(1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(log2_big(BigCount(0)), dimension_error);
}

TEST_CASE("pair_count_table named small cases") {
  const PairCountTable t21 = pair_count_table(2, 1, PairCountMode::kExhaustivePairs);
  REQUIRE(t21.counts.size() == 2);
  CHECK(t21.counts.at(1) == 3);  // U == V
  CHECK(t21.counts.at(0) == 6);  // distinct lines
  CHECK(t21.total() == 9);

  const PairCountTable t42 = pair_count_table(4, 2, PairCountMode::kExhaustivePairs);
  CHECK(t42.total() == 1225);

  const PairCountTable tnn = pair_count_table(3, 3, PairCountMode::kExhaustivePairs);
  REQUIRE(tnn.counts.size() == 1);
  CHECK(tnn.counts.at(0) == 1);

  const PairCountTable tz = pair_count_table(3, 0, PairCountMode::kSchubertCells);
  REQUIRE(tz.counts.size() == 1);
  CHECK(tz.counts.at(3) == 1);
}

TEST_CASE("pair_count_table invariants for n <= 6") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      const PairCountTable t = pair_count_table(n, k);
      const auto [lo, hi] = intersection_dim_range(n, k);
      REQUIRE(!t.counts.empty());
      REQUIRE(t.counts.begin()->first >= lo);
      REQUIRE(t.counts.rbegin()->first <= hi);
      const BigCount g = gaussian_binomial(n, k);
      REQUIRE(t.total() == g * g);
    }
}

TEST_CASE("pair_count_table modes agree") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto a = pair_count_table(n, k, PairCountMode::kExhaustivePairs);
      const auto b = pair_count_table(n, k, PairCountMode::kFixedFirst);
      const auto c = pair_count_table(n, k, PairCountMode::kSchubertCells);
      REQUIRE(a.counts == b.counts);
      REQUIRE(a.counts == c.counts);
    }
  // the cell route keeps working where pair enumeration would not
  const auto f8 = pair_count_table(8, 4, PairCountMode::kFixedFirst, 300000);
  const auto c8 = pair_count_table(8, 4, PairCountMode::kSchubertCells);
  REQUIRE(f8.counts == c8.counts);
  const BigCount g8 = gaussian_binomial(8, 4);
  REQUIRE(c8.total() == g8 * g8);
}

TEST_CASE("pair_count_table budget guard") {
  CHECK_THROWS_AS(pair_count_table(8, 4, PairCountMode::kExhaustivePairs, 1000), budget_error);
  CHECK_THROWS_AS(pair_count_table(12, 6, PairCountMode::kFixedFirst), budget_error);
}

TEST_CASE("t_upper_bound dominates the exact pair counts") {
  CHECK(t_upper_bound(2, 1, 1) == 3);
  CHECK(t_upper_bound(4, 2, 2) == 35);
  CHECK(t_upper_bound(4, 2, 0) == 1225);
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      const PairCountTable t = pair_count_table(n, k);
      const auto [lo, hi] = intersection_dim_range(n, k);
      for (int d = lo; d <= hi; ++d) {
        BigCount exact = 0;
        if (auto it = t.counts.find(d); it != t.counts.end()) exact = it->second;
        REQUIRE(exact <= t_upper_bound(n, k, d));
      }
    }
  CHECK_THROWS_AS(t_upper_bound(4, 2, 3), dimension_error);
}

TEST_CASE("t_bound_claim_check at proof scale") {
  const TBoundCheck c = t_bound_claim_check(256, 128);
  CHECK(c.hypothesis_ok);
  REQUIRE(!c.rows.empty());
  CHECK(c.rows.front().d == 104);  // 256 - 128 - 3*8
  CHECK(c.rows.back().d == 128);
  for (const auto& row : c.rows) {
    CHECK(row.pass);
    CHECK(row.margin_bits > 0.0);
  }
  CHECK(c.all_pass());
}

TEST_CASE("t_bound_claim_check reports an unmet hypothesis") {
  const TBoundCheck c = t_bound_claim_check(64, 32);
  CHECK_FALSE(c.hypothesis_ok);  // 12 log2(64) = 72 > 32
  CHECK(c.hypothesis_margin == -40.0);
  CHECK_FALSE(c.all_pass());
}
