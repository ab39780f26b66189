#ifndef HADKERNEL_CLI_HPP
#define HADKERNEL_CLI_HPP

// Command-line front end: validated run configurations, the verification
// suites, sweep/witness/moments reports, and their serialization. Every
// command is a pure function of (config, seed); reruns and thread-count
// changes produce byte-identical output. Exit codes: 0 all-pass, 1 suite
// failure, 2 configuration error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hadkernel/counting.hpp"
#include "hadkernel/errors.hpp"
#include "hadkernel/experiment.hpp"
#include "hadkernel/gf2.hpp"
#include "hadkernel/transform.hpp"

namespace hadkernel::cli {

using nlohmann::json;

// Invalid configuration; the message names the offending field.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Formatting

// Shortest-exact decimal for CSV cells (round-trips through strtod).
inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string hex_word(std::uint64_t w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w));
  return buf;
}

// Basis rows as hex words, RREF order; bit j of each word is coordinate j.
inline std::vector<std::string> basis_hex(const Subspace& s) {
  std::vector<std::string> out;
  out.reserve(s.basis.size());
  for (std::uint64_t r : s.basis) out.push_back(hex_word(r));
  return out;
}

// ---------------------------------------------------------------------------
// Grids

struct GridSpec {
  double lo = 0;
  double hi = 0;
  int points = 1;
  bool log_scale = false;

  std::vector<double> values() const {
    std::vector<double> v;
    if (points == 1) {
      v.push_back(lo);
      return v;
    }
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(points - 1);
      v.push_back(log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                            : lo + t * (hi - lo));
    }
    return v;
  }
};

// "lo:hi:points" with an optional ",log" or ",lin" suffix.
inline GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::string body = text;
  if (const auto comma = body.find(','); comma != std::string::npos) {
    const std::string scale = body.substr(comma + 1);
    body = body.substr(0, comma);
    if (scale == "log")
      g.log_scale = true;
    else if (scale != "lin")
      throw config_error("p-hat-grid: scale must be 'log' or 'lin', got '" + scale + "'");
  }
  const auto c1 = body.find(':');
  const auto c2 = body.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw config_error("p-hat-grid: expected lo:hi:points[,log|,lin]");
  try {
    g.lo = std::stod(body.substr(0, c1));
    g.hi = std::stod(body.substr(c1 + 1, c2 - c1 - 1));
    g.points = std::stoi(body.substr(c2 + 1));
  } catch (const std::exception&) {
    throw config_error("p-hat-grid: could not parse numbers in '" + text + "'");
  }
  if (g.points < 1) throw config_error("p-hat-grid: points must be >= 1");
  if (!(g.lo >= 0.0) || !(g.hi >= g.lo) || g.hi >= 1.0)
    throw config_error("p-hat-grid: need 0 <= lo <= hi < 1");
  if (g.log_scale && g.lo <= 0.0) throw config_error("p-hat-grid: log scale needs lo > 0");
  return g;
}

// ---------------------------------------------------------------------------
// Verification suites

struct CheckRow {
  std::string name;
  json instance;
  bool pass = false;
  double margin = 0;
};

namespace cli_detail {

inline Subspace random_subspace(int n, int d, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << n) - 1);
  std::vector<std::uint64_t> rows;
  Subspace s = canonicalize(n, rows);
  while (s.dim() < d) {
    rows.push_back(dist(gen));
    s = canonicalize(n, rows);
  }
  return s;
}

inline std::vector<CheckRow> suite_lemma_ortho(int n_max, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    double worst = 0;
    for (int d = 0; d <= n; ++d)
      for_each_subspace(n, d, [&](const Subspace& v) {
        worst = std::max(worst, verify_ortho_lemma(v));
      });
    rows.push_back({"transform of 1_V equals 1_{V^perp}, exhaustive",
                    json{{"n", n}}, worst <= 1e-10, 1e-10 - worst});
  }
  for (int n : {12, 16}) {
    std::mt19937_64 gen(seed ^ (0xa5a5u + static_cast<unsigned>(n)));
    double worst = 0;
    for (int rep = 0; rep < 50; ++rep) {
      const int d = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n));
      worst = std::max(worst, verify_ortho_lemma(random_subspace(n, d, gen)));
    }
    rows.push_back({"transform of 1_V equals 1_{V^perp}, random",
                    json{{"n", n}, {"samples", 50}}, worst <= 1e-10, 1e-10 - worst});
  }
  return rows;
}

inline std::vector<CheckRow> suite_grassmannian(int n_max) {
  std::vector<CheckRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    bool ok = true;
    for (int d = 0; d <= n; ++d) {
      std::uint64_t count = 0;
      for_each_subspace(n, d, [&](const Subspace&) { ++count; });
      if (gaussian_binomial(n, d) != count) ok = false;
    }
    rows.push_back({"enumerated |Gr(n,d)| equals product formula, all d",
                    json{{"n", n}}, ok, 0.0});
  }
  double slack = std::numeric_limits<double>::infinity();
  bool strict = true;
  for (int n = 2; n <= 64; ++n)
    for (int d = 1; d < n; ++d) {
      const auto [lo, hi] = grassmannian_bounds(n, d);
      const BigCount g = gaussian_binomial(n, d);
      if (!(lo < g && g < hi)) strict = false;
      const double lg = log2_big(g);
      slack = std::min({slack, lg - log2_big(lo), log2_big(hi) - lg});
    }
  rows.push_back({"2^{d(n-d)} < |Gr(n,d)| < 2^{d(n-d+1)} strictly",
                  json{{"n_max", 64}}, strict, slack});
  return rows;
}

inline std::vector<CheckRow> suite_intersection_range(int n_max) {
  std::vector<CheckRow> rows;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto [lo, hi] = intersection_dim_range(n, k);
      const PairCountTable t = pair_count_table(n, k, PairCountMode::kExhaustivePairs);
      const int seen_lo = t.counts.begin()->first;
      const int seen_hi = t.counts.rbegin()->first;
      const BigCount g = gaussian_binomial(n, k);
      const bool ok = seen_lo >= lo && seen_hi <= hi && t.total() == g * g;
      rows.push_back({"pair intersection dims within [max(n-2k,0), n-k], total = |Gr|^2",
                      json{{"n", n}, {"k", k}}, ok,
                      static_cast<double>(std::min(seen_lo - lo, hi - seen_hi))});
    }
  return rows;
}

inline std::vector<CheckRow> suite_covariance(int n_max) {
  std::vector<CheckRow> rows;
  for (int n = 2; n <= n_max; ++n)
    for (double p_hat : {0.01, 0.05, 0.1, 0.3, 0.5}) {
      double worst = 0;
      for (int k = 1; k < n; ++k) {
        const SamplingParams sp(n, k, p_hat);
        const std::vector<Subspace> all = enumerate_grassmannian(n, k);
        for (const Subspace& u : all)
          for (const Subspace& v : all) {
            const double a = covariance_ratio(u, v, sp);
            const double b = covariance_ratio_direct(u, v, sp);
            if (a != 0.0 || b != 0.0)
              worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
          }
      }
      rows.push_back({"covariance ratio: expm1 route vs inclusion-exclusion route",
                      json{{"n", n}, {"p_hat", p_hat}}, worst <= 1e-12, 1e-12 - worst});
    }
  return rows;
}

inline std::vector<CheckRow> suite_t_bound(int n, int k) {
  const TBoundCheck c = t_bound_claim_check(n, k);
  std::vector<CheckRow> rows;
  rows.push_back({"hypothesis min(k, n-k) >= 12 log2 n",
                  json{{"n", n}, {"k", k}}, c.hypothesis_ok, c.hypothesis_margin});
  for (const auto& r : c.rows)
    rows.push_back({"T upper bound / |Gr|^2 <= 2^{-k(n-k)/2}",
                    json{{"n", n}, {"k", k}, {"d", r.d}}, r.pass, r.margin_bits});
  return rows;
}

inline std::vector<CheckRow> suite_moments(int n, int k, double p_hat, double c) {
  std::vector<CheckRow> rows;
  // implementation identity between the two p-parameterizations
  double worst_id = 0;
  for (double ph : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    const SamplingParams sp(n, k, ph, c);
    const double direct = std::pow(1.0 - ph, std::exp2(n - k));
    const double via_p = std::exp(-sp.p() * std::exp2(n - k));
    worst_id = std::max(worst_id, std::abs(direct - via_p) / via_p);
  }
  rows.push_back({"(1-p_hat)^{2^{n-k}} equals exp(-p 2^{n-k})",
                  json{{"n", n}, {"k", k}}, worst_id <= 1e-14, 1e-14 - worst_id});

  const SamplingParams sp(n, k, p_hat, c);
  if (n <= 5 && k >= 1 && k < n) {
    const PairCountTable table = pair_count_table(n, k);
    const std::vector<Subspace> all = enumerate_grassmannian(n, k);
    double acc = 0;
    for (const Subspace& u : all)
      for (const Subspace& v : all) acc += covariance_ratio(u, v, sp);
    const double oracle = acc / (static_cast<double>(all.size()) * static_cast<double>(all.size()));
    const double fast = variance_ratio_exact(sp, table);
    const double rel = oracle == 0.0 ? std::abs(fast)
                                     : std::abs(fast - oracle) / std::abs(oracle);
    rows.push_back({"variance ratio equals pairwise covariance sum",
                    json{{"n", n}, {"k", k}, {"p_hat", p_hat}}, rel <= 1e-9, 1e-9 - rel});
  }
  if (variance_exact_feasible(n, k)) {
    const PairCountTable table = pair_count_table(n, k);
    const double exact = variance_ratio_exact(sp, table);
    const double bound = variance_ratio_bound(sp);
    rows.push_back({"exact variance ratio <= bound-mode variance ratio",
                    json{{"n", n}, {"k", k}, {"p_hat", p_hat}},
                    exact <= bound * (1 + 1e-12), bound - exact});
  }
  const BoundTerms t = paper_bound_terms(sp);
  rows.push_back({"term_i + term_ii < 1", json{{"n", n}, {"k", k}, {"c", c}},
                  t.sum_below_one, 1.0 - t.term_i - t.term_ii});
  rows.push_back({"2c/ln2 < 1/2", json{{"c", c}}, t.exponent_ok, t.exponent_margin});
  return rows;
}

inline void append(std::vector<CheckRow>& into, std::vector<CheckRow> rows) {
  for (auto& r : rows) into.push_back(std::move(r));
}

}  // namespace cli_detail

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  std::string suite = "all";
  int n_max = -1;     // -1: per-suite default
  int n = -1;         // t-bound / moments instance
  int k = -1;
  double p_hat = 0.1;
  double c = 0.1;
  std::uint64_t seed = 1;
};

inline int run_verify(const VerifyConfig& cfg, std::ostream& out) {
  static const std::set<std::string> known = {"lemma-ortho",  "grassmannian", "intersection-range",
                                              "covariance",   "t-bound",      "moments",
                                              "all"};
  if (!known.contains(cfg.suite))
    throw config_error("suite: unknown suite '" + cfg.suite + "'");
  if (cfg.p_hat < 0.0 || cfg.p_hat >= 1.0) throw config_error("p-hat: must lie in [0, 1)");
  if (cfg.c <= 0.0) throw config_error("c: must be positive");

  std::vector<CheckRow> rows;
  const bool all = cfg.suite == "all";
  if (all || cfg.suite == "lemma-ortho")
    cli_detail::append(rows, cli_detail::suite_lemma_ortho(cfg.n_max > 0 ? cfg.n_max : 6, cfg.seed));
  if (all || cfg.suite == "grassmannian")
    cli_detail::append(rows, cli_detail::suite_grassmannian(cfg.n_max > 0 ? cfg.n_max : 6));
  if (all || cfg.suite == "intersection-range")
    cli_detail::append(rows, cli_detail::suite_intersection_range(cfg.n_max > 0 ? cfg.n_max : 6));
  if (all || cfg.suite == "covariance")
    cli_detail::append(rows, cli_detail::suite_covariance(std::min(cfg.n_max > 0 ? cfg.n_max : 5, 5)));
  if (all || cfg.suite == "t-bound") {
    const int n = cfg.n > 0 ? cfg.n : 256;
    const int k = cfg.k >= 0 ? cfg.k : n / 2;
    if (k < 0 || k > n) throw config_error("k: need 0 <= k <= n");
    cli_detail::append(rows, cli_detail::suite_t_bound(n, k));
  }
  if (all || cfg.suite == "moments") {
    const int n = cfg.n > 0 ? cfg.n : 4;
    const int k = cfg.k >= 0 ? cfg.k : n / 2;
    if (k < 0 || k > n) throw config_error("k: need 0 <= k <= n");
    cli_detail::append(rows, cli_detail::suite_moments(n, k, cfg.p_hat, cfg.c));
  }

  bool pass = true;
  json checks = json::array();
  for (const CheckRow& r : rows) {
    pass = pass && r.pass;
    checks.push_back(json{{"name", r.name},
                          {"instance", r.instance},
                          {"pass", r.pass},
                          {"margin", r.margin}});
  }
  const json report = {{"command", "verify"},
                       {"suite", cfg.suite},
                       {"params", {{"n_max", cfg.n_max}, {"n", cfg.n}, {"k", cfg.k},
                                   {"p_hat", cfg.p_hat}, {"c", cfg.c}, {"seed", cfg.seed}}},
                       {"checks", checks},
                       {"pass", pass}};
  out << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepConfig {
  int n = 0;
  int k = 0;
  GridSpec grid;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double c = 0.1;
  int threads = 1;
  std::string variance_mode = "auto";  // auto | exact | bound
  std::string format = "csv";          // csv | json
};

struct SweepRow {
  double p_hat = 0, p = 0, expected_rows = 0, mean_rows = 0;
  double fraction = 0, std_error = 0, ln_first_moment = 0;
  double variance_ratio = 0, chebyshev_bound = 0;
  std::string variance_mode;
};

inline std::vector<SweepRow> sweep_rows(const SweepConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxSampleDim) throw config_error("n: must be in [1, 24]");
  if (cfg.k < 0 || cfg.k > cfg.n) throw config_error("k: need 0 <= k <= n");
  if (cfg.n - cfg.k > kMaxWitnessComplementDim) throw config_error("k: n - k exceeds 20");
  if (cfg.trials < 1) throw config_error("trials: must be >= 1");
  if (cfg.threads < 1) throw config_error("threads: must be >= 1");
  if (cfg.variance_mode != "auto" && cfg.variance_mode != "exact" && cfg.variance_mode != "bound")
    throw config_error("variance-mode: must be auto, exact, or bound");

  const bool want_exact = cfg.variance_mode == "exact" ||
                          (cfg.variance_mode == "auto" && variance_exact_feasible(cfg.n, cfg.k));
  if (cfg.variance_mode == "exact" && !variance_exact_feasible(cfg.n, cfg.k))
    throw config_error("variance-mode: exact table infeasible for this (n, k)");
  std::optional<PairCountTable> table;
  if (want_exact) table = pair_count_table(cfg.n, cfg.k);

  std::vector<SweepRow> rows;
  for (double p_hat : cfg.grid.values()) {
    const SamplingParams sp(cfg.n, cfg.k, p_hat, cfg.c, cfg.seed);
    const ExistenceEstimate est = estimate_existence_probability(sp, cfg.trials, cfg.threads);
    SweepRow row;
    row.p_hat = p_hat;
    row.p = sp.p();
    row.expected_rows = std::exp2(cfg.n) * p_hat;
    row.mean_rows = est.mean_cardinality;
    row.fraction = est.fraction;
    row.std_error = est.std_error;
    row.ln_first_moment = first_moment_ln(sp);
    row.variance_ratio = table ? variance_ratio_exact(sp, *table) : variance_ratio_bound(sp);
    row.variance_mode = table ? "exact" : "bound";
    row.chebyshev_bound = std::min(1.0, row.variance_ratio);
    rows.push_back(row);
  }
  return rows;
}

inline int run_sweep(const SweepConfig& cfg, std::ostream& out) {
  if (cfg.format != "csv" && cfg.format != "json")
    throw config_error("format: must be csv or json");
  const std::vector<SweepRow> rows = sweep_rows(cfg);
  if (cfg.format == "json") {
    json arr = json::array();
    for (const SweepRow& r : rows)
      arr.push_back(json{{"p_hat", r.p_hat},
                         {"p", r.p},
                         {"expected_rows", r.expected_rows},
                         {"mean_rows", r.mean_rows},
                         {"witness_fraction", r.fraction},
                         {"witness_std_error", r.std_error},
                         {"ln_first_moment", r.ln_first_moment},
                         {"variance_ratio", r.variance_ratio},
                         {"variance_mode", r.variance_mode},
                         {"chebyshev_bound", r.chebyshev_bound}});
    const json doc = {{"command", "sweep"},
                      {"params", {{"n", cfg.n}, {"k", cfg.k}, {"c", cfg.c}, {"seed", cfg.seed},
                                  {"trials", cfg.trials}}},
                      {"rows", arr}};
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "# hadkernel sweep\n";
  out << "# n=" << cfg.n << " k=" << cfg.k << " c=" << fmt_double(cfg.c) << " seed=" << cfg.seed
      << " trials=" << cfg.trials << "\n";
  out << "# p = -ln(1 - p_hat); expected_rows = 2^n * p_hat; mean_rows = empirical mean |Q|\n";
  out << "# witness_fraction = trials with a kernel witness / trials, witness_std_error binomial\n";
  out << "# variance_ratio = Var X / (E X)^2 in the tagged mode; chebyshev_bound = min(1, ratio)\n";
  out << "p_hat,p,expected_rows,mean_rows,witness_fraction,witness_std_error,"
         "ln_first_moment,variance_ratio,variance_mode,chebyshev_bound\n";
  for (const SweepRow& r : rows) {
    out << fmt_double(r.p_hat) << ',' << fmt_double(r.p) << ',' << fmt_double(r.expected_rows)
        << ',' << fmt_double(r.mean_rows) << ',' << fmt_double(r.fraction) << ','
        << fmt_double(r.std_error) << ',' << fmt_double(r.ln_first_moment) << ','
        << fmt_double(r.variance_ratio) << ',' << r.variance_mode << ','
        << fmt_double(r.chebyshev_bound) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessConfig {
  int n = 0;
  int k = 0;
  double p_hat = 0;
  double c = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  bool split = false;
  bool exact_count = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

inline int run_witness(const WitnessConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.n > kMaxSampleDim) throw config_error("n: must be in [1, 24]");
  if (cfg.k < 0 || cfg.k > cfg.n) throw config_error("k: need 0 <= k <= n");
  if (cfg.n - cfg.k > kMaxWitnessComplementDim) throw config_error("k: n - k exceeds 20");
  if (cfg.p_hat < 0.0 || cfg.p_hat >= 1.0) throw config_error("p-hat: must lie in [0, 1)");
  if (cfg.split && cfg.k + 1 > cfg.n) throw config_error("split: needs k + 1 <= n");
  if (cfg.exact_count &&
      gf2_detail::grassmannian_size_estimate(cfg.n, cfg.n - cfg.k) >
          static_cast<long double>(cfg.budget) * 1.0000001L)
    throw config_error("exact-count: |Gr(n,n-k)| exceeds the enumeration budget");

  const SamplingParams sp(cfg.n, cfg.k, cfg.p_hat, cfg.c, cfg.seed);
  const SampleMask q = sample_mask(sp, cfg.trial_index);
  const WitnessReport rep =
      cfg.exact_count ? count_witnesses(q, cfg.k, cfg.budget) : find_kernel_witness(q, cfg.k);

  json doc = {{"command", "witness"},
              {"params", {{"n", cfg.n}, {"k", cfg.k}, {"p_hat", cfg.p_hat}, {"c", cfg.c},
                          {"seed", cfg.seed}, {"trial_index", cfg.trial_index}}},
              {"q_cardinality", q.cardinality},
              {"nodes_explored", rep.nodes_explored}};
  if (rep.witness) {
    doc["witness"] = {{"dim", rep.witness->dim()}, {"basis_hex", basis_hex(*rep.witness)}};
    doc["residual"] = verify_kernel(q, *rep.witness);
  } else {
    doc["witness"] = nullptr;
    doc["no_witness_reason"] = q.test(0) ? "zero row sampled" : "search exhausted";
  }
  if (cfg.exact_count) doc["exact_count"] = rep.exact_count->str();
  if (cfg.split) {
    const WitnessReport wide = find_kernel_witness(q, cfg.k + 1);
    json split;
    split["sparsity_exponent"] = cfg.k + 1;
    if (wide.witness) {
      const auto [y, z] = non_injectivity_pair(*wide.witness);
      json ys = json::array(), zs = json::array();
      double worst = 0;
      std::vector<double> x(y.entries.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (y.entries[i] != 0.0) ys.push_back(i);
        if (z.entries[i] != 0.0) zs.push_back(i);
        x[i] = y.entries[i] - z.entries[i];
      }
      fwht_inplace(x);
      for (std::uint64_t j = 0; j < q.size(); ++j)
        if (q.test(j)) worst = std::max(worst, std::abs(x[j]));
      split["witness"] = {{"dim", wide.witness->dim()}, {"basis_hex", basis_hex(*wide.witness)}};
      split["y_support"] = ys;
      split["z_support"] = zs;
      split["residual"] = worst;
    } else {
      split["witness"] = nullptr;
      split["no_witness_reason"] = q.test(0) ? "zero row sampled" : "search exhausted";
    }
    doc["split"] = split;
  }
  out << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// moments

struct MomentsConfig {
  int n = 0;
  int k = 0;
  double p_hat = 0;
  double c = 0.1;
  std::string variance_mode = "auto";
};

inline int run_moments(const MomentsConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.n > kMaxCountingDim) throw config_error("n: must be in [1, 1024]");
  if (cfg.k < 0 || cfg.k > cfg.n) throw config_error("k: need 0 <= k <= n");
  if (cfg.p_hat < 0.0 || cfg.p_hat >= 1.0) throw config_error("p-hat: must lie in [0, 1)");
  if (cfg.c <= 0.0) throw config_error("c: must be positive");
  VarianceModeRequest request = VarianceModeRequest::kAuto;
  if (cfg.variance_mode == "exact")
    request = VarianceModeRequest::kExact;
  else if (cfg.variance_mode == "bound")
    request = VarianceModeRequest::kBound;
  else if (cfg.variance_mode != "auto")
    throw config_error("variance-mode: must be auto, exact, or bound");
  if (request == VarianceModeRequest::kExact && !variance_exact_feasible(cfg.n, cfg.k))
    throw config_error("variance-mode: exact table infeasible for this (n, k)");

  const SamplingParams sp(cfg.n, cfg.k, cfg.p_hat, cfg.c);
  const MomentReport rep = moment_report(sp, request);
  const json conditions = json::array({
      json{{"name", "min(k, n-k) >= 12 log2 n"},
           {"pass", rep.bounds.hypothesis_ok},
           {"margin", rep.bounds.hypothesis_margin}},
      json{{"name", "p 2^{n-k} <= 2 c k (n-k)"},
           {"pass", rep.bounds.rate_ok},
           {"margin", rep.bounds.rate_margin}},
      json{{"name", "2c/ln2 < 1/2"},
           {"pass", rep.bounds.exponent_ok},
           {"margin", rep.bounds.exponent_margin}},
      json{{"name", "term_i + term_ii < 1"},
           {"pass", rep.bounds.sum_below_one},
           {"margin", 1.0 - rep.bounds.term_i - rep.bounds.term_ii}},
  });
  const json doc = {{"command", "moments"},
                    {"params", {{"n", cfg.n}, {"k", cfg.k}, {"p_hat", cfg.p_hat}, {"c", cfg.c}}},
                    {"ln_first_moment", rep.ln_first_moment},
                    {"variance_ratio", rep.variance_ratio},
                    {"variance_mode", rep.variance_mode == VarianceMode::kExact ? "exact" : "bound"},
                    {"term_i", rep.bounds.term_i},
                    {"term_ii", rep.bounds.term_ii},
                    {"chebyshev_bound", rep.chebyshev_bound},
                    {"conditions", conditions}};
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace hadkernel::cli

#endif  // HADKERNEL_CLI_HPP
